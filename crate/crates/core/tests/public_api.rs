use obtf_core::boolfn::{implied_formula, is_elementary, truth_table};
use obtf_core::census::{self, Convention, Method, Quantity};
use obtf_core::cgraph::{graph_of_poset, posets_of_graph};
use obtf_core::litposet::{enumerate_pn, implication_poset, poset_to_function};
use obtf_core::text::{parse_formula, parse_graph, parse_poset, render_formula};
use obtf_core::{par, Error};

#[test]
fn formula_to_poset_to_graph_and_back() {
    let f = parse_formula("n 3\n# x1 -> x2 -> x3\n-1 2\n-2 3\n").unwrap();
    let t = truth_table(&f);
    assert!(is_elementary(t));
    let p = implication_poset(&f).unwrap();
    let g = graph_of_poset(&p).unwrap();
    assert_eq!(g, parse_graph("n 3\n1 2 B\n2 3 B\n").unwrap());
    assert!(posets_of_graph(&g).unwrap().contains(&p));
    assert_eq!(poset_to_function(&p), t);
    assert_eq!(parse_poset(&p.to_string()).unwrap(), p);
    let again = parse_formula(&render_formula(&implied_formula(t))).unwrap();
    assert_eq!(implication_poset(&again).unwrap(), p);
}

#[test]
fn non_elementary_formula_has_no_poset() {
    let f = parse_formula("n 2\n1 2\n1 -2\n").unwrap();
    assert_eq!(implication_poset(&f), Err(Error::NotElementary));
}

#[test]
fn streamed_posets_match_the_census() {
    for n in 1..=4 {
        let listed = enumerate_pn(n).unwrap().count() as u64;
        assert_eq!(listed, census::count_pn(n).unwrap().value);
        assert_eq!(listed, census::count_elementary(n, true).unwrap().value);
    }
}

#[test]
fn every_engine_agrees_with_its_oracle_at_n3() {
    for q in Quantity::ALL {
        let conv = q.takes_convention().then_some(Convention::T0);
        let fast = census::compute(q, 3, conv, q.fast_method()).unwrap();
        let slow = census::compute(q, 3, conv, q.oracle_method()).unwrap();
        assert_eq!(fast, slow, "{q}");
    }
}

#[test]
fn records_do_not_depend_on_workers() {
    for (q, n, conv, m) in [
        (Quantity::F, 6, None, Method::PrunedDfs),
        (Quantity::G, 5, Some(Convention::T1), Method::ClosureEnum),
        (Quantity::Pn, 4, None, Method::OrientationSweep),
    ] {
        let one = par::with_workers(1, || census::run(q, n, conv, m).unwrap());
        let three = par::with_workers(3, || census::run(q, n, conv, m).unwrap());
        assert_eq!(one.canonical_json(), three.canonical_json());
        assert_eq!(one.checksum, three.checksum);
    }
}

#[test]
fn guards_are_errors_not_panics() {
    assert!(matches!(
        census::compute(Quantity::F, 8, None, Method::PrunedDfs),
        Err(Error::Guard { .. })
    ));
    assert!(matches!(
        census::compute(Quantity::G, 5, Some(Convention::T0), Method::FormulaSweep),
        Err(Error::Guard { .. })
    ));
    assert!(enumerate_pn(6).is_err());
}

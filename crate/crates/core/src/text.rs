//! Line-oriented text formats for formulas, literal posets and colored graphs.
//!
//! All three start with a header line `n <int>`; blank lines and everything
//! after `#` are ignored. Rendering is the `Display` impl of each type, except
//! for formulas which use [`render_formula`].

use crate::boolfn::{Clause, Formula, Literal};
use crate::cgraph::{Color, ColoredGraph};
use crate::error::{Error, Result};
use crate::litposet::LiteralPoset;

/// Meaningful lines as (1-based line number, whitespace-separated tokens).
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((k + 1, tokens))
    })
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<usize> {
    let (line, tokens) = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing `n <int>` header"))?;
    match tokens.as_slice() {
        ["n", v] => v
            .parse()
            .map_err(|_| Error::parse(line, format!("bad variable count {v:?}"))),
        _ => Err(Error::parse(line, "expected `n <int>` header")),
    }
}

fn literal(line: usize, token: &str, n: usize) -> Result<Literal> {
    let v: i64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("bad literal {token:?}")))?;
    let lit =
        Literal::from_signed(v).ok_or_else(|| Error::parse(line, "literal 0 is not allowed"))?;
    if lit.var() >= n {
        return Err(Error::parse(
            line,
            format!("variable {} out of range for n = {n}", lit.var() + 1),
        ));
    }
    Ok(lit)
}

fn literal_pair(line: usize, tokens: &[&str], n: usize) -> Result<(Literal, Literal)> {
    match tokens {
        [a, b] => Ok((literal(line, a, n)?, literal(line, b, n)?)),
        _ => Err(Error::parse(line, "expected two signed integers")),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut it = lines(text);
    let n = header(&mut it)?;
    let mut clauses = Vec::new();
    for (line, tokens) in it {
        let (a, b) = literal_pair(line, &tokens, n)?;
        clauses.push(Clause::new(a, b).map_err(|e| Error::parse(line, e.to_string()))?);
    }
    Formula::new(n, clauses).map_err(|e| Error::parse(1, e.to_string()))
}

pub fn render_formula(f: &Formula) -> String {
    let mut out = format!("n {}\n", f.n());
    for c in f.clauses() {
        out += &format!("{} {}\n", c.first().to_signed(), c.second().to_signed());
    }
    out
}

/// Relations `a b` mean `literal(a) < literal(b)`; the rest follows by
/// negation duality and transitivity.
pub fn parse_poset(text: &str) -> Result<LiteralPoset> {
    let mut it = lines(text);
    let n = header(&mut it)?;
    let mut pairs = Vec::new();
    for (line, tokens) in it {
        pairs.push(literal_pair(line, &tokens, n)?);
    }
    LiteralPoset::generated_by(n, pairs).map_err(|e| Error::parse(1, e.to_string()))
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    let mut it = lines(text);
    let n = header(&mut it)?;
    let mut g = ColoredGraph::new(n).map_err(|e| Error::parse(1, e.to_string()))?;
    for (line, tokens) in it {
        let [u, v, c] = tokens.as_slice() else {
            return Err(Error::parse(line, "expected `u v R` or `u v B`"));
        };
        let vertex = |t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(x) if (1..=n).contains(&x) => Ok(x - 1),
                _ => Err(Error::parse(line, format!("bad vertex {t:?} for n = {n}"))),
            }
        };
        let (i, j) = (vertex(u)?, vertex(v)?);
        if i == j {
            return Err(Error::parse(line, "self-loop"));
        }
        let color = match *c {
            "R" | "r" => Color::Red,
            "B" | "b" => Color::Blue,
            other => return Err(Error::parse(line, format!("bad color {other:?}"))),
        };
        match g.color(i, j) {
            Some(old) if old != color => {
                return Err(Error::parse(
                    line,
                    format!("pair {} {} already colored {}", i + 1, j + 1, old.letter()),
                ))
            }
            _ => g.set(i, j, Some(color)),
        }
    }
    Ok(g)
}

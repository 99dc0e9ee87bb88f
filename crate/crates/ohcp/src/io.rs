//! Text formats. A complex is one maximal simplex per line; a chain or a
//! weight list is `value v0 v1 … vp` per line. `#` starts a comment.

use std::fmt::Write as _;

use num::Signed;
use thiserror::Error;

use crate::complex::{Chain, ComplexError, SimplicialComplex, Vertex};
use crate::rational::{self, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message} (token `{token}`)")]
pub struct ParseError {
    pub line: usize,
    pub token: String,
    pub message: String,
}

fn err(line: usize, token: &str, message: impl Into<String>) -> ParseError {
    ParseError { line, token: token.to_string(), message: message.into() }
}

/// Non-empty, comment-stripped lines with 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn vertex(line: usize, tok: &str) -> Result<Vertex, ParseError> {
    tok.parse::<Vertex>().map_err(|_| err(line, tok, "vertex label must be a non-negative integer"))
}

pub fn parse_complex(text: &str) -> Result<Vec<Vec<Vertex>>, ParseError> {
    let mut out = Vec::new();
    for (line, toks) in lines(text) {
        let vs = toks.iter().map(|t| vertex(line, t)).collect::<Result<Vec<_>, _>>()?;
        for (a, v) in vs.iter().enumerate() {
            if vs[..a].contains(v) {
                return Err(err(line, toks[a], "duplicate vertex in simplex"));
            }
        }
        out.push(vs);
    }
    if out.is_empty() {
        return Err(err(0, "", "complex has no simplices"));
    }
    Ok(out)
}

/// Parses and builds; a construction error is mapped back to its line.
pub fn read_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let simplices = parse_complex(text)?;
    crate::complex::build_complex(&simplices).map_err(|e| match e {
        ComplexError::DuplicateVertex { index, vertex } => {
            let line = lines(text).nth(index).map_or(0, |(l, _)| l);
            err(line, &vertex.to_string(), "duplicate vertex in simplex")
        }
        other => err(0, "", other.to_string()),
    })
}

fn valued_lines(text: &str, k: &SimplicialComplex, dim: usize) -> Result<Vec<(usize, Q, usize, i8)>, ParseError> {
    let mut out = Vec::new();
    for (line, toks) in lines(text) {
        let value = rational::parse(toks[0]).ok_or_else(|| err(line, toks[0], "expected an integer or p/q"))?;
        if toks.len() != dim + 2 {
            let tok = toks.get(1).copied().unwrap_or(toks[0]);
            return Err(err(line, tok, format!("expected {} vertex labels", dim + 1)));
        }
        let vs = toks[1..].iter().map(|t| vertex(line, t)).collect::<Result<Vec<_>, _>>()?;
        let (idx, sign) = k
            .locate(&vs)
            .map_err(|_| err(line, &toks[1..].join(" "), format!("not a {dim}-simplex of the complex")))?;
        out.push((line, value, idx, sign));
    }
    Ok(out)
}

/// Chain of dimension `dim`; a listed orientation opposite to the canonical
/// one flips the sign of the coefficient.
pub fn parse_chain(text: &str, k: &SimplicialComplex, dim: usize) -> Result<Chain, ParseError> {
    let mut c = Chain::zero(dim);
    for (_, value, idx, sign) in valued_lines(text, k, dim)? {
        let v = if sign < 0 { -value } else { value };
        c.add_at(idx, &v);
    }
    Ok(c)
}

/// Weights on the `dim`-simplices; unlisted simplices weigh `default`.
pub fn parse_weights(text: &str, k: &SimplicialComplex, dim: usize, default: &Q) -> Result<Vec<Q>, ParseError> {
    let mut w = vec![default.clone(); k.count(dim)];
    for (line, value, idx, _) in valued_lines(text, k, dim)? {
        if value.is_negative() {
            return Err(err(line, &rational::fmt(&value), "weights must be non-negative"));
        }
        w[idx] = value;
    }
    Ok(w)
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut s = String::new();
    for m in k.maximal_simplices() {
        let parts: Vec<String> = m.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    s
}

pub fn write_chain(k: &SimplicialComplex, c: &Chain) -> String {
    let mut s = String::new();
    for (i, v) in c.iter() {
        let parts: Vec<String> = k.simplex(c.dim(), i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{} {}", rational::fmt(v), parts.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn complex_with_comments() {
        let s = parse_complex("# strip\n1 2 3\n\n2 3 4  # second\n").unwrap();
        assert_eq!(s, vec![vec![1, 2, 3], vec![2, 3, 4]]);
    }

    #[test]
    fn errors_name_line_and_token() {
        let e = parse_complex("1 2 3\n1 x 2\n").unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (2, "x"));
        let e = parse_complex("1 2 3\n\n4 5 4\n").unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (3, "4"));
        let k = read_complex("0 1 2\n").unwrap();
        let e = parse_chain("1 0 1\n3/0 1 2\n", &k, 1).unwrap_err();
        assert_eq!((e.line, e.token.as_str()), (2, "3/0"));
        let e = parse_chain("1 0 5\n", &k, 1).unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn chain_orientation_and_weights() {
        let k = read_complex("0 1 2\n").unwrap();
        let c = parse_chain("2 1 0\n1/2 1 2\n", &k, 1).unwrap();
        assert_eq!(c.get(k.index_of(&[0, 1]).unwrap()), int(-2));
        assert_eq!(c.get(k.index_of(&[1, 2]).unwrap()), frac(1, 2));
        let w = parse_weights("10 0 1\n", &k, 1, &int(1)).unwrap();
        assert_eq!(w, vec![int(10), int(1), int(1)]);
        assert!(parse_weights("-1 0 1\n", &k, 1, &int(1)).is_err());
    }

    #[test]
    fn round_trip() {
        let k = read_complex("3 4 5\n1 2 3\n2 3\n").unwrap();
        let again = read_complex(&write_complex(&k)).unwrap();
        assert_eq!(k, again);
    }
}

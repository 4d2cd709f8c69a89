//! Plain-text file formats. All indices are 1-based.
//!
//! * `.adj` graph: line 1 is `n`, then `n` rows of `n` space-separated 0/1
//!   entries (row `i` lists the out-edges of vertex `i`).
//! * `.vmap` vertex map: line 1 is `n m`, line 2 holds `n` integers in `1..=m`.
//! * `.pam` piecewise affine map: line 1 is `role n` with role `dynamics` or
//!   `quotient`, line 2 holds the `n + 1` grid values `n · f(k/n)`.
//!
//! Parsing is strict: a wrong token count is an error, never padded. Trailing
//! blank lines are ignored.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, VertexSurjection};
use crate::interval::{PiecewiseAffineSpec, Role};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Numbered lines with trailing blank lines dropped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    while lines.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        lines.pop();
    }
    lines
}

fn expect_lines(lines: &[(usize, &str)], count: usize) -> Result<()> {
    if lines.len() < count {
        return Err(parse_error(
            lines.len() + 1,
            format!("expected {count} lines, found {}", lines.len()),
        ));
    }
    if lines.len() > count {
        return Err(parse_error(lines[count].0, "unexpected extra line"));
    }
    Ok(())
}

fn tokens<T: FromStr>(line: usize, text: &str, expected: usize) -> Result<Vec<T>> {
    let raw: Vec<&str> = text.split_whitespace().collect();
    if raw.len() != expected {
        return Err(parse_error(
            line,
            format!("expected {expected} tokens, found {}", raw.len()),
        ));
    }
    raw.iter()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| parse_error(line, format!("invalid number {t:?}")))
        })
        .collect()
}

pub fn parse_adj(text: &str) -> Result<AdjacencyMatrix> {
    let lines = content_lines(text);
    let (line, header) = *lines.first().ok_or_else(|| parse_error(1, "empty file"))?;
    let n: usize = tokens(line, header, 1)?[0];
    if n == 0 {
        return Err(parse_error(line, "vertex count must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for &(line, text) in lines.iter().skip(1).take(n) {
        let row: Vec<u8> = tokens(line, text, n)?;
        if let Some(v) = row.iter().find(|&&v| v > 1) {
            return Err(parse_error(line, format!("entry {v} is not 0 or 1")));
        }
        rows.push(row);
    }
    expect_lines(&lines, n + 1)?;
    AdjacencyMatrix::from_rows(&rows)
}

pub fn write_adj(a: &AdjacencyMatrix) -> String {
    format!("{}\n{}", a.n(), a)
}

pub fn parse_vmap(text: &str) -> Result<VertexSurjection> {
    let lines = content_lines(text);
    let (line, header) = *lines.first().ok_or_else(|| parse_error(1, "empty file"))?;
    let dims: Vec<usize> = tokens(line, header, 2)?;
    let (n, m) = (dims[0], dims[1]);
    if n == 0 || m == 0 {
        return Err(parse_error(line, "sizes must be positive"));
    }
    expect_lines(&lines, 2)?;
    let (line, body) = lines[1];
    let image: Vec<usize> = tokens(line, body, n)?;
    if let Some(v) = image.iter().find(|&&v| v == 0 || v > m) {
        return Err(parse_error(line, format!("value {v} outside 1..={m}")));
    }
    VertexSurjection::from_one_based(&image, m).map_err(|e| parse_error(line, e.to_string()))
}

pub fn write_vmap(f: &VertexSurjection) -> String {
    let image: Vec<String> = f.one_based().iter().map(usize::to_string).collect();
    format!("{} {}\n{}\n", f.domain_size(), f.codomain_size(), image.join(" "))
}

pub fn parse_pam(text: &str) -> Result<PiecewiseAffineSpec> {
    let lines = content_lines(text);
    let (line, header) = *lines.first().ok_or_else(|| parse_error(1, "empty file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(parse_error(line, format!("expected 2 tokens, found {}", head.len())));
    }
    let role: Role = head[0].parse().map_err(|e: Error| parse_error(line, e.to_string()))?;
    let n: usize = head[1]
        .parse()
        .map_err(|_| parse_error(line, format!("invalid number {:?}", head[1])))?;
    if n < 2 {
        return Err(parse_error(line, "grid size must be at least 2"));
    }
    expect_lines(&lines, 2)?;
    let (line, body) = lines[1];
    let values: Vec<i64> = tokens(line, body, n + 1)?;
    PiecewiseAffineSpec::new(role, values)
}

pub fn write_pam(spec: &PiecewiseAffineSpec) -> String {
    let values: Vec<String> = spec.values().iter().map(i64::to_string).collect();
    format!("{} {}\n{}\n", spec.role(), spec.grid(), values.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn adj_roundtrip() {
        let text = "4\n1 1 0 0\n1 1 1 1\n1 1 1 1\n1 1 0 0\n";
        let a = parse_adj(text).unwrap();
        assert_eq!(a.n(), 4);
        assert_eq!(write_adj(&a), text);
        assert_eq!(parse_adj("1\n1\n\n\n").unwrap(), AdjacencyMatrix::ones(1).unwrap());
    }

    #[test]
    fn adj_errors_name_the_line() {
        assert_eq!(line_of(parse_adj("").unwrap_err()), 1);
        assert_eq!(line_of(parse_adj("x\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_adj("0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_adj("2\n1 1\n1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_adj("2\n1 1\n1 2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_adj("2\n1 1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_adj("2\n1 1\n0 1\n1 1\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_adj("2\n1 1 0\n0 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_adj("2\n\n1 1\n0 1\n").unwrap_err()), 2);
    }

    #[test]
    fn vmap_roundtrip() {
        let text = "4 2\n1 2 2 1\n";
        let f = parse_vmap(text).unwrap();
        assert_eq!(f.image(), &[0, 1, 1, 0]);
        assert_eq!(write_vmap(&f), text);
    }

    #[test]
    fn vmap_errors() {
        assert_eq!(line_of(parse_vmap("3 2\n1 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_vmap("3 2\n1 2 3\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_vmap("3 3\n1 2 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_vmap("3\n1 2 2\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_vmap("2 2\n").unwrap_err()), 2);
    }

    #[test]
    fn pam_roundtrip() {
        let text = "dynamics 4\n2 0 4 0 2\n";
        let spec = parse_pam(text).unwrap();
        assert_eq!(spec.role(), Role::Dynamics);
        assert_eq!(spec.values(), &[2, 0, 4, 0, 2]);
        assert_eq!(write_pam(&spec), text);
        let q = parse_pam("quotient 4\n0 0 2 4 4").unwrap();
        assert_eq!(q.role(), Role::Quotient);
    }

    #[test]
    fn pam_errors() {
        assert_eq!(line_of(parse_pam("horseshoe 2\n0 2 0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_pam("dynamics\n0 2 0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_pam("dynamics 1\n0 1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_pam("dynamics 2\n0 2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_pam("dynamics 2\n0 a 0\n").unwrap_err()), 2);
    }
}

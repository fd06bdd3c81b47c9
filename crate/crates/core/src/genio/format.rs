//! Line-oriented text formats.
//!
//! Instances: a `DMDGP <K> <n>` header followed by one `<i> <j> <d>` line per
//! edge. Realizations: one `<i> <x1> ... <xK>` line per vertex. `#` starts a
//! comment in both.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::geometry::Realization;
use crate::instance::{DmdgpInstance, Edge};

use super::GenioError;

/// Content lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((idx + 1, tokens))
    })
}

fn parse<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T, GenioError> {
    token.parse().map_err(|_| GenioError::Syntax {
        line,
        message: format!("bad {what} `{token}`"),
    })
}

pub fn write_instance(instance: &DmdgpInstance) -> String {
    let mut out = String::new();
    writeln!(out, "DMDGP {} {}", instance.dim(), instance.n()).unwrap();
    for (e, d) in instance.edges() {
        writeln!(out, "{} {} {:?}", e.i, e.j, d).unwrap();
    }
    out
}

pub fn read_instance(text: &str) -> Result<DmdgpInstance, GenioError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(GenioError::Syntax {
        line: 1,
        message: "missing `DMDGP <K> <n>` header".into(),
    })?;
    if header[0] != "DMDGP" {
        return Err(GenioError::UnknownDirective {
            line,
            directive: header[0].to_string(),
        });
    }
    if header.len() != 3 {
        return Err(GenioError::Syntax {
            line,
            message: "header must be `DMDGP <K> <n>`".into(),
        });
    }
    let k: usize = parse(header[1], line, "dimension")?;
    let n: usize = parse(header[2], line, "vertex count")?;

    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (line, tokens) in lines {
        if tokens[0].parse::<usize>().is_err() {
            return Err(GenioError::UnknownDirective {
                line,
                directive: tokens[0].to_string(),
            });
        }
        if tokens.len() != 3 {
            return Err(GenioError::Syntax {
                line,
                message: format!("expected `<i> <j> <d>`, found {} fields", tokens.len()),
            });
        }
        let i: usize = parse(tokens[0], line, "vertex")?;
        let j: usize = parse(tokens[1], line, "vertex")?;
        let d: f64 = parse(tokens[2], line, "distance")?;
        if i == j {
            return Err(GenioError::Syntax {
                line,
                message: format!("self loop on vertex {i}"),
            });
        }
        let edge = Edge::new(i, j);
        if !seen.insert(edge) {
            return Err(GenioError::DuplicateEdge { line, edge });
        }
        edges.push((edge, d));
    }
    if edges.is_empty() {
        return Err(GenioError::NoEdges);
    }
    Ok(DmdgpInstance::new(n, k, edges)?)
}

pub fn write_realization(x: &Realization) -> String {
    let mut out = String::new();
    for (v, p) in x.points().enumerate() {
        write!(out, "{}", v + 1).unwrap();
        for c in p {
            write!(out, " {c:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_realization(text: &str) -> Result<Realization, GenioError> {
    let mut dim = None;
    let mut flat = Vec::new();
    let mut expected = 1;
    for (line, tokens) in content_lines(text) {
        let v: usize = parse(tokens[0], line, "vertex")?;
        if v != expected {
            return Err(GenioError::Syntax {
                line,
                message: format!("expected vertex {expected}, found {v}"),
            });
        }
        let k = *dim.get_or_insert(tokens.len() - 1);
        if tokens.len() - 1 != k || k == 0 {
            return Err(GenioError::Syntax {
                line,
                message: format!("expected {k} coordinates, found {}", tokens.len() - 1),
            });
        }
        for t in &tokens[1..] {
            flat.push(parse::<f64>(t, line, "coordinate")?);
        }
        expected += 1;
    }
    let dim = dim.ok_or(GenioError::Syntax {
        line: 1,
        message: "empty realization".into(),
    })?;
    Realization::from_flat(dim, flat).map_err(|e| GenioError::Syntax {
        line: 1,
        message: e.to_string(),
    })
}

//! The `.oml` lattice format.
//!
//! ```text
//! oml 1
//! size 4
//! label 1 p1
//! up 0 : 1 2
//! up 1 : 3
//! up 2 : 3
//! up 3 :
//! ortho : 3 2 1 0
//! bottom 0
//! top 3
//! ```
//!
//! `up i : ...` lists the strict upper covers of `i`; the order is the
//! reflexive-transitive closure of these lines. Every element needs exactly
//! one `up` line. Labels are optional.

use std::fmt::Write;

use super::{number, tokenized, ParseError};
use crate::lattice::Lattice;
use crate::verify::verify;

/// Canonical text for `l`: element ids as stored, covers in ascending order.
pub fn serialize(l: &Lattice) -> String {
    let mut out = String::new();
    writeln!(out, "oml 1").unwrap();
    writeln!(out, "size {}", l.size()).unwrap();
    if let Some(labels) = l.labels() {
        for (i, name) in labels.iter().enumerate() {
            writeln!(out, "label {i} {name}").unwrap();
        }
    }
    for a in l.elements() {
        let mut covers: Vec<usize> = l.upper_covers(a).iter().map(|e| e.index()).collect();
        covers.sort_unstable();
        write!(out, "up {a} :").unwrap();
        for c in covers {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    write!(out, "ortho :").unwrap();
    for a in l.elements() {
        write!(out, " {}", l.ortho(a)).unwrap();
    }
    out.push('\n');
    writeln!(out, "bottom {}", l.bottom()).unwrap();
    writeln!(out, "top {}", l.top()).unwrap();
    out
}

/// Parses and verifies a lattice. Syntax errors carry line numbers; a
/// well-formed file describing a non-orthomodular structure is a
/// [`ParseError::Structure`] error.
pub fn parse(text: &str) -> Result<Lattice, ParseError> {
    let l = parse_unverified(text)?;
    let report = verify(&l);
    if let Some(fail) = report.first_failure() {
        return Err(ParseError::Structure(format!(
            "{} axiom fails: {}",
            fail.axiom.name(),
            fail.witness.as_ref().expect("failed check has a witness")
        )));
    }
    Ok(l)
}

/// Parses without running the axiom checks (the bounded-lattice structure
/// and an involutive orthocomplement are still required).
pub fn parse_unverified(text: &str) -> Result<Lattice, ParseError> {
    let mut lines = tokenized(text);
    match lines.next() {
        Some((_, t)) if t == ["oml", "1"] => {}
        Some((n, _)) => return Err(ParseError::at(n, "expected header `oml 1`")),
        None => return Err(ParseError::at(1, "empty file")),
    }
    let rest: Vec<(usize, Vec<&str>)> = lines.collect();

    let mut size = None;
    for (n, t) in &rest {
        if t[0] == "size" {
            if size.is_some() {
                return Err(ParseError::at(*n, "duplicate `size` line"));
            }
            if t.len() != 2 {
                return Err(ParseError::at(*n, "expected `size N`"));
            }
            size = Some(number(*n, t[1])?);
        }
    }
    let size = size.ok_or_else(|| ParseError::Structure("missing `size` line".into()))?;
    if size == 0 {
        return Err(ParseError::Structure("size must be positive".into()));
    }
    let id = |n: usize, tok: &str| -> Result<usize, ParseError> {
        let v = number(n, tok)?;
        if v >= size {
            return Err(ParseError::at(n, format!("element {v} out of range (size {size})")));
        }
        Ok(v)
    };

    let mut labels: Vec<Option<String>> = vec![None; size];
    let mut ups: Vec<Option<Vec<usize>>> = vec![None; size];
    let mut ortho: Option<(usize, Vec<usize>)> = None;
    let mut bottom = None;
    let mut top = None;
    for (n, t) in &rest {
        let n = *n;
        match t[0] {
            "size" => {}
            "label" => {
                if t.len() != 3 {
                    return Err(ParseError::at(n, "expected `label i name`"));
                }
                let i = id(n, t[1])?;
                if labels[i].replace(t[2].to_string()).is_some() {
                    return Err(ParseError::at(n, format!("duplicate label for element {i}")));
                }
            }
            "up" => {
                if t.len() < 3 || t[2] != ":" {
                    return Err(ParseError::at(n, "expected `up i : j k ...`"));
                }
                let i = id(n, t[1])?;
                let covers = t[3..].iter().map(|tok| id(n, tok)).collect::<Result<Vec<_>, _>>()?;
                if covers.contains(&i) {
                    return Err(ParseError::at(n, format!("element {i} listed as its own cover")));
                }
                if ups[i].replace(covers).is_some() {
                    return Err(ParseError::at(n, format!("duplicate `up` line for element {i}")));
                }
            }
            "ortho" => {
                if t.len() < 2 || t[1] != ":" {
                    return Err(ParseError::at(n, "expected `ortho : o0 o1 ...`"));
                }
                if ortho.is_some() {
                    return Err(ParseError::at(n, "duplicate `ortho` line"));
                }
                let table = t[2..].iter().map(|tok| id(n, tok)).collect::<Result<Vec<_>, _>>()?;
                if table.len() != size {
                    return Err(ParseError::at(
                        n,
                        format!("ortho lists {} images for {size} elements", table.len()),
                    ));
                }
                ortho = Some((n, table));
            }
            "bottom" | "top" => {
                if t.len() != 2 {
                    return Err(ParseError::at(n, format!("expected `{} i`", t[0])));
                }
                let v = id(n, t[1])?;
                let slot = if t[0] == "bottom" { &mut bottom } else { &mut top };
                if slot.replace((n, v)).is_some() {
                    return Err(ParseError::at(n, format!("duplicate `{}` line", t[0])));
                }
            }
            other => return Err(ParseError::at(n, format!("unknown directive {other:?}"))),
        }
    }

    let (ortho_line, ortho) =
        ortho.ok_or_else(|| ParseError::Structure("missing `ortho` line".into()))?;
    for (a, &o) in ortho.iter().enumerate() {
        if ortho[o] != a {
            return Err(ParseError::at(
                ortho_line,
                format!("ortho is not an involution at element {a}: {a} -> {o} -> {}", ortho[o]),
            ));
        }
    }
    let mut covers = Vec::new();
    for (i, up) in ups.iter().enumerate() {
        let up = up
            .as_ref()
            .ok_or_else(|| ParseError::Structure(format!("missing `up` line for element {i}")))?;
        covers.extend(up.iter().map(|&j| (i, j)));
    }
    let labels = if labels.iter().all(Option::is_none) {
        None
    } else {
        Some(
            labels
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
                .collect(),
        )
    };
    let l = Lattice::from_covers(size, &covers, ortho, labels)
        .map_err(|e| ParseError::Structure(e.to_string()))?;
    for (slot, actual, what) in [(bottom, l.bottom(), "bottom"), (top, l.top(), "top")] {
        match slot {
            Some((n, v)) if v != actual.index() => {
                return Err(ParseError::at(n, format!("declared {what} {v} but the order's {what} is {actual}")));
            }
            Some(_) => {}
            None => return Err(ParseError::Structure(format!("missing `{what}` line"))),
        }
    }
    Ok(l)
}

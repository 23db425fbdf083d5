//! The `.poset` cover-relation format.
//!
//! ```text
//! poset 1
//! size 3
//! cover 0 1
//! cover 0 2
//! dim 0 1
//! ```
//!
//! `cover i j` means `i` is covered by `j`. `dim` lines are optional
//! annotations written for non-anonymized exports; readers that feed the
//! reconstruction ignore them.

use std::fmt::Write;

use super::{number, tokenized, ParseError};
use crate::poset::AbstractPoset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetFile {
    pub poset: AbstractPoset,
    /// Present only when every node carries a `dim` line.
    pub dims: Option<Vec<usize>>,
}

pub fn serialize(poset: &AbstractPoset, dims: Option<&[usize]>) -> String {
    let mut out = String::new();
    writeln!(out, "poset 1").unwrap();
    writeln!(out, "size {}", poset.size()).unwrap();
    for &(a, b) in poset.covers() {
        writeln!(out, "cover {a} {b}").unwrap();
    }
    if let Some(dims) = dims {
        for (i, d) in dims.iter().enumerate() {
            writeln!(out, "dim {i} {d}").unwrap();
        }
    }
    out
}

pub fn parse(text: &str) -> Result<PosetFile, ParseError> {
    let mut lines = tokenized(text);
    match lines.next() {
        Some((_, t)) if t == ["poset", "1"] => {}
        Some((n, _)) => return Err(ParseError::at(n, "expected header `poset 1`")),
        None => return Err(ParseError::at(1, "empty file")),
    }
    let rest: Vec<_> = lines.collect();
    let mut size = None;
    for (n, t) in &rest {
        if t[0] == "size" {
            if size.is_some() || t.len() != 2 {
                return Err(ParseError::at(*n, "expected a single `size N` line"));
            }
            size = Some(number(*n, t[1])?);
        }
    }
    let size = size.ok_or_else(|| ParseError::Structure("missing `size` line".into()))?;
    let mut covers = Vec::new();
    let mut dims: Vec<Option<usize>> = vec![None; size];
    for (n, t) in &rest {
        match t[0] {
            "size" => {}
            "cover" => {
                if t.len() != 3 {
                    return Err(ParseError::at(*n, "expected `cover i j`"));
                }
                covers.push((number(*n, t[1])?, number(*n, t[2])?));
            }
            "dim" => {
                if t.len() != 3 {
                    return Err(ParseError::at(*n, "expected `dim i d`"));
                }
                let i = number(*n, t[1])?;
                if i >= size {
                    return Err(ParseError::at(*n, format!("node {i} out of range (size {size})")));
                }
                dims[i] = Some(number(*n, t[2])?);
            }
            other => return Err(ParseError::at(*n, format!("unknown directive {other:?}"))),
        }
    }
    let poset = AbstractPoset::new(size, covers).map_err(|e| ParseError::Structure(e.to_string()))?;
    let dims = dims.iter().all(Option::is_some).then(|| dims.into_iter().flatten().collect());
    Ok(PosetFile { poset, dims: if size == 0 { None } else { dims } })
}

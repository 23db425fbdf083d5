//! The `.gd` Greechie diagram format.
//!
//! ```text
//! # bowtie
//! atoms: a b c d e
//! block: a b c
//! block: c d e
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::{tokenized, ParseError};
use crate::greechie::GreechieDiagram;

pub fn serialize(g: &GreechieDiagram) -> String {
    let mut out = String::new();
    writeln!(out, "atoms: {}", g.atoms.join(" ")).unwrap();
    for block in &g.blocks {
        let names: Vec<&str> = block.iter().map(|&a| g.atoms[a].as_str()).collect();
        writeln!(out, "block: {}", names.join(" ")).unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<GreechieDiagram, ParseError> {
    let mut atoms: Option<Vec<String>> = None;
    let mut raw_blocks: Vec<(usize, Vec<&str>)> = Vec::new();
    for (n, t) in tokenized(text) {
        let (head, body) = split_directive(&t);
        match head {
            "atoms" => {
                if atoms.is_some() {
                    return Err(ParseError::at(n, "duplicate `atoms:` line"));
                }
                atoms = Some(body.iter().map(|s| s.to_string()).collect());
            }
            "block" => raw_blocks.push((n, body.to_vec())),
            other => return Err(ParseError::at(n, format!("unknown directive {other:?}"))),
        }
    }
    let atoms = atoms.ok_or_else(|| ParseError::Structure("missing `atoms:` line".into()))?;
    let index: HashMap<&str, usize> =
        atoms.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let mut blocks = Vec::with_capacity(raw_blocks.len());
    for (n, names) in raw_blocks {
        let block = names
            .iter()
            .map(|name| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| ParseError::at(n, format!("undeclared atom {name:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(block);
    }
    GreechieDiagram::new(atoms, blocks).map_err(|e| ParseError::Structure(e.to_string()))
}

/// Accepts both `atoms: a b` and `atoms : a b`.
fn split_directive<'a, 'b>(t: &'b [&'a str]) -> (&'a str, &'b [&'a str]) {
    if let Some(head) = t[0].strip_suffix(':') {
        (head, &t[1..])
    } else if t.get(1) == Some(&":") {
        (t[0], &t[2..])
    } else {
        (t[0], &t[1..])
    }
}

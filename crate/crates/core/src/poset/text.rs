//! Line-oriented poset files:
//!
//! ```text
//! name: diamond
//! elements: 1 2 3 4
//! cover: 1 2
//! cover: 1 3
//! rel: 2 4
//! ```
//!
//! `rel:` lines carry a relation for partially ordinal sums; they are
//! returned separately and do not affect the poset. Blank lines and lines
//! starting with `#` are skipped.

use std::fmt::Write as _;

use super::{ElementId, Poset, PosetError, Relation};

#[derive(Clone, Debug)]
pub struct PosetFile {
    pub name: Option<String>,
    pub poset: Poset,
    pub rel: Relation,
}

#[derive(Debug, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

fn ids(line: usize, rest: &str) -> Result<Vec<ElementId>, ParseError> {
    rest.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map(ElementId)
                .map_err(|_| err(line, format!("bad element id `{t}`")))
        })
        .collect()
}

fn pair(line: usize, rest: &str) -> Result<(ElementId, ElementId), ParseError> {
    match ids(line, rest)?[..] {
        [a, b] => Ok((a, b)),
        _ => Err(err(line, "expected exactly two ids")),
    }
}

pub fn parse_poset_file(src: &str) -> Result<PosetFile, ParseError> {
    let mut name = None;
    let mut elements: Option<Vec<ElementId>> = None;
    let mut covers = Vec::new();
    let mut rels = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (key, rest) = text
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        match key.trim() {
            "name" => name = Some(rest.trim().to_string()),
            "elements" => {
                if elements.is_some() {
                    return Err(err(line, "duplicate `elements:` line"));
                }
                elements = Some(ids(line, rest)?);
            }
            "cover" => covers.push((line, pair(line, rest)?)),
            "rel" => rels.push(pair(line, rest)?),
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let elements = elements.unwrap_or_default();
    for &(line, (a, b)) in &covers {
        for x in [a, b] {
            if !elements.contains(&x) {
                return Err(err(line, PosetError::UnknownElement(x).to_string()));
            }
        }
    }
    let poset = match Poset::build(elements.clone(), covers.iter().map(|&(_, p)| p)) {
        Ok(p) => p,
        Err(e) => {
            // blame the first cover line that closes a cycle
            let line = (1..=covers.len())
                .find(|&k| {
                    Poset::build(elements.clone(), covers[..k].iter().map(|&(_, p)| p)).is_err()
                })
                .map_or(0, |k| covers[k - 1].0);
            return Err(err(line, e.to_string()));
        }
    };
    Ok(PosetFile {
        name,
        poset,
        rel: Relation::new(rels),
    })
}

pub fn render_poset_file(p: &Poset, name: Option<&str>, rel: Option<&Relation>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        let _ = writeln!(out, "name: {n}");
    }
    let els: Vec<String> = p.elements().iter().map(|e| e.to_string()).collect();
    let _ = writeln!(out, "elements: {}", els.join(" "));
    for (a, b) in p.covers() {
        let _ = writeln!(out, "cover: {a} {b}");
    }
    if let Some(r) = rel {
        for (a, b) in r.pairs() {
            let _ = writeln!(out, "rel: {a} {b}");
        }
    }
    out
}

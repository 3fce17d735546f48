//! Line-oriented text formats for posets, functions and filtrations.
//!
//! Poset files hold `elem <label>` and `rel <a> <b>` (meaning `a < b`) lines;
//! function files hold `val <label> <integer>` lines; filtration files hold
//! `<n>: <members>` lines with `@all` / `@empty`. Blank lines and lines
//! starting with `#` are ignored everywhere.

use crate::error::{Error, Result};
use crate::filtration::{make_filtration_indices, PosetHom, SpFiltration};
use crate::poset::{build_poset, PosetRef, PrimePoset, Subset};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, raw: &str, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: format!("{msg}: `{raw}`"),
    }
}

fn valid_label(l: &str) -> bool {
    !l.is_empty()
        && l
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

pub fn parse_poset(text: &str) -> Result<PrimePoset> {
    let mut elements: Vec<(usize, String)> = Vec::new();
    let mut relations: Vec<(usize, String, String)> = Vec::new();
    for (line, raw) in content_lines(text) {
        let words: Vec<&str> = raw.split_whitespace().collect();
        match words.as_slice() {
            ["elem", l] if valid_label(l) => elements.push((line, l.to_string())),
            ["rel", a, b] if valid_label(a) && valid_label(b) => {
                relations.push((line, a.to_string(), b.to_string()))
            }
            _ => return Err(parse_err(line, raw, "expected `elem <label>` or `rel <a> <b>`")),
        }
    }
    // Resolve the per-line errors first so they carry a line number.
    let mut seen = std::collections::HashSet::new();
    for (line, l) in &elements {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()).at_line(*line));
        }
    }
    for (line, a, b) in &relations {
        for l in [a, b] {
            if !seen.contains(l.as_str()) {
                return Err(Error::UnknownLabel(l.clone()).at_line(*line));
            }
        }
    }
    let labels: Vec<String> = elements.into_iter().map(|(_, l)| l).collect();
    let rels: Vec<(String, String)> = relations.into_iter().map(|(_, a, b)| (a, b)).collect();
    build_poset(&labels, &rels)
}

pub fn parse_function(poset: &PosetRef, text: &str) -> Result<PosetHom> {
    let mut values = vec![None; poset.len()];
    let mut last = 0;
    for (line, raw) in content_lines(text) {
        last = line;
        let words: Vec<&str> = raw.split_whitespace().collect();
        let ["val", label, v] = words.as_slice() else {
            return Err(parse_err(line, raw, "expected `val <label> <integer>`"));
        };
        let v: i64 = v
            .parse()
            .map_err(|_| parse_err(line, raw, "value is not an integer"))?;
        let i = poset.index_of(label).map_err(|e| e.at_line(line))?;
        if values[i].replace(v).is_some() {
            return Err(Error::DuplicateLabel(label.to_string()).at_line(line));
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (i, v) in values.into_iter().enumerate() {
        match v {
            Some(v) => out.push(v),
            None => {
                return Err(Error::Parse {
                    line: last + 1,
                    msg: format!("missing `val` line for element `{}`", poset.label(i)),
                })
            }
        }
    }
    PosetHom::new(poset, out)
}

fn parse_members(poset: &PrimePoset, body: &str) -> Result<Subset> {
    match body.trim() {
        "@all" => Ok(poset.all()),
        "@empty" | "" => Ok(Subset::new()),
        list => poset.subset(list.split(',').map(str::trim)),
    }
}

pub fn parse_filtration(poset: &PosetRef, text: &str) -> Result<SpFiltration> {
    let mut steps = Vec::new();
    for (line, raw) in content_lines(text) {
        let (n, body) = raw
            .split_once(':')
            .ok_or_else(|| parse_err(line, raw, "expected `<n>: <members>`"))?;
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| parse_err(line, raw, "index is not an integer"))?;
        steps.push((n, parse_members(poset, body).map_err(|e| e.at_line(line))?));
    }
    make_filtration_indices(poset, steps)
}

/// A label list as accepted on the command line: `a,b`, `@all` or `@empty`.
pub fn parse_label_set(poset: &PrimePoset, text: &str) -> Result<Subset> {
    parse_members(poset, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn poset_file() {
        let p = parse_poset("# two primes\nelem a\nelem b\n\nrel a b\n").unwrap();
        assert_eq!(p.labels(), &["a", "b"]);
        assert_eq!(p.covers(), &[(0, 1)]);
    }

    #[test]
    fn poset_file_errors() {
        let e = parse_poset("elem a\nrel a c\n").unwrap_err();
        assert_eq!(e.name(), "UnknownLabel");
        assert!(e.to_string().starts_with("line 2:"), "{e}");
        let e = parse_poset("elem a\nfoo\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "expected `elem <label>` or `rel <a> <b>`: `foo`".into() });
        let e = parse_poset("elem a-b\n").unwrap_err();
        assert_eq!(e.name(), "ParseError");
        assert_eq!(parse_poset("elem a\nelem a\n").unwrap_err().name(), "DuplicateLabel");
        assert_eq!(parse_poset("elem a\nelem b\nrel a b\nrel b a\n").unwrap_err().name(), "CycleDetected");
    }

    #[test]
    fn function_file() {
        let p = Arc::new(parse_poset("elem g\nelem p\nrel g p\n").unwrap());
        let f = parse_function(&p, "val p 3\nval g 1\n").unwrap();
        assert_eq!(f.values(), &[1, 3]);
        let e = parse_function(&p, "val g 1\n").unwrap_err();
        assert_eq!(e.name(), "ParseError");
        assert!(e.to_string().contains("`p`"), "{e}");
        assert_eq!(parse_function(&p, "val g 2\nval p 1\n").unwrap_err().name(), "NotIncreasing");
        assert_eq!(parse_function(&p, "val g x\n").unwrap_err().name(), "ParseError");
        assert_eq!(parse_function(&p, "val q 1\n").unwrap_err().name(), "UnknownLabel");
    }

    #[test]
    fn filtration_file() {
        let p = Arc::new(parse_poset("elem g\nelem p\nrel g p\n").unwrap());
        let phi = parse_filtration(&p, "-1: @all\n0: p\n1: @empty\n").unwrap();
        assert_eq!(phi.to_string(), "-1: @all\n0: p\n");
        assert_eq!(parse_filtration(&p, "0: g\n").unwrap_err(), Error::NotUpperSet(0));
    }
}

//! Line-oriented catalog text format, bit-exact rationals only:
//!
//! ```text
//! # comment
//! algebra D4 dim=5
//! flag unimodular=true
//! flag lattice=none
//! flag param.p=2/1
//! bracket 2 3 -> 1:1/1
//! contact 1:1/1 4:1/1
//! split n=1,2,3,4 t=5
//! beta 1 1 1 -3/1
//! ```
//!
//! Indices are 1-based in the file. Serializing the compiled catalog and
//! parsing it back must round-trip exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::CatalogEntry;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedEntry {
    pub name: String,
    pub dim: usize,
    /// `((i, j), [(k, c), ...])`, all indices 0-based after parsing.
    pub brackets: Vec<((usize, usize), Vec<(usize, BigRational)>)>,
    pub contact: Vec<(usize, BigRational)>,
    pub split: Option<(Vec<usize>, Vec<usize>)>,
    /// `(generator, row, col, value)`, 0-based.
    pub beta: Vec<(usize, usize, usize, BigRational)>,
    pub flags: BTreeMap<String, String>,
}

fn fmt_q(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rational_of(s: &Scalar) -> Result<BigRational> {
    s.as_rational().cloned().ok_or_else(|| {
        Error::NotRational("catalog files carry rational coefficients only".into())
    })
}

/// Serialize one entry to the text grammar.
pub fn serialize_entry(e: &CatalogEntry) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("algebra {} dim={}\n", e.key, e.dim()));
    out.push_str(&format!("flag unimodular={}\n", e.expected.unimodular));
    out.push_str(&format!("flag solvable={}\n", e.expected.solvable));
    out.push_str(&format!("flag nilpotent={}\n", e.expected.nilpotent));
    out.push_str(&format!("flag lattice={}\n", e.expected.lattice));
    for (k, v) in &e.params {
        out.push_str(&format!("flag param.{k}={}\n", fmt_q(v)));
    }
    for (&(i, j), terms) in e.algebra.table() {
        let mut line = format!("bracket {} {} ->", i + 1, j + 1);
        for (k, c) in terms {
            line.push_str(&format!(" {}:{}", k + 1, fmt_q(&rational_of(c)?)));
        }
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(eta) = &e.contact {
        let mut line = String::from("contact");
        for (idx, c) in eta.terms() {
            line.push_str(&format!(" {}:{}", idx[0] + 1, fmt_q(&rational_of(c)?)));
        }
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(split) = &e.split {
        let ns: Vec<String> = split.n_indices.iter().map(|i| (i + 1).to_string()).collect();
        let ts: Vec<String> = split.t_indices.iter().map(|i| (i + 1).to_string()).collect();
        out.push_str(&format!(
            "split n={} t={}\n",
            ns.join(","),
            if ts.is_empty() { "-".into() } else { ts.join(",") }
        ));
        for (g, b) in split.beta.iter().enumerate() {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    if !b[(r, c)].is_zero() {
                        out.push_str(&format!(
                            "beta {} {} {} {}\n",
                            g + 1,
                            r + 1,
                            c + 1,
                            fmt_q(&b[(r, c)])
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Serialize a list of entries, separated by comment headers.
pub fn serialize_catalog(entries: &[CatalogEntry]) -> Result<String> {
    let mut out = String::from("# catalog of contact/lattice test algebras\n");
    for e in entries {
        out.push('\n');
        out.push_str(&format!("# {}\n", e.name));
        out.push_str(&serialize_entry(e)?);
    }
    Ok(out)
}

fn parse_q(tok: &str, line: usize) -> Result<BigRational> {
    let err = |detail: &str| Error::Parse { line, detail: detail.into() };
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = tok.parse().map_err(|_| err("bad rational"))?;
            Ok(BigRational::from_integer(n))
        }
    }
}

fn parse_index(tok: &str, line: usize, dim: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::Parse { line, detail: format!("bad index '{tok}'") })?;
    if v == 0 || v > dim {
        return Err(Error::Parse { line, detail: format!("index {v} out of range 1..{dim}") });
    }
    Ok(v - 1)
}

/// Parse the catalog text grammar; indices come back 0-based.
pub fn parse_catalog(text: &str) -> Result<Vec<ParsedEntry>> {
    let mut entries: Vec<ParsedEntry> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        let perr = |detail: String| Error::Parse { line, detail };
        match head {
            "algebra" => {
                let name = toks
                    .next()
                    .ok_or_else(|| perr("algebra needs a name".into()))?
                    .to_string();
                let dim_tok = toks.next().ok_or_else(|| perr("algebra needs dim=<n>".into()))?;
                let dim: usize = dim_tok
                    .strip_prefix("dim=")
                    .ok_or_else(|| perr("expected dim=<n>".into()))?
                    .parse()
                    .map_err(|_| perr("bad dimension".into()))?;
                entries.push(ParsedEntry { name, dim, ..Default::default() });
            }
            "flag" => {
                let e = entries.last_mut().ok_or_else(|| perr("flag before algebra".into()))?;
                let kv = toks.next().ok_or_else(|| perr("flag needs key=value".into()))?;
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| perr("flag needs key=value".into()))?;
                e.flags.insert(k.to_string(), v.to_string());
            }
            "bracket" => {
                let e = entries.last_mut().ok_or_else(|| perr("bracket before algebra".into()))?;
                let dim = e.dim;
                let i = parse_index(toks.next().ok_or_else(|| perr("missing i".into()))?, line, dim)?;
                let j = parse_index(toks.next().ok_or_else(|| perr("missing j".into()))?, line, dim)?;
                let arrow = toks.next().ok_or_else(|| perr("missing ->".into()))?;
                if arrow != "->" {
                    return Err(perr(format!("expected '->', found '{arrow}'")));
                }
                let mut terms = Vec::new();
                for t in toks {
                    let (k, c) = t
                        .split_once(':')
                        .ok_or_else(|| perr(format!("expected k:num/den, found '{t}'")))?;
                    terms.push((parse_index(k, line, dim)?, parse_q(c, line)?));
                }
                if terms.is_empty() {
                    return Err(perr("bracket line without targets".into()));
                }
                e.brackets.push(((i, j), terms));
            }
            "contact" => {
                let e = entries.last_mut().ok_or_else(|| perr("contact before algebra".into()))?;
                let dim = e.dim;
                for t in toks {
                    let (k, c) = t
                        .split_once(':')
                        .ok_or_else(|| perr(format!("expected i:num/den, found '{t}'")))?;
                    e.contact.push((parse_index(k, line, dim)?, parse_q(c, line)?));
                }
            }
            "split" => {
                let e = entries.last_mut().ok_or_else(|| perr("split before algebra".into()))?;
                let dim = e.dim;
                let n_tok = toks.next().ok_or_else(|| perr("split needs n=...".into()))?;
                let t_tok = toks.next().ok_or_else(|| perr("split needs t=...".into()))?;
                let parse_list = |tok: &str, prefix: &str| -> Result<Vec<usize>> {
                    let body = tok
                        .strip_prefix(prefix)
                        .ok_or_else(|| perr(format!("expected {prefix}...")))?;
                    if body == "-" {
                        return Ok(vec![]);
                    }
                    body.split(',').map(|p| parse_index(p, line, dim)).collect()
                };
                e.split = Some((parse_list(n_tok, "n=")?, parse_list(t_tok, "t=")?));
            }
            "beta" => {
                let e = entries.last_mut().ok_or_else(|| perr("beta before algebra".into()))?;
                let g: usize = toks
                    .next()
                    .ok_or_else(|| perr("beta needs generator".into()))?
                    .parse()
                    .map_err(|_| perr("bad generator index".into()))?;
                if g == 0 {
                    return Err(perr("generator index is 1-based".into()));
                }
                let m = e.split.as_ref().map(|(n, _)| n.len()).unwrap_or(e.dim);
                let r = parse_index(toks.next().ok_or_else(|| perr("missing row".into()))?, line, m)?;
                let c = parse_index(toks.next().ok_or_else(|| perr("missing col".into()))?, line, m)?;
                let v = parse_q(toks.next().ok_or_else(|| perr("missing value".into()))?, line)?;
                e.beta.push((g - 1, r, c, v));
            }
            other => return Err(perr(format!("unknown directive '{other}'"))),
        }
    }
    Ok(entries)
}

/// Compare a parsed entry against a compiled one: bracket table, contact
/// form, split indices, beta matrices, and flags must all agree exactly.
pub fn matches_entry(parsed: &ParsedEntry, compiled: &CatalogEntry) -> Result<()> {
    let fail = |what: &str| Error::structure("catalog-roundtrip", format!("{}: {what}", compiled.name));
    if parsed.dim != compiled.dim() {
        return Err(fail("dimension"));
    }
    // brackets
    let mut want: BTreeMap<(usize, usize), Vec<(usize, BigRational)>> = BTreeMap::new();
    for (&(i, j), terms) in compiled.algebra.table() {
        want.insert(
            (i, j),
            terms
                .iter()
                .map(|(k, c)| Ok((*k, rational_of(c)?)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut got: BTreeMap<(usize, usize), Vec<(usize, BigRational)>> = BTreeMap::new();
    for ((i, j), terms) in &parsed.brackets {
        let mut t = terms.clone();
        t.sort_by_key(|(k, _)| *k);
        got.insert((*i, *j), t);
    }
    if want != got {
        return Err(fail("bracket table"));
    }
    // contact form
    match &compiled.contact {
        Some(eta) => {
            let mut want: Vec<(usize, BigRational)> = Vec::new();
            for (idx, c) in eta.terms() {
                want.push((idx[0], rational_of(c)?));
            }
            let mut got = parsed.contact.clone();
            got.sort_by_key(|(i, _)| *i);
            if want != got {
                return Err(fail("contact form"));
            }
        }
        None => {
            if !parsed.contact.is_empty() {
                return Err(fail("unexpected contact form"));
            }
        }
    }
    // split + beta
    match (&compiled.split, &parsed.split) {
        (None, None) => {}
        (Some(s), Some((n, t))) => {
            if &s.n_indices != n || &s.t_indices != t {
                return Err(fail("split indices"));
            }
            for (g, b) in s.beta.iter().enumerate() {
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        let stored = parsed
                            .beta
                            .iter()
                            .find(|(pg, pr, pc, _)| (*pg, *pr, *pc) == (g, r, c))
                            .map(|(_, _, _, v)| v.clone())
                            .unwrap_or_else(|| BigRational::from_integer(0.into()));
                        if stored != b[(r, c)] {
                            return Err(fail("beta matrix"));
                        }
                    }
                }
            }
        }
        _ => return Err(fail("split presence")),
    }
    // flags
    let expect_flags = [
        ("unimodular", compiled.expected.unimodular.to_string()),
        ("solvable", compiled.expected.solvable.to_string()),
        ("nilpotent", compiled.expected.nilpotent.to_string()),
        ("lattice", compiled.expected.lattice.to_string()),
    ];
    for (k, v) in expect_flags {
        if parsed.flags.get(k) != Some(&v) {
            return Err(fail(&format!("flag {k}")));
        }
    }
    for (k, v) in &compiled.params {
        if parsed.flags.get(&format!("param.{k}")) != Some(&fmt_q(v)) {
            return Err(fail(&format!("param {k}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_entries, get, Params};

    #[test]
    fn round_trip_all_entries() {
        let entries = all_entries();
        let text = serialize_catalog(&entries).unwrap();
        let parsed = parse_catalog(&text).unwrap();
        assert_eq!(parsed.len(), entries.len());
        for (p, e) in parsed.iter().zip(&entries) {
            matches_entry(p, e).unwrap();
        }
    }

    #[test]
    fn corrupted_line_reports_position() {
        let e = get("D1", &Params::default()).unwrap();
        let mut text = serialize_entry(&e).unwrap();
        text.push_str("bracket 9 1 -> 1:1/1\n");
        let lines = text.lines().count();
        match parse_catalog(&text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, lines),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_bracket_detected_against_compiled() {
        let e = get("D1", &Params::default()).unwrap();
        let text = serialize_entry(&e).unwrap().replace("bracket 2 4 -> 1:1/1", "bracket 2 4 -> 5:1/1");
        let parsed = parse_catalog(&text).unwrap();
        assert!(matches_entry(&parsed[0], &e).is_err());
    }
}

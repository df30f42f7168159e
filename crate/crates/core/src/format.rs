//! Line-oriented text documents for graded algebras (`gda 1`) and
//! classification records (`record 1`).
//!
//! ```text
//! gda 1
//! kind C
//! n 2
//! group Z4
//! support (0) (1) (2) (3)
//! component (0):
//! [ 1, 0 ; 0, 1 ]
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Degrees are
//! additive exponent tuples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::classify::{CaseTag, ClassificationRecord, Commutation, Payload};
use crate::error::{Error, Result};
use crate::forms::{Bicharacter, QuadraticForm, Sign};
use crate::graded::GradedAlgebra;
use crate::group::{Elem, Group, Subgroup};
use crate::matrix::Matrix;
use crate::scalar::{parse_scalar, Kind};

pub const GDA_HEADER: &str = "gda 1";
pub const RECORD_HEADER: &str = "record 1";

pub fn format_gda(a: &GradedAlgebra) -> String {
    let g = a.group();
    let mut s = String::new();
    writeln!(s, "{GDA_HEADER}").unwrap();
    writeln!(s, "kind {}", a.kind()).unwrap();
    writeln!(s, "n {}", a.n()).unwrap();
    writeln!(s, "group {g}").unwrap();
    writeln!(s, "support {}", elems(g, &a.support_elements())).unwrap();
    for (&t, mats) in a.components() {
        writeln!(s, "component {}:", g.format_elem(t)).unwrap();
        for m in mats {
            writeln!(s, "{m}").unwrap();
        }
    }
    s
}

fn elems(g: Group, xs: &[Elem]) -> String {
    xs.iter().map(|&x| g.format_elem(x)).collect::<Vec<_>>().join(" ")
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect()
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Wraps an error from a sub-parser with the line (and column) it came from.
fn at(line: usize, col: usize, e: Error) -> Error {
    match e {
        Error::Syntax { pos, msg } => perr(line, format!("column {}: {msg}", col + pos + 1)),
        Error::WrongSymbol { pos, symbol, kind } => {
            perr(line, format!("column {}: symbol `{symbol}` is not allowed for kind {kind}", col + pos + 1))
        }
        Error::Parse { .. } => e,
        other => perr(line, other.to_string()),
    }
}

fn keyword<'a>(line: (usize, &'a str), key: &str) -> Result<&'a str> {
    let (n, l) = line;
    l.strip_prefix(key)
        .and_then(|r| if r.is_empty() { Some(r) } else { r.strip_prefix(' ') })
        .map(str::trim)
        .ok_or_else(|| perr(n, format!("expected `{key} ...`")))
}

/// `[ a, b ; c, d ]` with entries in the scalar grammar of `kind`.
pub fn parse_matrix(text: &str, kind: Kind) -> Result<Matrix> {
    let t = text.trim_end();
    let lead = t.len() - t.trim_start().len();
    let t = t.trim_start();
    let body = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Syntax { pos: lead, msg: "matrix must be enclosed in [ ]".into() })?;
    let mut offset = lead + 1;
    let mut rows = Vec::new();
    for row in body.split(';') {
        let mut entries = Vec::new();
        for entry in row.split(',') {
            let s = parse_scalar(entry, kind).map_err(|e| shift(e, offset))?;
            entries.push(s);
            offset += entry.len() + 1;
        }
        rows.push(entries);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("matrix literal is not square ({n} rows)")));
    }
    Matrix::from_rows(kind, rows)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        Error::WrongSymbol { pos, symbol, kind } => Error::WrongSymbol { pos: pos + by, symbol, kind },
        other => other,
    }
}

/// Parses a document into a grading; the grading axioms are not checked.
pub fn parse_gda(text: &str) -> Result<GradedAlgebra> {
    let lines = content_lines(text);
    let last = lines.last().map_or(1, |l| l.0);
    let support_line = lines.get(4).map_or(1, |l| l.0);
    let mut it: Lines<'_> = lines.into_iter().peekable();
    let header = next_line(&mut it, last, "header")?;
    if header.1 != GDA_HEADER {
        return Err(perr(header.0, format!("expected `{GDA_HEADER}`")));
    }
    let l = next_line(&mut it, last, "kind")?;
    let kind = Kind::from_symbol(keyword(l, "kind")?).ok_or_else(|| perr(l.0, "kind must be R, C or H"))?;
    let l = next_line(&mut it, last, "n")?;
    let n: usize = keyword(l, "n")?.parse().map_err(|_| perr(l.0, "n must be a positive integer"))?;
    if n == 0 {
        return Err(perr(l.0, "n must be positive"));
    }
    let l = next_line(&mut it, last, "group")?;
    let g = Group::parse(keyword(l, "group")?).map_err(|e| at(l.0, 0, e))?;
    let l = next_line(&mut it, last, "support")?;
    let declared = parse_elems(g, keyword(l, "support")?).map_err(|e| at(l.0, 0, e))?;
    let mut comps: BTreeMap<Elem, Vec<Matrix>> = BTreeMap::new();
    let mut order = Vec::new();
    while let Some((ln, line)) = it.next() {
        let head = keyword((ln, line), "component")?;
        let deg = head.strip_suffix(':').ok_or_else(|| perr(ln, "component header must end with `:`"))?;
        let t = g.parse_elem(deg).map_err(|e| at(ln, 0, e))?;
        if comps.contains_key(&t) {
            return Err(perr(ln, format!("component {deg} declared twice")));
        }
        let mut mats = Vec::new();
        while let Some(&(mln, mline)) = it.peek() {
            if mline.starts_with("component") {
                break;
            }
            it.next();
            let m = parse_matrix(mline, kind).map_err(|e| at(mln, 0, e))?;
            if m.rows() != n {
                return Err(perr(mln, format!("matrix is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
            }
            mats.push(m);
        }
        if mats.is_empty() {
            return Err(perr(ln, format!("component {deg} has no matrices")));
        }
        order.push(t);
        comps.insert(t, mats);
    }
    if order != declared {
        return Err(perr(support_line, "support line does not list the components in order"));
    }
    GradedAlgebra::new(kind, n, g, comps)
}

fn next_line<'a>(it: &mut Lines<'a>, last: usize, what: &str) -> Result<(usize, &'a str)> {
    it.next().ok_or_else(|| perr(last, format!("unexpected end of document, expected {what}")))
}

fn parse_elems(g: Group, text: &str) -> Result<Vec<Elem>> {
    text.split_whitespace().map(|t| g.parse_elem(t)).collect()
}

fn signs_line(g: Group, entries: impl Iterator<Item = (Elem, Sign)>) -> String {
    entries.map(|(x, s)| format!("{} {}", g.format_elem(x), s.symbol())).collect::<Vec<_>>().join(" ")
}

fn beta_line(beta: &Bicharacter) -> String {
    let g = beta.domain().parent();
    beta.minus_pairs()
        .iter()
        .map(|&(x, y)| format!("{} {}", g.format_elem(x), g.format_elem(y)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// One-line human summary of a record.
pub fn summary(r: &ClassificationRecord) -> String {
    let signs = |m: &mut dyn Iterator<Item = (Elem, Sign)>| m.map(|(_, s)| s.symbol().to_string()).collect::<Vec<_>>().join(",");
    let detail = match &r.payload {
        Payload::Form { mu } => format!("mu = {}", signs(&mut mu.entries())),
        Payload::BetaForm { mu, .. } => format!("mu on T2 = {}", signs(&mut mu.entries())),
        Payload::Nice { k, nu } | Payload::BetaNice { k, nu, .. } => {
            format!("K = {}, nu = {}", k.shape(), signs(&mut nu.iter().map(|(&x, &s)| (x, s))))
        }
        Payload::NuClass { nu } => format!("[nu] = {}", signs(&mut nu.iter().map(|(&x, &s)| (x, s)))),
        Payload::Centralizer { kind, case, .. } => format!("centralizer {kind} case {case}"),
        Payload::Deferred { .. } => "deferred".to_string(),
    };
    format!("case {}, T = {}, {detail}", r.case, r.support.shape())
}

pub fn format_record(r: &ClassificationRecord) -> String {
    let g = r.group();
    let mut s = String::new();
    writeln!(s, "{RECORD_HEADER}").unwrap();
    writeln!(s, "case {}", r.case).unwrap();
    writeln!(s, "kind {}", r.kind).unwrap();
    writeln!(s, "n {}", r.n).unwrap();
    writeln!(s, "dim {}", r.dim).unwrap();
    writeln!(s, "group {g}").unwrap();
    writeln!(s, "support {}", r.support.format_elements()).unwrap();
    write_payload(&mut s, g, &r.payload);
    if r.is_deferred() {
        writeln!(s, "deferred yes").unwrap();
    }
    s
}

fn field(s: &mut String, key: &str, rest: &str) {
    if rest.is_empty() {
        writeln!(s, "{key}").unwrap();
    } else {
        writeln!(s, "{key} {rest}").unwrap();
    }
}

fn write_payload(s: &mut String, g: Group, p: &Payload) {
    let map_line = |nu: &BTreeMap<Elem, Sign>| signs_line(g, nu.iter().map(|(&x, &v)| (x, v)));
    match p {
        Payload::Form { mu } => {
            writeln!(s, "payload form").unwrap();
            field(s, "mu", &signs_line(g, mu.entries()));
        }
        Payload::BetaForm { beta, mu } => {
            writeln!(s, "payload beta-form").unwrap();
            field(s, "beta", &beta_line(beta));
            field(s, "mu", &signs_line(g, mu.entries()));
        }
        Payload::Nice { k, nu } => {
            writeln!(s, "payload nice").unwrap();
            field(s, "k", &k.format_elements());
            field(s, "nu", &map_line(nu));
        }
        Payload::BetaNice { k, beta, nu } => {
            writeln!(s, "payload beta-nice").unwrap();
            field(s, "k", &k.format_elements());
            field(s, "beta", &beta_line(beta));
            field(s, "nu", &map_line(nu));
        }
        Payload::NuClass { nu } => {
            writeln!(s, "payload nu-class").unwrap();
            field(s, "nu", &map_line(nu));
        }
        Payload::Centralizer { kind, case, inner } => {
            writeln!(s, "payload centralizer {kind} {case}").unwrap();
            write_payload(s, g, inner);
        }
        Payload::Deferred { commutation } => {
            writeln!(s, "payload deferred").unwrap();
            let parts: Vec<String> = commutation
                .exps
                .iter()
                .map(|(&(x, y), &k)| format!("{} {} {k}", g.format_elem(x), g.format_elem(y)))
                .collect();
            field(s, "commutation", &parts.join(" ; "));
        }
    }
}

type Lines<'a> = std::iter::Peekable<std::vec::IntoIter<(usize, &'a str)>>;

fn take<'a>(it: &mut Lines<'a>, key: &str, last: usize) -> Result<(usize, &'a str)> {
    let l = it.next().ok_or_else(|| perr(last, format!("unexpected end of record, expected `{key}`")))?;
    Ok((l.0, keyword(l, key)?))
}

fn parse_sign_map(g: Group, line: usize, text: &str) -> Result<BTreeMap<Elem, Sign>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() % 2 != 0 {
        return Err(perr(line, "expected pairs `(degree) sign`"));
    }
    let mut out = BTreeMap::new();
    for c in toks.chunks(2) {
        let x = g.parse_elem(c[0]).map_err(|e| at(line, 0, e))?;
        let s = Sign::parse(c[1]).ok_or_else(|| perr(line, format!("bad sign `{}`", c[1])))?;
        if out.insert(x, s).is_some() {
            return Err(perr(line, format!("degree {} listed twice", c[0])));
        }
    }
    Ok(out)
}

fn parse_form(dom: &Subgroup, line: usize, text: &str) -> Result<QuadraticForm> {
    let map = parse_sign_map(dom.parent(), line, text)?;
    if map.keys().copied().collect::<BTreeSet<_>>() != dom.elements().iter().copied().collect() {
        return Err(perr(line, "form must list every element of its domain"));
    }
    QuadraticForm::from_fn(dom.clone(), |x| map[&x]).map_err(|e| at(line, 0, e))
}

fn parse_beta(dom: &Subgroup, line: usize, text: &str) -> Result<Bicharacter> {
    let g = dom.parent();
    let mut minus = BTreeSet::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let xs = parse_elems(g, part).map_err(|e| at(line, 0, e))?;
        let [x, y] = xs[..] else { return Err(perr(line, format!("expected a pair of degrees, got `{part}`"))) };
        minus.insert((x, y));
        minus.insert((y, x));
    }
    let beta = Bicharacter::from_fn(dom.clone(), |x, y| Sign::from_minus(minus.contains(&(x, y))))
        .map_err(|e| at(line, 0, e))?;
    if minus.iter().any(|&(x, y)| !dom.contains(x) || !dom.contains(y)) {
        return Err(perr(line, "beta pair outside its domain"));
    }
    Ok(beta)
}

fn parse_payload(it: &mut Lines<'_>, t: &Subgroup, last: usize) -> Result<Payload> {
    let g = t.parent();
    let (ln, head) = take(it, "payload", last)?;
    let words: Vec<&str> = head.split_whitespace().collect();
    Ok(match words[..] {
        ["form"] => {
            let (l, mu) = take(it, "mu", last)?;
            Payload::Form { mu: parse_form(t, l, mu)? }
        }
        ["beta-form"] => {
            let (lb, b) = take(it, "beta", last)?;
            let beta = parse_beta(t, lb, b)?;
            let (l, mu) = take(it, "mu", last)?;
            Payload::BetaForm { beta, mu: parse_form(&t.two_torsion(), l, mu)? }
        }
        ["nice"] => {
            let (lk, k) = take(it, "k", last)?;
            let k = subgroup(g, lk, k)?;
            let (l, nu) = take(it, "nu", last)?;
            Payload::Nice { k, nu: parse_sign_map(g, l, nu)? }
        }
        ["beta-nice"] => {
            let (lk, k) = take(it, "k", last)?;
            let k = subgroup(g, lk, k)?;
            let (lb, b) = take(it, "beta", last)?;
            let beta = parse_beta(&k, lb, b)?;
            let (l, nu) = take(it, "nu", last)?;
            Payload::BetaNice { k, beta, nu: parse_sign_map(g, l, nu)? }
        }
        ["nu-class"] => {
            let (l, nu) = take(it, "nu", last)?;
            Payload::NuClass { nu: parse_sign_map(g, l, nu)? }
        }
        ["centralizer", kind, case] => {
            let kind = Kind::from_symbol(kind).ok_or_else(|| perr(ln, format!("bad kind `{kind}`")))?;
            let case = CaseTag::parse(case).map_err(|e| at(ln, 0, e))?;
            let inner = parse_payload(it, t, last)?;
            Payload::Centralizer { kind, case, inner: Box::new(inner) }
        }
        ["deferred"] => {
            let (l, text) = take(it, "commutation", last)?;
            let mut exps = BTreeMap::new();
            for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let toks: Vec<&str> = part.split_whitespace().collect();
                let [x, y, k] = toks[..] else { return Err(perr(l, format!("expected `(u) (v) k`, got `{part}`"))) };
                let x = g.parse_elem(x).map_err(|e| at(l, 0, e))?;
                let y = g.parse_elem(y).map_err(|e| at(l, 0, e))?;
                let k: u8 = k.parse().ok().filter(|k| (1..4).contains(k)).ok_or_else(|| perr(l, "exponent must be 1, 2 or 3"))?;
                exps.insert((x, y), k);
            }
            Payload::Deferred { commutation: Commutation { exps } }
        }
        _ => return Err(perr(ln, format!("unknown payload `{head}`"))),
    })
}

fn subgroup(g: Group, line: usize, text: &str) -> Result<Subgroup> {
    let xs = parse_elems(g, text).map_err(|e| at(line, 0, e))?;
    let s = Subgroup::from_elements(g, &xs).map_err(|e| at(line, 0, e))?;
    if s.elements() != xs {
        return Err(perr(line, "subgroup elements must be listed in increasing order"));
    }
    Ok(s)
}

pub fn parse_record(text: &str) -> Result<ClassificationRecord> {
    let lines = content_lines(text);
    let last = lines.last().map_or(1, |l| l.0);
    let mut it: Lines<'_> = lines.into_iter().peekable();
    let head = it.next().ok_or_else(|| perr(1, "empty record"))?;
    if head.1 != RECORD_HEADER {
        return Err(perr(head.0, format!("expected `{RECORD_HEADER}`")));
    }
    let (l, case) = take(&mut it, "case", last)?;
    let case = CaseTag::parse(case).map_err(|e| at(l, 0, e))?;
    let (l, kind) = take(&mut it, "kind", last)?;
    let kind = Kind::from_symbol(kind).ok_or_else(|| perr(l, "kind must be R, C or H"))?;
    let (l, n) = take(&mut it, "n", last)?;
    let n: usize = n.parse().map_err(|_| perr(l, "bad n"))?;
    let (l, dim) = take(&mut it, "dim", last)?;
    let dim: usize = dim.parse().map_err(|_| perr(l, "bad dim"))?;
    let (l, group) = take(&mut it, "group", last)?;
    let g = Group::parse(group).map_err(|e| at(l, 0, e))?;
    let (l, support) = take(&mut it, "support", last)?;
    let support = subgroup(g, l, support)?;
    let payload = parse_payload(&mut it, &support, last)?;
    let deferred = match it.next() {
        None => false,
        Some(l) if l.1 == "deferred yes" => true,
        Some((ln, _)) => return Err(perr(ln, "unexpected trailing line")),
    };
    if let Some((ln, _)) = it.next() {
        return Err(perr(ln, "unexpected trailing line"));
    }
    if deferred != (case == CaseTag::C2f) {
        return Err(perr(last, "`deferred yes` must be present exactly for case 2f"));
    }
    Ok(ClassificationRecord { case, kind, n, dim, support, payload })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::graded::Block;

    #[test]
    fn gda_round_trip_on_blocks() {
        for b in Block::ALL {
            let a = b.build();
            let text = format_gda(&a);
            let back = parse_gda(&text).unwrap();
            assert_eq!(back, a, "{}", b.name());
            assert_eq!(format_gda(&back), text);
        }
    }

    #[test]
    fn record_round_trip_on_blocks() {
        for b in Block::ALL {
            let r = classify(&b.build()).unwrap();
            let text = format_record(&r);
            assert_eq!(parse_record(&text).unwrap(), r, "{text}");
        }
    }

    #[test]
    fn m2c2_summary() {
        let r = classify(&Block::M2C2.build()).unwrap();
        assert_eq!(summary(&r), "case 2e, T = Z4, [nu] = +,-");
    }

    #[test]
    fn parse_errors_carry_lines() {
        let doc = "gda 1\nkind R\nn 1\ngroup Z2^0\nsupport ()\ncomponent ():\n[ 1 + w ]\n";
        match parse_gda(doc) {
            Err(Error::Parse { line: 7, msg }) => assert!(msg.contains("column 7"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_gda("gda 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn matrix_literal_columns() {
        match parse_matrix("[ 1, 2 ; 3, q ]", Kind::R) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 12),
            other => panic!("{other:?}"),
        }
    }
}

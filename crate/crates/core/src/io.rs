//! Text, JSON and CSV readers and writers. Text errors carry the line and
//! column of the offending token; JSON errors carry serde's position.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexJson, SimplicialComplex};
use crate::cw::{CwJson, RegularCWComplex};
use crate::error::{Error, Result};
use crate::map::{PosetMap, Relation, RelationJson};
use crate::mapper::PointCloud;
use crate::nerve::{ComplexCover, PosetCover};
use crate::poset::{Poset, PosetJson};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Non-empty lines split into whitespace separated tokens; `#` starts a
/// comment.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in content.char_indices().chain([(content.len(), ' ')]) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..i],
                        line: n + 1,
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(tokens);
        }
    }
    out
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn element<'a>(p: &Poset, t: &Token<'a>) -> Result<usize> {
    p.index_of(t.text)
        .map_err(|_| t.error(format!("unknown element `{}`", t.text)))
}

/// Poset text: each line is a single element or a chain `a < b < c`.
pub fn parse_poset_text(text: &str) -> Result<Poset> {
    let mut elements = Vec::new();
    let mut relations = Vec::new();
    for line in lines(text) {
        for (k, t) in line.iter().enumerate() {
            let is_op = t.text == "<";
            if is_op != (k % 2 == 1) {
                return Err(t.error(if is_op {
                    "expected an element, found `<`".to_string()
                } else {
                    format!("expected `<`, found `{}`", t.text)
                }));
            }
        }
        if line.len() % 2 == 0 {
            let last = line.last().expect("non-empty line");
            return Err(Error::Parse {
                line: last.line,
                column: last.column + 1,
                message: "relation is missing its upper element".into(),
            });
        }
        let names: Vec<&str> = line.iter().step_by(2).map(|t| t.text).collect();
        elements.extend(names.iter().map(|s| s.to_string()));
        for w in names.windows(2) {
            relations.push((w[0].to_string(), w[1].to_string()));
        }
    }
    Poset::from_relations(elements, relations)
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    if looks_like_json(text) {
        from_json::<PosetJson>(text)?.into_poset()
    } else {
        parse_poset_text(text)
    }
}

/// Every element on its own line, then the cover relations.
pub fn poset_to_text(p: &Poset) -> String {
    let mut out = String::new();
    for id in p.ids() {
        out.push_str(id);
        out.push('\n');
    }
    for (a, b) in p.hasse_edges() {
        out.push_str(&format!("{a} < {b}\n"));
    }
    out
}

/// One facet per line.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    if looks_like_json(text) {
        return from_json::<ComplexJson>(text)?.into_complex();
    }
    let facets: Vec<Vec<&str>> = lines(text)
        .into_iter()
        .map(|l| {
            let mut seen = std::collections::HashSet::new();
            l.iter()
                .map(|t| {
                    if seen.insert(t.text) {
                        Ok(t.text)
                    } else {
                        Err(t.error(format!("vertex `{}` repeated in a facet", t.text)))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    SimplicialComplex::from_facets(facets)
}

pub fn complex_to_text(k: &SimplicialComplex) -> String {
    k.facet_names()
        .into_iter()
        .map(|f| f.join(" ") + "\n")
        .collect()
}

pub fn parse_cw(text: &str) -> Result<RegularCWComplex> {
    from_json::<CwJson>(text)?.into_complex()
}

/// Lines `x ~ y` between given posets.
pub fn parse_relation_text(source: Poset, target: Poset, text: &str) -> Result<Relation> {
    let pairs = parse_pairs(&source, &target, text, "~")?;
    Ok(Relation::from_indices(source, target, pairs))
}

/// A relation: JSON with embedded posets, or text against given posets.
pub fn parse_relation(text: &str, posets: Option<(Poset, Poset)>) -> Result<Relation> {
    if looks_like_json(text) {
        return from_json::<RelationJson>(text)?.into_relation();
    }
    let (source, target) = posets.ok_or_else(|| {
        Error::Invalid("a text relation needs its source and target posets".into())
    })?;
    parse_relation_text(source, target, text)
}

pub fn relation_to_text(r: &Relation) -> String {
    r.pairs()
        .into_iter()
        .map(|(x, y)| format!("{x} ~ {y}\n"))
        .collect()
}

fn parse_pairs(
    source: &Poset,
    target: &Poset,
    text: &str,
    op: &str,
) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for line in lines(text) {
        match line.as_slice() {
            [x, o, y] if o.text == op => pairs.push((element(source, x)?, element(target, y)?)),
            [_, o, ..] if o.text != op => {
                return Err(o.error(format!("expected `{op}`, found `{}`", o.text)))
            }
            [.., last] => return Err(last.error(format!("expected a line of the form `x {op} y`"))),
            [] => unreachable!("empty lines are skipped"),
        }
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub source: PosetJson,
    pub target: PosetJson,
    pub pairs: Vec<[String; 2]>,
}

/// Lines `x -> y` between given posets, or JSON with embedded posets.
pub fn parse_map(text: &str, posets: Option<(Poset, Poset)>) -> Result<PosetMap> {
    if looks_like_json(text) {
        let m: MapJson = from_json(text)?;
        return PosetMap::new(
            m.source.into_poset()?,
            m.target.into_poset()?,
            m.pairs.into_iter().map(|[x, y]| (x, y)),
        );
    }
    let (source, target) = posets
        .ok_or_else(|| Error::Invalid("a text map needs its source and target posets".into()))?;
    let pairs: Vec<(String, String)> = parse_pairs(&source, &target, text, "->")?
        .into_iter()
        .map(|(x, y)| (source.id(x).to_owned(), target.id(y).to_owned()))
        .collect();
    PosetMap::new(source, target, pairs)
}

pub fn map_to_text(f: &PosetMap) -> String {
    f.pairs()
        .into_iter()
        .map(|(x, y)| format!("{x} -> {y}\n"))
        .collect()
}

/// `part <name>` headers, each followed by member lines.
fn parse_cover_text(text: &str) -> Result<Vec<(String, Vec<Vec<String>>)>> {
    let mut parts: Vec<(String, Vec<Vec<String>>)> = Vec::new();
    for line in lines(text) {
        if line[0].text == "part" {
            match line.as_slice() {
                [_, name] => parts.push((name.text.to_owned(), Vec::new())),
                [head] => {
                    return Err(Error::Parse {
                        line: head.line,
                        column: head.column + 4,
                        message: "`part` needs a name".into(),
                    })
                }
                [_, _, extra, ..] => {
                    return Err(extra.error("part names cannot contain whitespace"))
                }
                [] => unreachable!(),
            }
            continue;
        }
        let Some(current) = parts.last_mut() else {
            return Err(line[0].error("member line before the first `part` header"));
        };
        current
            .1
            .push(line.iter().map(|t| t.text.to_owned()).collect());
    }
    Ok(parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetCoverJson {
    pub parts: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexCoverJson {
    /// Facets of each subcomplex.
    pub parts: BTreeMap<String, Vec<Vec<String>>>,
}

/// A cover of `base` by down-sets; member lines list element ids.
pub fn parse_poset_cover(base: Poset, text: &str) -> Result<PosetCover> {
    parse_poset_cover_with(base, text, false)
}

/// With `open_hull`, each part is replaced by the down-set it generates
/// instead of being rejected when it is not one.
pub fn parse_poset_cover_with(base: Poset, text: &str, open_hull: bool) -> Result<PosetCover> {
    let parts: Vec<(String, Vec<String>)> = if looks_like_json(text) {
        from_json::<PosetCoverJson>(text)?
            .parts
            .into_iter()
            .collect()
    } else {
        parse_cover_text(text)?
            .into_iter()
            .map(|(n, ls)| (n, ls.into_iter().flatten().collect()))
            .collect()
    };
    if !open_hull {
        return PosetCover::from_named(base, &parts);
    }
    let parts = parts
        .into_iter()
        .map(|(n, members)| base.element_set(&members).map(|s| (n, s)))
        .collect::<Result<_>>()?;
    PosetCover::down_closed(base, parts)
}

/// A cover of `base` by subcomplexes; each member line is a facet.
pub fn parse_complex_cover(base: SimplicialComplex, text: &str) -> Result<ComplexCover> {
    let parts: Vec<(String, Vec<Vec<String>>)> = if looks_like_json(text) {
        from_json::<ComplexCoverJson>(text)?
            .parts
            .into_iter()
            .collect()
    } else {
        parse_cover_text(text)?
    };
    let parts = parts
        .into_iter()
        .map(|(n, facets)| {
            SimplicialComplex::from_facets(facets)
                .map(|k| (n, k))
                .map_err(|e| Error::Invalid(format!("part {e}")))
        })
        .collect::<Result<_>>()?;
    ComplexCover::new(base, parts)
}

pub fn poset_cover_to_text(c: &PosetCover) -> String {
    let mut out = String::new();
    for (name, set) in c.names().iter().zip(c.parts()) {
        out.push_str(&format!("part {name}\n"));
        for id in c.base().names(set) {
            out.push_str(&id);
            out.push('\n');
        }
    }
    out
}

pub fn complex_cover_to_text(c: &ComplexCover) -> String {
    let mut out = String::new();
    for (name, k) in c.names().iter().zip(c.parts()) {
        out.push_str(&format!("part {name}\n"));
        out.push_str(&complex_to_text(k));
    }
    out
}

/// One point per row. A header row is recognised by a non-numeric field
/// above a numeric one;
/// a column headed `id` holds identifiers. Without a header, a first column
/// that is non-numeric in every row holds identifiers.
pub fn parse_points_csv(text: &str) -> Result<PointCloud> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        rows.push((line, record.iter().map(str::to_owned).collect()));
    }
    let numeric = |s: &str| s.parse::<f64>().is_ok();
    let mut id_column = None;
    if let Some((_, first)) = rows.first() {
        let header = match rows.get(1) {
            Some((_, second)) => first
                .iter()
                .zip(second)
                .any(|(a, b)| !numeric(a) && numeric(b)),
            None => first.iter().all(|f| !numeric(f)),
        };
        if header {
            let header = rows.remove(0).1;
            id_column = header.iter().position(|h| h.eq_ignore_ascii_case("id"));
        }
    }
    if id_column.is_none()
        && !rows.is_empty()
        && rows
            .iter()
            .all(|(_, r)| r.first().is_some_and(|f| !numeric(f)))
    {
        id_column = Some(0);
    }
    let mut ids = Vec::new();
    let mut points = Vec::new();
    for (line, row) in rows {
        let mut coords = Vec::new();
        for (k, field) in row.iter().enumerate() {
            if Some(k) == id_column {
                ids.push(field.clone());
                continue;
            }
            coords.push(field.parse::<f64>().map_err(|_| Error::Parse {
                line,
                column: k + 1,
                message: format!("field {} is not a number: `{field}`", k + 1),
            })?);
        }
        points.push(coords);
    }
    match id_column {
        Some(_) => PointCloud::new(ids, points),
        None => PointCloud::unnamed(points),
    }
}

pub fn points_to_csv(pc: &PointCloud) -> String {
    let mut out = String::from("id");
    for k in 0..pc.dim() {
        out.push_str(&format!(",x{k}"));
    }
    out.push('\n');
    for (id, p) in pc.ids().iter().zip(pc.points()) {
        out.push_str(id);
        for c in p {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
    }
    out
}

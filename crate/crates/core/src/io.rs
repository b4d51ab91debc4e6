//! The line-based `grs1` scenario format.
//!
//! ```text
//! format grs1
//! structure M [unchecked]
//! elements: a b c
//! gammas: alpha
//! table alpha:
//! a b c
//! b b b
//! c b b
//!
//! universe U
//! elements: 1 2 3
//!
//! map T from M to M
//! a -> {b, c}
//! ```
//!
//! Blocks end at a blank line. Lines starting with `#` are ignored. Names
//! referenced by a map must be declared above it.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Carrier, ElementSet, GammaSemigroup, RawTables, MAX_CELLS};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::rough::{Partition, SetValuedMap};

pub const FORMAT_HEADER: &str = "format grs1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureDecl {
    pub name: String,
    /// Declared with the `unchecked` attribute.
    pub unchecked: bool,
    pub semigroup: GammaSemigroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniverseDecl {
    pub name: String,
    pub carrier: Arc<Carrier>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: SetValuedMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Structure(usize),
    Universe(usize),
    Map(usize),
}

/// Named structures, universes and maps in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scenario {
    blocks: Vec<Block>,
    structures: Vec<StructureDecl>,
    universes: Vec<UniverseDecl>,
    maps: Vec<MapDecl>,
}

impl Scenario {
    pub fn new() -> Scenario {
        Scenario::default()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn structures(&self) -> &[StructureDecl] {
        &self.structures
    }

    pub fn universes(&self) -> &[UniverseDecl] {
        &self.universes
    }

    pub fn maps(&self) -> &[MapDecl] {
        &self.maps
    }

    pub fn structure(&self, name: &str) -> Option<&StructureDecl> {
        self.structures.iter().find(|s| s.name == name)
    }

    pub fn universe(&self, name: &str) -> Option<&UniverseDecl> {
        self.universes.iter().find(|u| u.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// Carrier of a structure or universe.
    pub fn carrier(&self, name: &str) -> Option<&Arc<Carrier>> {
        self.structure(name)
            .map(|s| s.semigroup.carrier())
            .or_else(|| self.universe(name).map(|u| &u.carrier))
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.structure(name).is_some() || self.universe(name).is_some() || self.map(name).is_some()
    }

    fn claim(&self, name: &str) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::BadLiteral(name.to_string()));
        }
        if self.contains_name(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    pub fn add_structure(&mut self, name: &str, semigroup: GammaSemigroup, unchecked: bool) -> Result<()> {
        self.claim(name)?;
        self.blocks.push(Block::Structure(self.structures.len()));
        self.structures.push(StructureDecl {
            name: name.to_string(),
            unchecked,
            semigroup,
        });
        Ok(())
    }

    pub fn add_universe(&mut self, name: &str, carrier: Arc<Carrier>) -> Result<()> {
        self.claim(name)?;
        self.blocks.push(Block::Universe(self.universes.len()));
        self.universes.push(UniverseDecl {
            name: name.to_string(),
            carrier,
        });
        Ok(())
    }

    /// Adds a map whose carriers must equal those of the named declarations.
    pub fn add_map(&mut self, name: &str, source: &str, target: &str, map: SetValuedMap) -> Result<()> {
        self.claim(name)?;
        let src = self.carrier(source).ok_or_else(|| Error::UnknownElement(source.to_string()))?;
        let tgt = self.carrier(target).ok_or_else(|| Error::UnknownElement(target.to_string()))?;
        if **src != **map.source() || **tgt != **map.target() {
            return Err(Error::StructureMismatch);
        }
        self.blocks.push(Block::Map(self.maps.len()));
        self.maps.push(MapDecl {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
            map,
        });
        Ok(())
    }
}

/// Names are non-empty and free of whitespace, braces, commas, colons and
/// the arrow token.
pub fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.contains("->")
        && !name.starts_with('#')
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | ',' | ':'))
}

/// Whether structures failing associativity are rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admission {
    /// Only blocks marked `unchecked` may fail associativity.
    Strict,
    /// Every structure is admitted; validity is left to the caller.
    Lenient,
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    parse_scenario_with(text, Admission::Strict)
}

pub fn parse_scenario_with(text: &str, admission: Admission) -> Result<Scenario, ParseError> {
    let mut parser = Parser {
        scenario: Scenario::new(),
        admission,
        state: State::Top,
        seen_header: false,
    };
    for (i, raw) in text.lines().enumerate() {
        parser.line(i + 1, raw.trim())?;
    }
    parser.finish()?;
    if !parser.seen_header {
        return perr(1, format!("missing `{FORMAT_HEADER}` header"));
    }
    Ok(parser.scenario)
}

struct TableBuilder {
    gamma: usize,
    line: usize,
    rows: Vec<Vec<usize>>,
}

struct StructureBuilder {
    name: String,
    line: usize,
    unchecked: bool,
    elements: Option<Arc<Carrier>>,
    gammas: Option<Vec<String>>,
    tables: Vec<Option<Vec<Vec<usize>>>>,
    current: Option<TableBuilder>,
}

struct UniverseBuilder {
    name: String,
    line: usize,
    elements: Option<Arc<Carrier>>,
}

struct MapBuilder {
    name: String,
    line: usize,
    source: String,
    target: String,
    source_carrier: Arc<Carrier>,
    target_carrier: Arc<Carrier>,
    images: Vec<Mask>,
}

enum State {
    Top,
    Structure(StructureBuilder),
    Universe(UniverseBuilder),
    Map(MapBuilder),
}

struct Parser {
    scenario: Scenario,
    admission: Admission,
    state: State,
    seen_header: bool,
}

fn parse_names(line: usize, rest: &str, what: &str) -> Result<Vec<String>, ParseError> {
    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    if names.is_empty() {
        return perr(line, format!("empty {what} list"));
    }
    let mut seen = HashSet::new();
    for n in &names {
        if !valid_name(n) {
            return perr(line, format!("invalid name `{n}`"));
        }
        if !seen.insert(n.as_str()) {
            return perr(line, format!("duplicate name `{n}`"));
        }
    }
    Ok(names)
}

impl Parser {
    fn line(&mut self, ln: usize, line: &str) -> Result<(), ParseError> {
        if line.is_empty() {
            return self.finish();
        }
        if line.starts_with('#') {
            return Ok(());
        }
        if !self.seen_header {
            if line == FORMAT_HEADER {
                self.seen_header = true;
                return Ok(());
            }
            return perr(ln, format!("expected `{FORMAT_HEADER}` header"));
        }
        match std::mem::replace(&mut self.state, State::Top) {
            State::Top => self.header(ln, line),
            State::Structure(mut b) => {
                self.structure_line(&mut b, ln, line)?;
                self.state = State::Structure(b);
                Ok(())
            }
            State::Universe(mut b) => {
                let Some(rest) = line.strip_prefix("elements:") else {
                    return perr(ln, "expected `elements:` in universe block");
                };
                if b.elements.is_some() {
                    return perr(ln, "duplicate `elements:` line");
                }
                let names = parse_names(ln, rest, "element")?;
                let carrier = Carrier::new(names).map_err(|e| ParseError {
                    line: ln,
                    message: e.to_string(),
                })?;
                b.elements = Some(Arc::new(carrier));
                self.state = State::Universe(b);
                Ok(())
            }
            State::Map(mut b) => {
                self.map_line(&mut b, ln, line)?;
                self.state = State::Map(b);
                Ok(())
            }
        }
    }

    fn header(&mut self, ln: usize, line: &str) -> Result<(), ParseError> {
        let words: Vec<&str> = line.split_whitespace().collect();
        let check_name = |name: &str| -> Result<(), ParseError> {
            if !valid_name(name) {
                return perr(ln, format!("invalid name `{name}`"));
            }
            if self.scenario.contains_name(name) {
                return perr(ln, format!("duplicate name `{name}`"));
            }
            Ok(())
        };
        match words.as_slice() {
            ["structure", name] | ["structure", name, "unchecked"] => {
                check_name(name)?;
                self.state = State::Structure(StructureBuilder {
                    name: name.to_string(),
                    line: ln,
                    unchecked: words.len() == 3,
                    elements: None,
                    gammas: None,
                    tables: Vec::new(),
                    current: None,
                });
                Ok(())
            }
            ["universe", name] => {
                check_name(name)?;
                self.state = State::Universe(UniverseBuilder {
                    name: name.to_string(),
                    line: ln,
                    elements: None,
                });
                Ok(())
            }
            ["map", name, "from", source, "to", target] => {
                check_name(name)?;
                let resolve = |n: &str| {
                    self.scenario.carrier(n).cloned().ok_or_else(|| ParseError {
                        line: ln,
                        message: format!("unknown structure or universe `{n}`"),
                    })
                };
                let source_carrier = resolve(source)?;
                let target_carrier = resolve(target)?;
                self.state = State::Map(MapBuilder {
                    name: name.to_string(),
                    line: ln,
                    source: source.to_string(),
                    target: target.to_string(),
                    images: vec![Mask::EMPTY; source_carrier.len()],
                    source_carrier,
                    target_carrier,
                });
                Ok(())
            }
            _ => perr(ln, format!("expected a block header, found `{line}`")),
        }
    }

    fn structure_line(&mut self, b: &mut StructureBuilder, ln: usize, line: &str) -> Result<(), ParseError> {
        if let Some(t) = b.current.as_mut() {
            let carrier = b.elements.as_ref().expect("tables follow elements");
            let n = carrier.len();
            let mut row = Vec::with_capacity(n);
            for cell in line.split_whitespace() {
                match carrier.index_of(cell) {
                    Ok(i) => row.push(i),
                    Err(_) => return perr(ln, format!("unknown element `{cell}` in table cell")),
                }
            }
            if row.len() != n {
                return perr(ln, format!("table row has {} cells, expected {n}", row.len()));
            }
            t.rows.push(row);
            if t.rows.len() == n {
                let t = b.current.take().unwrap();
                b.tables[t.gamma] = Some(t.rows);
            }
            return Ok(());
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if b.elements.is_some() {
                return perr(ln, "duplicate `elements:` line");
            }
            let names = parse_names(ln, rest, "element")?;
            let carrier = Carrier::new(names).map_err(|e| ParseError {
                line: ln,
                message: e.to_string(),
            })?;
            b.elements = Some(Arc::new(carrier));
            return Ok(());
        }
        if let Some(rest) = line.strip_prefix("gammas:") {
            if b.gammas.is_some() {
                return perr(ln, "duplicate `gammas:` line");
            }
            let Some(carrier) = b.elements.as_ref() else {
                return perr(ln, "`gammas:` must follow `elements:`");
            };
            let gammas = parse_names(ln, rest, "gamma")?;
            if carrier.len() * gammas.len() > MAX_CELLS {
                return perr(
                    ln,
                    format!(
                        "{} elements x {} gammas exceeds the limit of {MAX_CELLS}",
                        carrier.len(),
                        gammas.len()
                    ),
                );
            }
            b.tables = vec![None; gammas.len()];
            b.gammas = Some(gammas);
            return Ok(());
        }
        if let Some(rest) = line.strip_prefix("table ") {
            let Some(gammas) = b.gammas.as_ref() else {
                return perr(ln, "`table` must follow `gammas:`");
            };
            let gname = rest.trim().trim_end_matches(':').trim();
            let Some(g) = gammas.iter().position(|x| x == gname) else {
                return perr(ln, format!("unknown gamma `{gname}`"));
            };
            if b.tables[g].is_some() {
                return perr(ln, format!("duplicate table for gamma `{gname}`"));
            }
            b.current = Some(TableBuilder {
                gamma: g,
                line: ln,
                rows: Vec::new(),
            });
            return Ok(());
        }
        perr(ln, format!("unexpected line in structure block: `{line}`"))
    }

    fn map_line(&mut self, b: &mut MapBuilder, ln: usize, line: &str) -> Result<(), ParseError> {
        let Some((lhs, rhs)) = line.split_once("->") else {
            return perr(ln, "expected `element -> image`");
        };
        let x = lhs.trim();
        let Ok(xi) = b.source_carrier.index_of(x) else {
            return perr(ln, format!("unknown element `{x}` in `{}`", b.source));
        };
        if !b.images[xi].is_empty() {
            return perr(ln, format!("duplicate image for `{x}`"));
        }
        let tokens = match set_tokens(rhs) {
            Some(t) => t,
            None => return perr(ln, format!("malformed image `{}`", rhs.trim())),
        };
        if tokens.is_empty() {
            return perr(ln, format!("empty image for `{x}`"));
        }
        let mut img = Mask::EMPTY;
        for t in tokens {
            match b.target_carrier.index_of(t) {
                Ok(i) => img = img.with(i),
                Err(_) => return perr(ln, format!("unknown element `{t}` in `{}`", b.target)),
            }
        }
        b.images[xi] = img;
        Ok(())
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match std::mem::replace(&mut self.state, State::Top) {
            State::Top => Ok(()),
            State::Structure(b) => {
                if let Some(t) = &b.current {
                    let n = b.elements.as_ref().map_or(0, |c| c.len());
                    return perr(
                        t.line,
                        format!("table `{}` has {} rows, expected {n}", b.gammas.as_ref().unwrap()[t.gamma], t.rows.len()),
                    );
                }
                let Some(carrier) = b.elements else {
                    return perr(b.line, format!("structure `{}` has no `elements:` line", b.name));
                };
                let Some(gammas) = b.gammas else {
                    return perr(b.line, format!("structure `{}` has no `gammas:` line", b.name));
                };
                let mut cells = Vec::with_capacity(gammas.len() * carrier.len() * carrier.len());
                for (g, t) in b.tables.into_iter().enumerate() {
                    match t {
                        Some(rows) => cells.extend(rows.into_iter().flatten()),
                        None => {
                            return perr(b.line, format!("missing table for gamma `{}`", gammas[g]));
                        }
                    }
                }
                let tables = RawTables::new(carrier, gammas, cells).map_err(|e| ParseError {
                    line: b.line,
                    message: e.to_string(),
                })?;
                let semigroup = if b.unchecked || self.admission == Admission::Lenient {
                    GammaSemigroup::new_unchecked(tables)
                } else {
                    GammaSemigroup::new(tables).map_err(|e| ParseError {
                        line: b.line,
                        message: format!("structure `{}`: {e}", b.name),
                    })?
                };
                self.scenario
                    .add_structure(&b.name, semigroup, b.unchecked)
                    .map_err(|e| ParseError {
                        line: b.line,
                        message: e.to_string(),
                    })
            }
            State::Universe(b) => {
                let Some(carrier) = b.elements else {
                    return perr(b.line, format!("universe `{}` has no `elements:` line", b.name));
                };
                self.scenario.add_universe(&b.name, carrier).map_err(|e| ParseError {
                    line: b.line,
                    message: e.to_string(),
                })
            }
            State::Map(b) => {
                if let Some(x) = b.images.iter().position(|m| m.is_empty()) {
                    return perr(b.line, format!("missing image for `{}`", b.source_carrier.name(x)));
                }
                let map = SetValuedMap::new(b.source_carrier, b.target_carrier, b.images).map_err(|e| ParseError {
                    line: b.line,
                    message: e.to_string(),
                })?;
                self.scenario
                    .add_map(&b.name, &b.source, &b.target, map)
                    .map_err(|e| ParseError {
                        line: b.line,
                        message: e.to_string(),
                    })
            }
        }
    }
}

/// Splits `{a, b}` or `a b` into member names; `None` when braces are
/// unbalanced or nested.
fn set_tokens(text: &str) -> Option<Vec<&str>> {
    let t = text.trim();
    let inner = match t.strip_prefix('{') {
        Some(rest) => rest.strip_suffix('}')?,
        None => t,
    };
    if inner.contains(['{', '}']) {
        return None;
    }
    Some(
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect(),
    )
}

/// Parses `{a,b}` (braces optional, `{}` is empty) over `carrier`.
pub fn parse_set_literal(carrier: &Arc<Carrier>, text: &str) -> Result<ElementSet> {
    let tokens = set_tokens(text).ok_or_else(|| Error::BadLiteral(text.to_string()))?;
    ElementSet::from_names(Arc::clone(carrier), tokens)
}

/// Parses blocks written as `{1,3},{2,4}`, optionally wrapped in outer
/// braces.
pub fn parse_partition(carrier: &Arc<Carrier>, text: &str) -> Result<Partition> {
    let bad = || Error::BadLiteral(text.to_string());
    let mut blocks = Vec::new();
    let mut current: Option<String> = None;
    for c in text.chars() {
        match c {
            '{' => current = Some(String::new()),
            '}' => {
                if let Some(body) = current.take() {
                    blocks.push(parse_set_literal(carrier, &body)?.mask());
                }
            }
            _ => match current.as_mut() {
                Some(body) => body.push(c),
                None if c == ',' || c.is_whitespace() => {}
                None => return Err(bad()),
            },
        }
    }
    if current.is_some() || blocks.is_empty() {
        return Err(bad());
    }
    Partition::new(Arc::clone(carrier), blocks)
}

/// Canonical text: blocks in declaration order separated by blank lines,
/// sets in canonical element order.
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    for block in &s.blocks {
        out.push('\n');
        match *block {
            Block::Structure(i) => {
                let d = &s.structures[i];
                let sg = &d.semigroup;
                let names = sg.carrier().names();
                let _ = writeln!(out, "structure {}{}", d.name, if d.unchecked { " unchecked" } else { "" });
                let _ = writeln!(out, "elements: {}", names.join(" "));
                let _ = writeln!(out, "gammas: {}", sg.gammas().join(" "));
                for (g, gname) in sg.gammas().iter().enumerate() {
                    let _ = writeln!(out, "table {gname}:");
                    for a in 0..sg.order() {
                        let row: Vec<&str> = (0..sg.order()).map(|b| names[sg.op(a, g, b)].as_str()).collect();
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                }
            }
            Block::Universe(i) => {
                let d = &s.universes[i];
                let _ = writeln!(out, "universe {}", d.name);
                let _ = writeln!(out, "elements: {}", d.carrier.names().join(" "));
            }
            Block::Map(i) => {
                let d = &s.maps[i];
                let _ = writeln!(out, "map {} from {} to {}", d.name, d.source, d.target);
                for (x, name) in d.map.source().names().iter().enumerate() {
                    let _ = writeln!(out, "{name} -> {}", d.map.target().render_spaced(d.map.image(x)));
                }
            }
        }
    }
    out
}

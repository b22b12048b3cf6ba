//! The manifest language.
//!
//! ```text
//! [ring]
//! n = 2
//!
//! [module M]
//! twists = [0]
//! relations = [[x0], [x1^2]]        # one list per relation column
//!
//! [map f]
//! source = O(-1)
//! target = M
//! matrix = [[x1]]                   # one list per source generator
//!
//! [complex C]
//! degrees = [-1..0]
//! generators[-1] = [1, 2]           # same as term[-1] = [S(1), S(2)]
//! term[0] = O(0)
//! d[-1] = g
//!
//! [tasks]
//! resolve M
//! gauge-bound C
//! ```
//!
//! Built-in modules are `O(a)`, `S(k)`, `Omega1` and direct sums
//! `[S(1), O(2)]`; `id(M)` is the identity map. Every name is declared
//! before it is used, so the canonical print order (ring, modules, maps,
//! complexes, tasks) re-parses to the same manifest.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use brane_algebra::parse::parse_polynomial;
use brane_algebra::{PolyMatrix, Polynomial};
use brane_core::gauge::Summand;

pub const MAX_N: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleRef {
    Named(String),
    LineBundle(i64),
    Generator(usize),
    Cotangent,
    Sum(Vec<Summand>),
}

impl ModuleRef {
    /// Summand decomposition carried by the reference itself.
    pub fn summands(&self) -> Option<Vec<Summand>> {
        match self {
            ModuleRef::LineBundle(a) => Some(vec![Summand::LineBundle(*a)]),
            ModuleRef::Generator(k) => Some(vec![Summand::Generator(*k)]),
            ModuleRef::Sum(list) => Some(list.clone()),
            ModuleRef::Named(_) | ModuleRef::Cotangent => None,
        }
    }
}

impl fmt::Display for ModuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleRef::Named(n) => f.write_str(n),
            ModuleRef::LineBundle(a) => write!(f, "O({})", a),
            ModuleRef::Generator(k) => write!(f, "S({})", k),
            ModuleRef::Cotangent => f.write_str("Omega1"),
            ModuleRef::Sum(list) => {
                let parts: Vec<String> = list.iter().map(|s| s.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapRef {
    Named(String),
    Identity(ModuleRef),
}

impl fmt::Display for MapRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapRef::Named(n) => f.write_str(n),
            MapRef::Identity(m) => write!(f, "id({})", m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub twists: Vec<i64>,
    /// Relation columns, one entry per generator.
    pub relations: Vec<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: ModuleRef,
    pub target: ModuleRef,
    /// Images of the source generators.
    pub matrix: Vec<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
    pub terms: BTreeMap<i64, ModuleRef>,
    pub diffs: BTreeMap<i64, MapRef>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleChoice {
    Module,
    Sheaf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Resolve(ModuleRef),
    Annihilator(ModuleRef),
    Hilbert { module: ModuleRef, from: Option<i64>, to: Option<i64> },
    SheafHom(ModuleRef, ModuleRef),
    Cech(ModuleRef),
    Cone(MapRef),
    QuasiIso(MapRef),
    TriangleFromSes(MapRef, MapRef),
    Shift { complex: String, k: i64 },
    HomComplex { source: String, target: String, oracle: OracleChoice },
    Generators,
    Disjointness,
    Lem1Check { n: Option<usize> },
    Atiyah { a: i64, n: Option<usize> },
    GaugeBound(String),
}

pub const TASK_NAMES: &[&str] = &[
    "annihilator",
    "atiyah",
    "cech",
    "cone",
    "disjointness",
    "gauge-bound",
    "generators",
    "hilbert",
    "hom-complex",
    "lem1-check",
    "quasi-iso",
    "resolve",
    "sheaf-hom",
    "shift",
    "triangle-from-ses",
];

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Resolve(m) => write!(f, "resolve {}", m),
            Task::Annihilator(m) => write!(f, "annihilator {}", m),
            Task::Hilbert { module, from, to } => {
                write!(f, "hilbert {}", module)?;
                if let Some(x) = from {
                    write!(f, " from={}", x)?;
                }
                if let Some(x) = to {
                    write!(f, " to={}", x)?;
                }
                Ok(())
            }
            Task::SheafHom(a, b) => write!(f, "sheaf-hom {} {}", a, b),
            Task::Cech(m) => write!(f, "cech {}", m),
            Task::Cone(h) => write!(f, "cone {}", h),
            Task::QuasiIso(h) => write!(f, "quasi-iso {}", h),
            Task::TriangleFromSes(a, b) => write!(f, "triangle-from-ses {} {}", a, b),
            Task::Shift { complex, k } => write!(f, "shift {} k={}", complex, k),
            Task::HomComplex { source, target, oracle } => {
                let o = match oracle {
                    OracleChoice::Module => "module",
                    OracleChoice::Sheaf => "sheaf",
                };
                write!(f, "hom-complex {} {} oracle={}", source, target, o)
            }
            Task::Generators => f.write_str("generators"),
            Task::Disjointness => f.write_str("disjointness"),
            Task::Lem1Check { n } => match n {
                Some(n) => write!(f, "lem1-check n={}", n),
                None => f.write_str("lem1-check"),
            },
            Task::Atiyah { a, n } => match n {
                Some(n) => write!(f, "atiyah a={} n={}", a, n),
                None => write!(f, "atiyah a={}", a),
            },
            Task::GaugeBound(c) => write!(f, "gauge-bound {}", c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub n: usize,
    pub modules: Vec<ModuleDecl>,
    pub maps: Vec<MapDecl>,
    pub complexes: Vec<ComplexDecl>,
    pub tasks: Vec<Task>,
}

impl Manifest {
    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn module(&self, name: &str) -> Option<&ModuleDecl> {
        self.modules.iter().find(|m| m.name == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|m| m.name == name)
    }

    pub fn complex(&self, name: &str) -> Option<&ComplexDecl> {
        self.complexes.iter().find(|c| c.name == name)
    }
}

fn poly_lists(cols: &[Vec<Polynomial>]) -> String {
    let parts: Vec<String> = cols
        .iter()
        .map(|c| {
            let es: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            format!("[{}]", es.join(", "))
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn int_list(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical text of a manifest.
pub fn print_manifest(m: &Manifest) -> String {
    let mut out = format!("[ring]\nn = {}\n", m.n);
    for d in &m.modules {
        out += &format!("\n[module {}]\ntwists = {}\n", d.name, int_list(&d.twists));
        if !d.relations.is_empty() {
            out += &format!("relations = {}\n", poly_lists(&d.relations));
        }
    }
    for d in &m.maps {
        out += &format!(
            "\n[map {}]\nsource = {}\ntarget = {}\nmatrix = {}\n",
            d.name,
            d.source,
            d.target,
            poly_lists(&d.matrix)
        );
    }
    for c in &m.complexes {
        out += &format!("\n[complex {}]\ndegrees = [{}..{}]\n", c.name, c.lo, c.hi);
        for (p, t) in &c.terms {
            out += &format!("term[{}] = {}\n", p, t);
        }
        for (p, d) in &c.diffs {
            out += &format!("d[{}] = {}\n", p, d);
        }
    }
    out += "\n[tasks]\n";
    for t in &m.tasks {
        out += &format!("{}\n", t);
    }
    out
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'-'
}

const RESERVED: &[&str] = &["O", "S", "Omega1", "id"];

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor { text, pos: 0, line }
    }

    fn bytes(&self) -> &'a [u8] {
        self.text.as_bytes()
    }

    fn column_of(&self, pos: usize) -> usize {
        self.text[..pos.min(self.text.len())].chars().count() + 1
    }

    fn error_at(&self, pos: usize, message: impl Into<String>, expected: &[&str]) -> Diagnostic {
        Diagnostic {
            line: self.line,
            column: self.column_of(pos),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn error(&self, message: impl Into<String>, expected: &[&str]) -> Diagnostic {
        self.error_at(self.pos, message, expected)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let tok = format!("'{}'", c as char);
            Err(self.error(format!("expected {}", tok), &[&tok]))
        }
    }

    fn expect_str(&mut self, s: &str) -> PResult<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            let tok = format!("'{}'", s);
            Err(self.error(format!("expected {}", tok), &[&tok]))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input", &["end of line"]))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes().get(self.pos).copied().map(is_ident_start) != Some(true) {
            return Err(self.error("expected a name", &["name"]));
        }
        while self.pos < self.text.len() && is_ident_char(self.bytes()[self.pos]) {
            self.pos += 1;
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes().get(self.pos) == Some(&b'-') || self.bytes().get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            self.pos = start;
            return Err(self.error("expected an integer", &["integer"]));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "integer out of range", &["integer"]))
    }

    fn natural(&mut self) -> PResult<usize> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.error_at(start, "expected a nonnegative integer", &["natural number"]))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(b']') {
                return Ok(out);
            }
            if !self.eat(b',') {
                return Err(self.error("expected ',' or ']'", &["','", "']'"]));
            }
        }
    }

    fn polynomial(&mut self, nvars: usize) -> PResult<Polynomial> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && !matches!(self.bytes()[self.pos], b',' | b']' | b'[') {
            self.pos += 1;
        }
        let src = &self.text[start..self.pos];
        parse_polynomial(src, nvars).map_err(|e| {
            let mut d = self.error_at(start + e.offset, format!("malformed polynomial: {}", e.message), &[]);
            d.expected = e.expected.iter().map(|s| s.to_string()).collect();
            d
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Module,
    Map,
    Complex,
}

#[derive(Default)]
struct Scope {
    names: HashMap<String, (Kind, usize)>,
}

enum Section {
    None,
    Ring { n: Option<usize>, line: usize },
    Module { decl: ModuleDecl, has_twists: bool, line: usize },
    Map { decl: MapDecl, parts: [bool; 3], line: usize },
    Complex { decl: ComplexDecl, has_degrees: bool, line: usize },
    Tasks,
}

struct Parser {
    n: Option<usize>,
    manifest: Manifest,
    scope: Scope,
    seen_tasks: bool,
}

impl Parser {
    fn nvars(&self, cur: &Cursor) -> PResult<usize> {
        self.n
            .map(|n| n + 1)
            .ok_or_else(|| cur.error_at(0, "the [ring] section must come first", &["[ring]"]))
    }

    fn module_twists(&self, r: &ModuleRef) -> Vec<i64> {
        let n = self.n.unwrap_or(1);
        match r {
            ModuleRef::Named(name) => self.manifest.module(name).map(|m| m.twists.clone()).unwrap_or_default(),
            ModuleRef::LineBundle(a) => vec![-a],
            ModuleRef::Generator(k) => vec![if *k <= n { 1 } else { 0 }],
            ModuleRef::Cotangent => vec![2; (n + 1) * n / 2],
            ModuleRef::Sum(list) => list
                .iter()
                .map(|s| match s {
                    Summand::LineBundle(a) => -a,
                    Summand::Generator(k) => {
                        if *k <= n {
                            1
                        } else {
                            0
                        }
                    }
                })
                .collect(),
        }
    }

    fn summand(&self, cur: &mut Cursor) -> PResult<Summand> {
        cur.skip_ws();
        let start = cur.pos;
        match cur.ident()?.as_str() {
            "O" => {
                cur.expect(b'(')?;
                let a = cur.int()?;
                cur.expect(b')')?;
                Ok(Summand::LineBundle(a))
            }
            "S" => {
                cur.expect(b'(')?;
                let k = self.generator_index(cur)?;
                cur.expect(b')')?;
                Ok(Summand::Generator(k))
            }
            other => Err(cur.error_at(start, format!("'{}' is not a summand", other), &["O(a)", "S(k)"])),
        }
    }

    fn generator_index(&self, cur: &mut Cursor) -> PResult<usize> {
        let start = cur.pos;
        let k = cur.natural()?;
        let n = self.n.unwrap_or(0);
        if k == 0 || k > n + 1 {
            return Err(cur.error_at(start, format!("generator index {} outside 1..={}", k, n + 1), &[]));
        }
        Ok(k)
    }

    fn reference(&self, cur: &mut Cursor, kind: Kind, start: usize, name: &str) -> PResult<()> {
        match self.scope.names.get(name) {
            Some((k, _)) if *k == kind => Ok(()),
            Some(_) => Err(cur.error_at(start, format!("'{}' names a different kind of object", name), &[])),
            None => {
                let what = match kind {
                    Kind::Module => "module",
                    Kind::Map => "map",
                    Kind::Complex => "complex",
                };
                Err(cur.error_at(start, format!("unresolved {} reference '{}'", what, name), &[]))
            }
        }
    }

    fn module_ref(&self, cur: &mut Cursor) -> PResult<ModuleRef> {
        if cur.peek() == Some(b'[') {
            return Ok(ModuleRef::Sum(cur.list(|c| self.summand(c))?));
        }
        let start = cur.pos;
        let save = cur.pos;
        let name = cur
            .ident()
            .map_err(|_| cur.error("expected a module", &["name", "O(a)", "S(k)", "Omega1", "[summands]"]))?;
        match name.as_str() {
            "O" | "S" => {
                cur.pos = save;
                Ok(match self.summand(cur)? {
                    Summand::LineBundle(a) => ModuleRef::LineBundle(a),
                    Summand::Generator(k) => ModuleRef::Generator(k),
                })
            }
            "Omega1" => Ok(ModuleRef::Cotangent),
            _ => {
                self.reference(cur, Kind::Module, start, &name)?;
                Ok(ModuleRef::Named(name))
            }
        }
    }

    fn map_ref(&self, cur: &mut Cursor) -> PResult<MapRef> {
        cur.skip_ws();
        let start = cur.pos;
        let name = cur.ident().map_err(|_| cur.error("expected a map", &["name", "id(M)"]))?;
        if name == "id" {
            cur.expect(b'(')?;
            let m = self.module_ref(cur)?;
            cur.expect(b')')?;
            return Ok(MapRef::Identity(m));
        }
        self.reference(cur, Kind::Map, start, &name)?;
        Ok(MapRef::Named(name))
    }

    fn complex_ref(&self, cur: &mut Cursor) -> PResult<String> {
        cur.skip_ws();
        let start = cur.pos;
        let name = cur.ident().map_err(|_| cur.error("expected a complex", &["name"]))?;
        self.reference(cur, Kind::Complex, start, &name)?;
        Ok(name)
    }

    fn declare(&mut self, cur: &Cursor, pos: usize, name: &str, kind: Kind) -> PResult<()> {
        if RESERVED.contains(&name) {
            return Err(cur.error_at(pos, format!("'{}' is a built-in name", name), &[]));
        }
        if self.scope.names.contains_key(name) {
            return Err(cur.error_at(pos, format!("duplicate name '{}'", name), &[]));
        }
        let idx = match kind {
            Kind::Module => self.manifest.modules.len(),
            Kind::Map => self.manifest.maps.len(),
            Kind::Complex => self.manifest.complexes.len(),
        };
        self.scope.names.insert(name.to_string(), (kind, idx));
        Ok(())
    }

    fn header(&mut self, cur: &mut Cursor) -> PResult<Section> {
        cur.expect(b'[')?;
        let start = cur.pos;
        let word = cur
            .ident()
            .map_err(|_| cur.error("expected a section name", &["ring", "module", "map", "complex", "tasks"]))?;
        let line = cur.line;
        let section = match word.as_str() {
            "ring" => {
                if self.n.is_some() {
                    return Err(cur.error_at(start, "duplicate [ring] section", &[]));
                }
                Section::Ring { n: None, line }
            }
            "tasks" => {
                self.nvars(cur)?;
                if self.seen_tasks {
                    return Err(cur.error_at(start, "duplicate [tasks] section", &[]));
                }
                self.seen_tasks = true;
                Section::Tasks
            }
            "module" | "map" | "complex" => {
                self.nvars(cur)?;
                if self.seen_tasks {
                    return Err(cur.error_at(start, "declarations must precede [tasks]", &["[tasks] entries"]));
                }
                let pos = {
                    cur.skip_ws();
                    cur.pos
                };
                let name = cur.ident()?;
                let kind = match word.as_str() {
                    "module" => Kind::Module,
                    "map" => Kind::Map,
                    _ => Kind::Complex,
                };
                self.declare(cur, pos, &name, kind)?;
                match kind {
                    Kind::Module => Section::Module {
                        decl: ModuleDecl {
                            name,
                            twists: Vec::new(),
                            relations: Vec::new(),
                        },
                        has_twists: false,
                        line,
                    },
                    Kind::Map => Section::Map {
                        decl: MapDecl {
                            name,
                            source: ModuleRef::LineBundle(0),
                            target: ModuleRef::LineBundle(0),
                            matrix: Vec::new(),
                        },
                        parts: [false; 3],
                        line,
                    },
                    Kind::Complex => Section::Complex {
                        decl: ComplexDecl {
                            name,
                            lo: 0,
                            hi: 0,
                            terms: BTreeMap::new(),
                            diffs: BTreeMap::new(),
                        },
                        has_degrees: false,
                        line,
                    },
                }
            }
            other => {
                return Err(cur.error_at(
                    start,
                    format!("unknown section '{}'", other),
                    &["ring", "module", "map", "complex", "tasks"],
                ))
            }
        };
        cur.expect(b']')?;
        cur.finish()?;
        Ok(section)
    }

    fn close(&mut self, section: Section) -> PResult<()> {
        let missing = |line: usize, what: &str| Diagnostic {
            line,
            column: 1,
            message: format!("section is missing '{}'", what),
            expected: vec![what.to_string()],
        };
        match section {
            Section::None | Section::Tasks => Ok(()),
            Section::Ring { n, line } => {
                let n = n.ok_or_else(|| missing(line, "n"))?;
                self.n = Some(n);
                self.manifest.n = n;
                Ok(())
            }
            Section::Module { decl, has_twists, line } => {
                if !has_twists {
                    return Err(missing(line, "twists"));
                }
                self.manifest.modules.push(decl);
                Ok(())
            }
            Section::Map { decl, parts, line } => {
                for (i, key) in ["source", "target", "matrix"].iter().enumerate() {
                    if !parts[i] {
                        return Err(missing(line, key));
                    }
                }
                self.manifest.maps.push(decl);
                Ok(())
            }
            Section::Complex { decl, has_degrees, line } => {
                if !has_degrees {
                    return Err(missing(line, "degrees"));
                }
                self.manifest.complexes.push(decl);
                Ok(())
            }
        }
    }

    fn key(&mut self, cur: &mut Cursor, allowed: &[&str]) -> PResult<(String, Option<i64>, usize)> {
        cur.skip_ws();
        let start = cur.pos;
        let key = cur.ident().map_err(|_| cur.error("expected a key", allowed))?;
        if !allowed.contains(&key.as_str()) {
            return Err(cur.error_at(start, format!("unknown key '{}'", key), allowed));
        }
        let index = if cur.eat(b'[') {
            let i = cur.int()?;
            cur.expect(b']')?;
            Some(i)
        } else {
            None
        };
        cur.expect(b'=')?;
        Ok((key, index, start))
    }

    fn entry(&mut self, section: &mut Section, cur: &mut Cursor) -> PResult<()> {
        let dup = |cur: &Cursor, pos: usize, key: &str| cur.error_at(pos, format!("duplicate key '{}'", key), &[]);
        let no_index = |cur: &Cursor, pos: usize, idx: Option<i64>| -> PResult<()> {
            match idx {
                Some(_) => Err(cur.error_at(pos, "this key takes no index", &["'='"])),
                None => Ok(()),
            }
        };
        match section {
            Section::None => Err(cur.error_at(0, "entry outside any section", &["[ring]"])),
            Section::Ring { n, .. } => {
                let (_, idx, pos) = self.key(cur, &["n"])?;
                no_index(cur, pos, idx)?;
                if n.is_some() {
                    return Err(dup(cur, pos, "n"));
                }
                let vpos = cur.pos;
                let v = cur.natural()?;
                if v == 0 || v > MAX_N {
                    return Err(cur.error_at(vpos, format!("n must lie in 1..={}", MAX_N), &[]));
                }
                *n = Some(v);
                cur.finish()
            }
            Section::Module { decl, has_twists, .. } => {
                let (key, idx, pos) = self.key(cur, &["twists", "relations"])?;
                no_index(cur, pos, idx)?;
                let nv = self.nvars(cur)?;
                if key == "twists" {
                    if *has_twists {
                        return Err(dup(cur, pos, "twists"));
                    }
                    decl.twists = cur.list(|c| c.int())?;
                    *has_twists = true;
                } else {
                    if !*has_twists {
                        return Err(cur.error_at(pos, "relations must follow twists", &["twists"]));
                    }
                    if !decl.relations.is_empty() {
                        return Err(dup(cur, pos, "relations"));
                    }
                    let vpos = cur.pos;
                    let cols = cur.list(|c| c.list(|c| c.polynomial(nv)))?;
                    check_columns(cur, vpos, nv, &decl.twists, None, &cols)?;
                    decl.relations = cols;
                }
                cur.finish()
            }
            Section::Map { decl, parts, .. } => {
                let (key, idx, pos) = self.key(cur, &["source", "target", "matrix"])?;
                no_index(cur, pos, idx)?;
                let nv = self.nvars(cur)?;
                let slot = ["source", "target", "matrix"].iter().position(|k| *k == key).unwrap();
                if parts[slot] {
                    return Err(dup(cur, pos, &key));
                }
                match slot {
                    0 => decl.source = self.module_ref(cur)?,
                    1 => decl.target = self.module_ref(cur)?,
                    _ => {
                        if !(parts[0] && parts[1]) {
                            return Err(cur.error_at(pos, "matrix must follow source and target", &["source", "target"]));
                        }
                        let vpos = cur.pos;
                        let cols = cur.list(|c| c.list(|c| c.polynomial(nv)))?;
                        let rows = self.module_twists(&decl.target);
                        let src = self.module_twists(&decl.source);
                        check_columns(cur, vpos, nv, &rows, Some(&src), &cols)?;
                        decl.matrix = cols;
                    }
                }
                parts[slot] = true;
                cur.finish()
            }
            Section::Complex { decl, has_degrees, .. } => {
                let (key, idx, pos) = self.key(cur, &["degrees", "term", "d", "generators"])?;
                if key == "degrees" {
                    no_index(cur, pos, idx)?;
                    if *has_degrees {
                        return Err(dup(cur, pos, "degrees"));
                    }
                    cur.expect(b'[')?;
                    decl.lo = cur.int()?;
                    cur.expect_str("..")?;
                    let hpos = cur.pos;
                    decl.hi = cur.int()?;
                    cur.expect(b']')?;
                    if decl.hi < decl.lo {
                        return Err(cur.error_at(hpos, "empty degree window", &[]));
                    }
                    *has_degrees = true;
                    return cur.finish();
                }
                if !*has_degrees {
                    return Err(cur.error_at(pos, "degrees must come first", &["degrees"]));
                }
                let Some(p) = idx else {
                    return Err(cur.error_at(pos + key.len(), "this key needs an index", &["'['"]));
                };
                let top = if key == "d" { decl.hi - 1 } else { decl.hi };
                if p < decl.lo || p > top {
                    return Err(cur.error_at(pos, format!("index {} outside {}..={}", p, decl.lo, top), &[]));
                }
                match key.as_str() {
                    "d" => {
                        if decl.diffs.contains_key(&p) {
                            return Err(dup(cur, pos, &format!("d[{}]", p)));
                        }
                        let r = self.map_ref(cur)?;
                        decl.diffs.insert(p, r);
                    }
                    _ => {
                        if decl.terms.contains_key(&p) {
                            return Err(dup(cur, pos, &format!("term[{}]", p)));
                        }
                        let r = if key == "term" {
                            self.module_ref(cur)?
                        } else {
                            let ks = cur.list(|c| self.generator_index(c))?;
                            ModuleRef::Sum(ks.into_iter().map(Summand::Generator).collect())
                        };
                        decl.terms.insert(p, r);
                    }
                }
                cur.finish()
            }
            Section::Tasks => {
                let t = self.task(cur)?;
                self.manifest.tasks.push(t);
                Ok(())
            }
        }
    }

    fn task(&mut self, cur: &mut Cursor) -> PResult<Task> {
        cur.skip_ws();
        let start = cur.pos;
        let name = cur.ident().map_err(|_| cur.error("expected a task", TASK_NAMES))?;
        let opts = |cur: &mut Cursor, allowed: &[&str]| -> PResult<BTreeMap<String, (i64, String, usize)>> {
            let mut out = BTreeMap::new();
            while !cur.at_end() {
                let kpos = cur.pos;
                let key = cur.ident().map_err(|_| cur.error("expected an option", allowed))?;
                if !allowed.contains(&key.as_str()) {
                    return Err(cur.error_at(kpos, format!("unknown option '{}'", key), allowed));
                }
                if out.contains_key(&key) {
                    return Err(cur.error_at(kpos, format!("duplicate option '{}'", key), &[]));
                }
                cur.expect(b'=')?;
                cur.skip_ws();
                let vpos = cur.pos;
                let (num, word) = if cur.peek().map(is_ident_start) == Some(true) {
                    (0, cur.ident()?)
                } else {
                    (cur.int()?, String::new())
                };
                out.insert(key, (num, word, vpos));
            }
            Ok(out)
        };
        let int_opt = |o: &BTreeMap<String, (i64, String, usize)>, k: &str, cur: &Cursor| -> PResult<Option<i64>> {
            match o.get(k) {
                None => Ok(None),
                Some((_, w, pos)) if !w.is_empty() => Err(cur.error_at(*pos, "expected an integer", &["integer"])),
                Some((v, _, _)) => Ok(Some(*v)),
            }
        };
        let n_opt = |o: &BTreeMap<String, (i64, String, usize)>, cur: &Cursor| -> PResult<Option<usize>> {
            match int_opt(o, "n", cur)? {
                None => Ok(None),
                Some(v) if v >= 1 && v <= MAX_N as i64 => Ok(Some(v as usize)),
                Some(_) => Err(cur.error_at(o["n"].2, format!("n must lie in 1..={}", MAX_N), &[])),
            }
        };
        let task = match name.as_str() {
            "resolve" => Task::Resolve(self.module_ref(cur)?),
            "annihilator" => Task::Annihilator(self.module_ref(cur)?),
            "cech" => Task::Cech(self.module_ref(cur)?),
            "hilbert" => {
                let module = self.module_ref(cur)?;
                let o = opts(cur, &["from", "to"])?;
                Task::Hilbert {
                    module,
                    from: int_opt(&o, "from", cur)?,
                    to: int_opt(&o, "to", cur)?,
                }
            }
            "sheaf-hom" => Task::SheafHom(self.module_ref(cur)?, self.module_ref(cur)?),
            "cone" => Task::Cone(self.map_ref(cur)?),
            "quasi-iso" => Task::QuasiIso(self.map_ref(cur)?),
            "triangle-from-ses" => Task::TriangleFromSes(self.map_ref(cur)?, self.map_ref(cur)?),
            "shift" => {
                let complex = self.complex_ref(cur)?;
                let o = opts(cur, &["k"])?;
                let k = int_opt(&o, "k", cur)?.ok_or_else(|| cur.error("missing option", &["k="]))?;
                Task::Shift { complex, k }
            }
            "hom-complex" => {
                let source = self.complex_ref(cur)?;
                let target = self.complex_ref(cur)?;
                let o = opts(cur, &["oracle"])?;
                let oracle = match o.get("oracle") {
                    None => OracleChoice::Sheaf,
                    Some((_, w, _)) if w == "sheaf" => OracleChoice::Sheaf,
                    Some((_, w, _)) if w == "module" => OracleChoice::Module,
                    Some((_, _, pos)) => return Err(cur.error_at(*pos, "unknown oracle", &["module", "sheaf"])),
                };
                Task::HomComplex { source, target, oracle }
            }
            "generators" => Task::Generators,
            "disjointness" => Task::Disjointness,
            "lem1-check" => {
                let o = opts(cur, &["n"])?;
                Task::Lem1Check { n: n_opt(&o, cur)? }
            }
            "atiyah" => {
                let o = opts(cur, &["a", "n"])?;
                let a = int_opt(&o, "a", cur)?.ok_or_else(|| cur.error("missing option", &["a="]))?;
                Task::Atiyah { a, n: n_opt(&o, cur)? }
            }
            "gauge-bound" => Task::GaugeBound(self.complex_ref(cur)?),
            other => return Err(cur.error_at(start, format!("unknown task '{}'", other), TASK_NAMES)),
        };
        cur.finish()?;
        Ok(task)
    }
}

/// Each column has one entry per row and a consistent degree; with `cols`
/// given, column `c` must have degree `cols[c]`.
fn check_columns(
    cur: &Cursor,
    pos: usize,
    nvars: usize,
    rows: &[i64],
    cols: Option<&[i64]>,
    columns: &[Vec<Polynomial>],
) -> PResult<()> {
    if let Some(c) = cols {
        if c.len() != columns.len() {
            return Err(cur.error_at(pos, format!("{} columns for {} source generators", columns.len(), c.len()), &[]));
        }
    }
    if let Some(i) = columns.iter().position(|c| c.len() != rows.len()) {
        return Err(cur.error_at(pos, format!("column {} has {} entries for {} rows", i, columns[i].len(), rows.len()), &[]));
    }
    let result = match cols {
        Some(c) => PolyMatrix::from_columns(nvars, rows.to_vec(), c.to_vec(), columns.to_vec()),
        None => PolyMatrix::from_columns_inferred(nvars, rows.to_vec(), columns.to_vec(), 0),
    };
    result.map(|_| ()).map_err(|e| cur.error_at(pos, format!("invalid degree data: {}", e), &[]))
}

pub fn parse_manifest(text: &str) -> Result<Manifest, Diagnostic> {
    let mut parser = Parser {
        n: None,
        manifest: Manifest {
            n: 0,
            modules: Vec::new(),
            maps: Vec::new(),
            complexes: Vec::new(),
            tasks: Vec::new(),
        },
        scope: Scope::default(),
        seen_tasks: false,
    };
    let mut section = Section::None;
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(content, i + 1);
        if cur.at_end() {
            continue;
        }
        if cur.peek() == Some(b'[') {
            let done = std::mem::replace(&mut section, Section::None);
            parser.close(done)?;
            section = parser.header(&mut cur)?;
        } else {
            parser.entry(&mut section, &mut cur)?;
        }
    }
    parser.close(section)?;
    if parser.n.is_none() {
        return Err(Diagnostic {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing [ring] section".into(),
            expected: vec!["[ring]".into()],
        });
    }
    Ok(parser.manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# sample
[ring]
n = 2

[module M]
twists = [0]
relations = [[x0], [x1^2]]

[map f]
source = O(-1)
target = M
matrix = [[x2]]

[complex C]
degrees = [-1..0]
generators[-1] = [1, 3]
term[0] = S(2)

[tasks]
resolve M
annihilator S(2)
cone f
lem1-check n=2
gauge-bound C
hom-complex C C oracle=module
";

    #[test]
    fn sample_round_trips() {
        let m = parse_manifest(SAMPLE).unwrap();
        assert_eq!(m.n, 2);
        assert_eq!(m.tasks.len(), 6);
        assert_eq!(m.complexes[0].terms[&-1], ModuleRef::Sum(vec![Summand::Generator(1), Summand::Generator(3)]));
        let printed = print_manifest(&m);
        assert_eq!(parse_manifest(&printed).unwrap(), m);
        assert_eq!(print_manifest(&parse_manifest(&printed).unwrap()), printed);
    }

    #[test]
    fn empty_task_list_is_valid() {
        let m = parse_manifest("[ring]\nn = 1\n[tasks]\n").unwrap();
        assert!(m.tasks.is_empty());
    }

    #[test]
    fn malformed_polynomial_is_located() {
        let text = "[ring]\nn = 2\n[module M]\ntwists = [0]\nrelations = [[x0^]]\n";
        let e = parse_manifest(text).unwrap_err();
        assert_eq!((e.line, e.column), (5, 18));
        assert!(e.message.contains("malformed polynomial"));
    }

    #[test]
    fn unresolved_reference_is_reported() {
        let e = parse_manifest("[ring]\nn = 1\n[tasks]\nresolve N\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 9));
        assert!(e.message.contains("unresolved module reference 'N'"));
    }

    #[test]
    fn unknown_task_lists_expected_names() {
        let e = parse_manifest("[ring]\nn = 1\n[tasks]\nfrobnicate\n").unwrap_err();
        assert_eq!(e.expected.len(), TASK_NAMES.len());
    }

    #[test]
    fn inhomogeneous_relations_are_rejected() {
        let e = parse_manifest("[ring]\nn = 1\n[module M]\ntwists = [0, 0]\nrelations = [[x0, x1^2]]\n").unwrap_err();
        assert!(e.message.contains("invalid degree data"), "{}", e);
    }

    #[test]
    fn generator_index_is_bounded() {
        let e = parse_manifest("[ring]\nn = 1\n[tasks]\nannihilator S(3)\n").unwrap_err();
        assert!(e.message.contains("outside 1..=2"));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let e = parse_manifest("[ring]\nn = 1\n[module M]\ntwists = [0]\n[module M]\ntwists = [1]\n").unwrap_err();
        assert_eq!(e.line, 5);
    }
}

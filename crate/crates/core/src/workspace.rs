//! The workspace text format: named rings, hyperideals, MCSs and
//! homomorphisms in a flat, diffable grammar. Conformance failure dumps use
//! the same grammar, so any reported instance can be re-loaded and replayed.
//!
//! ```text
//! # comments run to end of line; whitespace is insignificant
//! ring madar   { kind = tables n = 4 add = [[0,1,2,3],...] hyp = [[{0},...],...] }
//! ring weak    { kind = zphi n = 6 phi = {1,2,3,4,5} }
//! ring big     { kind = product left = madar right = weak }
//! ring small   { kind = quotient base = weak by = {0,3} }
//! ideal A in madar = {0,2}
//! mcs S in madar = {1,3}
//! hom h : weak -> small = [0,1,2,0,1,2]
//! ```
//!
//! Rings referenced by `product`/`quotient` blocks must be defined earlier
//! in the file. Names are unique per declaration kind. Every component is
//! validated on load; diagnostics carry line/column and a stable error code.

use crate::classify::{MCSet, McsError};
use crate::homs::{validate_hom, GoodHom, HomError, IdentityMode};
use crate::ideals::{Hyperideal, IdealError};
use crate::ring::{validate_with_capacity, HyperringTable, RawTables, RingError};
use crate::set::{render_mask, CAPACITY};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkspaceError {
    pub code: &'static str,
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for WorkspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "error[{}]: {} at {}:{}",
            self.code, self.message, self.line, self.col
        )
    }
}

impl std::error::Error for WorkspaceError {}

fn err<T>(
    code: &'static str,
    message: String,
    line: usize,
    col: usize,
) -> Result<T, WorkspaceError> {
    Err(WorkspaceError {
        code,
        message,
        line,
        col,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Carrier bound for rings built by this workspace; capped by the
    /// build-time capacity.
    pub capacity: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { capacity: CAPACITY }
    }
}

/// Construction recipe for a named ring, preserved for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Tables(RawTables),
    ZPhi { n: usize, phi: Vec<usize> },
    Product { left: String, right: String },
    Quotient { base: String, by: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct NamedRing {
    pub name: String,
    pub spec: RingSpec,
    pub ring: Arc<HyperringTable>,
}

#[derive(Debug, Clone)]
pub struct NamedIdeal {
    pub name: String,
    pub ring_name: String,
    pub ideal: Hyperideal,
}

#[derive(Debug, Clone)]
pub struct NamedMcs {
    pub name: String,
    pub ring_name: String,
    pub mcs: MCSet,
}

#[derive(Debug, Clone)]
pub struct NamedHom {
    pub name: String,
    pub source_name: String,
    pub target_name: String,
    pub hom: GoodHom,
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub rings: Vec<NamedRing>,
    pub ideals: Vec<NamedIdeal>,
    pub mcs: Vec<NamedMcs>,
    pub homs: Vec<NamedHom>,
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, WorkspaceError> {
        Workspace::parse_with(text, &LoadOptions::default())
    }

    pub fn parse_with(text: &str, options: &LoadOptions) -> Result<Workspace, WorkspaceError> {
        let tokens = tokenize(text)?;
        Parser {
            tokens,
            pos: 0,
            options: *options,
            ws: Workspace::default(),
        }
        .run()
    }

    pub fn ring(&self, name: &str) -> Option<&NamedRing> {
        self.rings.iter().find(|r| r.name == name)
    }

    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|r| r.name == name)
    }

    pub fn mcs_named(&self, name: &str) -> Option<&NamedMcs> {
        self.mcs.iter().find(|r| r.name == name)
    }

    pub fn hom(&self, name: &str) -> Option<&NamedHom> {
        self.homs.iter().find(|r| r.name == name)
    }

    pub fn ring_name_of(&self, ring: &HyperringTable) -> Option<&str> {
        self.rings
            .iter()
            .find(|r| r.ring.id() == ring.id())
            .map(|r| r.name.as_str())
    }

    /// Adds a pre-validated ring under a fresh name, recording its tables as
    /// the construction spec. Used when assembling dump workspaces.
    pub fn add_ring(
        &mut self,
        name: &str,
        ring: Arc<HyperringTable>,
    ) -> Result<(), WorkspaceError> {
        if self.ring(name).is_some() {
            return err("E_DUP", format!("duplicate ring name '{name}'"), 0, 0);
        }
        self.rings.push(NamedRing {
            name: name.to_string(),
            spec: RingSpec::Tables(ring.raw_tables()),
            ring,
        });
        Ok(())
    }

    pub fn add_ideal(
        &mut self,
        name: &str,
        ring_name: &str,
        ideal: Hyperideal,
    ) -> Result<(), WorkspaceError> {
        if self.ideal(name).is_some() {
            return err("E_DUP", format!("duplicate ideal name '{name}'"), 0, 0);
        }
        if self.ring(ring_name).is_none() {
            return err("E_REF", format!("unknown ring '{ring_name}'"), 0, 0);
        }
        self.ideals.push(NamedIdeal {
            name: name.to_string(),
            ring_name: ring_name.to_string(),
            ideal,
        });
        Ok(())
    }

    pub fn add_mcs(
        &mut self,
        name: &str,
        ring_name: &str,
        mcs: MCSet,
    ) -> Result<(), WorkspaceError> {
        if self.mcs_named(name).is_some() {
            return err("E_DUP", format!("duplicate mcs name '{name}'"), 0, 0);
        }
        if self.ring(ring_name).is_none() {
            return err("E_REF", format!("unknown ring '{ring_name}'"), 0, 0);
        }
        self.mcs.push(NamedMcs {
            name: name.to_string(),
            ring_name: ring_name.to_string(),
            mcs,
        });
        Ok(())
    }

    pub fn add_hom(
        &mut self,
        name: &str,
        source_name: &str,
        target_name: &str,
        hom: GoodHom,
    ) -> Result<(), WorkspaceError> {
        if self.hom(name).is_some() {
            return err("E_DUP", format!("duplicate hom name '{name}'"), 0, 0);
        }
        self.homs.push(NamedHom {
            name: name.to_string(),
            source_name: source_name.to_string(),
            target_name: target_name.to_string(),
            hom,
        });
        Ok(())
    }

    /// Canonical text form; `parse(render(w))` yields an equivalent
    /// workspace.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.rings {
            out.push_str(&format!("ring {} {{\n", r.name));
            match &r.spec {
                RingSpec::Tables(raw) => {
                    out.push_str("  kind = tables\n");
                    out.push_str(&format!("  n = {}\n", raw.n));
                    let add_rows: Vec<String> = raw
                        .add
                        .iter()
                        .map(|row| {
                            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                            format!("[{}]", cells.join(","))
                        })
                        .collect();
                    out.push_str(&format!("  add = [{}]\n", add_rows.join(",")));
                    let hyp_rows: Vec<String> = raw
                        .hyp
                        .iter()
                        .map(|row| {
                            let cells: Vec<String> = row
                                .iter()
                                .map(|cell| {
                                    let elems: Vec<String> =
                                        cell.iter().map(|v| v.to_string()).collect();
                                    format!("{{{}}}", elems.join(","))
                                })
                                .collect();
                            format!("[{}]", cells.join(","))
                        })
                        .collect();
                    out.push_str(&format!("  hyp = [{}]\n", hyp_rows.join(",")));
                }
                RingSpec::ZPhi { n, phi } => {
                    out.push_str("  kind = zphi\n");
                    out.push_str(&format!("  n = {n}\n"));
                    let elems: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
                    out.push_str(&format!("  phi = {{{}}}\n", elems.join(",")));
                }
                RingSpec::Product { left, right } => {
                    out.push_str("  kind = product\n");
                    out.push_str(&format!("  left = {left}\n"));
                    out.push_str(&format!("  right = {right}\n"));
                }
                RingSpec::Quotient { base, by } => {
                    out.push_str("  kind = quotient\n");
                    out.push_str(&format!("  base = {base}\n"));
                    let elems: Vec<String> = by.iter().map(|v| v.to_string()).collect();
                    out.push_str(&format!("  by = {{{}}}\n", elems.join(",")));
                }
            }
            out.push_str("}\n");
        }
        for i in &self.ideals {
            out.push_str(&format!(
                "ideal {} in {} = {}\n",
                i.name,
                i.ring_name,
                render_mask(i.ideal.set().bits())
            ));
        }
        for m in &self.mcs {
            out.push_str(&format!(
                "mcs {} in {} = {}\n",
                m.name,
                m.ring_name,
                render_mask(m.mcs.set().bits())
            ));
        }
        for h in &self.homs {
            let images: Vec<String> = h.hom.map().iter().map(|v| v.to_string()).collect();
            out.push_str(&format!(
                "hom {} : {} -> {} = [{}]\n",
                h.name,
                h.source_name,
                h.target_name,
                images.join(",")
            ));
        }
        out
    }
}

// ---------------------------------------------------------------- tokenizer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Colon,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(v) => write!(f, "'{v}'"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Eq => write!(f, "'='"),
            Tok::Colon => write!(f, "':'"),
            Tok::Arrow => write!(f, "'->'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, WorkspaceError> {
    let mut sc = Scanner {
        chars: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = sc.peek() {
        let (tline, tcol) = (sc.line, sc.col);
        let mut push = |tok| out.push(Spanned { tok, line: tline, col: tcol });
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                sc.bump();
            }
            '#' => {
                while let Some(c) = sc.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '{' => {
                sc.bump();
                push(Tok::LBrace);
            }
            '}' => {
                sc.bump();
                push(Tok::RBrace);
            }
            '[' => {
                sc.bump();
                push(Tok::LBracket);
            }
            ']' => {
                sc.bump();
                push(Tok::RBracket);
            }
            ',' => {
                sc.bump();
                push(Tok::Comma);
            }
            '=' => {
                sc.bump();
                push(Tok::Eq);
            }
            ':' => {
                sc.bump();
                push(Tok::Colon);
            }
            '-' => {
                sc.bump();
                if sc.peek() == Some('>') {
                    sc.bump();
                    push(Tok::Arrow);
                } else {
                    return err("E_SYNTAX", "expected '>' after '-'".into(), tline, tcol);
                }
            }
            '0'..='9' => {
                let mut v: usize = 0;
                while let Some(d) = sc.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    sc.bump();
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit as usize))
                        .ok_or(WorkspaceError {
                            code: "E_SYNTAX",
                            message: "integer literal too large".into(),
                            line: tline,
                            col: tcol,
                        })?;
                }
                push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(d) = sc.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(sc.bump().unwrap());
                    } else {
                        break;
                    }
                }
                push(Tok::Ident(s));
            }
            other => {
                return err(
                    "E_SYNTAX",
                    format!("unexpected character '{other}'"),
                    tline,
                    tcol,
                );
            }
        }
    }
    Ok(out)
}

// ------------------------------------------------------------------- parser

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(usize),
    Name(String),
    Set(Vec<usize>),
    List(Vec<Value>),
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    options: LoadOptions,
    ws: Workspace,
}

impl Parser {
    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|t| (t.line, t.col))
            .unwrap_or((1, 1))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), WorkspaceError> {
        let (line, col) = self.here();
        match self.next() {
            Some(t) if t.tok == want => Ok(()),
            Some(t) => err(
                "E_SYNTAX",
                format!("expected {want}, found {}", t.tok),
                t.line,
                t.col,
            ),
            None => err(
                "E_SYNTAX",
                format!("expected {want}, found end of input"),
                line,
                col,
            ),
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize, usize), WorkspaceError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Spanned {
                tok: Tok::Ident(s),
                line,
                col,
            }) => Ok((s, line, col)),
            Some(t) => err(
                "E_SYNTAX",
                format!("expected a name, found {}", t.tok),
                t.line,
                t.col,
            ),
            None => err(
                "E_SYNTAX",
                "expected a name, found end of input".into(),
                line,
                col,
            ),
        }
    }

    fn parse_set(&mut self) -> Result<Vec<usize>, WorkspaceError> {
        let (sline, scol) = self.here();
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::RBrace) {
            self.next();
            return Ok(out);
        }
        loop {
            match self.next() {
                Some(Spanned {
                    tok: Tok::Int(v), ..
                }) => out.push(v),
                Some(t) => {
                    return err(
                        "E_SYNTAX",
                        format!("expected an element index, found {}", t.tok),
                        t.line,
                        t.col,
                    )
                }
                None => return err("E_SYNTAX", "unterminated set".into(), sline, scol),
            }
            match self.next() {
                Some(Spanned { tok: Tok::Comma, .. }) => continue,
                Some(Spanned { tok: Tok::RBrace, .. }) => break,
                Some(t) => {
                    return err(
                        "E_SYNTAX",
                        format!("expected ',' or '}}', found {}", t.tok),
                        t.line,
                        t.col,
                    )
                }
                None => return err("E_SYNTAX", "unterminated set".into(), sline, scol),
            }
        }
        Ok(out)
    }

    fn parse_value(&mut self) -> Result<Value, WorkspaceError> {
        let (line, col) = self.here();
        match self.peek() {
            Some(Tok::Int(_)) => match self.next() {
                Some(Spanned {
                    tok: Tok::Int(v), ..
                }) => Ok(Value::Int(v)),
                _ => unreachable!(),
            },
            Some(Tok::Ident(_)) => match self.next() {
                Some(Spanned {
                    tok: Tok::Ident(s), ..
                }) => Ok(Value::Name(s)),
                _ => unreachable!(),
            },
            Some(Tok::LBrace) => Ok(Value::Set(self.parse_set()?)),
            Some(Tok::LBracket) => {
                self.next();
                let mut items = Vec::new();
                if self.peek() == Some(&Tok::RBracket) {
                    self.next();
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.parse_value()?);
                    match self.next() {
                        Some(Spanned { tok: Tok::Comma, .. }) => continue,
                        Some(Spanned {
                            tok: Tok::RBracket, ..
                        }) => break,
                        Some(t) => {
                            return err(
                                "E_SYNTAX",
                                format!("expected ',' or ']', found {}", t.tok),
                                t.line,
                                t.col,
                            )
                        }
                        None => return err("E_SYNTAX", "unterminated list".into(), line, col),
                    }
                }
                Ok(Value::List(items))
            }
            Some(t) => err("E_SYNTAX", format!("unexpected {t}"), line, col),
            None => err("E_SYNTAX", "unexpected end of input".into(), line, col),
        }
    }

    fn run(mut self) -> Result<Workspace, WorkspaceError> {
        while let Some(tok) = self.peek() {
            let (line, col) = self.here();
            match tok {
                Tok::Ident(word) => match word.as_str() {
                    "ring" => {
                        self.next();
                        self.parse_ring()?;
                    }
                    "ideal" => {
                        self.next();
                        self.parse_ideal()?;
                    }
                    "mcs" => {
                        self.next();
                        self.parse_mcs()?;
                    }
                    "hom" => {
                        self.next();
                        self.parse_hom()?;
                    }
                    other => {
                        return err(
                            "E_SYNTAX",
                            format!("expected 'ring', 'ideal', 'mcs' or 'hom', found '{other}'"),
                            line,
                            col,
                        )
                    }
                },
                other => {
                    return err(
                        "E_SYNTAX",
                        format!("expected a declaration, found {other}"),
                        line,
                        col,
                    )
                }
            }
        }
        Ok(self.ws)
    }

    fn lookup_ring(
        &self,
        name: &str,
        line: usize,
        col: usize,
    ) -> Result<Arc<HyperringTable>, WorkspaceError> {
        self.ws
            .ring(name)
            .map(|r| r.ring.clone())
            .ok_or(WorkspaceError {
                code: "E_REF",
                message: format!("unknown ring '{name}'"),
                line,
                col,
            })
    }

    fn parse_ring(&mut self) -> Result<(), WorkspaceError> {
        let (name, nline, ncol) = self.expect_ident()?;
        if self.ws.ring(&name).is_some() {
            return err("E_DUP", format!("duplicate ring name '{name}'"), nline, ncol);
        }
        self.expect(Tok::LBrace)?;
        let mut fields: Vec<(String, Value, usize, usize)> = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.next();
                    break;
                }
                Some(Tok::Ident(_)) => {
                    let (key, kline, kcol) = self.expect_ident()?;
                    self.expect(Tok::Eq)?;
                    let value = self.parse_value()?;
                    fields.push((key, value, kline, kcol));
                }
                _ => {
                    let (line, col) = self.here();
                    return err("E_SYNTAX", "expected a field or '}'".into(), line, col);
                }
            }
        }
        let field = |key: &str| fields.iter().find(|(k, _, _, _)| k == key).cloned();
        let require = |key: &str| {
            field(key).ok_or(WorkspaceError {
                code: "E_SYNTAX",
                message: format!("ring '{name}' is missing field '{key}'"),
                line: nline,
                col: ncol,
            })
        };
        let kind = match require("kind")? {
            (_, Value::Name(k), ..) => k,
            (_, _, line, col) => {
                return err("E_SYNTAX", "kind must be a bare word".into(), line, col)
            }
        };
        let known_fields: &[&str] = match kind.as_str() {
            "tables" => &["kind", "n", "add", "hyp"],
            "zphi" => &["kind", "n", "phi"],
            "product" => &["kind", "left", "right"],
            "quotient" => &["kind", "base", "by"],
            other => {
                return err(
                    "E_SYNTAX",
                    format!("unknown ring kind '{other}'"),
                    nline,
                    ncol,
                )
            }
        };
        for (k, _, line, col) in &fields {
            if !known_fields.contains(&k.as_str()) {
                return err(
                    "E_SYNTAX",
                    format!("unexpected field '{k}' in '{kind}' ring"),
                    *line,
                    *col,
                );
            }
        }
        let (spec, ring) = match kind.as_str() {
            "tables" => {
                let n = match require("n")? {
                    (_, Value::Int(n), ..) => n,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "n must be an integer".into(), line, col)
                    }
                };
                let (_, add_v, aline, acol) = require("add")?;
                let add = int_matrix(&add_v).ok_or(WorkspaceError {
                    code: "E_SYNTAX",
                    message: "add must be a list of integer rows".into(),
                    line: aline,
                    col: acol,
                })?;
                let (_, hyp_v, hline, hcol) = require("hyp")?;
                let hyp = set_matrix(&hyp_v).ok_or(WorkspaceError {
                    code: "E_SYNTAX",
                    message: "hyp must be a list of set rows".into(),
                    line: hline,
                    col: hcol,
                })?;
                let raw = RawTables { n, add, hyp };
                let ring = validate_with_capacity(&raw, self.options.capacity)
                    .map_err(|e| ring_error(&name, e, nline, ncol))?;
                (RingSpec::Tables(raw), ring)
            }
            "zphi" => {
                let n = match require("n")? {
                    (_, Value::Int(n), ..) => n,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "n must be an integer".into(), line, col)
                    }
                };
                let phi = match require("phi")? {
                    (_, Value::Set(s), ..) => s,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "phi must be a set".into(), line, col)
                    }
                };
                if n > self.options.capacity {
                    return err(
                        "E_CAPACITY",
                        format!(
                            "carrier size {n} exceeds capacity {}",
                            self.options.capacity
                        ),
                        nline,
                        ncol,
                    );
                }
                let ring = crate::ring::build_zphi(n, &phi)
                    .map_err(|e| ring_error(&name, e, nline, ncol))?;
                (RingSpec::ZPhi { n, phi }, ring)
            }
            "product" => {
                let left = match require("left")? {
                    (_, Value::Name(s), ..) => s,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "left must be a ring name".into(), line, col)
                    }
                };
                let right = match require("right")? {
                    (_, Value::Name(s), ..) => s,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "right must be a ring name".into(), line, col)
                    }
                };
                let l = self.lookup_ring(&left, nline, ncol)?;
                let r = self.lookup_ring(&right, nline, ncol)?;
                let ring = l
                    .direct_product(&r, self.options.capacity)
                    .map_err(|e| ring_error(&name, e, nline, ncol))?;
                (RingSpec::Product { left, right }, ring)
            }
            "quotient" => {
                let base = match require("base")? {
                    (_, Value::Name(s), ..) => s,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "base must be a ring name".into(), line, col)
                    }
                };
                let by = match require("by")? {
                    (_, Value::Set(s), ..) => s,
                    (_, _, line, col) => {
                        return err("E_SYNTAX", "by must be a set".into(), line, col)
                    }
                };
                let b = self.lookup_ring(&base, nline, ncol)?;
                let by_set = b
                    .subset(&by)
                    .map_err(|e| ring_error(&name, e, nline, ncol))?;
                let b_ideal = Hyperideal::new(&b, by_set)
                    .map_err(|e| ideal_error(&name, e, nline, ncol))?;
                let (q, _proj) = b
                    .quotient(&b_ideal)
                    .map_err(|e| ring_error(&name, e, nline, ncol))?;
                let ring = Arc::try_unwrap(q).unwrap_or_else(|q| (*q).clone());
                (RingSpec::Quotient { base, by }, ring)
            }
            _ => unreachable!(),
        };
        self.ws.rings.push(NamedRing {
            name,
            spec,
            ring: Arc::new(ring),
        });
        Ok(())
    }

    fn parse_in_clause(&mut self) -> Result<(String, usize, usize), WorkspaceError> {
        let (kw, kline, kcol) = self.expect_ident()?;
        if kw != "in" {
            return err("E_SYNTAX", format!("expected 'in', found '{kw}'"), kline, kcol);
        }
        self.expect_ident()
    }

    fn parse_ideal(&mut self) -> Result<(), WorkspaceError> {
        let (name, nline, ncol) = self.expect_ident()?;
        if self.ws.ideal(&name).is_some() {
            return err("E_DUP", format!("duplicate ideal name '{name}'"), nline, ncol);
        }
        let (ring_name, rline, rcol) = self.parse_in_clause()?;
        self.expect(Tok::Eq)?;
        let elems = self.parse_set()?;
        let ring = self.lookup_ring(&ring_name, rline, rcol)?;
        let set = ring
            .subset(&elems)
            .map_err(|e| ring_error(&name, e, nline, ncol))?;
        let ideal = Hyperideal::new(&ring, set).map_err(|e| ideal_error(&name, e, nline, ncol))?;
        self.ws.ideals.push(NamedIdeal {
            name,
            ring_name,
            ideal,
        });
        Ok(())
    }

    fn parse_mcs(&mut self) -> Result<(), WorkspaceError> {
        let (name, nline, ncol) = self.expect_ident()?;
        if self.ws.mcs_named(&name).is_some() {
            return err("E_DUP", format!("duplicate mcs name '{name}'"), nline, ncol);
        }
        let (ring_name, rline, rcol) = self.parse_in_clause()?;
        self.expect(Tok::Eq)?;
        let elems = self.parse_set()?;
        let ring = self.lookup_ring(&ring_name, rline, rcol)?;
        let set = ring
            .subset(&elems)
            .map_err(|e| ring_error(&name, e, nline, ncol))?;
        let mcs = MCSet::new(&ring, set).map_err(|e| mcs_error(&name, e, nline, ncol))?;
        self.ws.mcs.push(NamedMcs {
            name,
            ring_name,
            mcs,
        });
        Ok(())
    }

    fn parse_hom(&mut self) -> Result<(), WorkspaceError> {
        let (name, nline, ncol) = self.expect_ident()?;
        if self.ws.hom(&name).is_some() {
            return err("E_DUP", format!("duplicate hom name '{name}'"), nline, ncol);
        }
        self.expect(Tok::Colon)?;
        let (source_name, sline, scol) = self.expect_ident()?;
        self.expect(Tok::Arrow)?;
        let (target_name, tline, tcol) = self.expect_ident()?;
        self.expect(Tok::Eq)?;
        let value = self.parse_value()?;
        let map = match value {
            Value::List(items) => {
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    match item {
                        Value::Int(v) => out.push(v),
                        _ => {
                            return err(
                                "E_SYNTAX",
                                "hom images must be integers".into(),
                                nline,
                                ncol,
                            )
                        }
                    }
                }
                out
            }
            _ => return err("E_SYNTAX", "hom map must be a list".into(), nline, ncol),
        };
        let src = self.lookup_ring(&source_name, sline, scol)?;
        let dst = self.lookup_ring(&target_name, tline, tcol)?;
        let hom = validate_hom(src, dst, &map, IdentityMode::default())
            .map_err(|e| hom_error(&name, e, nline, ncol))?;
        self.ws.homs.push(NamedHom {
            name,
            source_name,
            target_name,
            hom,
        });
        Ok(())
    }
}

fn int_matrix(v: &Value) -> Option<Vec<Vec<usize>>> {
    let Value::List(rows) = v else { return None };
    rows.iter()
        .map(|row| {
            let Value::List(cells) = row else { return None };
            cells
                .iter()
                .map(|c| match c {
                    Value::Int(v) => Some(*v),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

fn set_matrix(v: &Value) -> Option<Vec<Vec<Vec<usize>>>> {
    let Value::List(rows) = v else { return None };
    rows.iter()
        .map(|row| {
            let Value::List(cells) = row else { return None };
            cells
                .iter()
                .map(|c| match c {
                    Value::Set(s) => Some(s.clone()),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

fn ring_error(name: &str, e: RingError, line: usize, col: usize) -> WorkspaceError {
    WorkspaceError {
        code: e.code(),
        message: format!("'{name}': {e}"),
        line,
        col,
    }
}

fn ideal_error(name: &str, e: IdealError, line: usize, col: usize) -> WorkspaceError {
    WorkspaceError {
        code: e.code(),
        message: format!("'{name}': {e}"),
        line,
        col,
    }
}

fn mcs_error(name: &str, e: McsError, line: usize, col: usize) -> WorkspaceError {
    WorkspaceError {
        code: e.code(),
        message: format!("'{name}': {e}"),
        line,
        col,
    }
}

fn hom_error(name: &str, e: HomError, line: usize, col: usize) -> WorkspaceError {
    WorkspaceError {
        code: e.code(),
        message: format!("'{name}': {e}"),
        line,
        col,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# two rings, an ideal, an MCS and a projection hom
ring weak { kind = zphi n = 6 phi = {1,2,3,4,5} }
ring small { kind = quotient base = weak by = {0,3} }
ideal A in weak = {0,2,4}
mcs S in weak = {1,5}
hom p : weak -> small = [0,1,2,0,1,2]
"#;

    #[test]
    fn sample_parses_and_resolves() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        assert_eq!(ws.rings.len(), 2);
        assert_eq!(ws.ideal("A").unwrap().ideal.set().to_string(), "{0,2,4}");
        assert_eq!(ws.mcs_named("S").unwrap().mcs.set().to_string(), "{1,5}");
        assert!(ws.hom("p").unwrap().hom.is_surjective());
    }

    #[test]
    fn empty_input_is_empty_workspace() {
        let ws = Workspace::parse("   # nothing here\n").unwrap();
        assert!(ws.rings.is_empty() && ws.ideals.is_empty());
    }

    #[test]
    fn unknown_ring_reference_is_reported_with_position() {
        let e = Workspace::parse("ideal A in nowhere = {0}\n").unwrap_err();
        assert_eq!(e.code, "E_REF");
        assert_eq!(e.line, 1);
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let text =
            "ring a { kind = zphi n = 2 phi = {1} }\nring a { kind = zphi n = 2 phi = {1} }\n";
        let e = Workspace::parse(text).unwrap_err();
        assert_eq!(e.code, "E_DUP");
    }

    #[test]
    fn invalid_ideal_is_rejected_with_ideal_code() {
        let text =
            "ring weak { kind = zphi n = 6 phi = {1,2,3,4,5} }\nideal bad in weak = {0,1}\n";
        let e = Workspace::parse(text).unwrap_err();
        assert_eq!(e.code, "E_IDEAL");
    }

    #[test]
    fn capacity_option_is_enforced() {
        let e = Workspace::parse_with(
            "ring big { kind = zphi n = 12 phi = {1} }\n",
            &LoadOptions { capacity: 8 },
        )
        .unwrap_err();
        assert_eq!(e.code, "E_CAPACITY");
    }

    #[test]
    fn render_round_trips() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        let text = ws.render();
        let ws2 = Workspace::parse(&text).unwrap();
        assert_eq!(ws.rings.len(), ws2.rings.len());
        for (a, b) in ws.rings.iter().zip(&ws2.rings) {
            assert_eq!(a.name, b.name);
            assert!(a.ring.same_tables(&b.ring));
        }
        for (a, b) in ws.ideals.iter().zip(&ws2.ideals) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.ideal.set().bits(), b.ideal.set().bits());
        }
        for (a, b) in ws.homs.iter().zip(&ws2.homs) {
            assert_eq!(a.hom.map(), b.hom.map());
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = Workspace::parse("ring ! {}").unwrap_err();
        assert_eq!(e.code, "E_SYNTAX");
        assert_eq!((e.line, e.col), (1, 6));
    }
}

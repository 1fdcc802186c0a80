//! Text format for reaction networks.
//!
//! ```text
//! # comment
//! 2 A + B <-> 3 A, k=1, k'=5/2
//! @fully_open
//! @rate A_in 3/2
//! ```
//!
//! `<->` expands to two directed reactions. `@fully_open` closes the
//! network under inflows and outflows after all reaction lines are read.
//! `@rate X_in r` / `@rate X_out r` attach rates to the flow reactions of
//! species `X`; rates on ordinary reactions use the trailing `k=` clause.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

use crate::model::{Complex, ModelError, Network, Reaction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("negative stoichiometric coefficient")]
    NegativeCoefficient,
    #[error("rate constant must be positive")]
    ZeroRate,
    #[error("unknown directive `@{0}`")]
    UnknownDirective(String),
    #[error(transparent)]
    Model(ModelError),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// A parsed network plus the document-level directives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkDocument {
    pub network: Network,
    pub fully_open: bool,
    pub rate_hints: BTreeMap<Reaction, BigRational>,
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal(String),
    Ident(String),
    Plus,
    Arrow,
    RevArrow,
    Comma,
    Assign,
    Prime,
    Slash,
    At,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{}", n),
            Tok::Decimal(s) => write!(f, "{}", s),
            Tok::Ident(s) => write!(f, "{}", s),
            Tok::Plus => write!(f, "+"),
            Tok::Arrow => write!(f, "->"),
            Tok::RevArrow => write!(f, "<->"),
            Tok::Comma => write!(f, ","),
            Tok::Assign => write!(f, "="),
            Tok::Prime => write!(f, "'"),
            Tok::Slash => write!(f, "/"),
            Tok::At => write!(f, "@"),
        }
    }
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(line_text: &'a str, line: usize) -> Self {
        Lexer {
            chars: line_text.chars().collect(),
            pos: 0,
            line,
            _src: line_text,
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            col: self.pos + 1,
            kind,
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let col = self.pos + 1;
            match c {
                ' ' | '\t' => {
                    self.pos += 1;
                }
                '#' => break,
                '+' => {
                    out.push((Tok::Plus, col));
                    self.pos += 1;
                }
                ',' => {
                    out.push((Tok::Comma, col));
                    self.pos += 1;
                }
                '=' => {
                    out.push((Tok::Assign, col));
                    self.pos += 1;
                }
                '\'' => {
                    out.push((Tok::Prime, col));
                    self.pos += 1;
                }
                '/' => {
                    out.push((Tok::Slash, col));
                    self.pos += 1;
                }
                '@' => {
                    out.push((Tok::At, col));
                    self.pos += 1;
                }
                '-' => {
                    if self.peek(1) == Some('>') {
                        out.push((Tok::Arrow, col));
                        self.pos += 2;
                    } else if self.peek(1).map_or(false, |d| d.is_ascii_digit()) {
                        self.pos += 1;
                        let (tok, _) = self.number()?;
                        out.push((negate(tok), col));
                    } else {
                        return Err(self.err(ParseErrorKind::Syntax(
                            "unexpected `-`".to_string(),
                        )));
                    }
                }
                '<' => {
                    if self.peek(1) == Some('-') && self.peek(2) == Some('>') {
                        out.push((Tok::RevArrow, col));
                        self.pos += 3;
                    } else {
                        return Err(self.err(ParseErrorKind::Syntax(
                            "unexpected `<`".to_string(),
                        )));
                    }
                }
                d if d.is_ascii_digit() => {
                    let (tok, col) = self.number()?;
                    out.push((tok, col));
                }
                a if a.is_ascii_alphabetic() || a == '_' => {
                    let start = self.pos;
                    while self.pos < self.chars.len()
                        && (self.chars[self.pos].is_ascii_alphanumeric()
                            || self.chars[self.pos] == '_')
                    {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    out.push((Tok::Ident(name), start + 1));
                }
                _ => {
                    return Err(self.err(ParseErrorKind::Syntax(format!(
                        "unexpected character `{}`",
                        c
                    ))));
                }
            }
        }
        Ok(out)
    }

    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn number(&mut self) -> Result<(Tok, usize), ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.peek(0) == Some('.') && self.peek(1).map_or(false, |d| d.is_ascii_digit()) {
            self.pos += 1;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let raw: String = self.chars[start..self.pos].iter().collect();
            return Ok((Tok::Decimal(raw), start + 1));
        }
        let raw: String = self.chars[start..self.pos].iter().collect();
        Ok((Tok::Int(raw.parse().unwrap()), start + 1))
    }
}

fn negate(tok: Tok) -> Tok {
    match tok {
        Tok::Int(n) => Tok::Int(-n),
        Tok::Decimal(s) => Tok::Decimal(format!("-{}", s)),
        t => t,
    }
}

// ---------------------------------------------------------------------------
// Parser

struct RawReaction {
    reactant: Vec<(String, u32)>,
    product: Vec<(String, u32)>,
    reversible: bool,
    rate_fwd: Option<BigRational>,
    rate_rev: Option<BigRational>,
}

struct LineParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn err_at(&self, kind: ParseErrorKind) -> ParseError {
        let col = self
            .toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(_, c)| *c + 1).unwrap_or(1));
        ParseError {
            line: self.line,
            col,
            kind,
        }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.err_at(ParseErrorKind::Syntax(msg.to_string()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(ParseError {
                line: self.line,
                col: self.toks[self.pos - 1].1,
                kind: ParseErrorKind::Syntax(format!("expected `{}`, found `{}`", want, t)),
            }),
            None => Err(self.syntax(&format!("expected `{}`", want))),
        }
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        match self.next() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    match self.next() {
                        Some(Tok::Int(d)) if d.is_positive() => Ok(BigRational::new(n, d)),
                        _ => Err(self.syntax("expected positive integer denominator")),
                    }
                } else {
                    Ok(BigRational::from(n))
                }
            }
            Some(Tok::Decimal(raw)) => Ok(decimal_to_rational(&raw)),
            _ => Err(self.syntax("expected rational number")),
        }
    }

    fn complex(&mut self) -> Result<Vec<(String, u32)>, ParseError> {
        // the bare zero complex
        if let Some(Tok::Int(n)) = self.peek() {
            if n.is_zero() && !matches!(self.toks.get(self.pos + 1), Some((Tok::Ident(_), _))) {
                self.next();
                return Ok(Vec::new());
            }
        }
        let mut terms = Vec::new();
        loop {
            let coeff = match self.peek() {
                Some(Tok::Int(n)) => {
                    let n = n.clone();
                    self.next();
                    if n.is_negative() {
                        self.pos -= 1;
                        return Err(self.err_at(ParseErrorKind::NegativeCoefficient));
                    }
                    u32::try_from(&n).map_err(|_| self.syntax("coefficient too large"))?
                }
                _ => 1,
            };
            match self.next() {
                Some(Tok::Ident(name)) => terms.push((name, coeff)),
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.syntax("expected species name"));
                }
            }
            if self.peek() == Some(&Tok::Plus) {
                self.next();
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn reaction(mut self) -> Result<RawReaction, ParseError> {
        let reactant = self.complex()?;
        let reversible = match self.next() {
            Some(Tok::Arrow) => false,
            Some(Tok::RevArrow) => true,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.syntax("expected `->` or `<->`"));
            }
        };
        let product = self.complex()?;
        let mut rate_fwd = None;
        let mut rate_rev = None;
        if self.peek() == Some(&Tok::Comma) {
            self.next();
            self.expect_rate_key(false)?;
            rate_fwd = Some(self.positive_rational()?);
            if self.peek() == Some(&Tok::Comma) {
                self.next();
                if !reversible {
                    return Err(self.syntax("`k'` rate on an irreversible reaction"));
                }
                self.expect_rate_key(true)?;
                rate_rev = Some(self.positive_rational()?);
            }
        }
        if self.peek().is_some() {
            return Err(self.syntax("trailing input"));
        }
        Ok(RawReaction {
            reactant,
            product,
            reversible,
            rate_fwd,
            rate_rev,
        })
    }

    fn expect_rate_key(&mut self, primed: bool) -> Result<(), ParseError> {
        match self.next() {
            Some(Tok::Ident(k)) if k == "k" => {}
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.syntax("expected `k`"));
            }
        }
        if primed {
            self.expect(Tok::Prime)?;
        }
        self.expect(Tok::Assign)
    }

    fn positive_rational(&mut self) -> Result<BigRational, ParseError> {
        let at = self.pos;
        let r = self.rational()?;
        if !r.is_positive() {
            self.pos = at;
            return Err(self.err_at(ParseErrorKind::ZeroRate));
        }
        Ok(r)
    }
}

fn decimal_to_rational(raw: &str) -> BigRational {
    let negative = raw.starts_with('-');
    let digits = raw.trim_start_matches('-');
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let numer: BigInt = format!("{}{}", int_part, frac_part).parse().unwrap();
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(numer, denom);
    if negative {
        -r
    } else {
        r
    }
}

enum FlowKind {
    In,
    Out,
}

pub fn parse_network(text: &str) -> Result<NetworkDocument, ParseError> {
    let mut raw_reactions: Vec<(RawReaction, usize)> = Vec::new();
    let mut fully_open = false;
    let mut flow_rates: Vec<(String, FlowKind, BigRational, usize, usize)> = Vec::new();

    for (line_idx, line_text) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let toks = Lexer::new(line_text, line_no).tokens()?;
        if toks.is_empty() {
            continue;
        }
        let mut lp = LineParser {
            toks,
            pos: 0,
            line: line_no,
        };
        if lp.peek() == Some(&Tok::At) {
            lp.next();
            let (name, col) = match lp.next() {
                Some(Tok::Ident(name)) => (name, lp.toks[lp.pos - 1].1),
                _ => return Err(lp.syntax("expected directive name after `@`")),
            };
            match name.as_str() {
                "fully_open" => {
                    if lp.peek().is_some() {
                        return Err(lp.syntax("trailing input after `@fully_open`"));
                    }
                    fully_open = true;
                }
                "rate" => {
                    let (target, tcol) = match lp.next() {
                        Some(Tok::Ident(t)) => (t, lp.toks[lp.pos - 1].1),
                        _ => return Err(lp.syntax("expected rate target")),
                    };
                    let rate = lp.positive_rational()?;
                    if lp.peek().is_some() {
                        return Err(lp.syntax("trailing input"));
                    }
                    let (species, kind) = if let Some(s) = target.strip_suffix("_in") {
                        (s.to_string(), FlowKind::In)
                    } else if let Some(s) = target.strip_suffix("_out") {
                        (s.to_string(), FlowKind::Out)
                    } else {
                        return Err(ParseError {
                            line: line_no,
                            col: tcol,
                            kind: ParseErrorKind::Syntax(format!(
                                "rate target `{}` must end in `_in` or `_out`",
                                target
                            )),
                        });
                    };
                    flow_rates.push((species, kind, rate, line_no, tcol));
                }
                other => {
                    return Err(ParseError {
                        line: line_no,
                        col,
                        kind: ParseErrorKind::UnknownDirective(other.to_string()),
                    });
                }
            }
        } else {
            let raw = lp.reaction()?;
            raw_reactions.push((raw, line_no));
        }
    }

    // Species in first-appearance order.
    let mut species: Vec<String> = Vec::new();
    for (raw, _) in &raw_reactions {
        for (name, _) in raw.reactant.iter().chain(&raw.product) {
            if !species.contains(name) {
                species.push(name.clone());
            }
        }
    }
    let index = |name: &str| species.iter().position(|s| s == name).unwrap();

    let build_complex = |terms: &[(String, u32)]| {
        let mut v = vec![0u32; species.len()];
        for (name, coeff) in terms {
            v[index(name)] += coeff;
        }
        Complex(v)
    };

    let mut reactions = Vec::new();
    let mut rate_hints: BTreeMap<Reaction, BigRational> = BTreeMap::new();
    for (raw, line_no) in &raw_reactions {
        let fwd = Reaction::new(build_complex(&raw.reactant), build_complex(&raw.product));
        if fwd.reactant == fwd.product {
            return Err(ParseError {
                line: *line_no,
                col: 1,
                kind: ParseErrorKind::Model(ModelError::TrivialReaction(format!(
                    "{:?}",
                    fwd.reactant.0
                ))),
            });
        }
        if let Some(r) = &raw.rate_fwd {
            rate_hints.insert(fwd.clone(), r.clone());
        }
        if raw.reversible {
            let rev = fwd.reverse();
            if let Some(r) = &raw.rate_rev {
                rate_hints.insert(rev.clone(), r.clone());
            }
            reactions.push(rev);
        }
        reactions.push(fwd);
    }

    let network = Network::new(species, reactions).map_err(|e| ParseError {
        line: 1,
        col: 1,
        kind: ParseErrorKind::Model(e),
    })?;
    let network = if fully_open {
        network.fully_open_closure()
    } else {
        network
    };

    for (name, kind, rate, line_no, col) in flow_rates {
        let bad = |msg: String| ParseError {
            line: line_no,
            col,
            kind: ParseErrorKind::Syntax(msg),
        };
        let i = network
            .species_index(&name)
            .ok_or_else(|| bad(format!("unknown species `{}` in @rate", name)))?;
        let s = network.species_count();
        let r = match kind {
            FlowKind::In => Reaction::new(Complex::zero(s), Complex::unit(s, i)),
            FlowKind::Out => Reaction::new(Complex::unit(s, i), Complex::zero(s)),
        };
        if !network.has_reaction(&r) {
            return Err(bad(format!("no flow reaction for species `{}`", name)));
        }
        rate_hints.insert(r, rate);
    }

    Ok(NetworkDocument {
        network,
        fully_open,
        rate_hints,
    })
}

/// Canonical text form. Everything is ordered by species and reaction
/// *names* so the rendering is invariant under species reindexing: parsing
/// the output and rendering again reproduces it byte for byte.
pub fn render_network(doc: &NetworkDocument) -> String {
    let n = &doc.network;
    let s = n.species_count();
    // complex printed with species sorted by name
    let named_complex = |c: &Complex| -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(String, u32)> = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (n.species()[i].clone(), k))
            .collect();
        parts.sort();
        parts
            .iter()
            .map(|(name, k)| {
                if *k == 1 {
                    name.clone()
                } else {
                    format!("{} {}", k, name)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };

    let mut out = String::new();
    if doc.fully_open {
        out.push_str("@fully_open\n");
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by_key(|&i| n.species()[i].clone());
        for i in order {
            let inflow = Reaction::new(Complex::zero(s), Complex::unit(s, i));
            let outflow = inflow.reverse();
            if let Some(r) = doc.rate_hints.get(&inflow) {
                out.push_str(&format!(
                    "@rate {}_in {}\n",
                    n.species()[i],
                    crate::rational_string(r)
                ));
            }
            if let Some(r) = doc.rate_hints.get(&outflow) {
                out.push_str(&format!(
                    "@rate {}_out {}\n",
                    n.species()[i],
                    crate::rational_string(r)
                ));
            }
        }
    }
    let mut lines = Vec::new();
    // a species that appears in no non-flow reaction would vanish from the
    // text; keep it alive with an explicit inflow line
    if doc.fully_open {
        for i in 0..s {
            let used = n
                .reactions()
                .iter()
                .filter(|r| !r.is_flow())
                .any(|r| r.reactant.coeffs()[i] > 0 || r.product.coeffs()[i] > 0);
            if !used {
                lines.push(format!("0 -> {}", n.species()[i]));
            }
        }
    }
    let mut rendered: Vec<&Reaction> = Vec::new();
    for r in n.reactions() {
        if doc.fully_open && r.is_flow() {
            continue;
        }
        if rendered.iter().any(|&p| *p == r.reverse()) {
            continue;
        }
        let reversible = n.is_reversible(r);
        // Orient a reversible pair so a one-sided rate hint lands on `k=`;
        // otherwise pick the direction with the smaller rendered complexes.
        let fwd = if reversible {
            let rev = r.reverse();
            let hint_fwd = doc.rate_hints.contains_key(r);
            let hint_rev = doc.rate_hints.contains_key(&rev);
            if hint_rev && !hint_fwd {
                rev
            } else if hint_fwd && !hint_rev {
                r.clone()
            } else {
                let a = (named_complex(&r.reactant), named_complex(&r.product));
                let b = (named_complex(&rev.reactant), named_complex(&rev.product));
                if b < a {
                    rev
                } else {
                    r.clone()
                }
            }
        } else {
            r.clone()
        };
        let arrow = if reversible { "<->" } else { "->" };
        let mut line = format!(
            "{} {} {}",
            named_complex(&fwd.reactant),
            arrow,
            named_complex(&fwd.product)
        );
        if let Some(rate) = doc.rate_hints.get(&fwd) {
            line.push_str(&format!(", k={}", crate::rational_string(rate)));
            if reversible {
                if let Some(rate_rev) = doc.rate_hints.get(&fwd.reverse()) {
                    line.push_str(&format!(", k'={}", crate::rational_string(rate_rev)));
                }
            }
        }
        lines.push(line);
        rendered.push(r);
    }
    lines.sort();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Document equality up to species reindexing: same species names, same
/// reactions and rate hints keyed by name, same flags. Canonical rendering
/// may reorder reactions, so first-appearance species indices can shift.
/// Reaction rendered with the species of each complex sorted by name, so
/// the text does not depend on the network's internal species order.
fn name_canonical_reaction(n: &Network, r: &Reaction) -> String {
    let complex = |c: &Complex| -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<(&str, u32)> = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (n.species()[i].as_str(), k))
            .collect();
        parts.sort();
        parts
            .iter()
            .map(|(s, k)| {
                if *k == 1 {
                    s.to_string()
                } else {
                    format!("{k} {s}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    };
    format!("{} -> {}", complex(&r.reactant), complex(&r.product))
}

pub fn documents_equivalent(a: &NetworkDocument, b: &NetworkDocument) -> bool {
    if a.fully_open != b.fully_open {
        return false;
    }
    let named = |d: &NetworkDocument| {
        let mut rs: Vec<String> = d
            .network
            .reactions()
            .iter()
            .map(|r| name_canonical_reaction(&d.network, r))
            .collect();
        rs.sort();
        let hints: Vec<(String, String)> = d
            .rate_hints
            .iter()
            .map(|(r, k)| {
                (
                    name_canonical_reaction(&d.network, r),
                    crate::rational_string(k),
                )
            })
            .collect();
        let mut species: Vec<String> = d.network.species().to_vec();
        species.sort();
        (species, rs, hints)
    };
    let (sa, ra, mut ha) = named(a);
    let (sb, rb, mut hb) = named(b);
    ha.sort();
    hb.sort();
    sa == sb && ra == rb && ha == hb
}

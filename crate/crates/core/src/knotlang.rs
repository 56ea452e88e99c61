//! Knot-expression and braid-word languages.
//!
//! Knot expressions (whitespace is ignored everywhere):
//!
//! ```text
//! expr := term ( '#' term )*
//! term := atom | 'sat(' name ',' expr ')' | 'T(' int ',' int ')'
//! atom := 'U' | '4_1' | '3_1' | 'hopf'
//! name := 'whitehead'
//! ```
//!
//! `#` is left-associative and is flattened into one n-ary node. The Hopf
//! link is accepted as a standalone atom only.
//!
//! Braid words are whitespace-separated tokens `s<i>` or `s<i>^-1` with
//! `i ≥ 1`; the strand count is one more than the largest index.
//!
//! Parse failures render as `error at <offset>: <message>` where the offset
//! is a byte index into the input.

use std::fmt;

use crate::error::{Error, Result};

/// Closed registry of knot and link atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Unknot,
    FigureEight,
    Trefoil,
    Torus { p: u32, q: u32 },
    Hopf,
}

impl Atom {
    pub fn is_knot(self) -> bool {
        !matches!(self, Atom::Hopf)
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, Atom::FigureEight)
    }

    pub fn is_torus_knot(self) -> bool {
        matches!(self, Atom::Trefoil | Atom::Torus { .. })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Unknot => write!(f, "U"),
            Atom::FigureEight => write!(f, "4_1"),
            Atom::Trefoil => write!(f, "3_1"),
            Atom::Torus { p, q } => write!(f, "T({p},{q})"),
            Atom::Hopf => write!(f, "hopf"),
        }
    }
}

/// Registered satellite patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    Whitehead,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Whitehead => write!(f, "whitehead"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Atom(Atom),
    /// Flattened n-ary connected sum, at least two operands, none of them a
    /// connected sum itself.
    ConnectedSum(Vec<KnotExpr>),
    Satellite { pattern: Pattern, companion: Box<KnotExpr> },
}

impl KnotExpr {
    pub fn atom(a: Atom) -> Self {
        KnotExpr::Atom(a)
    }

    /// `left # right`, flattening nested sums.
    pub fn connected_sum(left: KnotExpr, right: KnotExpr) -> Self {
        let mut parts = Vec::new();
        for side in [left, right] {
            match side {
                KnotExpr::ConnectedSum(inner) => parts.extend(inner),
                other => parts.push(other),
            }
        }
        KnotExpr::ConnectedSum(parts)
    }

    pub fn satellite(pattern: Pattern, companion: KnotExpr) -> Self {
        KnotExpr::Satellite {
            pattern,
            companion: Box::new(companion),
        }
    }

    /// True unless the expression is (or contains) the Hopf link.
    pub fn is_knot(&self) -> bool {
        match self {
            KnotExpr::Atom(a) => a.is_knot(),
            KnotExpr::ConnectedSum(parts) => parts.iter().all(KnotExpr::is_knot),
            KnotExpr::Satellite { companion, .. } => companion.is_knot(),
        }
    }

    /// Canonical text form; `parse_knot(&e.render()) == Ok(e)`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Atom(a) => write!(f, "{a}"),
            KnotExpr::ConnectedSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            KnotExpr::Satellite { pattern, companion } => write!(f, "sat({pattern}, {companion})"),
        }
    }
}

pub fn parse_knot(text: &str) -> Result<KnotExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(Error::parse(p.pos, format!("unexpected `{}`", p.rest_char())));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn rest_char(&self) -> char {
        self.peek().unwrap_or(' ')
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected `{c}`")))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        match self.peek() {
            Some(c) => Error::parse(self.pos, format!("{what}, found `{c}`")),
            None => Error::parse(self.pos, format!("{what}, found end of input")),
        }
    }

    fn ident(&mut self) -> Option<(usize, &str)> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        (self.pos > start).then(|| (start, &self.src[start..self.pos]))
    }

    fn int(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map(|v| (start, v))
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let first_at = self.peek_offset();
        let mut acc = self.term()?;
        let mut positions = vec![first_at];
        while self.eat('#') {
            positions.push(self.peek_offset());
            let rhs = self.term()?;
            acc = KnotExpr::connected_sum(acc, rhs);
        }
        if let KnotExpr::ConnectedSum(parts) = &acc {
            if let Some(i) = parts.iter().position(|p| !p.is_knot()) {
                return Err(Error::parse(positions[i], "the Hopf link cannot be an operand of `#`"));
            }
        }
        Ok(acc)
    }

    fn peek_offset(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn term(&mut self) -> Result<KnotExpr> {
        let Some((start, name)) = self.ident() else {
            return Err(self.unexpected("expected a knot"));
        };
        let name = name.to_owned();
        match name.as_str() {
            "sat" if self.eat('(') => {
                let Some((pat_at, pat)) = self.ident() else {
                    return Err(self.unexpected("expected a satellite pattern name"));
                };
                let pattern = match pat {
                    "whitehead" => Pattern::Whitehead,
                    other => return Err(Error::parse(pat_at, format!("unknown satellite pattern `{other}`"))),
                };
                self.expect(',')?;
                let companion_at = self.peek_offset();
                let companion = self.expr()?;
                if !companion.is_knot() {
                    return Err(Error::parse(companion_at, "satellite companion must be a knot"));
                }
                self.expect(')')?;
                Ok(KnotExpr::satellite(pattern, companion))
            }
            "T" if self.eat('(') => {
                let (_, p) = self.int()?;
                self.expect(',')?;
                let (_, q) = self.int()?;
                self.expect(')')?;
                if p < 2 || q < 2 {
                    return Err(Error::parse(start, format!("torus parameters must be at least 2, got T({p},{q})")));
                }
                if gcd(p, q) != 1 {
                    return Err(Error::parse(start, format!("torus parameters must be coprime, got T({p},{q})")));
                }
                Ok(KnotExpr::Atom(Atom::Torus { p, q }))
            }
            "U" => Ok(KnotExpr::Atom(Atom::Unknot)),
            "4_1" => Ok(KnotExpr::Atom(Atom::FigureEight)),
            "3_1" => Ok(KnotExpr::Atom(Atom::Trefoil)),
            "hopf" => Ok(KnotExpr::Atom(Atom::Hopf)),
            "whitehead" => Err(Error::parse(start, "`whitehead` is a satellite pattern; use sat(whitehead, <knot>)")),
            other => Err(Error::parse(start, format!("unknown atom `{other}`"))),
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One braid generator `σ_i^{±1}`, `index` counted from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidLetter {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Structural(format!("a braid needs at least 2 strands, got {strands}")));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::Structural(format!("generator s{} out of range for {strands} strands", l.index)));
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    /// Image of each strand position under the braid's permutation.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            perm.swap(l.index - 1, l.index);
        }
        perm
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}{}", l.index, if l.inverse { "^-1" } else { "" })?;
        }
        Ok(())
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for token in text.split_inclusive(char::is_whitespace) {
        let trimmed = token.trim_end();
        let at = offset;
        offset += token.len();
        let lead = trimmed.len() - trimmed.trim_start().len();
        let tok = trimmed.trim_start();
        if tok.is_empty() {
            continue;
        }
        letters.push(parse_braid_token(tok, at + lead)?);
    }
    let Some(max) = letters.iter().map(|l| l.index).max() else {
        return Err(Error::parse(text.len(), "empty braid word"));
    };
    BraidWord::new(max + 1, letters)
}

fn parse_braid_token(tok: &str, at: usize) -> Result<BraidLetter> {
    let bad = || Error::parse(at, format!("malformed braid token `{tok}`; expected s<i> or s<i>^-1"));
    let body = tok.strip_prefix('s').ok_or_else(bad)?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(Error::parse(at, "generator indices start at 1"));
    }
    Ok(BraidLetter { index, inverse })
}

/// A generator or its inverse; `gen` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

pub type Word = Vec<Letter>;

/// Deficiency-one presentation of a knot group. Every generator is a
/// meridian, so each abelianizes to the class `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    n_generators: usize,
    relators: Vec<Word>,
    abelianization: Vec<i32>,
}

impl GroupPresentation {
    pub fn new(n_generators: usize, relators: Vec<Word>) -> Result<Self> {
        if n_generators == 0 || relators.len() + 1 != n_generators {
            return Err(Error::Structural(format!(
                "{n_generators} generators need {} relators, got {}",
                n_generators.saturating_sub(1),
                relators.len()
            )));
        }
        let abelianization = vec![1; n_generators];
        let pres = Self {
            n_generators,
            relators,
            abelianization,
        };
        for (i, r) in pres.relators.iter().enumerate() {
            if r.iter().any(|l| l.gen >= n_generators) {
                return Err(Error::Structural(format!("relator {i} uses an unknown generator")));
            }
            if pres.exponent_sum(r) != 0 {
                return Err(Error::Structural(format!("relator {i} does not vanish in H_1 = Z")));
            }
        }
        Ok(pres)
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Degree of each generator in `H₁ ≅ ℤ`.
    pub fn abelianization(&self) -> &[i32] {
        &self.abelianization
    }

    /// Image of a word in `H₁ ≅ ℤ`.
    pub fn exponent_sum(&self, w: &[Letter]) -> i32 {
        w.iter().map(|l| self.abelianization[l.gen] * l.exp as i32).sum()
    }
}

fn free_reduce(w: Word) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for l in w {
        match out.last() {
            Some(&top) if top.gen == l.gen && top.exp == -l.exp => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

fn concat(parts: &[&[Letter]]) -> Word {
    free_reduce(parts.iter().flat_map(|p| p.iter().copied()).collect())
}

/// Presentation of the closure's group from the Artin action of the braid on
/// the free group: `⟨x₁…xₙ | β(xⱼ)·xⱼ⁻¹, j < n⟩`; the last relator follows
/// from the others and is dropped.
pub fn presentation_from_braid(b: &BraidWord) -> Result<GroupPresentation> {
    let components = b.closure_components();
    if components != 1 {
        return Err(Error::UnsupportedLink { components });
    }
    let n = b.strands();
    let mut images: Vec<Word> = (0..n).map(|g| vec![Letter { gen: g, exp: 1 }]).collect();
    for l in b.letters() {
        let i = l.index - 1;
        let (a, c) = (images[i].clone(), images[i + 1].clone());
        if l.inverse {
            // x_i ↦ x_{i+1},  x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
            images[i + 1] = concat(&[&invert(&c), &a, &c]);
            images[i] = c;
        } else {
            // x_i ↦ x_i x_{i+1} x_i⁻¹,  x_{i+1} ↦ x_i
            images[i] = concat(&[&a, &c, &invert(&a)]);
            images[i + 1] = a;
        }
    }
    let relators = images
        .iter()
        .take(n - 1)
        .enumerate()
        .map(|(j, w)| concat(&[w, &[Letter { gen: j, exp: -1 }]]))
        .collect();
    GroupPresentation::new(n, relators)
}

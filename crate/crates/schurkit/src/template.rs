//! Identity templates: symbolic equations between words with
//! binomial-coefficient exponents, verified in free nilpotent groups.
//!
//! Template syntax, one equation per file (`#` starts a comment line):
//!
//! ```text
//! (a*b)^n == [b,a]^{C(n,2)} * a^n * b^n @ class 5
//! ```
//!
//! Atoms are generator symbols, right-normed bracket lists
//! `[e1,...,ek] = [e1,[e2,[...,ek]]]`, parenthesized words, and
//! `conj(u,v) = u v u^-1`. Commutators use the left convention
//! `[x,y] = x y x^-1 y^-1`. Exponents are integers, `n`, or braced integer
//! linear combinations of `n` and binomials `C(n,k)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::SchurkitError;
use crate::freenil::FreeNilContext;
use crate::magnus::Series;
use crate::Result;

/// Integer-linear exponent expression: `constant + c_n * n + sum c_k * C(n,k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpPoly {
    pub constant: i64,
    pub n_coeff: i64,
    pub binom: BTreeMap<u32, i64>,
}

impl ExpPoly {
    pub fn constant_one() -> Self {
        ExpPoly {
            constant: 1,
            ..Default::default()
        }
    }

    pub fn uses_n(&self) -> bool {
        self.n_coeff != 0 || !self.binom.is_empty()
    }

    pub fn eval(&self, n: u64) -> BigInt {
        let mut v = BigInt::from(self.constant) + BigInt::from(self.n_coeff) * n;
        for (&k, &c) in &self.binom {
            v += BigInt::from(c) * binomial(n, k);
        }
        v
    }

    fn add_term(&mut self, coeff: i64, term: ExpTerm) {
        match term {
            ExpTerm::Const(c) => self.constant += coeff * c,
            ExpTerm::N => self.n_coeff += coeff,
            ExpTerm::Binom(k) => *self.binom.entry(k).or_insert(0) += coeff,
        }
    }
}

enum ExpTerm {
    Const(i64),
    N,
    Binom(u32),
}

pub fn binomial(n: u64, k: u32) -> BigInt {
    let mut v = BigInt::one();
    for i in 0..k as u64 {
        if i >= n {
            return BigInt::zero();
        }
        v = v * (n - i) / (i + 1);
    }
    v
}

#[derive(Debug, Clone)]
pub enum Atom {
    Sym(usize),
    /// Right-normed bracket list.
    Bracket(Vec<WordExpr>),
    Group(WordExpr),
    /// `conj(u, v) = u v u^-1`.
    Conj(WordExpr, WordExpr),
}

#[derive(Debug, Clone)]
pub struct Factor {
    pub atom: Atom,
    pub exp: ExpPoly,
}

#[derive(Debug, Clone)]
pub struct WordExpr {
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone)]
pub struct IdentityTemplate {
    pub lhs: WordExpr,
    pub rhs: WordExpr,
    pub class: usize,
    pub rank: usize,
    pub symbols: Vec<String>,
    pub uses_n: bool,
}

impl IdentityTemplate {
    pub fn parse(text: &str) -> Result<IdentityTemplate> {
        parse_template(text)
    }

    /// Same equation truncated at a different class.
    pub fn with_class(&self, class: usize) -> IdentityTemplate {
        let mut t = self.clone();
        t.class = class;
        t
    }

    pub fn default_sample_points(&self) -> Vec<u64> {
        if self.uses_n {
            (0..=(self.class as u64 + 2)).collect()
        } else {
            vec![0]
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointVerdict {
    pub n: u64,
    pub equal: bool,
    /// Hall basis element with the first differing exponent, on failure.
    pub first_difference: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub class: usize,
    pub rank: usize,
    pub uses_n: bool,
    pub degree_argument: String,
    pub points: Vec<PointVerdict>,
    pub equal: bool,
}

/// Verify a template at the given sample points by collecting both sides in
/// the free nilpotent group of the template's rank and class.
pub fn verify_identity(t: &IdentityTemplate, sample_points: &[u64]) -> Result<VerificationReport> {
    let ctx = FreeNilContext::new(t.rank, t.class)?;
    let (points, degree_argument) = if t.uses_n {
        let mut pts: Vec<u64> = sample_points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < t.class + 2 {
            return Err(SchurkitError::Invalid(format!(
                "need at least class+2 = {} distinct sample points, got {}",
                t.class + 2,
                pts.len()
            )));
        }
        let arg = format!(
            "collected Hall exponents of both sides are integer polynomials in n of \
             degree <= class = {}; agreement at the {} distinct points {:?} exceeds \
             degree+1 points and certifies the polynomial identity",
            t.class,
            pts.len(),
            pts
        );
        (pts, arg)
    } else {
        (
            vec![0],
            "the template does not mention n; a single symbolic check in the free \
             nilpotent group decides it"
                .to_string(),
        )
    };
    let mut verdicts = Vec::new();
    let mut all_equal = true;
    for &n in &points {
        let lhs = ctx.collect_series(&eval_word(&ctx, &t.lhs, n))?;
        let rhs = ctx.collect_series(&eval_word(&ctx, &t.rhs, n))?;
        let diff = lhs.first_difference(&rhs);
        let equal = diff.is_none();
        all_equal &= equal;
        verdicts.push(PointVerdict {
            n,
            equal,
            first_difference: diff.map(|i| {
                format!(
                    "{} (exponents {} vs {})",
                    ctx.basis.describe(i),
                    lhs.exps[i],
                    rhs.exps[i]
                )
            }),
        });
    }
    Ok(VerificationReport {
        class: t.class,
        rank: t.rank,
        uses_n: t.uses_n,
        degree_argument,
        points: verdicts,
        equal: all_equal,
    })
}

fn eval_word(ctx: &FreeNilContext, w: &WordExpr, n: u64) -> Series {
    let mut s = Series::one(ctx.class());
    for f in &w.factors {
        let base = eval_atom(ctx, &f.atom, n);
        s = s.mul(&base.pow(&f.exp.eval(n)));
    }
    s
}

fn eval_atom(ctx: &FreeNilContext, a: &Atom, n: u64) -> Series {
    match a {
        Atom::Sym(i) => ctx.generator_series(*i),
        Atom::Group(w) => eval_word(ctx, w, n),
        Atom::Conj(u, v) => {
            let su = eval_word(ctx, u, n);
            su.mul(&eval_word(ctx, v, n)).mul(&su.invert())
        }
        Atom::Bracket(entries) => {
            let mut it = entries.iter().rev();
            let mut acc = eval_word(ctx, it.next().expect("nonempty bracket"), n);
            for e in it {
                acc = eval_word(ctx, e, n).group_commutator(&acc);
            }
            acc
        }
    }
}

// --- parsing -------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    LBrack,
    RBrack,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Plus,
    Minus,
    EqEq,
    At,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let src: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '[' => {
                chars.next();
                toks.push(Tok::LBrack);
            }
            ']' => {
                chars.next();
                toks.push(Tok::RBrack);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '{' => {
                chars.next();
                toks.push(Tok::LBrace);
            }
            '}' => {
                chars.next();
                toks.push(Tok::RBrace);
            }
            ',' => {
                chars.next();
                toks.push(Tok::Comma);
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '@' => {
                chars.next();
                toks.push(Tok::At);
            }
            '=' => {
                chars.next();
                if chars.peek() == Some(&'=') {
                    chars.next();
                    toks.push(Tok::EqEq);
                } else {
                    return Err(malformed("single '=' (use '==')"));
                }
            }
            c if c.is_ascii_digit() => {
                let mut v: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(dv) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(dv as i64))
                            .ok_or_else(|| malformed("integer overflow"))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => return Err(malformed(format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

fn malformed(msg: impl Into<String>) -> SchurkitError {
    SchurkitError::MalformedTemplate(msg.into())
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    symbols: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| malformed("unexpected end of template"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            Err(malformed(format!("expected {t:?}, got {got:?}")))
        }
    }

    fn sym_index(&mut self, name: &str) -> Result<usize> {
        if name == "n" || name == "conj" || name == "C" || name == "class" {
            return Err(malformed(format!("reserved word {name:?} used as symbol")));
        }
        if let Some(i) = self.symbols.iter().position(|s| s == name) {
            return Ok(i);
        }
        self.symbols.push(name.to_string());
        Ok(self.symbols.len() - 1)
    }

    fn word(&mut self) -> Result<WordExpr> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(WordExpr { factors })
    }

    fn factor(&mut self) -> Result<Factor> {
        let atom = self.atom()?;
        let exp = if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            self.exponent()?
        } else {
            ExpPoly::constant_one()
        };
        Ok(Factor { atom, exp })
    }

    fn atom(&mut self) -> Result<Atom> {
        match self.next()? {
            Tok::Ident(name) if name == "conj" => {
                self.expect(Tok::LParen)?;
                let u = self.word()?;
                self.expect(Tok::Comma)?;
                let v = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(Atom::Conj(u, v))
            }
            Tok::Ident(name) => Ok(Atom::Sym(self.sym_index(&name)?)),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen)?;
                Ok(Atom::Group(w))
            }
            Tok::LBrack => {
                let mut entries = vec![self.word()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    entries.push(self.word()?);
                }
                self.expect(Tok::RBrack)?;
                if entries.len() < 2 {
                    return Err(malformed("bracket needs at least two entries"));
                }
                Ok(Atom::Bracket(entries))
            }
            t => Err(malformed(format!("unexpected token {t:?} in word"))),
        }
    }

    fn exponent(&mut self) -> Result<ExpPoly> {
        match self.next()? {
            Tok::Int(v) => Ok(ExpPoly {
                constant: v,
                ..Default::default()
            }),
            Tok::Minus => match self.next()? {
                Tok::Int(v) => Ok(ExpPoly {
                    constant: -v,
                    ..Default::default()
                }),
                t => Err(malformed(format!("expected integer after '-', got {t:?}"))),
            },
            Tok::Ident(s) if s == "n" => Ok(ExpPoly {
                n_coeff: 1,
                ..Default::default()
            }),
            Tok::LBrace => {
                let mut poly = ExpPoly::default();
                let mut sign = 1i64;
                loop {
                    let (coeff, term) = self.exp_term()?;
                    poly.add_term(sign * coeff, term);
                    match self.next()? {
                        Tok::Plus => sign = 1,
                        Tok::Minus => sign = -1,
                        Tok::RBrace => break,
                        t => return Err(malformed(format!("unexpected {t:?} in exponent"))),
                    }
                }
                Ok(poly)
            }
            t => Err(malformed(format!("bad exponent start {t:?}"))),
        }
    }

    /// One `[k*] (C(n,j) | n | int)` term.
    fn exp_term(&mut self) -> Result<(i64, ExpTerm)> {
        let mut coeff = 1i64;
        let mut tok = self.next()?;
        if let Tok::Int(v) = tok {
            if self.peek() == Some(&Tok::Star) {
                coeff = v;
                self.pos += 1;
                tok = self.next()?;
            } else {
                return Ok((1, ExpTerm::Const(v)));
            }
        }
        match tok {
            Tok::Ident(s) if s == "n" => Ok((coeff, ExpTerm::N)),
            Tok::Ident(s) if s == "C" => {
                self.expect(Tok::LParen)?;
                match self.next()? {
                    Tok::Ident(s) if s == "n" => {}
                    t => return Err(malformed(format!("expected n in C(n,k), got {t:?}"))),
                }
                self.expect(Tok::Comma)?;
                let k = match self.next()? {
                    Tok::Int(v) if v >= 0 => v as u32,
                    t => return Err(malformed(format!("expected k in C(n,k), got {t:?}"))),
                };
                self.expect(Tok::RParen)?;
                Ok((coeff, ExpTerm::Binom(k)))
            }
            Tok::Int(v) => Ok((coeff, ExpTerm::Const(v))),
            t => Err(malformed(format!("bad exponent term {t:?}"))),
        }
    }
}

fn word_uses_n(w: &WordExpr) -> bool {
    w.factors.iter().any(|f| {
        f.exp.uses_n()
            || match &f.atom {
                Atom::Sym(_) => false,
                Atom::Group(w) => word_uses_n(w),
                Atom::Conj(u, v) => word_uses_n(u) || word_uses_n(v),
                Atom::Bracket(es) => es.iter().any(word_uses_n),
            }
    })
}

fn parse_template(text: &str) -> Result<IdentityTemplate> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        symbols: Vec::new(),
    };
    let lhs = p.word()?;
    p.expect(Tok::EqEq)?;
    let rhs = p.word()?;
    p.expect(Tok::At)?;
    match p.next()? {
        Tok::Ident(s) if s == "class" => {}
        t => return Err(malformed(format!("expected 'class', got {t:?}"))),
    }
    let class = match p.next()? {
        Tok::Int(v) if v >= 1 => v as usize,
        t => return Err(malformed(format!("bad class {t:?}"))),
    };
    if p.pos != p.toks.len() {
        return Err(malformed("trailing tokens after class declaration"));
    }
    let uses_n = word_uses_n(&lhs) || word_uses_n(&rhs);
    Ok(IdentityTemplate {
        rank: p.symbols.len(),
        symbols: p.symbols,
        lhs,
        rhs,
        class,
        uses_n,
    })
}

// --- built-in lemma templates -------------------------------------------

const LEMMA_4_1: &str = include_str!("../data/lemma_4_1.id");
const LEMMA_4_2_I: &str = include_str!("../data/lemma_4_2i.id");
const LEMMA_4_2_II: &str = include_str!("../data/lemma_4_2ii.id");
const LEMMA_1_1_I: &str = include_str!("../data/lemma_1_1i.id");
const LEMMA_1_1_II: &str = include_str!("../data/lemma_1_1ii.id");
const LEMMA_1_1_III: &str = include_str!("../data/lemma_1_1iii.id");

/// Built-in identity ids in canonical form.
pub const BUILTIN_IDS: &[&str] = &["1.1i", "1.1ii", "1.1iii", "4.1", "4.2i", "4.2ii"];

pub fn builtin_template(id: &str) -> Result<IdentityTemplate> {
    let norm: String = id
        .chars()
        .filter(|c| !matches!(c, '(' | ')' | ' '))
        .collect::<String>()
        .to_lowercase();
    let src = match norm.as_str() {
        "4.1" | "lemma_4_1" => LEMMA_4_1,
        "4.2i" | "lemma_4_2i" => LEMMA_4_2_I,
        "4.2ii" | "lemma_4_2ii" => LEMMA_4_2_II,
        "1.1i" | "lemma_1_1i" => LEMMA_1_1_I,
        "1.1ii" | "lemma_1_1ii" => LEMMA_1_1_II,
        "1.1iii" | "lemma_1_1iii" => LEMMA_1_1_III,
        _ => return Err(SchurkitError::UnknownLemma(id.to_string())),
    };
    IdentityTemplate::parse(src)
}

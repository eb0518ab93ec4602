//! Power-commutator presentations and the PC-FILE text format.
//!
//! PC-FILE is a line/semicolon separated statement list:
//!
//! ```text
//! # comment
//! gens 3; orders 3 3 3;
//! conj 1 2 -> g2*g3
//! pow * -> id
//! ```
//!
//! Statements are `gens N`, `orders r1 .. rN`, `pow i -> word` and
//! `conj i j -> word` (with `i < j`, giving the left conjugate `^gi gj`).
//! `pow * -> id` sets every power relation to the identity. Omitted `pow`
//! lines default to `id`, omitted `conj` lines to the trivial conjugate `gj`.
//! Relation words must be collected: strictly increasing indices, exponents
//! in `[1, order)`, power words over indices `> i`, conjugate words over
//! indices `>= j`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::SchurkitError;
use crate::word::Word;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    ngens: usize,
    relative_orders: Vec<u64>,
    /// `power_relations[i]` is the value of `g_{i+1}^{r_{i+1}}`, a word in
    /// generators of index `> i`.
    power_relations: Vec<Word>,
    /// `(i, j) -> ^g_{i+1} g_{j+1}` for `i < j`, a word in indices `>= j`.
    /// Trivial conjugates are not stored.
    conjugate_relations: BTreeMap<(usize, usize), Word>,
    prime: Option<u64>,
    name: Option<String>,
    expected_order: Option<u128>,
}

impl PcPresentation {
    pub fn new(
        relative_orders: Vec<u64>,
        power_relations: BTreeMap<usize, Word>,
        conjugate_relations: BTreeMap<(usize, usize), Word>,
    ) -> Result<Self> {
        let ngens = relative_orders.len();
        let mut pows = vec![Word::identity(); ngens];
        for (i, w) in power_relations {
            if i >= ngens {
                return Err(SchurkitError::Invalid(format!(
                    "power relation for generator {} out of range",
                    i + 1
                )));
            }
            pows[i] = w;
        }
        let pcp = PcPresentation {
            ngens,
            relative_orders,
            power_relations: pows,
            conjugate_relations,
            prime: None,
            name: None,
            expected_order: None,
        };
        pcp.validate()?;
        Ok(pcp)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_prime(mut self, p: u64) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn with_expected_order(mut self, order: u128) -> Self {
        self.expected_order = Some(order);
        self
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relative_orders(&self) -> &[u64] {
        &self.relative_orders
    }

    pub fn power_relation(&self, i: usize) -> &Word {
        &self.power_relations[i]
    }

    /// The left conjugate `^g_{i+1} g_{j+1}` as a stored word (trivial if absent).
    pub fn conjugate_relation(&self, i: usize, j: usize) -> Word {
        self.conjugate_relations
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Word::gen(j))
    }

    pub fn stored_conjugates(&self) -> &BTreeMap<(usize, usize), Word> {
        &self.conjugate_relations
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn expected_order(&self) -> Option<u128> {
        self.expected_order
    }

    /// Product of the relative orders; equals `|G|` once consistency holds.
    pub fn order(&self) -> u128 {
        self.relative_orders.iter().map(|&r| r as u128).product()
    }

    fn validate(&self) -> Result<()> {
        if self.ngens == 0 {
            return Err(SchurkitError::Invalid("ngens must be positive".into()));
        }
        for (i, &r) in self.relative_orders.iter().enumerate() {
            if r < 2 {
                return Err(SchurkitError::Invalid(format!(
                    "relative order of g{} must be >= 2",
                    i + 1
                )));
            }
        }
        for (i, w) in self.power_relations.iter().enumerate() {
            self.validate_relation_word(w, i + 1, &format!("power relation of g{}", i + 1))?;
        }
        for (&(i, j), w) in &self.conjugate_relations {
            if i >= j || j >= self.ngens {
                return Err(SchurkitError::Invalid(format!(
                    "conjugate relation indices ({}, {}) out of range",
                    i + 1,
                    j + 1
                )));
            }
            self.validate_relation_word(w, j, &format!("conjugate relation ({}, {})", i + 1, j + 1))?;
        }
        Ok(())
    }

    /// Relation words must be normal forms over indices `>= min_index`.
    fn validate_relation_word(&self, w: &Word, min_index: usize, what: &str) -> Result<()> {
        let mut prev: Option<usize> = None;
        for &(g, e) in w.letters() {
            if g >= self.ngens {
                return Err(SchurkitError::Invalid(format!(
                    "{what}: generator index {} out of range",
                    g + 1
                )));
            }
            if g < min_index {
                return Err(SchurkitError::Invalid(format!(
                    "{what}: generator g{} below allowed range",
                    g + 1
                )));
            }
            if let Some(p) = prev {
                if g <= p {
                    return Err(SchurkitError::Invalid(format!(
                        "{what}: word is not in collected order"
                    )));
                }
            }
            if e < 1 || e as u64 >= self.relative_orders[g] {
                return Err(SchurkitError::Invalid(format!(
                    "{what}: exponent {e} of g{} outside [1, {})",
                    g + 1,
                    self.relative_orders[g]
                )));
            }
            prev = Some(g);
        }
        Ok(())
    }

    /// Canonical PC-FILE serialization; `parse(serialize(p)) == p` up to
    /// catalog metadata.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        write!(out, "gens {};", self.ngens).unwrap();
        out.push_str(" orders");
        for r in &self.relative_orders {
            write!(out, " {r}").unwrap();
        }
        out.push_str(";\n");
        for (i, w) in self.power_relations.iter().enumerate() {
            if !w.is_identity() {
                writeln!(out, "pow {} -> {}", i + 1, w).unwrap();
            }
        }
        for (&(i, j), w) in &self.conjugate_relations {
            writeln!(out, "conj {} {} -> {}", i + 1, j + 1, w).unwrap();
        }
        out
    }
}

/// One statement of a PC-FILE together with its source position.
struct Stmt<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn split_statements(text: &str) -> Vec<Stmt<'_>> {
    let mut stmts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        };
        let mut col = 0;
        for piece in body.split(';') {
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                let offset = piece.len() - piece.trim_start().len();
                stmts.push(Stmt {
                    text: trimmed,
                    line: lineno + 1,
                    col: col + offset + 1,
                });
            }
            col += piece.len() + 1;
        }
    }
    stmts
}

fn perr(s: &Stmt<'_>, msg: impl Into<String>) -> SchurkitError {
    SchurkitError::Parse {
        line: s.line,
        col: s.col,
        msg: msg.into(),
    }
}

fn parse_word(s: &Stmt<'_>, text: &str) -> Result<Word> {
    let text = text.trim();
    if text == "id" {
        return Ok(Word::identity());
    }
    let mut w = Word::identity();
    for factor in text.split('*') {
        let factor = factor.trim();
        let rest = factor
            .strip_prefix('g')
            .ok_or_else(|| perr(s, format!("expected generator factor, found `{factor}`")))?;
        let (idx_str, exp) = match rest.split_once('^') {
            Some((i, e)) => {
                let exp: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| perr(s, format!("bad exponent `{e}`")))?;
                (i.trim(), exp)
            }
            None => (rest.trim(), 1),
        };
        let idx: usize = idx_str
            .parse()
            .map_err(|_| perr(s, format!("bad generator index `{idx_str}`")))?;
        if idx == 0 {
            return Err(perr(s, "generator indices are 1-based"));
        }
        w.push(idx - 1, exp);
    }
    Ok(w)
}

/// Parse a PC-FILE. Indices and exponent ranges are validated; consistency
/// is not checked here.
pub fn parse_pc_presentation(text: &str) -> Result<PcPresentation> {
    let stmts = split_statements(text);
    let mut ngens: Option<usize> = None;
    let mut orders: Option<Vec<u64>> = None;
    let mut pows: BTreeMap<usize, Word> = BTreeMap::new();
    let mut pow_wildcard = false;
    let mut conjs: BTreeMap<(usize, usize), Word> = BTreeMap::new();

    for s in &stmts {
        let mut parts = s.text.split_whitespace();
        let head = parts.next().unwrap();
        match head {
            "gens" => {
                let n: usize = parts
                    .next()
                    .ok_or_else(|| perr(s, "gens: missing count"))?
                    .parse()
                    .map_err(|_| perr(s, "gens: bad count"))?;
                if n == 0 {
                    return Err(perr(s, "gens: count must be positive"));
                }
                ngens = Some(n);
            }
            "orders" => {
                let rs: Vec<u64> = parts
                    .map(|t| t.parse().map_err(|_| perr(s, format!("orders: bad value `{t}`"))))
                    .collect::<Result<_>>()?;
                orders = Some(rs);
            }
            "pow" => {
                let target = parts.next().ok_or_else(|| perr(s, "pow: missing generator"))?;
                let arrow = parts.next();
                if arrow != Some("->") {
                    return Err(perr(s, "pow: expected `->`"));
                }
                let word_text: String = parts.collect::<Vec<_>>().join(" ");
                if target == "*" {
                    if word_text.trim() != "id" {
                        return Err(perr(s, "pow *: only `id` is allowed"));
                    }
                    pow_wildcard = true;
                } else {
                    let i: usize = target
                        .parse()
                        .map_err(|_| perr(s, format!("pow: bad generator `{target}`")))?;
                    if i == 0 {
                        return Err(perr(s, "pow: generator indices are 1-based"));
                    }
                    pows.insert(i - 1, parse_word(s, &word_text)?);
                }
            }
            "conj" => {
                let i: usize = parts
                    .next()
                    .ok_or_else(|| perr(s, "conj: missing first index"))?
                    .parse()
                    .map_err(|_| perr(s, "conj: bad first index"))?;
                let j: usize = parts
                    .next()
                    .ok_or_else(|| perr(s, "conj: missing second index"))?
                    .parse()
                    .map_err(|_| perr(s, "conj: bad second index"))?;
                if parts.next() != Some("->") {
                    return Err(perr(s, "conj: expected `->`"));
                }
                let word_text: String = parts.collect::<Vec<_>>().join(" ");
                if i == 0 || j == 0 {
                    return Err(perr(s, "conj: generator indices are 1-based"));
                }
                if i >= j {
                    return Err(perr(s, "conj: requires i < j"));
                }
                conjs.insert((i - 1, j - 1), parse_word(s, &word_text)?);
            }
            other => return Err(perr(s, format!("unknown statement `{other}`"))),
        }
    }

    let first = Stmt { text, line: 1, col: 1 };
    let ngens = ngens.ok_or_else(|| perr(&first, "missing `gens` statement"))?;
    let orders = orders.ok_or_else(|| perr(&first, "missing `orders` statement"))?;
    if orders.len() != ngens {
        return Err(perr(
            &first,
            format!("orders lists {} values for {} generators", orders.len(), ngens),
        ));
    }
    if pow_wildcard {
        for i in 0..ngens {
            pows.insert(i, Word::identity());
        }
    }
    // Drop explicitly-written trivial conjugates so the stored map is canonical.
    conjs.retain(|&(_, j), w| w.letters() != [(j, 1)]);

    // Re-run the range checks with parse-error positions for the common cases.
    for (&i, w) in &pows {
        if i >= ngens {
            return Err(perr(&first, format!("pow {}: generator out of range", i + 1)));
        }
        check_word_range(&first, w, ngens, &orders)?;
    }
    for (&(i, j), w) in &conjs {
        if j >= ngens {
            return Err(perr(
                &first,
                format!("conj {} {}: generator out of range", i + 1, j + 1),
            ));
        }
        check_word_range(&first, w, ngens, &orders)?;
    }

    PcPresentation::new(orders, pows, conjs)
}

fn check_word_range(s: &Stmt<'_>, w: &Word, ngens: usize, orders: &[u64]) -> Result<()> {
    for &(g, e) in w.letters() {
        if g >= ngens {
            return Err(perr(s, format!("generator index g{} out of range", g + 1)));
        }
        if e < 0 || e as u64 >= orders[g] {
            return Err(perr(
                s,
                format!("exponent {e} of g{} outside [0, {})", g + 1, orders[g]),
            ));
        }
    }
    Ok(())
}

/// A single failed consistency overlap: the two collection paths and the
/// normal forms they produced.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OverlapFailure {
    pub overlap: String,
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ConsistencyReport {
    pub failures: Vec<OverlapFailure>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_cyclic() {
        let p = parse_pc_presentation("gens 1; orders 3; pow 1 -> id").unwrap();
        assert_eq!(p.ngens(), 1);
        assert_eq!(p.relative_orders(), &[3]);
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn parses_heisenberg_mod_3() {
        let p =
            parse_pc_presentation("gens 3; orders 3 3 3; conj 1 2 -> g2*g3; pow * -> id").unwrap();
        assert_eq!(p.ngens(), 3);
        assert_eq!(p.order(), 27);
        assert_eq!(format!("{}", p.conjugate_relation(0, 1)), "g2*g3");
        assert_eq!(format!("{}", p.conjugate_relation(0, 2)), "g3");
    }

    #[test]
    fn index_out_of_range_is_an_error() {
        let err = parse_pc_presentation("gens 2; orders 3 3; pow 1 -> g3").unwrap_err();
        match err {
            SchurkitError::Parse { msg, .. } => assert!(msg.contains("out of range"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn exponent_out_of_range_is_an_error() {
        let err = parse_pc_presentation("gens 2; orders 3 3; pow 1 -> g2^5").unwrap_err();
        assert!(matches!(err, SchurkitError::Parse { .. }));
    }

    #[test]
    fn comments_and_layout_are_ignored() {
        let text = "# cyclic group of order 9\ngens 2; orders 3 3\npow 1 -> g2 # g1^3 = g2\n";
        let p = parse_pc_presentation(text).unwrap();
        assert_eq!(p.order(), 9);
        assert_eq!(format!("{}", p.power_relation(0)), "g2");
    }

    #[test]
    fn serialize_round_trips() {
        let text = "gens 3; orders 3 3 3; conj 1 2 -> g2*g3; pow 1 -> g3";
        let p = parse_pc_presentation(text).unwrap();
        let q = parse_pc_presentation(&p.serialize()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.serialize(), q.serialize());
    }
}

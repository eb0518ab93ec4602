//! Free nilpotent groups of finite rank and class.
//!
//! Elements are handled through their Magnus series (`g_i -> 1 + x_i` in the
//! degree-truncated free associative ring): equality of truncated series is
//! equivalent to equality modulo the (class+1)-st lower central term. Normal
//! forms are ordered products of Hall basic commutators; the exponents are
//! recovered weight by weight by solving the integer linear system given by
//! the Lie components of the basic commutators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SchurkitError;
use crate::hall::{HallBasis, HallNode};
use crate::magnus::{Monomial, Series};
use crate::word::Word;
use crate::Result;

/// Classes above this are rejected (series size grows exponentially).
pub const MAX_CLASS: usize = 10;

/// Normal form: exponent per Hall basis element, in basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeNilElement {
    pub exps: Vec<BigInt>,
}

impl FreeNilElement {
    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    /// Position of the first exponent differing from `other`, if any.
    pub fn first_difference(&self, other: &FreeNilElement) -> Option<usize> {
        self.exps
            .iter()
            .zip(&other.exps)
            .position(|(a, b)| a != b)
    }
}

pub struct FreeNilContext {
    pub basis: HallBasis,
    /// Magnus series of each basic commutator as a group element.
    series: Vec<Series>,
}

impl FreeNilContext {
    pub fn new(rank: usize, class: usize) -> Result<Self> {
        if class > MAX_CLASS {
            return Err(SchurkitError::ResourceLimit(format!(
                "class {class} exceeds the supported maximum {MAX_CLASS}"
            )));
        }
        if rank == 0 || class == 0 {
            return Err(SchurkitError::Invalid("rank and class must be >= 1".into()));
        }
        let basis = HallBasis::new(rank, class);
        let mut series: Vec<Series> = Vec::with_capacity(basis.len());
        for b in basis.items() {
            let s = match b.node {
                HallNode::Gen(i) => Series::group_gen(class, i as u8),
                HallNode::Comm(l, r) => series[l].group_commutator(&series[r]),
            };
            series.push(s);
        }
        Ok(FreeNilContext { basis, series })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank
    }

    pub fn class(&self) -> usize {
        self.basis.class
    }

    pub fn basis_series(&self, i: usize) -> &Series {
        &self.series[i]
    }

    pub fn generator_series(&self, i: usize) -> Series {
        Series::group_gen(self.class(), i as u8)
    }

    /// Magnus series of a free-group word.
    pub fn word_series(&self, w: &Word) -> Result<Series> {
        let mut s = Series::one(self.class());
        for &(g, e) in w.letters() {
            if g >= self.rank() {
                return Err(SchurkitError::Invalid(format!(
                    "generator index {} out of rank {}",
                    g + 1,
                    self.rank()
                )));
            }
            s = s.mul(&self.generator_series(g).pow(&BigInt::from(e)));
        }
        Ok(s)
    }

    /// Series of a normal form: the ordered product of basis powers.
    pub fn element_series(&self, x: &FreeNilElement) -> Series {
        let mut s = Series::one(self.class());
        for (i, e) in x.exps.iter().enumerate() {
            if !e.is_zero() {
                s = s.mul(&self.series[i].pow(e));
            }
        }
        s
    }

    /// Collect a group-element series into Hall normal form.
    pub fn collect_series(&self, s: &Series) -> Result<FreeNilElement> {
        if !s.constant_term().is_one() {
            return Err(SchurkitError::Invalid(
                "not a group element series (constant term != 1)".into(),
            ));
        }
        let mut exps = vec![BigInt::zero(); self.basis.len()];
        let mut residual = s.clone();
        for w in 1..=self.class() {
            let target = residual.homogeneous(w);
            if target.is_empty() {
                continue;
            }
            let range = self.basis.weight_range(w);
            let cols: Vec<BTreeMap<Monomial, BigInt>> = range
                .clone()
                .map(|i| self.series[i].homogeneous(w))
                .collect();
            let sol = solve_integer_combination(&cols, &target).ok_or_else(|| {
                SchurkitError::Invalid(format!(
                    "series is not a group element (weight {w} component not a Lie element)"
                ))
            })?;
            let mut layer = Series::one(self.class());
            for (k, i) in range.clone().enumerate() {
                if !sol[k].is_zero() {
                    layer = layer.mul(&self.series[i].pow(&sol[k]));
                    exps[i] = sol[k].clone();
                }
            }
            residual = layer.invert().mul(&residual);
            debug_assert!(residual.lowest_positive_degree().map_or(true, |d| d > w));
        }
        if !residual.is_one() {
            return Err(SchurkitError::Invalid(
                "series is not a group element (nonzero residual)".into(),
            ));
        }
        Ok(FreeNilElement { exps })
    }

    pub fn collect_word(&self, w: &Word) -> Result<FreeNilElement> {
        self.collect_series(&self.word_series(w)?)
    }

    /// Collected multiplication.
    pub fn multiply(&self, a: &FreeNilElement, b: &FreeNilElement) -> Result<FreeNilElement> {
        self.collect_series(&self.element_series(a).mul(&self.element_series(b)))
    }

    pub fn invert(&self, a: &FreeNilElement) -> Result<FreeNilElement> {
        self.collect_series(&self.element_series(a).invert())
    }

    pub fn identity(&self) -> FreeNilElement {
        FreeNilElement {
            exps: vec![BigInt::zero(); self.basis.len()],
        }
    }
}

/// Solve `sum_k e_k * cols[k] = target` for integers `e_k`, where each column
/// and the target are sparse vectors indexed by monomials. Returns None when
/// the system is inconsistent or the solution is non-integral.
fn solve_integer_combination(
    cols: &[BTreeMap<Monomial, BigInt>],
    target: &BTreeMap<Monomial, BigInt>,
) -> Option<Vec<BigInt>> {
    // Row index: every monomial mentioned anywhere.
    let mut monos: Vec<&Monomial> = target.keys().collect();
    for c in cols {
        monos.extend(c.keys());
    }
    monos.sort();
    monos.dedup();
    let nrows = monos.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(nrows);
    for mono in &monos {
        let mut row: Vec<BigRational> = cols
            .iter()
            .map(|c| BigRational::from(c.get(*mono).cloned().unwrap_or_else(BigInt::zero)))
            .collect();
        row.push(BigRational::from(
            target.get(*mono).cloned().unwrap_or_else(BigInt::zero),
        ));
        m.push(row);
    }
    // Gaussian elimination to row echelon form.
    let mut pivot_row = 0usize;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..ncols {
        let Some(r) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r2 in 0..nrows {
            if r2 != pivot_row && !m[r2][col].is_zero() {
                let f = m[r2][col].clone();
                for c2 in 0..=ncols {
                    let sub = &m[pivot_row][c2] * &f;
                    m[r2][c2] -= sub;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero rhs.
    for r in pivot_row..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigInt::zero(); ncols];
    for (r, &col) in pivots.iter().enumerate() {
        let v = &m[r][ncols];
        if !v.is_integer() {
            return None;
        }
        sol[col] = v.to_integer();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(rank: usize, class: usize) -> FreeNilContext {
        FreeNilContext::new(rank, class).unwrap()
    }

    fn word(letters: &[(usize, i64)]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    #[test]
    fn collect_ab_is_two_generators() {
        let c = ctx(2, 5);
        let x = c.collect_word(&word(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(x.exps[0], BigInt::one());
        assert_eq!(x.exps[1], BigInt::one());
        assert!(x.exps[2..].iter().all(|e| e.is_zero()));
    }

    #[test]
    fn collect_ba_abelianized() {
        let c = ctx(2, 1);
        let x = c.collect_word(&word(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(x.exps, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn collect_ba_class2_picks_up_bracket() {
        let c = ctx(2, 2);
        // ba = ab[b,a] in the left convention... verify via series equality.
        let x = c.collect_word(&word(&[(1, 1), (0, 1)])).unwrap();
        let s = c.element_series(&x);
        assert_eq!(s, c.word_series(&word(&[(1, 1), (0, 1)])).unwrap());
        assert!(!x.exps[2].is_zero());
    }

    #[test]
    fn inverse_collects_to_identity() {
        let c = ctx(2, 4);
        let w = word(&[(0, 2), (1, -1), (0, 1), (1, 3)]);
        let x = c.collect_word(&w.concat(&w.inverse())).unwrap();
        assert!(x.is_identity());
    }

    #[test]
    fn collect_is_multiplicative() {
        // Deterministic pseudo-random word pairs, rank 2, classes 2..=6.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for class in 2..=6usize {
            let c = ctx(2, class);
            for _ in 0..6 {
                let mk = |next: &mut dyn FnMut() -> u64| {
                    let len = (next() % 4 + 1) as usize;
                    Word::from_letters((0..len).map(|_| {
                        ((next() % 2) as usize, (next() % 5) as i64 - 2)
                    }))
                };
                let u = mk(&mut next);
                let v = mk(&mut next);
                let uv = c.collect_word(&u.concat(&v)).unwrap();
                let prod = c
                    .multiply(&c.collect_word(&u).unwrap(), &c.collect_word(&v).unwrap())
                    .unwrap();
                assert_eq!(uv, prod, "class {class} u={u} v={v}");
            }
        }
    }

    #[test]
    fn anchor_ab_squared() {
        // (ab)^2 = [a,[b,a]] * [b,a] * a^2 * b^2, checked at classes 3..=5.
        for class in 3..=5usize {
            let c = ctx(2, class);
            let lhs = c.word_series(&word(&[(0, 1), (1, 1), (0, 1), (1, 1)])).unwrap();
            let a = c.generator_series(0);
            let b = c.generator_series(1);
            let ba = b.group_commutator(&a);
            let a_ba = a.group_commutator(&ba);
            let rhs = a_ba
                .mul(&ba)
                .mul(&a.pow(&BigInt::from(2)))
                .mul(&b.pow(&BigInt::from(2)));
            assert_eq!(lhs, rhs, "class {class}");
            assert_eq!(
                c.collect_series(&lhs).unwrap(),
                c.collect_series(&rhs).unwrap()
            );
        }
    }

    #[test]
    fn element_series_round_trips() {
        let c = ctx(2, 4);
        let x = c.collect_word(&word(&[(0, 1), (1, 2), (0, -1)])).unwrap();
        let y = c.collect_series(&c.element_series(&x)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn class_cap_enforced() {
        assert!(matches!(
            FreeNilContext::new(2, 11),
            Err(SchurkitError::ResourceLimit(_))
        ));
    }

    #[test]
    fn first_difference_reported() {
        let c = ctx(2, 3);
        let x = c.collect_word(&word(&[(0, 1)])).unwrap();
        let y = c.collect_word(&word(&[(0, 1), (2, 0)])).unwrap();
        assert_eq!(x.first_difference(&y), None);
        let z = c.collect_word(&word(&[(1, 1)])).unwrap();
        assert_eq!(x.first_difference(&z), Some(0));
    }
}

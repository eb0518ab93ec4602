//! Truncated free associative algebra over the integers.
//!
//! Group words in the free nilpotent group of class `c` embed into
//! `Z<x_1..x_r>` modulo terms of degree > c via `g_i -> 1 + x_i` (the Magnus
//! embedding); two group words are equal modulo the (c+1)-st lower central
//! term iff their truncated series agree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A noncommutative monomial: sequence of letter indices. Empty = 1.
pub type Monomial = Vec<u8>;

/// Polynomial in `Z<x_1..x_r>` truncated at total degree `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub class: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Series {
    pub fn zero(class: usize) -> Self {
        Series {
            class,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(class: usize) -> Self {
        let mut s = Series::zero(class);
        s.terms.insert(Vec::new(), BigInt::one());
        s
    }

    /// The group generator image `1 + x_i`.
    pub fn group_gen(class: usize, i: u8) -> Self {
        let mut s = Series::one(class);
        s.terms.insert(vec![i], BigInt::one());
        s
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u8]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&[])
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    fn insert(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || m.len() > self.class {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        if k.is_zero() {
            return Series::zero(self.class);
        }
        let mut out = Series::zero(self.class);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.class);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.len() + mb.len() > self.class {
                    continue;
                }
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                let entry = out.terms.entry(m).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    /// Multiplicative inverse; requires constant term ±1.
    pub fn invert(&self) -> Series {
        let c0 = self.constant_term();
        assert!(
            c0.clone().abs().is_one(),
            "series inverse needs unit constant term"
        );
        // 1/(c0 + u) = c0^-1 * sum (-c0^-1 u)^k, and c0^-1 = c0 for c0 = +-1.
        let u = {
            let mut s = self.clone();
            s.terms.remove(&Vec::new());
            s
        };
        let neg_u = u.scale(&-c0.clone());
        let mut acc = Series::one(self.class);
        let mut powk = Series::one(self.class);
        for _ in 0..self.class {
            powk = powk.mul(&neg_u);
            if powk.terms.is_empty() {
                break;
            }
            acc = acc.add(&powk);
        }
        acc.scale(&c0)
    }

    /// Integer power with arbitrary-precision exponent.
    pub fn pow(&self, n: &BigInt) -> Series {
        let (base, mut k) = if n.is_negative() {
            (self.invert(), n.magnitude().clone())
        } else {
            (self.clone(), n.magnitude().clone())
        };
        let mut acc = Series::one(self.class);
        let mut sq = base;
        while !k.is_zero() {
            if k.bit(0) {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if !k.is_zero() {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Group commutator `[a, b] = a b a^-1 b^-1` of unit-constant series.
    pub fn group_commutator(&self, other: &Series) -> Series {
        self.mul(other)
            .mul(&self.invert())
            .mul(&other.invert())
    }

    /// The homogeneous component of given degree.
    pub fn homogeneous(&self, degree: usize) -> BTreeMap<Monomial, BigInt> {
        self.terms
            .iter()
            .filter(|(m, _)| m.len() == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Smallest positive degree with a nonzero term, if any.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter(|m| !m.is_empty())
            .map(|m| m.len())
            .min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_times_inverse_is_one() {
        let a = Series::group_gen(5, 0);
        assert!(a.mul(&a.invert()).is_one());
        assert!(a.invert().mul(&a).is_one());
    }

    #[test]
    fn commutator_lowest_term_is_lie_bracket() {
        let a = Series::group_gen(4, 0);
        let b = Series::group_gen(4, 1);
        let c = a.group_commutator(&b);
        assert_eq!(c.constant_term(), BigInt::one());
        assert_eq!(c.coeff(&[0, 1]), BigInt::one());
        assert_eq!(c.coeff(&[1, 0]), -BigInt::one());
        assert_eq!(c.coeff(&[0]), BigInt::zero());
        assert_eq!(c.lowest_positive_degree(), Some(2));
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let a = Series::group_gen(6, 0);
        let b = Series::group_gen(6, 1);
        let w = a.mul(&b);
        let mut acc = Series::one(6);
        for _ in 0..7 {
            acc = acc.mul(&w);
        }
        assert_eq!(w.pow(&BigInt::from(7)), acc);
        assert!(w.pow(&BigInt::from(-3)).mul(&w.pow(&BigInt::from(3))).is_one());
    }

    #[test]
    fn truncation_kills_high_degree() {
        let a = Series::group_gen(2, 0);
        let cube = a.pow(&BigInt::from(3));
        // (1+x)^3 truncated at degree 2: 1 + 3x + 3x^2
        assert_eq!(cube.coeff(&[0]), BigInt::from(3));
        assert_eq!(cube.coeff(&[0, 0]), BigInt::from(3));
        assert_eq!(cube.coeff(&[0, 0, 0]), BigInt::zero());
    }
}

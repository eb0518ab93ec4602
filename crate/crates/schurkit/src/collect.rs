//! Collection from the left for consistent power-commutator presentations.
//!
//! Elements are exponent vectors `(a_1, .., a_n)` with `a_i` in
//! `[0, r_i)`. Right-multiplying a collected element by a generator `g_i`
//! moves the higher-indexed tail of the normal form past `g_i` using
//! precomputed conjugate tables:
//!
//! * stored relations give `^g_i g_j` for `i < j`;
//! * the inverse conjugates `^(g_i^-1) g_j` are bootstrapped per level by
//!   iterating the inner automorphism `x -> ^g_i x` of the tail subgroup
//!   until it returns to the identity (its order divides `ord(g_i)`).
//!
//! The bootstrap runs from the highest level down, so normalization inside
//! the tail subgroup is always available when a level is processed.

use crate::error::SchurkitError;
use crate::pcp::{ConsistencyReport, OverlapFailure, PcPresentation};
use crate::word::Word;
use crate::Result;

/// Precomputed collection tables for one presentation.
#[derive(Debug)]
pub struct Collector {
    n: usize,
    orders: Vec<u32>,
    /// Normal form of the power word `g_i^{r_i}` (supported on indices > i).
    pow: Vec<Vec<u32>>,
    /// Normal form of its inverse.
    pow_inv: Vec<Vec<u32>>,
    /// `lconj[i][j]` = normal form of `^g_i g_j` (i < j), indexed sparsely.
    lconj: Vec<Vec<Vec<u32>>>,
    /// `rconj[i][j]` = normal form of `^(g_i^-1) g_j`.
    rconj: Vec<Vec<Vec<u32>>>,
}

impl Collector {
    pub fn new(pcp: &PcPresentation) -> Result<Self> {
        let n = pcp.ngens();
        let order_bound: u128 = pcp.order();
        let orders: Vec<u32> = pcp
            .relative_orders()
            .iter()
            .map(|&r| {
                u32::try_from(r).map_err(|_| {
                    SchurkitError::ResourceLimit(format!("relative order {r} too large"))
                })
            })
            .collect::<Result<_>>()?;

        let mut c = Collector {
            n,
            orders,
            pow: vec![Vec::new(); n],
            pow_inv: vec![Vec::new(); n],
            lconj: vec![vec![Vec::new(); n]; n],
            rconj: vec![vec![Vec::new(); n]; n],
        };

        for i in (0..n).rev() {
            // Tables for all levels > i exist; normalization within the tail
            // subgroup <g_{i+1}, .., g_n> is available.
            c.pow[i] = c.normalize_word(pcp.power_relation(i))?.into_exps();
            c.pow_inv[i] = c.invert_exps(&c.pow[i]);
            for j in (i + 1)..n {
                c.lconj[i][j] = c.normalize_word(&pcp.conjugate_relation(i, j))?.into_exps();
            }
            // Inverse conjugates via the order of the inner automorphism.
            let mut images: Vec<Vec<u32>> = ((i + 1)..n).map(|j| c.unit(j)).collect();
            let mut prev = images.clone();
            let mut found = false;
            let mut steps: u128 = 0;
            while steps < order_bound {
                steps += 1;
                let next: Vec<Vec<u32>> = prev.iter().map(|x| c.apply_lconj(i, x)).collect();
                let is_id = next
                    .iter()
                    .enumerate()
                    .all(|(k, x)| *x == c.unit(i + 1 + k));
                if is_id {
                    // prev = phi^(m-1) applied to the generators.
                    for (k, x) in prev.iter().enumerate() {
                        c.rconj[i][i + 1 + k] = x.clone();
                    }
                    found = true;
                    break;
                }
                prev = next.clone();
                images = next;
            }
            let _ = images;
            if !found && n - i > 1 {
                return Err(SchurkitError::Inconsistent { failures: 1 });
            }
            if n - i == 1 {
                // No tail to conjugate.
            }
        }
        Ok(c)
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.n]
    }

    fn unit(&self, j: usize) -> Vec<u32> {
        let mut v = vec![0; self.n];
        v[j] = 1;
        v
    }

    /// `phi_i(x)` for `x` supported on indices > i.
    fn apply_lconj(&self, i: usize, x: &[u32]) -> Vec<u32> {
        let mut acc = self.identity();
        for j in (i + 1)..self.n {
            for _ in 0..x[j] {
                let img = self.lconj[i][j].clone();
                self.mul_exps(&mut acc, &img);
            }
        }
        acc
    }

    /// Right-multiply the collected vector `a` by `g_i^sign`.
    fn mul_gen(&self, a: &mut Vec<u32>, i: usize, sign: i8) {
        // Detach the tail above i.
        let mut tail: Vec<(usize, u32)> = Vec::new();
        for j in (i + 1)..self.n {
            if a[j] != 0 {
                tail.push((j, a[j]));
                a[j] = 0;
            }
        }
        if sign > 0 {
            a[i] += 1;
            if a[i] == self.orders[i] {
                a[i] = 0;
                let w = self.pow[i].clone();
                self.mul_exps(a, &w);
            }
        } else if a[i] == 0 {
            a[i] = self.orders[i] - 1;
            let w = self.pow_inv[i].clone();
            self.mul_exps(a, &w);
        } else {
            a[i] -= 1;
        }
        for (j, e) in tail {
            let conj = if tail_conj_trivial(&self.lconj[i][j], j) && sign > 0 {
                // rconj of a trivially-conjugated generator is itself.
                self.unit(j)
            } else if sign > 0 {
                self.rconj[i][j].clone()
            } else {
                self.lconj[i][j].clone()
            };
            for _ in 0..e {
                self.mul_exps(a, &conj);
            }
        }
    }

    /// Right-multiply collected `a` by collected `b`.
    pub fn mul_exps(&self, a: &mut Vec<u32>, b: &[u32]) {
        for j in 0..self.n {
            for _ in 0..b[j] {
                self.mul_gen(a, j, 1);
            }
        }
    }

    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        self.mul_exps(&mut r, b);
        r
    }

    pub fn invert_exps(&self, a: &[u32]) -> Vec<u32> {
        let mut r = self.identity();
        for j in (0..self.n).rev() {
            for _ in 0..a[j] {
                self.mul_gen(&mut r, j, -1);
            }
        }
        r
    }

    /// Normal form of an arbitrary word (negative exponents allowed).
    pub fn normalize_word(&self, w: &Word) -> Result<NormalForm> {
        let mut a = self.identity();
        for &(g, e) in w.letters() {
            if g >= self.n {
                return Err(SchurkitError::Invalid(format!(
                    "generator index g{} out of range",
                    g + 1
                )));
            }
            let sign: i8 = if e > 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                self.mul_gen(&mut a, g, sign);
            }
        }
        Ok(NormalForm(a))
    }

    pub fn power(&self, a: &[u32], mut n: i64) -> Vec<u32> {
        let mut base = if n < 0 {
            n = -n;
            self.invert_exps(a)
        } else {
            a.to_vec()
        };
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: &[u32]) -> u64 {
        let id = self.identity();
        let mut x = a.to_vec();
        let mut k: u64 = 1;
        while x != id {
            x = self.multiply(&x, a);
            k += 1;
        }
        k
    }

    /// Run the associativity overlap tests; an empty failure list certifies
    /// consistency.
    pub fn consistency_overlaps(&self) -> ConsistencyReport {
        let mut failures = Vec::new();
        let mut push = |desc: String, lhs: Vec<u32>, rhs: Vec<u32>| {
            if lhs != rhs {
                failures.push(OverlapFailure {
                    overlap: desc,
                    lhs,
                    rhs,
                });
            }
        };
        let n = self.n;
        for i in 0..n {
            // g_i * g_i^{r_i}  vs  g_i^{r_i} * g_i
            let lhs = self.multiply(&self.unit(i), &self.pow[i]);
            let rhs = self.multiply(&self.pow[i], &self.unit(i));
            push(format!("g{0} (g{0}^r{0}) = (g{0}^r{0}) g{0}", i + 1), lhs, rhs);
        }
        for j in 0..n {
            for i in 0..j {
                // (g_j^{r_j}) g_i  vs  g_j^{r_j - 1} (g_j g_i)
                let lhs = self.multiply(&self.pow[j], &self.unit(i));
                let mut rhs = self.identity();
                rhs[j] = self.orders[j] - 1;
                let ji = self.multiply(&self.unit(j), &self.unit(i));
                let rhs = self.multiply(&rhs, &ji);
                push(
                    format!("(g{1}^r{1}) g{0} = g{1}^(r{1}-1) (g{1} g{0})", i + 1, j + 1),
                    lhs,
                    rhs,
                );
                // g_j (g_i^{r_i})  vs  (g_j g_i) g_i^{r_i - 1}
                let lhs = self.multiply(&self.unit(j), &self.pow[i]);
                let mut tail = self.identity();
                tail[i] = self.orders[i] - 1;
                let rhs = self.multiply(&ji, &tail);
                push(
                    format!("g{1} (g{0}^r{0}) = (g{1} g{0}) g{0}^(r{0}-1)", i + 1, j + 1),
                    lhs,
                    rhs,
                );
            }
        }
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let kj = self.multiply(&self.unit(k), &self.unit(j));
                    let lhs = self.multiply(&kj, &self.unit(i));
                    let ji = self.multiply(&self.unit(j), &self.unit(i));
                    let rhs = self.multiply(&self.unit(k), &ji);
                    push(
                        format!("(g{2} g{1}) g{0} = g{2} (g{1} g{0})", i + 1, j + 1, k + 1),
                        lhs,
                        rhs,
                    );
                }
            }
        }
        ConsistencyReport { failures }
    }
}

fn tail_conj_trivial(lconj: &[u32], j: usize) -> bool {
    lconj.iter().enumerate().all(|(k, &e)| if k == j { e == 1 } else { e == 0 })
}

/// A collected exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm(Vec<u32>);

impl NormalForm {
    pub fn exps(&self) -> &[u32] {
        &self.0
    }
    pub fn into_exps(self) -> Vec<u32> {
        self.0
    }
}

/// Build a collector and run the overlap tests.
pub fn check_consistency(pcp: &PcPresentation) -> ConsistencyReport {
    match Collector::new(pcp) {
        Ok(c) => c.consistency_overlaps(),
        Err(_) => ConsistencyReport {
            failures: vec![OverlapFailure {
                overlap: "conjugation tables could not be bootstrapped \
                          (inner automorphism never returned to the identity)"
                    .into(),
                lhs: Vec::new(),
                rhs: Vec::new(),
            }],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pc_presentation;

    fn collector(text: &str) -> Collector {
        Collector::new(&parse_pc_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_modular_reduction() {
        let c = collector("gens 1; orders 3; pow 1 -> id");
        let nf = c.normalize_word(&Word::from_letters([(0, 4)])).unwrap();
        assert_eq!(nf.exps(), &[1]);
        let nf = c.normalize_word(&Word::identity()).unwrap();
        assert_eq!(nf.exps(), &[0]);
    }

    #[test]
    fn cyclic_9_as_two_levels() {
        // C9: g1^3 = g2, g2^3 = 1.
        let c = collector("gens 2; orders 3 3; pow 1 -> g2");
        let g1 = c.normalize_word(&Word::gen(0)).unwrap().into_exps();
        assert_eq!(c.element_order(&g1), 9);
        assert_eq!(c.power(&g1, 3), &[0, 1]);
        assert_eq!(c.power(&g1, 9), c.identity());
        assert!(check_consistency(&parse_pc_presentation("gens 2; orders 3 3; pow 1 -> g2").unwrap()).is_consistent());
    }

    #[test]
    fn heisenberg_collection() {
        let c = collector("gens 3; orders 3 3 3; conj 1 2 -> g2*g3; pow * -> id");
        // g2 * g1 produces a nontrivial g3 entry.
        let w = Word::from_letters([(1, 1), (0, 1)]);
        let nf = c.normalize_word(&w).unwrap();
        assert_eq!(nf.exps()[0], 1);
        assert_eq!(nf.exps()[1], 1);
        assert_ne!(nf.exps()[2], 0);
        // g1 * g2 stays collected.
        let w = Word::from_letters([(0, 1), (1, 1)]);
        assert_eq!(c.normalize_word(&w).unwrap().exps(), &[1, 1, 0]);
    }

    #[test]
    fn heisenberg_group_axioms() {
        let c = collector("gens 3; orders 3 3 3; conj 1 2 -> g2*g3; pow * -> id");
        // Exhaust all pairs: x * x^-1 = 1 and associativity on a sample.
        let mut elems = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                for d in 0..3u32 {
                    elems.push(vec![a, b, d]);
                }
            }
        }
        for x in &elems {
            let inv = c.invert_exps(x);
            assert_eq!(c.multiply(x, &inv), c.identity());
        }
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let xy_z = c.multiply(&c.multiply(x, y), z);
                    let x_yz = c.multiply(x, &c.multiply(y, z));
                    assert_eq!(xy_z, x_yz);
                }
            }
        }
    }

    #[test]
    fn corrupted_heisenberg_fails_overlap() {
        // ^g1 g2 = g3 instead of g2*g3: inconsistent.
        let pcp = parse_pc_presentation("gens 3; orders 3 3 3; conj 1 2 -> g3; pow * -> id").unwrap();
        let report = check_consistency(&pcp);
        assert!(!report.is_consistent());
    }

    #[test]
    fn dihedral_8() {
        // D8: g1^2 = 1, g2^4 = 1, ^g1 g2 = g2^3.
        let c = collector("gens 2; orders 2 4; conj 1 2 -> g2^3");
        let a = c.normalize_word(&Word::gen(0)).unwrap().into_exps();
        let b = c.normalize_word(&Word::gen(1)).unwrap().into_exps();
        assert_eq!(c.element_order(&a), 2);
        assert_eq!(c.element_order(&b), 4);
        let ab = c.multiply(&a, &b);
        assert_eq!(c.element_order(&ab), 2);
    }
}

//! Independent cross-check path for pc arithmetic.
//!
//! The collector is validated against a multiplication table obtained by a
//! completely different route: the pc presentation is handed to the coset
//! enumerator as a plain finite presentation over the trivial subgroup, and
//! the resulting regular action is used as a table oracle. The two paths
//! share no rewriting code, so agreement is strong evidence that both are
//! computing in the same group.

use serde::Serialize;

use crate::error::SchurkitError;
use crate::fp::{concat, inv, FpPresentation, FpWord};
use crate::group::PcGroup;
use crate::pcp::PcPresentation;
use crate::todd_coxeter::{enumerate, CosetTable, Enumeration};
use crate::Result;

/// The pc presentation viewed as a bare finite presentation.
pub fn pc_to_fp(pcp: &PcPresentation) -> FpPresentation {
    let n = pcp.ngens();
    let word_of = |w: &crate::word::Word| -> FpWord {
        let mut out = Vec::new();
        for &(i, e) in w.letters() {
            let l = if e >= 0 { (i + 1) as i32 } else { -((i + 1) as i32) };
            out.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        out
    };
    let mut fp = FpPresentation::new(n);
    for i in 0..n {
        let gi = vec![(i + 1) as i32];
        let mut rel: FpWord = Vec::new();
        for _ in 0..pcp.relative_orders()[i] {
            rel.extend_from_slice(&gi);
        }
        let rhs = word_of(pcp.power_relation(i));
        fp.push(
            concat(&[&rel, &inv(&rhs)]),
            format!("power relation of g{}", i + 1),
        );
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let gi = vec![(i + 1) as i32];
            let gj = vec![(j + 1) as i32];
            let rhs = word_of(&pcp.conjugate_relation(i, j));
            fp.push(
                concat(&[&gi, &gj, &inv(&gi), &inv(&rhs)]),
                format!("conjugation relation ^g{} g{}", i + 1, j + 1),
            );
        }
    }
    fp
}

/// A multiplication-table oracle for a pc group, built by coset enumeration.
pub struct TableOracle {
    pub table: CosetTable,
    /// coset id of each group element, indexed by element id
    pub coset_of: Vec<u32>,
}

impl TableOracle {
    pub fn build(g: &PcGroup, budget: u64) -> Result<TableOracle> {
        let fp = pc_to_fp(g.presentation());
        let table = match enumerate(&fp, budget) {
            Enumeration::Closed(t) => t,
            Enumeration::BudgetExceeded(s) => return Err(SchurkitError::BudgetExceeded(s)),
        };
        if table.ncosets as u128 != g.order() {
            return Err(SchurkitError::Invalid(format!(
                "enumeration closed at {} cosets but the presentation claims order {}",
                table.ncosets,
                g.order()
            )));
        }
        let mut coset_of = Vec::with_capacity(table.ncosets);
        for x in g.elements() {
            let mut w: FpWord = Vec::new();
            for (i, &e) in x.exponents().iter().enumerate() {
                w.extend(std::iter::repeat((i + 1) as i32).take(e as usize));
            }
            coset_of.push(table.element_of(&w));
        }
        Ok(TableOracle { table, coset_of })
    }

    /// Every normal form names a distinct element.
    pub fn normal_forms_bijective(&self) -> bool {
        let mut seen = vec![false; self.table.ncosets];
        for &c in &self.coset_of {
            if seen[c as usize] {
                return false;
            }
            seen[c as usize] = true;
        }
        self.coset_of.len() == self.table.ncosets
    }
}

/// Serializable outcome of the full oracle cross-check.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub group: String,
    pub order: u64,
    pub normal_forms_bijective: bool,
    pub products_checked: u64,
    pub product_mismatches: u64,
    pub associativity_triples: u64,
    pub associativity_failures: u64,
    pub agreement: bool,
}

/// Compare collector arithmetic against the table oracle: every product of
/// normal forms, plus associativity triples inside the oracle table
/// (exhaustive when |G|^3 is small, deterministically sampled otherwise).
pub fn cross_check(g: &PcGroup, budget: u64) -> Result<OracleReport> {
    let oracle = TableOracle::build(g, budget)?;
    let n = g.order() as u64;
    let elems: Vec<_> = g.elements().collect();
    let mut product_mismatches = 0u64;
    let mut products_checked = 0u64;
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let z = g.multiply(x, y)?;
            let via_oracle = oracle
                .table
                .mul(oracle.coset_of[i], oracle.coset_of[j]);
            products_checked += 1;
            if oracle.coset_of[g.id_of(&z) as usize] != via_oracle {
                product_mismatches += 1;
            }
        }
    }
    let mut associativity_triples = 0u64;
    let mut associativity_failures = 0u64;
    let exhaustive = n.pow(3) <= 1_000_000;
    let mut state = 0xabcdu64;
    let mut next = |k: u64| -> u64 {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        (z ^ (z >> 31)) % k
    };
    let triples: Vec<(u32, u32, u32)> = if exhaustive {
        let m = oracle.table.ncosets as u32;
        (0..m)
            .flat_map(|a| (0..m).flat_map(move |b| (0..m).map(move |c| (a, b, c))))
            .collect()
    } else {
        (0..10_000)
            .map(|_| (next(n) as u32, next(n) as u32, next(n) as u32))
            .collect()
    };
    for (a, b, c) in triples {
        associativity_triples += 1;
        let lhs = oracle.table.mul(oracle.table.mul(a, b), c);
        let rhs = oracle.table.mul(a, oracle.table.mul(b, c));
        if lhs != rhs {
            associativity_failures += 1;
        }
    }
    let normal_forms_bijective = oracle.normal_forms_bijective();
    Ok(OracleReport {
        group: g.presentation().name().unwrap_or("(unnamed)").to_string(),
        order: n,
        normal_forms_bijective,
        products_checked,
        product_mismatches,
        associativity_triples,
        associativity_failures,
        agreement: normal_forms_bijective && product_mismatches == 0 && associativity_failures == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_group;

    fn group(name: &str, params: &[u64]) -> PcGroup {
        PcGroup::new(catalog_group(name, params).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_collector_agrees_with_table() {
        let g = group("heisenberg_mod", &[3]);
        let r = cross_check(&g, 100_000).unwrap();
        assert!(r.agreement, "{r:?}");
        assert_eq!(r.products_checked, 27 * 27);
        assert_eq!(r.associativity_triples, 27 * 27 * 27);
    }

    #[test]
    fn dihedral_and_quaternion_agree() {
        for (name, params) in [("dihedral", vec![16u64]), ("quaternion", vec![16])] {
            let g = group(name, &params);
            let r = cross_check(&g, 100_000).unwrap();
            assert!(r.agreement, "{name}: {r:?}");
        }
    }

    #[test]
    fn starved_budget_is_reported() {
        let g = group("abelian", &[3, 9]);
        assert!(matches!(
            TableOracle::build(&g, 5),
            Err(SchurkitError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn normal_form_count_matches_order() {
        for (name, params) in [("cyclic", vec![12u64]), ("abelian", vec![2, 4])] {
            let g = group(name, &params);
            let oracle = TableOracle::build(&g, 100_000).unwrap();
            assert!(oracle.normal_forms_bijective());
            assert_eq!(oracle.coset_of.len() as u128, g.order());
        }
    }
}

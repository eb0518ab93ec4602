//! Rocco's group ν(G) as a finite presentation.
//!
//! ν(G) is generated by two copies of G (written `g` and `g^phi`) subject to
//! the lifted relations of G in both copies together with
//!
//! ```text
//! [g1, g2^phi]^{g3} = [g1^{g3}, (g2^{g3})^phi] = [g1, g2^phi]^{g3^phi}
//! ```
//!
//! in Rocco's right-action convention (`x^y = y^-1 x y`,
//! `[x,y] = x^-1 y^-1 x y`). The crate-wide left convention is translated
//! here once: a left-convention pc relation `^g_i g_j = w` is lifted as the
//! free relator `g_i g_j g_i^-1 w^-1`, while the Rocco relators are written
//! directly in right-convention form, matching their source.
//!
//! Instantiating the Rocco relators on pc-generator triples suffices: both
//! sides are multiplicative in each of the three slots, so the relations for
//! arbitrary elements follow by induction on word length. The full element
//! cube is available as a cross-check for very small groups.

use crate::error::SchurkitError;
use crate::fp::{comm, concat, conj, inv, FpPresentation, FpWord};
use crate::group::PcGroup;
use crate::Result;

/// Default order envelope for enumeration-bound construction.
pub const NU_ENVELOPE: u128 = 128;
/// Envelope with the extended-budget flag.
pub const NU_ENVELOPE_EXTENDED: u128 = 243;

#[derive(Debug)]
pub struct NuPresentation {
    pub fp: FpPresentation,
    pub ngens_g: usize,
}

impl NuPresentation {
    /// Signed fp letter for generator `i` of the `G` copy.
    pub fn g(&self, i: usize) -> i32 {
        (i + 1) as i32
    }

    /// Signed fp letter for generator `i` of the `G^phi` copy.
    pub fn phi(&self, i: usize) -> i32 {
        (self.ngens_g + i + 1) as i32
    }

    /// Lift a normal form of G into the chosen copy.
    pub fn lift(&self, exps: &[u32], phi_copy: bool) -> FpWord {
        let mut w = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            let letter = if phi_copy { self.phi(i) } else { self.g(i) };
            w.extend(std::iter::repeat(letter).take(e as usize));
        }
        w
    }
}

fn word_in_copy(nu_ngens_g: usize, w: &crate::word::Word, phi_copy: bool) -> FpWord {
    let mut out = Vec::new();
    for &(i, e) in w.letters() {
        let letter = if phi_copy {
            (nu_ngens_g + i + 1) as i32
        } else {
            (i + 1) as i32
        };
        let l = if e >= 0 { letter } else { -letter };
        out.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
    }
    out
}

fn lifted_relations(fp: &mut FpPresentation, g: &PcGroup, phi_copy: bool) {
    let pcp = g.presentation();
    let n = pcp.ngens();
    let copy = if phi_copy { "G^phi" } else { "G" };
    for i in 0..n {
        let gi = word_in_copy(n, &crate::word::Word::gen(i), phi_copy);
        let mut rel: FpWord = Vec::new();
        for _ in 0..pcp.relative_orders()[i] {
            rel.extend_from_slice(&gi);
        }
        let rhs = word_in_copy(n, pcp.power_relation(i), phi_copy);
        fp.push(
            concat(&[&rel, &inv(&rhs)]),
            format!("power relation of g{} lifted to the {copy} copy", i + 1),
        );
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let w = pcp.conjugate_relation(i, j);
            let gi = word_in_copy(n, &crate::word::Word::gen(i), phi_copy);
            let gj = word_in_copy(n, &crate::word::Word::gen(j), phi_copy);
            let rhs = word_in_copy(n, &w, phi_copy);
            // left convention: g_i g_j g_i^-1 = w
            fp.push(
                concat(&[&gi, &gj, &inv(&gi), &inv(&rhs)]),
                format!(
                    "conjugation relation ^g{} g{} lifted to the {copy} copy",
                    i + 1,
                    j + 1
                ),
            );
        }
    }
}

/// Items: (x, y^phi, z, z^phi, label) with x, z lifted into the G copy and
/// y^phi, z^phi into the phi copy.
fn rocco_relators(
    fp: &mut FpPresentation,
    triples: impl Iterator<Item = (FpWord, FpWord, FpWord, FpWord, String)>,
) {
    for (x, y_phi, z, z_phi, label) in triples {
        let base = comm(&x, &y_phi);
        let rhs = comm(&conj(&x, &z), &conj(&y_phi, &z_phi));
        fp.push(
            concat(&[&conj(&base, &z), &inv(&rhs)]),
            format!("Rocco relation [x,y^phi]^z = [x^z,(y^z)^phi] at {label}"),
        );
        fp.push(
            concat(&[&conj(&base, &z_phi), &inv(&rhs)]),
            format!("Rocco relation [x,y^phi]^(z^phi) = [x^z,(y^z)^phi] at {label}"),
        );
    }
}

fn envelope_check(g: &PcGroup, extended: bool) -> Result<()> {
    let cap = if extended {
        NU_ENVELOPE_EXTENDED
    } else {
        NU_ENVELOPE
    };
    if g.order() > cap {
        return Err(SchurkitError::ResourceLimit(format!(
            "|G| = {} exceeds the nu(G) construction envelope {cap}",
            g.order()
        )));
    }
    Ok(())
}

/// Build ν(G) with Rocco relators on pc-generator triples.
pub fn build_nu(g: &PcGroup, extended: bool) -> Result<NuPresentation> {
    envelope_check(g, extended)?;
    let n = g.ngens();
    let mut fp = FpPresentation::new(2 * n);
    lifted_relations(&mut fp, g, false);
    lifted_relations(&mut fp, g, true);
    let gens: Vec<usize> = (0..n).collect();
    let triples = gens.iter().flat_map(|&i| {
        let gens = gens.clone();
        gens.clone().into_iter().flat_map(move |j| {
            let gens = gens.clone();
            gens.into_iter().map(move |k| {
                (
                    vec![(i + 1) as i32],
                    vec![(n + j + 1) as i32],
                    vec![(k + 1) as i32],
                    vec![(n + k + 1) as i32],
                    format!("generators ({},{},{})", i + 1, j + 1, k + 1),
                )
            })
        })
    });
    rocco_relators(&mut fp, triples);
    Ok(NuPresentation { fp, ngens_g: n })
}

/// Cross-check variant: Rocco relators over all |G|^3 element triples.
pub fn build_nu_full_triples(g: &PcGroup) -> Result<NuPresentation> {
    if g.order() > 16 {
        return Err(SchurkitError::ResourceLimit(
            "full-triple instantiation is limited to |G| <= 16".into(),
        ));
    }
    let n = g.ngens();
    let mut fp = FpPresentation::new(2 * n);
    lifted_relations(&mut fp, g, false);
    lifted_relations(&mut fp, g, true);
    let elems: Vec<Vec<u32>> = g.elements().map(|x| x.exponents().to_vec()).collect();
    let nu = NuPresentation {
        fp: FpPresentation::new(2 * n),
        ngens_g: n,
    };
    let mut triples = Vec::new();
    for x in &elems {
        for y in &elems {
            for z in &elems {
                triples.push((
                    nu.lift(x, false),
                    nu.lift(y, true),
                    nu.lift(z, false),
                    nu.lift(z, true),
                    "element triple".to_string(),
                ));
            }
        }
    }
    rocco_relators(&mut fp, triples.into_iter());
    Ok(NuPresentation { fp, ngens_g: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_group;
    use crate::todd_coxeter::{enumerate, Enumeration};

    fn group(name: &str, params: &[u64]) -> PcGroup {
        PcGroup::new(catalog_group(name, params).unwrap()).unwrap()
    }

    #[test]
    fn nu_c2_has_order_8() {
        let g = group("cyclic", &[2]);
        let nu = build_nu(&g, false).unwrap();
        let t = enumerate(&nu.fp, 10_000).into_table().unwrap();
        assert_eq!(t.ncosets, 8);
    }

    #[test]
    fn nu_c2_starved_budget() {
        let g = group("cyclic", &[2]);
        let nu = build_nu(&g, false).unwrap();
        match enumerate(&nu.fp, 3) {
            Enumeration::BudgetExceeded(s) => assert_eq!(s.budget, 3),
            Enumeration::Closed(_) => panic!("budget 3 must not close"),
        }
    }

    #[test]
    fn nu_klein_has_order_256() {
        let g = group("abelian", &[2, 2]);
        let nu = build_nu(&g, false).unwrap();
        let t = enumerate(&nu.fp, 100_000).into_table().unwrap();
        assert_eq!(t.ncosets, 256);
    }

    #[test]
    fn full_triples_agrees_with_generator_triples_on_c4() {
        let g = group("cyclic", &[4]);
        let a = build_nu(&g, false).unwrap();
        let b = build_nu_full_triples(&g).unwrap();
        let ta = enumerate(&a.fp, 100_000).into_table().unwrap();
        let tb = enumerate(&b.fp, 100_000).into_table().unwrap();
        assert_eq!(ta.ncosets, tb.ncosets);
    }

    #[test]
    fn envelope_rejects_large_groups() {
        let g = group("cyclic", &[243]);
        assert!(matches!(
            build_nu(&g, false),
            Err(SchurkitError::ResourceLimit(_))
        ));
        assert!(build_nu(&g, true).is_ok());
        assert!(matches!(
            build_nu_full_triples(&g),
            Err(SchurkitError::ResourceLimit(_))
        ));
    }
}

//! Cross-cutting properties of the collector and structure machinery,
//! checked over the whole built-in catalog.

use schurkit::catalog::default_catalog;
use schurkit::group::PcGroup;
use schurkit::word::Word;

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn catalog_groups() -> Vec<PcGroup> {
    default_catalog()
        .into_iter()
        .map(|pcp| PcGroup::new(pcp).expect("catalog presentations are consistent"))
        .collect()
}

fn random_element(g: &PcGroup, state: &mut u64) -> schurkit::group::GroupElement {
    g.element_from_id(splitmix(state) % g.order() as u64)
}

#[test]
fn collection_confluence_on_random_word_pairs() {
    // normalize(uv) = multiply(normalize(u), normalize(v))
    let mut state = 0x11;
    for g in catalog_groups() {
        for _ in 0..200 {
            let x = random_element(&g, &mut state);
            let y = random_element(&g, &mut state);
            let mut w = Word::identity();
            for (i, &e) in x.exponents().iter().enumerate() {
                w.push(i, e as i64);
            }
            for (i, &e) in y.exponents().iter().enumerate() {
                w.push(i, e as i64);
            }
            let via_word = g.normalize(&w).unwrap();
            let via_mul = g.multiply(&x, &y).unwrap();
            assert_eq!(via_word, via_mul, "confluence fails in {:?}", g.presentation().name());
        }
    }
}

#[test]
fn lemma_1_1_i_on_random_triples() {
    // [xy, z] = ^x[y,z] · [x,z] with the crate-wide left convention.
    let mut state = 0x22;
    for g in catalog_groups() {
        for _ in 0..1000 {
            let x = random_element(&g, &mut state);
            let y = random_element(&g, &mut state);
            let z = random_element(&g, &mut state);
            let lhs = g.commutator(&g.multiply(&x, &y).unwrap(), &z).unwrap();
            let rhs = g
                .multiply(
                    &g.conjugate(&x, &g.commutator(&y, &z).unwrap()).unwrap(),
                    &g.commutator(&x, &z).unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs, "Lemma 1.1(i) fails in {:?}", g.presentation().name());
        }
    }
}

#[test]
fn series_sanity_and_frattini_factorization() {
    for g in catalog_groups() {
        let st = g.structure().unwrap();
        let table = g.table().unwrap();
        // gamma_2(G) agrees with the derived subgroup computed separately.
        let gamma2: &[u32] = if st.lower_central.len() > 1 {
            &st.lower_central[1]
        } else {
            &st.lower_central[0][..1]
        };
        assert_eq!(gamma2, st.derived_subgroup());
        // For p-groups, Phi(G) = G^p G' matches the maximal-subgroup lattice.
        if let (Some(frattini), Some(agemo)) = (&st.frattini, &st.agemo_p) {
            let mut gens: Vec<u32> = agemo.clone();
            gens.extend_from_slice(st.derived_subgroup());
            let product = table.closure(&gens);
            assert_eq!(&product, frattini, "{:?}", g.presentation().name());
        }
    }
}

#[test]
fn exponent_matches_exhaustive_element_orders() {
    for g in catalog_groups() {
        if g.order() > 729 {
            continue;
        }
        let st = g.structure().unwrap();
        let mut lcm = 1u64;
        for x in g.elements() {
            lcm = num_integer::lcm(lcm, g.element_order(&x).unwrap());
        }
        assert_eq!(lcm, st.exponent, "{:?}", g.presentation().name());
    }
}

#[test]
fn hall_petrescu_sanity_in_3_groups() {
    // In a 3-group of class <= 6: a^{3^n} central implies [b, a^3]^{3^{n-1}} = 1.
    for g in catalog_groups() {
        let st = g.structure().unwrap();
        if st.prime != Some(3) || g.order() > 243 {
            continue;
        }
        let Some(class) = st.nilpotency_class else {
            continue;
        };
        if class > 6 {
            continue;
        }
        for a in g.elements() {
            let a3 = g.power(&a, 3).unwrap();
            for n in 1..=6u32 {
                let an = g.power(&a, 3i64.pow(n)).unwrap();
                if !st.center.binary_search(&(g.id_of(&an) as u32)).is_ok() {
                    continue;
                }
                let e = 3i64.pow(n - 1);
                for b in g.elements() {
                    let c = g.commutator(&b, &a3).unwrap();
                    assert!(
                        g.is_identity(&g.power(&c, e).unwrap()),
                        "Hall-Petrescu violation in {:?}",
                        g.presentation().name()
                    );
                }
                break; // smallest such n gives the strongest claim
            }
        }
    }
}

#[test]
fn power_commutator_exponent_sanity_in_5_groups() {
    // g^{5^n} = 1 implies [g^5, a]^{5^{n-1}} = 1 for every a of weight >= 2.
    for g in catalog_groups() {
        let st = g.structure().unwrap();
        if st.prime != Some(5) {
            continue;
        }
        let gamma2 = st.derived_subgroup().to_vec();
        for x in g.elements() {
            let ord = g.element_order(&x).unwrap();
            let mut nv = 0u32;
            let mut pw = 1u64;
            while pw < ord {
                pw *= 5;
                nv += 1;
            }
            if nv == 0 {
                continue;
            }
            let x5 = g.power(&x, 5).unwrap();
            let e = 5i64.pow(nv - 1);
            for &aid in &gamma2 {
                let a = g.element_from_id(aid as u64);
                let c = g.commutator(&x5, &a).unwrap();
                assert!(
                    g.is_identity(&g.power(&c, e).unwrap()),
                    "Lemma 5.1(vi) violation in {:?}",
                    g.presentation().name()
                );
            }
        }
    }
}

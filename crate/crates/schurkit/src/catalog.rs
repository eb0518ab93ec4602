//! Built-in group catalog and the `catalog:` URI scheme.
//!
//! Families are hand-written presentations; each is verified consistent by
//! the test suite rather than generated algorithmically.

use std::collections::BTreeMap;

use crate::error::SchurkitError;
use crate::pcp::PcPresentation;
use crate::word::Word;
use crate::Result;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn invalid(msg: impl Into<String>) -> SchurkitError {
    SchurkitError::InvalidParams(msg.into())
}

/// Build a catalog presentation. `params` semantics per family:
///
/// - `cyclic: n` — C_n
/// - `abelian: d1,d2,...` — C_d1 x C_d2 x ...
/// - `dihedral: m` — dihedral group of order m (m even, >= 4)
/// - `quaternion: m` — generalized quaternion of order m (power of 2, >= 8)
/// - `extraspecial_plus: p` — order p^3, exponent p (p odd prime)
/// - `extraspecial_minus: p` — order p^3, exponent p^2 (p odd prime)
/// - `heisenberg_mod: p` — upper unitriangular 3x3 over F_p
/// - `maximal_class_3: k` — 3-group of maximal class, order 3^k (k >= 3)
/// - `burnside_2_3` — free 2-generator group of exponent 3, order 27
/// - `wreath_cp_cp: p` — C_p wr C_p, order p^{p+1}
pub fn catalog_group(name: &str, params: &[u64]) -> Result<PcPresentation> {
    let one = |family: &str| -> Result<u64> {
        match params {
            [n] => Ok(*n),
            _ => Err(invalid(format!("{family} takes exactly one parameter"))),
        }
    };
    match name {
        "cyclic" => {
            let n = one("cyclic")?;
            if n < 2 {
                return Err(invalid("cyclic order must be >= 2"));
            }
            let mut orders = Vec::new();
            let mut pows = Vec::new();
            cyclic_chain(n, &mut orders, &mut pows);
            Ok(pcp(orders, pows, [])
                .with_name(&format!("cyclic:{n}"))
                .with_expected_order(n as u128))
        }
        "abelian" => {
            if params.is_empty() || params.iter().any(|&d| d < 2) {
                return Err(invalid("abelian needs factors all >= 2"));
            }
            let order: u128 = params.iter().map(|&d| d as u128).product();
            let label = params
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let mut orders = Vec::new();
            let mut pows = Vec::new();
            for &d in params {
                cyclic_chain(d, &mut orders, &mut pows);
            }
            Ok(pcp(orders, pows, [])
                .with_name(&format!("abelian:{label}"))
                .with_expected_order(order))
        }
        "dihedral" => {
            let m = one("dihedral")?;
            if m < 4 || m % 2 != 0 {
                return Err(invalid("dihedral order must be even and >= 4"));
            }
            let n = m / 2;
            let conj = if n > 2 {
                vec![((0, 1), word(&[(1, n as i64 - 1)]))]
            } else {
                vec![]
            };
            Ok(pcp(vec![2, n], [], conj)
                .with_name(&format!("dihedral:{m}"))
                .with_expected_order(m as u128))
        }
        "quaternion" => {
            let m = one("quaternion")?;
            if m < 8 || !m.is_power_of_two() {
                return Err(invalid("quaternion order must be a power of 2, >= 8"));
            }
            let half = m / 2;
            Ok(pcp(
                vec![2, half],
                [(0, word(&[(1, half as i64 / 2)]))],
                [((0, 1), word(&[(1, half as i64 - 1)]))],
            )
            .with_name(&format!("quaternion:{m}"))
            .with_prime(2)
            .with_expected_order(m as u128))
        }
        "extraspecial_plus" => {
            let p = one("extraspecial_plus")?;
            if !is_prime(p) || p == 2 {
                return Err(invalid("extraspecial_plus needs an odd prime"));
            }
            Ok(heisenberg(p)
                .with_name(&format!("extraspecial_plus:{p}"))
                .with_prime(p)
                .with_expected_order((p as u128).pow(3)))
        }
        "extraspecial_minus" => {
            let p = one("extraspecial_minus")?;
            if !is_prime(p) || p == 2 {
                return Err(invalid("extraspecial_minus needs an odd prime"));
            }
            Ok(pcp(
                vec![p, p, p],
                [(0, word(&[(2, 1)]))],
                [((0, 1), word(&[(1, 1), (2, 1)]))],
            )
            .with_name(&format!("extraspecial_minus:{p}"))
            .with_prime(p)
            .with_expected_order((p as u128).pow(3)))
        }
        "heisenberg_mod" => {
            let p = one("heisenberg_mod")?;
            if !is_prime(p) {
                return Err(invalid("heisenberg_mod needs a prime"));
            }
            Ok(heisenberg(p)
                .with_name(&format!("heisenberg_mod:{p}"))
                .with_prime(p)
                .with_expected_order((p as u128).pow(3)))
        }
        "maximal_class_3" => {
            let k = one("maximal_class_3")?;
            if !(3..=16).contains(&k) {
                return Err(invalid("maximal_class_3 needs 3 <= k <= 16"));
            }
            Ok(maximal_class_3(k as usize)
                .with_name(&format!("maximal_class_3:{k}"))
                .with_prime(3)
                .with_expected_order(3u128.pow(k as u32)))
        }
        "burnside_2_3" => {
            if !params.is_empty() {
                return Err(invalid("burnside_2_3 takes no parameters"));
            }
            Ok(heisenberg(3)
                .with_name("burnside_2_3")
                .with_prime(3)
                .with_expected_order(27))
        }
        "wreath_cp_cp" => {
            let p = one("wreath_cp_cp")?;
            if !is_prime(p) || p > 7 {
                return Err(invalid("wreath_cp_cp needs a prime <= 7"));
            }
            Ok(wreath(p as usize)
                .with_name(&format!("wreath_cp_cp:{p}"))
                .with_prime(p)
                .with_expected_order((p as u128).pow(p as u32 + 1)))
        }
        _ => Err(SchurkitError::UnknownCatalog(name.to_string())),
    }
}

fn word(letters: &[(usize, i64)]) -> Word {
    Word::from_letters(letters.iter().copied())
}

/// Append a refined chain presenting C_n: one generator per prime factor,
/// each with prime relative order and `g_i^{p_i} = g_{i+1}`. Short relative
/// orders keep every derived relator short, which matters downstream for
/// coset enumeration of ν(G).
fn cyclic_chain(n: u64, orders: &mut Vec<u64>, pows: &mut Vec<(usize, Word)>) {
    let base = orders.len();
    let mut rem = n;
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= rem {
        while rem % d == 0 {
            factors.push(d);
            rem /= d;
        }
        d += 1;
    }
    if rem > 1 {
        factors.push(rem);
    }
    for (i, &p) in factors.iter().enumerate() {
        orders.push(p);
        if i + 1 < factors.len() {
            pows.push((base + i, word(&[(base + i + 1, 1)])));
        }
    }
}

fn pcp(
    orders: Vec<u64>,
    pows: impl IntoIterator<Item = (usize, Word)>,
    conjs: impl IntoIterator<Item = ((usize, usize), Word)>,
) -> PcPresentation {
    PcPresentation::new(
        orders,
        pows.into_iter().collect::<BTreeMap<_, _>>(),
        conjs.into_iter().collect::<BTreeMap<_, _>>(),
    )
    .expect("catalog presentation is well-formed")
}

/// Upper unitriangular 3x3 matrices over F_p; exponent p for odd p.
fn heisenberg(p: u64) -> PcPresentation {
    pcp(vec![p, p, p], [], [((0, 1), word(&[(1, 1), (2, 1)]))])
}

/// C3 acting on the Eisenstein integers mod pi^{k-1} by multiplication by
/// omega = 1 + pi. Generator 1 is the acting C3; generator 1+j represents
/// pi^{j-1}. Uses 3 = 2*pi^2 + pi^3 and omega*pi^m = pi^m + pi^{m+1}.
fn maximal_class_3(k: usize) -> PcPresentation {
    let n = k; // 1 acting generator + (k-1) additive ones
    let mut pows = Vec::new();
    let mut conjs = Vec::new();
    for j in 1..n {
        // g_{1+j} is pi^{j-1}; its cube is 3*pi^{j-1} = 2*pi^{j+1} + pi^{j+2}
        let mut w = Word::identity();
        if 1 + j + 1 < n {
            w.push(1 + j + 1, 2);
        }
        if 1 + j + 2 < n {
            w.push(1 + j + 2, 1);
        }
        if !w.is_identity() {
            pows.push((j, w));
        }
        // ^s pi^{j-1} = omega pi^{j-1} = pi^{j-1} + pi^j
        if j + 1 < n {
            conjs.push(((0, j), word(&[(j, 1), (j + 1, 1)])));
        }
    }
    pcp(vec![3; n], pows, conjs)
}

/// C_p wr C_p with base coordinates u_k = (s-1)^{k-1} e_1, so the action of
/// s is unitriangular: ^s u_k = u_k u_{k+1}.
fn wreath(p: usize) -> PcPresentation {
    let mut conjs = Vec::new();
    for k in 1..p {
        conjs.push(((0, k), word(&[(k, 1), (k + 1, 1)])));
    }
    pcp(vec![p as u64; p + 1], [], conjs)
}

/// The default scan catalog: small groups spanning the hypotheses of the
/// theorem suite (metacyclic, cyclic commutator subgroup, abelian Frattini,
/// exponent-3 metabelian, odd class <= 7), orders 2 through 3^5.
pub fn default_catalog() -> Vec<PcPresentation> {
    let entries: &[(&str, &[u64])] = &[
        ("cyclic", &[2]),
        ("cyclic", &[3]),
        ("cyclic", &[4]),
        ("cyclic", &[6]),
        ("cyclic", &[8]),
        ("cyclic", &[9]),
        ("cyclic", &[12]),
        ("abelian", &[2, 2]),
        ("abelian", &[2, 2, 2]),
        ("abelian", &[4, 2]),
        ("abelian", &[3, 3]),
        ("abelian", &[9, 3]),
        ("dihedral", &[8]),
        ("dihedral", &[16]),
        ("quaternion", &[8]),
        ("heisenberg_mod", &[3]),
        ("extraspecial_minus", &[3]),
        ("burnside_2_3", &[]),
        ("cyclic", &[81]),
        ("cyclic", &[243]),
        ("wreath_cp_cp", &[3]),
        ("extraspecial_plus", &[5]),
        ("maximal_class_3", &[5]),
    ];
    entries
        .iter()
        .map(|(name, params)| catalog_group(name, params).expect("default catalog entry"))
        .collect()
}

/// Parsed form of a `catalog:` URI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogRef {
    Default,
    Group { name: String, params: Vec<u64> },
}

/// Parse `catalog:default` or `catalog:<family>[:p1,p2,...]`.
pub fn parse_catalog_uri(uri: &str) -> Result<CatalogRef> {
    let rest = uri
        .strip_prefix("catalog:")
        .ok_or_else(|| SchurkitError::Invalid(format!("not a catalog URI: {uri}")))?;
    if rest == "default" {
        return Ok(CatalogRef::Default);
    }
    let (name, params) = match rest.split_once(':') {
        None => (rest, Vec::new()),
        Some((name, tail)) => {
            let params: Vec<u64> = tail
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| invalid(format!("bad catalog parameter {t:?}")))
                })
                .collect::<Result<_>>()?;
            (name, params)
        }
    };
    if name.is_empty() {
        return Err(invalid("empty catalog family name"));
    }
    Ok(CatalogRef::Group {
        name: name.to_string(),
        params,
    })
}

/// Resolve a single-group catalog URI to a presentation.
pub fn resolve_catalog_uri(uri: &str) -> Result<PcPresentation> {
    match parse_catalog_uri(uri)? {
        CatalogRef::Default => Err(SchurkitError::Invalid(
            "catalog:default names the whole catalog, not one group".into(),
        )),
        CatalogRef::Group { name, params } => catalog_group(&name, &params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PcGroup;

    #[test]
    fn every_default_entry_is_consistent_with_expected_order() {
        for p in default_catalog() {
            let name = p.name().unwrap_or("?").to_string();
            let expected = p.expected_order().unwrap_or_else(|| p.order());
            let g = PcGroup::new(p).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(g.order(), expected, "{name}");
        }
    }

    #[test]
    fn catalog_has_at_least_twelve_groups_in_scan_range() {
        let in_range = default_catalog()
            .iter()
            .filter(|p| (2..=243).contains(&p.order()))
            .count();
        assert!(in_range >= 12, "only {in_range} groups in 2..=243");
    }

    #[test]
    fn quaternion_8_has_unique_involution() {
        let g = PcGroup::new(catalog_group("quaternion", &[8]).unwrap()).unwrap();
        let invol = g
            .elements()
            .filter(|x| !g.is_identity(x) && g.element_order(x).unwrap() == 2)
            .count();
        assert_eq!(invol, 1);
        let s = g.structure().unwrap();
        assert_eq!(s.exponent, 4);
        assert!(s.is_metacyclic.is_true());
    }

    #[test]
    fn dihedral_16_class_three() {
        let g = PcGroup::new(catalog_group("dihedral", &[16]).unwrap()).unwrap();
        let s = g.structure().unwrap();
        assert_eq!(s.order, 16);
        assert_eq!(s.nilpotency_class, Some(3));
        assert!(s.is_metacyclic.is_true());
    }

    #[test]
    fn extraspecial_exponents_differ() {
        let plus = PcGroup::new(catalog_group("extraspecial_plus", &[3]).unwrap()).unwrap();
        let minus = PcGroup::new(catalog_group("extraspecial_minus", &[3]).unwrap()).unwrap();
        assert_eq!(plus.structure().unwrap().exponent, 3);
        assert_eq!(minus.structure().unwrap().exponent, 9);
        for g in [&plus, &minus] {
            let s = g.structure().unwrap();
            assert_eq!(s.order, 27);
            assert_eq!(s.nilpotency_class, Some(2));
            assert_eq!(s.center.len(), 3);
        }
    }

    #[test]
    fn burnside_2_3_has_exponent_three() {
        let g = PcGroup::new(catalog_group("burnside_2_3", &[]).unwrap()).unwrap();
        assert_eq!(g.order(), 27);
        for x in g.elements() {
            assert!(g.is_identity(&g.power(&x, 3).unwrap()));
        }
        assert_eq!(g.structure().unwrap().derived_length, 2);
    }

    #[test]
    fn wreath_3_structure() {
        let g = PcGroup::new(catalog_group("wreath_cp_cp", &[3]).unwrap()).unwrap();
        let s = g.structure().unwrap();
        assert_eq!(s.order, 81);
        assert_eq!(s.nilpotency_class, Some(3));
        assert_eq!(s.exponent, 9);
        assert_eq!(s.derived_length, 2);
    }

    #[test]
    fn wreath_2_is_dihedral_8() {
        let g = PcGroup::new(catalog_group("wreath_cp_cp", &[2]).unwrap()).unwrap();
        let s = g.structure().unwrap();
        assert_eq!(s.order, 8);
        assert_eq!(s.nilpotency_class, Some(2));
        assert_eq!(s.exponent, 4);
        assert!(s.is_metacyclic.is_true()); // D8
    }

    #[test]
    fn maximal_class_groups_have_maximal_class() {
        for k in 3..=6u64 {
            let g = PcGroup::new(catalog_group("maximal_class_3", &[k]).unwrap()).unwrap();
            let s = g.structure().unwrap();
            assert_eq!(s.order, 3u64.pow(k as u32), "k={k}");
            assert_eq!(s.nilpotency_class, Some(k as u32 - 1), "k={k}");
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(matches!(
            catalog_group("extraspecial_plus", &[2]),
            Err(SchurkitError::InvalidParams(_))
        ));
        assert!(matches!(
            catalog_group("extraspecial_plus", &[4]),
            Err(SchurkitError::InvalidParams(_))
        ));
        assert!(matches!(
            catalog_group("nope", &[3]),
            Err(SchurkitError::UnknownCatalog(_))
        ));
        assert!(catalog_group("dihedral", &[7]).is_err());
        assert!(catalog_group("cyclic", &[1]).is_err());
    }

    #[test]
    fn uri_parsing() {
        assert_eq!(
            parse_catalog_uri("catalog:default").unwrap(),
            CatalogRef::Default
        );
        assert_eq!(
            parse_catalog_uri("catalog:abelian:2,2").unwrap(),
            CatalogRef::Group {
                name: "abelian".into(),
                params: vec![2, 2]
            }
        );
        assert_eq!(
            parse_catalog_uri("catalog:burnside_2_3").unwrap(),
            CatalogRef::Group {
                name: "burnside_2_3".into(),
                params: vec![]
            }
        );
        assert!(parse_catalog_uri("file:x").is_err());
        assert!(parse_catalog_uri("catalog:cyclic:x").is_err());
        let p = resolve_catalog_uri("catalog:heisenberg_mod:3").unwrap();
        assert_eq!(p.order(), 27);
    }
}

//! Validated groups, element arithmetic, and structure computation.
//!
//! [`PcGroup`] wraps a presentation that passed the consistency check; all
//! downstream operations (structure reports, tensor squares, scans) accept
//! only `PcGroup`, so collection never runs against an inconsistent
//! presentation.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use serde::Serialize;

use crate::collect::Collector;
use crate::error::SchurkitError;
use crate::pcp::{ConsistencyReport, PcPresentation};
use crate::word::Word;
use crate::Result;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Orders above this are rejected by the table-based structure machinery.
pub const TABLE_CAP: u128 = 4096;

/// An element in collected normal form, tagged with its owning group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group_id: u64,
    exps: Vec<u32>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }
}

/// A consistent finite polycyclic group.
#[derive(Debug)]
pub struct PcGroup {
    id: u64,
    pcp: PcPresentation,
    coll: Collector,
    table: OnceLock<Option<GroupTable>>,
}

impl PcGroup {
    /// Validate and wrap a presentation. Fails if the consistency check
    /// reports any overlap failure.
    pub fn new(pcp: PcPresentation) -> Result<Self> {
        let report = crate::collect::check_consistency(&pcp);
        if !report.is_consistent() {
            return Err(SchurkitError::Inconsistent {
                failures: report.failures.len(),
            });
        }
        let coll = Collector::new(&pcp)?;
        Ok(PcGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            pcp,
            coll,
            table: OnceLock::new(),
        })
    }

    /// Like [`PcGroup::new`] but returning the full report on failure.
    pub fn new_with_report(pcp: PcPresentation) -> std::result::Result<Self, ConsistencyReport> {
        let report = crate::collect::check_consistency(&pcp);
        if !report.is_consistent() {
            return Err(report);
        }
        Ok(PcGroup::new(pcp).expect("consistent presentation"))
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pcp
    }

    pub fn collector(&self) -> &Collector {
        &self.coll
    }

    pub fn order(&self) -> u128 {
        self.pcp.order()
    }

    pub fn ngens(&self) -> usize {
        self.pcp.ngens()
    }

    pub fn owns(&self, x: &GroupElement) -> bool {
        x.group_id == self.id
    }

    fn claim(&self, exps: Vec<u32>) -> GroupElement {
        GroupElement {
            group_id: self.id,
            exps,
        }
    }

    fn check_owned(&self, x: &GroupElement) -> Result<()> {
        if self.owns(x) {
            Ok(())
        } else {
            Err(SchurkitError::ForeignElement)
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.claim(self.coll.identity())
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.coll.identity();
        e[i] = 1;
        self.claim(e)
    }

    pub fn normalize(&self, w: &Word) -> Result<GroupElement> {
        Ok(self.claim(self.coll.normalize_word(w)?.into_exps()))
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_owned(x)?;
        self.check_owned(y)?;
        Ok(self.claim(self.coll.multiply(&x.exps, &y.exps)))
    }

    pub fn invert(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_owned(x)?;
        Ok(self.claim(self.coll.invert_exps(&x.exps)))
    }

    pub fn power(&self, x: &GroupElement, n: i64) -> Result<GroupElement> {
        self.check_owned(x)?;
        Ok(self.claim(self.coll.power(&x.exps, n)))
    }

    /// Left commutator `[x, y] = x y x^-1 y^-1`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let xy = self.multiply(x, y)?;
        let xinv = self.invert(x)?;
        let yinv = self.invert(y)?;
        let t = self.multiply(&xy, &xinv)?;
        self.multiply(&t, &yinv)
    }

    /// Right-normed iterated commutator: `[a, b, c] = [a, [b, c]]`.
    pub fn commutator_list(&self, xs: &[GroupElement]) -> Result<GroupElement> {
        let mut iter = xs.iter().rev();
        let mut acc = iter
            .next()
            .ok_or_else(|| SchurkitError::Invalid("empty commutator list".into()))?
            .clone();
        for x in iter {
            acc = self.commutator(x, &acc)?;
        }
        Ok(acc)
    }

    /// Left conjugate `^x y = x y x^-1`.
    pub fn conjugate(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let xy = self.multiply(x, y)?;
        let xinv = self.invert(x)?;
        self.multiply(&xy, &xinv)
    }

    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        self.check_owned(x)?;
        Ok(self.coll.element_order(&x.exps))
    }

    pub fn is_identity(&self, x: &GroupElement) -> bool {
        x.exps.iter().all(|&e| e == 0)
    }

    /// Mixed-radix element id (relative orders as digits, generator 1 most
    /// significant). Requires the order to fit in u64.
    pub fn id_of(&self, x: &GroupElement) -> u64 {
        let mut id: u64 = 0;
        for (k, &e) in x.exps.iter().enumerate() {
            id = id * self.pcp.relative_orders()[k] + e as u64;
        }
        id
    }

    pub fn element_from_id(&self, mut id: u64) -> GroupElement {
        let n = self.ngens();
        let mut exps = vec![0u32; n];
        for k in (0..n).rev() {
            let r = self.pcp.relative_orders()[k];
            exps[k] = (id % r) as u32;
            id /= r;
        }
        self.claim(exps)
    }

    /// All elements in id order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let m = self.order() as u64;
        (0..m).map(move |id| self.element_from_id(id))
    }

    /// The multiplication table over element ids, built on first use.
    /// `None` when the order exceeds [`TABLE_CAP`].
    pub fn table(&self) -> Option<&GroupTable> {
        self.table
            .get_or_init(|| {
                if self.order() > TABLE_CAP {
                    return None;
                }
                let m = self.order() as usize;
                let mut mul = vec![0u32; m * m];
                let elems: Vec<GroupElement> = self.elements().collect();
                for (a, x) in elems.iter().enumerate() {
                    for (b, y) in elems.iter().enumerate() {
                        let p = self.coll.multiply(&x.exps, &y.exps);
                        mul[a * m + b] = self.id_of(&self.claim(p)) as u32;
                    }
                }
                let mut inv = vec![0u32; m];
                for (a, x) in elems.iter().enumerate() {
                    inv[a] = self.id_of(&self.claim(self.coll.invert_exps(&x.exps))) as u32;
                }
                Some(GroupTable { m, mul, inv })
            })
            .as_ref()
    }

    fn table_required(&self) -> Result<&GroupTable> {
        self.table().ok_or_else(|| {
            SchurkitError::ResourceLimit(format!(
                "structure computation requires order <= {TABLE_CAP} (got {})",
                self.order()
            ))
        })
    }

    /// Full structural analysis.
    pub fn structure(&self) -> Result<Structure> {
        Structure::compute(self)
    }

    /// Consistent presentation of `G/N` for a normal subgroup `N`.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<PcPresentation> {
        let t = self.table_required()?;
        if !t.is_subgroup(&n.ids) {
            return Err(SchurkitError::Invalid("not a subgroup".into()));
        }
        if !t.is_normal(&n.ids) {
            return Err(SchurkitError::NotNormal);
        }
        let q = t.quotient_table(&n.ids);
        q.pc_presentation()
    }

    pub fn subgroup_from_elements(&self, gens: &[GroupElement]) -> Result<SubgroupSet> {
        let t = self.table_required()?;
        for g in gens {
            self.check_owned(g)?;
        }
        let ids: Vec<u32> = gens.iter().map(|g| self.id_of(g) as u32).collect();
        Ok(SubgroupSet {
            ids: t.closure(&ids),
        })
    }
}

/// A subgroup as a sorted set of element ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgroupSet {
    pub ids: Vec<u32>,
}

impl SubgroupSet {
    pub fn order(&self) -> u64 {
        self.ids.len() as u64
    }
    pub fn contains(&self, id: u32) -> bool {
        self.ids.binary_search(&id).is_ok()
    }
    pub fn is_trivial(&self) -> bool {
        self.ids.len() == 1
    }
}

/// Dense multiplication table over element ids; the workhorse for subgroup
/// and series computations at desk scale.
#[derive(Debug)]
pub struct GroupTable {
    pub m: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.m + b as usize]
    }
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        // [a, b] = a b a^-1 b^-1
        self.mul(self.mul(self.mul(a, b), self.inv(a)), self.inv(b))
    }
    pub fn conj(&self, a: u32, b: u32) -> u32 {
        // ^a b
        self.mul(self.mul(a, b), self.inv(a))
    }
    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = 0u32;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent_of(&self, ids: &[u32]) -> u64 {
        ids.iter()
            .fold(1u64, |acc, &x| num_integer::lcm(acc, self.element_order(x)))
    }

    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.m];
        seen[0] = true;
        let mut frontier = vec![0u32];
        let mut all = vec![0u32];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    all.push(y);
                    frontier.push(y);
                }
            }
        }
        all.sort_unstable();
        all
    }

    pub fn is_subgroup(&self, ids: &[u32]) -> bool {
        let set: HashSet<u32> = ids.iter().copied().collect();
        ids.iter()
            .all(|&a| ids.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, ids: &[u32]) -> bool {
        let set: HashSet<u32> = ids.iter().copied().collect();
        (0..self.m as u32).all(|g| ids.iter().all(|&x| set.contains(&self.conj(g, x))))
    }

    pub fn is_abelian_subset(&self, ids: &[u32]) -> bool {
        ids.iter()
            .all(|&a| ids.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic_subset(&self, ids: &[u32]) -> bool {
        let n = ids.len() as u64;
        ids.iter().any(|&a| self.element_order(a) == n)
    }

    /// `[A, B]` for subgroups A, B (at least one normal in the generated
    /// group): closure of the pairwise commutators.
    pub fn commutator_subgroup(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut gens: BTreeSet<u32> = BTreeSet::new();
        for &x in a {
            for &y in b {
                gens.insert(self.commutator(x, y));
            }
        }
        let gens: Vec<u32> = gens.into_iter().collect();
        self.closure(&gens)
    }

    pub fn center(&self) -> Vec<u32> {
        let all: Vec<u32> = (0..self.m as u32).collect();
        self.elements_central_mod(&all, &[0])
    }

    /// `{ g : [g, h] in z for all h }` (the preimage of the centre of G/Z).
    fn elements_central_mod(&self, candidates: &[u32], z: &[u32]) -> Vec<u32> {
        let zset: HashSet<u32> = z.iter().copied().collect();
        candidates
            .iter()
            .copied()
            .filter(|&g| (0..self.m as u32).all(|h| zset.contains(&self.commutator(g, h))))
            .collect()
    }

    pub fn upper_central_series(&self) -> Vec<Vec<u32>> {
        let all: Vec<u32> = (0..self.m as u32).collect();
        let mut series = vec![vec![0u32]];
        loop {
            let prev = series.last().unwrap();
            let next = self.elements_central_mod(&all, prev);
            if next.len() == prev.len() {
                break;
            }
            series.push(next);
            if series.last().unwrap().len() == self.m {
                break;
            }
        }
        series
    }

    pub fn lower_central_series(&self) -> Vec<Vec<u32>> {
        let all: Vec<u32> = (0..self.m as u32).collect();
        let mut series = vec![all.clone()];
        loop {
            let prev = series.last().unwrap();
            let next = self.commutator_subgroup(prev, &all);
            if next.len() == prev.len() {
                break;
            }
            let done = next.len() == 1;
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn derived_series(&self) -> Vec<Vec<u32>> {
        let all: Vec<u32> = (0..self.m as u32).collect();
        let mut series = vec![all];
        loop {
            let prev = series.last().unwrap();
            let next = self.commutator_subgroup(prev, prev);
            if next.len() == prev.len() {
                break;
            }
            let done = next.len() == 1;
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    /// Subgroup generated by the n-th powers of the given subgroup.
    pub fn agemo(&self, ids: &[u32], n: u64) -> Vec<u32> {
        let gens: BTreeSet<u32> = ids.iter().map(|&x| self.pow(x, n)).collect();
        let gens: Vec<u32> = gens.into_iter().collect();
        self.closure(&gens)
    }

    /// All normal subgroups: the join-closure of the normal closures of
    /// single elements.
    pub fn normal_subgroups(&self) -> Vec<Vec<u32>> {
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        found.insert(vec![0u32]);
        for g in 1..self.m as u32 {
            found.insert(self.normal_closure(&[g]));
        }
        loop {
            let snapshot: Vec<Vec<u32>> = found.iter().cloned().collect();
            let before = found.len();
            for (i, a) in snapshot.iter().enumerate() {
                for b in snapshot.iter().skip(i + 1) {
                    let mut gens: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
                    gens.dedup();
                    found.insert(self.closure(&gens));
                }
            }
            if found.len() == before {
                break;
            }
        }
        found.into_iter().collect()
    }

    pub fn normal_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut work: Vec<u32> = gens.to_vec();
        let mut current = self.closure(&work);
        loop {
            let mut grew = false;
            let mut extra = Vec::new();
            let set: HashSet<u32> = current.iter().copied().collect();
            for &x in &current {
                for g in 0..self.m as u32 {
                    let c = self.conj(g, x);
                    if !set.contains(&c) {
                        extra.push(c);
                        grew = true;
                    }
                }
                if grew {
                    break;
                }
            }
            if !grew {
                return current;
            }
            work.extend(extra);
            current = self.closure(&work);
        }
    }

    /// All subgroups, by closing single generators and extending; intended
    /// for small orders (Frattini fallback).
    pub fn all_subgroups(&self) -> Vec<Vec<u32>> {
        let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
        found.insert(vec![0u32]);
        let mut frontier: Vec<Vec<u32>> = vec![vec![0u32]];
        while let Some(h) = frontier.pop() {
            for g in 1..self.m as u32 {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let j = self.closure(&gens);
                if found.insert(j.clone()) {
                    frontier.push(j);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn frattini_via_lattice(&self) -> Vec<u32> {
        let subs = self.all_subgroups();
        let maximal: Vec<&Vec<u32>> = subs
            .iter()
            .filter(|h| h.len() < self.m)
            .filter(|h| {
                !subs
                    .iter()
                    .any(|k| k.len() < self.m && k.len() > h.len() && is_subset(h, k))
            })
            .collect();
        let mut inter: Vec<u32> = (0..self.m as u32).collect();
        for mx in maximal {
            inter.retain(|x| mx.binary_search(x).is_ok());
        }
        inter
    }

    /// Cosets of a normal subgroup as a quotient table.
    pub fn quotient_table(&self, n: &[u32]) -> QuotientTable {
        let mut coset_of = vec![u32::MAX; self.m];
        let mut reps: Vec<u32> = Vec::new();
        for x in 0..self.m as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &nn in n {
                coset_of[self.mul(x, nn) as usize] = c;
            }
        }
        let q = reps.len();
        let mut mul = vec![0u32; q * q];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                mul[a * q + b] = coset_of[self.mul(ra, rb) as usize];
            }
        }
        let mut inv = vec![0u32; q];
        for (a, &ra) in reps.iter().enumerate() {
            inv[a] = coset_of[self.inv(ra) as usize];
        }
        QuotientTable {
            table: GroupTable { m: q, mul, inv },
            coset_of,
            reps,
        }
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// A quotient group realized on coset ids.
pub struct QuotientTable {
    pub table: GroupTable,
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl QuotientTable {
    /// Recover a consistent power-commutator presentation from the bare
    /// multiplication table by building an ascending chain of normal
    /// subgroups with cyclic prime factors.
    pub fn pc_presentation(&self) -> Result<PcPresentation> {
        self.table.pc_presentation()
    }
}

impl GroupTable {
    pub fn pc_presentation(&self) -> Result<PcPresentation> {
        if self.m == 1 {
            // The format has no empty presentation; encode the trivial group
            // is not required by callers, so reject.
            return Err(SchurkitError::Invalid(
                "trivial quotient has no pc presentation in this format".into(),
            ));
        }
        // Ascending chain 1 = N_0 < N_1 < ... < N_k = G, each normal in G
        // with N_{i+1}/N_i cyclic of prime order. Exists for every group the
        // PC-FILE format can express.
        let mut chain: Vec<Vec<u32>> = vec![vec![0u32]];
        let mut chain_gens: Vec<(u32, u64)> = Vec::new(); // (element, prime)
        while chain.last().unwrap().len() < self.m {
            let current = chain.last().unwrap().clone();
            let set: HashSet<u32> = current.iter().copied().collect();
            let mut step: Option<(u32, u64, Vec<u32>)> = None;
            'search: for x in 1..self.m as u32 {
                if set.contains(&x) {
                    continue;
                }
                // order of xN in G/N
                let mut k = 1u64;
                let mut y = x;
                while !set.contains(&y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                if !is_prime(k) {
                    continue;
                }
                let mut gens = current.clone();
                gens.push(x);
                let bigger = self.closure(&gens);
                if bigger.len() as u64 != current.len() as u64 * k {
                    continue;
                }
                if self.is_normal(&bigger) {
                    step = Some((x, k, bigger));
                    break 'search;
                }
            }
            let (x, p, bigger) =
                step.ok_or_else(|| SchurkitError::Invalid("no polycyclic flag found".into()))?;
            chain_gens.push((x, p));
            chain.push(bigger);
        }
        // Generators top-down: g_1 is the last step.
        chain_gens.reverse();
        chain.reverse(); // chain[k] = <g_{k+1}, ..., g_m> together with 1
        let ngens = chain_gens.len();
        let orders: Vec<u64> = chain_gens.iter().map(|&(_, p)| p).collect();
        let digits = |mut x: u32| -> Vec<u32> {
            let mut out = vec![0u32; ngens];
            for k in 0..ngens {
                let next: HashSet<u32> = chain[k + 1].iter().copied().collect();
                let g = chain_gens[k].0;
                let ginv = self.inv(g);
                let mut e = 0u32;
                while !next.contains(&x) {
                    x = self.mul(ginv, x);
                    e += 1;
                }
                out[k] = e;
            }
            out
        };
        let word_of = |digs: &[u32]| -> Word {
            Word::from_letters(digs.iter().enumerate().map(|(k, &e)| (k, e as i64)))
        };
        let mut pows = std::collections::BTreeMap::new();
        let mut conjs = std::collections::BTreeMap::new();
        for (k, &(g, p)) in chain_gens.iter().enumerate() {
            let d = digits(self.pow(g, p));
            let w = word_of(&d);
            if !w.is_identity() {
                pows.insert(k, w);
            }
            for (j, &(h, _)) in chain_gens.iter().enumerate().skip(k + 1) {
                let d = digits(self.conj(g, h));
                let w = word_of(&d);
                if w.letters() != [(j, 1)] {
                    conjs.insert((k, j), w);
                }
            }
        }
        PcPresentation::new(orders, pows, conjs)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Tri-state predicate for searches with a bounded envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Maybe {
    True,
    False,
    Unknown,
}

impl Maybe {
    pub fn is_true(self) -> bool {
        self == Maybe::True
    }
}

/// Rich structure data (element sets retained for downstream checks).
pub struct Structure {
    pub order: u64,
    pub prime: Option<u64>,
    pub exponent: u64,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<u32>,
    pub derived_length: u32,
    pub lower_central: Vec<Vec<u32>>,
    pub upper_central: Vec<Vec<u32>>,
    pub derived: Vec<Vec<u32>>,
    pub center: Vec<u32>,
    pub frattini: Option<Vec<u32>>,
    pub agemo_p: Option<Vec<u32>>,
    pub exponent_center: u64,
    pub exponent_central_quotient: u64,
    pub is_metacyclic: Maybe,
    pub commutator_cyclic: bool,
    pub frattini_abelian: Option<bool>,
    pub frattini_powerful: Option<bool>,
    pub commutator_powerful: Option<bool>,
    pub gamma_p_plus_1_powerful: Option<bool>,
    pub min_generators: Option<u32>,
    /// Smallest l such that some abelian normal subgroup has index p^l
    /// (p-groups; None when not computed).
    pub best_abelian_normal_index_exp: Option<u32>,
    pub exponent_best_abelian_normal: Option<u64>,
    pub exponent_quotient_best_abelian_normal: Option<u64>,
    pub normal_subgroups: Vec<Vec<u32>>,
}

impl Structure {
    fn compute(g: &PcGroup) -> Result<Structure> {
        let t = g.table_required()?;
        let m = t.m;
        let order = m as u64;
        let prime = prime_power_base(order);

        let all: Vec<u32> = (0..m as u32).collect();
        let exponent = t.exponent_of(&all);

        let lower = t.lower_central_series();
        let upper = t.upper_central_series();
        let derived = t.derived_series();
        let center = t.center();

        let is_nilpotent = lower.last().unwrap().len() == 1;
        let nilpotency_class = if is_nilpotent {
            Some((lower.len() - 1) as u32)
        } else {
            None
        };
        let derived_length = (derived.len() - 1).max(1) as u32;
        let is_abelian = derived_length == 1 && derived.last().unwrap().len() == 1 || m == 1;

        let commutator = if derived.len() > 1 {
            derived[1].clone()
        } else {
            vec![0u32]
        };

        let agemo_p = prime.map(|p| t.agemo(&all, p));
        let frattini = if let (Some(_), Some(ap)) = (prime, &agemo_p) {
            // For p-groups Phi(G) = G^p G'.
            let mut gens: Vec<u32> = ap.iter().chain(commutator.iter()).copied().collect();
            gens.dedup();
            Some(t.closure(&gens))
        } else if is_nilpotent {
            // Phi(G) = intersection over primes p | |G| of G' G^p.
            let mut inter: Option<Vec<u32>> = None;
            for p in prime_divisors(order) {
                let ap = t.agemo(&all, p);
                let mut gens: Vec<u32> = ap.iter().chain(commutator.iter()).copied().collect();
                gens.dedup();
                let sub = t.closure(&gens);
                inter = Some(match inter {
                    None => sub,
                    Some(prev) => prev.into_iter().filter(|x| sub.binary_search(x).is_ok()).collect(),
                });
            }
            inter
        } else if m <= 256 {
            Some(t.frattini_via_lattice())
        } else {
            None
        };

        let exponent_center = t.exponent_of(&center);
        let qc = t.quotient_table(&center);
        let exponent_central_quotient = {
            let ids: Vec<u32> = (0..qc.table.m as u32).collect();
            qc.table.exponent_of(&ids)
        };

        let normal_subgroups = t.normal_subgroups();

        let is_metacyclic = {
            let mut verdict = Maybe::False;
            for n in &normal_subgroups {
                if !t.is_cyclic_subset(n) {
                    continue;
                }
                let q = t.quotient_table(n);
                let qids: Vec<u32> = (0..q.table.m as u32).collect();
                if q.table.is_cyclic_subset(&qids) {
                    verdict = Maybe::True;
                    break;
                }
            }
            verdict
        };

        let commutator_cyclic = t.is_cyclic_subset(&commutator);
        let frattini_abelian = frattini.as_ref().map(|f| t.is_abelian_subset(f));

        // Powerful predicates: defined here for odd p only (H powerful iff
        // [H, H] <= H^p).
        let powerful = |h: &[u32]| -> Option<bool> {
            let p = prime?;
            if p == 2 {
                return None;
            }
            let hp = t.agemo(h, p);
            let hh = t.commutator_subgroup(h, h);
            Some(hh.iter().all(|x| hp.binary_search(x).is_ok()))
        };
        let frattini_powerful = frattini.as_ref().and_then(|f| powerful(f));
        let commutator_powerful = powerful(&commutator);
        let gamma_p_plus_1_powerful = prime.and_then(|p| {
            let idx = (p + 1) as usize; // gamma_{p+1} is lower[(p+1)-1]
            let sub = if idx - 1 < lower.len() {
                lower[idx - 1].clone()
            } else {
                vec![0u32]
            };
            powerful(&sub)
        });

        let min_generators = if t.is_cyclic_subset(&all) {
            Some(1)
        } else if let (Some(p), Some(f)) = (prime, &frattini) {
            let quot = order / f.len() as u64;
            Some(quot.ilog(p) as u32)
        } else {
            None
        };

        let (best_abelian_normal_index_exp, exponent_best_abelian_normal, exponent_quot_ban) =
            if let Some(p) = prime {
                let mut best: Option<(u32, u64, u64)> = None;
                for n in &normal_subgroups {
                    if !t.is_abelian_subset(n) {
                        continue;
                    }
                    let index = order / n.len() as u64;
                    let l = index.ilog(p) as u32;
                    let better = match best {
                        None => true,
                        Some((bl, _, _)) => l < bl,
                    };
                    if better {
                        let en = t.exponent_of(n);
                        let q = t.quotient_table(n);
                        let qids: Vec<u32> = (0..q.table.m as u32).collect();
                        let eq = q.table.exponent_of(&qids);
                        best = Some((l, en, eq));
                    }
                }
                match best {
                    Some((l, en, eq)) => (Some(l), Some(en), Some(eq)),
                    None => (None, None, None),
                }
            } else {
                (None, None, None)
            };

        Ok(Structure {
            order,
            prime,
            exponent,
            is_abelian,
            is_nilpotent,
            nilpotency_class,
            derived_length,
            lower_central: lower,
            upper_central: upper,
            derived,
            center,
            frattini,
            agemo_p,
            exponent_center,
            exponent_central_quotient,
            is_metacyclic,
            commutator_cyclic,
            frattini_abelian,
            frattini_powerful,
            commutator_powerful,
            gamma_p_plus_1_powerful,
            min_generators,
            best_abelian_normal_index_exp,
            exponent_best_abelian_normal,
            exponent_quotient_best_abelian_normal: exponent_quot_ban,
            normal_subgroups,
        })
    }

    pub fn derived_subgroup(&self) -> &[u32] {
        if self.derived.len() > 1 {
            &self.derived[1]
        } else {
            &self.derived[0][..1]
        }
    }

    /// The weight of a non-identity element: the unique n with
    /// x in gamma_n \ gamma_{n+1}.
    pub fn weight_of_id(&self, id: u32) -> Result<u32> {
        if id == 0 {
            return Err(SchurkitError::IdentityWeight);
        }
        if !self.is_nilpotent {
            return Err(SchurkitError::Invalid(
                "weight is defined only for nilpotent groups".into(),
            ));
        }
        let mut w = 1;
        for (k, term) in self.lower_central.iter().enumerate().skip(1) {
            if term.binary_search(&id).is_ok() {
                w = k + 1;
            } else {
                break;
            }
        }
        Ok(w as u32)
    }

    pub fn report(&self) -> StructureReport {
        StructureReport {
            order: self.order,
            prime: self.prime,
            exponent: self.exponent,
            is_abelian: self.is_abelian,
            is_nilpotent: self.is_nilpotent,
            nilpotency_class: self.nilpotency_class,
            derived_length: self.derived_length,
            lower_central_orders: self.lower_central.iter().map(|s| s.len() as u64).collect(),
            upper_central_orders: self.upper_central.iter().map(|s| s.len() as u64).collect(),
            derived_orders: self.derived.iter().map(|s| s.len() as u64).collect(),
            center_order: self.center.len() as u64,
            frattini_order: self.frattini.as_ref().map(|f| f.len() as u64),
            agemo_order: self.agemo_p.as_ref().map(|f| f.len() as u64),
            exponent_center: self.exponent_center,
            exponent_central_quotient: self.exponent_central_quotient,
            is_metacyclic: self.is_metacyclic,
            commutator_cyclic: self.commutator_cyclic,
            frattini_abelian: self.frattini_abelian,
            frattini_powerful: self.frattini_powerful,
            commutator_powerful: self.commutator_powerful,
            gamma_p_plus_1_powerful: self.gamma_p_plus_1_powerful,
            min_generators: self.min_generators,
            best_abelian_normal_index_exp: self.best_abelian_normal_index_exp,
        }
    }
}

/// Serializable summary of a [`Structure`].
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub order: u64,
    pub prime: Option<u64>,
    pub exponent: u64,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<u32>,
    pub derived_length: u32,
    pub lower_central_orders: Vec<u64>,
    pub upper_central_orders: Vec<u64>,
    pub derived_orders: Vec<u64>,
    pub center_order: u64,
    pub frattini_order: Option<u64>,
    pub agemo_order: Option<u64>,
    pub exponent_center: u64,
    pub exponent_central_quotient: u64,
    pub is_metacyclic: Maybe,
    pub commutator_cyclic: bool,
    pub frattini_abelian: Option<bool>,
    pub frattini_powerful: Option<bool>,
    pub commutator_powerful: Option<bool>,
    pub gamma_p_plus_1_powerful: Option<bool>,
    pub min_generators: Option<u32>,
    pub best_abelian_normal_index_exp: Option<u32>,
}

pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(n) // n itself prime
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcp::parse_pc_presentation;

    fn group(text: &str) -> PcGroup {
        PcGroup::new(parse_pc_presentation(text).unwrap()).unwrap()
    }

    fn heisenberg() -> PcGroup {
        group("gens 3; orders 3 3 3; conj 1 2 -> g2*g3; pow * -> id")
    }

    #[test]
    fn rejects_inconsistent_presentation() {
        let pcp = parse_pc_presentation("gens 3; orders 3 3 3; conj 1 2 -> g3; pow * -> id").unwrap();
        assert!(matches!(
            PcGroup::new(pcp),
            Err(SchurkitError::Inconsistent { .. })
        ));
    }

    #[test]
    fn foreign_elements_rejected() {
        let g = group("gens 1; orders 8");
        let h = group("gens 1; orders 8");
        let x = g.generator(0);
        assert!(matches!(
            h.multiply(&x, &x),
            Err(SchurkitError::ForeignElement)
        ));
    }

    #[test]
    fn c8_inverses() {
        let g = group("gens 1; orders 8");
        for x in g.elements() {
            let inv = g.invert(&x).unwrap();
            assert!(g.is_identity(&g.multiply(&x, &inv).unwrap()));
        }
    }

    #[test]
    fn heisenberg_structure() {
        let g = heisenberg();
        let s = g.structure().unwrap();
        assert_eq!(s.order, 27);
        assert_eq!(s.nilpotency_class, Some(2));
        assert_eq!(s.exponent, 3);
        assert_eq!(s.center.len(), 3);
        assert_eq!(s.exponent_center, 3);
        assert!(s.commutator_cyclic);
        assert_eq!(s.derived_length, 2);
        // weight of the central generator g3 is 2
        let g3 = g.generator(2);
        assert_eq!(s.weight_of_id(g.id_of(&g3) as u32).unwrap(), 2);
        let g1 = g.generator(0);
        assert_eq!(s.weight_of_id(g.id_of(&g1) as u32).unwrap(), 1);
        assert!(matches!(
            s.weight_of_id(0),
            Err(SchurkitError::IdentityWeight)
        ));
    }

    #[test]
    fn heisenberg_commutator_is_central_generator() {
        let g = heisenberg();
        let c = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
        // [g1, g2] = g3^{+-1}
        assert_eq!(c.exponents()[0], 0);
        assert_eq!(c.exponents()[1], 0);
        assert_ne!(c.exponents()[2], 0);
        assert_eq!(g.power(&g.generator(0), 3).unwrap(), g.identity());
    }

    #[test]
    fn dihedral8_structure() {
        let g = group("gens 2; orders 2 4; conj 1 2 -> g2^3");
        let s = g.structure().unwrap();
        assert_eq!(s.order, 8);
        assert_eq!(s.nilpotency_class, Some(2));
        assert!(s.is_metacyclic.is_true());
        assert_eq!(s.exponent_central_quotient, 2);
        assert_eq!(s.exponent, 4);
        assert!(s.commutator_cyclic);
    }

    #[test]
    fn c12_structure_abelian() {
        let g = group("gens 2; orders 4 3");
        let s = g.structure().unwrap();
        assert_eq!(s.order, 12);
        assert_eq!(s.nilpotency_class, Some(1));
        assert_eq!(s.derived_length, 1);
        assert_eq!(s.exponent, 12);
        assert_eq!(s.center.len(), 12);
        // Frattini of C12 is C2.
        assert_eq!(s.frattini.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn heisenberg_quotient_by_center_is_elementary_abelian() {
        let g = heisenberg();
        let s = g.structure().unwrap();
        let center = SubgroupSet {
            ids: s.center.clone(),
        };
        let q = g.quotient(&center).unwrap();
        assert_eq!(q.order(), 9);
        let qg = PcGroup::new(q).unwrap();
        let qs = qg.structure().unwrap();
        assert!(qs.is_abelian);
        assert_eq!(qs.exponent, 3);
    }

    #[test]
    fn d8_quotient_by_center_is_klein() {
        let g = group("gens 2; orders 2 4; conj 1 2 -> g2^3");
        let s = g.structure().unwrap();
        let q = g
            .quotient(&SubgroupSet {
                ids: s.center.clone(),
            })
            .unwrap();
        assert_eq!(q.order(), 4);
        let qg = PcGroup::new(q).unwrap();
        let qs = qg.structure().unwrap();
        assert!(qs.is_abelian);
        assert_eq!(qs.exponent, 2);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = group("gens 2; orders 2 4; conj 1 2 -> g2^3");
        // <g1> is not normal in D8.
        let sub = g.subgroup_from_elements(&[g.generator(0)]).unwrap();
        assert!(matches!(g.quotient(&sub), Err(SchurkitError::NotNormal)));
    }

    #[test]
    fn quotient_by_whole_group_is_trivial_and_rejected() {
        let g = group("gens 1; orders 3");
        let all = SubgroupSet { ids: vec![0, 1, 2] };
        assert!(g.quotient(&all).is_err());
    }
}

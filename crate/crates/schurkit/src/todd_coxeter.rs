//! Todd-Coxeter coset enumeration (HLT with lookahead) over the trivial
//! subgroup, plus a regular-action view of the enumerated group.

use crate::error::{EnumStats, SchurkitError};
use crate::fp::FpPresentation;
use crate::Result;

const UNDEF: u32 = u32::MAX;

/// Closed coset table: the regular action of the enumerated group on itself.
/// Coset 0 is the identity; coset ids double as element ids.
#[derive(Debug)]
pub struct CosetTable {
    pub ngens: usize,
    pub ncosets: usize,
    /// row-major: `action[c * 2*ngens + col]`, columns alternating gen / inverse.
    action: Vec<u32>,
    /// BFS spanning tree: `tree[c] = (parent coset, signed generator)` with
    /// `parent * gen = c`; undefined for coset 0.
    tree: Vec<(u32, i32)>,
}

impl CosetTable {
    fn col(g: i32) -> usize {
        let k = (g.unsigned_abs() as usize - 1) * 2;
        if g > 0 {
            k
        } else {
            k + 1
        }
    }

    pub fn apply_gen(&self, c: u32, g: i32) -> u32 {
        self.action[c as usize * 2 * self.ngens + Self::col(g)]
    }

    pub fn apply_word(&self, mut c: u32, w: &[i32]) -> u32 {
        for &g in w {
            c = self.apply_gen(c, g);
        }
        c
    }

    /// The element id of a word (its action on the identity coset).
    pub fn element_of(&self, w: &[i32]) -> u32 {
        self.apply_word(0, w)
    }

    /// A representative word for a coset, from the BFS spanning tree.
    pub fn rep_word(&self, mut c: u32) -> Vec<i32> {
        let mut path = Vec::new();
        while c != 0 {
            let (p, g) = self.tree[c as usize];
            path.push(g);
            c = p;
        }
        path.reverse();
        path
    }

    /// Product of two elements in the regular action.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        // a * rep(b): walk b's tree path applied to a.
        let mut path = Vec::new();
        let mut c = b;
        while c != 0 {
            let (p, g) = self.tree[c as usize];
            path.push(g);
            c = p;
        }
        let mut out = a;
        for &g in path.iter().rev() {
            out = self.apply_gen(out, g);
        }
        out
    }

    pub fn inv(&self, a: u32) -> u32 {
        let mut path = Vec::new();
        let mut c = a;
        while c != 0 {
            let (p, g) = self.tree[c as usize];
            path.push(-g);
            c = p;
        }
        let mut out = 0;
        for &g in &path {
            out = self.apply_gen(out, g);
        }
        out
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut out = 0;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        out
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

    /// Row-major dump: one line per coset listing the images under
    /// g1, g1^-1, g2, g2^-1, ...
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in 0..self.ncosets {
            let row: Vec<String> = (0..2 * self.ngens)
                .map(|k| self.action[c * 2 * self.ngens + k].to_string())
                .collect();
            out.push_str(&format!("{c}: {}\n", row.join(" ")));
        }
        out
    }
}

/// Outcome of an enumeration attempt.
pub enum Enumeration {
    Closed(CosetTable),
    BudgetExceeded(EnumStats),
}

impl Enumeration {
    pub fn into_table(self) -> Result<CosetTable> {
        match self {
            Enumeration::Closed(t) => Ok(t),
            Enumeration::BudgetExceeded(s) => Err(SchurkitError::BudgetExceeded(s)),
        }
    }
}

struct Hlt<'a> {
    pres: &'a FpPresentation,
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>, // union-find over cosets
    defined: u64,
    collapsed: u64,
    budget: u64,
    queue: Vec<(u32, u32)>, // pending coincidences
}

impl<'a> Hlt<'a> {
    fn new(pres: &'a FpPresentation, budget: u64) -> Self {
        let width = 2 * pres.ngens;
        Hlt {
            pres,
            width,
            table: vec![UNDEF; width],
            parent: vec![0],
            defined: 1,
            collapsed: 0,
            budget: budget.max(1),
            queue: Vec::new(),
        }
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn is_live(&mut self, c: u32) -> bool {
        self.find(c) == c
    }

    fn live_count(&mut self) -> u64 {
        (0..self.parent.len() as u32)
            .filter(|&c| self.parent[c as usize] == c)
            .count() as u64
    }

    fn get(&mut self, c: u32, g: i32) -> u32 {
        let v = self.table[c as usize * self.width + CosetTable::col(g)];
        if v == UNDEF {
            UNDEF
        } else {
            self.find(v)
        }
    }

    fn set(&mut self, a: u32, g: i32, b: u32) {
        let cur = self.get(a, g);
        if cur == b {
            return;
        }
        if cur != UNDEF {
            self.queue.push((cur, b));
            return;
        }
        self.table[a as usize * self.width + CosetTable::col(g)] = b;
        let back = self.get(b, -g);
        if back == UNDEF {
            self.table[b as usize * self.width + CosetTable::col(-g)] = a;
        } else if back != a {
            self.queue.push((back, a));
        }
    }

    /// The budget caps *live* cosets; collapsed ones do not count against it.
    fn new_coset(&mut self) -> Option<u32> {
        if self.defined - self.collapsed >= self.budget {
            return None;
        }
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat(UNDEF).take(self.width));
        self.defined += 1;
        Some(c)
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, dead) = if a < b { (a, b) } else { (b, a) };
            self.parent[dead as usize] = keep;
            self.collapsed += 1;
            for k in 0..self.width {
                let v = self.table[dead as usize * self.width + k];
                if v == UNDEF {
                    continue;
                }
                let v = self.find(v);
                let g = if k % 2 == 0 {
                    (k / 2 + 1) as i32
                } else {
                    -((k / 2 + 1) as i32)
                };
                let keep = self.find(keep);
                self.set(keep, g, v);
            }
        }
    }

    /// Scan a relator at a coset; `fill` permits defining new cosets.
    /// Returns false when a needed definition was refused (budget).
    /// The scan restarts from scratch after every table mutation, so stale
    /// coset ids never leak across a coincidence collapse.
    fn scan(&mut self, a0: u32, ridx: usize, fill: bool) -> bool {
        if self.pres.relators[ridx].is_empty() {
            return true;
        }
        let rlen = self.pres.relators[ridx].len();
        loop {
            let a = self.find(a0);
            let mut f = a;
            let mut i = 0usize;
            while i < rlen {
                let g = self.pres.relators[ridx][i];
                let nx = self.get(f, g);
                if nx == UNDEF {
                    break;
                }
                f = nx;
                i += 1;
            }
            if i == rlen {
                if f != a {
                    self.queue.push((f, a));
                    self.process_coincidences();
                }
                return true;
            }
            let mut b = a;
            let mut j = rlen;
            while j > i {
                let g = self.pres.relators[ridx][j - 1];
                let pv = self.get(b, -g);
                if pv == UNDEF {
                    break;
                }
                b = pv;
                j -= 1;
            }
            if j == i {
                self.queue.push((f, b));
                self.process_coincidences();
                return true;
            }
            if j == i + 1 {
                self.set(f, self.pres.relators[ridx][i], b);
                self.process_coincidences();
                return true;
            }
            if !fill {
                return true;
            }
            let Some(n) = self.new_coset() else {
                return false;
            };
            self.set(f, self.pres.relators[ridx][i], n);
            self.process_coincidences();
        }
    }

    /// Deduction-only pass over all live cosets; used when the budget is hit.
    /// A single pass suffices: coincidences found along the way are merged
    /// immediately, so their consequences are already visible to later scans.
    fn lookahead(&mut self) {
        for c in 0..self.parent.len() as u32 {
            if !self.is_live(c) {
                continue;
            }
            for ridx in 0..self.pres.relators.len() {
                let c = self.find(c);
                self.scan(c, ridx, false);
            }
        }
    }

    /// Lookahead when the table is full; true when it freed enough room to
    /// keep going. Two guards stop the enumeration from thrashing — refill
    /// a few freed slots, hit the cap, rescan the whole table, repeat — on
    /// presentations whose coset space genuinely exceeds the budget: the
    /// lookahead must collapse at least 5% of the table, and the cumulative
    /// number of definitions may not exceed four times the budget.
    fn free_space(&mut self) -> bool {
        if self.defined >= self.budget.saturating_mul(4) {
            return false;
        }
        self.lookahead();
        let live = self.defined - self.collapsed;
        live < self.budget && self.budget - live >= self.budget / 20
    }

    fn stats(&mut self) -> EnumStats {
        EnumStats {
            cosets_defined: self.defined,
            cosets_collapsed: self.collapsed,
            live_cosets: self.live_count(),
            budget: self.budget,
        }
    }

    fn run(mut self) -> Enumeration {
        let mut c: u32 = 0;
        'outer: while (c as usize) < self.parent.len() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            for ridx in 0..self.pres.relators.len() {
                let cur = self.find(c);
                if cur != c {
                    continue 'outer; // this coset died; move on
                }
                if !self.scan(cur, ridx, true) {
                    if !self.free_space() {
                        return Enumeration::BudgetExceeded(self.stats());
                    }
                    let cur = self.find(c);
                    if cur != c {
                        continue 'outer;
                    }
                    if !self.scan(cur, ridx, true) {
                        return Enumeration::BudgetExceeded(self.stats());
                    }
                }
            }
            // fill remaining columns so the table closes even when a
            // generator is underused by the relators
            let mut k = 0;
            while k < self.width {
                if !self.is_live(c) {
                    break;
                }
                let g = if k % 2 == 0 {
                    (k / 2 + 1) as i32
                } else {
                    -((k / 2 + 1) as i32)
                };
                if self.get(c, g) != UNDEF {
                    k += 1;
                    continue;
                }
                match self.new_coset() {
                    Some(n) => {
                        self.set(c, g, n);
                        self.process_coincidences();
                        k += 1;
                    }
                    None => {
                        if !self.free_space() {
                            return Enumeration::BudgetExceeded(self.stats());
                        }
                    }
                }
            }
            c += 1;
        }
        Enumeration::Closed(self.compress())
    }

    /// Renumber live cosets BFS-first from the identity and build the tree.
    fn compress(&mut self) -> CosetTable {
        let n = self.parent.len();
        let mut index = vec![UNDEF; n];
        let mut order: Vec<u32> = Vec::new();
        let root = self.find(0);
        index[root as usize] = 0;
        order.push(root);
        let mut tree: Vec<(u32, i32)> = vec![(0, 0)];
        let mut head = 0usize;
        let width = self.width;
        while head < order.len() {
            let c = order[head];
            for k in 0..width {
                let g = if k % 2 == 0 {
                    (k / 2 + 1) as i32
                } else {
                    -((k / 2 + 1) as i32)
                };
                let d = self.get(c, g);
                assert_ne!(d, UNDEF, "table not closed");
                if index[d as usize] == UNDEF {
                    index[d as usize] = order.len() as u32;
                    tree.push((index[c as usize], g));
                    order.push(d);
                }
            }
            head += 1;
        }
        let m = order.len();
        let mut action = vec![UNDEF; m * width];
        for (new_c, &c) in order.iter().enumerate() {
            for k in 0..width {
                let g = if k % 2 == 0 {
                    (k / 2 + 1) as i32
                } else {
                    -((k / 2 + 1) as i32)
                };
                action[new_c * width + CosetTable::col(g)] = index[self.get(c, g) as usize];
            }
        }
        CosetTable {
            ngens: self.pres.ngens,
            ncosets: m,
            action,
            tree,
        }
    }
}

/// Enumerate the cosets of the trivial subgroup: the group's regular action.
pub fn enumerate(pres: &FpPresentation, budget: u64) -> Enumeration {
    Hlt::new(pres, budget).run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{comm, FpPresentation};

    fn pres(ngens: usize, relators: &[&[i32]]) -> FpPresentation {
        let mut p = FpPresentation::new(ngens);
        for r in relators {
            p.push(r.to_vec(), "test");
        }
        p
    }

    fn closed(p: &FpPresentation, budget: u64) -> CosetTable {
        enumerate(p, budget).into_table().unwrap()
    }

    #[test]
    fn cyclic_group() {
        let t = closed(&pres(1, &[&[1, 1, 1, 1, 1]]), 100);
        assert_eq!(t.ncosets, 5);
        let g = t.element_of(&[1]);
        assert_eq!(t.element_order(g), 5);
        assert_eq!(t.mul(g, t.inv(g)), 0);
    }

    #[test]
    fn symmetric_group_s3() {
        // <a, b | a^2, b^3, (ab)^2>
        let t = closed(&pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]), 100);
        assert_eq!(t.ncosets, 6);
    }

    #[test]
    fn quaternion_group() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a>
        let t = closed(
            &pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]),
            200,
        );
        assert_eq!(t.ncosets, 8);
        // exactly one element of order 2
        let invol = (1..8).filter(|&x| t.element_order(x) == 2).count();
        assert_eq!(invol, 1);
    }

    #[test]
    fn klein_bottle_like_collapse() {
        // <a, b | a^2, b^2, (ab)^2> = Klein four-group
        let t = closed(&pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2]]), 100);
        assert_eq!(t.ncosets, 4);
        for x in 0..4 {
            assert_eq!(t.mul(x, x), 0);
        }
    }

    #[test]
    fn budget_exhaustion_reports_stats() {
        let p = pres(1, &[&[1; 50]]);
        match enumerate(&p, 3) {
            Enumeration::BudgetExceeded(s) => {
                assert_eq!(s.budget, 3);
                assert!(s.cosets_defined <= 3);
            }
            Enumeration::Closed(_) => panic!("should not close with budget 3"),
        }
    }

    #[test]
    fn free_abelian_quotient() {
        // <a,b | [a,b], a^6, b^4> = Z6 x Z4
        let t = closed(
            &pres(2, &[&comm(&[1], &[2]), &[1; 6], &[2; 4]]),
            500,
        );
        assert_eq!(t.ncosets, 24);
        assert_eq!(t.element_order(t.element_of(&[1, 2])), 12);
    }

    #[test]
    fn rep_words_are_faithful() {
        let t = closed(&pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]), 100);
        for c in 0..t.ncosets as u32 {
            assert_eq!(t.element_of(&t.rep_word(c)), c);
        }
    }

    #[test]
    fn trivial_group() {
        let t = closed(&pres(1, &[&[1]]), 10);
        assert_eq!(t.ncosets, 1);
    }
}

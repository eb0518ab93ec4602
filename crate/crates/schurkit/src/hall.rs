//! Hall bases of free nilpotent groups.

use std::fmt;

/// Shape of a basic commutator: a free generator or a bracket of two earlier
/// basis elements (positions into the owning [`HallBasis`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallNode {
    Gen(usize),
    Comm(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicCommutator {
    pub weight: usize,
    pub node: HallNode,
}

/// The Hall basis of the free nilpotent group of given rank and class,
/// ordered by weight and then recursively lexicographically: generators by
/// index, brackets by (left position, right position).
///
/// A bracket `[L, R]` is basic when `L > R` in this order and, if
/// `L = [U, V]`, additionally `V <= R`.
#[derive(Debug, Clone)]
pub struct HallBasis {
    pub rank: usize,
    pub class: usize,
    items: Vec<BasicCommutator>,
}

impl HallBasis {
    pub fn new(rank: usize, class: usize) -> Self {
        assert!(rank >= 1 && class >= 1);
        let mut items: Vec<BasicCommutator> = (0..rank)
            .map(|i| BasicCommutator {
                weight: 1,
                node: HallNode::Gen(i),
            })
            .collect();
        for w in 2..=class {
            let mut layer = Vec::new();
            for l in 0..items.len() {
                for r in 0..l {
                    if items[l].weight + items[r].weight != w {
                        continue;
                    }
                    if let HallNode::Comm(_, v) = items[l].node {
                        if v > r {
                            continue;
                        }
                    }
                    layer.push(BasicCommutator {
                        weight: w,
                        node: HallNode::Comm(l, r),
                    });
                }
            }
            layer.sort_by_key(|b| match b.node {
                HallNode::Comm(l, r) => (l, r),
                HallNode::Gen(_) => unreachable!(),
            });
            items.extend(layer);
        }
        HallBasis { rank, class, items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &BasicCommutator {
        &self.items[i]
    }

    pub fn items(&self) -> &[BasicCommutator] {
        &self.items
    }

    /// Positions of the basis elements of a given weight (contiguous).
    pub fn weight_range(&self, w: usize) -> std::ops::Range<usize> {
        let start = self.items.partition_point(|b| b.weight < w);
        let end = self.items.partition_point(|b| b.weight <= w);
        start..end
    }

    /// Render position `i` with generator names `a, b, c, ...`.
    pub fn describe(&self, i: usize) -> String {
        struct D<'a>(&'a HallBasis, usize);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0.items[self.1].node {
                    HallNode::Gen(g) => write!(f, "{}", (b'a' + g as u8) as char),
                    HallNode::Comm(l, r) => {
                        write!(f, "[{},{}]", D(self.0, l), D(self.0, r))
                    }
                }
            }
        }
        D(self, i).to_string()
    }
}

/// Number of basic commutators of weight `w` on `r` generators
/// (Witt necklace formula).
pub fn witt_count(r: u64, w: u64) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=w {
        if w % d != 0 {
            continue;
        }
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        total += mu * (r as i64).pow((w / d) as u32);
    }
    (total / w as i64) as u64
}

fn moebius(mut n: u64) -> i64 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank2_class5_counts() {
        let b = HallBasis::new(2, 5);
        let counts: Vec<usize> = (1..=5).map(|w| b.weight_range(w).len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
        assert_eq!(b.len(), 14);
    }

    #[test]
    fn rank2_class8_total() {
        let b = HallBasis::new(2, 8);
        assert_eq!(b.len(), 71);
        assert_eq!(b.weight_range(6).len(), 9);
        assert_eq!(b.weight_range(7).len(), 18);
        assert_eq!(b.weight_range(8).len(), 30);
    }

    #[test]
    fn matches_witt_formula_up_to_rank3_class8() {
        for r in 1..=3usize {
            let b = HallBasis::new(r, 8);
            for w in 1..=8usize {
                assert_eq!(
                    b.weight_range(w).len() as u64,
                    witt_count(r as u64, w as u64),
                    "rank {r} weight {w}"
                );
            }
        }
    }

    #[test]
    fn hall_condition_holds_everywhere() {
        let b = HallBasis::new(3, 6);
        for i in 0..b.len() {
            if let HallNode::Comm(l, r) = b.get(i).node {
                assert!(l > r);
                assert_eq!(b.get(i).weight, b.get(l).weight + b.get(r).weight);
                if let HallNode::Comm(_, v) = b.get(l).node {
                    assert!(v <= r);
                }
            }
        }
    }

    #[test]
    fn weight2_is_single_bracket() {
        let b = HallBasis::new(2, 2);
        assert_eq!(b.len(), 3);
        assert_eq!(b.describe(2), "[b,a]");
    }
}

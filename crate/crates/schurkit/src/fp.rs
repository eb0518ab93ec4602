//! Finite presentations on abstract generators.
//!
//! Words are sequences of nonzero signed integers: `+k` is generator `k`,
//! `-k` its inverse (1-based). Free reduction is applied on construction.

/// A freely reduced word.
pub type FpWord = Vec<i32>;

pub fn reduce(w: &[i32]) -> FpWord {
    let mut out: FpWord = Vec::with_capacity(w.len());
    for &x in w {
        debug_assert!(x != 0);
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn inv(w: &[i32]) -> FpWord {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn concat(ws: &[&[i32]]) -> FpWord {
    let mut out = Vec::new();
    for w in ws {
        out.extend_from_slice(w);
    }
    reduce(&out)
}

/// Right conjugate `w^a = a^-1 w a`.
pub fn conj(w: &[i32], a: &[i32]) -> FpWord {
    concat(&[&inv(a), w, a])
}

/// Right-convention commutator `[x, y] = x^-1 y^-1 x y`.
pub fn comm(x: &[i32], y: &[i32]) -> FpWord {
    concat(&[&inv(x), &inv(y), x, y])
}

/// A finite presentation with per-relator provenance notes.
#[derive(Debug, Clone)]
pub struct FpPresentation {
    pub ngens: usize,
    pub relators: Vec<FpWord>,
    pub provenance: Vec<String>,
}

impl FpPresentation {
    pub fn new(ngens: usize) -> Self {
        FpPresentation {
            ngens,
            relators: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn push(&mut self, relator: FpWord, provenance: impl Into<String>) {
        let r = reduce(&relator);
        debug_assert!(r.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= self.ngens));
        self.relators.push(r);
        self.provenance.push(provenance.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels() {
        assert_eq!(reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert!(concat(&[&[1, 2], &inv(&[1, 2])]).is_empty());
    }

    #[test]
    fn commutator_shape() {
        assert_eq!(comm(&[1], &[2]), vec![-1, -2, 1, 2]);
        assert_eq!(conj(&[1], &[2]), vec![-2, 1, 2]);
    }
}

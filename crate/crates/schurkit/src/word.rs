use std::fmt;

/// A word in the free group on generators `g1..gN`, stored as a sequence of
/// `(generator index, exponent)` pairs with 0-based indices and nonzero
/// exponents. Adjacent equal generators are merged on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn gen(index: usize) -> Self {
        Word { letters: vec![(index, 1)] }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word::from_letters(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    /// Largest generator index mentioned, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).min()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (k, &(g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "g{}", g + 1)?;
            } else {
                write!(f, "g{}^{}", g + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_adjacent_letters() {
        let w = Word::from_letters([(0, 2), (0, 1), (1, -1)]);
        assert_eq!(w.letters(), &[(0, 3), (1, -1)]);
    }

    #[test]
    fn cancellation_to_identity() {
        let w = Word::from_letters([(2, 1), (2, -1)]);
        assert!(w.is_identity());
        assert_eq!(format!("{w}"), "id");
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let w = Word::from_letters([(0, 2), (1, 1)]);
        assert_eq!(w.inverse().letters(), &[(1, -1), (0, -2)]);
        assert!(w.concat(&w.inverse()).is_identity());
    }

    #[test]
    fn display_is_pc_file_syntax() {
        let w = Word::from_letters([(0, 1), (2, 2)]);
        assert_eq!(format!("{w}"), "g1*g3^2");
    }
}

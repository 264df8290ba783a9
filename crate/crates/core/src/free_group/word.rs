use std::fmt;

/// A maximal run `x_gen^exp` inside a word. `exp` is never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: u32,
    pub exponent: i32,
}

impl Syllable {
    pub fn new(generator: u32, exponent: i32) -> Self {
        Syllable {
            generator,
            exponent,
        }
    }
}

/// Freely reduced word in a free group, stored run-length compressed.
///
/// Adjacent syllables always carry distinct generators and no exponent is
/// zero, so structural equality is equality of group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// A single letter `x_gen^{±1}`.
pub type Letter = (u32, i8);

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: u32) -> Self {
        Word {
            syllables: vec![Syllable::new(g, 1)],
        }
    }

    pub fn power_of(g: u32, e: i32) -> Self {
        Word::from_syllables([Syllable::new(g, e)])
    }

    /// Builds a word from arbitrary syllables and reduces it.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(it: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in it {
            push_syllable(&mut out, s);
        }
        Word { syllables: out }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        Word::from_syllables(
            it.into_iter()
                .map(|(g, e)| Syllable::new(g, i32::from(e))),
        )
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters (sum of |exponent|).
    pub fn len(&self) -> usize {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<u32> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.syllables {
            let sign = if s.exponent > 0 { 1 } else { -1 };
            for _ in 0..s.exponent.unsigned_abs() {
                out.push((s.generator, sign));
            }
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_syllable(&mut out, s);
        }
        Word { syllables: out }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self · w · self^{-1}`.
    pub fn conjugate(&self, w: &Word) -> Word {
        self.mul(w).mul(&self.inverse())
    }

    /// Signed count of each generator, indexed `0..rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for s in &self.syllables {
            if let Some(slot) = v.get_mut(s.generator as usize) {
                *slot += i64::from(s.exponent);
            }
        }
        v
    }

    /// Writes `self = p · c · p^{-1}` with `c` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let letters = self.letters();
        let n = letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && letters[k].0 == letters[n - 1 - k].0 && letters[k].1 == -letters[n - 1 - k].1 {
            k += 1;
        }
        let prefix = Word::from_letters(letters[..k].iter().copied());
        let core = Word::from_letters(letters[k..n - k].iter().copied());
        (prefix, core)
    }
}

/// Free reduction of an arbitrary syllable sequence (`reduce` of the
/// word algebra). The result is the unique reduced representative.
pub fn reduce(syllables: &[Syllable]) -> Word {
    Word::from_syllables(syllables.iter().copied())
}

fn push_syllable(out: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == s.generator => {
            last.exponent += s.exponent;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(s),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exponent == 1 {
                write!(f, "x{}", s.generator)?;
            } else {
                write!(f, "x{}^{}", s.generator, s.exponent)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: i32) -> Syllable {
        Syllable::new(0, e)
    }
    fn y(e: i32) -> Syllable {
        Syllable::new(1, e)
    }

    #[test]
    fn cancellation() {
        assert_eq!(reduce(&[x(1), x(-1), y(1)]), Word::generator(1));
    }

    #[test]
    fn empty_word() {
        assert_eq!(reduce(&[]), Word::identity());
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn nested_cancellation() {
        assert_eq!(reduce(&[y(-1), x(1), x(-1), y(1)]), Word::identity());
    }

    #[test]
    fn merges_runs() {
        let w = reduce(&[x(2), x(1), y(1), y(-3)]);
        assert_eq!(w.syllables(), &[x(3), y(-2)]);
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "x0^3 x1^-2");
    }

    #[test]
    fn inverse_and_product() {
        let w = reduce(&[x(2), y(-1), x(1)]);
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(w.pow(2).len(), 8);
        assert_eq!(w.pow(-1), w.inverse());
    }

    #[test]
    fn cyclic_decomposition_splits_conjugator() {
        // y x^2 y^-1
        let w = reduce(&[y(1), x(2), y(-1)]);
        let (p, c) = w.cyclic_decomposition();
        assert_eq!(p, Word::generator(1));
        assert_eq!(c, Word::power_of(0, 2));
        assert_eq!(p.conjugate(&c), w);
    }
}

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::literal::parse_word;
use super::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("image of x{generator} uses generator x{used} outside rank {rank}")]
    GeneratorOutOfRange {
        generator: usize,
        used: u32,
        rank: usize,
    },
}

/// Endomorphism of the free group `F_rank` given by generator images.
///
/// Certificates and attractor records only carry automorphisms, but no
/// operation here needs invertibility; where it matters the inverse is
/// supplied explicitly and checked with [`FreeGroupAut::is_inverse_of`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeGroupAut {
    images: Vec<Word>,
}

impl FreeGroupAut {
    pub fn new(images: Vec<Word>) -> Result<Self, AutError> {
        let rank = images.len();
        for (i, w) in images.iter().enumerate() {
            if let Some(m) = w.max_generator() {
                if m as usize >= rank {
                    return Err(AutError::GeneratorOutOfRange {
                        generator: i,
                        used: m,
                        rank,
                    });
                }
            }
        }
        Ok(FreeGroupAut { images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeGroupAut {
            images: (0..rank as u32).map(Word::generator).collect(),
        }
    }

    /// Inner automorphism `g ↦ v g v^{-1}`.
    pub fn inner(v: &Word, rank: usize) -> Self {
        FreeGroupAut {
            images: (0..rank as u32)
                .map(|g| v.conjugate(&Word::generator(g)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i as u32))
    }

    /// Image of an arbitrary word, reduced.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for s in w.syllables() {
            let img = &self.images[s.generator as usize];
            out = out.mul(&img.pow(i64::from(s.exponent)));
        }
        out
    }

    /// `compose(φ, ψ)`: the map `g ↦ φ(ψ(g))`.
    pub fn compose(&self, inner: &FreeGroupAut) -> Result<FreeGroupAut, AutError> {
        check_rank(self, inner)?;
        Ok(FreeGroupAut {
            images: inner.images.iter().map(|w| self.apply(w)).collect(),
        })
    }

    /// Post-composition with the inner automorphism by `v`:
    /// `g ↦ v φ(g) v^{-1}`. Changing the lift of a map changes its induced
    /// automorphism exactly in this way.
    pub fn twisted(&self, v: &Word) -> FreeGroupAut {
        FreeGroupAut {
            images: self.images.iter().map(|w| v.conjugate(w)).collect(),
        }
    }

    /// True when `self ∘ other` and `other ∘ self` are the identity.
    pub fn is_inverse_of(&self, other: &FreeGroupAut) -> Result<bool, AutError> {
        Ok(self.compose(other)?.is_identity() && other.compose(self)?.is_identity())
    }

    /// Abelianization: entry `(i, j)` is the signed count of generator `j`
    /// in the image of generator `i`.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        self.images.iter().map(|w| w.exponent_sums(n)).collect()
    }

    /// Canonical lift of a 2×2 integer matrix `[[a, b], [c, d]]` to an
    /// endomorphism of `F_2`: `x0 ↦ x0^a x1^c`, `x1 ↦ x0^b x1^d`.
    ///
    /// Columns of the matrix are the abelianized images, so the
    /// abelianization (row convention) of the lift is the transpose.
    pub fn canonical_lift(m: [[i64; 2]; 2]) -> Self {
        let img = |e0: i64, e1: i64| {
            Word::power_of(0, e0 as i32).mul(&Word::power_of(1, e1 as i32))
        };
        FreeGroupAut {
            images: vec![img(m[0][0], m[1][0]), img(m[0][1], m[1][1])],
        }
    }
}

fn check_rank(a: &FreeGroupAut, b: &FreeGroupAut) -> Result<(), AutError> {
    if a.rank() != b.rank() {
        return Err(AutError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    Ok(())
}

/// Decides whether `ψ` conjugates `t` to `t_prime`, given the claimed
/// inverse `ψ_inv`: both `ψψ_inv` and `ψ_invψ` must be the identity and
/// `ψ ∘ t ∘ ψ_inv = t_prime` generator-wise.
pub fn verify_conjugacy(
    t: &FreeGroupAut,
    t_prime: &FreeGroupAut,
    psi: &FreeGroupAut,
    psi_inv: &FreeGroupAut,
) -> Result<bool, AutError> {
    check_rank(t, t_prime)?;
    check_rank(t, psi)?;
    check_rank(t, psi_inv)?;
    if !psi.is_inverse_of(psi_inv)? {
        return Ok(false);
    }
    Ok(psi.compose(t)?.compose(psi_inv)? == *t_prime)
}

/// Like [`verify_conjugacy`] but for `t_prime` taken up to the choice of
/// lift: checks `ψ ∘ t ∘ ψ_inv = ι_v ∘ t_prime` where `ι_v` is
/// conjugation by `twist`.
pub fn verify_conjugacy_up_to_lift(
    t: &FreeGroupAut,
    t_prime: &FreeGroupAut,
    psi: &FreeGroupAut,
    psi_inv: &FreeGroupAut,
    twist: &Word,
) -> Result<bool, AutError> {
    verify_conjugacy(t, &t_prime.twisted(twist), psi, psi_inv)
}

/// All solutions `v` of `a = v b v^{-1}` have the form `v0 · r^k`; returns
/// `(v0, r)` with `r` the primitive root of `b`, or `None` when `a` and
/// `b` are not conjugate. `b` must be non-trivial.
pub fn conjugator(a: &Word, b: &Word) -> Option<(Word, Word)> {
    if b.is_identity() {
        return None;
    }
    let (p, ca) = a.cyclic_decomposition();
    let (q, cb) = b.cyclic_decomposition();
    let la = ca.letters();
    let lb = cb.letters();
    if la.len() != lb.len() {
        return None;
    }
    let n = lb.len();
    let shift = (0..n).find(|&i| (0..n).all(|j| lb[(i + j) % n] == la[j]))?;
    // rotating cb left by `shift` is conjugation by s^{-1}, s = lb[..shift]
    let s = Word::from_letters(lb[..shift].iter().copied());
    let v0 = p.mul(&s.inverse()).mul(&q.inverse());
    let period = primitive_period(&lb);
    let root_core = Word::from_letters(lb[..period].iter().copied());
    let root = q.conjugate(&root_core);
    Some((v0, root))
}

fn primitive_period(letters: &[Letter]) -> usize {
    let n = letters.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (0..n).all(|j| letters[j] == letters[j % p]))
        .unwrap_or(n)
}

/// Finds `v` with `s = ι_v ∘ t` (both maps on all generators), i.e. the
/// inner automorphism relating two lifts of the same outer class.
/// Searches `v0 · r^k` for `|k|` up to a length-derived bound.
pub fn solve_twist(s: &FreeGroupAut, t: &FreeGroupAut) -> Option<Word> {
    if s.rank() != t.rank() || s.rank() == 0 {
        return None;
    }
    if s == t {
        return Some(Word::identity());
    }
    let g = (0..t.rank()).find(|&i| !t.image(i).is_identity())?;
    let (v0, root) = conjugator(s.image(g), t.image(g))?;
    let bound = s
        .images()
        .iter()
        .chain(t.images())
        .map(Word::len)
        .sum::<usize>() as i64
        + 4;
    let mut ks: Vec<i64> = (-bound..=bound).collect();
    ks.sort_by_key(|k| (k.abs(), *k < 0));
    ks.into_iter()
        .map(|k| v0.mul(&root.pow(k)))
        .find(|v| t.twisted(v) == *s)
}

impl fmt::Display for FreeGroupAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{i} -> {w}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_word(&s).map_err(serde::de::Error::custom)
    }
}

/// Serialized as the list of generator images.
impl Serialize for FreeGroupAut {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeGroupAut {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<Word>::deserialize(d)?;
        FreeGroupAut::new(images).map_err(serde::de::Error::custom)
    }
}

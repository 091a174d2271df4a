use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..N` stored as its image table.
///
/// Products follow function composition: `p.compose(&q)` applies `q` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::DegenerateInput("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Invalid("image table is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from disjoint cycles, e.g. `[[0, 1, 2]]` maps 0→1→2→0.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let a = a as usize;
                if a >= n || touched[a] {
                    return Err(Error::Invalid("cycles must be disjoint and in range".into()));
                }
                touched[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: u32, b: u32) -> Self {
        let mut images: Vec<u32> = (0..n as u32).collect();
        images.swap(a as usize, b as usize);
        Permutation { images }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Permutation { images }
    }

    /// Uniform random even permutation.
    pub fn random_even<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut p = Permutation::random(n, rng);
        if n >= 2 && p.sign() < 0 {
            p.images.swap(0, 1);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation sizes differ");
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.len());
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(g: &Permutation, h: &Permutation) -> Permutation {
        g.inverse().compose(&h.inverse()).compose(g).compose(h)
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conj(&self, h: &Permutation) -> Permutation {
        h.inverse().compose(self).compose(h)
    }

    /// Nontrivial cycles, each starting at its least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start as u32];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                c.push(j as u32);
                j = self.images[j] as usize;
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    pub fn sign(&self) -> i8 {
        sign_of(self.len(), |i| self.images[i])
    }

    pub fn is_even(&self) -> bool {
        self.sign() > 0
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&i| self.apply(i) != i).collect()
    }
}

/// Sign of a permutation of `0..n` given as a function, via cycle counting.
pub fn sign_of<F: FnMut(usize) -> u32>(n: usize, mut f: F) -> i8 {
    let mut seen = vec![0u64; n.div_ceil(64)];
    let mut transpositions = 0usize;
    for start in 0..n {
        if seen[start / 64] >> (start % 64) & 1 == 1 {
            continue;
        }
        seen[start / 64] |= 1 << (start % 64);
        let mut j = f(start) as usize;
        while j != start {
            seen[j / 64] |= 1 << (j % 64);
            transpositions += 1;
            j = f(j) as usize;
        }
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(5).sign(), 1);
        assert_eq!(Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap().sign(), 1);
        assert_eq!(Permutation::transposition(4, 0, 1).sign(), -1);
    }

    #[test]
    fn commutator_of_three_cycle_and_swap() {
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let t = Permutation::transposition(3, 0, 1);
        let k = Permutation::commutator(&c, &t);
        assert_eq!(k.cycles().len(), 1);
        assert_eq!(k.cycles()[0].len(), 3);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn sign_is_a_homomorphism(p in perm_strategy(7), q in perm_strategy(7)) {
            prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        }

        #[test]
        fn inverse_composes_to_identity(p in perm_strategy(9)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
        }
    }
}

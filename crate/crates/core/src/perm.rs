//! Permutations on `0..degree`, the raw material for all group elements.

use std::fmt;

/// A permutation of the points `0..degree`, stored as its image vector.
///
/// The identity is lexicographically least among all permutations of a fixed
/// degree, which the element-ordering of [`crate::group::Group`] relies on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from its image vector; panics if it is not a bijection.
    pub fn from_images(images: Vec<u16>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(
                (i as usize) < images.len() && !seen[i as usize],
                "not a permutation: {images:?}"
            );
            seen[i as usize] = true;
        }
        Perm(images.into_boxed_slice())
    }

    /// Single cycle (0 1 2 .. n-1) on `degree` points.
    pub fn cycle(degree: usize) -> Self {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        v.rotate_left(1);
        Perm(v.into_boxed_slice())
    }

    /// Builds the permutation of `degree` points given by a list of disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u16]]) -> Self {
        let mut v: Vec<u16> = (0..degree as u16).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                v[cyc[w] as usize] = cyc[(w + 1) % cyc.len()];
            }
        }
        Perm::from_images(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.0[point as usize]
    }

    /// Composition `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u16; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            v[img as usize] = i as u16;
        }
        Perm(v.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &img)| i as u16 == img)
    }

    /// Multiplicative order of the permutation.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut n = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            n += 1;
        }
        n
    }

    /// Embeds into a larger degree, acting on `offset..offset+degree`.
    pub fn shift(&self, offset: usize, total: usize) -> Perm {
        let mut v: Vec<u16> = (0..total as u16).collect();
        for (i, &img) in self.0.iter().enumerate() {
            v[offset + i] = (offset as u16) + img;
        }
        Perm(v.into_boxed_slice())
    }

    /// Restriction to the block `offset..offset+len`, which must be invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Perm {
        let v: Vec<u16> = (0..len)
            .map(|i| {
                let img = self.0[offset + i];
                assert!(
                    (img as usize) >= offset && (img as usize) < offset + len,
                    "block not invariant"
                );
                img - offset as u16
            })
            .collect();
        Perm(v.into_boxed_slice())
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                out.push_str(&p.to_string());
                p = self.0[p] as usize;
                if p == start {
                    break;
                }
                out.push(' ');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let c = Perm::cycle(4);
        assert_eq!(c.order(), 4);
        assert!(c.compose(&c.inverse()).is_identity());
        let t = Perm::from_cycles(4, &[&[0, 1]]);
        assert_eq!(t.order(), 2);
        // (0 1) after (0 1 2 3): x -> cycle -> transpose
        let p = t.compose(&c);
        assert_eq!(p.apply(0), 0);
        assert_eq!(p.apply(1), 2);
    }

    #[test]
    fn identity_is_lex_minimal() {
        let id = Perm::identity(4);
        let c = Perm::cycle(4);
        let t = Perm::from_cycles(4, &[&[0, 1]]);
        assert!(id < c);
        assert!(id < t);
    }

    #[test]
    fn shift_and_restrict_roundtrip() {
        let c = Perm::cycle(3);
        let s = c.shift(2, 6);
        assert_eq!(s.apply(0), 0);
        assert_eq!(s.apply(2), 3);
        assert_eq!(s.restrict(2, 3), c);
    }
}

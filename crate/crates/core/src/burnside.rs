//! Burnside rings of catalog groups: the table of marks, multiplication
//! through the mark homomorphism, and the primitive idempotents of `QB(G)`.
//!
//! The mark homomorphism diagonalizes the Burnside ring, so one mechanism
//! serves products, idempotents and dimension checks: mark vectors multiply
//! entrywise and coefficients are recovered by solving against the (upper
//! triangular, invertible) table of marks.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::group::{GroupRef, Limits, Subgroup};
use crate::lattice::{subgroup_classes, Lattice};
use crate::linalg::Matrix;
use crate::scalar::{rat_int, Field, Rat};

/// Table of marks: `M[A][B]` counts the `A`-fixed points on `G/B`, rows and
/// columns indexed by the canonical subgroup-class order.
pub struct MarksTable {
    pub group: GroupRef,
    pub lattice: Arc<Lattice>,
    pub matrix: Matrix<Rat>,
}

/// Coset labels: `coset_of[g]` is the index of the coset `g S`, with cosets
/// numbered in order of their minimal member.
pub fn coset_partition(parent: &GroupRef, sub: &Subgroup) -> (Vec<u32>, Vec<u32>) {
    let n = parent.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::new();
    for g in 0..n as u32 {
        if coset_of[g as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        for &s in sub.elems.iter() {
            coset_of[parent.mul(g, s) as usize] = c;
        }
        reps.push(g);
    }
    (coset_of, reps)
}

fn compute_marks(group: &GroupRef, lattice: &Arc<Lattice>) -> MarksTable {
    let r = lattice.count();
    let mut m: Matrix<Rat> = Matrix::zeros(r, r);
    for b in 0..r {
        let sb = &lattice.classes[b].rep;
        let (coset_of, reps) = coset_partition(group, sb);
        for a in 0..r {
            let sa = &lattice.classes[a].rep;
            let count = reps
                .iter()
                .enumerate()
                .filter(|&(c, &rep)| {
                    sa.gens
                        .iter()
                        .all(|&g| coset_of[group.mul(g, rep) as usize] == c as u32)
                })
                .count();
            m[(a, b)] = rat_int(count as i64);
        }
    }
    let labels: Vec<String> = (0..r).map(|i| lattice.class_label(i)).collect();
    MarksTable {
        group: group.clone(),
        lattice: lattice.clone(),
        matrix: m.with_labels(labels.clone(), labels),
    }
}

/// Table of marks, cached on the group.
pub fn marks_table(group: &GroupRef, limits: Limits) -> Result<Arc<MarksTable>> {
    let lattice = subgroup_classes(group, limits)?;
    Ok(group
        .marks_cache
        .get_or_init(|| Arc::new(compute_marks(group, &lattice)))
        .clone())
}

impl MarksTable {
    pub fn dim(&self) -> usize {
        self.lattice.count()
    }

    /// Mark vector of an element given by coefficients over the class basis.
    pub fn marks_of<K: Field>(&self, coeffs: &[K]) -> Vec<K> {
        assert_eq!(coeffs.len(), self.dim());
        (0..self.dim())
            .map(|a| {
                let mut acc = K::zero();
                for (b, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        let m = i64_of(&self.matrix[(a, b)]);
                        acc = acc + c.clone() * K::from_int(m);
                    }
                }
                acc
            })
            .collect()
    }

    /// Recovers coefficients from a mark vector. The table is invertible, so
    /// this always succeeds in characteristic zero.
    pub fn coeffs_from_marks(&self, marks: &[Rat]) -> Vec<Rat> {
        self.matrix
            .solve(marks)
            .expect("table of marks is invertible")
    }

    /// Product in the Burnside ring: marks multiply entrywise.
    pub fn product(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mx = self.marks_of(x);
        let my = self.marks_of(y);
        let prod: Vec<Rat> = mx.into_iter().zip(my).map(|(a, b)| a * b).collect();
        self.coeffs_from_marks(&prod)
    }

    /// Coefficients of `[G/G]`, the ring identity.
    pub fn identity_coeffs(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        let full = self.dim() - 1;
        debug_assert_eq!(self.lattice.classes[full].order, self.group.order());
        v[full] = Rat::one();
        v
    }

    /// The primitive idempotent of `QB(G)` whose mark vector is the indicator
    /// of the given class.
    pub fn idempotent(&self, class: usize) -> Vec<Rat> {
        let mut marks = vec![Rat::zero(); self.dim()];
        marks[class] = Rat::one();
        self.coeffs_from_marks(&marks)
    }
}

fn i64_of(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    debug_assert!(r.is_integer());
    r.to_integer().to_i64().expect("mark fits i64")
}

/// Number of double cosets `A\G/B`, by direct enumeration. The independent
/// oracle for Gram entries of the Burnside pairing.
pub fn double_coset_count(group: &GroupRef, a: &Subgroup, b: &Subgroup) -> usize {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for g in 0..n as u32 {
        if seen[g as usize] {
            continue;
        }
        count += 1;
        for &x in a.elems.iter() {
            let xg = group.mul(x, g);
            for &y in b.elems.iter() {
                seen[group.mul(xg, y) as usize] = true;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupStore, Limits};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn store() -> GroupStore {
        GroupStore::new(Limits::default())
    }

    fn rv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(rat_int).collect()
    }

    #[test]
    fn marks_small_tables() {
        let s = store();
        let c1 = s.catalog("C1").unwrap();
        let m = marks_table(&c1, s.limits).unwrap();
        assert_eq!(m.matrix.entries_exact(), vec![vec!["1"]]);

        let c2 = s.catalog("C2").unwrap();
        let m = marks_table(&c2, s.limits).unwrap();
        assert_eq!(
            m.matrix.entries_exact(),
            vec![vec!["2", "1"], vec!["0", "1"]]
        );

        let s3 = s.catalog("S3").unwrap();
        let m = marks_table(&s3, s.limits).unwrap();
        let first: Vec<String> = m.matrix.entries_exact()[0].clone();
        assert_eq!(first, vec!["6", "3", "2", "1"]);
    }

    #[test]
    fn marks_structure() {
        let s = store();
        for spec in ["C4", "S3", "D8", "A4", "C2xC2"] {
            let g = s.catalog(spec).unwrap();
            let m = marks_table(&g, s.limits).unwrap();
            let r = m.dim();
            for a in 0..r {
                assert!(m.matrix[(a, a)] > Rat::zero());
                for b in 0..r {
                    // upper triangular under the class ordering
                    if a > b {
                        assert!(m.matrix[(a, b)].is_zero(), "{spec} ({a},{b})");
                    }
                    // nonzero iff A is subconjugate to B
                    let sa = &m.lattice.classes[a].rep;
                    let sb = &m.lattice.classes[b].rep;
                    let subconj = sa
                        .conjugation_orbit()
                        .iter()
                        .any(|conj| conj.iter().all(|x| sb.contains(*x)));
                    assert_eq!(!m.matrix[(a, b)].is_zero(), subconj, "{spec} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let s = store();
        let c2 = s.catalog("C2").unwrap();
        let m = marks_table(&c2, s.limits).unwrap();
        // [C2/1] . [C2/1] = 2 [C2/1]
        let free = rv(vec![1, 0]);
        assert_eq!(m.product(&free, &free), rv(vec![2, 0]));
        // [G/G] is the identity
        let id = m.identity_coeffs();
        assert_eq!(m.product(&id, &free), free);

        // S3: marks of [S3/C3] are (2,0,2,0); the square has marks (4,0,4,0)
        let s3 = s.catalog("S3").unwrap();
        let m = marks_table(&s3, s.limits).unwrap();
        let c3_class = 2; // classes ordered 1, C2, C3, S3
        assert_eq!(m.lattice.classes[c3_class].order, 3);
        let mut x = rv(vec![0, 0, 0, 0]);
        x[c3_class] = Rat::one();
        assert_eq!(m.marks_of(&x), rv(vec![2, 0, 2, 0]));
        let sq = m.product(&x, &x);
        assert_eq!(m.marks_of(&sq), rv(vec![4, 0, 4, 0]));
    }

    #[test]
    fn mark_homomorphism_is_ring_map() {
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in ["S3", "D8", "C2xC2"] {
            let g = s.catalog(spec).unwrap();
            let m = marks_table(&g, s.limits).unwrap();
            for _ in 0..20 {
                let x: Vec<Rat> = (0..m.dim())
                    .map(|_| rat_int(rng.gen_range(-3..=3)))
                    .collect();
                let y: Vec<Rat> = (0..m.dim())
                    .map(|_| rat_int(rng.gen_range(-3..=3)))
                    .collect();
                let lhs = m.marks_of(&m.product(&x, &y));
                let rhs: Vec<Rat> = m
                    .marks_of(&x)
                    .into_iter()
                    .zip(m.marks_of(&y))
                    .map(|(a, b)| a * b)
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn idempotents() {
        let s = store();
        let c2 = s.catalog("C2").unwrap();
        let m = marks_table(&c2, s.limits).unwrap();
        // e_1 = (1/2)[C2/1], e_C2 = [C2/C2] - (1/2)[C2/1]
        assert_eq!(m.idempotent(0), vec![crate::scalar::rat(1, 2), Rat::zero()]);
        assert_eq!(m.idempotent(1), vec![crate::scalar::rat(-1, 2), Rat::one()]);

        // orthogonality, idempotence and partition of unity on the catalog
        for spec in [
            "C1", "C2", "C3", "C4", "C2xC2", "C5", "S3", "C8", "D8", "Q8", "C2xC2xC2", "A4",
            "C16", "C4xC4",
        ] {
            let g = s.catalog(spec).unwrap();
            let m = marks_table(&g, s.limits).unwrap();
            let idems: Vec<Vec<Rat>> = (0..m.dim()).map(|h| m.idempotent(h)).collect();
            let mut sum = vec![Rat::zero(); m.dim()];
            for (h, e) in idems.iter().enumerate() {
                for (i, c) in e.iter().enumerate() {
                    sum[i] += c;
                }
                for (h2, e2) in idems.iter().enumerate() {
                    let p = m.product(e, e2);
                    if h == h2 {
                        assert_eq!(p, *e, "{spec}: e_{h} not idempotent");
                    } else {
                        assert!(p.iter().all(|c| c.is_zero()), "{spec}: e_{h} e_{h2} != 0");
                    }
                }
            }
            assert_eq!(sum, m.identity_coeffs(), "{spec}: idempotents don't sum to 1");
        }
    }

    #[test]
    fn double_coset_identity() {
        // t_L([L/A].[L/B]) = |A\L/B|, with t_L = sum of coefficients
        let s = store();
        for spec in ["S3", "D8", "C2xC2", "A4"] {
            let g = s.catalog(spec).unwrap();
            let m = marks_table(&g, s.limits).unwrap();
            for a in 0..m.dim() {
                for b in 0..m.dim() {
                    let mut xa = vec![Rat::zero(); m.dim()];
                    xa[a] = Rat::one();
                    let mut xb = vec![Rat::zero(); m.dim()];
                    xb[b] = Rat::one();
                    let prod = m.product(&xa, &xb);
                    let t: Rat = prod.iter().fold(Rat::zero(), |acc, c| acc + c);
                    let dc = double_coset_count(
                        &g,
                        &m.lattice.classes[a].rep,
                        &m.lattice.classes[b].rep,
                    );
                    assert_eq!(t, rat_int(dc as i64), "{spec} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn klein_four_double_cosets_are_the_gram() {
        // |A\H/B| = |H| / |AB| for abelian H; the resulting Gram has rank 4
        let s = store();
        let v = s.catalog("C2xC2").unwrap();
        let m = marks_table(&v, s.limits).unwrap();
        let lat = &m.lattice;
        let mut gram: Matrix<Rat> = Matrix::zeros(5, 5);
        for a in 0..5 {
            for b in 0..5 {
                let sa = &lat.classes[a].rep;
                let sb = &lat.classes[b].rep;
                gram[(a, b)] = rat_int(double_coset_count(&v, sa, sb) as i64);
                let mut ab = std::collections::BTreeSet::new();
                for &x in sa.elems.iter() {
                    for &y in sb.elems.iter() {
                        ab.insert(v.mul(x, y));
                    }
                }
                assert_eq!(gram[(a, b)], rat_int((v.order() / ab.len()) as i64));
            }
        }
        assert_eq!(gram.rank(), 4);
        let rad = gram.radical_of_symmetric_form().unwrap();
        assert_eq!(rad.len(), 1);
    }
}

//! Conjugacy classes of subgroups, enumerated bottom-up by cyclic extension:
//! start from the cyclic subgroups generated by single elements and repeatedly
//! adjoin one element to a class representative, deduplicating by conjugacy.
//! Every subgroup arises along a chain that adds one generator at a time, and
//! extending only class representatives still reaches every class.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupRef, Limits, Subgroup};

/// One conjugacy class of subgroups.
pub struct SubgroupClass {
    /// Canonical representative: the lexicographically least sorted element
    /// list over the whole conjugation orbit.
    pub rep: Subgroup,
    pub class_size: usize,
    pub order: usize,
}

/// The full subgroup lattice of a group, up to conjugacy.
///
/// Classes are sorted by (order, sorted multiset of element orders,
/// canonical element list), which fixes the basis labels of every matrix
/// computed downstream.
pub struct Lattice {
    pub group: GroupRef,
    pub classes: Vec<SubgroupClass>,
    canon_to_class: BTreeMap<Vec<u32>, usize>,
}

impl Lattice {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    /// Class index of an arbitrary subgroup of the same parent.
    pub fn class_of(&self, sub: &Subgroup) -> usize {
        let canon = sub.canonical_class_form();
        *self
            .canon_to_class
            .get(&canon)
            .expect("subgroup not in lattice")
    }

    pub fn class_of_elems(&self, elems: &[u32]) -> Result<usize> {
        let sub = Subgroup::from_elems(&self.group, elems.to_vec())?;
        Ok(self.class_of(&sub))
    }

    /// Short display name of class `i`: "1" for the trivial class, the group
    /// label for the full class, and an indexed name otherwise.
    pub fn class_label(&self, i: usize) -> String {
        let c = &self.classes[i];
        if c.order == 1 {
            "1".to_string()
        } else if c.order == self.group.order() {
            self.group.label().to_string()
        } else {
            format!("s{}o{}", i, c.order)
        }
    }
}

fn element_order_multiset(g: &GroupRef, elems: &[u32]) -> Vec<usize> {
    let mut v: Vec<usize> = elems.iter().map(|&e| g.elem_order(e)).collect();
    v.sort_unstable();
    v
}

fn compute(group: &GroupRef) -> Lattice {
    let n = group.order() as u32;
    // canonical form -> (class size, a representative's generator list)
    let mut found: BTreeMap<Vec<u32>, (usize, Vec<u32>)> = BTreeMap::new();
    // sorted element list -> canonical form, for every subgroup seen
    let mut seen: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();

    let register = |sub: &Subgroup,
                        seen: &mut BTreeMap<Vec<u32>, Vec<u32>>,
                        found: &mut BTreeMap<Vec<u32>, (usize, Vec<u32>)>|
     -> bool {
        let key: Vec<u32> = sub.elems.as_ref().clone();
        if seen.contains_key(&key) {
            return false;
        }
        let orbit = sub.conjugation_orbit();
        let canon = orbit.iter().next().unwrap().clone();
        let size = orbit.len();
        for member in orbit {
            seen.insert(member, canon.clone());
        }
        let fresh = !found.contains_key(&canon);
        if fresh {
            found.insert(canon, (size, sub.gens.clone()));
        }
        fresh
    };

    let trivial = Subgroup::trivial(group);
    register(&trivial, &mut seen, &mut found);
    let mut worklist: Vec<Subgroup> = vec![trivial];

    // cyclic subgroups seed the extension process
    for g in 1..n {
        let cyc = Subgroup::from_gens(group, vec![g]);
        if register(&cyc, &mut seen, &mut found) {
            worklist.push(cyc);
        }
    }

    while let Some(s) = worklist.pop() {
        if s.order() == group.order() {
            continue;
        }
        for g in 1..n {
            if s.contains(g) {
                continue;
            }
            let mut gens = s.gens.clone();
            gens.push(g);
            let t = Subgroup::from_gens(group, gens);
            let key: Vec<u32> = t.elems.as_ref().clone();
            if seen.contains_key(&key) {
                continue;
            }
            if register(&t, &mut seen, &mut found) {
                worklist.push(t);
            }
        }
    }

    let mut classes: Vec<SubgroupClass> = found
        .into_iter()
        .map(|(canon, (class_size, _gens))| {
            let rep = Subgroup::from_elems(group, canon).expect("canonical rep");
            let order = rep.order();
            SubgroupClass {
                rep,
                class_size,
                order,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.order, element_order_multiset(group, &a.rep.elems), &**a.rep.elems).cmp(&(
            b.order,
            element_order_multiset(group, &b.rep.elems),
            &**b.rep.elems,
        ))
    });
    let canon_to_class = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.rep.elems.as_ref().clone(), i))
        .collect();
    Lattice {
        group: group.clone(),
        classes,
        canon_to_class,
    }
}

/// Complete list of conjugacy classes of subgroups, cached on the group.
/// Refuses groups above the configured order bound.
pub fn subgroup_classes(group: &GroupRef, limits: Limits) -> Result<Arc<Lattice>> {
    if group.order() > limits.order_bound {
        return Err(Error::BoundExceeded {
            what: format!("subgroup lattice of {}", group.label()),
            order: group.order() as u64,
            bound: limits.order_bound as u64,
        });
    }
    Ok(group
        .lattice_cache
        .get_or_init(|| Arc::new(compute(group)))
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupStore, Limits};
    use std::collections::BTreeSet;

    fn store() -> GroupStore {
        GroupStore::new(Limits::default())
    }

    /// Independent brute-force oracle: closures of all generating sets of
    /// size <= 4 (enough for any group of order <= 24).
    fn brute_force_subgroups(g: &GroupRef) -> BTreeSet<Vec<u32>> {
        assert!(g.order() <= 24);
        let n = g.order() as u32;
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        let close = |gens: &[u32]| -> Vec<u32> {
            Subgroup::from_gens(&g.clone(), gens.to_vec()).elems.as_ref().clone()
        };
        out.insert(close(&[]));
        for a in 1..n {
            out.insert(close(&[a]));
            for b in a + 1..n {
                out.insert(close(&[a, b]));
                for c in b + 1..n {
                    out.insert(close(&[a, b, c]));
                    for d in c + 1..n {
                        out.insert(close(&[a, b, c, d]));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn class_counts_small() {
        let s = store();
        for (spec, classes) in [
            ("C1", 1),
            ("C2", 2),
            ("C2xC2", 5),
            ("S3", 4),
            ("C6", 4),
            ("D8", 8),
            ("Q8", 6),
            ("A4", 5),
            ("S4", 11),
        ] {
            let g = s.catalog(spec).unwrap();
            let lat = subgroup_classes(&g, s.limits).unwrap();
            assert_eq!(lat.count(), classes, "{spec}");
        }
    }

    #[test]
    fn total_counts_match_brute_force() {
        let s = store();
        for spec in ["C2", "C6", "C2xC2", "S3", "D8", "Q8", "A4", "C12", "S4", "C2xC2xC2"] {
            let g = s.catalog(spec).unwrap();
            let lat = subgroup_classes(&g, s.limits).unwrap();
            let brute = brute_force_subgroups(&g);
            assert_eq!(lat.total_subgroups(), brute.len(), "{spec}");
        }
    }

    #[test]
    fn classes_sorted_and_canonical() {
        let s = store();
        let g = s.catalog("S3").unwrap();
        let lat = subgroup_classes(&g, s.limits).unwrap();
        let orders: Vec<usize> = lat.classes.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(lat.class_label(0), "1");
        assert_eq!(lat.class_label(3), "S3");
        // representatives are pairwise non-conjugate
        for i in 0..lat.count() {
            for j in i + 1..lat.count() {
                assert_ne!(
                    lat.classes[i].rep.canonical_class_form(),
                    lat.classes[j].rep.canonical_class_form()
                );
            }
        }
        // class_of maps any conjugate to its class
        for i in 0..lat.count() {
            for conj in lat.classes[i].rep.conjugation_orbit() {
                let sub = Subgroup::from_elems(&g, conj).unwrap();
                assert_eq!(lat.class_of(&sub), i);
            }
        }
    }

    #[test]
    fn correspondence_with_quotient() {
        // subgroup classes of G/N lift injectively into classes of G
        // containing N
        let s = store();
        let g = s.catalog("D8").unwrap();
        let lat_g = subgroup_classes(&g, s.limits).unwrap();
        // N = center of D8 (order-2 normal subgroup)
        let center = (1..g.order() as u32)
            .find(|&x| {
                g.elem_order(x) == 2
                    && (0..g.order() as u32).all(|y| g.mul(x, y) == g.mul(y, x))
            })
            .unwrap();
        let n = Subgroup::from_gens(&g, vec![center]);
        let (q, proj) = s.quotient(&g, &n).unwrap();
        let lat_q = subgroup_classes(&q, s.limits).unwrap();
        let mut lifted = BTreeSet::new();
        for c in &lat_q.classes {
            // preimage of the class representative
            let pre: Vec<u32> = (0..g.order() as u32)
                .filter(|&x| c.rep.contains(proj.apply(x)))
                .collect();
            let sub = Subgroup::from_elems(&g, pre).unwrap();
            assert!(n.elems.iter().all(|&x| sub.contains(x)));
            assert!(lifted.insert(lat_g.class_of(&sub)));
        }
        assert_eq!(lifted.len(), lat_q.count());
    }

    #[test]
    fn bound_is_enforced() {
        let s = GroupStore::new(Limits { order_bound: 5 });
        let g = s.catalog("C4").unwrap();
        assert!(subgroup_classes(&g, s.limits).is_ok());
        let s2 = GroupStore::new(Limits { order_bound: 24 });
        let big = s2.catalog("S4").unwrap();
        let tight = Limits { order_bound: 10 };
        assert!(matches!(
            subgroup_classes(&big, tight),
            Err(crate::error::Error::BoundExceeded { .. })
        ));
    }
}

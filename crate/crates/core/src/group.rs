//! Finite groups realized by permutations: the catalog grammar, direct
//! products, quotients, subgroups, homomorphisms and conjugacy classes.
//!
//! Groups are interned in a [`GroupStore`] keyed by their construction label,
//! so equal labels always denote the same object. All element sets are fully
//! enumerated at construction (orders are kept small by the configured
//! bounds), elements are sorted lexicographically by image vector, and the
//! identity is always element 0.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub type GroupRef = Arc<Group>;

/// Block structure of a group built as a direct product of non-trivial factors.
#[derive(Clone)]
pub struct ProductMeta {
    pub factors: Vec<GroupRef>,
    pub offsets: Vec<usize>,
}

/// Conjugacy classes of a group. Classes are sorted by their minimal element
/// index, so the identity class always comes first.
pub struct ConjClasses {
    pub class_of: Vec<usize>,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl ConjClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

pub struct Group {
    label: String,
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverses: Vec<u32>,
    product: Option<ProductMeta>,
    /// True when this group was produced by the catalog grammar; only such
    /// groups participate in the on-disk cache.
    pub(crate) from_catalog: bool,
    conj: OnceLock<Arc<ConjClasses>>,
    pub(crate) lattice_cache: OnceLock<Arc<crate::lattice::Lattice>>,
    pub(crate) marks_cache: OnceLock<Arc<crate::burnside::MarksTable>>,
    pub(crate) chartab_cache: OnceLock<Arc<crate::chartab::CharacterTable>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.label, self.order())
    }
}

impl Group {
    fn new(label: String, degree: usize, gens: Vec<Perm>, limit: usize) -> Result<Group> {
        let elements = enumerate(degree, &gens, limit, &label)?;
        let mut index = HashMap::with_capacity(elements.len());
        for (i, p) in elements.iter().enumerate() {
            index.insert(p.clone(), i as u32);
        }
        let inverses = elements
            .iter()
            .map(|p| index[&p.inverse()])
            .collect();
        Ok(Group {
            label,
            degree,
            gens,
            elements,
            index,
            inverses,
            product: None,
            from_catalog: false,
            conj: OnceLock::new(),
            lattice_cache: OnceLock::new(),
            marks_cache: OnceLock::new(),
            chartab_cache: OnceLock::new(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// Generator indices into the element list (identity omitted).
    pub fn gen_indices(&self) -> Vec<u32> {
        self.gens
            .iter()
            .filter(|p| !p.is_identity())
            .map(|p| self.index[p])
            .collect()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.elements[a as usize].compose(&self.elements[b as usize]);
        self.index[&p]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn conj_elem(&self, g: u32, x: u32) -> u32 {
        // g x g^{-1}
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, a: u32) -> usize {
        self.elements[a as usize].order()
    }

    pub fn exponent(&self) -> usize {
        (0..self.order() as u32).fold(1usize, |acc, i| {
            num_integer::lcm(acc, self.elem_order(i))
        })
    }

    pub fn product_meta(&self) -> Option<&ProductMeta> {
        self.product.as_ref()
    }

    /// Conjugacy classes of elements; cached after the first call.
    pub fn conjugacy_classes(&self) -> Arc<ConjClasses> {
        self.conj
            .get_or_init(|| {
                let n = self.order();
                let gen_idx = self.gen_indices();
                let mut class_of = vec![usize::MAX; n];
                let mut reps = Vec::new();
                let mut sizes = Vec::new();
                for start in 0..n as u32 {
                    if class_of[start as usize] != usize::MAX {
                        continue;
                    }
                    let c = reps.len();
                    let mut stack = vec![start];
                    class_of[start as usize] = c;
                    let mut size = 0usize;
                    while let Some(x) = stack.pop() {
                        size += 1;
                        for &g in &gen_idx {
                            let y = self.conj_elem(g, x);
                            if class_of[y as usize] == usize::MAX {
                                class_of[y as usize] = c;
                                stack.push(y);
                            }
                        }
                    }
                    reps.push(start);
                    sizes.push(size);
                }
                Arc::new(ConjClasses {
                    class_of,
                    reps,
                    sizes,
                })
            })
            .clone()
    }

    /// Builds the element of a product group with the given components.
    pub fn compose_product_element(&self, components: &[u32]) -> u32 {
        let meta = self.product.as_ref().expect("not a product group");
        assert_eq!(components.len(), meta.factors.len());
        let mut images: Vec<u16> = (0..self.degree as u16).collect();
        for (i, (&c, f)) in components.iter().zip(&meta.factors).enumerate() {
            let off = meta.offsets[i];
            for (j, &img) in f.perm(c).images().iter().enumerate() {
                images[off + j] = off as u16 + img;
            }
        }
        self.index[&Perm::from_images(images)]
    }

    /// Component of a product-group element in factor `i`.
    pub fn factor_component(&self, elem: u32, i: usize) -> u32 {
        let meta = self.product.as_ref().expect("not a product group");
        let off = meta.offsets[i];
        let f = &meta.factors[i];
        let p = self.elements[elem as usize].restrict(off, f.degree());
        f.index_of(&p).expect("component not in factor")
    }
}

fn enumerate(degree: usize, gens: &[Perm], limit: usize, label: &str) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = g.compose(&p);
            if !seen.contains(&q) {
                if seen.len() >= limit {
                    return Err(Error::BoundExceeded {
                        what: format!("group {label}"),
                        order: seen.len() as u64 + 1,
                        bound: limit as u64,
                    });
                }
                seen.insert(q.clone());
                queue.push(q);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A subgroup of a fixed parent group, stored as a sorted list of element
/// indices together with a small generating set.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: GroupRef,
    pub elems: Arc<Vec<u32>>,
    pub gens: Vec<u32>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(|{}| in {})", self.order(), self.parent.label())
    }
}

impl Subgroup {
    pub fn from_gens(parent: &GroupRef, gens: Vec<u32>) -> Subgroup {
        let mut set: BTreeSet<u32> = BTreeSet::new();
        set.insert(0);
        let mut queue: Vec<u32> = vec![0];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = parent.mul(g, x);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        let gens = gens.into_iter().filter(|&g| g != 0).collect();
        Subgroup {
            parent: parent.clone(),
            elems: Arc::new(set.into_iter().collect()),
            gens,
        }
    }

    /// Wraps a sorted element list known to be closed under multiplication,
    /// deriving a generating set greedily.
    pub fn from_elems(parent: &GroupRef, elems: Vec<u32>) -> Result<Subgroup> {
        let mut elems = elems;
        elems.sort_unstable();
        elems.dedup();
        if elems.binary_search(&0).is_err() {
            return Err(Error::NotSubgroup(parent.label().to_string()));
        }
        // closure check
        let set: BTreeSet<u32> = elems.iter().copied().collect();
        for &a in &elems {
            for &g in &elems {
                if !set.contains(&parent.mul(a, g)) {
                    return Err(Error::NotSubgroup(parent.label().to_string()));
                }
            }
        }
        let mut gens: Vec<u32> = Vec::new();
        let mut have = Subgroup::from_gens(parent, vec![]);
        while have.order() < elems.len() {
            let next = elems
                .iter()
                .copied()
                .find(|x| !have.contains(*x))
                .expect("closure defect");
            gens.push(next);
            have = Subgroup::from_gens(parent, gens.clone());
        }
        Ok(Subgroup {
            parent: parent.clone(),
            elems: Arc::new(elems),
            gens,
        })
    }

    pub fn trivial(parent: &GroupRef) -> Subgroup {
        Subgroup::from_gens(parent, vec![])
    }

    pub fn full(parent: &GroupRef) -> Subgroup {
        Subgroup::from_gens(parent, parent.gen_indices())
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn conjugate_by(&self, g: u32) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .elems
            .iter()
            .map(|&x| self.parent.conj_elem(g, x))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn is_normal(&self) -> bool {
        self.parent
            .gen_indices()
            .iter()
            .all(|&g| self.conjugate_by(g) == **self.elems)
    }

    /// Lexicographically least element list over the conjugation orbit; the
    /// canonical form used to identify conjugacy classes of subgroups.
    pub fn canonical_class_form(&self) -> Vec<u32> {
        self.conjugation_orbit().into_iter().min().unwrap()
    }

    /// All distinct conjugates (as sorted element lists), including self.
    pub fn conjugation_orbit(&self) -> BTreeSet<Vec<u32>> {
        let gen_idx = self.parent.gen_indices();
        let mut orbit: BTreeSet<Vec<u32>> = BTreeSet::new();
        let start: Vec<u32> = self.elems.as_ref().clone();
        orbit.insert(start.clone());
        let mut queue = vec![start];
        while let Some(s) = queue.pop() {
            for &g in &gen_idx {
                let mut t: Vec<u32> = s
                    .iter()
                    .map(|&x| self.parent.conj_elem(g, x))
                    .collect();
                t.sort_unstable();
                if orbit.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        orbit
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomKind {
    Isomorphism,
    Inclusion,
    Projection,
    General,
}

/// A homomorphism between two enumerated groups, stored as a complete
/// element-index map. Construction verifies well-definedness along the Cayley
/// graph of the source, which is equivalent to checking all relations.
#[derive(Clone)]
pub struct GroupHom {
    pub source: GroupRef,
    pub target: GroupRef,
    pub elem_images: Arc<Vec<u32>>,
    pub kind: HomKind,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {:?})",
            self.source.label(),
            self.target.label(),
            self.kind
        )
    }
}

impl GroupHom {
    /// Builds the hom determined by images of the source generators.
    pub fn from_gen_images(
        source: &GroupRef,
        target: &GroupRef,
        gen_images: &[(u32, u32)],
    ) -> Result<GroupHom> {
        let n = source.order();
        let mut images = vec![u32::MAX; n];
        images[0] = 0;
        let mut queue: Vec<u32> = vec![0];
        while let Some(x) = queue.pop() {
            let fx = images[x as usize];
            for &(g, fg) in gen_images {
                let y = source.mul(g, x);
                let fy = target.mul(fg, fx);
                if images[y as usize] == u32::MAX {
                    images[y as usize] = fy;
                    queue.push(y);
                } else if images[y as usize] != fy {
                    return Err(Error::BadHom(format!(
                        "images do not extend to a homomorphism {} -> {}",
                        source.label(),
                        target.label()
                    )));
                }
            }
        }
        if images.iter().any(|&x| x == u32::MAX) {
            return Err(Error::BadHom("generators do not generate source".into()));
        }
        let image_set: BTreeSet<u32> = images.iter().copied().collect();
        let injective = image_set.len() == n;
        let surjective = image_set.len() == target.order();
        let kind = match (injective, surjective) {
            (true, true) => HomKind::Isomorphism,
            (true, false) => HomKind::Inclusion,
            (false, true) => HomKind::Projection,
            (false, false) => HomKind::General,
        };
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            elem_images: Arc::new(images),
            kind,
        })
    }

    pub fn identity(g: &GroupRef) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            elem_images: Arc::new((0..g.order() as u32).collect()),
            kind: HomKind::Isomorphism,
        }
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.elem_images[x as usize]
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kind == HomKind::Isomorphism
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(Error::BadHom("inverse of non-isomorphism".into()));
        }
        let mut images = vec![0u32; self.target.order()];
        for (x, &fx) in self.elem_images.iter().enumerate() {
            images[fx as usize] = x as u32;
        }
        Ok(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            elem_images: Arc::new(images),
            kind: HomKind::Isomorphism,
        })
    }

    pub fn compose_after(&self, first: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(&first.target, &self.source) {
            return Err(Error::EndpointMismatch(format!(
                "hom composition {} -> {} vs {} -> {}",
                first.source.label(),
                first.target.label(),
                self.source.label(),
                self.target.label()
            )));
        }
        let images: Vec<u32> = first.elem_images.iter().map(|&x| self.apply(x)).collect();
        let image_set: BTreeSet<u32> = images.iter().copied().collect();
        let injective = image_set.len() == first.source.order();
        let surjective = image_set.len() == self.target.order();
        let kind = match (injective, surjective) {
            (true, true) => HomKind::Isomorphism,
            (true, false) => HomKind::Inclusion,
            (false, true) => HomKind::Projection,
            (false, false) => HomKind::General,
        };
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            elem_images: Arc::new(images),
            kind,
        })
    }
}

fn fnv64(data: impl IntoIterator<Item = u32>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for x in data {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Bounds controlling how large enumerations may get.
///
/// `order_bound` limits groups at which functors are evaluated and for which
/// lattices, marks tables and character tables are computed. Intermediate
/// groups arising inside composite operations (balanced products, the
/// four-fold products of composition) are allowed up to `order_bound`
/// squared; they only ever require element enumeration.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub order_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { order_bound: 256 }
    }
}

impl Limits {
    pub fn element_limit(&self) -> usize {
        self.order_bound.saturating_mul(self.order_bound)
    }
}

/// Interning store for groups. Construction of the same group twice yields
/// the same `Arc`, so caches attached to groups are shared.
pub struct GroupStore {
    map: Mutex<HashMap<String, GroupRef>>,
    pub limits: Limits,
}

impl GroupStore {
    pub fn new(limits: Limits) -> GroupStore {
        GroupStore {
            map: Mutex::new(HashMap::new()),
            limits,
        }
    }

    fn intern(&self, key: String, build: impl FnOnce() -> Result<Group>) -> Result<GroupRef> {
        if let Some(g) = self.map.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(build()?);
        let mut map = self.map.lock().unwrap();
        Ok(map.entry(key).or_insert(g).clone())
    }

    pub fn trivial(&self) -> GroupRef {
        self.catalog_atom("C1").expect("trivial group")
    }

    /// Parses the catalog grammar: `C<n>`, `D<2n>`, `Q8`, `S2|S3|S4`, `A4`,
    /// composed with `x` for direct products. Case-sensitive, no whitespace.
    pub fn catalog(&self, spec: &str) -> Result<GroupRef> {
        let parts: Vec<&str> = spec.split('x').collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(Error::UnknownSpec(spec.to_string()));
        }
        let mut groups: Vec<GroupRef> = Vec::new();
        for part in parts {
            groups.push(self.catalog_atom(part)?);
        }
        let order: usize = groups.iter().map(|g| g.order()).product();
        if order > self.limits.order_bound {
            return Err(Error::BoundExceeded {
                what: format!("group {spec}"),
                order: order as u64,
                bound: self.limits.order_bound as u64,
            });
        }
        if groups.len() == 1 {
            return Ok(groups.pop().unwrap());
        }
        self.product_of(&groups)
    }

    fn catalog_atom(&self, spec: &str) -> Result<GroupRef> {
        let bound = self.limits.order_bound;
        let err = || Error::UnknownSpec(spec.to_string());
        let (label, degree, gens): (String, usize, Vec<Perm>) = if let Some(n) = spec.strip_prefix('C') {
            let n: usize = n.parse().map_err(|_| err())?;
            if n == 0 {
                return Err(err());
            }
            if n > bound {
                return Err(Error::BoundExceeded {
                    what: format!("group {spec}"),
                    order: n as u64,
                    bound: bound as u64,
                });
            }
            if n == 1 {
                (spec.to_string(), 1, vec![])
            } else {
                (spec.to_string(), n, vec![Perm::cycle(n)])
            }
        } else if let Some(m) = spec.strip_prefix('D') {
            let m: usize = m.parse().map_err(|_| err())?;
            if m % 2 != 0 || m < 6 {
                return Err(Error::UnknownSpec(format!(
                    "{spec} (dihedral spec D<2n> requires even order >= 6; use C2 or C2xC2 for the degenerate cases)"
                )));
            }
            if m > bound {
                return Err(Error::BoundExceeded {
                    what: format!("group {spec}"),
                    order: m as u64,
                    bound: bound as u64,
                });
            }
            let n = m / 2;
            let rot = Perm::cycle(n);
            let refl = Perm::from_images((0..n as u16).map(|i| (n as u16) - 1 - i).collect());
            (spec.to_string(), n, vec![rot, refl])
        } else if spec == "Q8" {
            // regular representation on pairs (i, j), i mod 4, j mod 2,
            // with b a^k = a^{-k} b and b^2 = a^2
            let idx = |i: usize, j: usize| -> u16 { (i % 4 + 4 * (j % 2)) as u16 };
            let q8_mul = |(i, j): (usize, usize), (k, l): (usize, usize)| -> (usize, usize) {
                if j == 0 {
                    ((i + k) % 4, l)
                } else if l == 0 {
                    ((i + 4 - k) % 4, 1)
                } else {
                    ((i + 4 - k + 2) % 4, 0)
                }
            };
            let left_mult = |a: (usize, usize)| -> Perm {
                let mut v = vec![0u16; 8];
                for i in 0..4 {
                    for j in 0..2 {
                        let (x, y) = q8_mul(a, (i, j));
                        v[idx(i, j) as usize] = idx(x, y);
                    }
                }
                Perm::from_images(v)
            };
            (
                spec.to_string(),
                8,
                vec![left_mult((1, 0)), left_mult((0, 1))],
            )
        } else if let Some(n) = spec.strip_prefix('S') {
            let n: usize = n.parse().map_err(|_| err())?;
            if !(2..=4).contains(&n) {
                return Err(err());
            }
            let mut gens = vec![Perm::from_cycles(n, &[&[0, 1]])];
            if n > 2 {
                gens.push(Perm::cycle(n));
            }
            (spec.to_string(), n, gens)
        } else if spec == "A4" {
            (
                spec.to_string(),
                4,
                vec![
                    Perm::from_cycles(4, &[&[0, 1, 2]]),
                    Perm::from_cycles(4, &[&[0, 1], &[2, 3]]),
                ],
            )
        } else {
            return Err(err());
        };
        self.intern(label.clone(), || {
            let mut g = Group::new(label.clone(), degree, gens, bound)?;
            g.from_catalog = true;
            Ok(g)
        })
    }

    /// Direct product of the given groups, acting on disjoint point sets.
    ///
    /// Nested products are flattened and trivial factors are dropped, so
    /// `G x 1` is literally `G`; this realizes the usual identification
    /// `A(G x 1) = A(G)` throughout the calculus.
    pub fn product_of(&self, parts: &[GroupRef]) -> Result<GroupRef> {
        let mut factors: Vec<GroupRef> = Vec::new();
        for p in parts {
            match p.product_meta() {
                Some(meta) => factors.extend(meta.factors.iter().cloned()),
                None => {
                    if !p.is_trivial() {
                        factors.push(p.clone());
                    }
                }
            }
        }
        if factors.is_empty() {
            return Ok(self.trivial());
        }
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let order: u64 = factors.iter().map(|g| g.order() as u64).product();
        if order > self.limits.element_limit() as u64 {
            return Err(Error::BoundExceeded {
                what: format!(
                    "product {}",
                    factors
                        .iter()
                        .map(|f| f.label())
                        .collect::<Vec<_>>()
                        .join("x")
                ),
                order,
                bound: self.limits.element_limit() as u64,
            });
        }
        let label = factors
            .iter()
            .map(|f| f.label().to_string())
            .collect::<Vec<_>>()
            .join("x");
        self.intern(label.clone(), || {
            let degree: usize = factors.iter().map(|f| f.degree()).sum();
            let mut offsets = Vec::with_capacity(factors.len());
            let mut off = 0;
            for f in &factors {
                offsets.push(off);
                off += f.degree();
            }
            let mut gens = Vec::new();
            for (i, f) in factors.iter().enumerate() {
                for g in f.generators() {
                    gens.push(g.shift(offsets[i], degree));
                }
            }
            let mut g = Group::new(label.clone(), degree, gens, order as usize + 1)?;
            g.product = Some(ProductMeta {
                factors: factors.clone(),
                offsets,
            });
            Ok(g)
        })
    }

    /// Subgroup as a standalone group, acting on the parent's points.
    pub fn subgroup_group(&self, sub: &Subgroup) -> Result<GroupRef> {
        let key = format!(
            "sub:{}:{:016x}",
            sub.parent.label(),
            fnv64(sub.elems.iter().copied())
        );
        let label = format!(
            "{}|S{:08x}",
            sub.parent.label(),
            fnv64(sub.elems.iter().copied()) as u32
        );
        let parent = sub.parent.clone();
        let gens: Vec<Perm> = sub.gens.iter().map(|&g| parent.perm(g).clone()).collect();
        let order = sub.order();
        self.intern(key, || {
            Group::new(label, parent.degree(), gens, order + 1)
        })
    }

    /// Quotient of `parent` by a normal subgroup, realized on the cosets,
    /// together with the canonical projection.
    pub fn quotient(&self, parent: &GroupRef, normal: &Subgroup) -> Result<(GroupRef, GroupHom)> {
        if !Arc::ptr_eq(&normal.parent, parent) {
            return Err(Error::GroupMismatch {
                expected: parent.label().to_string(),
                got: normal.parent.label().to_string(),
            });
        }
        if !normal.is_normal() {
            return Err(Error::NotNormal(parent.label().to_string()));
        }
        let key = format!(
            "quot:{}:{:016x}",
            parent.label(),
            fnv64(normal.elems.iter().copied())
        );
        let label = format!(
            "{}/N{:08x}",
            parent.label(),
            fnv64(normal.elems.iter().copied()) as u32
        );
        // cosets keyed by minimal member, points sorted by that key
        let n = parent.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut coset_mins: Vec<u32> = Vec::new();
        for g in 0..n as u32 {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let members: Vec<u32> = normal.elems.iter().map(|&x| parent.mul(g, x)).collect();
            let min = *members.iter().min().unwrap();
            let c = coset_mins.len() as u32;
            for m in members {
                coset_of[m as usize] = c;
            }
            coset_mins.push(min);
        }
        // renumber cosets so points are sorted by minimal member
        let mut order_idx: Vec<usize> = (0..coset_mins.len()).collect();
        order_idx.sort_by_key(|&i| coset_mins[i]);
        let mut renumber = vec![0u32; coset_mins.len()];
        for (new, &old) in order_idx.iter().enumerate() {
            renumber[old] = new as u32;
        }
        let coset_of: Vec<u32> = coset_of.iter().map(|&c| renumber[c as usize]).collect();
        let mut reps = vec![0u32; coset_mins.len()];
        for (i, &old) in order_idx.iter().enumerate() {
            reps[i] = coset_mins[old];
        }
        let degree = reps.len();
        let act = |g: u32| -> Perm {
            let v: Vec<u16> = (0..degree)
                .map(|c| coset_of[parent.mul(g, reps[c]) as usize] as u16)
                .collect();
            Perm::from_images(v)
        };
        let gen_elems = parent.gen_indices();
        let gens: Vec<Perm> = gen_elems.iter().map(|&g| act(g)).collect();
        let quot = self.intern(key, || Group::new(label, degree, gens, degree + 1))?;
        // projection hom from generator images
        let gen_images: Vec<(u32, u32)> = gen_elems
            .iter()
            .map(|&g| {
                let img = quot.index_of(&act(g)).expect("projection image");
                (g, img)
            })
            .collect();
        let proj = GroupHom::from_gen_images(parent, &quot, &gen_images)?;
        Ok((quot, proj))
    }

    /// The swap isomorphism of a two-block product `AxB -> BxA`.
    pub fn swap_iso(&self, a: &GroupRef, b: &GroupRef) -> Result<GroupHom> {
        let ab = self.product_of(&[a.clone(), b.clone()])?;
        let ba = self.product_of(&[b.clone(), a.clone()])?;
        if a.is_trivial() || b.is_trivial() {
            // products collapse; the swap is the identity
            return Ok(GroupHom::identity(&ab));
        }
        let na = a.product_meta().map_or(1, |m| m.factors.len());
        let nb = b.product_meta().map_or(1, |m| m.factors.len());
        let meta = ab.product_meta().expect("product");
        let total = meta.factors.len();
        debug_assert_eq!(total, na + nb);
        let mut gen_images = Vec::new();
        for g in ab.gen_indices() {
            let comps: Vec<u32> = (0..total).map(|i| ab.factor_component(g, i)).collect();
            let mut swapped: Vec<u32> = Vec::with_capacity(total);
            swapped.extend_from_slice(&comps[na..]);
            swapped.extend_from_slice(&comps[..na]);
            gen_images.push((g, ba.compose_product_element(&swapped)));
        }
        GroupHom::from_gen_images(&ab, &ba, &gen_images)
    }
}

/// Catalog entry point used by the CLI: builds a group from its spec string.
pub fn make_group(store: &GroupStore, spec: &str) -> Result<GroupRef> {
    store.catalog(spec)
}

/// Direct product together with the canonical embeddings and projections.
pub fn direct_product(
    store: &GroupStore,
    a: &GroupRef,
    b: &GroupRef,
) -> Result<(GroupRef, [GroupHom; 2], [GroupHom; 2])> {
    let p = store.product_of(&[a.clone(), b.clone()])?;
    let hom_into = |from: &GroupRef, other_trivial: bool, first: bool| -> Result<GroupHom> {
        if from.is_trivial() {
            return GroupHom::from_gen_images(from, &p, &[]);
        }
        if other_trivial {
            return Ok(GroupHom::identity(&p));
        }
        let meta = p.product_meta().expect("product");
        let nf = from.product_meta().map_or(1, |m| m.factors.len());
        let total = meta.factors.len();
        let gen_images: Vec<(u32, u32)> = from
            .gen_indices()
            .into_iter()
            .map(|g| {
                let comps: Vec<u32> = if from.product_meta().is_some() {
                    (0..nf).map(|i| from.factor_component(g, i)).collect()
                } else {
                    vec![g]
                };
                let mut full = vec![0u32; total];
                let off = if first { 0 } else { total - nf };
                full[off..off + nf].copy_from_slice(&comps);
                (g, p.compose_product_element(&full))
            })
            .collect();
        GroupHom::from_gen_images(from, &p, &gen_images)
    };
    let proj_onto = |to: &GroupRef, other_trivial: bool, first: bool| -> Result<GroupHom> {
        if to.is_trivial() {
            let gen_images: Vec<(u32, u32)> = p.gen_indices().into_iter().map(|g| (g, 0)).collect();
            return GroupHom::from_gen_images(&p, to, &gen_images);
        }
        if other_trivial {
            return Ok(GroupHom::identity(&p));
        }
        let meta = p.product_meta().expect("product");
        let nf = to.product_meta().map_or(1, |m| m.factors.len());
        let total = meta.factors.len();
        let range = if first { 0..nf } else { total - nf..total };
        let gen_images: Vec<(u32, u32)> = p
            .gen_indices()
            .into_iter()
            .map(|g| {
                let comps: Vec<u32> = range.clone().map(|i| p.factor_component(g, i)).collect();
                let img = if to.product_meta().is_some() {
                    to.compose_product_element(&comps)
                } else {
                    comps[0]
                };
                (g, img)
            })
            .collect();
        GroupHom::from_gen_images(&p, to, &gen_images)
    };
    let emb = [
        hom_into(a, b.is_trivial(), true)?,
        hom_into(b, a.is_trivial(), false)?,
    ];
    let proj = [
        proj_onto(a, b.is_trivial(), true)?,
        proj_onto(b, a.is_trivial(), false)?,
    ];
    Ok((p, emb, proj))
}

/// The diagonal subgroup of `G x G`.
pub fn diagonal_subgroup(store: &GroupStore, g: &GroupRef) -> Result<(GroupRef, Subgroup)> {
    let gg = store.product_of(&[g.clone(), g.clone()])?;
    if g.is_trivial() {
        return Ok((gg.clone(), Subgroup::trivial(&gg)));
    }
    let nf = g.product_meta().map_or(1, |m| m.factors.len());
    let gens: Vec<u32> = g
        .gen_indices()
        .into_iter()
        .map(|x| {
            let comps: Vec<u32> = if g.product_meta().is_some() {
                (0..nf).map(|i| g.factor_component(x, i)).collect()
            } else {
                vec![x]
            };
            let mut full = comps.clone();
            full.extend_from_slice(&comps);
            gg.compose_product_element(&full)
        })
        .collect();
    Ok((gg.clone(), Subgroup::from_gens(&gg, gens)))
}

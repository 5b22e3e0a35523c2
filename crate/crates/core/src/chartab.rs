//! Exact character tables by the Burnside-Dixon-Schneider method: class-sum
//! matrices are simultaneously diagonalized over a prime field `F_p` with
//! `p = 1 (mod exp G)` and `p > 2 sqrt|G|`, and the modular characters are
//! lifted to exact cyclotomic values of conductor `exp G` by a discrete
//! Fourier transform over the chosen root-of-unity correspondence.
//!
//! Also houses the rational (Galois-orbit-sum) basis and the value-level
//! elemental operations on class functions used by the representation-ring
//! functors.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{ConjClasses, GroupHom, GroupRef, Limits};
use crate::scalar::{is_prime, mod_inverse, Cyc, Field, Rat};

/// Complete table of irreducible complex characters with exact cyclotomic
/// values of conductor `exp(G)`. Rows are sorted by (degree ascending, value
/// vector lexicographically descending), so the trivial character is row 0.
pub struct CharacterTable {
    pub group: GroupRef,
    pub conductor: usize,
    pub classes: Arc<ConjClasses>,
    /// `rows[i][k]` = value of the i-th irreducible at the k-th class.
    pub rows: Vec<Vec<Cyc>>,
    pub degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Class function of a linear combination of irreducibles.
    pub fn values_of(&self, coeffs: &[Rat]) -> Vec<Cyc> {
        assert_eq!(coeffs.len(), self.dim());
        let mut vals = vec![Cyc::zero(); self.classes.count()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.rows[i].iter().enumerate() {
                vals[k] = vals[k].clone() + v.clone() * Cyc::from_rat(c.clone());
            }
        }
        vals
    }

    /// Coefficients of a class function over the irreducible basis; the
    /// result must come out rational (true for every element this crate
    /// produces, whose coefficients live in the ground field Q).
    pub fn decompose(&self, vals: &[Cyc]) -> Result<Vec<Rat>> {
        assert_eq!(vals.len(), self.classes.count());
        let mut out = Vec::with_capacity(self.dim());
        for row in &self.rows {
            let ip = inner_product(&self.classes, self.group.order(), vals, row);
            let r = ip
                .as_rat()
                .ok_or_else(|| Error::Internal("character decomposition is not rational".into()))?;
            out.push(r);
        }
        Ok(out)
    }
}

/// Hermitian inner product of class functions `(1/|G|) sum n_k f_k conj(h_k)`.
pub fn inner_product(classes: &ConjClasses, order: usize, f: &[Cyc], h: &[Cyc]) -> Cyc {
    let mut acc = Cyc::zero();
    for k in 0..classes.count() {
        let term = f[k].clone() * h[k].conj() * Cyc::from_int(classes.sizes[k] as i64);
        acc = acc + term;
    }
    acc * Cyc::from_rat(Rat::new(1.into(), (order as i64).into()))
}

// ---------------------------------------------------------------------------
// mod-p linear algebra used by the eigenspace splitting

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'cand: for h in 2..p {
        for &q in &factors {
            if modpow(h, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        return h;
    }
    unreachable!("no primitive root mod {p}")
}

type FpMat = Vec<Vec<u64>>;

fn fp_mul_mat_vec(m: &FpMat, v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            (row.iter()
                .zip(v)
                .fold(0u128, |acc, (&a, &b)| acc + a as u128 * b as u128)
                % p as u128) as u64
        })
        .collect()
}

fn fp_rref(m: &mut FpMat, p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(pr, r);
        let inv = mod_inverse(m[r][c] as i64, p as i64) as u64;
        for j in 0..cols {
            m[r][j] = (m[r][j] as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let f = m[i][c];
            for j in 0..cols {
                let sub = f as u128 * m[r][j] as u128 % p as u128;
                m[i][j] = ((m[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn fp_kernel(m: &FpMat, p: u64) -> Vec<Vec<u64>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut red = m.clone();
    let pivots = fp_rref(&mut red, p);
    let mut pivot_of_col = vec![usize::MAX; cols];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_of_col[c] = r;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = (p - red[r][free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Solves `B X = RHS` where the columns of `B` are linearly independent.
fn fp_solve_multi(b_cols: &FpMat, rhs_cols: &FpMat, p: u64) -> FpMat {
    let rows = b_cols.len();
    let s = b_cols[0].len();
    let t = rhs_cols[0].len();
    let mut aug: FpMat = (0..rows)
        .map(|i| {
            let mut row = Vec::with_capacity(s + t);
            row.extend_from_slice(&b_cols[i]);
            row.extend_from_slice(&rhs_cols[i]);
            row
        })
        .collect();
    let pivots = fp_rref(&mut aug, p);
    assert!(
        pivots.len() >= s && pivots[..s].iter().enumerate().all(|(i, &c)| c == i),
        "basis not full column rank"
    );
    (0..s).map(|r| aug[r][s..s + t].to_vec()).collect()
}

/// Characteristic polynomial mod p (coefficients low to high, monic), via
/// Hessenberg reduction and the leading-minor recurrence
/// `p_r = (x - h_rr) p_{r-1} - sum_m h_{m,r} (prod_j h_{j+1,j}) p_{m-1}`.
fn fp_charpoly(mat: &FpMat, p: u64) -> Vec<u64> {
    let n = mat.len();
    let mut h = mat.clone();
    for row in h.iter_mut() {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = mod_inverse(h[k + 1][k] as i64, p as i64) as u64;
        for i in k + 2..n {
            if h[i][k] == 0 {
                continue;
            }
            let f = (h[i][k] as u128 * inv as u128 % p as u128) as u64;
            for j in 0..n {
                let sub = f as u128 * h[k + 1][j] as u128 % p as u128;
                h[i][j] = ((h[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
            for r in 0..n {
                let add = f as u128 * h[r][i] as u128 % p as u128;
                h[r][k + 1] = ((h[r][k + 1] as u128 + add) % p as u128) as u64;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for r in 1..=n {
        let prev = polys[r - 1].clone();
        let mut cur = vec![0u64; r + 1];
        for (i, &c) in prev.iter().enumerate() {
            cur[i + 1] = (cur[i + 1] + c) % p;
            let sub = (h[r - 1][r - 1] % p) as u128 * c as u128 % p as u128;
            cur[i] = ((cur[i] as u128 + p as u128 - sub) % p as u128) as u64;
        }
        let mut prod = 1u64;
        for m in (1..r).rev() {
            prod = (prod as u128 * h[m][m - 1] as u128 % p as u128) as u64;
            let coeff = (h[m - 1][r - 1] as u128 * prod as u128 % p as u128) as u64;
            if coeff != 0 {
                for (i, &c) in polys[m - 1].iter().enumerate() {
                    let sub = coeff as u128 * c as u128 % p as u128;
                    cur[i] = ((cur[i] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

fn poly_roots_mod_p(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = ((acc as u128 * x as u128 + c as u128) % p as u128) as u64;
            }
            acc == 0
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Dixon-Schneider proper

/// Class-sum matrix: `M_i[j][k] = #{x in C_i : x^{-1} z_k in C_j}`, so that
/// the vectors of central-character values are common eigenvectors:
/// `(M_i w)_j = omega_i w_j` for `w_k = omega_k = n_k chi(g_k) / chi(1)`.
fn class_matrix(g: &GroupRef, i: usize, p: u64) -> FpMat {
    let cc = g.conjugacy_classes();
    let r = cc.count();
    let mut m = vec![vec![0u64; r]; r];
    let members: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| cc.class_of[x as usize] == i)
        .collect();
    for k in 0..r {
        let zk = cc.reps[k];
        for &x in &members {
            let j = cc.class_of[g.mul(g.inv(x), zk) as usize];
            m[j][k] = (m[j][k] + 1) % p;
        }
    }
    m
}

fn compute_table(g: &GroupRef) -> CharacterTable {
    let order = g.order() as u64;
    let e = g.exponent() as u64;
    let cc = g.conjugacy_classes();
    let r = cc.count();

    // prime with p = 1 (mod e) and p > 2 sqrt|G|, hence p does not divide |G|
    let sqrt_bound = (2.0 * (order as f64).sqrt()).ceil() as u64 + 1;
    let mut p = e + 1;
    while p < sqrt_bound.max(3) || !is_prime(p) {
        p += e;
    }

    // simultaneous eigenspace splitting of the class algebra over F_p
    let mut spaces: Vec<FpMat> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mi = class_matrix(g, i, p);
        let mut next: Vec<FpMat> = Vec::new();
        for basis in spaces {
            let s = basis.len();
            if s == 1 {
                next.push(basis);
                continue;
            }
            let b_cols: FpMat = (0..r)
                .map(|row| (0..s).map(|t| basis[t][row]).collect())
                .collect();
            let images: Vec<Vec<u64>> = basis.iter().map(|v| fp_mul_mat_vec(&mi, v, p)).collect();
            let rhs_cols: FpMat = (0..r)
                .map(|row| (0..s).map(|t| images[t][row]).collect())
                .collect();
            // restriction matrix: column t holds the coordinates of M_i b_t
            let restr = fp_solve_multi(&b_cols, &rhs_cols, p);
            let roots = poly_roots_mod_p(&fp_charpoly(&restr, p), p);
            let mut split_dim = 0;
            for lam in roots {
                let mut shifted = restr.clone();
                for d in 0..s {
                    shifted[d][d] = (shifted[d][d] + p - lam % p) % p;
                }
                let kern = fp_kernel(&shifted, p);
                if kern.is_empty() {
                    continue;
                }
                split_dim += kern.len();
                let sub: FpMat = kern
                    .iter()
                    .map(|kv| {
                        let mut full = vec![0u64; r];
                        for (t, &c) in kv.iter().enumerate() {
                            for row in 0..r {
                                full[row] = ((full[row] as u128
                                    + c as u128 * basis[t][row] as u128)
                                    % p as u128) as u64;
                            }
                        }
                        full
                    })
                    .collect();
                next.push(sub);
            }
            assert_eq!(split_dim, s, "class algebra failed to diagonalize");
        }
        spaces = next;
    }
    assert!(
        spaces.iter().all(|s| s.len() == 1),
        "splitting incomplete: {} characters among {} spaces",
        r,
        spaces.len()
    );

    // recover modular characters and lift to exact cyclotomic values
    let inv_mod = |x: u64| -> u64 { mod_inverse(x as i64, p as i64) as u64 };
    let isqrt = |n: u64| -> u64 { (n as f64).sqrt().floor() as u64 };
    let inverse_class: Vec<usize> = (0..r)
        .map(|k| cc.class_of[g.inv(cc.reps[k]) as usize])
        .collect();
    let power_class: Vec<Vec<usize>> = (0..r)
        .map(|k| {
            let mut v = Vec::with_capacity(e as usize);
            let mut cur = 0u32;
            for _ in 0..e {
                v.push(cc.class_of[cur as usize]);
                cur = g.mul(cc.reps[k], cur);
            }
            v
        })
        .collect();
    let z = modpow(primitive_root(p), (p - 1) / e, p);

    let mut table: Vec<(usize, Vec<Cyc>)> = Vec::with_capacity(r);
    for space in spaces {
        let mut w = space.into_iter().next().unwrap();
        assert!(w[0] != 0, "eigenvector vanishes at the identity class");
        let norm = inv_mod(w[0]);
        for x in w.iter_mut() {
            *x = (*x as u128 * norm as u128 % p as u128) as u64;
        }
        // degree from the orthogonality normalization
        let mut s = 0u64;
        for k in 0..r {
            let term = w[k] as u128 * w[inverse_class[k]] as u128 % p as u128;
            let term = term * inv_mod(cc.sizes[k] as u64) as u128 % p as u128;
            s = ((s as u128 + term) % p as u128) as u64;
        }
        let d2 = (order % p) as u128 * inv_mod(s) as u128 % p as u128;
        let d = (1..=isqrt(order))
            .find(|&c| c as u128 * c as u128 % p as u128 == d2)
            .expect("degree lift");
        // chi(g_k) = d w_k / n_k mod p
        let chi_p: Vec<u64> = (0..r)
            .map(|k| {
                (d as u128 * w[k] as u128 % p as u128 * inv_mod(cc.sizes[k] as u64) as u128
                    % p as u128) as u64
            })
            .collect();
        // DFT lift: multiplicities of each e-th root of unity among the
        // eigenvalues of the representing matrix at g_k
        let inv_e = inv_mod(e % p);
        let values: Vec<Cyc> = (0..r)
            .map(|k| {
                let mut val = Cyc::zero();
                let mut total = 0u64;
                for t in 0..e {
                    let mut acc = 0u128;
                    for s_exp in 0..e {
                        let zpow = modpow(z, (t * s_exp) % e, p);
                        let zinv = inv_mod(zpow);
                        acc = (acc + chi_p[power_class[k][s_exp as usize]] as u128 * zinv as u128)
                            % p as u128;
                    }
                    let m_t = (acc * inv_e as u128 % p as u128) as u64;
                    assert!(m_t <= d, "multiplicity lift out of range");
                    total += m_t;
                    if m_t != 0 {
                        val = val + Cyc::zeta(e as usize, t as i64) * Cyc::from_int(m_t as i64);
                    }
                }
                assert_eq!(total, d, "root-of-unity multiplicities don't sum to degree");
                val
            })
            .collect();
        assert_eq!(values[0], Cyc::from_int(d as i64));
        table.push((d as usize, values));
    }

    // deterministic row order: degree ascending, value vectors lex descending
    let phi_e = crate::scalar::euler_phi(e as usize).max(1);
    let key_of = |vals: &Vec<Cyc>| -> Vec<Vec<Rat>> {
        vals.iter()
            .map(|v| {
                let emb = v.embed(e as usize);
                (0..phi_e).map(|i| emb.coeff(i)).collect()
            })
            .collect()
    };
    table.sort_by(|(da, va), (db, vb)| da.cmp(db).then_with(|| key_of(vb).cmp(&key_of(va))));

    let degrees: Vec<usize> = table.iter().map(|(d, _)| *d).collect();
    let rows: Vec<Vec<Cyc>> = table.into_iter().map(|(_, v)| v).collect();

    assert_eq!(
        degrees.iter().map(|d| d * d).sum::<usize>(),
        order as usize,
        "degree squares must sum to |G|"
    );
    for d in &degrees {
        assert_eq!(order as usize % d, 0, "degrees divide |G|");
    }
    // exact row orthogonality is the final correctness guard
    for i in 0..r {
        for j in i..r {
            let ip = inner_product(&cc, order as usize, &rows[i], &rows[j]);
            let expected = if i == j { Cyc::one() } else { Cyc::zero() };
            assert!(ip == expected, "orthogonality failure at ({i},{j})");
        }
    }

    CharacterTable {
        group: g.clone(),
        conductor: e as usize,
        classes: cc,
        rows,
        degrees,
    }
}

/// Character table, cached on the group. Refuses groups above the bound.
pub fn character_table(g: &GroupRef, limits: Limits) -> Result<Arc<CharacterTable>> {
    if g.order() > limits.order_bound {
        return Err(Error::BoundExceeded {
            what: format!("character table of {}", g.label()),
            order: g.order() as u64,
            bound: limits.order_bound as u64,
        });
    }
    Ok(g.chartab_cache.get_or_init(|| Arc::new(compute_table(g))).clone())
}

// ---------------------------------------------------------------------------
// rational basis

/// Basis of the rational-span representation ring: one Galois-orbit sum per
/// orbit of irreducibles, all values rational integers. Ordered by (degree,
/// value vector lex descending), matching the complex table's convention.
pub struct RationalBasis {
    pub table: Arc<CharacterTable>,
    /// orbit-sum value rows (rational numbers stored as `Cyc` of conductor 1)
    pub rows: Vec<Vec<Cyc>>,
    pub degrees: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

pub fn rational_basis(table: &Arc<CharacterTable>) -> RationalBasis {
    let e = table.conductor;
    let r = table.dim();
    // orbit of each row under the Galois action chi -> chi(g^t)
    let mut orbit_of = vec![usize::MAX; r];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..r {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let o = orbits.len();
        let mut members = vec![i];
        orbit_of[i] = o;
        let mut frontier = vec![i];
        while let Some(j) = frontier.pop() {
            for t in 2..e.max(2) {
                if num_integer::gcd(t, e) != 1 {
                    continue;
                }
                let image: Vec<Cyc> = table.rows[j].iter().map(|v| v.galois(t as i64)).collect();
                let img_idx = table
                    .rows
                    .iter()
                    .position(|row| row == &image)
                    .expect("Galois action permutes the irreducible characters");
                if orbit_of[img_idx] == usize::MAX {
                    orbit_of[img_idx] = o;
                    members.push(img_idx);
                    frontier.push(img_idx);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let mut indexed: Vec<(usize, Vec<Cyc>, Vec<usize>)> = orbits
        .into_iter()
        .map(|members| {
            let mut sum = vec![Cyc::zero(); table.classes.count()];
            let mut degree = 0;
            for &i in &members {
                degree += table.degrees[i];
                for (k, v) in table.rows[i].iter().enumerate() {
                    sum[k] = sum[k].clone() + v.clone();
                }
            }
            for v in &sum {
                assert!(v.is_rational(), "orbit sum must be rational-valued");
            }
            (degree, sum, members)
        })
        .collect();
    indexed.sort_by(|(da, va, _), (db, vb, _)| {
        da.cmp(db).then_with(|| {
            let ka: Vec<Rat> = va.iter().map(|v| v.as_rat().unwrap()).collect();
            let kb: Vec<Rat> = vb.iter().map(|v| v.as_rat().unwrap()).collect();
            kb.cmp(&ka)
        })
    });
    let degrees = indexed.iter().map(|(d, _, _)| *d).collect();
    let rows = indexed.iter().map(|(_, v, _)| v.clone()).collect();
    let orbits = indexed.into_iter().map(|(_, _, m)| m).collect();
    RationalBasis {
        table: table.clone(),
        rows,
        degrees,
        orbits,
    }
}

impl RationalBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn values_of(&self, coeffs: &[Rat]) -> Vec<Cyc> {
        assert_eq!(coeffs.len(), self.dim());
        let mut vals = vec![Cyc::zero(); self.table.classes.count()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.rows[i].iter().enumerate() {
                vals[k] = vals[k].clone() + v.clone() * Cyc::from_rat(c.clone());
            }
        }
        vals
    }

    /// Decomposes a class function lying in the rational span: the orbit-sum
    /// coefficient equals the multiplicity of any orbit member, and all
    /// members must agree.
    pub fn decompose(&self, vals: &[Cyc]) -> Result<Vec<Rat>> {
        let irr = self.table.decompose(vals)?;
        let mut out = Vec::with_capacity(self.dim());
        for members in &self.orbits {
            let c = irr[members[0]].clone();
            for &m in members {
                if irr[m] != c {
                    return Err(Error::Internal(
                        "class function is not in the rational span".into(),
                    ));
                }
            }
            out.push(c);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// elemental operations on class functions

/// Restriction of a class function along a subgroup (given as a standalone
/// group acting on the parent's points).
pub fn restrict_values(big: &GroupRef, sub: &GroupRef, vals: &[Cyc]) -> Vec<Cyc> {
    let bc = big.conjugacy_classes();
    let sc = sub.conjugacy_classes();
    (0..sc.count())
        .map(|k| {
            let perm = sub.perm(sc.reps[k]);
            let idx = big.index_of(perm).expect("subgroup element not in parent");
            vals[bc.class_of[idx as usize]].clone()
        })
        .collect()
}

/// Induction `chi^(g) = (1/|H|) sum_{x in G, x^-1 g x in H} chi(x^-1 g x)`.
pub fn induce_values(big: &GroupRef, sub: &GroupRef, vals: &[Cyc]) -> Vec<Cyc> {
    let bc = big.conjugacy_classes();
    let sc = sub.conjugacy_classes();
    let inv_h = Cyc::from_rat(Rat::new(1.into(), (sub.order() as i64).into()));
    (0..bc.count())
        .map(|k| {
            let gk = bc.reps[k];
            let mut acc = Cyc::zero();
            for x in 0..big.order() as u32 {
                let y = big.mul(big.mul(big.inv(x), gk), x);
                if let Some(ys) = sub.index_of(big.perm(y)) {
                    acc = acc + vals[sc.class_of[ys as usize]].clone();
                }
            }
            acc * inv_h.clone()
        })
        .collect()
}

/// Inflation along a projection `big -> quot` (pullback of values).
pub fn inflate_values(proj: &GroupHom, vals_on_quot: &[Cyc]) -> Vec<Cyc> {
    let bc = proj.source.conjugacy_classes();
    let qc = proj.target.conjugacy_classes();
    (0..bc.count())
        .map(|k| vals_on_quot[qc.class_of[proj.apply(bc.reps[k]) as usize]].clone())
        .collect()
}

/// Deflation along a projection `big -> quot` by averaging over the kernel:
/// the character of the coinvariants in characteristic 0.
pub fn deflate_values(proj: &GroupHom, vals_on_big: &[Cyc]) -> Vec<Cyc> {
    let big = &proj.source;
    let bc = big.conjugacy_classes();
    let qc = proj.target.conjugacy_classes();
    let kernel: Vec<u32> = (0..big.order() as u32)
        .filter(|&x| proj.apply(x) == 0)
        .collect();
    let inv_n = Cyc::from_rat(Rat::new(1.into(), (kernel.len() as i64).into()));
    // one preimage per quotient element
    let mut lift = vec![u32::MAX; proj.target.order()];
    for x in 0..big.order() as u32 {
        let fx = proj.apply(x);
        if lift[fx as usize] == u32::MAX {
            lift[fx as usize] = x;
        }
    }
    (0..qc.count())
        .map(|k| {
            let g = lift[qc.reps[k] as usize];
            let mut acc = Cyc::zero();
            for &n in &kernel {
                acc = acc + vals_on_big[bc.class_of[big.mul(g, n) as usize]].clone();
            }
            acc * inv_n.clone()
        })
        .collect()
}

/// Transport of a class function along an isomorphism.
pub fn transport_values(iso: &GroupHom, vals_on_source: &[Cyc]) -> Vec<Cyc> {
    assert!(iso.is_isomorphism());
    let sc = iso.source.conjugacy_classes();
    let tc = iso.target.conjugacy_classes();
    let inv = iso.inverse().expect("isomorphism");
    (0..tc.count())
        .map(|k| vals_on_source[sc.class_of[inv.apply(tc.reps[k]) as usize]].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupStore, Limits, Subgroup};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn store() -> GroupStore {
        GroupStore::new(Limits::default())
    }

    #[test]
    fn table_c2() {
        let s = store();
        let g = s.catalog("C2").unwrap();
        let t = character_table(&g, s.limits).unwrap();
        assert_eq!(t.degrees, vec![1, 1]);
        assert_eq!(t.rows[0], vec![Cyc::one(), Cyc::one()]);
        assert_eq!(t.rows[1], vec![Cyc::one(), Cyc::from_int(-1)]);
    }

    #[test]
    fn table_c3_rows_are_ordered() {
        let s = store();
        let g = s.catalog("C3").unwrap();
        let t = character_table(&g, s.limits).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1]);
        assert_eq!(t.rows[0], vec![Cyc::one(); 3]);
        // second row pairs with its conjugate third row
        let z = Cyc::zeta(3, 1);
        let z2 = Cyc::zeta(3, 2);
        assert_eq!(t.rows[1][1], z.clone());
        assert_eq!(t.rows[1][2], z2.clone());
        assert_eq!(t.rows[2][1], z2);
        assert_eq!(t.rows[2][2], z);
    }

    #[test]
    fn degrees_of_catalog_groups() {
        let s = store();
        for (spec, mut expect) in [
            ("S3", vec![1, 1, 2]),
            ("D8", vec![1, 1, 1, 1, 2]),
            ("Q8", vec![1, 1, 1, 1, 2]),
            ("A4", vec![1, 1, 1, 3]),
            ("S4", vec![1, 1, 2, 3, 3]),
            ("C2xC4", vec![1; 8]),
            ("D12", vec![1, 1, 1, 1, 2, 2]),
        ] {
            let g = s.catalog(spec).unwrap();
            let t = character_table(&g, s.limits).unwrap();
            let mut got = t.degrees.clone();
            got.sort_unstable();
            expect.sort_unstable();
            assert_eq!(got, expect, "{spec}");
        }
    }

    #[test]
    fn orthogonality_is_checked_on_larger_groups() {
        // compute_table asserts exact orthogonality internally
        let s = store();
        for spec in ["S4", "C2xC2xC2", "C3xC3", "D10", "C2xA4", "S3xS3"] {
            let g = s.catalog(spec).unwrap();
            character_table(&g, s.limits).unwrap();
        }
    }

    #[test]
    fn rational_basis_examples() {
        let s = store();
        // C3: trivial plus the orbit sum (2, -1, -1)
        let g = s.catalog("C3").unwrap();
        let t = character_table(&g, s.limits).unwrap();
        let rb = rational_basis(&t);
        assert_eq!(rb.dim(), 2);
        assert_eq!(rb.degrees, vec![1, 2]);
        assert_eq!(
            rb.rows[1],
            vec![Cyc::from_int(2), Cyc::from_int(-1), Cyc::from_int(-1)]
        );
        // C2: already rational
        let g = s.catalog("C2").unwrap();
        let rb = rational_basis(&character_table(&g, s.limits).unwrap());
        assert_eq!(rb.dim(), 2);
        // C5: degrees 1 and 4
        let g = s.catalog("C5").unwrap();
        let rb = rational_basis(&character_table(&g, s.limits).unwrap());
        assert_eq!(rb.degrees, vec![1, 4]);
        // number of orbits equals the number of rational classes
        for spec in ["C4", "C6", "Q8", "A4", "C3xC3"] {
            let g = s.catalog(spec).unwrap();
            let t = character_table(&g, s.limits).unwrap();
            let rb = rational_basis(&t);
            let e = g.exponent();
            let cc = g.conjugacy_classes();
            // rational classes: orbits of classes under g -> g^t
            let mut class_orbit = vec![usize::MAX; cc.count()];
            let mut count = 0;
            for k in 0..cc.count() {
                if class_orbit[k] != usize::MAX {
                    continue;
                }
                count += 1;
                let mut frontier = vec![k];
                class_orbit[k] = count;
                while let Some(j) = frontier.pop() {
                    for t_exp in 1..e {
                        if num_integer::gcd(t_exp, e) != 1 {
                            continue;
                        }
                        let mut pw = 0u32;
                        for _ in 0..t_exp {
                            pw = g.mul(cc.reps[j], pw);
                        }
                        let kk = cc.class_of[pw as usize];
                        if class_orbit[kk] == usize::MAX {
                            class_orbit[kk] = count;
                            frontier.push(kk);
                        }
                    }
                }
            }
            assert_eq!(rb.dim(), count, "{spec}");
        }
    }

    #[test]
    fn elemental_value_operations() {
        let s = store();
        let c2 = s.catalog("C2").unwrap();
        let t = character_table(&c2, s.limits).unwrap();
        // Ind_1^C2(trivial) = regular = chi_triv + chi_sign
        let triv_sub = s
            .subgroup_group(&Subgroup::trivial(&c2))
            .unwrap();
        let ind = induce_values(&c2, &triv_sub, &[Cyc::one()]);
        let coeffs = t.decompose(&ind).unwrap();
        assert_eq!(coeffs, vec![Rat::one(), Rat::one()]);

        // Def^{C2}_1: sign -> 0, trivial -> trivial
        let (q, proj) = s.quotient(&c2, &Subgroup::full(&c2)).unwrap();
        assert!(q.is_trivial());
        let def_sign = deflate_values(&proj, &t.rows[1]);
        assert!(def_sign[0].is_zero());
        let def_triv = deflate_values(&proj, &t.rows[0]);
        assert_eq!(def_triv[0], Cyc::one());

        // Res of the trivial character is trivial
        let s3 = s.catalog("S3").unwrap();
        let sub3 = {
            let r3 = (1..6).find(|&i| s3.elem_order(i) == 3).unwrap();
            s.subgroup_group(&Subgroup::from_gens(&s3, vec![r3])).unwrap()
        };
        let t3 = character_table(&s3, s.limits).unwrap();
        let res = restrict_values(&s3, &sub3, &t3.rows[0]);
        assert!(res.iter().all(|v| *v == Cyc::one()));
    }

    #[test]
    fn frobenius_reciprocity() {
        // <Ind chi, psi> = <chi, Res psi> on random rational combinations
        let s = store();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (big_spec, order_of_sub) in [("S3", 3), ("D8", 4), ("A4", 4)] {
            let big = s.catalog(big_spec).unwrap();
            let tb = character_table(&big, s.limits).unwrap();
            let lat = crate::lattice::subgroup_classes(&big, s.limits).unwrap();
            let class = (0..lat.count())
                .find(|&i| lat.classes[i].order == order_of_sub)
                .unwrap();
            let sub = s.subgroup_group(&lat.classes[class].rep).unwrap();
            let ts = character_table(&sub, s.limits).unwrap();
            for _ in 0..10 {
                let chi: Vec<Cyc> = ts
                    .values_of(
                        &(0..ts.dim())
                            .map(|_| crate::scalar::rat_int(rng.gen_range(-2..=2)))
                            .collect::<Vec<_>>(),
                    );
                let psi: Vec<Cyc> = tb.values_of(
                    &(0..tb.dim())
                        .map(|_| crate::scalar::rat_int(rng.gen_range(-2..=2)))
                        .collect::<Vec<_>>(),
                );
                let ind_chi = induce_values(&big, &sub, &chi);
                let res_psi = restrict_values(&big, &sub, &psi);
                let lhs = inner_product(&big.conjugacy_classes(), big.order(), &ind_chi, &psi);
                let rhs = inner_product(&sub.conjugacy_classes(), sub.order(), &chi, &res_psi);
                assert!(lhs == rhs, "{big_spec}");
            }
        }
    }

    #[test]
    fn deflation_inflation_fixes_inflated_characters() {
        let s = store();
        let d8 = s.catalog("D8").unwrap();
        let center = (1..8)
            .find(|&x| d8.elem_order(x) == 2 && (0..8).all(|y| d8.mul(x, y) == d8.mul(y, x)))
            .unwrap();
        let n = Subgroup::from_gens(&d8, vec![center]);
        let (_, proj) = s.quotient(&d8, &n).unwrap();
        let tq = character_table(&proj.target, s.limits).unwrap();
        for row in &tq.rows {
            let inflated = inflate_values(&proj, row);
            let back = deflate_values(&proj, &inflated);
            assert_eq!(&back, row);
        }
    }
}

//! Exact scalars: arbitrary-precision rationals, cyclotomic numbers in the
//! power basis modulo the cyclotomic polynomial, and prime fields with a
//! runtime modulus. All certificate arithmetic is exact; nothing here ever
//! touches floating point.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The scalar interface all exact linear algebra is generic over.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    /// Exact string form used in serialized reports ("3/2", "z5^2+1", "4 mod 7").
    fn exact_str(&self) -> String {
        format!("{self}")
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Rat {
        rat_int(n)
    }
}

// ---------------------------------------------------------------------------
// cyclotomic numbers

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
/// Computed by exact division of x^n - 1 by the proper cyclotomic divisors.
fn cyclotomic_poly(n: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        // exact division by the monic phi_d
        let deg_q = num.len() - phi_d.len();
        let mut quot = vec![0i64; deg_q + 1];
        for i in (0..=deg_q).rev() {
            let c = num[i + phi_d.len() - 1];
            quot[i] = c;
            if c != 0 {
                for (j, &pc) in phi_d.iter().enumerate() {
                    num[i + j] -= c * pc;
                }
            }
        }
        assert!(num.iter().all(|&c| c == 0), "cyclotomic division inexact");
        num = quot;
    }
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// An element of the cyclotomic field of a given conductor, stored on the
/// power basis `1, z, ..., z^(phi(n)-1)` with `z` a primitive n-th root of
/// unity. Binary operations embed into the lcm conductor; rational values
/// normalize to conductor 1.
#[derive(Clone)]
pub struct Cyc {
    n: usize,
    coeffs: Vec<Rat>,
}

impl Cyc {
    pub fn from_rat(r: Rat) -> Cyc {
        Cyc {
            n: 1,
            coeffs: vec![r],
        }
    }

    /// z_n^k, reduced into the power basis.
    pub fn zeta(n: usize, k: i64) -> Cyc {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        Cyc::reduce(n, poly)
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    /// i-th power-basis coefficient (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    fn reduce(n: usize, mut poly: Vec<Rat>) -> Cyc {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        if poly.len() > deg {
            for i in (deg..poly.len()).rev() {
                if poly[i].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut poly[i], Rat::zero());
                for (j, &pc) in phi.iter().take(deg).enumerate() {
                    let t = &c * rat_int(pc);
                    poly[i - deg + j] -= t;
                }
            }
        }
        poly.truncate(deg.max(1));
        poly.resize(deg.max(1), Rat::zero());
        let mut v = Cyc { n, coeffs: poly };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.n > 1 && self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            self.coeffs.truncate(1);
            self.n = 1;
        }
    }

    /// Re-expresses the value in the field of conductor `m` (n must divide m).
    pub fn embed(&self, m: usize) -> Cyc {
        assert!(m % self.n == 0, "conductor {} does not divide {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = m / self.n;
        let phi_m = cyclotomic_poly(m).len() - 1;
        let mut poly = vec![Rat::zero(); self.coeffs.len() * step + phi_m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] += c;
        }
        Cyc::reduce(m, poly)
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1 || self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Complex conjugation, z -> z^(n-1).
    pub fn conj(&self) -> Cyc {
        self.galois(self.n as i64 - 1)
    }

    /// The Galois automorphism z -> z^t; requires gcd(t, n) = 1.
    pub fn galois(&self, t: i64) -> Cyc {
        let t = t.rem_euclid(self.n as i64) as usize;
        assert!(num_integer::gcd(t, self.n) == 1, "galois exponent not coprime");
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (i * t) % self.n;
            if poly.len() <= k {
                poly.resize(k + 1, Rat::zero());
            }
            poly[k] += c;
        }
        Cyc::reduce(self.n, poly)
    }

    fn binop(&self, other: &Cyc, f: impl FnOnce(&Cyc, &Cyc) -> Cyc) -> Cyc {
        let m = num_integer::lcm(self.n, other.n);
        f(&self.embed(m), &other.embed(m))
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let m = num_integer::lcm(self.n, other.n);
        self.embed(m).coeffs == other.embed(m).coeffs
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, rhs: Cyc) -> Cyc {
        self.binop(&rhs, |a, b| {
            let coeffs = a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect();
            let mut v = Cyc { n: a.n, coeffs };
            v.normalize();
            v
        })
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, rhs: Cyc) -> Cyc {
        self + (-rhs)
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        self.binop(&rhs, |a, b| {
            let mut poly = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len()];
            for (i, x) in a.coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.coeffs.iter().enumerate() {
                    if !y.is_zero() {
                        poly[i + j] += x * y;
                    }
                }
            }
            Cyc::reduce(a.n, poly)
        })
    }
}

impl Zero for Cyc {
    fn zero() -> Cyc {
        Cyc::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for Cyc {
    fn one() -> Cyc {
        Cyc::from_rat(Rat::one())
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign_neg = c.is_negative();
            let mag = c.abs();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            if i > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                write!(f, "z{}", self.n)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Field for Cyc {
    /// Inversion by the extended Euclidean algorithm in Q[x] against the
    /// cyclotomic polynomial, which is irreducible over Q.
    fn inv(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rat() {
            return Some(Cyc::from_rat(r.recip()));
        }
        type Poly = Vec<Rat>;
        let trim = |p: &mut Poly| {
            while p.len() > 1 && p.last().unwrap().is_zero() {
                p.pop();
            }
        };
        let is_zero_poly = |p: &Poly| p.iter().all(|c| c.is_zero());
        // (quotient, remainder) of a / b with b nonzero
        let divmod = |a: &Poly, b: &Poly| -> (Poly, Poly) {
            let mut r = a.clone();
            trim(&mut r);
            let db = b.len() - 1;
            let lead = b.last().unwrap().clone();
            if r.len() <= db {
                return (vec![Rat::zero()], r);
            }
            let mut q = vec![Rat::zero(); r.len() - db];
            for i in (db..r.len()).rev() {
                if r[i].is_zero() {
                    continue;
                }
                let c = &r[i] / &lead;
                q[i - db] = c.clone();
                for (j, bc) in b.iter().enumerate() {
                    let t = &c * bc;
                    r[i - db + j] -= t;
                }
            }
            trim(&mut r);
            (q, r)
        };
        let poly_mul = |a: &Poly, b: &Poly| -> Poly {
            let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        let poly_sub = |a: &Poly, b: &Poly| -> Poly {
            let mut out = a.clone();
            out.resize(out.len().max(b.len()), Rat::zero());
            for (i, y) in b.iter().enumerate() {
                out[i] -= y;
            }
            let mut out = out;
            trim(&mut out);
            out
        };
        // extended euclid: s*self + t*phi = gcd = const
        let phi: Poly = cyclotomic_poly(self.n)
            .iter()
            .map(|&c| rat_int(c))
            .collect();
        let mut r0: Poly = phi;
        let mut r1: Poly = self.coeffs.clone();
        trim(&mut r1);
        let mut s0: Poly = vec![Rat::zero()];
        let mut s1: Poly = vec![Rat::one()];
        while !is_zero_poly(&r1) {
            let (q, r) = divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant c; inverse = s0 / c
        assert_eq!(r0.len(), 1, "cyclotomic polynomial not coprime to value");
        let c = r0[0].clone();
        let inv_coeffs: Poly = s0.into_iter().map(|x| x / &c).collect();
        Some(Cyc::reduce(self.n, inv_coeffs))
    }

    fn from_int(n: i64) -> Cyc {
        Cyc::from_rat(rat_int(n))
    }
}

// ---------------------------------------------------------------------------
// prime fields

/// An element of a prime field with runtime modulus.
///
/// The `Int` arm carries the canonical images of small integers (as produced
/// by `zero()`, `one()` and `from_int`) before they have met a modulus; any
/// arithmetic with a `Mod` value binds them. Generic code only ever compares
/// matrix entries (always bound) against these constants, so the integer
/// fallback semantics are never observable on a reduced value.
#[derive(Clone, Copy, Debug)]
pub enum Fp {
    Int(i64),
    Mod { v: u64, q: u64 },
}

impl Fp {
    pub fn new(v: i64, q: u64) -> Fp {
        assert!(q >= 2);
        Fp::Mod {
            v: v.rem_euclid(q as i64) as u64,
            q,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Fp::Int(_) => None,
            Fp::Mod { q, .. } => Some(*q),
        }
    }

    fn bind(self, q: u64) -> Fp {
        match self {
            Fp::Int(v) => Fp::new(v, q),
            m => m,
        }
    }

    fn lift_pair(a: Fp, b: Fp) -> (Fp, Fp) {
        match (a.modulus(), b.modulus()) {
            (Some(q), _) => (a, b.bind(q)),
            (None, Some(q)) => (a.bind(q), b),
            (None, None) => (a, b),
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match Fp::lift_pair(*self, *other) {
            (Fp::Int(a), Fp::Int(b)) => a == b,
            (Fp::Mod { v: a, q: p }, Fp::Mod { v: b, q: r }) => {
                assert_eq!(p, r, "prime field modulus mismatch");
                a == b
            }
            _ => unreachable!(),
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        match Fp::lift_pair(self, rhs) {
            (Fp::Int(a), Fp::Int(b)) => Fp::Int(a.checked_add(b).expect("overflow")),
            (Fp::Mod { v: a, q }, Fp::Mod { v: b, .. }) => Fp::Mod { v: (a + b) % q, q },
            _ => unreachable!(),
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self {
            Fp::Int(a) => Fp::Int(-a),
            Fp::Mod { v, q } => Fp::Mod {
                v: (q - v % q) % q,
                q,
            },
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        match Fp::lift_pair(self, rhs) {
            (Fp::Int(a), Fp::Int(b)) => Fp::Int(a.checked_mul(b).expect("overflow")),
            (Fp::Mod { v: a, q }, Fp::Mod { v: b, .. }) => Fp::Mod {
                v: ((a as u128 * b as u128) % q as u128) as u64,
                q,
            },
            _ => unreachable!(),
        }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp::Int(0)
    }
    fn is_zero(&self) -> bool {
        match self {
            Fp::Int(v) => *v == 0,
            Fp::Mod { v, .. } => *v == 0,
        }
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp::Int(1)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fp::Int(v) => write!(f, "{v}"),
            Fp::Mod { v, q } => write!(f, "{v} mod {q}"),
        }
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Fp> {
        match self {
            Fp::Int(0) => None,
            Fp::Int(1) => Some(Fp::Int(1)),
            Fp::Int(-1) => Some(Fp::Int(-1)),
            Fp::Int(v) => panic!("inverse of unbound prime-field constant {v}"),
            Fp::Mod { v, q } => {
                if *v == 0 {
                    return None;
                }
                Some(Fp::new(mod_inverse(*v as i64, *q as i64), *q))
            }
        }
    }

    fn from_int(n: i64) -> Fp {
        Fp::Int(n)
    }
}

/// Inverse of a mod q via extended Euclid; panics if gcd(a, q) != 1.
pub fn mod_inverse(a: i64, q: i64) -> i64 {
    let (mut r0, mut r1) = (q, a.rem_euclid(q));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    assert_eq!(r0, 1, "not invertible mod {q}");
    s0.rem_euclid(q)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, euler_phi(105));
    }

    #[test]
    fn root_of_unity_identities() {
        // z3 + z3^2 = -1
        let s = Cyc::zeta(3, 1) + Cyc::zeta(3, 2);
        assert_eq!(s, Cyc::from_int(-1));
        // conj(z5) = z5^4
        assert_eq!(Cyc::zeta(5, 1).conj(), Cyc::zeta(5, 4));
        // z4 * z4 = -1
        assert_eq!(Cyc::zeta(4, 1) * Cyc::zeta(4, 1), Cyc::from_int(-1));
        // Phi_n(zeta_n) = 0 for a few n
        for n in [3usize, 4, 5, 6, 8, 12] {
            let phi = cyclotomic_poly(n);
            let mut acc = Cyc::zero();
            for (k, &c) in phi.iter().enumerate() {
                acc = acc + Cyc::zeta(n, k as i64) * Cyc::from_int(c);
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta) != 0");
        }
    }

    #[test]
    fn conj_is_involutive() {
        let v = Cyc::zeta(12, 5) + Cyc::zeta(12, 2) * Cyc::from_rat(rat(3, 2));
        assert_eq!(v.conj().conj(), v);
    }

    #[test]
    fn embedding_and_equality_across_conductors() {
        // z6^2 is a primitive cube root: equals z3
        assert_eq!(Cyc::zeta(6, 2), Cyc::zeta(3, 1));
        // z6 = -z3^2
        assert_eq!(Cyc::zeta(6, 1), -Cyc::zeta(3, 2));
    }

    #[test]
    fn cyc_inverse() {
        let v = Cyc::zeta(5, 1) + Cyc::one();
        let inv = v.clone().inv().unwrap();
        assert_eq!(v * inv, Cyc::one());
        assert!(Cyc::zero().inv().is_none());
        // rational fast path
        assert_eq!(
            Cyc::from_rat(rat(3, 2)).inv().unwrap(),
            Cyc::from_rat(rat(2, 3))
        );
    }

    #[test]
    fn cyc_display() {
        assert_eq!(Cyc::zeta(5, 2) + Cyc::one(), {
            let v = Cyc::zeta(5, 2) + Cyc::one();
            v
        });
        let v = Cyc::zeta(5, 2) + Cyc::one();
        assert_eq!(v.exact_str(), "z5^2+1");
        assert_eq!(Cyc::from_rat(rat(3, 2)).exact_str(), "3/2");
        assert_eq!((-Cyc::zeta(3, 1)).exact_str(), "-z3");
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = Fp::new(4, 7);
        let b = Fp::new(5, 7);
        assert_eq!(a + b, Fp::new(2, 7));
        assert_eq!(a * b, Fp::new(6, 7));
        assert_eq!((a - b), Fp::new(-1, 7));
        assert_eq!(a.inv().unwrap() * a, Fp::one());
        assert_eq!(a.exact_str(), "4 mod 7");
        // unbound constants bind on contact
        assert_eq!(Fp::one() + Fp::new(1, 2), Fp::new(0, 2));
        assert!((Fp::new(3, 3)).is_zero());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
        assert_eq!(mod_inverse(3, 7), 5);
    }
}

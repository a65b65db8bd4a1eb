//! Exact field arithmetic: the rationals, prime fields F_p and extensions
//! F_p^e with an explicit monic irreducible modulus.
//!
//! Finite-field elements are stored packed as a base-p integer
//! (coefficient vector c_0 + c_1 p + ... read low to high), so the natural
//! `u64` order on the packed value is exactly the deterministic element
//! order used everywhere for enumeration and canonical forms.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported extension degree. Desk-scale work never goes near it;
/// the cap keeps element arithmetic allocation-free.
pub const MAX_EXT_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    Rationals,
    Prime {
        p: u64,
    },
    /// F_{p^e} = F_p[x] / (modulus); `modulus` has length e+1, is monic and
    /// irreducible. Coefficients are listed low degree first.
    Extension {
        p: u64,
        e: usize,
        modulus: Vec<u64>,
    },
}

#[derive(Debug)]
struct FieldInner {
    kind: FieldKind,
}

/// An exact arithmetic context. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.kind == other.inner.kind
    }
}
impl Eq for Field {}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Field {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.inner.kind.cmp(&other.inner.kind)
    }
}
impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.kind.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec_string())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| -> u64 { ((a as u128 * b as u128) % n as u128) as u64 };
    let powmod = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor q as p^a; error if q is not a prime power.
pub fn prime_power(name: &'static str, q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(name, q));
    }
    let mut p = q;
    // Smallest prime factor by trial division; q is desk scale.
    let mut f = 2u64;
    while f * f <= q {
        if q % f == 0 {
            p = f;
            break;
        }
        f += 1;
    }
    let mut rest = q;
    let mut a = 0u32;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(name, q));
    }
    Ok((p, a))
}

// ---- dense F_p[x] helpers on small stack buffers ------------------------

const POLY_CAP: usize = 2 * MAX_EXT_DEGREE + 1;

#[derive(Clone, Copy)]
struct FpPoly {
    coeffs: [u64; POLY_CAP],
    deg: usize, // degree of the zero polynomial is usize::MAX
}

const ZERO_POLY: FpPoly = FpPoly {
    coeffs: [0; POLY_CAP],
    deg: usize::MAX,
};

impl FpPoly {
    fn from_slice(c: &[u64], p: u64) -> FpPoly {
        let mut out = ZERO_POLY;
        for (i, &x) in c.iter().enumerate() {
            out.coeffs[i] = x % p;
        }
        out.fix_degree();
        out
    }
    fn fix_degree(&mut self) {
        self.deg = usize::MAX;
        for i in (0..POLY_CAP).rev() {
            if self.coeffs[i] != 0 {
                self.deg = i;
                break;
            }
        }
    }
    fn is_zero(&self) -> bool {
        self.deg == usize::MAX
    }
    fn x() -> FpPoly {
        let mut out = ZERO_POLY;
        out.coeffs[1] = 1;
        out.deg = 1;
        out
    }
    fn constant(c: u64, p: u64) -> FpPoly {
        let mut out = ZERO_POLY;
        out.coeffs[0] = c % p;
        out.fix_degree();
        out
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (p as i128, (a % p) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit mod p");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

fn poly_mul_mod(a: &FpPoly, b: &FpPoly, modulus: &FpPoly, p: u64) -> FpPoly {
    if a.is_zero() || b.is_zero() {
        return ZERO_POLY;
    }
    let mut prod = [0u64; POLY_CAP];
    for i in 0..=a.deg {
        if a.coeffs[i] == 0 {
            continue;
        }
        for j in 0..=b.deg {
            let idx = i + j;
            prod[idx] = (prod[idx] + (a.coeffs[i] as u128 * b.coeffs[j] as u128 % p as u128) as u64) % p;
        }
    }
    let mut out = FpPoly { coeffs: prod, deg: 0 };
    out.fix_degree();
    poly_rem(&out, modulus, p)
}

fn poly_rem(a: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    let mut r = *a;
    if m.is_zero() {
        return r;
    }
    let lead_inv = fp_inv(m.coeffs[m.deg], p);
    while !r.is_zero() && r.deg >= m.deg {
        let shift = r.deg - m.deg;
        let scale = (r.coeffs[r.deg] as u128 * lead_inv as u128 % p as u128) as u64;
        for i in 0..=m.deg {
            let idx = i + shift;
            let sub = (scale as u128 * m.coeffs[i] as u128 % p as u128) as u64;
            r.coeffs[idx] = (r.coeffs[idx] + p - sub) % p;
        }
        r.fix_degree();
    }
    r
}

fn poly_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (*a, *b);
    while !y.is_zero() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn poly_pow_p_mod(base: &FpPoly, p: u64, modulus: &FpPoly) -> FpPoly {
    // base^p mod modulus by square-and-multiply on the exponent p
    let mut acc = FpPoly::constant(1, p);
    let mut sq = *base;
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &sq, modulus, p);
        }
        sq = poly_mul_mod(&sq, &sq, modulus, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility over F_p per the construction contract: f is irreducible
/// iff gcd(f, x^{p^k} - x) is constant for every 1 <= k <= e/2.
fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let e = modulus.len() - 1;
    if e == 0 {
        return false;
    }
    if modulus[e] != 1 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let m = FpPoly::from_slice(modulus, p);
    let mut xq = FpPoly::x(); // x^{p^k} mod m, starting at k = 0
    for _k in 1..=(e / 2) {
        xq = poly_pow_p_mod(&xq, p, &m);
        // xq - x
        let mut diff = xq;
        diff.coeffs[1] = (diff.coeffs[1] + p - 1) % p;
        diff.fix_degree();
        let g = poly_gcd(&m, &diff, p);
        if g.is_zero() || g.deg >= 1 {
            return false;
        }
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field {
            inner: Arc::new(FieldInner {
                kind: FieldKind::Rationals,
            }),
        }
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field {
            inner: Arc::new(FieldInner {
                kind: FieldKind::Prime { p },
            }),
        })
    }

    /// Extension with the auto-selected modulus: the lexicographically
    /// smallest monic irreducible of degree e, scanning coefficient vectors
    /// as base-p integers in ascending order.
    pub fn extension(p: u64, e: usize) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadExtensionDegree);
        }
        if e == 1 {
            return Field::prime(p);
        }
        if e > MAX_EXT_DEGREE {
            return Err(Error::BadExtensionDegree);
        }
        let count = (p as u128).checked_pow(e as u32).ok_or(Error::BadExtensionDegree)?;
        if count > u64::MAX as u128 {
            return Err(Error::BadExtensionDegree);
        }
        let mut c = vec![0u64; e + 1];
        c[e] = 1;
        for packed in 0..count as u64 {
            let mut v = packed;
            for item in c.iter_mut().take(e) {
                *item = v % p;
                v /= p;
            }
            if is_irreducible(&c, p) {
                return Field::extension_with_modulus(p, &c);
            }
        }
        unreachable!("an irreducible of every degree exists over F_p")
    }

    /// Extension with a user-supplied monic modulus (length e+1, low first).
    pub fn extension_with_modulus(p: u64, modulus: &[u64]) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::BadExtensionDegree);
        }
        let e = modulus.len() - 1;
        if e > MAX_EXT_DEGREE {
            return Err(Error::BadExtensionDegree);
        }
        let m: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if m[e] != 1 || !is_irreducible(&m, p) {
            return Err(Error::ReducibleModulus);
        }
        if e == 1 {
            return Field::prime(p);
        }
        (p as u128)
            .checked_pow(e as u32)
            .filter(|&c| c <= u64::MAX as u128)
            .ok_or(Error::BadExtensionDegree)?;
        Ok(Field {
            inner: Arc::new(FieldInner {
                kind: FieldKind::Extension { p, e, modulus: m },
            }),
        })
    }

    /// Parse a field-spec string: "Q", "F<p>", "F<p>^<e>" or
    /// "F<p>^<e>:<c0,c1,...,ce>" (modulus coefficients, low degree first).
    pub fn parse(spec: &str) -> Result<Field> {
        let s = spec.trim();
        if s == "Q" {
            return Ok(Field::rationals());
        }
        let body = s
            .strip_prefix('F')
            .ok_or_else(|| Error::BadFieldSpec(spec.to_string()))?;
        let (pe, modulus) = match body.split_once(':') {
            Some((pe, m)) => (pe, Some(m)),
            None => (body, None),
        };
        let (p_str, e_str) = match pe.split_once('^') {
            Some((p, e)) => (p, Some(e)),
            None => (pe, None),
        };
        let p: u64 = p_str
            .parse()
            .map_err(|_| Error::BadFieldSpec(spec.to_string()))?;
        let e: usize = match e_str {
            Some(e) => e.parse().map_err(|_| Error::BadFieldSpec(spec.to_string()))?,
            None => 1,
        };
        if e == 0 {
            return Err(Error::BadExtensionDegree);
        }
        match modulus {
            None => {
                if e == 1 {
                    Field::prime(p)
                } else {
                    Field::extension(p, e)
                }
            }
            Some(m) => {
                let coeffs: Result<Vec<u64>> = m
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::BadFieldSpec(spec.to_string()))
                    })
                    .collect();
                let coeffs = coeffs?;
                if coeffs.len() != e + 1 {
                    return Err(Error::BadFieldSpec(spec.to_string()));
                }
                Field::extension_with_modulus(p, &coeffs)
            }
        }
    }

    pub fn spec_string(&self) -> String {
        match &self.inner.kind {
            FieldKind::Rationals => "Q".to_string(),
            FieldKind::Prime { p } => format!("F{p}"),
            FieldKind::Extension { p, e, modulus } => {
                let coeffs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                format!("F{p}^{e}:{}", coeffs.join(","))
            }
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.inner.kind
    }

    pub fn characteristic(&self) -> u64 {
        match &self.inner.kind {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } => *p,
            FieldKind::Extension { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.inner.kind, FieldKind::Rationals)
    }

    /// Number of elements, None when infinite.
    pub fn cardinality(&self) -> Option<u64> {
        match &self.inner.kind {
            FieldKind::Rationals => None,
            FieldKind::Prime { p } => Some(*p),
            FieldKind::Extension { p, e, .. } => Some(p.pow(*e as u32)),
        }
    }

    pub fn ext_degree(&self) -> usize {
        match &self.inner.kind {
            FieldKind::Extension { e, .. } => *e,
            _ => 1,
        }
    }

    fn modulus_poly(&self) -> FpPoly {
        match &self.inner.kind {
            FieldKind::Extension { p, modulus, .. } => FpPoly::from_slice(modulus, *p),
            _ => unreachable!(),
        }
    }

    // ---- element constructors ----

    pub fn zero(&self) -> Scalar {
        match &self.inner.kind {
            FieldKind::Rationals => Scalar {
                field: self.clone(),
                repr: Repr::Rat(BigRational::zero()),
            },
            _ => Scalar {
                field: self.clone(),
                repr: Repr::Fin(0),
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match &self.inner.kind {
            FieldKind::Rationals => Scalar {
                field: self.clone(),
                repr: Repr::Rat(BigRational::from(BigInt::from(n))),
            },
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar {
                    field: self.clone(),
                    repr: Repr::Fin(r),
                }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        match &self.inner.kind {
            FieldKind::Rationals => {
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar {
                    field: self.clone(),
                    repr: Repr::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))),
                })
            }
            _ => {
                let d = self.from_int(den);
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                self.div(&self.from_int(num), &d)
            }
        }
    }

    pub fn from_rational(&self, r: BigRational) -> Scalar {
        debug_assert!(matches!(self.inner.kind, FieldKind::Rationals));
        Scalar {
            field: self.clone(),
            repr: Repr::Rat(r),
        }
    }

    /// Element with the given packed index (finite fields).
    pub fn element_from_index(&self, idx: u64) -> Result<Scalar> {
        let q = self.cardinality().ok_or(Error::InfiniteField)?;
        if idx >= q {
            return Err(Error::BadParameter(format!("element index {idx} >= {q}")));
        }
        Ok(Scalar {
            field: self.clone(),
            repr: Repr::Fin(idx),
        })
    }

    /// Element from an extension coefficient vector (entries reduced mod p).
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<Scalar> {
        match &self.inner.kind {
            FieldKind::Rationals => Err(Error::InfiniteField),
            FieldKind::Prime { p } => {
                if coeffs.len() != 1 {
                    return Err(Error::BadParameter("coefficient vector length".into()));
                }
                Ok(Scalar {
                    field: self.clone(),
                    repr: Repr::Fin(coeffs[0] % p),
                })
            }
            FieldKind::Extension { p, e, .. } => {
                if coeffs.len() != *e {
                    return Err(Error::BadParameter("coefficient vector length".into()));
                }
                let mut packed = 0u64;
                for &c in coeffs.iter().rev() {
                    packed = packed * p + (c % p);
                }
                Ok(Scalar {
                    field: self.clone(),
                    repr: Repr::Fin(packed),
                })
            }
        }
    }

    /// All elements in the fixed deterministic order (packed index ascending).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        let q = self.cardinality().ok_or(Error::InfiniteField)?;
        Ok((0..q)
            .map(|i| Scalar {
                field: self.clone(),
                repr: Repr::Fin(i),
            })
            .collect())
    }

    fn unpack(&self, v: u64) -> FpPoly {
        let (p, e) = match &self.inner.kind {
            FieldKind::Prime { p } => (*p, 1usize),
            FieldKind::Extension { p, e, .. } => (*p, *e),
            FieldKind::Rationals => unreachable!(),
        };
        let mut out = ZERO_POLY;
        let mut x = v;
        for i in 0..e {
            out.coeffs[i] = x % p;
            x /= p;
        }
        out.fix_degree();
        out
    }

    fn pack(&self, poly: &FpPoly) -> u64 {
        let (p, e) = match &self.inner.kind {
            FieldKind::Prime { p } => (*p, 1usize),
            FieldKind::Extension { p, e, .. } => (*p, *e),
            FieldKind::Rationals => unreachable!(),
        };
        let mut packed = 0u64;
        for i in (0..e).rev() {
            packed = packed * p + poly.coeffs[i];
        }
        packed
    }

    // ---- arithmetic ----

    fn check(&self, a: &Scalar, b: &Scalar) {
        assert!(a.field == *self && b.field == *self, "field mismatch");
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.check(a, b);
        match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Scalar {
                field: self.clone(),
                repr: Repr::Rat(x + y),
            },
            (Repr::Fin(x), Repr::Fin(y)) => match &self.inner.kind {
                FieldKind::Prime { p } => Scalar {
                    field: self.clone(),
                    repr: Repr::Fin((x + y) % p),
                },
                FieldKind::Extension { p, e, .. } => {
                    let (mut ax, mut bx, mut packed, mut mult) = (*x, *y, 0u64, 1u64);
                    for _ in 0..*e {
                        let s = (ax % p + bx % p) % p;
                        packed += s * mult;
                        mult *= p;
                        ax /= p;
                        bx /= p;
                    }
                    Scalar {
                        field: self.clone(),
                        repr: Repr::Fin(packed),
                    }
                }
                FieldKind::Rationals => unreachable!(),
            },
            _ => unreachable!("mixed representations"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match &a.repr {
            Repr::Rat(x) => Scalar {
                field: self.clone(),
                repr: Repr::Rat(-x),
            },
            Repr::Fin(x) => match &self.inner.kind {
                FieldKind::Prime { p } => Scalar {
                    field: self.clone(),
                    repr: Repr::Fin((p - x % p) % p),
                },
                FieldKind::Extension { p, e, .. } => {
                    let (mut ax, mut packed, mut mult) = (*x, 0u64, 1u64);
                    for _ in 0..*e {
                        let c = ax % p;
                        packed += ((p - c) % p) * mult;
                        mult *= p;
                        ax /= p;
                    }
                    Scalar {
                        field: self.clone(),
                        repr: Repr::Fin(packed),
                    }
                }
                FieldKind::Rationals => unreachable!(),
            },
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.check(a, b);
        match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Scalar {
                field: self.clone(),
                repr: Repr::Rat(x * y),
            },
            (Repr::Fin(x), Repr::Fin(y)) => match &self.inner.kind {
                FieldKind::Prime { p } => Scalar {
                    field: self.clone(),
                    repr: Repr::Fin((*x as u128 * *y as u128 % *p as u128) as u64),
                },
                FieldKind::Extension { .. } => {
                    let m = self.modulus_poly();
                    let p = self.characteristic();
                    let prod = poly_mul_mod(&self.unpack(*x), &self.unpack(*y), &m, p);
                    Scalar {
                        field: self.clone(),
                        repr: Repr::Fin(self.pack(&prod)),
                    }
                }
                FieldKind::Rationals => unreachable!(),
            },
            _ => unreachable!("mixed representations"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &a.repr {
            Repr::Rat(x) => Ok(Scalar {
                field: self.clone(),
                repr: Repr::Rat(x.recip()),
            }),
            Repr::Fin(x) => match &self.inner.kind {
                FieldKind::Prime { p } => Ok(Scalar {
                    field: self.clone(),
                    repr: Repr::Fin(fp_inv(*x, *p)),
                }),
                FieldKind::Extension { p, .. } => {
                    // extended Euclid in F_p[x] against the modulus
                    let p = *p;
                    let m = self.modulus_poly();
                    let mut r0 = m;
                    let mut r1 = self.unpack(*x);
                    let mut t0 = ZERO_POLY;
                    let mut t1 = FpPoly::constant(1, p);
                    while !r1.is_zero() && r1.deg > 0 {
                        let (q, r) = poly_divmod(&r0, &r1, p);
                        let qt1 = poly_mul_plain(&q, &t1, p);
                        let tnew = poly_sub(&t0, &qt1, p);
                        r0 = r1;
                        r1 = r;
                        t0 = t1;
                        t1 = tnew;
                    }
                    debug_assert!(!r1.is_zero(), "gcd with irreducible modulus is a unit");
                    let scale = fp_inv(r1.coeffs[0], p);
                    let mut res = poly_mul_plain(&t1, &FpPoly::constant(scale, p), p);
                    res = poly_rem(&res, &m, p);
                    Ok(Scalar {
                        field: self.clone(),
                        repr: Repr::Fin(self.pack(&res)),
                    })
                }
                FieldKind::Rationals => unreachable!(),
            },
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut k: u64) -> Scalar {
        let mut acc = self.one();
        let mut sq = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p. Identity on prime fields; rejected over Q.
    pub fn frobenius(&self, a: &Scalar) -> Result<Scalar> {
        match &self.inner.kind {
            FieldKind::Rationals => Err(Error::UnsupportedField("frobenius over Q".into())),
            FieldKind::Prime { .. } => Ok(a.clone()),
            FieldKind::Extension { p, .. } => Ok(self.pow(a, *p)),
        }
    }

    /// x -> x^{p^iters}; `frobenius` iterated.
    pub fn frobenius_iter(&self, a: &Scalar, iters: u32) -> Result<Scalar> {
        let mut out = a.clone();
        for _ in 0..iters {
            out = self.frobenius(&out)?;
        }
        Ok(out)
    }

    /// Integer binomial coefficient mapped into the field.
    pub fn binomial(&self, n: u64, k: u64) -> Scalar {
        if k > n {
            return self.zero();
        }
        let mut b = BigUint::one();
        for i in 0..k.min(n - k) {
            b = b * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        match &self.inner.kind {
            FieldKind::Rationals => Scalar {
                field: self.clone(),
                repr: Repr::Rat(BigRational::from(BigInt::from(b))),
            },
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => {
                let r = (b % BigUint::from(*p)).to_u64().unwrap();
                self.from_int(r as i64)
            }
        }
    }
}

fn poly_divmod(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let mut q = ZERO_POLY;
    let mut r = *a;
    let lead_inv = fp_inv(b.coeffs[b.deg], p);
    while !r.is_zero() && r.deg >= b.deg && b.deg != usize::MAX {
        let shift = r.deg - b.deg;
        let scale = (r.coeffs[r.deg] as u128 * lead_inv as u128 % p as u128) as u64;
        q.coeffs[shift] = (q.coeffs[shift] + scale) % p;
        for i in 0..=b.deg {
            let sub = (scale as u128 * b.coeffs[i] as u128 % p as u128) as u64;
            r.coeffs[i + shift] = (r.coeffs[i + shift] + p - sub) % p;
        }
        r.fix_degree();
    }
    q.fix_degree();
    (q, r)
}

fn poly_mul_plain(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_zero() || b.is_zero() {
        return ZERO_POLY;
    }
    let mut prod = [0u64; POLY_CAP];
    for i in 0..=a.deg {
        for j in 0..=b.deg {
            prod[i + j] = (prod[i + j] + (a.coeffs[i] as u128 * b.coeffs[j] as u128 % p as u128) as u64) % p;
        }
    }
    let mut out = FpPoly { coeffs: prod, deg: 0 };
    out.fix_degree();
    out
}

fn poly_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut out = *a;
    let bd = if b.is_zero() { 0 } else { b.deg + 1 };
    for i in 0..bd {
        out.coeffs[i] = (out.coeffs[i] + p - b.coeffs[i]) % p;
    }
    out.fix_degree();
    out
}

// ---- Scalar ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Repr {
    Rat(BigRational),
    /// Packed base-p coefficient vector of an F_{p^e} element.
    Fin(u64),
}

/// An element of a [`Field`]. Equality is representational; ordering is the
/// deterministic order used for canonical forms (numeric over Q, packed
/// index over finite fields).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(x) => x.is_zero(),
            Repr::Fin(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(x) => x.is_one(),
            Repr::Fin(x) => *x == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(x) => Some(x),
            _ => None,
        }
    }

    /// Packed element index for finite fields.
    pub fn packed_index(&self) -> Option<u64> {
        match &self.repr {
            Repr::Fin(x) => Some(*x),
            _ => None,
        }
    }

    /// Extension coefficient vector, length e (length 1 for prime fields).
    pub fn coeff_vector(&self) -> Option<Vec<u64>> {
        let x = self.packed_index()?;
        let p = self.field.characteristic();
        let e = self.field.ext_degree();
        let mut v = Vec::with_capacity(e);
        let mut rest = x;
        for _ in 0..e {
            v.push(rest % p);
            rest /= p;
        }
        Some(v)
    }

    /// Serialize per the exactalg interface: "3/4" over Q (plain integer
    /// when the denominator is 1), "[a0,a1,...]" for extension elements,
    /// plain residue for prime fields.
    pub fn to_text(&self) -> String {
        match &self.repr {
            Repr::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Repr::Fin(_) => {
                let v = self.coeff_vector().unwrap();
                if v.len() == 1 {
                    v[0].to_string()
                } else {
                    let items: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    format!("[{}]", items.join(","))
                }
            }
        }
    }

    pub fn parse(field: &Field, text: &str) -> Result<Scalar> {
        let t = text.trim();
        match field.kind() {
            FieldKind::Rationals => {
                let (n, d) = match t.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (t, "1"),
                };
                let num: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad rational `{text}`")))?;
                let den: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad rational `{text}`")))?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(field.from_rational(BigRational::new(num, den)))
            }
            FieldKind::Prime { .. } => {
                let v: i64 = t
                    .parse()
                    .map_err(|_| Error::parse(format!("bad residue `{text}`")))?;
                Ok(field.from_int(v))
            }
            FieldKind::Extension { e, .. } => {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| Error::parse(format!("bad extension element `{text}`")))?;
                let coeffs: Result<Vec<u64>> = inner
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::parse(format!("bad extension element `{text}`")))
                    })
                    .collect();
                let coeffs = coeffs?;
                if coeffs.len() != *e {
                    return Err(Error::parse(format!("bad extension element `{text}`")));
                }
                field.element_from_coeffs(&coeffs)
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Fin(a), Repr::Fin(b)) => a.cmp(b),
            (Repr::Rat(_), Repr::Fin(_)) => std::cmp::Ordering::Less,
            (Repr::Fin(_), Repr::Rat(_)) => std::cmp::Ordering::Greater,
        }
    }
}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Rat(x) => {
                x.numer().hash(state);
                x.denom().hash(state);
            }
            Repr::Fin(x) => x.hash(state),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Rational sign over Q; finite-field elements have no sign (returns 0 only
/// for the zero element, 1 otherwise). Used for canonical normalizations.
pub fn rat_sign(s: &Scalar) -> i8 {
    match s.repr() {
        Repr::Rat(x) => {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        }
        Repr::Fin(x) => {
            if *x == 0 {
                0
            } else {
                1
            }
        }
    }
}

//! Arithmetic in `F_q` with `q = p^n`, and points of `F_q^m`.
//!
//! An element is identified by its code `c` in `0..q`. The base-`p` digits of
//! `c` (least significant first) are the coordinates of the element on the
//! polynomial basis `1, α, …, α^{n-1}`, where `α` is a root of the modulus.
//! Addition and negation are therefore digit-wise modulo `p` and never need a
//! table; multiplication reduces modulo the modulus polynomial.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Fields up to this order get precomputed multiplication and inverse tables.
pub const TABLE_LIMIT: u32 = 256;

/// Default irreducible moduli, low-to-high coefficients, keyed by `(p, n)`.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),    // x^3 + x + 1
    (3, 2, &[1, 0, 1]),       // x^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (5, 2, &[2, 0, 1]),       // x^2 + 2
    (3, 3, &[1, 2, 0, 1]),    // x^3 + 2x + 1
];

/// An element of `F_q`, stored as its canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// Wraps a raw code without checking it against a field.
    pub const fn new(code: u32) -> Self {
        Fq(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of `F_q^m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VecM {
    coords: Vec<Fq>,
}

impl VecM {
    pub fn new(coords: Vec<Fq>) -> Self {
        VecM { coords }
    }

    pub fn zero(m: usize) -> Self {
        VecM {
            coords: vec![Fq::ZERO; m],
        }
    }

    pub fn from_codes(codes: &[u32]) -> Self {
        VecM {
            coords: codes.iter().map(|&c| Fq(c)).collect(),
        }
    }

    pub fn coords(&self) -> &[Fq] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for VecM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug)]
struct Inner {
    p: u32,
    n: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

/// A validated finite field `F_q`. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("n", &self.inner.n)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.n == other.inner.n
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds `F_{p^n}`. Without an explicit modulus a fixed default is used
    /// for `n > 1`; any supplied modulus must be monic, of degree `n`, and
    /// irreducible over `F_p`. For `n = 1` a supplied modulus is ignored.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p: p as u64, n })? as u32;

        let modulus = if n == 1 {
            None
        } else {
            let poly = match modulus {
                Some(m) => m.to_vec(),
                None => default_modulus(p, n),
            };
            validate_modulus(p, n, &poly)?;
            Some(poly)
        };

        let mut inner = Inner {
            p,
            n,
            q,
            modulus,
            mul_table: None,
            inv_table: None,
        };
        if q <= TABLE_LIMIT {
            let field = FieldSpec {
                inner: Arc::new(Inner {
                    modulus: inner.modulus.clone(),
                    mul_table: None,
                    inv_table: None,
                    ..inner
                }),
            };
            let size = q as usize;
            let mut mul = vec![0u32; size * size];
            for a in 0..q {
                for b in 0..q {
                    mul[a as usize * size + b as usize] = field.mul_direct(a, b);
                }
            }
            let mut inv = vec![0u32; size];
            for a in 1..q {
                // The row of a contains 1 exactly once.
                let row = &mul[a as usize * size..(a as usize + 1) * size];
                inv[a as usize] = row.iter().position(|&x| x == 1).unwrap() as u32;
            }
            inner.mul_table = Some(mul);
            inner.inv_table = Some(inv);
        }
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, low to high. `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    /// Checked conversion of a code into an element.
    pub fn element(&self, code: u32) -> Result<Fq> {
        if code < self.q() {
            Ok(Fq(code))
        } else {
            Err(Error::ElementOutOfRange {
                code: code as u64,
                q: self.q() as u64,
            })
        }
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.q()
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q()).map(Fq)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.inner.p;
        if self.inner.n == 1 {
            return Fq((a.0 + b.0) % p);
        }
        if p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Fq(out)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        if self.inner.n == 1 {
            return Fq((p - a.0) % p);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        match &self.inner.mul_table {
            Some(t) => Fq(t[a.0 as usize * self.q() as usize + b.0 as usize]),
            None => Fq(self.mul_direct(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.inner.inv_table {
            Some(t) => Fq(t[a.0 as usize]),
            None => self.pow(a, self.q() as u64 - 2),
        })
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p as u64;
        match &self.inner.modulus {
            None => ((a as u64 * b as u64) % p) as u32,
            Some(modulus) => {
                let n = self.inner.n as usize;
                let x = digits(a, self.inner.p, n);
                let y = digits(b, self.inner.p, n);
                let mut prod = poly_mul(&x, &y, self.inner.p);
                poly_rem_monic(&mut prod, modulus, self.inner.p);
                prod.resize(n, 0);
                undigits(&prod, self.inner.p)
            }
        }
    }

    /// `q^m`, the number of points of `F_q^m`.
    pub fn space_size(&self, m: usize) -> Result<usize> {
        checked_pow(self.q() as usize, m).ok_or(Error::TooLarge {
            what: "space F_q^m",
            size: u128::MAX,
            limit: usize::MAX as u128,
        })
    }

    /// Position of `u` in the canonical big-endian base-`q` enumeration of
    /// `F_q^m`: `index(u) = Σ code(u_i) q^{m-1-i}`.
    pub fn index(&self, u: &VecM) -> Result<usize> {
        let q = self.q() as usize;
        u.coords.iter().try_fold(0usize, |acc, &c| {
            if !self.contains(c) {
                return Err(Error::ElementOutOfRange {
                    code: c.0 as u64,
                    q: q as u64,
                });
            }
            Ok(acc * q + c.0 as usize)
        })
    }

    /// Inverse of [`FieldSpec::index`].
    pub fn vec_of_index(&self, i: usize, m: usize) -> Result<VecM> {
        let len = self.space_size(m)?;
        if i >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        let q = self.q() as usize;
        let mut coords = vec![Fq::ZERO; m];
        let mut rest = i;
        for slot in coords.iter_mut().rev() {
            *slot = Fq((rest % q) as u32);
            rest /= q;
        }
        Ok(VecM { coords })
    }

    /// All points of `F_q^m` in canonical order.
    pub fn points(&self, m: usize) -> Result<Vec<VecM>> {
        let len = self.space_size(m)?;
        (0..len).map(|i| self.vec_of_index(i, m)).collect()
    }

    /// Scalar product `Σ u_i v_i`.
    pub fn dot(&self, u: &VecM, v: &VecM) -> Result<Fq> {
        if u.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                got: v.dim(),
            });
        }
        Ok(u.coords
            .iter()
            .zip(&v.coords)
            .fold(Fq::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b))))
    }

    pub fn add_vec(&self, u: &VecM, v: &VecM) -> Result<VecM> {
        if u.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: u.dim(),
                got: v.dim(),
            });
        }
        Ok(VecM {
            coords: u
                .coords
                .iter()
                .zip(&v.coords)
                .map(|(&a, &b)| self.add(a, b))
                .collect(),
        })
    }

    /// Coordinate-wise additive inverse.
    pub fn neg_vec(&self, u: &VecM) -> VecM {
        VecM {
            coords: u.coords.iter().map(|&a| self.neg(a)).collect(),
        }
    }

    pub fn scale_vec(&self, a: Fq, u: &VecM) -> VecM {
        VecM {
            coords: u.coords.iter().map(|&b| self.mul(a, b)).collect(),
        }
    }

    /// Index of `-u` given the index of `u`.
    pub fn neg_index(&self, i: usize, m: usize) -> usize {
        let q = self.q() as usize;
        let mut rest = i;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..m {
            out += self.neg(Fq((rest % q) as u32)).0 as usize * place;
            rest /= q;
            place *= q;
        }
        out
    }
}

/// Precomputed coordinates and scalar products over `F_q^m`, used by the
/// exhaustive loops of the distance, system and arrangement code.
pub(crate) struct PointTable {
    pub(crate) field: FieldSpec,
    pub(crate) m: usize,
    pub(crate) len: usize,
    coords: Vec<Fq>,
}

impl PointTable {
    pub(crate) fn new(field: &FieldSpec, m: usize) -> Result<Self> {
        let len = field.space_size(m)?;
        let mut coords = Vec::with_capacity(len * m);
        for i in 0..len {
            coords.extend_from_slice(field.vec_of_index(i, m)?.coords());
        }
        Ok(PointTable {
            field: field.clone(),
            m,
            len,
            coords,
        })
    }

    pub(crate) fn coords(&self, i: usize) -> &[Fq] {
        &self.coords[i * self.m..(i + 1) * self.m]
    }

    pub(crate) fn dot(&self, i: usize, j: usize) -> Fq {
        self.coords(i)
            .iter()
            .zip(self.coords(j))
            .fold(Fq::ZERO, |acc, (&a, &b)| {
                self.field.add(acc, self.field.mul(a, b))
            })
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    if let Some((_, _, m)) = DEFAULT_MODULI
        .iter()
        .find(|(pp, nn, _)| *pp == p && *nn == n)
    {
        return m.to_vec();
    }
    // First irreducible monic polynomial in code order of its lower part.
    let n = n as usize;
    let count = (p as u64).pow(n as u32);
    (0..count)
        .map(|c| {
            let mut poly = digits_u64(c, p, n);
            poly.push(1);
            poly
        })
        .find(|poly| poly[0] != 0 && is_irreducible(poly, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn validate_modulus(p: u32, n: u32, poly: &[u32]) -> Result<()> {
    let mut poly = poly.to_vec();
    if let Some(&c) = poly.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficient {
            coeff: c as u64,
            p: p as u64,
        });
    }
    trim(&mut poly);
    let degree = poly.len().saturating_sub(1);
    if degree != n as usize {
        return Err(Error::ModulusDegree {
            expected: n as usize,
            got: degree,
        });
    }
    if poly[degree] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    if !is_irreducible(&poly, p) {
        return Err(Error::ReducibleModulus { p: p as u64 });
    }
    Ok(())
}

/// Irreducibility of a monic polynomial by trial division against every
/// monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = poly.len() - 1;
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d as u32);
        for c in 0..count {
            let mut divisor = digits_u64(c, p, d);
            divisor.push(1);
            let mut rem = poly.to_vec();
            poly_rem_monic(&mut rem, &divisor, p);
            if rem.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn trim(poly: &mut Vec<u32>) {
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
}

fn digits(code: u32, p: u32, n: usize) -> Vec<u32> {
    digits_u64(code as u64, p, n)
}

fn digits_u64(mut code: u64, p: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
        }
    }
    out.into_iter().map(|c| c as u32).collect()
}

/// Reduces `a` in place modulo the monic polynomial `m`; the result has
/// length `deg m` (or less when `a` was already shorter).
fn poly_rem_monic(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    let p64 = p as u64;
    while a.len() > dm {
        let lead = a.pop().unwrap() as u64;
        if lead != 0 {
            let base = a.len() - dm;
            for (k, &c) in m[..dm].iter().enumerate() {
                let sub = lead * c as u64 % p64;
                a[base + k] = ((a[base + k] as u64 + p64 - sub) % p64) as u32;
            }
        }
    }
}

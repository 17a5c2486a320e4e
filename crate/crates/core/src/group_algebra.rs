//! The group algebra of the additive group of `F_q` over the rationals.
//!
//! An element `Σ_t α_t Z^t` is a dense vector of `q` rationals; the
//! coefficient of `Z^t` sits at position `code(t)`. Products are
//! convolutions over `(F_q, +)`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaElem {
    coeffs: Vec<BigRational>,
}

impl GaElem {
    pub fn zero(q: usize) -> Self {
        GaElem {
            coeffs: vec![BigRational::zero(); q],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        GaElem { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        GaElem {
            coeffs: coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// `Z^t`.
    pub fn basis(field: &FieldSpec, t: Fq) -> Self {
        let mut x = Self::zero(field.q() as usize);
        x.coeffs[t.code() as usize] = BigRational::one();
        x
    }

    /// `K(Z) = Σ_t Z^t`.
    pub fn k(field: &FieldSpec) -> Self {
        GaElem {
            coeffs: vec![BigRational::one(); field.q() as usize],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// `C_t(x)`.
    pub fn coeff(&self, t: Fq) -> &BigRational {
        &self.coeffs[t.code() as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Σ_t C_t(x)`.
    pub fn coeff_sum(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(GaElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, lambda: &BigRational) -> Self {
        GaElem {
            coeffs: self.coeffs.iter().map(|a| a * lambda).collect(),
        }
    }

    pub fn scale_int(&self, lambda: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(lambda)))
    }

    /// Convolution product: `C_t(xy) = Σ_{r+s=t} C_r(x) C_s(y)`.
    pub fn mul(&self, other: &Self, field: &FieldSpec) -> Result<Self> {
        self.check_len(other)?;
        self.check_field(field)?;
        let mut out = Self::zero(self.len());
        for (r, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (s, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = field.add(Fq::new(r as u32), Fq::new(s as u32));
                out.coeffs[t.code() as usize] += a * b;
            }
        }
        Ok(out)
    }

    /// `Z^s · x`, a translation of the coefficients: `C_t(Z^s x) = C_{t-s}(x)`.
    pub fn translate(&self, field: &FieldSpec, s: Fq) -> Self {
        let mut out = Self::zero(self.len());
        self.translate_add_into(field, s, &mut out);
        out
    }

    /// `acc += Z^s · self`.
    pub fn translate_add_into(&self, field: &FieldSpec, s: Fq, acc: &mut GaElem) {
        debug_assert_eq!(self.len(), acc.len());
        for (r, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let t = field.add(Fq::new(r as u32), s);
            acc.coeffs[t.code() as usize] += a;
        }
    }

    /// If `x = λ K(Z)`, returns `λ`.
    pub fn k_multiple(&self) -> Option<BigRational> {
        let first = self.coeffs.first()?;
        self.coeffs
            .iter()
            .all(|c| c == first)
            .then(|| first.clone())
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    fn check_field(&self, field: &FieldSpec) -> Result<()> {
        if self.len() != field.q() as usize {
            return Err(Error::DimensionMismatch {
                expected: field.q() as usize,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl Add for &GaElem {
    type Output = GaElem;

    /// Panics on length mismatch; see [`GaElem::try_add`].
    fn add(self, other: &GaElem) -> GaElem {
        self.try_add(other).expect("group algebra length mismatch")
    }
}

impl AddAssign<&GaElem> for GaElem {
    fn add_assign(&mut self, other: &GaElem) {
        assert_eq!(self.len(), other.len(), "group algebra length mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }
}

impl Neg for &GaElem {
    type Output = GaElem;

    fn neg(self) -> GaElem {
        GaElem {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Sub for &GaElem {
    type Output = GaElem;

    fn sub(self, other: &GaElem) -> GaElem {
        self + &(-other)
    }
}

impl fmt::Display for GaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "{c}·Z^{t}")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

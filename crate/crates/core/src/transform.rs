//! The transform `T(φ)(v) = Σ_u φ(u) Z^{-<u,v>}` on functions
//! `F_q^m → Q[F_q]`, together with its kernel and image descriptions.
//!
//! Two evaluation routes are provided. [`transform_naive`] evaluates the
//! defining double sum (`q^{2m}` translate-adds). [`transform_fast`] splits
//! `<u,v> = Σ_i u_i v_i` and folds one coordinate per stage, left to right,
//! for `m q^{m+1}` translate-adds. Both are exact and must agree bit for bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq, PointTable, VecM};
use crate::group_algebra::GaElem;

/// A function `F_q^m → Q[F_q]`; position `index(u)` holds `φ(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFunction {
    field: FieldSpec,
    m: usize,
    values: Vec<GaElem>,
}

impl GFunction {
    pub fn new(field: &FieldSpec, m: usize, values: Vec<GaElem>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDimension);
        }
        let len = field.space_size(m)?;
        if values.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: values.len(),
            });
        }
        let q = field.q() as usize;
        if let Some(bad) = values.iter().find(|x| x.len() != q) {
            return Err(Error::DimensionMismatch {
                expected: q,
                got: bad.len(),
            });
        }
        Ok(GFunction {
            field: field.clone(),
            m,
            values,
        })
    }

    pub fn zero(field: &FieldSpec, m: usize) -> Result<Self> {
        let len = field.space_size(m)?;
        Self::new(field, m, vec![GaElem::zero(field.q() as usize); len])
    }

    pub fn from_fn(
        field: &FieldSpec,
        m: usize,
        mut f: impl FnMut(&VecM) -> GaElem,
    ) -> Result<Self> {
        let values = field.points(m)?.iter().map(&mut f).collect();
        Self::new(field, m, values)
    }

    /// `e_{u,t}`: `Z^t` at `u`, zero elsewhere.
    pub fn basis_e(field: &FieldSpec, m: usize, u: &VecM, t: Fq) -> Result<Self> {
        if u.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: u.dim(),
            });
        }
        let at = field.index(u)?;
        field.element(t.code())?;
        let mut phi = Self::zero(field, m)?;
        phi.values[at] = GaElem::basis(field, t);
        Ok(phi)
    }

    /// `γ_a(u) = Z^{<a,u>}`.
    pub fn gamma(field: &FieldSpec, m: usize, a: &VecM) -> Result<Self> {
        if a.dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: a.dim(),
            });
        }
        Self::from_fn(field, m, |u| GaElem::basis(field, field.dot(a, u).unwrap()))
    }

    /// Random function with rational coefficients `n/d`, `|n| ≤ bound`,
    /// `1 ≤ d ≤ 3`.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldSpec,
        m: usize,
        bound: i64,
        rng: &mut R,
    ) -> Result<Self> {
        let len = field.space_size(m)?;
        let q = field.q() as usize;
        let values = (0..len)
            .map(|_| {
                GaElem::from_coeffs(
                    (0..q)
                        .map(|_| {
                            BigRational::new(
                                BigInt::from(rng.gen_range(-bound..=bound)),
                                BigInt::from(rng.gen_range(1..=3i64)),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        Self::new(field, m, values)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[GaElem] {
        &self.values
    }

    pub fn value(&self, u: &VecM) -> Result<&GaElem> {
        Ok(&self.values[self.field.index(u)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GaElem::is_zero)
    }

    pub fn scale(&self, lambda: &BigRational) -> Self {
        GFunction {
            field: self.field.clone(),
            m: self.m,
            values: self.values.iter().map(|x| x.scale(lambda)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(GFunction {
            field: self.field.clone(),
            m: self.m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Coordinates on the basis `(e_{u,t})`: entry `index(u) q + code(t)`.
    pub fn to_vector(&self) -> Vec<BigRational> {
        self.values
            .iter()
            .flat_map(|x| x.coeffs().iter().cloned())
            .collect()
    }

    pub fn from_vector(field: &FieldSpec, m: usize, coords: &[BigRational]) -> Result<Self> {
        let q = field.q() as usize;
        let len = field.space_size(m)?;
        if coords.len() != len * q {
            return Err(Error::DimensionMismatch {
                expected: len * q,
                got: coords.len(),
            });
        }
        let values = coords
            .chunks(q)
            .map(|c| GaElem::from_coeffs(c.to_vec()))
            .collect();
        Self::new(field, m, values)
    }

    /// When every value is `λ(w) K(Z)`, returns `λ`.
    pub fn k_multiples(&self) -> Option<Vec<BigRational>> {
        self.values.iter().map(GaElem::k_multiple).collect()
    }

    /// Whether `φ(w) = λ(w) K(Z)` with `Σ_w λ(w) = 0`, the shape of every
    /// element of the kernel of `T`.
    pub fn has_kernel_shape(&self) -> bool {
        self.k_multiples()
            .is_some_and(|lambda| lambda.iter().sum::<BigRational>().is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: other.m,
            });
        }
        Ok(())
    }
}

/// `T(φ)` by the defining sum.
pub fn transform_naive(phi: &GFunction) -> GFunction {
    transform_naive_counted(phi).0
}

/// `T(φ)` by the defining sum, with the number of translate-adds performed.
pub fn transform_naive_counted(phi: &GFunction) -> (GFunction, u64) {
    let field = &phi.field;
    let points = PointTable::new(field, phi.m).expect("validated dimension");
    let len = points.len;
    let q = field.q() as usize;
    let values: Vec<GaElem> = (0..len)
        .into_par_iter()
        .map(|v| {
            let mut acc = GaElem::zero(q);
            for (u, x) in phi.values.iter().enumerate() {
                let shift = field.neg(points.dot(u, v));
                x.translate_add_into(field, shift, &mut acc);
            }
            acc
        })
        .collect();
    let ops = (len as u64) * (len as u64);
    (
        GFunction {
            field: field.clone(),
            m: phi.m,
            values,
        },
        ops,
    )
}

/// `T(φ)` by coordinate folding.
pub fn transform_fast(phi: &GFunction) -> GFunction {
    transform_fast_counted(phi).0
}

/// `T(φ)` by coordinate folding, with the number of translate-adds performed.
///
/// Stage `i` replaces coordinate `u_i` by `v_i`:
/// `φ_{i+1}(…, v_i, …) = Σ_{u_i} φ_i(…, u_i, …) Z^{-u_i v_i}`.
pub fn transform_fast_counted(phi: &GFunction) -> (GFunction, u64) {
    let field = &phi.field;
    let q = field.q() as usize;
    let len = phi.values.len();
    // shifts[u_i * q + v_i] = -(u_i v_i)
    let shifts: Vec<Fq> = (0..q * q)
        .map(|k| field.neg(field.mul(Fq::new((k / q) as u32), Fq::new((k % q) as u32))))
        .collect();
    let mut current = phi.values.clone();
    let mut ops = 0u64;
    for i in 0..phi.m {
        let stride = q.pow((phi.m - 1 - i) as u32);
        current = (0..len)
            .into_par_iter()
            .map(|out| {
                let vi = (out / stride) % q;
                let base = out - vi * stride;
                let mut acc = GaElem::zero(q);
                for ui in 0..q {
                    current[base + ui * stride].translate_add_into(
                        field,
                        shifts[ui * q + vi],
                        &mut acc,
                    );
                }
                acc
            })
            .collect();
        ops += (len * q) as u64;
    }
    (
        GFunction {
            field: field.clone(),
            m: phi.m,
            values: current,
        },
        ops,
    )
}

/// `θ = T(T(φ))`.
pub fn double_transform(phi: &GFunction) -> GFunction {
    transform_naive(&transform_naive(phi))
}

/// The closed form of the double transform:
/// `θ(w) = q^{m-1}(q Z^0 - K)·φ(-w) + q^{m-1} K·ψ(0)`, where
/// `ψ(0) = T(φ)(0) = Σ_u φ(u)`.
pub fn double_transform_closed_form(phi: &GFunction) -> GFunction {
    let field = &phi.field;
    let q = field.q() as i64;
    let scale = BigRational::from_integer(BigInt::from(q).pow(phi.m as u32 - 1));
    let k = GaElem::k(field);
    let q_minus_k = &GaElem::basis(field, Fq::ZERO).scale_int(q) - &k;
    let mut psi0 = GaElem::zero(q as usize);
    for x in &phi.values {
        psi0 += x;
    }
    let tail = k.mul(&psi0, field).expect("same field").scale(&scale);
    let values = (0..phi.values.len())
        .map(|w| {
            let at_neg = &phi.values[field.neg_index(w, phi.m)];
            let head = q_minus_k
                .mul(at_neg, field)
                .expect("same field")
                .scale(&scale);
            &head + &tail
        })
        .collect();
    GFunction {
        field: field.clone(),
        m: phi.m,
        values,
    }
}

/// The `q^m - 1` functions `δ_a = Σ_t (e_{0,t} - e_{a,t})`, `a ≠ 0`, in
/// canonical order of `a`. They span the kernel of `T`.
pub fn kernel_basis(field: &FieldSpec, m: usize) -> Result<Vec<GFunction>> {
    let len = field.space_size(m)?;
    let k = GaElem::k(field);
    let neg_k = -&k;
    (1..len)
        .map(|a| {
            let mut delta = GFunction::zero(field, m)?;
            delta.values[0] = k.clone();
            delta.values[a] = neg_k.clone();
            Ok(delta)
        })
        .collect()
}

/// The index set `I = {(v,t) : v = 0, or v ≠ 0 and t ≠ 0}` in canonical
/// order; `{e_{v,t}}_{(v,t)∈I}` spans a complement of the kernel and
/// `{T(e_{v,t})}_{(v,t)∈I}` is a basis of the image.
pub fn image_basis_index(field: &FieldSpec, m: usize) -> Result<Vec<(VecM, Fq)>> {
    let mut out = Vec::new();
    for v in field.points(m)? {
        for t in field.elements() {
            if v.is_zero() || !t.is_zero() {
                out.push((v.clone(), t));
            }
        }
    }
    Ok(out)
}

/// Matrix of `T` on the basis `(e_{v,t})`, rows and columns in canonical
/// `(index, code)` order, built column by column from `T(e_{v,t})`.
pub fn operator_matrix(field: &FieldSpec, m: usize) -> Result<Vec<Vec<i64>>> {
    let dim = field.space_size(m)? * field.q() as usize;
    let mut rows = vec![vec![0i64; dim]; dim];
    for (col, v) in field.points(m)?.iter().enumerate() {
        for t in field.elements() {
            let image = transform_naive(&GFunction::basis_e(field, m, v, t)?);
            let c = col * field.q() as usize + t.code() as usize;
            for (r, x) in image.to_vector().iter().enumerate() {
                rows[r][c] = integer(x).expect("T has integer entries");
            }
        }
    }
    Ok(rows)
}

fn integer(x: &BigRational) -> Option<i64> {
    if x.denom().is_one() {
        i64::try_from(x.numer()).ok()
    } else {
        None
    }
}

//! The arrangement `A(f) = {E_{w, f(-w)} : w ∈ F_q^m}` in `F_q^m × F_q`.
//!
//! A point `(v, t)` lies on exactly `N_{v,t}(f)` of its hyperplanes, so the
//! incidence counts reproduce the agreement profile. The arrangement is
//! centered (all hyperplanes share a point) only when `f` is affine.

use crate::distance::{DistanceProfile, FTable};
use crate::error::Result;
use crate::field::{FieldSpec, Fq, PointTable, VecM};
use crate::linsys::Hyperplane;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldSpec,
    m: usize,
    /// One hyperplane per `w`, in canonical order; duplicates are kept.
    planes: Vec<Hyperplane>,
}

pub fn arrangement_of(f: &FTable) -> Result<Arrangement> {
    let field = f.field();
    let m = f.m();
    let planes = (0..f.values().len())
        .map(|w| {
            let tau = f.values()[field.neg_index(w, m)];
            Ok(Hyperplane::new(field.vec_of_index(w, m)?, tau))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arrangement {
        field: field.clone(),
        m,
        planes,
    })
}

impl Arrangement {
    pub fn planes(&self) -> &[Hyperplane] {
        &self.planes
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// Number of hyperplanes through each point `(v, t)`, laid out like a
/// [`DistanceProfile`].
pub fn incidence_counts(a: &Arrangement) -> Result<DistanceProfile> {
    let field = &a.field;
    let q = field.q() as usize;
    let points = PointTable::new(field, a.m)?;
    let ws: Vec<usize> = a
        .planes
        .iter()
        .map(|h| field.index(&h.w))
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; points.len * q];
    for v in 0..points.len {
        for t in field.elements() {
            counts[v * q + t.code() as usize] = a
                .planes
                .iter()
                .zip(&ws)
                .filter(|(h, &w)| field.sub(t, points.dot(w, v)) == h.tau)
                .count() as u64;
        }
    }
    DistanceProfile::from_counts(q, a.m, counts)
}

/// Every point common to all hyperplanes, in canonical order. Empty when the
/// arrangement is not centered.
pub fn is_centered(a: &Arrangement) -> Result<Vec<(VecM, Fq)>> {
    let counts = incidence_counts(a)?;
    let q = counts.q();
    let total = a.planes.len() as u64;
    counts
        .counts()
        .iter()
        .enumerate()
        .filter(|&(_, &n)| n == total)
        .map(|(k, _)| Ok((a.field.vec_of_index(k / q, a.m)?, Fq::new((k % q) as u32))))
        .collect()
}

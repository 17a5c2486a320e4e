//! Agreement counts `N_{v,t}(f) = #{u : f(u) = <u,v> + t}` and the Hamming
//! distances `q^m - N_{v,t}(f)` from `f` to every affine function.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq, PointTable, VecM};
use crate::group_algebra::GaElem;
use crate::transform::{transform_fast, transform_naive, GFunction};

/// Largest `q^m` accepted by the profile routines.
pub const PROFILE_LIMIT: usize = 4096;

/// Largest number of functions `q^{q^m}` the exhaustive covering radius
/// search will enumerate.
pub const COVERING_LIMIT: u64 = 1 << 20;

/// A function `F_q^m → F_q` as a value table; position `index(u)` holds `f(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    field: FieldSpec,
    m: usize,
    values: Vec<Fq>,
}

impl FTable {
    pub fn new(field: &FieldSpec, m: usize, values: Vec<Fq>) -> Result<Self> {
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
        for &c in &values {
            field.element(c.code())?;
        }
        Ok(FTable {
            field: field.clone(),
            m,
            values,
        })
    }

    pub fn from_codes(field: &FieldSpec, m: usize, codes: &[u32]) -> Result<Self> {
        Self::new(field, m, codes.iter().map(|&c| Fq::new(c)).collect())
    }

    pub fn from_fn(field: &FieldSpec, m: usize, mut f: impl FnMut(&VecM) -> Fq) -> Result<Self> {
        let values = field.points(m)?.iter().map(&mut f).collect();
        Self::new(field, m, values)
    }

    pub fn zero(field: &FieldSpec, m: usize) -> Result<Self> {
        Self::new(field, m, vec![Fq::ZERO; field.space_size(m)?])
    }

    /// The codeword `u ↦ <u,v> + t`.
    pub fn affine(field: &FieldSpec, v: &VecM, t: Fq) -> Result<Self> {
        field.index(v)?;
        field.element(t.code())?;
        Self::from_fn(field, v.dim(), |u| field.add(field.dot(u, v).unwrap(), t))
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldSpec, m: usize, rng: &mut R) -> Result<Self> {
        let len = field.space_size(m)?;
        let q = field.q();
        Self::new(
            field,
            m,
            (0..len).map(|_| Fq::new(rng.gen_range(0..q))).collect(),
        )
    }

    /// The `i`-th function in lexicographic order of value tables
    /// (`f(index 0)` is the most significant digit).
    pub fn nth(field: &FieldSpec, m: usize, mut i: u64) -> Result<Self> {
        let len = field.space_size(m)?;
        let q = field.q() as u64;
        let mut values = vec![Fq::ZERO; len];
        for slot in values.iter_mut().rev() {
            *slot = Fq::new((i % q) as u32);
            i /= q;
        }
        Self::new(field, m, values)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[Fq] {
        &self.values
    }

    pub fn codes(&self) -> Vec<u32> {
        self.values.iter().map(|c| c.code()).collect()
    }

    pub fn at(&self, u: &VecM) -> Result<Fq> {
        Ok(self.values[self.field.index(u)?])
    }

    /// `f + c`.
    pub fn add_constant(&self, c: Fq) -> Self {
        FTable {
            field: self.field.clone(),
            m: self.m,
            values: self.values.iter().map(|&x| self.field.add(x, c)).collect(),
        }
    }

    pub(crate) fn check_size(&self) -> Result<()> {
        if self.values.len() > PROFILE_LIMIT {
            return Err(Error::TooLarge {
                what: "q^m",
                size: self.values.len() as u128,
                limit: PROFILE_LIMIT as u128,
            });
        }
        Ok(())
    }
}

/// `F(u) = Z^{f(u)}`.
pub fn lift(f: &FTable) -> GFunction {
    let values = f
        .values
        .iter()
        .map(|&c| GaElem::basis(&f.field, c))
        .collect();
    GFunction::new(&f.field, f.m, values).expect("table is validated")
}

/// The `q^m × q` table of agreement counts, row `index(v)`, column `code(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    q: usize,
    m: usize,
    counts: Vec<u64>,
}

impl DistanceProfile {
    /// Wraps a row-major count table without checking the counting laws;
    /// see [`DistanceProfile::check`].
    pub fn from_counts(q: usize, m: usize, counts: Vec<u64>) -> Result<Self> {
        let rows = crate::field::checked_pow(q, m).ok_or(Error::TooLarge {
            what: "q^m",
            size: u128::MAX,
            limit: usize::MAX as u128,
        })?;
        if counts.len() != rows * q {
            return Err(Error::DimensionMismatch {
                expected: rows * q,
                got: counts.len(),
            });
        }
        Ok(DistanceProfile { q, m, counts })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `q^m`.
    pub fn points(&self) -> usize {
        self.counts.len() / self.q
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn counts_mut(&mut self) -> &mut [u64] {
        &mut self.counts
    }

    pub fn count(&self, v: usize, t: Fq) -> u64 {
        self.counts[v * self.q + t.code() as usize]
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.counts[v * self.q..(v + 1) * self.q]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.counts.chunks(self.q)
    }

    /// `d_{v,t} = q^m - N_{v,t}`, same layout as the counts.
    pub fn distances(&self) -> Vec<u64> {
        let total = self.points() as u64;
        self.counts.iter().map(|&n| total - n.min(total)).collect()
    }

    /// Checks `0 ≤ N ≤ q^m`, the row law `Σ_t N_{v,t} = q^m` and the grand
    /// total `q^{2m}`. Returns the first violation.
    pub fn check(&self) -> std::result::Result<(), ProfileViolation> {
        let total = self.points() as u64;
        for (v, row) in self.rows().enumerate() {
            if let Some(t) = row.iter().position(|&n| n > total) {
                return Err(ProfileViolation::CountOutOfRange {
                    v,
                    t,
                    count: row[t],
                });
            }
            let sum: u64 = row.iter().sum();
            if sum != total {
                return Err(ProfileViolation::RowSum {
                    v,
                    sum,
                    expected: total,
                });
            }
        }
        let grand: u64 = self.counts.iter().sum();
        if grand != total * total {
            return Err(ProfileViolation::GrandTotal {
                sum: grand,
                expected: total * total,
            });
        }
        Ok(())
    }
}

/// A broken counting law, with coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileViolation {
    CountOutOfRange { v: usize, t: usize, count: u64 },
    RowSum { v: usize, sum: u64, expected: u64 },
    GrandTotal { sum: u64, expected: u64 },
}

impl std::fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProfileViolation::CountOutOfRange { v, t, count } => {
                write!(f, "N[{v}][{t}] = {count} exceeds q^m")
            }
            ProfileViolation::RowSum { v, sum, expected } => {
                write!(f, "row {v} sums to {sum}, expected {expected}")
            }
            ProfileViolation::GrandTotal { sum, expected } => {
                write!(f, "counts sum to {sum}, expected {expected}")
            }
        }
    }
}

/// Reads the counts off `T(F)` for `F = Z^f`: `N_{v,t} = C_t(T(F)(v))`.
pub fn profile_via_transform(f: &FTable) -> Result<DistanceProfile> {
    f.check_size()?;
    counts_from_transform(f, &transform_naive(&lift(f)))
}

/// Same as [`profile_via_transform`] with the coordinate-folded transform.
pub fn profile_via_fast_transform(f: &FTable) -> Result<DistanceProfile> {
    f.check_size()?;
    counts_from_transform(f, &transform_fast(&lift(f)))
}

fn counts_from_transform(f: &FTable, psi: &GFunction) -> Result<DistanceProfile> {
    let q = f.field.q() as usize;
    let mut counts = Vec::with_capacity(psi.values().len() * q);
    for (v, x) in psi.values().iter().enumerate() {
        for (t, c) in x.coeffs().iter().enumerate() {
            let n = (c.denom().is_one() && !c.is_negative())
                .then(|| c.numer().to_u64())
                .flatten()
                .ok_or_else(|| Error::NotACount {
                    v,
                    t,
                    value: c.to_string(),
                })?;
            counts.push(n);
        }
    }
    DistanceProfile::from_counts(q, f.m, counts)
}

/// Direct count over every `(v, t, u)`.
pub fn profile_bruteforce(f: &FTable) -> Result<DistanceProfile> {
    f.check_size()?;
    let field = &f.field;
    let points = PointTable::new(field, f.m)?;
    let q = field.q() as usize;
    let counts: Vec<u64> = (0..points.len)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut row = vec![0u64; q];
            for t in field.elements() {
                row[t.code() as usize] = (0..points.len)
                    .filter(|&u| f.values[u] == field.add(points.dot(u, v), t))
                    .count() as u64;
            }
            row
        })
        .collect();
    DistanceProfile::from_counts(q, f.m, counts)
}

/// Distances from `f` to every codeword, and their summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSummary {
    /// `d_{v,t}`, row-major like the counts.
    pub matrix: Vec<u64>,
    /// Distance from `f` to the code.
    pub min: u64,
    /// Every `(index(v), code(t))` attaining the minimum, in canonical order.
    pub argmin: Vec<(usize, u32)>,
    /// Distance value to number of codewords at that distance.
    pub histogram: BTreeMap<u64, u64>,
}

pub fn distances(profile: &DistanceProfile) -> DistanceSummary {
    let matrix = profile.distances();
    let min = matrix.iter().copied().min().unwrap_or(0);
    let q = profile.q();
    let argmin = matrix
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == min)
        .map(|(k, _)| (k / q, (k % q) as u32))
        .collect();
    let mut histogram = BTreeMap::new();
    for &d in &matrix {
        *histogram.entry(d).or_insert(0) += 1;
    }
    DistanceSummary {
        matrix,
        min,
        argmin,
        histogram,
    }
}

/// Result of the exhaustive covering radius search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringRadius {
    pub radius: u64,
    /// How many functions sit at distance `radius` from the code.
    pub attained_by: u64,
    /// The first such function in enumeration order.
    pub witness: FTable,
    pub functions_searched: u64,
}

/// Maximum over all `f` of the distance from `f` to the code, by
/// enumerating all `q^{q^m}` functions. Refuses beyond [`COVERING_LIMIT`].
pub fn covering_radius(field: &FieldSpec, m: usize) -> Result<CoveringRadius> {
    let len = field.space_size(m)?;
    let total = (field.q() as u64)
        .checked_pow(len as u32)
        .filter(|&n| n <= COVERING_LIMIT)
        .ok_or(Error::TooLarge {
            what: "q^(q^m) functions",
            size: (field.q() as u128).saturating_pow(len as u32),
            limit: COVERING_LIMIT as u128,
        })?;
    let points = PointTable::new(field, m)?;
    // Every codeword as a value table.
    let codewords: Vec<Vec<Fq>> = (0..len)
        .flat_map(|v| field.elements().map(move |t| (v, t)))
        .map(|(v, t)| (0..len).map(|u| field.add(points.dot(u, v), t)).collect())
        .collect();
    let dist_to_code = |i: u64| -> u64 {
        let f = FTable::nth(field, m, i).expect("in range");
        codewords
            .iter()
            .map(|g| f.values.iter().zip(g).filter(|(a, b)| a != b).count() as u64)
            .min()
            .unwrap()
    };
    let (radius, attained_by, first) = (0..total)
        .into_par_iter()
        .map(|i| (dist_to_code(i), 1u64, i))
        .reduce(
            || (0, 0, u64::MAX),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Equal => (a.0, a.1 + b.1, a.2.min(b.2)),
            },
        );
    Ok(CoveringRadius {
        radius,
        attained_by,
        witness: FTable::nth(field, m, first)?,
        functions_searched: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, n: u32) -> FieldSpec {
        FieldSpec::new(p, n, None).unwrap()
    }

    /// Independent oracle: distances by comparing value tables directly.
    fn oracle_distances(f: &FTable) -> Vec<u64> {
        let field = f.field();
        let pts = field.points(f.m()).unwrap();
        let mut out = Vec::new();
        for v in &pts {
            for t in field.elements() {
                let d = pts
                    .iter()
                    .filter(|u| f.at(u).unwrap() != field.add(field.dot(u, v).unwrap(), t))
                    .count();
                out.push(d as u64);
            }
        }
        out
    }

    #[test]
    fn lift_shapes() {
        let f2 = field(2, 1);
        let zero = FTable::zero(&f2, 2).unwrap();
        assert!(lift(&zero)
            .values()
            .iter()
            .all(|x| *x == GaElem::basis(&f2, Fq::ZERO)));

        let id = FTable::from_codes(&f2, 1, &[0, 1]).unwrap();
        let lifted = lift(&id);
        assert_eq!(lifted.values()[0], GaElem::from_ints([1, 0]));
        assert_eq!(lifted.values()[1], GaElem::from_ints([0, 1]));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = FTable::random(&field(3, 1), 2, &mut rng).unwrap();
        for x in lift(&f).values() {
            let nonzero: Vec<_> = x
                .coeffs()
                .iter()
                .filter(|c| !num_traits::Zero::is_zero(*c))
                .collect();
            assert_eq!(nonzero.len(), 1);
            assert!(nonzero[0].is_one());
        }
    }

    #[test]
    fn table_validation() {
        let f3 = field(3, 1);
        assert!(FTable::from_codes(&f3, 1, &[0, 1, 3]).is_err());
        assert!(FTable::from_codes(&f3, 1, &[0, 1]).is_err());
        assert_eq!(FTable::zero(&f3, 0).unwrap_err(), Error::ZeroDimension);
    }

    #[test]
    fn affine_profile() {
        for (p, n, m) in [(2, 1, 2), (3, 1, 2), (2, 2, 2)] {
            let f = field(p, n);
            let qm = f.space_size(m).unwrap() as u64;
            let q = f.q() as u64;
            for v0 in f.points(m).unwrap() {
                for t0 in f.elements() {
                    let g = FTable::affine(&f, &v0, t0).unwrap();
                    let prof = profile_via_fast_transform(&g).unwrap();
                    let v0i = f.index(&v0).unwrap();
                    for v in 0..qm as usize {
                        for t in f.elements() {
                            let expect = if v == v0i {
                                if t == t0 {
                                    qm
                                } else {
                                    0
                                }
                            } else {
                                qm / q
                            };
                            assert_eq!(prof.count(v, t), expect);
                        }
                    }
                    let s = distances(&prof);
                    assert_eq!(s.min, 0);
                    assert_eq!(s.argmin, vec![(v0i, t0.code())]);
                }
            }
        }
    }

    #[test]
    fn product_function_on_f2_squared() {
        let f2 = field(2, 1);
        // f(u1,u2) = u1 u2 over the order 00, 01, 10, 11
        let f = FTable::from_codes(&f2, 2, &[0, 0, 0, 1]).unwrap();
        let oracle = oracle_distances(&f);
        let mut sorted = oracle.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1, 1, 1, 3, 3, 3, 3]);

        for prof in [
            profile_bruteforce(&f).unwrap(),
            profile_via_transform(&f).unwrap(),
            profile_via_fast_transform(&f).unwrap(),
        ] {
            let s = distances(&prof);
            assert_eq!(s.matrix, oracle);
            assert_eq!(s.min, 1);
            assert_eq!(s.histogram, BTreeMap::from([(1, 4), (3, 4)]));
            assert_eq!(s.argmin.len(), 4);
        }
    }

    #[test]
    fn routes_agree_on_all_of_f2_squared() {
        let f2 = field(2, 1);
        for i in 0..16 {
            let f = FTable::nth(&f2, 2, i).unwrap();
            let brute = profile_bruteforce(&f).unwrap();
            assert_eq!(profile_via_transform(&f).unwrap(), brute);
            assert_eq!(profile_via_fast_transform(&f).unwrap(), brute);
            assert_eq!(distances(&brute).matrix, oracle_distances(&f));
            brute.check().unwrap();
        }
    }

    #[test]
    fn routes_agree_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for (p, n, m) in [(3, 1, 2), (2, 1, 3), (2, 2, 2), (5, 1, 2), (3, 2, 1)] {
            let f = field(p, n);
            for _ in 0..5 {
                let g = FTable::random(&f, m, &mut rng).unwrap();
                let brute = profile_bruteforce(&g).unwrap();
                assert_eq!(profile_via_fast_transform(&g).unwrap(), brute);
                assert_eq!(profile_via_transform(&g).unwrap(), brute);
                assert_eq!(distances(&brute).matrix, oracle_distances(&g));
                let s = distances(&brute);
                assert_eq!(
                    s.histogram.values().sum::<u64>(),
                    (brute.points() * p.pow(n) as usize) as u64
                );
            }
        }
    }

    #[test]
    fn constant_shift_permutes_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = field(3, 1);
        let g = FTable::random(&f, 2, &mut rng).unwrap();
        let base = profile_bruteforce(&g).unwrap();
        for c in f.elements() {
            let shifted = profile_bruteforce(&g.add_constant(c)).unwrap();
            for v in 0..9 {
                for t in f.elements() {
                    assert_eq!(shifted.count(v, f.add(t, c)), base.count(v, t));
                }
            }
            assert_eq!(distances(&shifted).histogram, distances(&base).histogram);
        }
    }

    #[test]
    fn check_reports_violations() {
        let f = FTable::from_codes(&field(2, 1), 2, &[0, 0, 0, 1]).unwrap();
        let mut prof = profile_bruteforce(&f).unwrap();
        prof.check().unwrap();
        prof.counts_mut()[5] += 1;
        assert_eq!(
            prof.check().unwrap_err(),
            ProfileViolation::RowSum {
                v: 2,
                sum: 5,
                expected: 4
            }
        );
        prof.counts_mut()[5] = 9;
        assert!(matches!(
            prof.check(),
            Err(ProfileViolation::CountOutOfRange { v: 2, t: 1, .. })
        ));
    }

    #[test]
    fn nth_enumerates_lexicographically() {
        let f2 = field(2, 1);
        assert_eq!(FTable::nth(&f2, 2, 1).unwrap().codes(), vec![0, 0, 0, 1]);
        assert_eq!(FTable::nth(&f2, 2, 8).unwrap().codes(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn profile_guard() {
        let f = FTable::zero(&field(2, 1), 13).unwrap();
        assert!(matches!(
            profile_bruteforce(&f),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn covering_radii() {
        // First-order binary Reed-Muller codes: 1 for m = 2, 2 for m = 3.
        let f2 = field(2, 1);
        let r2 = covering_radius(&f2, 2).unwrap();
        assert_eq!(r2.radius, 1);
        assert_eq!(r2.attained_by, 8);
        assert_eq!(r2.functions_searched, 16);
        assert_eq!(distances(&profile_bruteforce(&r2.witness).unwrap()).min, 1);
        assert_eq!(covering_radius(&f2, 3).unwrap().radius, 2);
        // q = 3, m = 1: every function of F_3 is within 1 of a line.
        assert_eq!(covering_radius(&field(3, 1), 1).unwrap().radius, 1);
        assert!(matches!(
            covering_radius(&field(3, 1), 3),
            Err(Error::TooLarge { .. })
        ));
    }
}

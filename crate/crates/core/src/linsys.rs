//! The `q^{m+1} × q^{m+1}` linear system satisfied by the agreement counts,
//! and its square invertible (Cramer) modification.
//!
//! Rows and columns are both indexed by pairs `(x, s) ∈ F_q^m × F_q` in
//! canonical order `index(x) q + code(s)`. Row `(w, τ)` of the original
//! system is the hyperplane `E_{w,τ} = {(v,t) : t - <w,v> = τ}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::distance::{DistanceProfile, FTable};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq, PointTable, VecM};
use crate::linalg;

/// Largest system dimension `q^{m+1}` the builders accept.
pub const SYSTEM_LIMIT: usize = 4096;

/// `E_{w,τ} = {(v,t) : L_w(v,t) = τ}` with `L_w(v,t) = t - <w,v>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub w: VecM,
    pub tau: Fq,
}

impl Hyperplane {
    pub fn new(w: VecM, tau: Fq) -> Self {
        Hyperplane { w, tau }
    }

    /// `L_w(v,t)`.
    pub fn linear_form(&self, field: &FieldSpec, v: &VecM, t: Fq) -> Result<Fq> {
        Ok(field.sub(t, field.dot(&self.w, v)?))
    }

    pub fn contains(&self, field: &FieldSpec, v: &VecM, t: Fq) -> Result<bool> {
        Ok(self.linear_form(field, v, t)? == self.tau)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowKind {
    /// `Σ_{(v,t) ∈ E_{w,τ}} x_{v,t} = b_{w,τ}`.
    Original(Hyperplane),
    /// `Σ_t x_{w,t} = q^m`.
    Normalization(VecM),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    field: FieldSpec,
    m: usize,
    rows: Vec<RowKind>,
    /// Dense row-major 0/1 entries, `dim × dim`.
    matrix: Vec<u8>,
    rhs: Vec<u64>,
}

fn dimension(field: &FieldSpec, m: usize) -> Result<usize> {
    let dim = field
        .space_size(m)?
        .checked_mul(field.q() as usize)
        .filter(|&d| d <= SYSTEM_LIMIT)
        .ok_or(Error::TooLarge {
            what: "system dimension q^(m+1)",
            size: (field.q() as u128).saturating_pow(m as u32 + 1),
            limit: SYSTEM_LIMIT as u128,
        })?;
    Ok(dim)
}

/// The original system for `f`: one row per hyperplane `E_{w,τ}`, with
/// `b_{w,τ} = q^{2m-1} - q^{m-1}`, plus `q^m` when `f(-w) = τ`.
pub fn build_system(f: &FTable) -> Result<LinearSystem> {
    let field = f.field();
    let m = f.m();
    let dim = dimension(field, m)?;
    let q = field.q() as usize;
    let points = PointTable::new(field, m)?;
    let qm = points.len as u64;
    let base = qm * qm / q as u64 - qm / q as u64;

    let mut rows = Vec::with_capacity(dim);
    let mut matrix = vec![0u8; dim * dim];
    let mut rhs = Vec::with_capacity(dim);
    for w in 0..points.len {
        let w_vec = field.vec_of_index(w, m)?;
        let f_neg_w = f.values()[field.neg_index(w, m)];
        for tau in field.elements() {
            let r = rows.len();
            // Each v meets E_{w,τ} in exactly one t = τ + <w,v>.
            for v in 0..points.len {
                let t = field.add(tau, points.dot(w, v));
                matrix[r * dim + v * q + t.code() as usize] = 1;
            }
            rhs.push(if f_neg_w == tau { base + qm } else { base });
            rows.push(RowKind::Original(Hyperplane::new(w_vec.clone(), tau)));
        }
    }
    Ok(LinearSystem {
        field: field.clone(),
        m,
        rows,
        matrix,
        rhs,
    })
}

/// The Cramer system: rows `(w, 0)` with `w ≠ 0` of the original system are
/// replaced in place by the normalizations `Σ_t x_{w,t} = q^m`.
pub fn build_cramer(f: &FTable) -> Result<LinearSystem> {
    let mut sys = build_system(f)?;
    let q = sys.field.q() as usize;
    let dim = sys.dim();
    let qm = (dim / q) as u64;
    for w in 1..dim / q {
        let r = w * q;
        let row = &mut sys.matrix[r * dim..(r + 1) * dim];
        row.fill(0);
        row[w * q..(w + 1) * q].fill(1);
        sys.rhs[r] = qm;
        sys.rows[r] = RowKind::Normalization(sys.field.vec_of_index(w, sys.m)?);
    }
    Ok(sys)
}

/// Result of [`verify_block_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: usize,
    pub rows_per_block: usize,
}

/// Checks that the original rows split into `q^m` consecutive blocks `B_w`
/// of `q` parallel hyperplanes, each block covering every column exactly
/// once.
pub fn verify_block_structure(s: &LinearSystem) -> Result<BlockStructure> {
    let q = s.field.q() as usize;
    let dim = s.dim();
    let blocks = dim / q;
    for (w, block) in s.rows.chunks(q).enumerate() {
        let w_vec = s.field.vec_of_index(w, s.m)?;
        let mut seen_tau = vec![false; q];
        for (k, row) in block.iter().enumerate() {
            let RowKind::Original(h) = row else {
                return Err(Error::NotOriginal { row: w * q + k });
            };
            if h.w != w_vec || std::mem::replace(&mut seen_tau[h.tau.code() as usize], true) {
                return Err(Error::BlockStructure { w, column: 0 });
            }
        }
        for column in 0..dim {
            let hits: u32 = (0..q)
                .map(|k| s.matrix[(w * q + k) * dim + column] as u32)
                .sum();
            if hits != 1 {
                return Err(Error::BlockStructure { w, column });
            }
        }
    }
    Ok(BlockStructure {
        blocks,
        rows_per_block: q,
    })
}

impl LinearSystem {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RowKind] {
        &self.rows
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }

    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.matrix[row * self.dim() + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        let dim = self.dim();
        &self.matrix[row * dim..(row + 1) * dim]
    }

    pub fn normalization_rows(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r, RowKind::Normalization(_)))
            .count()
    }

    pub fn is_original(&self) -> bool {
        self.normalization_rows() == 0
    }

    /// Sum of each column over all rows.
    pub fn column_sums(&self) -> Vec<u64> {
        let dim = self.dim();
        let mut sums = vec![0u64; dim];
        for row in self.matrix.chunks(dim) {
            for (s, &x) in sums.iter_mut().zip(row) {
                *s += x as u64;
            }
        }
        sums
    }

    pub fn matrix_big(&self) -> Vec<Vec<BigInt>> {
        self.matrix
            .chunks(self.dim())
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn rhs_big(&self) -> Vec<BigInt> {
        self.rhs.iter().map(|&b| BigInt::from(b)).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix_big())
    }

    /// Exact solution; errors with [`Error::Singular`] when the matrix is
    /// not invertible (always the case for the original system).
    pub fn solve_exact(&self) -> Result<Vec<BigRational>> {
        linalg::solve(&self.matrix_big(), &self.rhs_big())
    }

    /// Solves and reads the solution as an agreement-count table; every
    /// entry must be a nonnegative integer.
    pub fn solve_counts(&self) -> Result<DistanceProfile> {
        let x = self.solve_exact()?;
        self.counts_from_solution(&x)
    }

    fn counts_from_solution(&self, x: &[BigRational]) -> Result<DistanceProfile> {
        let q = self.field.q() as usize;
        let counts = x
            .iter()
            .enumerate()
            .map(|(k, c)| {
                (c.denom().is_one() && !c.is_negative())
                    .then(|| c.numer().to_u64())
                    .flatten()
                    .ok_or_else(|| Error::NotACount {
                        v: k / q,
                        t: k % q,
                        value: c.to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        DistanceProfile::from_counts(q, self.m, counts)
    }

    /// First row violated by `x`, if any.
    pub fn first_violation(&self, x: &[BigRational]) -> Option<usize> {
        (0..self.dim()).find(|&r| {
            let lhs: BigRational = self
                .row(r)
                .iter()
                .zip(x)
                .filter(|(&a, _)| a == 1)
                .map(|(_, v)| v)
                .sum();
            lhs != BigRational::from_integer(BigInt::from(self.rhs[r]))
        })
    }

    pub fn is_satisfied_by(&self, x: &[BigRational]) -> bool {
        x.len() == self.dim() && self.first_violation(x).is_none()
    }
}

/// Agreement counts from the solution of the Cramer system.
pub fn profile_via_linsys(f: &FTable) -> Result<DistanceProfile> {
    build_cramer(f)?.solve_counts()
}

/// [`profile_via_linsys`] for many functions over the same `(q, m)`. The
/// Cramer matrix does not depend on `f`, so one elimination serves every
/// right-hand side.
pub fn profiles_via_linsys(fs: &[FTable]) -> Result<Vec<DistanceProfile>> {
    let Some(first) = fs.first() else {
        return Ok(Vec::new());
    };
    let systems = fs.iter().map(build_cramer).collect::<Result<Vec<_>>>()?;
    let lead = &systems[0];
    for (g, s) in fs.iter().zip(&systems) {
        if g.field() != first.field() {
            return Err(Error::FieldMismatch);
        }
        if g.m() != first.m() || s.matrix != lead.matrix {
            return Err(Error::DimensionMismatch {
                expected: first.m(),
                got: g.m(),
            });
        }
    }
    let rhs: Vec<Vec<BigInt>> = systems.iter().map(LinearSystem::rhs_big).collect();
    let sols = linalg::solve_many(&lead.matrix_big(), &rhs)?;
    systems
        .iter()
        .zip(&sols)
        .map(|(s, x)| s.counts_from_solution(x))
        .collect()
}

/// Result of [`solution_space_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpaceReport {
    pub lambda_sums_to_zero: bool,
    /// `N_{v,t} + λ(v)` satisfies every original row.
    pub perturbed_satisfies_original: bool,
    /// `N_{v,t} + λ(v)` also satisfies all `q^m` normalizations.
    pub perturbed_satisfies_normalization: bool,
}

/// Perturbs the known solution by `λ(v)` along every `t` and checks which
/// equations still hold. For `Σ λ = 0` the original rows always hold; the
/// normalizations hold only for `λ ≡ 0`.
pub fn solution_space_check(
    s: &LinearSystem,
    base: &DistanceProfile,
    lambda: &[BigRational],
) -> Result<SolutionSpaceReport> {
    if let Some(row) = s
        .rows
        .iter()
        .position(|r| !matches!(r, RowKind::Original(_)))
    {
        return Err(Error::NotOriginal { row });
    }
    let q = s.field.q() as usize;
    let points = s.dim() / q;
    if lambda.len() != points {
        return Err(Error::DimensionMismatch {
            expected: points,
            got: lambda.len(),
        });
    }
    if base.counts().len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: base.counts().len(),
        });
    }
    let x: Vec<BigRational> = base
        .counts()
        .iter()
        .enumerate()
        .map(|(k, &n)| BigRational::from_integer(BigInt::from(n)) + &lambda[k / q])
        .collect();
    let target = BigRational::from_integer(BigInt::from(points));
    let normalization = x
        .chunks(q)
        .all(|row| row.iter().sum::<BigRational>() == target);
    Ok(SolutionSpaceReport {
        lambda_sums_to_zero: lambda.iter().sum::<BigRational>().is_zero(),
        perturbed_satisfies_original: s.is_satisfied_by(&x),
        perturbed_satisfies_normalization: normalization,
    })
}

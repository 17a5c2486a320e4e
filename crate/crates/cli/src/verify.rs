//! The invariant battery behind `grm verify`.

use grm_core::linsys::SYSTEM_LIMIT;
use grm_core::{
    arrangement_of, build_cramer, build_system, double_transform, double_transform_closed_form,
    incidence_counts, is_centered, kernel_basis, lift, profile_bruteforce,
    profile_via_fast_transform, profile_via_transform, transform_fast, transform_naive,
    verify_block_structure, DistanceProfile, FTable, GFunction,
};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::FieldInfo;

/// Exact rank and solve checks are skipped above this system dimension.
pub const VERIFY_SOLVE_LIMIT: usize = 256;

/// Kernel and double-transform checks are skipped above this `q^m`.
pub const VERIFY_TRANSFORM_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
        }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Self::pass(name, d),
            Err(d) => Self::fail(name, d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub field: FieldInfo,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn new(f: &FTable, checks: Vec<CheckResult>) -> Self {
        VerifyReport {
            command: "verify",
            field: FieldInfo::new(f.field(), f.m()),
            passed: checks.iter().all(|c| c.status != Status::Fail),
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag}  {:<28} {}\n", c.name, c.detail));
        }
        out.push_str(if self.passed {
            "all checks passed\n"
        } else {
            "verification FAILED\n"
        });
        out
    }
}

/// Row-sum law `Σ_t N_{v,t} = q^m` and range of every count.
pub fn check_row_sums(profile: &DistanceProfile) -> CheckResult {
    match profile.check() {
        Ok(()) => CheckResult::pass("row_sums", format!("{} rows sum to q^m", profile.points())),
        Err(v) => CheckResult::fail("row_sums", v.to_string()),
    }
}

/// Entrywise agreement of `profile` with the brute-force oracle; reports the
/// first differing `(v, t)`.
pub fn check_agreement(
    name: &str,
    profile: &DistanceProfile,
    oracle: &DistanceProfile,
) -> CheckResult {
    let q = oracle.q();
    match profile
        .counts()
        .iter()
        .zip(oracle.counts())
        .position(|(a, b)| a != b)
    {
        None if profile.counts().len() == oracle.counts().len() => {
            CheckResult::pass(name, "identical to brute force")
        }
        None => CheckResult::fail(name, "table sizes differ"),
        Some(k) => CheckResult::fail(
            name,
            format!(
                "N[v={}][t={}] = {}, brute force gives {}",
                k / q,
                k % q,
                profile.counts()[k],
                oracle.counts()[k]
            ),
        ),
    }
}

fn run_route(
    name: &str,
    oracle: &DistanceProfile,
    route: impl FnOnce() -> grm_core::Result<DistanceProfile>,
) -> CheckResult {
    match route() {
        Ok(p) => check_agreement(name, &p, oracle),
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}

/// Runs every check on `f`. `seed` drives the random function used for the
/// double-transform spot check.
pub fn run_battery(f: &FTable, seed: u64) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let oracle = match profile_bruteforce(f) {
        Ok(p) => p,
        Err(e) => return vec![CheckResult::fail("brute_force", e.to_string())],
    };
    let q = f.field().q() as usize;
    let qm = oracle.points();
    let dim = qm * q;

    checks.push(check_row_sums(&oracle));
    checks.push(run_route("transform_vs_brute", &oracle, || {
        profile_via_transform(f)
    }));
    checks.push(run_route("fast_transform_vs_brute", &oracle, || {
        profile_via_fast_transform(f)
    }));
    checks.push(run_route("arrangement_vs_brute", &oracle, || {
        incidence_counts(&arrangement_of(f)?)
    }));
    checks.push(centered_check(f, &oracle));

    if qm <= VERIFY_TRANSFORM_LIMIT {
        checks.push(double_transform_check(f, seed));
        checks.push(kernel_check(f));
    } else {
        let why = format!("q^m = {qm} > {VERIFY_TRANSFORM_LIMIT}");
        checks.push(CheckResult::skipped("double_transform", why.clone()));
        checks.push(CheckResult::skipped("kernel_basis", why));
    }

    if dim <= SYSTEM_LIMIT {
        checks.push(system_checks(f, &oracle));
    } else {
        checks.push(CheckResult::skipped(
            "system_structure",
            format!("q^(m+1) = {dim} > {SYSTEM_LIMIT}"),
        ));
    }
    if dim <= VERIFY_SOLVE_LIMIT {
        checks.push(CheckResult::from_result("original_rank", original_rank(f)));
        checks.push(CheckResult::from_result("cramer_rank", cramer_rank(f)));
        checks.push(run_route("linsys_vs_brute", &oracle, || {
            build_cramer(f)?.solve_counts()
        }));
    } else {
        let why = format!("q^(m+1) = {dim} > {VERIFY_SOLVE_LIMIT}");
        for name in ["original_rank", "cramer_rank", "linsys_vs_brute"] {
            checks.push(CheckResult::skipped(name, why.clone()));
        }
    }
    checks
}

fn centered_check(f: &FTable, oracle: &DistanceProfile) -> CheckResult {
    let name = "centered_iff_affine";
    let centers = match arrangement_of(f).and_then(|a| is_centered(&a)) {
        Ok(c) => c,
        Err(e) => return CheckResult::fail(name, e.to_string()),
    };
    let affine = oracle.counts().iter().any(|&n| n == oracle.points() as u64);
    if centers.is_empty() == affine {
        return CheckResult::fail(
            name,
            format!("centered = {}, f affine = {affine}", !centers.is_empty()),
        );
    }
    let detail = match centers.first() {
        Some((v, t)) => format!("centered at ({v}, {t}); f is affine"),
        None => "not centered; f is not affine".into(),
    };
    CheckResult::pass(name, detail)
}

fn double_transform_check(f: &FTable, seed: u64) -> CheckResult {
    let name = "double_transform";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = match GFunction::random(f.field(), f.m(), 5, &mut rng) {
        Ok(g) => g,
        Err(e) => return CheckResult::fail(name, e.to_string()),
    };
    for (label, phi) in [("lift of f", lift(f)), ("random function", random)] {
        let lhs = double_transform(&phi);
        let rhs = double_transform_closed_form(&phi);
        if let Some(w) = (0..lhs.values().len()).find(|&w| lhs.values()[w] != rhs.values()[w]) {
            return CheckResult::fail(name, format!("{label}: mismatch at w = {w}"));
        }
        if transform_fast(&phi) != transform_naive(&phi) {
            return CheckResult::fail(name, format!("{label}: fast and naive transforms differ"));
        }
    }
    CheckResult::pass(
        name,
        "closed form holds on the lift of f and a random function",
    )
}

fn kernel_check(f: &FTable) -> CheckResult {
    let name = "kernel_basis";
    match kernel_basis(f.field(), f.m()) {
        Ok(basis) => match basis.iter().position(|d| !transform_fast(d).is_zero()) {
            None => CheckResult::pass(name, format!("{} vectors map to zero", basis.len())),
            Some(i) => CheckResult::fail(name, format!("T(delta_a) != 0 for a = {}", i + 1)),
        },
        Err(e) => CheckResult::fail(name, e.to_string()),
    }
}

fn system_checks(f: &FTable, oracle: &DistanceProfile) -> CheckResult {
    let name = "system_structure";
    let s = match build_system(f) {
        Ok(s) => s,
        Err(e) => return CheckResult::fail(name, e.to_string()),
    };
    if let Err(e) = verify_block_structure(&s) {
        return CheckResult::fail(name, e.to_string());
    }
    let x: Vec<BigRational> = oracle
        .counts()
        .iter()
        .map(|&n| BigRational::from_integer(n.into()))
        .collect();
    if let Some(row) = s.first_violation(&x) {
        return CheckResult::fail(name, format!("counts violate row {row}"));
    }
    let qm = oracle.points() as u64;
    let total: u64 = s.rhs().iter().sum();
    if total != qm * qm * qm {
        return CheckResult::fail(
            name,
            format!("rhs total {total}, expected {}", qm * qm * qm),
        );
    }
    CheckResult::pass(name, "blocks partition columns; counts solve every row")
}

fn original_rank(f: &FTable) -> Result<String, String> {
    let s = build_system(f).map_err(|e| e.to_string())?;
    let qm = s.dim() / f.field().q() as usize;
    let expect = s.dim() - (qm - 1);
    let rank = s.rank();
    if rank == expect {
        Ok(format!("rank {rank} = q^(m+1) - (q^m - 1)"))
    } else {
        Err(format!("rank {rank}, expected {expect}"))
    }
}

fn cramer_rank(f: &FTable) -> Result<String, String> {
    let s = build_cramer(f).map_err(|e| e.to_string())?;
    let rank = s.rank();
    if rank == s.dim() {
        Ok(format!("full rank {rank}"))
    } else {
        Err(format!("rank {rank} < {}", s.dim()))
    }
}

//! Acceptance criteria. Every check is exact; the run prints one PASS/FAIL
//! line per criterion and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use grm_core::{
    arrangement_of, build_cramer, build_system, distances, double_transform,
    double_transform_closed_form, incidence_counts, is_centered, kernel_basis, profile_bruteforce,
    profile_via_fast_transform, profile_via_transform, profiles_via_linsys, transform_fast,
    transform_fast_counted, transform_naive, transform_naive_counted, DistanceProfile, FTable,
    FieldSpec, Fq, GFunction, GaElem, RowKind,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const RANDOM_PER_SIZE: usize = 100;
const THREE_WAY_BUDGET: Duration = Duration::from_secs(60);

fn field(q: u32) -> FieldSpec {
    match q {
        2 | 3 | 5 | 7 => FieldSpec::prime(q).unwrap(),
        4 => FieldSpec::new(2, 2, None).unwrap(),
        8 => FieldSpec::new(2, 3, None).unwrap(),
        9 => FieldSpec::new(3, 2, None).unwrap(),
        _ => panic!("no test field of order {q}"),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

/// The test corpus of criteria 1, 2 and 5: all of (2,2), then seeded random
/// functions at the larger sizes.
fn corpus() -> Vec<(u32, usize, Vec<FTable>)> {
    let f2 = field(2);
    let mut out = vec![(
        2,
        2,
        (0..16).map(|i| FTable::nth(&f2, 2, i).unwrap()).collect(),
    )];
    for (k, &(q, m)) in [(2u32, 3usize), (3, 2), (4, 2), (5, 2)].iter().enumerate() {
        let f = field(q);
        let mut r = rng(k as u64);
        let fs = (0..RANDOM_PER_SIZE)
            .map(|_| FTable::random(&f, m, &mut r).unwrap())
            .collect();
        out.push((q, m, fs));
    }
    out
}

struct Profiles {
    brute: DistanceProfile,
    transform: DistanceProfile,
    fast: DistanceProfile,
    linsys: DistanceProfile,
    arrangement: DistanceProfile,
}

fn all_profiles(corpus: &[(u32, usize, Vec<FTable>)]) -> Result<Vec<(FTable, Profiles)>, String> {
    let mut out = Vec::new();
    for (_, _, fs) in corpus {
        let linsys = profiles_via_linsys(fs).map_err(|e| e.to_string())?;
        for (f, ls) in fs.iter().zip(linsys) {
            let p = Profiles {
                brute: profile_bruteforce(f).map_err(|e| e.to_string())?,
                transform: profile_via_transform(f).map_err(|e| e.to_string())?,
                fast: profile_via_fast_transform(f).map_err(|e| e.to_string())?,
                linsys: ls,
                arrangement: incidence_counts(&arrangement_of(f).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?,
            };
            out.push((f.clone(), p));
        }
    }
    Ok(out)
}

fn criterion_1(results: &[(FTable, Profiles)], elapsed: Duration) -> Outcome {
    for (f, p) in results {
        let tag = || format!("q={} m={} f={:?}", f.field().q(), f.m(), f.codes());
        ensure(p.transform == p.brute, || {
            format!("transform != brute at {}", tag())
        })?;
        ensure(p.fast == p.brute, || {
            format!("fast transform != brute at {}", tag())
        })?;
        ensure(p.linsys == p.brute, || {
            format!("Cramer solution != brute at {}", tag())
        })?;
        ensure(p.arrangement == p.brute, || {
            format!("incidences != brute at {}", tag())
        })?;
    }
    ensure(elapsed < THREE_WAY_BUDGET, || {
        format!(
            "took {:.1}s, budget {}s",
            elapsed.as_secs_f64(),
            THREE_WAY_BUDGET.as_secs()
        )
    })?;
    Ok(format!(
        "{} functions, 5 routes identical, {:.2}s",
        results.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_2(results: &[(FTable, Profiles)]) -> Outcome {
    let mut rows = 0;
    for (f, p) in results {
        let qm = p.brute.points() as u64;
        for route in [&p.brute, &p.transform, &p.fast, &p.linsys, &p.arrangement] {
            for (v, row) in route.rows().enumerate() {
                let sum: u64 = row.iter().sum();
                ensure(sum == qm, || {
                    format!("row {v} sums to {sum} for f={:?} (q^m = {qm})", f.codes())
                })?;
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} rows, each summing to q^m"))
}

fn criterion_3() -> Outcome {
    let f2 = field(2);
    for i in 0..16 {
        let f = FTable::nth(&f2, 2, i).unwrap();
        let s = build_system(&f).map_err(|e| e.to_string())?;
        ensure(s.rhs().iter().all(|&b| b == 6 || b == 10), || {
            format!("rhs {:?} for f={:?}", s.rhs(), f.codes())
        })?;
        for (w, block) in s.rhs().chunks(2).enumerate() {
            let tens = block.iter().filter(|&&b| b == 10).count();
            ensure(tens == 1, || {
                format!("block {w} has {tens} tens for f={:?}", f.codes())
            })?;
        }
        for (r, row) in s.rows().iter().enumerate() {
            let RowKind::Original(h) = row else {
                return Err(format!("row {r} is not original"));
            };
            let expect = if f.at(&f2.neg_vec(&h.w)).unwrap() == h.tau {
                10
            } else {
                6
            };
            ensure(s.rhs()[r] == expect, || {
                format!("row {r} rhs {}", s.rhs()[r])
            })?;
        }
    }
    Ok("16 functions: rhs in {6, 10}, one 10 per block".into())
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (q, m) in [(2u32, 2usize), (3, 2), (2, 3)] {
        let f = field(q);
        let qm = f.space_size(m).unwrap();
        let s = build_system(&FTable::zero(&f, m).unwrap()).map_err(|e| e.to_string())?;
        let rank = s.rank();
        let expect = qm * q as usize - (qm - 1);
        ensure(rank == expect, || {
            format!("({q},{m}) rank {rank}, expected {expect}")
        })?;
        let basis = kernel_basis(&f, m).map_err(|e| e.to_string())?;
        ensure(basis.len() == qm - 1, || {
            format!("({q},{m}) {} kernel vectors", basis.len())
        })?;
        for (i, delta) in basis.iter().enumerate() {
            ensure(transform_naive(delta).is_zero(), || {
                format!("({q},{m}) T(δ_{}) != 0", i + 1)
            })?;
            ensure(transform_fast(delta).is_zero(), || {
                format!("({q},{m}) fast T(δ_{}) != 0", i + 1)
            })?;
        }
        notes.push(format!("({q},{m}) rank {rank}"));
    }
    Ok(notes.join(", "))
}

fn criterion_5(corpus: &[(u32, usize, Vec<FTable>)], results: &[(FTable, Profiles)]) -> Outcome {
    let mut notes = Vec::new();
    for (q, m, fs) in corpus {
        let s = build_cramer(&fs[0]).map_err(|e| e.to_string())?;
        ensure(s.rank() == s.dim(), || {
            format!("({q},{m}) Cramer rank {} < {}", s.rank(), s.dim())
        })?;
        notes.push(format!("({q},{m}) rank {}", s.dim()));
    }
    // Single-system solves for a few functions, besides the batched ones.
    for (_, _, fs) in corpus {
        for f in fs.iter().take(3) {
            let p = build_cramer(f)
                .and_then(|s| s.solve_counts())
                .map_err(|e| e.to_string())?;
            ensure(p == profile_bruteforce(f).unwrap(), || {
                format!("solve mismatch f={:?}", f.codes())
            })?;
        }
    }
    for (f, p) in results {
        ensure(p.linsys == p.brute, || {
            format!("Cramer solution != oracle, f={:?}", f.codes())
        })?;
    }
    Ok(format!(
        "{}; {} integral solutions match the oracle",
        notes.join(", "),
        results.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (k, (q, m)) in [(2u32, 2usize), (3, 2)].into_iter().enumerate() {
        let f = field(q);
        let mut r = rng(100 + k as u64);
        for _ in 0..RANDOM_PER_SIZE {
            let phi = GFunction::random(&f, m, 9, &mut r).map_err(|e| e.to_string())?;
            ensure(
                double_transform(&phi) == double_transform_closed_form(&phi),
                || format!("({q},{m}) identity fails"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} random rational functions"))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for (q, m) in [(2u32, 2usize), (3, 2), (4, 2)] {
        let f = field(q);
        let qm = f.space_size(m).unwrap() as i64;
        let at_a = GaElem::basis(&f, Fq::ZERO).scale_int(qm);
        let elsewhere = GaElem::k(&f).scale_int(qm / q as i64);
        for a in f.points(m).unwrap() {
            let gamma = GFunction::gamma(&f, m, &a).unwrap();
            let naive = transform_naive(&gamma);
            ensure(naive == transform_fast(&gamma), || {
                format!("routes differ at a={a}")
            })?;
            for v in f.points(m).unwrap() {
                let expect = if v == a { &at_a } else { &elsewhere };
                ensure(naive.value(&v).unwrap() == expect, || {
                    format!("({q},{m}) T(γ_{a})({v}) = {}", naive.value(&v).unwrap())
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} characters γ_a"))
}

fn criterion_8(results: &[(FTable, Profiles)]) -> Outcome {
    for (f, p) in results {
        ensure(p.fast == p.transform, || {
            format!("lift of f={:?}", f.codes())
        })?;
    }
    let mut compared = results.len();
    for (k, (q, m)) in [(2u32, 3usize), (3, 2), (4, 2)].into_iter().enumerate() {
        let f = field(q);
        let mut r = rng(200 + k as u64);
        for _ in 0..RANDOM_PER_SIZE {
            let phi = GFunction::random(&f, m, 5, &mut r).unwrap();
            ensure(transform_naive(&phi) == transform_fast(&phi), || {
                format!("({q},{m}) random φ")
            })?;
            compared += 1;
        }
    }

    let (q, m) = (3u32, 4usize);
    let f = field(q);
    let phi = GFunction::random(&f, m, 5, &mut rng(300)).unwrap();
    let start = Instant::now();
    let (naive, naive_ops) = transform_naive_counted(&phi);
    let naive_time = start.elapsed();
    let start = Instant::now();
    let (fast, fast_ops) = transform_fast_counted(&phi);
    let fast_time = start.elapsed();
    ensure(naive == fast, || "(3,4) routes differ".into())?;
    let bound = m as u64 * (q as u64).pow(m as u32 + 1);
    let naive_expect = (q as u64).pow(2 * m as u32);
    ensure(fast_ops <= bound, || {
        format!("fast used {fast_ops} > {bound}")
    })?;
    ensure(naive_ops == naive_expect, || {
        format!("naive used {naive_ops}, expected {naive_expect}")
    })?;
    compared += 1;
    Ok(format!(
        "{compared} comparisons; (3,4) translate-adds fast {fast_ops} (bound {bound}) vs naive {naive_ops}; \
         wall {:.1}ms vs {:.1}ms",
        fast_time.as_secs_f64() * 1e3,
        naive_time.as_secs_f64() * 1e3
    ))
}

fn criterion_9() -> Outcome {
    let f2 = field(2);
    // Affine tables enumerated independently of the arrangement code.
    let affine: Vec<Vec<u32>> = (0..4)
        .flat_map(|v| (0..2).map(move |t| (v, t)))
        .map(|(v, t)| {
            let v = f2.vec_of_index(v, 2).unwrap();
            FTable::affine(&f2, &v, Fq::new(t)).unwrap().codes()
        })
        .collect();
    let mut centered = 0;
    for i in 0..16 {
        let f = FTable::nth(&f2, 2, i).unwrap();
        let centers = is_centered(&arrangement_of(&f).unwrap()).unwrap();
        let is_affine = affine.contains(&f.codes());
        ensure(!centers.is_empty() == is_affine, || {
            format!(
                "f={:?} centered={} affine={is_affine}",
                f.codes(),
                !centers.is_empty()
            )
        })?;
        if let Some((v, t)) = centers.first() {
            let g = FTable::affine(&f2, v, *t).unwrap();
            ensure(g == f, || {
                format!("center ({v},{t}) does not reproduce f={:?}", f.codes())
            })?;
            centered += 1;
        }
    }
    ensure(centered == 8, || {
        format!("{centered} centered arrangements")
    })?;
    Ok("exactly the 8 affine functions are centered".into())
}

fn criterion_10() -> Outcome {
    let f2 = field(2);
    let f = FTable::from_fn(&f2, 2, |u| f2.mul(u.coords()[0], u.coords()[1])).unwrap();
    let expected = BTreeMap::from([(1u64, 4u64), (3, 4)]);
    let brute = distances(&profile_bruteforce(&f).unwrap());
    ensure(brute.min == 1 && brute.histogram == expected, || {
        format!("oracle: min {} histogram {:?}", brute.min, brute.histogram)
    })?;
    let routes = [
        ("transform", profile_via_transform(&f)),
        ("fast", profile_via_fast_transform(&f)),
        ("linsys", build_cramer(&f).and_then(|s| s.solve_counts())),
        (
            "arrangement",
            arrangement_of(&f).and_then(|a| incidence_counts(&a)),
        ),
    ];
    for (name, p) in routes {
        let s = distances(&p.map_err(|e| e.to_string())?);
        ensure(s == brute, || {
            format!("{name}: min {} histogram {:?}", s.min, s.histogram)
        })?;
    }
    Ok("min distance 1, histogram {1: 4, 3: 4} on every route".into())
}

fn main() -> ExitCode {
    let corpus = corpus();
    let start = Instant::now();
    let results = all_profiles(&corpus);
    let elapsed = start.elapsed();

    let mut outcomes: Vec<(&str, Outcome)> = Vec::new();
    match &results {
        Ok(results) => {
            outcomes.push((
                "1 three-way profile agreement",
                criterion_1(results, elapsed),
            ));
            outcomes.push(("2 row-sum law", criterion_2(results)));
        }
        Err(e) => {
            outcomes.push(("1 three-way profile agreement", Err(e.clone())));
            outcomes.push(("2 row-sum law", Err(e.clone())));
        }
    }
    outcomes.push(("3 system right-hand side", criterion_3()));
    outcomes.push(("4 kernel dimension", criterion_4()));
    outcomes.push((
        "5 Cramer invertibility and uniqueness",
        match &results {
            Ok(r) => criterion_5(&corpus, r),
            Err(e) => Err(e.clone()),
        },
    ));
    outcomes.push(("6 double-transform identity", criterion_6()));
    outcomes.push(("7 transform of characters", criterion_7()));
    outcomes.push((
        "8 fast transform equivalence and cost",
        match &results {
            Ok(r) => criterion_8(r),
            Err(e) => Err(e.clone()),
        },
    ));
    outcomes.push(("9 centered arrangements", criterion_9()));
    outcomes.push(("10 product-function witness", criterion_10()));

    let mut failed = 0;
    for (name, outcome) in &outcomes {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

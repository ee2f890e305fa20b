//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every comparison is exact.

mod common;

use std::time::{Duration, Instant};

use common::cli_cases::{golden_path, run, CASES};
use common::golden::{golden_lines, manifold, scalar_from_json};
use common::{all_colorings, naive_evaluate};
use framed_tqft::engine::generate::{random_presentation, random_slides, GenConfig};
use framed_tqft::engine::{
    axiom_check, functoriality_check, minimal_data, minimal_data_with, HarnessConfig, Report, COMPOSITION, IDENTITY,
    MENDING, NONDEGENERACY, PERMUTATION, SEWING, SYMMETRY, UNION, ZIGZAG_LEFT, ZIGZAG_RIGHT,
};
use framed_tqft::presentation::{first_homology, signature, FusionRule, MendCircle, Presentation};
use framed_tqft::scalar::ExactScalar;
use framed_tqft::theory::{builtin, builtin_names, AbelianTheory, ColorVector, EvalOptions, Normalization, PhaseTwist};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn theories() -> Vec<AbelianTheory> {
    builtin_names().iter().map(|n| builtin(n).unwrap()).collect()
}

/// All colorings when there are at most `limit`, otherwise `limit` random ones.
fn colorings(t: &AbelianTheory, p: &Presentation, rng: &mut ChaCha8Rng, limit: usize) -> Vec<ColorVector> {
    let all = all_colorings(t, p);
    if all.len() <= limit {
        return all.into_iter().map(ColorVector).collect();
    }
    (0..limit)
        .map(|_| ColorVector(all.choose(rng).unwrap().clone()))
        .collect()
}

fn kirby_invariance() -> Outcome {
    let cfg = GenConfig {
        max_surgery: 4,
        max_genus: 2,
        max_lk: 3,
    };
    let start = Instant::now();
    let mut evaluations = 0usize;
    for (k, t) in theories().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        let mut done = 0;
        while done < 1000 {
            let p = random_presentation(&mut rng, 0..=2, &cfg);
            let Some(script) = random_slides(&mut rng, &p, 20) else {
                continue;
            };
            let q = script.apply(&p).unwrap();
            for c in colorings(t, &p, &mut rng, 16) {
                let (a, b) = (t.evaluate(&p, &c).unwrap(), t.evaluate(&q, &c).unwrap());
                if !a.eq_in(&b, t.d_squared()) {
                    return outcome(false, format!("{} changed under slides: {a} vs {b}", t.name()));
                }
                evaluations += 1;
            }
            done += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(60),
        format!("5 theories x 1000 presentations, 20 slides each, {evaluations} evaluations equal, {elapsed:.2?} (limit 60s)"),
    )
}

fn anomaly_law() -> Outcome {
    let cfg = GenConfig {
        max_surgery: 3,
        max_genus: 2,
        max_lk: 3,
    };
    for (k, t) in theories().iter().enumerate() {
        let ctx = t.d_squared();
        let g = t.gauss_milgram();
        if !g.mul(&g.conj()).eq_in(&ExactScalar::one(), ctx) {
            return outcome(
                false,
                format!("{}: gamma * conj(gamma) = {}", t.name(), g.mul(&g.conj())),
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + k as u64);
        for _ in 0..200 {
            let p = random_presentation(&mut rng, 0..=2, &cfg);
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let q = p.blow_up(s).unwrap();
            let factor = g.pow(s).unwrap();
            for c in colorings(t, &p, &mut rng, 8) {
                let lhs = t.evaluate(&q, &c).unwrap();
                let rhs = factor.mul(&t.evaluate(&p, &c).unwrap());
                if !lhs.eq_in(&rhs, ctx) {
                    return outcome(false, format!("{} blow-up {s:+}: {lhs} vs {rhs}", t.name()));
                }
            }
        }
    }
    outcome(
        true,
        "200 blow-ups per theory scale by gamma^s; gamma * conj(gamma) = 1 for all 5 theories",
    )
}

fn known_manifolds() -> Outcome {
    let semion = builtin("semion").unwrap();
    let ctx = semion.d_squared();
    let ev = |t: &AbelianTheory, text: &str| t.evaluate(&manifold(text), &ColorVector(vec![])).unwrap();
    let checks = [
        ("S3", ev(&semion, ""), ExactScalar::d_power(-1)),
        ("S1xS2", ev(&semion, "surgery K framing 0"), ExactScalar::one()),
        ("L(2,1)", ev(&semion, "surgery K framing 2"), ExactScalar::zero()),
    ];
    for (name, got, want) in &checks {
        if !got.eq_in(want, ctx) {
            return outcome(false, format!("semion {name}: {got} vs {want}"));
        }
    }
    let lines = golden_lines();
    for (theory, label, value) in &lines {
        let t = builtin(theory).unwrap();
        let text = common::golden::MANIFOLDS.iter().find(|(m, _)| m == label).unwrap().1;
        let got = ev(&t, text);
        let want = scalar_from_json(value);
        if !got.eq_in(&want, t.d_squared()) || !naive_evaluate(&t, &manifold(text), &[]).eq_in(&want, t.d_squared()) {
            return outcome(false, format!("{theory} {label}: {got} vs golden {want}"));
        }
    }
    let toric = builtin("toric-code").unwrap();
    let l21 = ev(&toric, "surgery K framing 2").normalized(toric.d_squared());
    outcome(
        true,
        format!(
            "semion S3 = D^-1, S1xS2 = 1, L(2,1) = 0; toric-code L(2,1) = {l21}; {} golden values match",
            lines.len()
        ),
    )
}

fn failing(r: &Report) -> Vec<&str> {
    let mut names: Vec<&str> = r.failures().map(|e| e.axiom.as_str()).collect();
    names.dedup();
    names
}

fn axiom_suite() -> Outcome {
    let axioms = [NONDEGENERACY, SYMMETRY, SEWING, MENDING];
    let small = HarnessConfig {
        seed: 4,
        budget: 60,
        gen: GenConfig {
            max_surgery: 2,
            max_genus: 1,
            max_lk: 3,
        },
        exhaustive_limit: usize::MAX,
        ..Default::default()
    };
    let large = HarnessConfig {
        seed: 44,
        budget: 200,
        gen: GenConfig {
            max_surgery: 3,
            max_genus: 2,
            max_lk: 3,
        },
        samples: 4,
        ..Default::default()
    };
    for t in theories() {
        let md = minimal_data(&t);
        for (label, cfg) in [("exhaustive", &small), ("random", &large)] {
            let r = axiom_check(&md, cfg);
            if let Some(a) = axioms.iter().find(|a| !r.passed(a)) {
                return outcome(false, format!("{} {label}: {a} failed", t.name()));
            }
        }
        let twisted = minimal_data_with(
            &t,
            EvalOptions {
                twist: Some(PhaseTwist { element: 1, shift: 1 }),
                ..Default::default()
            },
        );
        let r = axiom_check(
            &twisted,
            &HarnessConfig {
                budget: 40,
                ..Default::default()
            },
        );
        if r.passed(SEWING) {
            return outcome(false, format!("{}: twisted oracle passed Sewing", t.name()));
        }
        let unnormalized = minimal_data_with(
            &t,
            EvalOptions {
                normalization: Normalization {
                    constant: 0,
                    per_handlebody: 0,
                },
                ..Default::default()
            },
        );
        let r = axiom_check(
            &unnormalized,
            &HarnessConfig {
                budget: 40,
                ..Default::default()
            },
        );
        if failing(&r) != [MENDING] {
            return outcome(
                false,
                format!(
                    "{}: unnormalized oracle failed {:?}, expected only Mending",
                    t.name(),
                    failing(&r)
                ),
            );
        }
    }
    outcome(
        true,
        "all 5 theories pass Nondegeneracy (g <= 2), Symmetry, Sewing, Mending: 60 exhaustive small + 200 random larger \
         instances each; twisted phase fails Sewing; unnormalized oracle fails only Mending",
    )
}

fn functor_laws() -> Outcome {
    let laws = [COMPOSITION, IDENTITY, UNION, PERMUTATION, ZIGZAG_LEFT, ZIGZAG_RIGHT];
    for t in theories() {
        let md = minimal_data(&t);
        let r = functoriality_check(
            &md,
            &HarnessConfig {
                seed: 5,
                budget: 100,
                ..Default::default()
            },
        );
        for law in laws {
            if !r.passed(law) || r.count(law) != 100 {
                return outcome(false, format!("{}: {law} failed", t.name()));
            }
        }
    }
    outcome(
        true,
        "composition, identity, union, permutation and both zig-zags exact on 100 instances per theory",
    )
}

fn sewing_and_rule_freezing() -> Outcome {
    for t in theories() {
        let md = minimal_data(&t);
        let r = axiom_check(
            &md,
            &HarnessConfig {
                seed: 6,
                budget: 50,
                ..Default::default()
            },
        );
        if !(r.passed(SEWING) && r.passed(MENDING)) || r.count(SEWING) != 50 || r.count(MENDING) != 50 {
            return outcome(false, format!("{}: sewing/mending failed", t.name()));
        }
    }
    // rule search: which gluing rules survive Sewing and Mending everywhere
    let mut survivors = Vec::new();
    for framing_offset in -1..=1 {
        for mend_circle in [MendCircle::None, MendCircle::Isolated, MendCircle::Meridian] {
            let rule = FusionRule {
                framing_offset,
                mend_circle,
            };
            let ok = theories().iter().all(|t| {
                let r = axiom_check(
                    &minimal_data(t),
                    &HarnessConfig {
                        seed: 60,
                        budget: 10,
                        pairing_genus: 0,
                        rule,
                        ..Default::default()
                    },
                );
                r.passed(SEWING) && r.passed(MENDING)
            });
            if ok {
                survivors.push(rule);
            }
        }
    }
    if survivors != [FusionRule::default()] {
        return outcome(false, format!("rule search survivors {survivors:?}"));
    }
    let frozen = Normalization::default();
    outcome(
        true,
        format!(
            "50 sewings + 50 mendings per theory; rule search leaves only framing offset 0 with an isolated mend circle; \
             normalization constant {} per-handlebody {}",
            frozen.constant, frozen.per_handlebody
        ),
    )
}

/// A random unimodular matrix as a product of elementary moves.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let j = (i + rng.gen_range(1..n)) % n;
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                for row in p.iter_mut() {
                    row[j] += s * row[i];
                }
            }
            1 if n > 1 => {
                let j = (i + rng.gen_range(1..n)) % n;
                for row in p.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for row in p.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    p
}

fn with_surgery_matrix(m: &[Vec<i64>]) -> Presentation {
    let mut p = Presentation::sphere();
    for i in 0..m.len() {
        p.add_surgery(&format!("K{}", i + 1), m[i][i]).unwrap();
    }
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            p.set_linking(i, j, m[i][j]).unwrap();
        }
    }
    p
}

/// Signature from floating-point eigenvalues (cyclic Jacobi), an
/// independent reference for small well-conditioned matrices.
fn jacobi_signature(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    for _ in 0..100 {
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-12 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let scale = a.iter().flatten().fold(1.0f64, |x, v| x.max(v.abs()));
    (0..n)
        .map(|i| {
            if a[i][i] > 1e-9 * scale {
                1
            } else if a[i][i] < -1e-9 * scale {
                -1
            } else {
                0
            }
        })
        .sum()
}

fn matrix_infrastructure() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7000);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-3..=3);
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        let p = unimodular(&mut rng, n);
        let congruent: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| (0..n).map(|l| p[k][i] * m[k][l] * p[l][j]).sum::<i64>())
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let (a, b) = (with_surgery_matrix(&m), with_surgery_matrix(&congruent));
        let sig = signature(&a);
        if sig != signature(&b) || sig != jacobi_signature(&m) || first_homology(&a) != first_homology(&b) {
            return outcome(false, format!("congruence changed invariants of {m:?}"));
        }
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        if signature(&a.blow_up(s).unwrap()) != sig + s {
            return outcome(false, format!("blow-up {s:+} not additive on {m:?}"));
        }
    }
    let cfg = GenConfig {
        max_surgery: 4,
        max_genus: 0,
        max_lk: 3,
    };
    let mut slid = 0;
    while slid < 1000 {
        let p = random_presentation(&mut rng, 0..=0, &cfg);
        let Some(script) = random_slides(&mut rng, &p, 10) else {
            continue;
        };
        let q = script.apply(&p).unwrap();
        if first_homology(&q) != first_homology(&p) || signature(&q) != signature(&p) {
            return outcome(false, format!("slides changed homology of {p:?}"));
        }
        slid += 1;
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(10),
        format!(
            "1000 unimodular congruences keep signature (= float eigenvalue count) and Smith form; blow-up additive; \
             1000 slide scripts keep Smith form; {elapsed:.2?} (limit 10s)"
        ),
    )
}

fn cli_contract() -> Outcome {
    for (name, code, args) in CASES {
        let (got, text) = run(args);
        if got != *code {
            return outcome(false, format!("{name}: exit {got}, expected {code}"));
        }
        let golden = std::fs::read_to_string(golden_path(name)).unwrap_or_default();
        if text != golden {
            return outcome(false, format!("{name}: output differs from golden"));
        }
        if run(args).1 != text {
            return outcome(false, format!("{name}: nondeterministic output"));
        }
    }
    let codes = |c: i32| CASES.iter().filter(|x| x.1 == c).count();
    outcome(
        true,
        format!(
            "{} fixture runs byte-identical to goldens and across reruns (exit 0: {}, exit 1: {}, exit 2: {})",
            CASES.len(),
            codes(0),
            codes(1),
            codes(2)
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("Kirby invariance", kirby_invariance),
        ("anomaly law", anomaly_law),
        ("known manifolds", known_manifolds),
        ("axiom suite", axiom_suite),
        ("functor laws", functor_laws),
        ("combinatorial vs algebraic sewing", sewing_and_rule_freezing),
        ("matrix infrastructure", matrix_infrastructure),
        ("CLI determinism and exit codes", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!(
            "{} criterion {} ({name}): {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

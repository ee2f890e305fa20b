//! Exact checks of the four axioms on minimal data and of the functor laws
//! of its extension, reported as JSON lines.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::presentation::{render, FusionRule, Presentation};
use crate::scalar::ExactScalar;

use super::cobordism::{decode, extend, swap_matrix, Cobordism};
use super::generate::{
    random_cobordism, random_cobordism_between, random_genera, random_presentation_with_genera, GenConfig,
};
use super::{EngineError, MinimalData, ScalarMatrix};

pub const SYMMETRY: &str = "Symmetry";
pub const NONDEGENERACY: &str = "Nondegeneracy";
pub const SEWING: &str = "Sewing";
pub const MENDING: &str = "Mending";

pub const COMPOSITION: &str = "Composition";
pub const IDENTITY: &str = "Identity";
pub const UNION: &str = "Union";
pub const PERMUTATION: &str = "Permutation";
pub const ZIGZAG_LEFT: &str = "ZigZagLeft";
pub const ZIGZAG_RIGHT: &str = "ZigZagRight";

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub axiom: String,
    pub instance: String,
    pub pass: bool,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// True when every entry for `axiom` passed (and there is at least one).
    pub fn passed(&self, axiom: &str) -> bool {
        let mut any = false;
        for e in self.entries.iter().filter(|e| e.axiom == axiom) {
            if !e.pass {
                return false;
            }
            any = true;
        }
        any
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.entries.iter().filter(|e| e.axiom == axiom).count()
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            writeln!(
                out,
                "{}",
                serde_json::to_string(e).expect("report serialization cannot fail")
            )
            .unwrap();
        }
        out
    }

    /// One line per axiom: name, pass/fail, instance count.
    pub fn summary(&self) -> String {
        let mut names: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !names.contains(&e.axiom.as_str()) {
                names.push(&e.axiom);
            }
        }
        let mut out = String::new();
        for name in names {
            let verdict = if self.passed(name) { "pass" } else { "FAIL" };
            writeln!(out, "{name}: {verdict} ({} instances)", self.count(name)).unwrap();
        }
        out
    }

    fn push(&mut self, axiom: &str, instance: String, outcome: Outcome) {
        self.entries.push(ReportEntry {
            axiom: axiom.into(),
            instance,
            pass: outcome.pass,
            lhs: outcome.lhs,
            rhs: outcome.rhs,
        });
    }
}

struct Outcome {
    pass: bool,
    lhs: ExactScalar,
    rhs: ExactScalar,
}

impl Outcome {
    /// An instance that could not be evaluated (e.g. a singular pairing).
    fn failed() -> Self {
        Outcome {
            pass: false,
            lhs: ExactScalar::zero(),
            rhs: ExactScalar::zero(),
        }
    }
}

/// Instance sizes and counts for the harnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Random instances per axiom (or per law).
    pub budget: usize,
    pub gen: GenConfig,
    /// Largest genus whose pairing is checked for nondegeneracy.
    pub pairing_genus: usize,
    /// Basis sets up to this size are checked exhaustively, larger ones sampled.
    pub exhaustive_limit: usize,
    pub samples: usize,
    /// Gluing rule used for sewing, mending and composition.
    pub rule: FusionRule,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            budget: 20,
            gen: GenConfig::default(),
            pairing_genus: 2,
            exhaustive_limit: 64,
            samples: 8,
            rule: FusionRule::default(),
        }
    }
}

fn basis_set(rng: &mut ChaCha8Rng, dims: &[usize], cfg: &HarnessConfig) -> Vec<Vec<usize>> {
    let total: usize = dims.iter().product();
    if total <= cfg.exhaustive_limit {
        (0..total).map(|i| decode(i, dims)).collect()
    } else {
        (0..cfg.samples)
            .map(|_| dims.iter().map(|&d| rng.gen_range(0..d)).collect())
            .collect()
    }
}

/// Compares lhs(b) and rhs(b) over the basis set; reports the first
/// mismatch or, if none, the last compared pair.
fn compare<F>(md: &MinimalData, bases: &[Vec<usize>], mut f: F) -> Result<(Outcome, Option<Vec<usize>>), EngineError>
where
    F: FnMut(&[usize]) -> Result<(ExactScalar, ExactScalar), EngineError>,
{
    let mut last = Outcome {
        pass: true,
        lhs: ExactScalar::zero(),
        rhs: ExactScalar::zero(),
    };
    for b in bases {
        let (lhs, rhs) = f(b)?;
        let pass = lhs.eq_in(&rhs, md.d_squared());
        last = Outcome { pass, lhs, rhs };
        if !pass {
            return Ok((last, Some(b.clone())));
        }
    }
    Ok((last, None))
}

fn instance_text(parts: &[&Presentation], note: &str, basis: Option<&[usize]>) -> String {
    let mut out = String::new();
    writeln!(out, "# {note}").unwrap();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            out.push_str("# ---\n");
        }
        out.push_str(&render(p));
    }
    if let Some(b) = basis.filter(|b| !b.is_empty()) {
        let b: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        writeln!(out, "# basis {}", b.join(" ")).unwrap();
    }
    out
}

fn contract_dual(
    md: &MinimalData,
    g: usize,
    left: &[ExactScalar],
    right: &[ExactScalar],
) -> Result<ExactScalar, EngineError> {
    let e = md.dual_element(g)?.coeffs;
    let ctx = Some(md.d_squared());
    let mut acc = ExactScalar::zero();
    for (x, l) in left.iter().enumerate() {
        if l.is_zero() {
            continue;
        }
        for (y, r) in right.iter().enumerate() {
            let c = e.get(x, y);
            if r.is_zero() || c.is_zero() {
                continue;
            }
            acc = acc.add(&l.mul(c).mul(r), ctx).map_err(EngineError::Scalar)?;
        }
    }
    Ok(acc)
}

fn check_symmetry(md: &MinimalData, rng: &mut ChaCha8Rng, cfg: &HarnessConfig) -> (String, Outcome) {
    let h = rng.gen_range(2..=3);
    let genera = random_genera(rng, h, cfg.gen.max_genus);
    let p = random_presentation_with_genera(rng, &genera, &cfg.gen);
    let mut perm: Vec<usize> = (0..h).collect();
    perm.shuffle(rng);
    let q = p.permute(&perm).expect("shuffle is a permutation");
    let bases = basis_set(rng, &md.dims(&genera), cfg);
    let res = compare(md, &bases, |b| {
        let mut pb = vec![0; h];
        for (j, &t) in perm.iter().enumerate() {
            pb[t] = b[j];
        }
        Ok((md.functional(&q, &pb)?, md.functional(&p, b)?))
    });
    let perm_s: Vec<String> = perm.iter().map(|x| x.to_string()).collect();
    let note = format!("permute {}", perm_s.join(" "));
    match res {
        Ok((o, b)) => (instance_text(&[&p], &note, b.as_deref()), o),
        Err(e) => (instance_text(&[&p], &format!("{note}: {e}"), None), Outcome::failed()),
    }
}

fn check_nondegeneracy(md: &MinimalData, g: usize) -> (String, Outcome) {
    let text = instance_text(
        &[&crate::presentation::pairing_presentation(g)],
        &format!("pairing genus {g}"),
        None,
    );
    let outcome = (|| -> Result<Outcome, EngineError> {
        let p = md.pairing(g)?;
        let dim = ExactScalar::from_integer(p.rows() as i64);
        let dual = match md.dual_element(g) {
            Ok(d) => d,
            Err(_) => {
                return Ok(Outcome {
                    pass: false,
                    lhs: p.determinant(),
                    rhs: ExactScalar::zero(),
                })
            }
        };
        let lhs = dual.coeffs.mul(&p).trace();
        let pass = p.is_symmetric() && dual.contraction_laws_hold(&p) && lhs.eq_in(&dim, md.d_squared());
        Ok(Outcome { pass, lhs, rhs: dim })
    })();
    match outcome {
        Ok(o) => (text, o),
        Err(e) => (format!("{text}# {e}\n"), Outcome::failed()),
    }
}

fn check_sewing(md: &MinimalData, rng: &mut ChaCha8Rng, cfg: &HarnessConfig) -> (String, Outcome) {
    let g = rng.gen_range(0..=cfg.gen.max_genus);
    let hp = rng.gen_range(1..=2);
    let hq = rng.gen_range(1..=2);
    let mut gp = random_genera(rng, hp - 1, cfg.gen.max_genus);
    gp.push(g);
    let mut gq = vec![g];
    gq.extend(random_genera(rng, hq - 1, cfg.gen.max_genus));
    let p = random_presentation_with_genera(rng, &gp, &cfg.gen);
    let q = random_presentation_with_genera(rng, &gq, &cfg.gen);
    let free: Vec<usize> = gp[..hp - 1].iter().chain(&gq[1..]).copied().collect();
    let bases = basis_set(rng, &md.dims(&free), cfg);
    let res = p.sew_with(&q, &cfg.rule).map_err(EngineError::from).and_then(|s| {
        let d = md.dim(g);
        compare(md, &bases, |b| {
            let lhs = md.functional(&s, b)?;
            let (bp, bq) = b.split_at(hp - 1);
            let mut left = Vec::with_capacity(d);
            let mut right = Vec::with_capacity(d);
            for x in 0..d {
                let mut full = bp.to_vec();
                full.push(x);
                left.push(md.functional(&p, &full)?);
                let mut full = vec![x];
                full.extend_from_slice(bq);
                right.push(md.functional(&q, &full)?);
            }
            Ok((lhs, contract_dual(md, g, &left, &right)?))
        })
    });
    let note = format!("sew genus {g}: last handlebody of the first with the first of the second");
    match res {
        Ok((o, b)) => (instance_text(&[&p, &q], &note, b.as_deref()), o),
        Err(e) => (
            instance_text(&[&p, &q], &format!("{note}: {e}"), None),
            Outcome::failed(),
        ),
    }
}

fn check_mending(md: &MinimalData, rng: &mut ChaCha8Rng, cfg: &HarnessConfig) -> (String, Outcome) {
    let g = rng.gen_range(0..=cfg.gen.max_genus);
    let extra = rng.gen_range(0..=1);
    let mut genera = vec![g, g];
    genera.extend(random_genera(rng, extra, cfg.gen.max_genus));
    let p = random_presentation_with_genera(rng, &genera, &cfg.gen);
    let bases = basis_set(rng, &md.dims(&genera[2..]), cfg);
    let res = p.mend_with(&cfg.rule).map_err(EngineError::from).and_then(|m| {
        let d = md.dim(g);
        let e = md.dual_element(g)?.coeffs;
        compare(md, &bases, |b| {
            let lhs = md.functional(&m, b)?;
            let mut rhs = ExactScalar::zero();
            for x in 0..d {
                for y in 0..d {
                    let c = e.get(x, y);
                    if c.is_zero() {
                        continue;
                    }
                    let mut full = vec![x, y];
                    full.extend_from_slice(b);
                    let v = md.functional(&p, &full)?;
                    rhs = rhs.add(&c.mul(&v), Some(md.d_squared())).map_err(EngineError::Scalar)?;
                }
            }
            Ok((lhs, rhs))
        })
    });
    let note = format!("mend genus {g}: first two handlebodies");
    match res {
        Ok((o, b)) => (instance_text(&[&p], &note, b.as_deref()), o),
        Err(e) => (instance_text(&[&p], &format!("{note}: {e}"), None), Outcome::failed()),
    }
}

type AxiomCheck = fn(&MinimalData, &mut ChaCha8Rng, &HarnessConfig) -> (String, Outcome);

/// Checks Symmetry, Nondegeneracy (g ≤ `pairing_genus`), Sewing and Mending.
/// Instances are generated from `cfg.seed`; the report order is fixed.
pub fn axiom_check(md: &MinimalData, cfg: &HarnessConfig) -> Report {
    let mut report = Report::default();
    for g in 0..=cfg.pairing_genus {
        let (text, o) = check_nondegeneracy(md, g);
        report.push(NONDEGENERACY, text, o);
    }
    let checks: [(&str, u64, AxiomCheck); 3] = [
        (SYMMETRY, 1, check_symmetry),
        (SEWING, 2, check_sewing),
        (MENDING, 3, check_mending),
    ];
    for (name, stream, check) in checks {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        for _ in 0..cfg.budget {
            let (text, o) = check(md, &mut rng, cfg);
            report.push(name, text, o);
        }
    }
    report
}

fn matrix_outcome(lhs: &ScalarMatrix, rhs: &ScalarMatrix) -> Outcome {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Outcome::failed();
    }
    match lhs.first_difference(rhs) {
        Some((r, c)) => Outcome {
            pass: false,
            lhs: lhs.get(r, c).clone(),
            rhs: rhs.get(r, c).clone(),
        },
        None if lhs.rows() * lhs.cols() > 0 => Outcome {
            pass: true,
            lhs: lhs.get(0, 0).clone(),
            rhs: rhs.get(0, 0).clone(),
        },
        None => Outcome {
            pass: true,
            lhs: ExactScalar::zero(),
            rhs: ExactScalar::zero(),
        },
    }
}

fn cobordism_text(cs: &[&Cobordism], note: &str) -> String {
    let mut out = String::new();
    writeln!(out, "# {note}").unwrap();
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.push_str("# ---\n");
        }
        let list = |v: &[usize]| {
            v.iter()
                .map(|h| c.presentation().handlebodies()[*h].name().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(out, "# source {}", list(c.source())).unwrap();
        writeln!(out, "# target {}", list(c.target())).unwrap();
        out.push_str(&render(c.presentation()));
    }
    out
}

fn law<F>(report: &mut Report, name: &str, text: String, f: F)
where
    F: FnOnce() -> Result<(ScalarMatrix, ScalarMatrix), EngineError>,
{
    match f() {
        Ok((l, r)) => report.push(name, text, matrix_outcome(&l, &r)),
        Err(e) => report.push(name, format!("{text}# error: {e}\n"), Outcome::failed()),
    }
}

/// Checks the functor laws of the extension on `cfg.budget` random
/// instances: composition, identity, union, permutation and both zig-zags.
pub fn functoriality_check(md: &MinimalData, cfg: &HarnessConfig) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(4);
    let gen = cfg.gen;
    let ctx = md.d_squared();
    for _ in 0..cfg.budget {
        // composable pair Σ → Γ → Δ
        let ns = rng.gen_range(0..=1);
        let sigma = random_genera(&mut rng, ns, gen.max_genus);
        let m = random_cobordism(&mut rng, &sigma, 2, &gen);
        let gamma = m.target_genera();
        let nd = rng.gen_range(0..=1);
        let delta = random_genera(&mut rng, nd, gen.max_genus);
        let n = random_cobordism_between(&mut rng, &gamma, &delta, &gen);
        law(
            &mut report,
            COMPOSITION,
            cobordism_text(&[&m, &n], "second after first"),
            || {
                let composite = m.then_with(&n, &cfg.rule)?;
                let lhs = extend(md, &composite)?.matrix;
                let rhs = extend(md, &n)?.matrix.mul(&extend(md, &m)?.matrix);
                Ok((lhs, rhs))
            },
        );

        let k = rng.gen_range(1..=2);
        let id_genera = random_genera(&mut rng, k, gen.max_genus);
        let id = Cobordism::identity(&id_genera);
        law(&mut report, IDENTITY, cobordism_text(&[&id], "identity"), || {
            let dim = md.dims(&id_genera).iter().product();
            Ok((extend(md, &id)?.matrix, ScalarMatrix::identity(dim, ctx)))
        });

        law(&mut report, UNION, cobordism_text(&[&m, &n], "union"), || {
            let lhs = extend(md, &m.union(&n))?.matrix;
            let rhs = extend(md, &m)?.matrix.kron(&extend(md, &n)?.matrix);
            Ok((lhs, rhs))
        });

        let k = rng.gen_range(1..=2);
        let a = random_genera(&mut rng, k, gen.max_genus);
        let b = random_genera(&mut rng, 1, gen.max_genus);
        let s = Cobordism::symmetry(&a, &b);
        law(&mut report, PERMUTATION, cobordism_text(&[&s], "symmetry"), || {
            Ok((extend(md, &s)?.matrix, swap_matrix(md, &a, &b)))
        });

        let g = rng.gen_range(0..=gen.max_genus);
        let dim = md.dim(g);
        let left = Cobordism::identity(&[g]).union(&Cobordism::cup(g));
        let right = Cobordism::cap(g).union(&Cobordism::identity(&[g]));
        law(
            &mut report,
            ZIGZAG_LEFT,
            cobordism_text(&[&left, &right], &format!("zig-zag genus {g}")),
            || {
                let composite = extend(md, &left.then_with(&right, &cfg.rule)?)?.matrix;
                let product = extend(md, &right)?.matrix.mul(&extend(md, &left)?.matrix);
                let id = ScalarMatrix::identity(dim, ctx);
                if !product.eq_exact(&id) {
                    return Ok((product, id));
                }
                Ok((composite, id))
            },
        );
        let left = Cobordism::cup(g).union(&Cobordism::identity(&[g]));
        let right = Cobordism::identity(&[g]).union(&Cobordism::cap(g));
        law(
            &mut report,
            ZIGZAG_RIGHT,
            cobordism_text(&[&left, &right], &format!("zig-zag genus {g}")),
            || {
                let composite = extend(md, &left.then_with(&right, &cfg.rule)?)?.matrix;
                let product = extend(md, &right)?.matrix.mul(&extend(md, &left)?.matrix);
                let id = ScalarMatrix::identity(dim, ctx);
                if !product.eq_exact(&id) {
                    return Ok((product, id));
                }
                Ok((composite, id))
            },
        );
    }
    report
}

/// Z(m) applied to a basis vector by direct contraction, bypassing the
/// matrix product in [`extend`]; used to cross-check it.
pub fn extend_column(md: &MinimalData, c: &Cobordism, source_index: usize) -> Result<Vec<ExactScalar>, EngineError> {
    let tg = c.target_genera();
    let sg = c.source_genera();
    let tdims = md.dims(&tg);
    let sdims = md.dims(&sg);
    let rev: Vec<usize> = tdims.iter().rev().copied().collect();
    let dt: usize = tdims.iter().product();
    let hat = c.hat();
    let duals = tg.iter().map(|&g| md.dual_element(g)).collect::<Result<Vec<_>, _>>()?;
    let s = decode(source_index, &sdims);
    let k = tg.len();
    let mut out = Vec::with_capacity(dt);
    for row in 0..dt {
        let gamma = decode(row, &tdims);
        let mut acc = ExactScalar::zero();
        for col in 0..dt {
            let gr = decode(col, &rev);
            let mut coeff = ExactScalar::one();
            for i in 0..k {
                coeff = coeff.mul(duals[i].coeffs.get(gamma[i], gr[k - 1 - i]));
            }
            if coeff.is_zero() {
                continue;
            }
            let mut basis = gr.clone();
            basis.extend_from_slice(&s);
            let v = md.functional(&hat, &basis)?;
            acc = acc
                .add(&coeff.mul(&v), Some(md.d_squared()))
                .map_err(EngineError::Scalar)?;
        }
        out.push(acc);
    }
    Ok(out)
}

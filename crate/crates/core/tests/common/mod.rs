//! Independent reference computations shared by the integration tests.
//! Nothing here goes through the evaluator's tables or histograms.
#![allow(dead_code)]

pub mod cli_cases;
pub mod golden;

use framed_tqft::presentation::Presentation;
use framed_tqft::scalar::{DSquared, ExactScalar};
use framed_tqft::theory::AbelianTheory;
use num_rational::Rational64;
use num_traits::Zero;

/// q on integer coordinates, straight from the generator data.
pub fn naive_q(t: &AbelianTheory, x: &[i64]) -> Rational64 {
    let qg = t.q_generators();
    let bg = t.b_generators();
    let mut acc = Rational64::zero();
    for i in 0..x.len() {
        acc += qg[i] * Rational64::from(x[i] * x[i]);
        for j in i + 1..x.len() {
            acc += bg[i][j] * Rational64::from(x[i] * x[j]);
        }
    }
    acc
}

pub fn naive_b(t: &AbelianTheory, x: &[i64], y: &[i64]) -> Rational64 {
    let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    naive_q(t, &s) - naive_q(t, x) - naive_q(t, y)
}

fn coords(t: &AbelianTheory, index: usize) -> Vec<i64> {
    t.element(index).into_iter().map(|v| v as i64).collect()
}

fn root_of(r: Rational64) -> ExactScalar {
    let r = r - r.floor();
    ExactScalar::root(*r.numer(), *r.denom() as u64)
}

/// D^(−1−n) Σ over surgery colorings of Π θ^fr Π b^lk, one root of unity
/// per coloring. `colors` colors the longitudes in circle order.
pub fn naive_evaluate(t: &AbelianTheory, p: &Presentation, colors: &[usize]) -> ExactScalar {
    let ctx = t.d_squared();
    let lk = p.linking_matrix();
    let surgery: Vec<usize> = p.surgery_indices().collect();
    let n = surgery.len();
    let total = p.circles().len();
    let mut sum = ExactScalar::zero();
    let mut assignment = vec![0usize; n];
    loop {
        let mut all: Vec<Vec<i64>> = vec![Vec::new(); total];
        for (l, &c) in colors.iter().enumerate() {
            all[l] = coords(t, c);
        }
        for (k, &s) in surgery.iter().enumerate() {
            all[s] = coords(t, assignment[k]);
        }
        let mut phase = Rational64::zero();
        for i in 0..total {
            phase += naive_q(t, &all[i]) * Rational64::from(lk[i][i]);
            for j in i + 1..total {
                phase += naive_b(t, &all[i], &all[j]) * Rational64::from(lk[i][j]);
            }
        }
        sum = sum.add(&root_of(phase), Some(ctx)).unwrap();
        // odometer over Aⁿ
        let mut k = 0;
        while k < n {
            assignment[k] += 1;
            if assignment[k] < t.size() {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    sum.mul(&ExactScalar::d_power(-1 - n as i64))
}

/// γ = D⁻¹ Σ_a θ(a), term by term.
pub fn naive_gamma(t: &AbelianTheory) -> ExactScalar {
    let mut sum = ExactScalar::zero();
    for a in 0..t.size() {
        sum = sum
            .add(&root_of(naive_q(t, &coords(t, a))), Some(t.d_squared()))
            .unwrap();
    }
    sum.mul(&ExactScalar::d_power(-1))
}

/// Every longitude coloring of `p`, first longitude most significant.
pub fn all_colorings(t: &AbelianTheory, p: &Presentation) -> Vec<Vec<usize>> {
    let nl = p.longitude_count();
    let total = t.size().pow(nl as u32);
    (0..total)
        .map(|mut i| {
            let mut c = vec![0; nl];
            for slot in c.iter_mut().rev() {
                *slot = i % t.size();
                i /= t.size();
            }
            c
        })
        .collect()
}

pub fn assert_eq_in(a: &ExactScalar, b: &ExactScalar, ctx: DSquared, what: &str) {
    assert!(a.eq_in(b, ctx), "{what}: {a} != {b}");
}

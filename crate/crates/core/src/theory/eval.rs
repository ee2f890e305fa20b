use crate::presentation::Presentation;
use crate::scalar::{CyclotomicNumber, ExactScalar};

use super::{AbelianTheory, TheoryError};

/// One group element (by index) per longitude, in circle order: handlebodies
/// in boundary order, handles in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorVector(pub Vec<usize>);

impl From<Vec<usize>> for ColorVector {
    fn from(v: Vec<usize>) -> Self {
        ColorVector(v)
    }
}

impl ColorVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The power of D in front of the Gauss sum is
/// `constant − (number of surgery circles) + per_handlebody·(number of handlebodies)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Normalization {
    pub constant: i64,
    pub per_handlebody: i64,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization {
            constant: -1,
            per_handlebody: 0,
        }
    }
}

/// Multiplies θ(element) by ζ_M^shift on surgery circles only. Used to build
/// corrupted oracles for the axiom harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhaseTwist {
    pub element: usize,
    pub shift: i64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EvalOptions {
    pub normalization: Normalization,
    pub twist: Option<PhaseTwist>,
}

impl AbelianTheory {
    /// The Gauss-sum functional with the frozen normalization.
    pub fn evaluate(&self, p: &Presentation, colors: &ColorVector) -> Result<ExactScalar, TheoryError> {
        self.evaluate_with(p, colors, &EvalOptions::default())
    }

    /// D^α · Σ_{c ∈ Aⁿ} exp 2πi [Σ fr·q + Σ_{pairs} lk·b] over surgery colors c
    /// with the longitudes colored by `colors`.
    pub fn evaluate_with(
        &self,
        p: &Presentation,
        colors: &ColorVector,
        opts: &EvalOptions,
    ) -> Result<ExactScalar, TheoryError> {
        let nl = p.longitude_count();
        if colors.len() != nl {
            return Err(TheoryError::ColorLength {
                expected: nl,
                got: colors.len(),
            });
        }
        if let Some(&bad) = colors.0.iter().find(|&&a| a >= self.size) {
            return Err(TheoryError::ColorOutOfRange(bad));
        }
        let m = self.modulus as i64;
        let n_size = self.size;
        let lk = p.linking_matrix();
        let a = colors.as_slice();

        // contribution of the longitudes among themselves
        let mut fixed = 0i64;
        for l in 0..nl {
            fixed += (lk[l][l].rem_euclid(m) * self.q(a[l]) as i64) % m;
            for l2 in l + 1..nl {
                fixed += (lk[l][l2].rem_euclid(m) * self.b(a[l], a[l2]) as i64) % m;
            }
        }

        let surgery: Vec<usize> = p.surgery_indices().collect();
        let n = surgery.len();
        let twist = |x: usize| match opts.twist {
            Some(t) if t.element == x => t.shift,
            _ => 0,
        };
        // lin[k][x]: terms of circle k that depend only on its own color
        let lin: Vec<Vec<i64>> = surgery
            .iter()
            .map(|&s| {
                let fr = lk[s][s].rem_euclid(m);
                (0..n_size)
                    .map(|x| {
                        let mut v = (fr * self.q(x) as i64 + twist(x) * lk[s][s]).rem_euclid(m);
                        for l in 0..nl {
                            v += (lk[s][l].rem_euclid(m) * self.b(x, a[l]) as i64) % m;
                        }
                        v % m
                    })
                    .collect()
            })
            .collect();
        let coupling: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| lk[surgery[i]][surgery[j]].rem_euclid(m)).collect())
            .collect();

        let mut counts = vec![0i64; m as usize];
        let mut chosen = vec![0usize; n];
        self.accumulate(0, 0, &lin, &coupling, &mut chosen, &mut counts);
        let sum = CyclotomicNumber::from_counts(m as usize, &counts).mul_root(fixed % m);

        let nb = opts.normalization;
        let dpow = nb.constant - n as i64 + nb.per_handlebody * p.handlebodies().len() as i64;
        Ok(ExactScalar::new(sum, dpow))
    }

    fn accumulate(
        &self,
        k: usize,
        partial: i64,
        lin: &[Vec<i64>],
        coupling: &[Vec<i64>],
        chosen: &mut [usize],
        counts: &mut [i64],
    ) {
        let m = self.modulus as i64;
        if k == lin.len() {
            counts[partial as usize] += 1;
            return;
        }
        for x in 0..self.size {
            let row = self.b_row(x);
            let mut v = partial + lin[k][x];
            for i in 0..k {
                v += coupling[i][k] * row[chosen[i]] as i64 % m;
            }
            chosen[k] = x;
            self.accumulate(k + 1, v % m, lin, coupling, chosen, counts);
        }
    }
}

//! Abelian modular data: a finite abelian group with a nondegenerate
//! quadratic form, and the Gauss-sum functional on surgery presentations.

mod builtin;
mod config;
mod eval;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{CyclotomicNumber, DSquared, ExactScalar};

pub use builtin::{builtin, builtin_names};
pub use config::{parse_theory, resolve_theory};
pub use eval::{ColorVector, EvalOptions, Normalization, PhaseTwist};

/// Largest supported group order; the braiding table is |A|² entries.
pub const MAX_GROUP_ORDER: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("quadratic law violated: {0}")]
    QuadraticLaw(String),
    #[error("nondegeneracy violated: {0}")]
    Degenerate(String),
    #[error("unsupported group: {0}")]
    Group(String),
    #[error("expected {expected} colors, got {got}")]
    ColorLength { expected: usize, got: usize },
    #[error("color {0} is not an element of the group")]
    ColorOutOfRange(usize),
    #[error("cannot read theory `{0}`: {1}")]
    Io(String, String),
}

/// A = Z_{n₁} × … × Z_{n_r} with quadratic form q: A → Q/Z.
///
/// q is stored as integers modulo `modulus` M (the lcm of all denominators),
/// so θ(a) = ζ_M^{q(a)}. Elements are indexed in mixed radix, first factor
/// most significant.
#[derive(Debug, Clone)]
pub struct AbelianTheory {
    name: String,
    orders: Vec<u64>,
    generators: Vec<String>,
    q_gen: Vec<Rational64>,
    b_gen: Vec<Vec<Rational64>>,
    modulus: u64,
    size: usize,
    q_table: Vec<u64>,
    b_table: Vec<u32>,
    add_table: Vec<u32>,
    neg_table: Vec<u32>,
}

fn frac_mod1(r: Rational64) -> Rational64 {
    r - r.floor()
}

impl AbelianTheory {
    /// Builds a theory from q on generators and the polarization
    /// b(eᵢ, eⱼ) = q(eᵢ + eⱼ) − q(eᵢ) − q(eⱼ) for i ≠ j (diagonal ignored).
    pub fn new(
        name: &str,
        orders: Vec<u64>,
        generators: Vec<String>,
        q_gen: Vec<Rational64>,
        b_gen: Vec<Vec<Rational64>>,
    ) -> Result<Self, TheoryError> {
        let r = orders.len();
        if generators.len() != r || q_gen.len() != r || b_gen.len() != r || b_gen.iter().any(|row| row.len() != r) {
            return Err(TheoryError::Group(
                "generator data does not match the number of factors".into(),
            ));
        }
        if orders.contains(&0) {
            return Err(TheoryError::Group("cyclic orders must be positive".into()));
        }
        let size = orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .unwrap_or(u64::MAX);
        if size > MAX_GROUP_ORDER {
            return Err(TheoryError::Group(format!("|A| = {size} exceeds {MAX_GROUP_ORDER}")));
        }
        let q_gen: Vec<Rational64> = q_gen.into_iter().map(frac_mod1).collect();
        let mut b = vec![vec![Rational64::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    if frac_mod1(b_gen[i][j]) != frac_mod1(b_gen[j][i]) {
                        return Err(TheoryError::QuadraticLaw(format!(
                            "b({}, {}) is not symmetric",
                            generators[i], generators[j]
                        )));
                    }
                    b[i][j] = frac_mod1(b_gen[i][j]);
                }
            }
        }
        let mut modulus = 1i64;
        for v in q_gen.iter().chain(b.iter().flatten()) {
            modulus = modulus.lcm(v.denom());
        }

        // well-definedness on A: q(a + nᵢeᵢ) = q(a) for all a
        for i in 0..r {
            let n = orders[i] as i64;
            let qi = q_gen[i];
            let lin = frac_mod1(qi * Rational64::from(2 * n));
            let quad = frac_mod1(qi * Rational64::from(n * n));
            if !lin.is_zero() || !quad.is_zero() {
                return Err(TheoryError::QuadraticLaw(format!(
                    "q({}) = {} is not compatible with order {}",
                    generators[i], qi, n
                )));
            }
            for j in 0..r {
                if i != j && !frac_mod1(b[i][j] * Rational64::from(n)).is_zero() {
                    return Err(TheoryError::QuadraticLaw(format!(
                        "b({}, {}) = {} is not compatible with order {}",
                        generators[i], generators[j], b[i][j], n
                    )));
                }
            }
        }

        let size = size as usize;
        let m = modulus;
        let units = |v: Rational64| -> i64 { (v * Rational64::from(m)).to_integer() };
        let qu: Vec<i64> = q_gen.iter().map(|&v| units(v)).collect();
        let bu: Vec<Vec<i64>> = b.iter().map(|row| row.iter().map(|&v| units(v)).collect()).collect();
        let mut theory = AbelianTheory {
            name: name.to_string(),
            orders,
            generators,
            q_gen,
            b_gen: b,
            modulus: m as u64,
            size,
            q_table: Vec::with_capacity(size),
            b_table: Vec::new(),
            add_table: Vec::new(),
            neg_table: Vec::new(),
        };
        for a in 0..size {
            let k: Vec<i128> = theory.element(a).iter().map(|&x| x as i128).collect();
            let m = m as i128;
            let mut v = 0i128;
            for i in 0..r {
                v += k[i] * k[i] % m * qu[i] as i128 % m;
                for j in i + 1..r {
                    v += k[i] * k[j] % m * bu[i][j] as i128 % m;
                }
            }
            theory.q_table.push(v.rem_euclid(m) as u64);
        }
        theory.add_table = (0..size * size)
            .map(|ac| theory.add_slow(ac / size, ac % size) as u32)
            .collect();
        theory.neg_table = (0..size).map(|a| theory.neg_slow(a) as u32).collect();
        theory.b_table = (0..size * size)
            .map(|ac| {
                let (a, c) = (ac / size, ac % size);
                let s = theory.add_table[ac] as usize;
                let v = theory.q_table[s] as i64 - theory.q_table[a] as i64 - theory.q_table[c] as i64;
                v.rem_euclid(m) as u32
            })
            .collect();

        for a in 1..size {
            if (0..size).all(|c| theory.b(a, c) == 0) {
                return Err(TheoryError::Degenerate(format!(
                    "b({}, ·) vanishes identically",
                    theory.element_name(a)
                )));
            }
        }
        Ok(theory)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// q on the generators, in [0, 1).
    pub fn q_generators(&self) -> &[Rational64] {
        &self.q_gen
    }

    /// b(eᵢ, eⱼ) for i ≠ j, in [0, 1).
    pub fn b_generators(&self) -> &[Vec<Rational64>] {
        &self.b_gen
    }

    /// N = |A|.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn d_squared(&self) -> DSquared {
        DSquared(self.size as u64)
    }

    /// The root order M: q takes values in (1/M)Z/Z.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index as u64) % n;
            index /= n as usize;
        }
        out
    }

    pub fn index_of(&self, coords: &[i64]) -> usize {
        coords.iter().zip(&self.orders).fold(0usize, |acc, (&k, &n)| {
            acc * n as usize + k.rem_euclid(n as i64) as usize
        })
    }

    /// Human-readable element, e.g. `e+m`, `2*g1` or `0`.
    pub fn element_name(&self, index: usize) -> String {
        let parts: Vec<String> = self
            .element(index)
            .iter()
            .zip(&self.generators)
            .filter(|(&k, _)| k != 0)
            .map(|(&k, g)| if k == 1 { g.clone() } else { format!("{k}*{g}") })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn add_slow(&self, a: usize, c: usize) -> usize {
        let (x, y) = (self.element(a), self.element(c));
        let sum: Vec<i64> = x.iter().zip(&y).map(|(&u, &v)| (u + v) as i64).collect();
        self.index_of(&sum)
    }

    fn neg_slow(&self, a: usize) -> usize {
        let neg: Vec<i64> = self.element(a).iter().map(|&u| -(u as i64)).collect();
        self.index_of(&neg)
    }

    pub fn add(&self, a: usize, c: usize) -> usize {
        self.add_table[a * self.size + c] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg_table[a] as usize
    }

    /// q(a)·M mod M.
    pub fn q(&self, a: usize) -> u64 {
        self.q_table[a]
    }

    /// b(a, c)·M mod M.
    pub fn b(&self, a: usize, c: usize) -> u64 {
        self.b_table[a * self.size + c] as u64
    }

    pub(crate) fn b_row(&self, a: usize) -> &[u32] {
        &self.b_table[a * self.size..(a + 1) * self.size]
    }

    /// θ(a) = e^{2πi q(a)}.
    pub fn theta(&self, a: usize) -> ExactScalar {
        ExactScalar::root(self.q(a) as i64, self.modulus)
    }

    /// e^{2πi b(a, c)}.
    pub fn braid(&self, a: usize, c: usize) -> ExactScalar {
        ExactScalar::root(self.b(a, c) as i64, self.modulus)
    }

    /// γ = D⁻¹ Σ_a θ(a).
    pub fn gauss_milgram(&self) -> ExactScalar {
        let mut counts = vec![0i64; self.modulus as usize];
        for a in 0..self.size {
            counts[self.q(a) as usize] += 1;
        }
        ExactScalar::new(CyclotomicNumber::from_counts(self.modulus as usize, &counts), -1)
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }
}

impl fmt::Display for AbelianTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{} (A = {}, |A| = {})", self.name, group.join("×"), self.size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DSquared;

    #[test]
    fn semion_basics() {
        let t = builtin("semion").unwrap();
        assert_eq!(t.theta(0), ExactScalar::one());
        assert_eq!(t.theta(1), ExactScalar::root(1, 4));
        assert_eq!(t.braid(1, 1), ExactScalar::from_integer(-1));
        let gamma = t.gauss_milgram();
        assert!(gamma.eq_in(&ExactScalar::root(1, 8), DSquared(2)));
    }

    #[test]
    fn toric_code() {
        let t = builtin("toric-code").unwrap();
        let em = t.index_of(&[1, 1]);
        assert_eq!(t.theta(em), ExactScalar::from_integer(-1));
        assert!(t.gauss_milgram().eq_in(&ExactScalar::one(), t.d_squared()));
        assert_eq!(t.element_name(em), "e+m");
    }

    #[test]
    fn quadratic_law_and_degeneracy() {
        let r = |n, d| Rational64::new(n, d);
        let bad = AbelianTheory::new("x", vec![2], vec!["a".into()], vec![r(1, 3)], vec![vec![r(0, 1)]]);
        assert!(matches!(bad, Err(TheoryError::QuadraticLaw(_))));
        let deg = AbelianTheory::new("x", vec![2], vec!["a".into()], vec![r(1, 2)], vec![vec![r(0, 1)]]);
        assert!(matches!(deg, Err(TheoryError::Degenerate(_))));
        let deg2 = AbelianTheory::new(
            "x",
            vec![2, 2],
            vec!["e".into(), "m".into()],
            vec![r(1, 4), r(0, 1)],
            vec![vec![r(0, 1); 2]; 2],
        );
        assert!(matches!(deg2, Err(TheoryError::Degenerate(_))));
    }

    #[test]
    fn q_is_quadratic_on_tables() {
        for name in builtin_names() {
            let t = builtin(name).unwrap();
            let m = t.modulus();
            for a in 0..t.size() {
                assert_eq!(t.q(t.neg(a)), t.q(a));
                let mut ka = 0;
                for k in 0..5u64 {
                    assert_eq!(t.q(ka), k * k * t.q(a) % m);
                    ka = t.add(ka, a);
                }
                for c in 0..t.size() {
                    for d in 0..t.size() {
                        assert_eq!(t.b(a, t.add(c, d)), (t.b(a, c) + t.b(a, d)) % m);
                    }
                }
            }
        }
    }
}

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of the cyclotomic field Q(ζₙ), stored as Σ cₖ ζₙᵏ.
///
/// The coefficient vector always has length `order`. It is kept reduced
/// modulo the n-th cyclotomic polynomial Φₙ, so only the first φ(n)
/// entries can be nonzero and two values of the same order are equal
/// exactly when their coefficient vectors are.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: usize,
    coeffs: Vec<BigRational>,
}

fn phi_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; n + 1];
    poly[0] = -1;
    poly[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = divide_monic(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    phi_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, i.e. the degree of Φₙ.
pub fn totient(n: usize) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn reduce_in_place(order: usize, coeffs: &mut [BigRational]) {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    for top in (deg..order).rev() {
        if coeffs[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[top], BigRational::zero());
        let base = top - deg;
        for (k, &pk) in phi.iter().enumerate().take(deg) {
            if pk != 0 {
                coeffs[base + k] -= &c * BigRational::from_integer(BigInt::from(pk));
            }
        }
    }
}

impl CyclotomicNumber {
    fn from_raw(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), order);
        reduce_in_place(order, &mut coeffs);
        CyclotomicNumber { order, coeffs }
    }

    /// Builds Σ coeffs[k]·ζₙᵏ; any length is accepted and folded mod n.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut folded = vec![BigRational::zero(); order];
        for (k, c) in coeffs.into_iter().enumerate() {
            folded[k % order] += c;
        }
        Self::from_raw(order, folded)
    }

    /// Σ counts[k]·ζₙᵏ for integer counts (the shape of every Gauss sum).
    pub fn from_counts(order: usize, counts: &[i64]) -> Self {
        let mut folded = vec![BigRational::zero(); order];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                folded[k % order] += BigRational::from_integer(BigInt::from(c));
            }
        }
        Self::from_raw(order, folded)
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: BigRational) -> Self {
        CyclotomicNumber {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// e^{2πi·numerator/denominator} as an element of order `denominator`.
    pub fn root(numerator: i64, denominator: u64) -> Self {
        assert!(denominator >= 1, "root of unity with zero denominator");
        let n = denominator as usize;
        let k = numerator.rem_euclid(denominator as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[k] = BigRational::one();
        Self::from_raw(n, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(ζ_L); `order` must divide `target`.
    pub fn lift(&self, target: usize) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "lift target must be a multiple of the order"
        );
        if target == self.order {
            return self.clone();
        }
        let step = target / self.order;
        let mut coeffs = vec![BigRational::zero(); target];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * step] = c.clone();
            }
        }
        Self::from_raw(target, coeffs)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = self.aligned(other);
        let n = a.order;
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[(i + j) % n] += x * y;
                }
            }
        }
        Self::from_raw(n, out)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplies by ζₙᵏ where n is this value's order.
    pub fn mul_root(&self, k: i64) -> Self {
        let n = self.order;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(i + shift) % n] = c.clone();
            }
        }
        Self::from_raw(n, out)
    }

    /// Complex conjugation: ζᵏ ↦ ζ⁻ᵏ.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[(n - k) % n] += c;
            }
        }
        Self::from_raw(n, out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φₙ.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.order;
        let phi: Vec<BigRational> = cyclotomic_polynomial(n)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let mut r0 = phi;
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // Φₙ is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let coeffs: Vec<BigRational> = s0.iter().map(|c| c / &g).collect();
        Some(Self::from_coeffs(n, coeffs))
    }

    /// Floating-point value (re, im); display and test oracles only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = ratio_to_f64(c);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

fn trimmed(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    if num.len() < den.len() {
        return (Vec::new(), trimmed(rem));
    }
    let lead = den.last().expect("division by zero polynomial");
    let dd = den.len() - 1;
    let mut quot = vec![BigRational::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / lead;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    (trimmed(quot), trimmed(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trimmed(out)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.order)?;
                    } else {
                        write!(f, "z{}^{k}", self.order)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(24), 8);
    }

    #[test]
    fn roots() {
        assert_eq!(CyclotomicNumber::root(0, 1), CyclotomicNumber::one());
        let i = CyclotomicNumber::root(1, 4);
        assert_eq!(i.coeffs()[1], BigRational::one());
        assert_eq!(i.mul(&i), CyclotomicNumber::root(1, 2));
        assert_eq!(CyclotomicNumber::root(1, 2), CyclotomicNumber::from_integer(-1));
        assert_eq!(CyclotomicNumber::root(-3, 4), i);
    }

    #[test]
    fn equality_across_orders() {
        assert_eq!(CyclotomicNumber::root(2, 8), CyclotomicNumber::root(1, 4));
        assert_ne!(CyclotomicNumber::root(1, 8), CyclotomicNumber::root(1, 4));
        // ζ3 + ζ3² = -1
        let s = CyclotomicNumber::root(1, 3).add(&CyclotomicNumber::root(2, 3));
        assert_eq!(s, CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn inverse_matches_complex() {
        let x = CyclotomicNumber::from_counts(8, &[1, 2, 0, -1, 0, 0, 3, 0]);
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), CyclotomicNumber::one());
        let (a, b) = x.to_complex();
        let m = a * a + b * b;
        assert!(close(y.to_complex(), (a / m, -b / m)));
        assert!(CyclotomicNumber::zero().inv().is_none());
    }

    #[test]
    fn conj_of_root() {
        let z = CyclotomicNumber::root(3, 7);
        assert_eq!(z.conj(), CyclotomicNumber::root(4, 7));
        assert_eq!(z.mul(&z.conj()), CyclotomicNumber::one());
    }

    #[test]
    fn display() {
        assert_eq!(CyclotomicNumber::zero().to_string(), "0");
        let x = CyclotomicNumber::from_counts(4, &[1, -2]);
        assert_eq!(x.to_string(), "1 - 2*z4");
    }
}

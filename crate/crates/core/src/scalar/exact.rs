use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use super::CyclotomicNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("adding scalars with D-powers {0} and {1} needs the theory's D^2")]
    ContextRequired(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
}

/// The value D² = |A| that relates powers of the total quantum dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DSquared(pub u64);

impl DSquared {
    /// D = √N as a cyclotomic number, from quadratic Gauss sums: √2 = ζ₈ + ζ₈⁻¹
    /// and, for an odd prime p, Σ (a/p) ζ_pᵃ equals √p or i√p.
    pub fn sqrt_cyclotomic(self) -> CyclotomicNumber {
        let mut n = self.0;
        assert!(n > 0, "D² must be positive");
        let mut square_part = 1i64;
        let mut acc = CyclotomicNumber::one();
        let mut p = 2u64;
        while n > 1 {
            if p * p > n {
                p = n;
            }
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            square_part *= (p as i64).pow(e / 2);
            if e % 2 == 1 {
                acc = acc.mul(&sqrt_prime(p));
            }
            p += 1;
        }
        acc.mul(&CyclotomicNumber::from_integer(square_part))
    }

    fn pow(self, k: i64) -> BigRational {
        let base = BigRational::from_integer(BigInt::from(self.0));
        if k >= 0 {
            num_traits::pow(base, k as usize)
        } else {
            num_traits::pow(base.recip(), (-k) as usize)
        }
    }
}

fn sqrt_prime(p: u64) -> CyclotomicNumber {
    if p == 2 {
        return CyclotomicNumber::root(1, 8).add(&CyclotomicNumber::root(-1, 8));
    }
    let pu = p as usize;
    let mut counts = vec![0i64; pu];
    for a in 1..p {
        counts[((a * a) % p) as usize] += 1;
    }
    // Legendre symbol: +1 on the nonzero squares, -1 elsewhere
    let legendre: Vec<i64> = (0..pu)
        .map(|a| {
            if a == 0 {
                0
            } else if counts[a] > 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let gauss = CyclotomicNumber::from_counts(pu, &legendre);
    if p % 4 == 1 {
        gauss
    } else {
        gauss.mul(&CyclotomicNumber::root(-1, 4))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Conj,
}

/// A cyclotomic number times an integer power of D.
///
/// The derived `PartialEq` is structural. Two scalars whose D-powers differ
/// by an even number may still be equal as numbers; use [`ExactScalar::eq_in`]
/// with the theory's D² for value equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScalar {
    value: CyclotomicNumber,
    dpow: i64,
}

impl ExactScalar {
    pub fn new(value: CyclotomicNumber, dpow: i64) -> Self {
        if value.is_zero() {
            return Self::zero();
        }
        ExactScalar { value, dpow }
    }

    pub fn zero() -> Self {
        ExactScalar {
            value: CyclotomicNumber::zero(),
            dpow: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_cyclotomic(CyclotomicNumber::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(CyclotomicNumber::from_integer(n), 0)
    }

    pub fn from_cyclotomic(value: CyclotomicNumber) -> Self {
        Self::new(value, 0)
    }

    /// Dᵏ.
    pub fn d_power(k: i64) -> Self {
        ExactScalar {
            value: CyclotomicNumber::one(),
            dpow: k,
        }
    }

    pub fn root(numerator: i64, denominator: u64) -> Self {
        Self::from_cyclotomic(CyclotomicNumber::root(numerator, denominator))
    }

    pub fn value(&self) -> &CyclotomicNumber {
        &self.value
    }

    pub fn dpow(&self) -> i64 {
        self.dpow
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.value.mul(&other.value), self.dpow + other.dpow)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.value.neg(), self.dpow)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.value.conj(), self.dpow)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let v = self.value.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(Self::new(v, -self.dpow))
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Sum of two scalars. Equal D-powers need no context; otherwise the
    /// powers are aligned with D² = |A|, which requires equal parity.
    pub fn add(&self, other: &Self, ctx: Option<DSquared>) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.dpow == other.dpow {
            return Ok(Self::new(self.value.add(&other.value), self.dpow));
        }
        let ctx = ctx.ok_or(ScalarError::ContextRequired(self.dpow, other.dpow))?;
        if (self.dpow - other.dpow) % 2 != 0 {
            return Ok(Self::new(self.folded(ctx).add(&other.folded(ctx)), 0));
        }
        let (lo, hi) = if self.dpow < other.dpow {
            (self, other)
        } else {
            (other, self)
        };
        let lifted = hi.value.scale(&ctx.pow((hi.dpow - lo.dpow) / 2));
        Ok(Self::new(lo.value.add(&lifted), lo.dpow))
    }

    pub fn sub(&self, other: &Self, ctx: Option<DSquared>) -> Result<Self, ScalarError> {
        self.add(&other.neg(), ctx)
    }

    /// One binary operation by name; `Conj` ignores `b`.
    pub fn arith(a: &Self, b: &Self, op: ArithOp, ctx: Option<DSquared>) -> Result<Self, ScalarError> {
        match op {
            ArithOp::Add => a.add(b, ctx),
            ArithOp::Mul => Ok(a.mul(b)),
            ArithOp::Conj => Ok(a.conj()),
        }
    }

    /// Rewrites the value so that the D-power is 0 or 1.
    pub fn normalized(&self, ctx: DSquared) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let target = self.dpow.rem_euclid(2);
        let scaled = self.value.scale(&ctx.pow((self.dpow - target) / 2));
        Self::new(scaled, target)
    }

    /// The display form: D-power 0 or −1, so Z(S³) reads D^-1.
    pub fn reduced(&self, ctx: DSquared) -> Self {
        let target = -self.dpow.rem_euclid(2);
        self.with_dpow(ctx, target).expect("same parity")
    }

    /// Rewrites the value with the given D-power of the same parity.
    pub fn with_dpow(&self, ctx: DSquared, dpow: i64) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if (self.dpow - dpow) % 2 != 0 {
            return None;
        }
        Some(ExactScalar {
            value: self.value.scale(&ctx.pow((self.dpow - dpow) / 2)),
            dpow,
        })
    }

    /// The value as a plain cyclotomic number, with D written out as a
    /// Gauss sum (this may raise the order).
    pub fn folded(&self, ctx: DSquared) -> CyclotomicNumber {
        let n = self.normalized(ctx);
        if n.dpow == 0 {
            n.value
        } else {
            n.value.mul(&ctx.sqrt_cyclotomic())
        }
    }

    /// Value equality given D² = |A|.
    pub fn eq_in(&self, other: &Self, ctx: DSquared) -> bool {
        let (a, b) = (self.normalized(ctx), other.normalized(ctx));
        if a.dpow == b.dpow {
            a == b
        } else {
            a.folded(ctx) == b.folded(ctx)
        }
    }

    pub fn to_complex(&self, ctx: DSquared) -> (f64, f64) {
        let (re, im) = self.value.to_complex();
        let d = (ctx.0 as f64).sqrt().powi(self.dpow as i32);
        (re * d, im * d)
    }

    /// `re+imi` rounded for display.
    pub fn approx_string(&self, ctx: DSquared) -> String {
        let (re, im) = self.to_complex(ctx);
        let clean = |x: f64| if x.abs() < 5e-11 { 0.0 } else { x };
        format!("{:.10}{:+.10}i", clean(re), clean(im))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scalar serialization cannot fail")
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.value.coeffs().iter().map(ratio_string).collect();
        let mut s = serializer.serialize_struct("ExactScalar", 3)?;
        s.serialize_field("order", &self.value.order())?;
        s.serialize_field("coeffs", &coeffs)?;
        s.serialize_field("dpow", &self.dpow)?;
        s.end()
    }
}

fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.dpow {
            0 => return write!(f, "{}", self.value),
            1 => "D".to_string(),
            k => format!("D^{k}"),
        };
        if self.value == CyclotomicNumber::one() {
            write!(f, "{d}")
        } else if self.value == CyclotomicNumber::from_integer(-1) {
            write!(f, "-{d}")
        } else if self.value.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1 {
            write!(f, "{}*{d}", self.value)
        } else {
            write!(f, "({})*{d}", self.value)
        }
    }
}

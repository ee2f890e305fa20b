//! Exact arithmetic in Q(ζₙ)[D]: roots of unity, powers of D and the
//! Gauss-sum folding that makes √2 and ζ₈ comparable.

use framed_tqft::scalar::{CyclotomicNumber, DSquared, ExactScalar};
use framed_tqft::theory::builtin;

fn main() {
    let zeta8 = ExactScalar::root(1, 8);
    let i = ExactScalar::root(1, 4);
    println!("zeta8^2 = {}  (i = {i})", zeta8.mul(&zeta8));
    println!("zeta8^8 = {}", zeta8.pow(8).unwrap());

    // the cyclotomic polynomial kills 1 + ζ₃ + ζ₃²
    let s = CyclotomicNumber::one()
        .add(&CyclotomicNumber::root(1, 3))
        .add(&CyclotomicNumber::root(2, 3));
    println!("1 + z3 + z3^2 = {s}");

    // semion: γ = (1 + i)/D with D² = 2 is ζ₈
    let semion = builtin("semion").unwrap();
    let ctx = semion.d_squared();
    let gamma = semion.gauss_milgram();
    println!("semion gamma = {gamma}  (approx {})", gamma.approx_string(ctx));
    println!("gamma == zeta8: {}", gamma.eq_in(&zeta8, ctx));
    println!("gamma * conj(gamma) = {}", gamma.mul(&gamma.conj()).normalized(ctx));

    // D itself as a cyclotomic number: √3 = -i(ζ₃ - ζ₃²)
    let d3 = ExactScalar::d_power(1);
    println!("sqrt 3 = {}", d3.folded(DSquared(3)));
    let sum = d3.add(&ExactScalar::from_integer(1), Some(DSquared(3))).unwrap();
    println!("1 + sqrt 3 = {}  (approx {})", sum, sum.approx_string(DSquared(3)));
}

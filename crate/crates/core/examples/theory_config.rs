//! Theories from configuration text: the toric code written out by hand,
//! and a Z₅ theory with q(a) = 2a²/5.

use framed_tqft::presentation::parse;
use framed_tqft::theory::{parse_theory, ColorVector};

const TORIC: &str = "\
group 2 2
generators e m
q e 0
q m 0
q e+m 1/2
";

fn main() {
    let toric = parse_theory(TORIC, "toric").unwrap();
    println!("{toric}");
    for a in 0..toric.size() {
        println!("  theta({}) = {}", toric.element_name(a), toric.theta(a));
    }
    println!("  gamma = {}", toric.gauss_milgram());

    let z5 = parse_theory("group 5\nq 1 2/5\n", "z5").unwrap();
    let l21 = parse("surgery K framing 2\n").unwrap();
    let z = z5.evaluate(&l21, &ColorVector(vec![])).unwrap();
    println!("{z5}: Z(L(2,1)) = {z}  (approx {})", z.approx_string(z5.d_squared()));

    // q(2) must equal 4·q(1); the parser reports the offending line
    match parse_theory("group 3\nq 1 1/3\nq 2 2/3\n", "bad") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}

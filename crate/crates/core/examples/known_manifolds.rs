//! Invariants of small closed manifolds for every built-in theory, with the
//! signature-corrected value γ^(−σ)·Z alongside.

use framed_tqft::presentation::{parse, signature};
use framed_tqft::theory::{builtin, builtin_names, ColorVector};

const MANIFOLDS: &[(&str, &str)] = &[
    ("S3", ""),
    ("S1 x S2", "surgery K framing 0"),
    ("L(2,1)", "surgery K framing 2"),
    ("L(3,1)", "surgery K framing 3"),
    ("L(5,2)", "surgery A framing 2\nsurgery B framing 2\nlk A B 1"),
];

fn main() {
    for name in builtin_names() {
        let t = builtin(name).unwrap();
        let ctx = t.d_squared();
        println!("{t}");
        for (label, text) in MANIFOLDS {
            let p = parse(text).unwrap();
            let z = t.evaluate(&p, &ColorVector(vec![])).unwrap();
            let corrected = t.gauss_milgram().pow(-signature(&p)).unwrap().mul(&z);
            println!(
                "  {label:8} Z = {:28} corrected = {}",
                z.to_string(),
                corrected.approx_string(ctx)
            );
        }
    }
}

//! The known-manifold golden file and its scalar encoding.

use framed_tqft::presentation::{parse, Presentation};
use framed_tqft::scalar::{CyclotomicNumber, ExactScalar};
use num_bigint::BigInt;
use num_rational::BigRational;

pub const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/known_manifolds.txt");

/// (name, presentation with `;` for newlines)
pub const MANIFOLDS: &[(&str, &str)] = &[
    ("S3", ""),
    ("S1xS2", "surgery K framing 0"),
    ("L(1,1)", "surgery K framing 1"),
    ("L(1,-1)", "surgery K framing -1"),
    ("L(2,1)", "surgery K framing 2"),
    ("L(3,1)", "surgery K framing 3"),
    ("L(4,1)", "surgery K framing 4"),
    ("L(5,2)", "surgery A framing 2;surgery B framing 2;lk A B 1"),
    ("hopf-S3", "surgery A framing 0;surgery B framing 0;lk A B 1"),
    ("S1xS2#S1xS2", "surgery A framing 0;surgery B framing 0"),
    ("L(3,1)#L(2,1)", "surgery A framing 3;surgery B framing 2"),
];

pub fn manifold(text: &str) -> Presentation {
    parse(&text.replace(';', "\n")).unwrap()
}

pub fn scalar_from_json(v: &serde_json::Value) -> ExactScalar {
    let order = v["order"].as_u64().unwrap() as usize;
    let coeffs = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let s = c.as_str().unwrap();
            let (n, d) = s.split_once('/').unwrap_or((s, "1"));
            BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
        })
        .collect();
    ExactScalar::new(
        CyclotomicNumber::from_coeffs(order, coeffs),
        v["dpow"].as_i64().unwrap(),
    )
}

pub fn golden_lines() -> Vec<(String, String, serde_json::Value)> {
    std::fs::read_to_string(GOLDEN)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut f = l.splitn(3, '\t');
            let (t, m, v) = (f.next().unwrap(), f.next().unwrap(), f.next().unwrap());
            (t.to_string(), m.to_string(), serde_json::from_str(v).unwrap())
        })
        .collect()
}

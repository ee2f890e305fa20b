use num_rational::Rational64;

use super::AbelianTheory;

const NAMES: [&str; 5] = ["semion", "semion-bar", "toric-code", "z3", "z4"];

/// Names accepted by [`builtin`].
pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// The built-in theories: semion (Z₂, q = 1/4), its conjugate (q = −1/4),
/// the toric code (Z₂², q(e) = q(m) = 0, b(e, m) = 1/2), Z₃ with q(a) = a²/3
/// and Z₄ with q(a) = a²/8.
pub fn builtin(name: &str) -> Option<AbelianTheory> {
    let r = Rational64::new;
    let cyclic =
        |n: u64, q: Rational64| AbelianTheory::new(name, vec![n], vec!["a".into()], vec![q], vec![vec![r(0, 1)]]);
    let theory = match name {
        "semion" => cyclic(2, r(1, 4)),
        "semion-bar" | "conjugate-semion" => cyclic(2, r(-1, 4)),
        "z3" => cyclic(3, r(1, 3)),
        "z4" => cyclic(4, r(1, 8)),
        "toric-code" => AbelianTheory::new(
            name,
            vec![2, 2],
            vec!["e".into(), "m".into()],
            vec![r(0, 1), r(0, 1)],
            vec![vec![r(0, 1), r(1, 2)], vec![r(1, 2), r(0, 1)]],
        ),
        _ => return None,
    };
    Some(theory.expect("built-in theories are valid"))
}

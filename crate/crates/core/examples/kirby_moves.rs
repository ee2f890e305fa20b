//! A move script (blow-up, then slides) on a two-circle diagram, and the
//! anomaly: a +1 blow-up multiplies the invariant by γ.

use framed_tqft::presentation::{first_homology, parse, parse_script, render, signature};
use framed_tqft::theory::{builtin, ColorVector};

fn main() {
    let p = parse("surgery A framing 2\nsurgery B framing -3\nlk A B 1\n").unwrap();
    let script = parse_script("blowup +1\nslide A over E1 -1\nslide B over A +1\n").unwrap();
    let q = script.apply(&p).unwrap();
    println!("before:\n{}", render(&p));
    println!("after:\n{}", render(&q));
    println!("signature {} -> {}", signature(&p), signature(&q));
    println!("H1 {:?} -> {:?}", first_homology(&p), first_homology(&q));

    for name in ["semion", "z3", "z4"] {
        let t = builtin(name).unwrap();
        let ctx = t.d_squared();
        let none = ColorVector(vec![]);
        let before = t.evaluate(&p, &none).unwrap();
        let up = t.evaluate(&p.blow_up(1).unwrap(), &none).unwrap();
        let ratio_ok = up.eq_in(&t.gauss_milgram().mul(&before), ctx);
        println!(
            "{name}: Z = {}  blow-up ratio is gamma: {ratio_ok}",
            before.approx_string(ctx)
        );
    }
}

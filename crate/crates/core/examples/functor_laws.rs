//! Extending minimal data to all cobordisms: the identity, a zig-zag, and
//! the matrix of a random cobordism, followed by the functor-law report.

use framed_tqft::engine::{extend, functoriality_check, minimal_data, Cobordism, HarnessConfig};
use framed_tqft::theory::builtin;

fn main() {
    let t = builtin("semion").unwrap();
    let md = minimal_data(&t);

    println!("pairing, genus 1:\n{}", md.pairing(1).unwrap());
    println!("dual element, genus 1:\n{}", md.dual_element(1).unwrap().coeffs);

    let zig = Cobordism::identity(&[1]).union(&Cobordism::cup(1));
    let zag = Cobordism::cap(1).union(&Cobordism::identity(&[1]));
    let snake = zig.then(&zag).unwrap();
    println!("zig-zag, genus 1:\n{}", extend(&md, &snake).unwrap().matrix);

    let swap = Cobordism::symmetry(&[1], &[1]);
    println!("symmetry on Z(T2) x Z(T2):\n{}", extend(&md, &swap).unwrap().matrix);

    let report = functoriality_check(
        &md,
        &HarnessConfig {
            seed: 9,
            budget: 25,
            ..Default::default()
        },
    );
    println!("{}", report.summary());
}

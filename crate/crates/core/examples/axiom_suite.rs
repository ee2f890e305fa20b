//! The four axioms on the minimal data of each built-in theory, then on two
//! corrupted oracles: a twisted phase breaks Sewing, a missing D⁻¹ breaks
//! only Mending.

use framed_tqft::engine::{axiom_check, minimal_data, minimal_data_with, HarnessConfig};
use framed_tqft::theory::{builtin, builtin_names, EvalOptions, Normalization, PhaseTwist};

fn main() {
    let cfg = HarnessConfig {
        seed: 1,
        budget: 10,
        ..Default::default()
    };
    for name in builtin_names() {
        let t = builtin(name).unwrap();
        println!("== {name}\n{}", axiom_check(&minimal_data(&t), &cfg).summary());
    }
    // a twisted phase only shows up on circles colored by that element, so
    // the mutants get a larger budget
    let cfg = HarnessConfig { budget: 40, ..cfg };
    let t = builtin("z3").unwrap();
    let twisted = minimal_data_with(
        &t,
        EvalOptions {
            twist: Some(PhaseTwist { element: 1, shift: 1 }),
            ..Default::default()
        },
    );
    println!("== twisted z3\n{}", axiom_check(&twisted, &cfg).summary());
    let bare = minimal_data_with(
        &t,
        EvalOptions {
            normalization: Normalization {
                constant: 0,
                per_handlebody: 0,
            },
            twist: None,
        },
    );
    let report = axiom_check(&bare, &cfg);
    println!("== unnormalized z3\n{}", report.summary());
    let first = report.failures().next().map(|f| f.instance.clone());
    if let Some(instance) = first {
        println!("counterexample:\n{instance}");
    }
}

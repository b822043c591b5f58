//! Shared fixtures for the benchmark targets.

use twistcond_core::characters::UnitCharacter;
use twistcond_core::localfield::LocalFieldParams;
use twistcond_core::reps::{QuasiSquareIntegrable, Representation};

pub fn q5() -> LocalFieldParams {
    LocalFieldParams::new(5, 1).expect("5 is an odd prime")
}

pub fn q9() -> LocalFieldParams {
    LocalFieldParams::new(3, 2).expect("3 is an odd prime")
}

/// A two-component representation mixing a twist-minimal atom with an
/// interfering one.
pub fn mixed_representation() -> Representation {
    let field = q5();
    let mu = UnitCharacter::from_exponents(field, 2, &[0, 1]).expect("valid exponents");
    Representation::new(vec![
        QuasiSquareIntegrable::new(2, "st", 1, UnitCharacter::trivial(field), None)
            .expect("valid atom"),
        QuasiSquareIntegrable::new(1, "", 0, mu, None).expect("valid atom"),
    ])
    .expect("non-empty")
}

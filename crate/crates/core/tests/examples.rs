//! Runs every example at small sizes so they keep compiling and working.

#[path = "../examples/k_spectrum.rs"]
mod k_spectrum;
#[path = "../examples/gauss_jacobi.rs"]
mod gauss_jacobi;
#[path = "../examples/hyper_kloosterman.rs"]
mod hyper_kloosterman;
#[path = "../examples/moments.rs"]
mod moments;
#[path = "../examples/equidistribution.rs"]
mod equidistribution;
#[path = "../examples/l_values.rs"]
mod l_values;
#[path = "../examples/special_functions.rs"]
mod special_functions;
#[path = "../examples/identity_suite.rs"]
mod identity_suite;

#[test]
fn k_spectrum_runs() {
    k_spectrum::run(101).unwrap();
}

#[test]
fn gauss_jacobi_runs() {
    gauss_jacobi::run(31).unwrap();
}

#[test]
fn hyper_kloosterman_runs() {
    hyper_kloosterman::run(53).unwrap();
}

#[test]
fn moments_runs() {
    moments::run(211).unwrap();
}

#[test]
fn equidistribution_runs() {
    equidistribution::run(&[101, 211]).unwrap();
}

#[test]
fn l_values_runs() {
    l_values::run(101).unwrap();
}

#[test]
fn special_functions_runs() {
    special_functions::run().unwrap();
}

#[test]
fn identity_suite_runs() {
    identity_suite::run(11).unwrap();
}

#[test]
fn examples_reject_bad_moduli() {
    assert!(k_spectrum::run(9).is_err());
    assert!(moments::run(2).is_err());
}

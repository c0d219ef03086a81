use num_complex::Complex64;
use pentagonal_dgf::dgf::{d_mellin, d_series};
use pentagonal_dgf::zeros::{count_zeros, find_zeros, scan_value, RESIDUAL_LIMIT};
use pentagonal_dgf::Method;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn first_three_zeros() {
    let zeros = find_zeros(8.0, 1e-12).unwrap();
    let expected = [c(0.88271, 3.91652), c(0.56199, 6.01547), c(0.35935, 7.89946)];
    assert_eq!(zeros.len(), expected.len());
    for (z, e) in zeros.iter().zip(expected) {
        assert!((z.location - e).norm() < 2e-4, "{} vs {e}", z.location);
        assert!(z.winding_verified && z.converged);
        assert!(d_mellin(z.location, 1e-13).unwrap().value.norm() <= RESIDUAL_LIMIT);
        assert!(d_series(z.location, 1e-13).unwrap().value.norm() <= RESIDUAL_LIMIT);
    }
    let conj = zeros[0].location.conj();
    assert!(scan_value(conj).unwrap().norm() <= RESIDUAL_LIMIT);
}

#[test]
fn counts_are_method_independent() {
    let a = count_zeros((0.3, 1.5), (3.4, 6.5), Method::Mellin).unwrap();
    let b = count_zeros((0.3, 1.5), (3.4, 6.5), Method::Series).unwrap();
    assert_eq!((a, b), (2, 2));
}

#[test]
fn output_is_deterministic() {
    let a = find_zeros(4.5, 1e-12).unwrap();
    let b = find_zeros(4.5, 1e-12).unwrap();
    assert_eq!(a, b);
}

//! p = 2: the 4-real-dimensional Monte Carlo oracle against the block sum.

mod common;

use conformal_blocks::blocks::evaluate_small_z;
use conformal_blocks::oracle::{integrate_mc, IntegrandSpec};
use num_complex::Complex64;

#[test]
fn ip2_small_z_matches_block_sum() {
    let ps = common::p2_windowed_set();
    let z = Complex64::new(0.4, 0.3);
    let closed = evaluate_small_z(&ps, z, 1e-11).unwrap();
    let spec = IntegrandSpec::ip2(ps, z).unwrap();
    let est = integrate_mc(&spec, 4_000_000, 1).unwrap();
    let rel = (est.value - closed.value).norm() / closed.value.norm();
    eprintln!(
        "closed {} oracle {} rel {rel:.3e} reported err {:.3e}",
        closed.value, est.value, est.abs_error
    );
    assert!(
        rel < 3.0e-2,
        "p=2 MC vs closed: rel {rel:.3e} (err estimate {:.3e})",
        est.abs_error
    );
}

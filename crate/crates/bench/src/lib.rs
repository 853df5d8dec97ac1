//! Fixtures shared by the benchmarks.

use derham_core::{parse_polynomial, Hypersurface, Polynomial, RingContext};

pub fn polynomial(f: &str, vars: &[&str], weights: &[u32]) -> Polynomial {
    let ctx = RingContext::new(vars.iter().copied(), weights.to_vec()).expect("valid ring");
    parse_polynomial(f, &ctx).expect("valid polynomial")
}

pub fn hypersurface(f: &str, vars: &[&str], weights: &[u32]) -> Hypersurface {
    Hypersurface::new(polynomial(f, vars, weights)).expect("homogeneous")
}

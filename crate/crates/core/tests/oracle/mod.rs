//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use derham_core::linalg::{QVec, Subspace};
use derham_core::ring::rat;
use derham_core::{parse_polynomial, Hypersurface, LocalizedVector, Polynomial, RingContext};

pub struct Fixture {
    pub name: &'static str,
    pub f: &'static str,
    pub vars: &'static [&'static str],
    pub weights: &'static [u32],
}

pub const FIXTURES: [Fixture; 4] = [
    Fixture {
        name: "quadric",
        f: "x^2+y^2+z^2",
        vars: &["x", "y", "z"],
        weights: &[1, 1, 1],
    },
    Fixture {
        name: "cubic",
        f: "x^3+y^3+z^3",
        vars: &["x", "y", "z"],
        weights: &[1, 1, 1],
    },
    Fixture {
        name: "quartic",
        f: "x^4+y^4+z^4+w^4",
        vars: &["x", "y", "z", "w"],
        weights: &[1, 1, 1, 1],
    },
    Fixture {
        name: "weighted",
        f: "x^2+y^3+z^6",
        vars: &["x", "y", "z"],
        weights: &[3, 2, 1],
    },
];

impl Fixture {
    pub fn polynomial(&self) -> Polynomial {
        let ctx = RingContext::new(self.vars.iter().copied(), self.weights.to_vec()).unwrap();
        parse_polynomial(self.f, &ctx).unwrap()
    }

    pub fn hypersurface(&self) -> Hypersurface {
        Hypersurface::new(self.polynomial()).unwrap()
    }
}

/// Number of monomials of weighted degree `t`: coefficient of `t` in `∏ 1/(1 − s^{ω_i})`.
pub fn monomial_count(weights: &[u32], t: i64) -> usize {
    if t < 0 {
        return 0;
    }
    let t = t as usize;
    let mut ways = vec![0usize; t + 1];
    ways[0] = 1;
    for &w in weights {
        let w = w as usize;
        for s in w..=t {
            ways[s] += ways[s - w];
        }
    }
    ways[t]
}

/// Coefficients of `∏ (1 − s^{d−ω_i}) / (1 − s^{ω_i})` up to `bound`.
pub fn jacobian_series(d: i64, weights: &[u32], bound: usize) -> Vec<i64> {
    let mut num = vec![0i64; bound + 1];
    num[0] = 1;
    for &w in weights {
        let e = (d - w as i64) as usize;
        let mut next = num.clone();
        for s in e..=bound {
            next[s] -= num[s - e];
        }
        num = next;
        for s in w as usize..=bound {
            num[s] += num[s - w as usize];
        }
    }
    num
}

/// Pole order by counting how many powers of `f` divide every numerator,
/// with divisibility decided by linear membership in `f^k · R_{s−kd}`.
pub struct PoleOracle<'a> {
    h: &'a Hypersurface,
    spans: HashMap<(i64, u32), Subspace>,
}

impl<'a> PoleOracle<'a> {
    pub fn new(h: &'a Hypersurface) -> Self {
        PoleOracle {
            h,
            spans: HashMap::new(),
        }
    }

    fn divisible(&mut self, a: &Polynomial, k: u32) -> bool {
        if a.is_zero() || k == 0 {
            return true;
        }
        let ctx = self.h.ctx().clone();
        let s = a.weighted_degree().homogeneous().unwrap();
        let basis = ctx.monomial_basis(s);
        let fk = self.h.f().pow(k);
        let span = self.spans.entry((s, k)).or_insert_with(|| {
            let lower = ctx.monomial_basis(s - k as i64 * self.h.degree());
            let gens: Vec<QVec> = lower
                .monomials()
                .iter()
                .map(|m| fk.mul_term(m, &rat(1)).coordinates(&basis).unwrap())
                .collect();
            Subspace::from_vectors(basis.len(), &gens)
        });
        span.contains(&a.coordinates(&basis).unwrap())
    }

    /// `None` stands for `−∞`.
    pub fn pole_order(&mut self, v: &LocalizedVector) -> Option<u32> {
        if v.components().iter().all(Polynomial::is_zero) {
            return None;
        }
        let c = v.pole();
        let mut e = 0;
        while e < c && v.components().iter().all(|a| self.divisible(a, e + 1)) {
            e += 1;
        }
        Some(c - e)
    }
}

//! Seeded randomized checks over small fixtures, exposed as `derham selftest`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::derham::{derham_homology, theta, LocalizedVector, PoleCap, PoleOrder};
use crate::error::Result;
use crate::jacobian::Hypersurface;
use crate::koszul::{build_derham_differential, build_jacobian_differential};
use crate::parser::parse_polynomial;
use crate::ring::{rat, Rational, RingContext};
use crate::sampling::Sampler;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<SelftestCheck>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.cases == c.passed)
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    passed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.cases += 1;
        self.passed += ok as usize;
    }

    fn finish(self, name: &str) -> SelftestCheck {
        SelftestCheck {
            name: name.to_string(),
            cases: self.cases,
            passed: self.passed,
        }
    }
}

fn fixtures() -> Result<Vec<Hypersurface>> {
    let xyz = RingContext::standard(["x", "y", "z"])?;
    ["x^2+y^2+z^2", "x^3+y^3+z^3"]
        .iter()
        .map(|f| Hypersurface::new(parse_polynomial(f, &xyz)?))
        .collect()
}

/// Every clause of the pole-order calculus on one random pair.
pub fn pole_order_clauses(
    h: &Hypersurface,
    a: &LocalizedVector,
    b: &LocalizedVector,
    alpha: &Rational,
    beta: &Rational,
) -> Result<bool> {
    let la = a.pole_order(h);
    let lb = b.pole_order(h);
    let sum = a.add(h, b)?.pole_order(h);
    let max = la.max(lb);
    let mut ok = true;
    if la < lb {
        ok &= sum == lb;
    }
    if lb < la {
        ok &= sum == la;
    }
    if la == lb {
        ok &= sum <= lb;
    }
    ok &= sum <= max;
    let scaled = a.scale(alpha).pole_order(h);
    if *alpha != rat(0) {
        ok &= scaled == la;
    }
    ok &= scaled <= la;
    ok &= a.combine(h, alpha, b, beta)?.pole_order(h) <= max;
    Ok(ok)
}

pub fn run_selftest(seed: u64, cases: usize) -> Result<SelftestReport> {
    let mut s = Sampler::new(seed);
    let hs = fixtures()?;

    let mut complexes = Tally::default();
    let mut normal_forms = Tally::default();
    let mut clauses = Tally::default();
    let mut boundaries = Tally::default();
    let mut degrees = Tally::default();

    for _ in 0..cases {
        let h = &hs[s.rng().gen_range(0..hs.len())];
        let n = h.n();
        let p = s.rng().gen_range(2..=n);
        let pole = s.rng().gen_range(0..=2);
        let j = s.rng().gen_range(-h.omega() - 1..=1);
        let d1 = build_derham_differential(h, p, pole, j).matrix;
        let d0 = build_derham_differential(h, p - 1, pole + 1, j).matrix;
        let t = s.rng().gen_range(0..=(n as i64 + 1) * h.degree());
        let e1 = build_jacobian_differential(h, p, t).matrix;
        let e0 = build_jacobian_differential(h, p - 1, t).matrix;
        complexes.record(d0.mul(&d1).is_zero() && e0.mul(&e1).is_zero());

        let q = s.rng().gen_range(0..=n);
        let v = s.localized(h, q, -h.omega(), 3);
        let nf = v.normal_form(h);
        let same = v.with_pole(h, v.pole() + 1)?.normal_form(h);
        normal_forms.record(nf.is_normal_form(h) && nf.normal_form(h) == nf && same == nf);

        let a = s.localized(h, q, -h.omega(), 3);
        let b = s.localized(h, q, -h.omega(), 3);
        let alpha = if s.rng().gen_bool(0.1) {
            rat(0)
        } else {
            s.coefficient()
        };
        let beta = s.coefficient();
        clauses.record(pole_order_clauses(h, &a, &b, &alpha, &beta)?);
    }

    for h in &hs {
        let omega = h.omega();
        for p in 1..h.n() {
            let hom = derham_homology(h, p, -omega, PoleCap::Auto, None)?;
            for _ in 0..cases.div_ceil(4) {
                let pole = s.rng().gen_range(1..=2);
                if let Some(b) = s.boundary(h, p, -omega, pole) {
                    boundaries.record(theta(h, &b).map(|img| img.is_zero()).unwrap_or(false));
                }
                if let Some(z) = s.cycle(h, &hom) {
                    let ok = match (z.pole_order(h), theta(h, &z)) {
                        (PoleOrder::Finite(c), Ok(img)) => {
                            img.t == (c as i64 + p as i64) * h.degree() - omega
                        }
                        _ => false,
                    };
                    degrees.record(ok);
                }
            }
        }
    }

    Ok(SelftestReport {
        seed,
        checks: vec![
            complexes.finish("differentials_square_to_zero"),
            normal_forms.finish("normal_form_unique"),
            clauses.finish("pole_order_clauses"),
            boundaries.finish("theta_kills_boundaries"),
            degrees.finish("theta_degree"),
        ],
    })
}

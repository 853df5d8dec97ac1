//! End-to-end check of the vanishing theorem on a concrete hypersurface:
//! `H_p(∂; R_f)_{−ω} = 0` for `2 ≤ p ≤ n − 2` and `dim H_{n−1}(∂; R_f)_{−ω} = 1`
//! when `f` is quasi-homogeneous with an isolated singularity.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::jacobian::{complete_intersection_series, jacobian_homology, Hypersurface};
use crate::parser::format_polynomial;
use crate::report::{
    Assertion, ChecksBlock, DerhamBlock, DerhamStatus, InputBlock, JacobianBlock, MilnorBlock,
    TheoremBlock, TheoremStatus, TimingBlock, TranslationRow, VerificationReport,
};
use crate::ring::Polynomial;

use super::filtration::filtration;
use super::homology::{derham_homology, PoleCap};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Upper degree for Jacobian scans; required when the Milnor algebra is not Artinian.
    pub degree_cap: Option<i64>,
    /// Fill in the timing block.
    pub timing: bool,
}

const IDENTIFICATION: &str =
    "H_i(∂;R_f) = H_i(∂;H^1_(f)(R)) for i < n, H_n(∂;H^1_(f)(R)) = 0, H^i = H_{n-i}";

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

pub fn verify_main_theorem(f: &Polynomial, opts: VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let ctx = f.ctx().clone();
    let n = ctx.n();
    let omega = ctx.omega();
    let d = f.weighted_degree().homogeneous();
    let input = InputBlock {
        f: format_polynomial(f),
        vars: ctx.var_names().to_vec(),
        weights: ctx.weights().to_vec(),
        n,
        d,
        omega,
    };
    if d.is_none() {
        return Err(if f.is_zero() {
            Error::ZeroPolynomial
        } else {
            Error::NotHomogeneous
        });
    }
    let h = Hypersurface::new(f.clone())?;

    let milnor = h.milnor();
    let series = complete_intersection_series(h.degree(), ctx.weights(), milnor.scan_bound);
    let matches_ci = milnor
        .hilbert
        .iter()
        .zip(&series)
        .all(|(&a, &b)| a as i64 == b);
    let smooth = milnor.is_artinian;
    let milnor_ms = millis(start);
    let mut checks = ChecksBlock {
        quasi_homogeneous: true,
        euler_identity: true,
        smooth_isolated: Some(smooth),
        milnor_matches_complete_intersection: smooth.then_some(matches_ci),
        milnor_scan_bound: Some(milnor.scan_bound),
        jacobian_scan_bound: None,
        degree_cap: opts.degree_cap,
    };
    let milnor_block = MilnorBlock {
        hilbert: milnor.hilbert.clone(),
        is_artinian: smooth,
        top_degree: milnor.top_degree,
        milnor_number: smooth.then(|| milnor.total()),
    };
    let mut assertions = Vec::new();
    let timing = |jacobian_ms: u64, derham_ms: u64| {
        opts.timing.then(|| TimingBlock {
            milnor_ms,
            jacobian_ms,
            derham_ms,
            total_ms: millis(start),
        })
    };

    if !smooth {
        return Ok(VerificationReport {
            input,
            checks,
            milnor: Some(milnor_block),
            jacobian: Vec::new(),
            derham: Vec::new(),
            theorem: TheoremBlock {
                status: TheoremStatus::HypothesisNotMet,
                assertions,
                translation: Vec::new(),
                identification: IDENTIFICATION.to_string(),
                reason: Some(
                    "the Milnor algebra is not Artinian: f has a non-isolated singularity".into(),
                ),
            },
            timing: timing(0, 0),
        });
    }
    assertions.push(Assertion {
        name: "milnor_complete_intersection".into(),
        p: None,
        expected: None,
        actual: None,
        passed: matches_ci,
    });

    let jac_start = Instant::now();
    let upper = opts.degree_cap.unwrap_or_else(|| h.jacobian_scan_bound());
    checks.jacobian_scan_bound = Some(upper);
    let mut jacobian = Vec::new();
    for q in 1..=n {
        let range = h.jacobian_scan_range(q);
        let t_min = *range.start();
        let mut dims = BTreeMap::new();
        for t in t_min..=upper {
            let dim = jacobian_homology(&h, q, t)?.dim();
            if dim > 0 {
                dims.insert(t, dim);
            }
        }
        if q >= 2 {
            let total: usize = dims.values().sum();
            assertions.push(Assertion {
                name: "jacobian_homology_vanishes".into(),
                p: Some(q),
                expected: Some(0),
                actual: Some(total),
                passed: total == 0,
            });
        }
        jacobian.push(JacobianBlock {
            p: q,
            t_min,
            t_max: upper,
            dims,
        });
    }
    let jacobian_ms = millis(jac_start);

    let der_start = Instant::now();
    let mut derham = Vec::new();
    let mut inconclusive = false;
    for p in 1..n {
        let asserted = if p == n - 1 {
            Some(1)
        } else if p >= 2 {
            Some(0)
        } else {
            None
        };
        let block = match derham_homology(&h, p, -omega, PoleCap::Auto, opts.degree_cap) {
            Ok(hom) => {
                let (filt, note) = match filtration(&h, &hom, opts.degree_cap) {
                    Ok(r) => (Some(r), None),
                    Err(Error::HypothesisNotMet(msg)) => (None, Some(msg)),
                    Err(e) => return Err(e),
                };
                if let Some(r) = &filt {
                    assertions.push(Assertion {
                        name: "filtration_theorem".into(),
                        p: Some(p),
                        expected: None,
                        actual: None,
                        passed: r.holds(),
                    });
                }
                if let Some(expected) = asserted {
                    assertions.push(Assertion {
                        name: "derham_dimension".into(),
                        p: Some(p),
                        expected: Some(expected),
                        actual: Some(hom.dim),
                        passed: hom.dim == expected,
                    });
                }
                DerhamBlock {
                    p,
                    internal_degree: -omega,
                    pole_cap: Some(hom.pole_cap),
                    auto_cap: hom.auto_cap,
                    status: DerhamStatus::Stabilized,
                    transition_ranks: hom.transition_ranks.clone(),
                    dim: Some(hom.dim),
                    asserted_dim: asserted,
                    filtration: filt,
                    note,
                }
            }
            Err(Error::NotStabilized { cap, ranks }) => {
                inconclusive = true;
                DerhamBlock {
                    p,
                    internal_degree: -omega,
                    pole_cap: Some(cap),
                    auto_cap: true,
                    status: DerhamStatus::NotStabilized,
                    transition_ranks: ranks,
                    dim: None,
                    asserted_dim: asserted,
                    filtration: None,
                    note: Some(format!("not stabilized at pole cap {cap}")),
                }
            }
            Err(Error::AutoCapUnavailable(msg)) => {
                if asserted.is_some() {
                    inconclusive = true;
                }
                DerhamBlock {
                    p,
                    internal_degree: -omega,
                    pole_cap: None,
                    auto_cap: true,
                    status: DerhamStatus::AutoCapUnavailable,
                    transition_ranks: Vec::new(),
                    dim: None,
                    asserted_dim: asserted,
                    filtration: None,
                    note: Some(msg),
                }
            }
            Err(e) => return Err(e),
        };
        derham.push(block);
    }
    let derham_ms = millis(der_start);

    let translation = derham
        .iter()
        .map(|b| TranslationRow {
            cohomological_index: n - b.p,
            homological_index: b.p,
            dim: b.dim,
        })
        .collect();
    let failed = assertions.iter().any(|a| !a.passed);
    let status = if failed {
        TheoremStatus::Failed
    } else if inconclusive {
        TheoremStatus::Inconclusive
    } else {
        TheoremStatus::Verified
    };
    let reason = match status {
        TheoremStatus::Failed => Some(
            assertions
                .iter()
                .filter(|a| !a.passed)
                .map(|a| match a.p {
                    Some(p) => format!("{} (p = {p})", a.name),
                    None => a.name.clone(),
                })
                .collect::<Vec<_>>()
                .join(", "),
        ),
        TheoremStatus::Inconclusive => {
            Some("de Rham homology did not stabilize; raise the pole cap".into())
        }
        _ => None,
    };
    Ok(VerificationReport {
        input,
        checks,
        milnor: Some(milnor_block),
        jacobian,
        derham,
        theorem: TheoremBlock {
            status,
            assertions,
            translation,
            identification: IDENTIFICATION.to_string(),
            reason,
        },
        timing: timing(jacobian_ms, derham_ms),
    })
}

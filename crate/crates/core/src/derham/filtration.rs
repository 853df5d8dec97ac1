//! The pole-order filtration `F_ν` of `H_p(∂; R_f)_{−ω}` and the maps
//! `η_ν : F_ν/F_{ν−1} → H_p(∂f; A)_{(ν+p)d−ω}`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobian::{jacobian_homology, nonvanishing_degrees, Hypersurface};
use crate::koszul::IndexSubset;
use crate::linalg::{Echelon, IntVec};
use crate::ring::rat;

use super::homology::DeRhamHomology;
use super::localized::{LocalizedVector, PoleOrder};
use super::theta::theta;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationLevel {
    pub nu: u32,
    pub dim_f: usize,
    pub quotient_dim: usize,
    pub eta_rank: usize,
    pub target_degree: i64,
    pub target_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub p: usize,
    pub dim: usize,
    pub levels: Vec<FiltrationLevel>,
    pub f0_is_zero: bool,
    pub monotone: bool,
    pub sum_matches_dim: bool,
    /// `η_ν` injective for every `ν ≥ 2`, and for `ν = 1` unless `p = n − 1`.
    pub injective: bool,
    /// For `p = n − 1`: `dim ker η_1`.
    pub eta1_kernel_dim: Option<usize>,
    /// For `p = n − 1`: the explicit cycle has `θ = 0`, a nonzero class of pole order 1.
    pub explicit_cycle_generates_kernel: Option<bool>,
}

impl FiltrationReport {
    pub fn holds(&self) -> bool {
        self.f0_is_zero
            && self.monotone
            && self.sum_matches_dim
            && self.injective
            && self.eta1_kernel_dim.is_none_or(|k| k == 1)
            && self.explicit_cycle_generates_kernel.unwrap_or(true)
    }
}

/// `ξ` with component `ε_k ∂_k f / f` at the subset missing `k`, where
/// `ε_k = (−1)^{n−k}` (1-based `k`); the sign pattern is checked, not assumed.
pub fn explicit_kernel_cycle(h: &Hypersurface) -> Result<LocalizedVector> {
    let n = h.n();
    if n < 2 {
        return Err(Error::Precondition("needs at least two variables".into()));
    }
    let subsets = IndexSubset::all(n, n - 1);
    for global in [1, -1] {
        let components = subsets
            .iter()
            .map(|s| {
                let k = (0..n)
                    .find(|&i| !s.contains(i))
                    .expect("one index is missing");
                let sign = if (n - 1 - k).is_multiple_of(2) {
                    global
                } else {
                    -global
                };
                h.partial(k).scale(&rat(sign))
            })
            .collect();
        let xi = LocalizedVector::new(h, n - 1, -h.omega(), 1, components)?;
        if xi.is_cycle(h) {
            return Ok(xi.normal_form(h));
        }
    }
    Err(Error::Internal(
        "explicit cycle fails the cycle condition for both signs".into(),
    ))
}

/// Builds the filtration report for a stabilized `H_p(∂; R_f)_{−ω}`.
/// Refuses unless `H_{p+1}(∂f; A)` vanishes in the scan range.
pub fn filtration(
    h: &Hypersurface,
    hom: &DeRhamHomology,
    degree_cap: Option<i64>,
) -> Result<FiltrationReport> {
    let n = h.n();
    let p = hom.p;
    if p == 0 || p >= n {
        return Err(Error::Precondition(format!(
            "the filtration is defined for 1 ≤ p ≤ n − 1, got p = {p}"
        )));
    }
    if hom.internal_degree != -h.omega() {
        return Err(Error::Precondition(
            "the filtration lives in internal degree −ω".into(),
        ));
    }
    if let Some((t, dim)) = nonvanishing_degrees(h, p + 1, degree_cap)?.first() {
        return Err(Error::HypothesisNotMet(format!(
            "H_{}(∂f;A)_{t} has dimension {dim}",
            p + 1
        )));
    }

    let counts = hom.level_counts();
    let dims = hom.filtration_dims();
    let mut levels = Vec::with_capacity(counts.len());
    let mut injective = true;
    let mut eta1_kernel_dim = None;
    for (nu, (&count, &dim_f)) in counts.iter().zip(&dims).enumerate() {
        let nu = nu as u32;
        let t = (nu as i64 + p as i64) * h.degree() - h.omega();
        let target_dim = jacobian_homology(h, p, t)?.dim();
        let mut eta_rank = 0;
        if nu >= 1 {
            let mut e = Echelon::new(target_dim);
            for rep in hom.class_basis().iter().filter(|r| r.level == nu) {
                if rep.cycle.pole_order(h) != PoleOrder::Finite(nu) {
                    return Err(Error::Internal(format!(
                        "representative of level {nu} has pole order {}",
                        rep.cycle.pole_order(h)
                    )));
                }
                let img = theta(h, &rep.cycle)?;
                if img.t != t {
                    return Err(Error::Internal(format!(
                        "θ landed in degree {} instead of {t}",
                        img.t
                    )));
                }
                let v: Vec<_> = img
                    .coordinates
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                e.push(IntVec::from_rational(&v));
            }
            eta_rank = e.rank();
            if nu == 1 && p == n - 1 {
                eta1_kernel_dim = Some(count - eta_rank);
            } else if eta_rank != count {
                injective = false;
            }
        }
        levels.push(FiltrationLevel {
            nu,
            dim_f,
            quotient_dim: count,
            eta_rank,
            target_degree: t,
            target_dim,
        });
    }

    let explicit_cycle_generates_kernel = if p == n - 1 {
        let xi = explicit_kernel_cycle(h)?;
        let img = theta(h, &xi)?;
        let coords = hom.class_coordinates(h, &xi)?;
        Some(
            img.is_zero()
                && hom.class_pole_order(&coords) == PoleOrder::Finite(1)
                && eta1_kernel_dim == Some(1),
        )
    } else {
        None
    };

    Ok(FiltrationReport {
        p,
        dim: hom.dim,
        f0_is_zero: dims.first().is_none_or(|&d| d == 0),
        monotone: dims.windows(2).all(|w| w[0] <= w[1]),
        sum_matches_dim: counts.iter().sum::<usize>() == hom.dim,
        levels,
        injective,
        eta1_kernel_dim,
        explicit_cycle_generates_kernel,
    })
}

//! `θ`: a non-polynomial de Rham cycle in normal form `(a_I / f^c)` goes to
//! the class of `(ā_I)` in `H_p(∂f; A)_{(c+p)d + j}`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jacobian::{jacobian_homology, Hypersurface};
use crate::koszul::KoszulLayer;
use crate::ring::Rational;

use super::localized::LocalizedVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaImage {
    /// `L` of the input cycle.
    pub pole: u32,
    /// Internal degree of the target slice.
    pub t: i64,
    pub target_dim: usize,
    pub coordinates: Vec<Rational>,
}

impl ThetaImage {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

pub fn theta(h: &Hypersurface, v: &LocalizedVector) -> Result<ThetaImage> {
    let nf = v.normal_form(h);
    if nf.is_zero() || nf.pole() == 0 {
        return Err(Error::Precondition(
            "θ is defined on cycles that are not polynomial vectors".into(),
        ));
    }
    if !nf.is_cycle(h) {
        return Err(Error::Precondition("vector is not a cycle".into()));
    }
    let p = nf.p();
    let c = nf.pole();
    let t = (c as i64 + p as i64) * h.degree() + nf.internal_degree();
    let layer = KoszulLayer::jacobian(h, p as i64, t);
    let coords = layer.from_components(h, nf.components())?;
    let slice = jacobian_homology(h, p, t)?;
    let coordinates = slice.coordinates(&coords).map_err(|_| {
        Error::Internal(format!(
            "numerators of a cycle do not form a ψ_{p}-cycle in degree {t}"
        ))
    })?;
    Ok(ThetaImage {
        pole: c,
        t,
        target_dim: slice.dim(),
        coordinates,
    })
}

//! The hypersurface ring `A = R/(f)`, the Milnor algebra `R/(∂f)`, and the
//! graded homology `H_p(∂f; A)_t` of the Jacobian Koszul complex.
//!
//! `A_s` is represented by the complement of `f·R_{s-d}` in `R_s` spanned by
//! the monomials not divisible by the lex-leading monomial of `f`. This is the
//! complement picked out by echelon reduction of `f·R_{s-d}` with lex pivots,
//! and reduction into it is division by `f`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::koszul::{build_jacobian_differential, KoszulLayer};
use crate::linalg::{kernel_basis, Echelon, IntVec, QVec, Quotient};
use crate::ring::{euler_check, GradedBasis, Monomial, Polynomial, Rational, RingContext};

/// A weighted-homogeneous `f` of positive degree, with its partials and
/// per-degree caches.
#[derive(Debug)]
pub struct Hypersurface {
    f: Polynomial,
    d: i64,
    partials: Vec<Polynomial>,
    lead: Monomial,
    r_bases: Mutex<HashMap<i64, Arc<GradedBasis>>>,
    a_bases: Mutex<HashMap<i64, Arc<GradedBasis>>>,
    slices: Mutex<HashMap<(usize, i64), Arc<JacobianHomologySlice>>>,
    milnor: OnceLock<MilnorProfile>,
}

impl Hypersurface {
    pub fn new(f: Polynomial) -> Result<Self> {
        if !euler_check(&f)? {
            return Err(Error::NotHomogeneous);
        }
        let d = f
            .weighted_degree()
            .homogeneous()
            .ok_or(Error::NotHomogeneous)?;
        if d < 1 {
            return Err(Error::Precondition("f must have positive degree".into()));
        }
        let n = f.ctx().n();
        let partials = (0..n).map(|i| f.partial(i)).collect();
        let lead = f.leading_term().expect("f is nonzero").0.clone();
        Ok(Hypersurface {
            f,
            d,
            partials,
            lead,
            r_bases: Mutex::default(),
            a_bases: Mutex::default(),
            slices: Mutex::default(),
            milnor: OnceLock::new(),
        })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    /// `d = deg f`.
    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn partials(&self) -> &[Polynomial] {
        &self.partials
    }

    pub fn partial(&self, i: usize) -> &Polynomial {
        &self.partials[i]
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.f.ctx()
    }

    pub fn n(&self) -> usize {
        self.ctx().n()
    }

    pub fn omega(&self) -> i64 {
        self.ctx().omega()
    }

    /// Monomial basis of `R_s`.
    pub fn r_basis(&self, s: i64) -> Arc<GradedBasis> {
        let mut cache = self.r_bases.lock().expect("basis cache");
        cache
            .entry(s)
            .or_insert_with(|| Arc::new(self.ctx().monomial_basis(s)))
            .clone()
    }

    /// Standard-monomial basis of `A_s`.
    pub fn a_basis(&self, s: i64) -> Arc<GradedBasis> {
        if let Some(b) = self.a_bases.lock().expect("basis cache").get(&s) {
            return b.clone();
        }
        let r = self.r_basis(s);
        let monomials = r
            .monomials()
            .iter()
            .filter(|m| !self.lead.divides(m))
            .cloned()
            .collect();
        let b = Arc::new(GradedBasis::new(s, monomials));
        self.a_bases
            .lock()
            .expect("basis cache")
            .insert(s, b.clone());
        b
    }

    /// Representative of `p mod f` in the standard complement.
    pub fn reduce_mod_f(&self, p: &Polynomial) -> Polynomial {
        p.div_rem(&self.f).expect("f is nonzero").1
    }

    /// Coordinates of the class of `p ∈ R_s` in `A_s`, or `None` if `p` is not
    /// homogeneous of degree `s`.
    pub fn a_coordinates(&self, p: &Polynomial, s: i64) -> Option<QVec> {
        if p.is_zero() {
            return Some(Vec::new());
        }
        if p.weighted_degree().homogeneous() != Some(s) {
            return None;
        }
        self.reduce_mod_f(p).coordinates(&self.a_basis(s))
    }

    /// Default Milnor scan bound `n·d − 2ω + max ω_i`.
    pub fn milnor_scan_bound(&self) -> i64 {
        self.n() as i64 * self.d - 2 * self.omega() + self.ctx().max_weight()
    }

    /// Upper end of the Jacobian homology scans, `(n+1)·d − 2ω + max ω_i`.
    pub fn jacobian_scan_bound(&self) -> i64 {
        self.milnor_scan_bound() + self.d
    }

    /// Degrees `t` scanned when checking `H_q(∂f; A) = 0`: from the lowest
    /// degree with a nonzero chain module up to [`jacobian_scan_bound`](Self::jacobian_scan_bound).
    pub fn jacobian_scan_range(&self, q: usize) -> std::ops::RangeInclusive<i64> {
        let mut w: Vec<i64> = self.ctx().weights().iter().map(|&w| w as i64).collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        let heaviest: i64 = w.iter().take(q).sum();
        (q as i64 * self.d - heaviest)..=self.jacobian_scan_bound()
    }

    /// Milnor profile at the default scan bound (cached).
    pub fn milnor(&self) -> &MilnorProfile {
        self.milnor.get_or_init(|| {
            milnor_profile(self, self.milnor_scan_bound()).expect("default bound is admissible")
        })
    }

    pub fn is_smooth(&self) -> bool {
        self.milnor().is_artinian
    }
}

/// Hilbert function of the Milnor algebra `R/(∂f)` up to a scan bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorProfile {
    pub scan_bound: i64,
    /// `hilbert[t] = dim (R/(∂f))_t` for `0 ≤ t ≤ scan_bound`.
    pub hilbert: Vec<usize>,
    pub is_artinian: bool,
    pub top_degree: Option<i64>,
}

impl MilnorProfile {
    pub fn dim(&self, t: i64) -> usize {
        if t < 0 {
            0
        } else {
            self.hilbert.get(t as usize).copied().unwrap_or(0)
        }
    }

    /// `Σ_t dim`, the Milnor number when Artinian.
    pub fn total(&self) -> usize {
        self.hilbert.iter().sum()
    }
}

/// Echelon basis of the Jacobian ideal slice `Σ_i R_{t-(d-ω_i)}·∂_i f ⊆ R_t`.
pub fn jacobian_ideal_slice(h: &Hypersurface, t: i64) -> Echelon {
    let basis = h.r_basis(t);
    let mut e = Echelon::new(basis.len());
    for (i, g) in h.partials().iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let s = t - (h.degree() - h.ctx().weight(i));
        for m in h.r_basis(s).monomials() {
            let v = g
                .mul_term(m, &crate::ring::rat(1))
                .coordinates(&basis)
                .expect("partials are homogeneous");
            e.push(IntVec::from_rational(&v));
        }
    }
    e
}

/// Whether the homogeneous polynomial `p` lies in the Jacobian ideal.
pub fn in_jacobian_ideal(h: &Hypersurface, p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let t = p
        .weighted_degree()
        .homogeneous()
        .ok_or(Error::NotHomogeneous)?;
    let basis = h.r_basis(t);
    let v = p.coordinates(&basis).expect("homogeneous of degree t");
    Ok(jacobian_ideal_slice(h, t).contains(IntVec::from_rational(&v)))
}

pub fn milnor_profile(h: &Hypersurface, scan_bound: i64) -> Result<MilnorProfile> {
    let window_end = h.milnor_scan_bound();
    if scan_bound < window_end {
        return Err(Error::Precondition(format!(
            "scan bound {scan_bound} is below n·d − 2ω + max ω_i = {window_end}"
        )));
    }
    let hilbert: Vec<usize> = (0..=scan_bound.max(0))
        .map(|t| h.r_basis(t).len() - jacobian_ideal_slice(h, t).rank())
        .collect();
    let socle = window_end - h.ctx().max_weight();
    let is_artinian = ((socle + 1).max(0)..=window_end).all(|t| hilbert[t as usize] == 0);
    let top_degree = hilbert.iter().rposition(|&x| x > 0).map(|t| t as i64);
    Ok(MilnorProfile {
        scan_bound,
        hilbert,
        is_artinian,
        top_degree: if is_artinian { top_degree } else { None },
    })
}

/// Coefficients of `∏(1 − s^{d−ω_i}) / ∏(1 − s^{ω_i})` up to `s^bound`.
pub fn complete_intersection_series(d: i64, weights: &[u32], bound: i64) -> Vec<i64> {
    if bound < 0 {
        return Vec::new();
    }
    let len = bound as usize + 1;
    let mut series = vec![0i64; len];
    series[0] = 1;
    for &w in weights {
        let w = w as usize;
        // divide by (1 - s^w)
        for t in w..len {
            series[t] += series[t - w];
        }
    }
    for &w in weights {
        let e = d - w as i64;
        if e <= 0 {
            // a zero-degree generator is a unit; (1 - s^0) = 0 kills everything
            if e == 0 {
                series.iter_mut().for_each(|x| *x = 0);
            }
            continue;
        }
        let e = e as usize;
        for t in (e..len).rev() {
            series[t] -= series[t - e];
        }
    }
    series
}

/// `H_p(∂f; A)_t` with a basis of cycle representatives and a coordinate map.
#[derive(Debug)]
pub struct JacobianHomologySlice {
    pub p: usize,
    pub t: i64,
    pub layer: KoszulLayer,
    pub cycle_dim: usize,
    quotient: Quotient,
}

impl JacobianHomologySlice {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn boundary_rank(&self) -> usize {
        self.quotient.boundary_rank()
    }

    pub fn representatives(&self) -> &[QVec] {
        self.quotient.representatives()
    }

    /// Class coordinates of a cycle given in layer coordinates.
    pub fn coordinates(&self, v: &[(usize, Rational)]) -> Result<Vec<Rational>> {
        self.quotient.coordinates(v)
    }
}

/// `H_p(∂f; A)_t`, cached per `(p, t)`.
pub fn jacobian_homology(h: &Hypersurface, p: usize, t: i64) -> Result<Arc<JacobianHomologySlice>> {
    if p > h.n() {
        return Err(Error::Precondition(format!(
            "p = {p} exceeds n = {}",
            h.n()
        )));
    }
    if let Some(s) = h.slices.lock().expect("slice cache").get(&(p, t)) {
        return Ok(s.clone());
    }
    let psi = build_jacobian_differential(h, p, t);
    let cycles = kernel_basis(&psi.matrix);
    let boundaries: Vec<QVec> = if p < h.n() {
        build_jacobian_differential(h, p + 1, t)
            .matrix
            .columns()
            .to_vec()
    } else {
        Vec::new()
    };
    let quotient = Quotient::new(psi.source.dim(), cycles.basis(), &boundaries)
        .map_err(|e| Error::Internal(format!("ψ∘ψ ≠ 0 at p={p}, t={t}: {e}")))?;
    let slice = Arc::new(JacobianHomologySlice {
        p,
        t,
        cycle_dim: cycles.dim(),
        layer: psi.source,
        quotient,
    });
    h.slices
        .lock()
        .expect("slice cache")
        .insert((p, t), slice.clone());
    Ok(slice)
}

/// One potential target of `η_ν`: the slice `H_p(∂f; A)_t` with `t = (ν+p)·d − ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtaTarget {
    pub nu: u32,
    pub t: i64,
    pub dim: usize,
}

/// All `η_ν` targets up to the cutoff: `degree_cap` when given, otherwise
/// [`Hypersurface::jacobian_scan_bound`] (which needs an Artinian Milnor algebra).
pub fn eta_target_degrees(
    h: &Hypersurface,
    p: usize,
    degree_cap: Option<i64>,
) -> Result<Vec<EtaTarget>> {
    let cutoff = match degree_cap {
        Some(c) => c,
        None if h.is_smooth() => h.jacobian_scan_bound(),
        None => return Err(Error::DegreeCapRequired),
    };
    let mut out = Vec::new();
    for nu in 1u32.. {
        let t = (nu as i64 + p as i64) * h.degree() - h.omega();
        if t > cutoff {
            break;
        }
        out.push(EtaTarget {
            nu,
            t,
            dim: jacobian_homology(h, p, t)?.dim(),
        });
    }
    Ok(out)
}

/// Degrees in the scan range where `H_q(∂f; A)` is nonzero; `upper` overrides
/// the top of the range.
pub fn nonvanishing_degrees(
    h: &Hypersurface,
    q: usize,
    upper: Option<i64>,
) -> Result<Vec<(i64, usize)>> {
    let mut out = Vec::new();
    if q > h.n() {
        return Ok(out);
    }
    let range = h.jacobian_scan_range(q);
    let end = upper.unwrap_or(*range.end());
    for t in *range.start()..=end {
        let dim = jacobian_homology(h, q, t)?.dim();
        if dim > 0 {
            out.push((t, dim));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, RationalMatrix};
    use crate::parser::parse_polynomial;

    fn hyper(text: &str, names: &[&str], weights: Vec<u32>) -> Hypersurface {
        let ctx = RingContext::new(names.iter().copied(), weights).unwrap();
        Hypersurface::new(parse_polynomial(text, &ctx).unwrap()).unwrap()
    }

    fn xyz(text: &str) -> Hypersurface {
        hyper(text, &["x", "y", "z"], vec![1, 1, 1])
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = RingContext::standard(["x", "y"]).unwrap();
        let p = |s| parse_polynomial(s, &ctx).unwrap();
        assert!(matches!(
            Hypersurface::new(p("x + y^2")),
            Err(Error::NotHomogeneous)
        ));
        assert!(matches!(
            Hypersurface::new(p("0")),
            Err(Error::ZeroPolynomial)
        ));
        assert!(Hypersurface::new(p("3")).is_err());
    }

    #[test]
    fn quotient_pieces_match_echelon_complement() {
        let h = xyz("x^3+y^3+z^3 - 2*x*y*z");
        for s in 0..7 {
            let r = h.r_basis(s);
            let lower = h.r_basis(s - 3);
            let columns: Vec<QVec> = lower
                .monomials()
                .iter()
                .map(|m| {
                    h.f()
                        .mul_term(m, &crate::ring::rat(1))
                        .coordinates(&r)
                        .unwrap()
                })
                .collect();
            let image = RationalMatrix::from_columns(r.len(), columns.clone());
            assert_eq!(h.a_basis(s).len(), r.len() - rank(&image));
            // p and its reduction differ by an element of f·R_{s-d}
            for m in r.monomials() {
                let p = Polynomial::monomial(h.ctx(), m.clone(), crate::ring::rat(1));
                let diff = &p - &h.reduce_mod_f(&p);
                let mut e = Echelon::new(r.len());
                for c in &columns {
                    e.push(IntVec::from_rational(c));
                }
                let v = diff.coordinates(&r).unwrap();
                assert!(e.contains(IntVec::from_rational(&v)));
            }
        }
    }

    #[test]
    fn milnor_examples() {
        let cubic = xyz("x^3+y^3+z^3");
        let m = cubic.milnor();
        assert_eq!(m.hilbert, vec![1, 3, 3, 1, 0]);
        assert!(m.is_artinian);
        assert_eq!(m.top_degree, Some(3));

        let quadric = xyz("x^2+y^2+z^2");
        assert_eq!(quadric.milnor().hilbert, vec![1, 0]);
        assert_eq!(quadric.milnor().top_degree, Some(0));

        let cusp = xyz("x^2*y");
        assert!(!cusp.milnor().is_artinian);
        assert_eq!(cusp.milnor().top_degree, None);

        let weighted = hyper("x^2+y^3+z^6", &["x", "y", "z"], vec![3, 2, 1]);
        assert_eq!(
            weighted.milnor().hilbert,
            vec![1, 1, 2, 2, 2, 1, 1, 0, 0, 0]
        );
        assert_eq!(weighted.milnor().top_degree, Some(6));
        assert_eq!(weighted.milnor().total(), 10);
        assert!(milnor_profile(&weighted, 3).is_err());
    }

    #[test]
    fn product_series() {
        assert_eq!(
            complete_intersection_series(3, &[1, 1, 1], 5),
            vec![1, 3, 3, 1, 0, 0]
        );
        assert_eq!(
            complete_intersection_series(6, &[3, 2, 1], 8),
            vec![1, 1, 2, 2, 2, 1, 1, 0, 0]
        );
    }

    #[test]
    fn euler_consequence() {
        let h = xyz("x^3+y^3+z^3 + x*y*z");
        for t in 0..4 {
            for m in h.r_basis(t).monomials() {
                let fm = h.f().mul_term(m, &crate::ring::rat(1));
                assert!(in_jacobian_ideal(&h, &fm).unwrap());
            }
        }
    }

    #[test]
    fn jacobian_homology_examples() {
        let q = xyz("x^2+y^2+z^2");
        assert_eq!(jacobian_homology(&q, 1, 2).unwrap().dim(), 1);
        assert_eq!(jacobian_homology(&q, 0, 0).unwrap().dim(), 1);
        for t in q.jacobian_scan_range(2) {
            assert_eq!(jacobian_homology(&q, 2, t).unwrap().dim(), 0);
            assert_eq!(jacobian_homology(&q, 3, t).unwrap().dim(), 0);
        }
        // H_1(∂f; A)_t ≅ M_{t-d} for the Fermat cubic
        let c = xyz("x^3+y^3+z^3");
        let dims: Vec<usize> = (0..9)
            .map(|t| jacobian_homology(&c, 1, t).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 3, 3, 1, 0, 0]);
        assert_eq!(jacobian_homology(&c, 3, 1).unwrap().layer.dim(), 0);
    }

    #[test]
    fn eta_targets() {
        let c = xyz("x^3+y^3+z^3");
        let t1 = eta_target_degrees(&c, 1, None).unwrap();
        assert_eq!(
            t1.iter().map(|e| (e.nu, e.t, e.dim)).collect::<Vec<_>>(),
            vec![(1, 3, 1), (2, 6, 1)]
        );
        assert!(eta_target_degrees(&c, 2, None)
            .unwrap()
            .iter()
            .all(|e| e.dim == 0));
        let cusp = xyz("x^2*y");
        assert!(matches!(
            eta_target_degrees(&cusp, 1, None),
            Err(Error::DegreeCapRequired)
        ));
        assert!(eta_target_degrees(&cusp, 1, Some(4)).is_ok());
    }
}

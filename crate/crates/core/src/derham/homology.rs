//! Truncated de Rham homology `H_p(∂; R_f)_j` as a colimit over pole caps.
//!
//! At pole level `c` the cycles `Z^(c)` are the kernel of `φ_p` on the pole-`c`
//! slice and the boundaries `B^(c)` are the image of `φ_{p+1}` from pole
//! `c − 1`. Multiplying numerators by `f` maps `H^(c)` to `H^(c+1)`; the
//! dimension is read off once two consecutive transition ranks agree.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jacobian::{eta_target_degrees, nonvanishing_degrees, Hypersurface};
use crate::koszul::{build_derham_differential, build_pole_shift, KoszulLayer};
use crate::linalg::{kernel_vectors, Echelon, IntVec, QVec, RationalMatrix};
use crate::ring::Rational;

use super::localized::{LocalizedVector, PoleOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleCap {
    Auto,
    Fixed(u32),
}

/// A homology class basis element: a cycle first appearing at pole `level`.
#[derive(Debug, Clone)]
pub struct ClassRepresentative {
    pub level: u32,
    pub cycle: LocalizedVector,
}

#[derive(Debug, Clone)]
pub struct DeRhamHomology {
    pub p: usize,
    pub internal_degree: i64,
    pub pole_cap: u32,
    pub auto_cap: bool,
    /// `rank(H^(c) → H^(c+1))` for `c = 0..pole_cap`.
    pub transition_ranks: Vec<usize>,
    /// `dim Z^(c)` and `rank B^(c)` for `c = 0..=pole_cap` (`None` where not computed).
    pub cycle_dims: Vec<Option<usize>>,
    pub boundary_ranks: Vec<usize>,
    pub dim: usize,
    class_basis: Vec<ClassRepresentative>,
    cycles: Vec<Vec<IntVec>>,
    top_layer: KoszulLayer,
    top: Echelon,
}

/// `max(ν*, 1) + 2` where `ν*` is the largest `ν` with a nonzero `η_ν` target.
/// Needs `H_{p+1}(∂f; A) = 0` in the scan range.
pub fn auto_pole_cap(h: &Hypersurface, p: usize, degree_cap: Option<i64>) -> Result<u32> {
    let targets = eta_target_degrees(h, p, degree_cap)?;
    let obstruction = nonvanishing_degrees(h, p + 1, degree_cap)?;
    if let Some((t, dim)) = obstruction.first() {
        return Err(Error::AutoCapUnavailable(format!(
            "H_{}(∂f;A)_{t} has dimension {dim}",
            p + 1
        )));
    }
    let nu_star = targets
        .iter()
        .filter(|e| e.dim > 0)
        .map(|e| e.nu)
        .max()
        .unwrap_or(0);
    Ok(nu_star.max(1) + 2)
}

fn boundary_echelon(h: &Hypersurface, p: usize, j: i64, c: u32) -> Echelon {
    let layer = KoszulLayer::derham(h, p as i64, c, j);
    let mut e = Echelon::new(layer.dim());
    if c >= 1 && p < h.n() {
        let phi = build_derham_differential(h, p + 1, c - 1, j);
        for col in phi.matrix.columns() {
            e.push(IntVec::from_rational(col));
        }
    }
    e
}

struct Lifter {
    shifts: Vec<RationalMatrix>,
}

impl Lifter {
    fn new(h: &Hypersurface, p: usize, j: i64, cap: u32) -> Self {
        Lifter {
            shifts: (0..cap)
                .map(|c| build_pole_shift(h, p, c, j).matrix)
                .collect(),
        }
    }

    /// Exact image of `v` (pole `from`) in the pole-`to` slice.
    fn lift(&self, v: &IntVec, from: u32, to: u32) -> QVec {
        let mut q: QVec = v.to_rational();
        for c in from..to {
            q = self.shifts[c as usize].apply(&q);
        }
        q
    }
}

pub fn derham_homology(
    h: &Hypersurface,
    p: usize,
    j: i64,
    cap: PoleCap,
    degree_cap: Option<i64>,
) -> Result<DeRhamHomology> {
    if p > h.n() {
        return Err(Error::Precondition(format!(
            "p = {p} exceeds n = {}",
            h.n()
        )));
    }
    let (pole_cap, auto_cap) = match cap {
        PoleCap::Fixed(c) => (c, false),
        PoleCap::Auto => (auto_pole_cap(h, p, degree_cap)?, true),
    };
    let big_c = pole_cap;
    let lifter = Lifter::new(h, p, j, big_c);

    let mut cycles: Vec<Vec<IntVec>> = Vec::with_capacity(big_c as usize);
    let mut cycle_dims = vec![None; big_c as usize + 1];
    let mut boundary_ranks = vec![0; big_c as usize + 1];
    let mut transition_ranks = Vec::with_capacity(big_c as usize);
    for c in 0..big_c {
        let z = kernel_vectors(&build_derham_differential(h, p, c, j).matrix);
        cycle_dims[c as usize] = Some(z.len());
        if c + 1 < big_c {
            let mut e = boundary_echelon(h, p, j, c + 1);
            boundary_ranks[c as usize + 1] = e.rank();
            let base = e.rank();
            for v in &z {
                e.push(IntVec::from_rational(&lifter.lift(v, c, c + 1)));
            }
            transition_ranks.push(e.rank() - base);
        }
        cycles.push(z);
    }

    let top_layer = KoszulLayer::derham(h, p as i64, big_c, j);
    let mut top = boundary_echelon(h, p, j, big_c);
    boundary_ranks[big_c as usize] = top.rank();
    let mut class_basis = Vec::new();
    let dim_top = top_layer.dim();
    for (level, z) in cycles.iter().enumerate() {
        let layer = KoszulLayer::derham(h, p as i64, level as u32, j);
        for v in z {
            let lifted = lifter.lift(v, level as u32, big_c);
            let tagged = IntVec::tagged(&lifted, dim_top, class_basis.len());
            if top.push(tagged) {
                class_basis.push(ClassRepresentative {
                    level: level as u32,
                    cycle: LocalizedVector::from_int_vec(h, &layer, v)?,
                });
            }
        }
    }
    if big_c >= 1 {
        transition_ranks.push(class_basis.len());
    }
    let n = transition_ranks.len();
    if n < 2 || transition_ranks[n - 1] != transition_ranks[n - 2] {
        return Err(Error::NotStabilized {
            cap: big_c,
            ranks: transition_ranks,
        });
    }
    Ok(DeRhamHomology {
        p,
        internal_degree: j,
        pole_cap: big_c,
        auto_cap,
        dim: class_basis.len(),
        transition_ranks,
        cycle_dims,
        boundary_ranks,
        class_basis,
        cycles,
        top_layer,
        top,
    })
}

impl DeRhamHomology {
    pub fn class_basis(&self) -> &[ClassRepresentative] {
        &self.class_basis
    }

    /// Basis of `Z^(c)` for `c < pole_cap`, in layer coordinates.
    pub fn cycle_basis(&self, c: u32) -> &[IntVec] {
        &self.cycles[c as usize]
    }

    /// Number of basis classes first appearing at each pole `ν = 0..pole_cap`.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.pole_cap as usize];
        for r in &self.class_basis {
            counts[r.level as usize] += 1;
        }
        counts
    }

    /// `dim F_ν` for `ν = 0..pole_cap`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        self.level_counts()
            .iter()
            .scan(0, |acc, &k| {
                *acc += k;
                Some(*acc)
            })
            .collect()
    }

    /// Coordinates of the class of a cycle (pole ≤ cap) in the class basis.
    pub fn class_coordinates(
        &self,
        h: &Hypersurface,
        cycle: &LocalizedVector,
    ) -> Result<Vec<Rational>> {
        if cycle.p() != self.p || cycle.internal_degree() != self.internal_degree {
            return Err(Error::Precondition(
                "cycle lives in a different slice".into(),
            ));
        }
        if !cycle.is_cycle(h) {
            return Err(Error::Precondition("vector is not a cycle".into()));
        }
        let nf = cycle.normal_form(h);
        if nf.pole() > self.pole_cap {
            return Err(Error::Precondition(format!(
                "pole order {} exceeds the cap {}",
                nf.pole(),
                self.pole_cap
            )));
        }
        let dim = self.top_layer.dim();
        let k = self.class_basis.len();
        let v = nf.layer_coordinates(h, self.pole_cap)?;
        let tagged = IntVec::tagged(&v, dim, k);
        let r = self.top.reduce(tagged);
        if !r.is_zero_below(dim) {
            return Err(Error::Precondition(
                "class is not in the image of the lower pole levels".into(),
            ));
        }
        let tail = r.tail_from(dim);
        let lambda = Rational::from_integer(tail.get(k).cloned().unwrap_or_else(BigInt::zero));
        if lambda.is_zero() {
            return Err(Error::Internal("lost the tag during reduction".into()));
        }
        let mut coords = vec![Rational::zero(); k];
        for (i, c) in tail.entries() {
            if *i < k {
                coords[*i] = -Rational::from_integer(c.clone()) / &lambda;
            }
        }
        Ok(coords)
    }

    pub fn is_boundary(&self, h: &Hypersurface, v: &LocalizedVector) -> Result<bool> {
        Ok(self.class_coordinates(h, v)?.iter().all(Zero::is_zero))
    }

    /// `L(x)`: the largest level among basis elements with a nonzero coordinate.
    /// The class basis is adapted to the filtration, so this is the least pole
    /// of a representative.
    pub fn class_pole_order(&self, coords: &[Rational]) -> PoleOrder {
        coords
            .iter()
            .zip(&self.class_basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, r)| PoleOrder::Finite(r.level))
            .max()
            .unwrap_or(PoleOrder::NegInfinity)
    }

    /// Membership-based `L(x)`: the least `c` such that some pole-`c` cycle
    /// represents `x`. Independent of the adapted-basis shortcut.
    pub fn class_pole_order_by_membership(
        &self,
        h: &Hypersurface,
        coords: &[Rational],
    ) -> Result<PoleOrder> {
        if coords.iter().all(Zero::is_zero) {
            return Ok(PoleOrder::NegInfinity);
        }
        let terms: Vec<(Rational, &LocalizedVector)> = coords
            .iter()
            .zip(&self.class_basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, r)| (c.clone(), &r.cycle))
            .collect();
        let x = LocalizedVector::linear_combination(h, &terms)?;
        let dim = self.top_layer.dim();
        let target = x.layer_coordinates(h, self.pole_cap)?;
        let lifter = Lifter::new(h, self.p, self.internal_degree, self.pole_cap);
        let mut e = boundary_echelon(h, self.p, self.internal_degree, self.pole_cap);
        for c in 0..self.pole_cap {
            for z in &self.cycles[c as usize] {
                e.push(IntVec::from_rational(&lifter.lift(z, c, self.pole_cap)));
            }
            if e.contains(IntVec::from_rational(&target)) {
                return Ok(PoleOrder::Finite(c));
            }
        }
        debug_assert!(dim > 0);
        Err(Error::Internal(
            "class not represented below the cap".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;
    use crate::ring::{rat, RingContext};

    fn xyz(text: &str) -> Hypersurface {
        let ctx = RingContext::standard(["x", "y", "z"]).unwrap();
        Hypersurface::new(parse_polynomial(text, &ctx).unwrap()).unwrap()
    }

    #[test]
    fn quadric() {
        let h = xyz("x^2+y^2+z^2");
        assert_eq!(auto_pole_cap(&h, 2, None).unwrap(), 3);
        let hom = derham_homology(&h, 2, -3, PoleCap::Auto, None).unwrap();
        assert_eq!(hom.dim, 1);
        assert_eq!(hom.transition_ranks, vec![0, 1, 1]);
        assert_eq!(hom.level_counts(), vec![0, 1, 0]);
        let coords = vec![rat(1)];
        assert_eq!(hom.class_pole_order(&coords), PoleOrder::Finite(1));
        assert_eq!(
            hom.class_pole_order_by_membership(&h, &coords).unwrap(),
            PoleOrder::Finite(1)
        );
        assert_eq!(hom.class_pole_order(&[rat(0)]), PoleOrder::NegInfinity);
        let h1 = derham_homology(&h, 1, -3, PoleCap::Auto, None).unwrap();
        assert_eq!(h1.dim, 0);
    }

    #[test]
    fn top_degree_holds_the_constants() {
        let h = xyz("x^2+y^2+z^2");
        // the constants: K_3 = R_f(3), so 1 sits in internal degree -3
        assert_eq!(
            derham_homology(&h, 3, -3, PoleCap::Fixed(3), None)
                .unwrap()
                .dim,
            1
        );
        assert_eq!(
            derham_homology(&h, 3, 0, PoleCap::Fixed(3), None)
                .unwrap()
                .dim,
            0
        );
    }

    #[test]
    fn small_caps_do_not_stabilize() {
        let h = xyz("x^2+y^2+z^2");
        assert!(matches!(
            derham_homology(&h, 2, -3, PoleCap::Fixed(1), None),
            Err(Error::NotStabilized { cap: 1, .. })
        ));
        assert!(matches!(
            derham_homology(&h, 0, -3, PoleCap::Auto, None),
            Err(Error::AutoCapUnavailable(_))
        ));
    }
}

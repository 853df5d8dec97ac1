//! Seeded random instances for property checks: coefficients, homogeneous
//! polynomials, localized vectors, boundaries and cycles.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derham::{DeRhamHomology, LocalizedVector};
use crate::jacobian::Hypersurface;
use crate::koszul::{IndexSubset, KoszulLayer};
use crate::linalg::{axpy, QVec};
use crate::ring::{rat, Polynomial, Rational, RingContext};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonzero, mostly small integers with the occasional fraction.
    pub fn coefficient(&mut self) -> Rational {
        let num = loop {
            let k: i64 = self.rng.gen_range(-4..=4);
            if k != 0 {
                break k;
            }
        };
        let den: i64 = if self.rng.gen_bool(0.2) {
            self.rng.gen_range(2..=3)
        } else {
            1
        };
        Rational::new(num.into(), den.into())
    }

    /// Random combination of the degree-`t` monomials; each monomial is kept
    /// with probability `density`. May be zero.
    pub fn polynomial(&mut self, ctx: &Arc<RingContext>, t: i64, density: f64) -> Polynomial {
        let basis = ctx.monomial_basis(t);
        let mut terms = Vec::new();
        for m in basis.monomials() {
            if self.rng.gen_bool(density) {
                terms.push((m.clone(), self.coefficient()));
            }
        }
        Polynomial::from_terms(ctx, terms)
    }

    fn coordinates(&mut self, dim: usize, density: f64) -> QVec {
        let mut v = Vec::new();
        for i in 0..dim {
            if self.rng.gen_bool(density) {
                v.push((i, self.coefficient()));
            }
        }
        v
    }

    /// A vector in `(K_p)_j` at a random pole `≤ max_pole`. Half of the time
    /// the numerators are multiplied by a power of `f` so that the stored
    /// representation is not in normal form.
    pub fn localized(
        &mut self,
        h: &Hypersurface,
        p: usize,
        j: i64,
        max_pole: u32,
    ) -> LocalizedVector {
        let pole = self.rng.gen_range(0..=max_pole);
        let layer = KoszulLayer::derham(h, p as i64, pole, j);
        let v = self.coordinates(layer.dim(), 0.5);
        let base = LocalizedVector::from_layer(h, &layer, &v).expect("de Rham layer");
        if self.rng.gen_bool(0.5) {
            let extra = self.rng.gen_range(1..=2);
            base.with_pole(h, pole + extra)
                .expect("raising the pole is exact")
        } else {
            base
        }
    }

    pub fn nonzero_localized(
        &mut self,
        h: &Hypersurface,
        p: usize,
        j: i64,
        max_pole: u32,
    ) -> LocalizedVector {
        for _ in 0..64 {
            let v = self.localized(h, p, j, max_pole);
            if !v.is_zero() {
                return v;
            }
        }
        let subsets = IndexSubset::all(h.n(), p);
        let target = h.degree() * max_pole as i64 + j;
        for (k, s) in subsets.iter().enumerate() {
            let basis = h.ctx().monomial_basis(target + s.weight(h.ctx().weights()));
            if let Some(m) = basis.monomials().first() {
                let mut comps = vec![Polynomial::zero(h.ctx()); subsets.len()];
                comps[k] = Polynomial::monomial(h.ctx(), m.clone(), self.coefficient());
                return LocalizedVector::new(h, p, j, max_pole, comps)
                    .expect("homogeneous numerator");
            }
        }
        panic!("the slice (p = {p}, j = {j}) is zero at every pole up to {max_pole}");
    }

    /// `φ_{p+1}(w)` for a random `w` at pole `pole − 1`, nonzero when the
    /// boundary space is nonzero.
    pub fn boundary(
        &mut self,
        h: &Hypersurface,
        p: usize,
        j: i64,
        pole: u32,
    ) -> Option<LocalizedVector> {
        if pole == 0 || p >= h.n() {
            return None;
        }
        let layer = KoszulLayer::derham(h, p as i64 + 1, pole - 1, j);
        if layer.dim() == 0 {
            return None;
        }
        for _ in 0..64 {
            let w = self.coordinates(layer.dim(), 0.6);
            let w = LocalizedVector::from_layer(h, &layer, &w).expect("de Rham layer");
            let b = w.differential(h);
            if !b.is_zero() {
                return Some(b);
            }
        }
        None
    }

    /// A random nonzero cycle from the pole levels below the cap of `hom`.
    pub fn cycle(&mut self, h: &Hypersurface, hom: &DeRhamHomology) -> Option<LocalizedVector> {
        let levels: Vec<u32> = (0..hom.pole_cap)
            .filter(|&c| !hom.cycle_basis(c).is_empty())
            .collect();
        if levels.is_empty() {
            return None;
        }
        for _ in 0..64 {
            let c = levels[self.rng.gen_range(0..levels.len())];
            let layer = KoszulLayer::derham(h, hom.p as i64, c, hom.internal_degree);
            let mut acc: QVec = Vec::new();
            for z in hom.cycle_basis(c) {
                if self.rng.gen_bool(0.6) {
                    let alpha = self.coefficient();
                    let zq = z.to_rational();
                    acc = axpy(&rat(1), &acc, &alpha, &zq);
                }
            }
            if acc.iter().all(|(_, x)| x.is_zero()) {
                continue;
            }
            let v = LocalizedVector::from_layer(h, &layer, &acc).expect("de Rham layer");
            if !v.is_zero() {
                return Some(v);
            }
        }
        None
    }
}

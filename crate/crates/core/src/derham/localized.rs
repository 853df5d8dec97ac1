//! Elements of `R_f^m` in the de Rham slices: numerators over a shared `f^c`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jacobian::Hypersurface;
use crate::koszul::{koszul_sign, IndexSubset, KoszulLayer};
use crate::linalg::{IntVec, QVec};
use crate::ring::{rat, Polynomial, Rational};

/// Value of `L`: `-∞` for zero, otherwise the normal-form pole order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoleOrder {
    NegInfinity,
    Finite(u32),
}

impl PoleOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            PoleOrder::NegInfinity => None,
            PoleOrder::Finite(c) => Some(c),
        }
    }
}

impl Ord for PoleOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PoleOrder::NegInfinity, PoleOrder::NegInfinity) => Ordering::Equal,
            (PoleOrder::NegInfinity, _) => Ordering::Less,
            (_, PoleOrder::NegInfinity) => Ordering::Greater,
            (PoleOrder::Finite(a), PoleOrder::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for PoleOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PoleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleOrder::NegInfinity => write!(f, "-inf"),
            PoleOrder::Finite(c) => write!(f, "{c}"),
        }
    }
}

/// Serialized as an integer, or `null` for `-∞`.
impl Serialize for PoleOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PoleOrder::NegInfinity => s.serialize_none(),
            PoleOrder::Finite(c) => s.serialize_some(c),
        }
    }
}

/// `(a_I / f^pole | |I| = p)` in internal degree `j`; numerator `a_I` is
/// homogeneous of degree `pole·d + j + ω_I` (or zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedVector {
    p: usize,
    internal_degree: i64,
    pole: u32,
    components: Vec<Polynomial>,
}

impl LocalizedVector {
    pub fn new(
        h: &Hypersurface,
        p: usize,
        internal_degree: i64,
        pole: u32,
        components: Vec<Polynomial>,
    ) -> Result<Self> {
        let subsets = IndexSubset::all(h.n(), p);
        if subsets.len() != components.len() {
            return Err(Error::Precondition(format!(
                "expected {} components for p = {p}, got {}",
                subsets.len(),
                components.len()
            )));
        }
        for (s, a) in subsets.iter().zip(&components) {
            let want = pole as i64 * h.degree() + internal_degree + s.weight(h.ctx().weights());
            if !a.is_zero() && a.weighted_degree().homogeneous() != Some(want) {
                return Err(Error::Precondition(format!(
                    "numerator for {s} must be homogeneous of degree {want}"
                )));
            }
        }
        Ok(LocalizedVector {
            p,
            internal_degree,
            pole,
            components,
        })
    }

    pub fn zero(h: &Hypersurface, p: usize, internal_degree: i64) -> Self {
        let m = IndexSubset::all(h.n(), p).len();
        LocalizedVector {
            p,
            internal_degree,
            pole: 0,
            components: vec![Polynomial::zero(h.ctx()); m],
        }
    }

    /// The element with the given coordinates in a de Rham layer.
    pub fn from_layer(
        h: &Hypersurface,
        layer: &KoszulLayer,
        v: &[(usize, Rational)],
    ) -> Result<Self> {
        let pole = layer
            .pole()
            .ok_or_else(|| Error::Precondition("not a de Rham layer".into()))?;
        if layer.p() < 0 {
            return Err(Error::Precondition("negative homological degree".into()));
        }
        Ok(LocalizedVector {
            p: layer.p() as usize,
            internal_degree: layer.internal_degree(),
            pole,
            components: layer.to_components(h, v),
        })
    }

    pub fn from_int_vec(h: &Hypersurface, layer: &KoszulLayer, v: &IntVec) -> Result<Self> {
        Self::from_layer(h, layer, &v.to_rational())
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn internal_degree(&self) -> i64 {
        self.internal_degree
    }

    pub fn pole(&self) -> u32 {
        self.pole
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// The same element written over `f^pole` with `pole ≥ self.pole`.
    pub fn with_pole(&self, h: &Hypersurface, pole: u32) -> Result<Self> {
        if pole < self.pole {
            return Err(Error::Precondition(format!(
                "cannot lower the denominator from f^{} to f^{pole}",
                self.pole
            )));
        }
        let factor = h.f().pow(pole - self.pole);
        Ok(LocalizedVector {
            p: self.p,
            internal_degree: self.internal_degree,
            pole,
            components: self
                .components
                .iter()
                .map(|a| a.multiply(&factor))
                .collect(),
        })
    }

    /// Coordinates in the de Rham layer at pole `pole ≥ self.pole`.
    pub fn layer_coordinates(&self, h: &Hypersurface, pole: u32) -> Result<QVec> {
        let lifted = self.with_pole(h, pole)?;
        KoszulLayer::derham(h, self.p as i64, pole, self.internal_degree)
            .from_components(h, &lifted.components)
    }

    /// Divides every numerator by `f` while all are divisible and the pole is positive.
    pub fn normal_form(&self, h: &Hypersurface) -> Self {
        if self.is_zero() {
            return LocalizedVector {
                pole: 0,
                ..self.clone()
            };
        }
        let mut current = self.clone();
        while current.pole > 0 {
            let mut divided = Vec::with_capacity(current.components.len());
            for a in &current.components {
                match a.exact_divide(h.f()).expect("f is nonzero") {
                    Some(q) => divided.push(q),
                    None => return current,
                }
            }
            current.components = divided;
            current.pole -= 1;
        }
        current
    }

    pub fn is_normal_form(&self, h: &Hypersurface) -> bool {
        self.normal_form(h).pole == self.pole
    }

    /// The function `L`.
    pub fn pole_order(&self, h: &Hypersurface) -> PoleOrder {
        if self.is_zero() {
            PoleOrder::NegInfinity
        } else {
            PoleOrder::Finite(self.normal_form(h).pole)
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.internal_degree != other.internal_degree {
            return Err(Error::Precondition(
                "vectors live in different de Rham slices".into(),
            ));
        }
        Ok(())
    }

    /// `α·self + β·other`, written over the larger of the two denominators.
    pub fn combine(
        &self,
        h: &Hypersurface,
        alpha: &Rational,
        other: &Self,
        beta: &Rational,
    ) -> Result<Self> {
        self.check_compatible(other)?;
        let pole = self.pole.max(other.pole);
        let a = self.with_pole(h, pole)?;
        let b = other.with_pole(h, pole)?;
        Ok(LocalizedVector {
            p: self.p,
            internal_degree: self.internal_degree,
            pole,
            components: a
                .components
                .iter()
                .zip(&b.components)
                .map(|(x, y)| &x.scale(alpha) + &y.scale(beta))
                .collect(),
        })
    }

    pub fn add(&self, h: &Hypersurface, other: &Self) -> Result<Self> {
        self.combine(h, &rat(1), other, &rat(1))
    }

    pub fn scale(&self, alpha: &Rational) -> Self {
        LocalizedVector {
            components: self.components.iter().map(|a| a.scale(alpha)).collect(),
            ..self.clone()
        }
    }

    /// `Σ α_k ξ_k`.
    pub fn linear_combination(
        h: &Hypersurface,
        terms: &[(Rational, &LocalizedVector)],
    ) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Precondition("empty linear combination".into()))?;
        let mut acc = LocalizedVector::zero(h, first.1.p, first.1.internal_degree);
        for (alpha, v) in terms {
            acc = acc.combine(h, &rat(1), v, alpha)?;
        }
        Ok(acc)
    }

    /// `φ_p` computed directly with the quotient rule (pole goes up by one).
    pub fn differential(&self, h: &Hypersurface) -> Self {
        let n = h.n();
        let targets = if self.p == 0 {
            Vec::new()
        } else {
            IndexSubset::all(n, self.p - 1)
        };
        let sources = IndexSubset::all(n, self.p);
        let c = rat(self.pole as i64);
        let components = targets
            .iter()
            .map(|j| {
                let mut acc = Polynomial::zero(h.ctx());
                for i in (0..n).filter(|&i| !j.contains(i)) {
                    let k = sources.binary_search(&j.with(i)).expect("subset of size p");
                    let a = &self.components[k];
                    let term = &a.partial(i).multiply(h.f()) - &a.multiply(h.partial(i)).scale(&c);
                    if koszul_sign(j, i).expect("i is not in J").is_multiple_of(2) {
                        acc = &acc + &term;
                    } else {
                        acc = &acc - &term;
                    }
                }
                acc
            })
            .collect();
        LocalizedVector {
            p: self.p.saturating_sub(1),
            internal_degree: self.internal_degree,
            pole: self.pole + 1,
            components,
        }
    }

    pub fn is_cycle(&self, h: &Hypersurface) -> bool {
        self.p == 0 || self.differential(h).is_zero()
    }
}

//! Index sets, Koszul signs, and the differential matrices of the two
//! complexes: the de Rham complex of the partials acting on `R_f`, and the
//! Koszul complex of multiplication by the `∂f/∂x_i` on `A = R/(f)`.
//!
//! Both differentials share one shape: for a source component `I` in
//! coefficient degree `s_I` and each `i ∈ I`, the target component
//! `J = I \ {i}` sits in degree `s_I + d - ω_i`, and the entry block is
//! `(-1)^σ(J, i)` times a per-variable coefficient action.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jacobian::Hypersurface;
use crate::linalg::{QVec, RationalMatrix};
use crate::ring::{rat, GradedBasis, Polynomial, Rational};

/// A strictly increasing set of variable indices (0-based internally,
/// printed 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if !members.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "index set {members:?} is not strictly increasing"
            )));
        }
        Ok(IndexSubset(members))
    }

    pub fn empty() -> Self {
        IndexSubset(Vec::new())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn with(&self, i: usize) -> IndexSubset {
        let mut m = self.0.clone();
        if let Err(pos) = m.binary_search(&i) {
            m.insert(pos, i);
        }
        IndexSubset(m)
    }

    pub fn without(&self, i: usize) -> IndexSubset {
        IndexSubset(self.0.iter().copied().filter(|&k| k != i).collect())
    }

    /// Sum of the weights of the members.
    pub fn weight(&self, weights: &[u32]) -> i64 {
        self.0.iter().map(|&i| weights[i] as i64).sum()
    }

    /// All subsets of `{0..n}` of size `p`, in lexicographic order.
    pub fn all(n: usize, p: usize) -> Vec<IndexSubset> {
        let mut out = Vec::new();
        if p > n {
            return out;
        }
        let mut current: Vec<usize> = (0..p).collect();
        loop {
            out.push(IndexSubset(current.clone()));
            // advance to the next combination
            let mut k = p;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if current[k] < n - p + k {
                    current[k] += 1;
                    for m in k + 1..p {
                        current[m] = current[m - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `σ(J ∪ {i}) = #{j ∈ J : j < i}`.
pub fn koszul_sign(j: &IndexSubset, i: usize) -> Result<usize> {
    match j.0.binary_search(&i) {
        Ok(_) => Err(Error::Precondition(format!(
            "index {} already belongs to {j}",
            i + 1
        ))),
        Err(pos) => Ok(pos),
    }
}

fn sign_factor(exponent: usize) -> Rational {
    if exponent.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    /// Truncated slice of `K(∂; R_f)`: numerators over the uniform denominator `f^pole`.
    DeRham { pole: u32 },
    /// Slice of `K'(∂f; A)`; coefficients are taken in `A`.
    Jacobian,
}

/// One graded slice of a Koszul module, with coordinates.
///
/// Coordinates are the concatenation over `subsets` (lex order) of the
/// coefficient vectors in `component_bases`.
#[derive(Debug, Clone)]
pub struct KoszulLayer {
    kind: LayerKind,
    p: i64,
    internal_degree: i64,
    subsets: Vec<IndexSubset>,
    shifts: Vec<i64>,
    component_degrees: Vec<i64>,
    component_bases: Vec<Arc<GradedBasis>>,
    offsets: Vec<usize>,
    dim: usize,
}

impl KoszulLayer {
    /// Pole-`pole` slice of `(K_p)_j`: component `I` has coefficients in `R_{pole·d + j + ω_I}`.
    pub fn derham(h: &Hypersurface, p: i64, pole: u32, j: i64) -> Self {
        let base = pole as i64 * h.degree() + j;
        Self::build(
            h,
            LayerKind::DeRham { pole },
            p,
            j,
            |shift| base + shift,
            |s| h.r_basis(s),
        )
    }

    /// `(K'_p)_t`: component `I` has coefficients in `A_{t - p·d + ω_I}`.
    pub fn jacobian(h: &Hypersurface, p: i64, t: i64) -> Self {
        Self::build(
            h,
            LayerKind::Jacobian,
            p,
            t,
            |shift| t + shift,
            |s| h.a_basis(s),
        )
    }

    fn build(
        h: &Hypersurface,
        kind: LayerKind,
        p: i64,
        internal_degree: i64,
        degree_of_shift: impl Fn(i64) -> i64,
        basis: impl Fn(i64) -> Arc<GradedBasis>,
    ) -> Self {
        let n = h.n();
        let subsets = if (0..=n as i64).contains(&p) {
            IndexSubset::all(n, p as usize)
        } else {
            Vec::new()
        };
        let weights = h.ctx().weights();
        let shifts: Vec<i64> = subsets
            .iter()
            .map(|s| match kind {
                LayerKind::DeRham { .. } => s.weight(weights),
                LayerKind::Jacobian => s.weight(weights) - p * h.degree(),
            })
            .collect();
        let component_degrees: Vec<i64> = shifts.iter().map(|&s| degree_of_shift(s)).collect();
        let component_bases: Vec<Arc<GradedBasis>> =
            component_degrees.iter().map(|&s| basis(s)).collect();
        let mut offsets = Vec::with_capacity(subsets.len());
        let mut dim = 0;
        for b in &component_bases {
            offsets.push(dim);
            dim += b.len();
        }
        KoszulLayer {
            kind,
            p,
            internal_degree,
            subsets,
            shifts,
            component_degrees,
            component_bases,
            offsets,
            dim,
        }
    }

    pub fn kind(&self) -> LayerKind {
        self.kind
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn pole(&self) -> Option<u32> {
        match self.kind {
            LayerKind::DeRham { pole } => Some(pole),
            LayerKind::Jacobian => None,
        }
    }

    pub fn internal_degree(&self) -> i64 {
        self.internal_degree
    }

    pub fn subsets(&self) -> &[IndexSubset] {
        &self.subsets
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn component_degrees(&self) -> &[i64] {
        &self.component_degrees
    }

    pub fn component_bases(&self) -> &[Arc<GradedBasis>] {
        &self.component_bases
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subset_position(&self, s: &IndexSubset) -> Option<usize> {
        self.subsets.binary_search(s).ok()
    }

    /// Splits a coordinate vector into one polynomial per subset.
    pub fn to_components(&self, h: &Hypersurface, v: &[(usize, Rational)]) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.subsets.len()];
        for (idx, c) in v {
            let k = self.offsets.partition_point(|&o| o <= *idx) - 1;
            parts[k].push((idx - self.offsets[k], c.clone()));
        }
        parts
            .iter()
            .zip(&self.component_bases)
            .map(|(part, basis)| Polynomial::from_coordinates(h.ctx(), basis, part.iter().cloned()))
            .collect()
    }

    /// Inverse of [`to_components`](Self::to_components). For Jacobian layers the
    /// components are reduced modulo `f` first.
    pub fn from_components(&self, h: &Hypersurface, parts: &[Polynomial]) -> Result<QVec> {
        if parts.len() != self.subsets.len() {
            return Err(Error::Precondition(format!(
                "expected {} components, got {}",
                self.subsets.len(),
                parts.len()
            )));
        }
        let mut out = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            let coords = match self.kind {
                LayerKind::DeRham { .. } => part.coordinates(&self.component_bases[k]),
                LayerKind::Jacobian => h.a_coordinates(part, self.component_degrees[k]),
            }
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "component {} is not homogeneous of degree {}",
                    self.subsets[k], self.component_degrees[k]
                ))
            })?;
            out.extend(coords.into_iter().map(|(i, c)| (i + self.offsets[k], c)));
        }
        Ok(out)
    }
}

/// The exact matrix of a Koszul differential between two slices.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix {
    pub source: KoszulLayer,
    pub target: KoszulLayer,
    pub matrix: RationalMatrix,
}

fn assemble(
    h: &Hypersurface,
    source: KoszulLayer,
    target: KoszulLayer,
    action: impl Fn(usize, &Polynomial, i64, &GradedBasis) -> QVec,
) -> DifferentialMatrix {
    let mut columns = Vec::with_capacity(source.dim);
    for (k, subset) in source.subsets.iter().enumerate() {
        for m in source.component_bases[k].monomials() {
            let mono = Polynomial::monomial(h.ctx(), m.clone(), rat(1));
            let mut col: Vec<(usize, Rational)> = Vec::new();
            for &i in subset.members() {
                let rest = subset.without(i);
                let sign = sign_factor(koszul_sign(&rest, i).expect("i is not in I \\ {i}"));
                let tk = target
                    .subset_position(&rest)
                    .expect("target layer holds every subset of size p-1");
                let offset = target.offsets[tk];
                let image = action(
                    i,
                    &mono,
                    target.component_degrees[tk],
                    &target.component_bases[tk],
                );
                col.extend(image.into_iter().map(|(idx, c)| (offset + idx, c * &sign)));
            }
            col.sort_by_key(|(i, _)| *i);
            columns.push(col);
        }
    }
    let matrix = RationalMatrix::from_columns(target.dim, columns);
    DifferentialMatrix {
        source,
        target,
        matrix,
    }
}

/// `φ_p` from the pole-`C` slice of `(K_p)_j` to the pole-`C+1` slice of `(K_{p-1})_j`.
/// On numerators: `a ↦ ∂_i(a)·f − C·a·∂_i f`.
pub fn build_derham_differential(
    h: &Hypersurface,
    p: usize,
    pole: u32,
    j: i64,
) -> DifferentialMatrix {
    let source = KoszulLayer::derham(h, p as i64, pole, j);
    let target = KoszulLayer::derham(h, p as i64 - 1, pole + 1, j);
    let c = rat(pole as i64);
    assemble(h, source, target, |i, a, _, basis| {
        let image = &a.partial(i).multiply(h.f()) - &a.multiply(h.partial(i)).scale(&c);
        image
            .coordinates(basis)
            .expect("quotient rule preserves homogeneity")
    })
}

/// `ψ_p : (K'_p)_t → (K'_{p-1})_t`, multiplication by `±∂f/∂x_i` in `A`.
pub fn build_jacobian_differential(h: &Hypersurface, p: usize, t: i64) -> DifferentialMatrix {
    let source = KoszulLayer::jacobian(h, p as i64, t);
    let target = KoszulLayer::jacobian(h, p as i64 - 1, t);
    assemble(h, source, target, |i, a, degree, _| {
        h.a_coordinates(&a.multiply(h.partial(i)), degree)
            .expect("multiplication by a partial preserves homogeneity")
    })
}

/// Multiplication of numerators by `f`: the pole-`C` slice into the pole-`C+1` slice
/// of the same `(K_p)_j`. Represents the identity map on `R_f`.
pub fn build_pole_shift(h: &Hypersurface, p: usize, pole: u32, j: i64) -> DifferentialMatrix {
    let source = KoszulLayer::derham(h, p as i64, pole, j);
    let target = KoszulLayer::derham(h, p as i64, pole + 1, j);
    let mut columns = Vec::with_capacity(source.dim);
    for k in 0..source.subsets.len() {
        let tb = &target.component_bases[k];
        let offset = target.offsets[k];
        for m in source.component_bases[k].monomials() {
            let col = h
                .f()
                .mul_term(m, &rat(1))
                .coordinates(tb)
                .expect("f·m is homogeneous")
                .into_iter()
                .map(|(i, c)| (i + offset, c))
                .collect();
            columns.push(col);
        }
    }
    let matrix = RationalMatrix::from_columns(target.dim, columns);
    DifferentialMatrix {
        source,
        target,
        matrix,
    }
}

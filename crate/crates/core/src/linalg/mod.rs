//! Exact rational matrices and subspaces.
//!
//! Everything is computed over `Q` by fraction-free sparse elimination (see
//! [`echelon`]). A [`Subspace`] is stored in reduced row echelon form, so two
//! equal subspaces have identical representations.

pub mod echelon;
pub mod modular;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::Rational;
pub use echelon::{Echelon, Insert, IntVec};

/// Sparse rational vector: sorted `(index, value)` pairs with nonzero values.
pub type QVec = Vec<(usize, Rational)>;

/// Converts a dense vector to sparse form.
pub fn sparse(dense: &[Rational]) -> QVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn densify(v: &[(usize, Rational)], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `a*x + b*y` for sparse vectors.
pub fn axpy(a: &Rational, x: &[(usize, Rational)], b: &Rational, y: &[(usize, Rational)]) -> QVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, val) = match (x.get(i), y.get(j)) {
            (Some((ix, cx)), Some((iy, cy))) if ix == iy => {
                i += 1;
                j += 1;
                (*ix, a * cx + b * cy)
            }
            (Some((ix, cx)), Some((iy, _))) if ix < iy => {
                i += 1;
                (*ix, a * cx)
            }
            (Some((ix, cx)), None) => {
                i += 1;
                (*ix, a * cx)
            }
            (_, Some((iy, cy))) => {
                j += 1;
                (*iy, b * cy)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}

/// Sparse column-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<QVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        RationalMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Columns must be sorted sparse vectors with indices below `rows`.
    pub fn from_columns(rows: usize, columns: Vec<QVec>) -> Self {
        for c in &columns {
            debug_assert!(c.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(c.iter().all(|(i, _)| *i < rows), "entry outside matrix");
        }
        RationalMatrix {
            rows,
            cols: columns.len(),
            columns: columns
                .into_iter()
                .map(|c| c.into_iter().filter(|(_, x)| !x.is_zero()).collect())
                .collect(),
        }
    }

    /// From a list of dense rows. All rows must have the same length.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut columns = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    columns[j].push((i, x.clone()));
                }
            }
        }
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &QVec {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[QVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                columns[*i].push((j, x.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// `self * v` for a sparse vector `v` of length `cols`.
    pub fn apply(&self, v: &[(usize, Rational)]) -> QVec {
        let mut acc: Vec<Rational> = vec![Rational::zero(); self.rows];
        let mut touched = vec![false; self.rows];
        for (j, x) in v {
            for (i, a) in &self.columns[*j] {
                acc[*i] += a * x;
                touched[*i] = true;
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(i, x)| touched[*i] && !x.is_zero())
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                out[i.to_owned()][j] = x.clone();
            }
        }
        out
    }
}

/// Echelon of the column space of `m`.
pub fn column_echelon(m: &RationalMatrix) -> Echelon {
    let mut e = Echelon::new(m.rows());
    for c in m.columns() {
        e.push(IntVec::from_rational(c));
    }
    e
}

pub fn rank(m: &RationalMatrix) -> usize {
    column_echelon(m).rank()
}

/// Kernel vectors of `m` as primitive integer vectors, one per dependent
/// column, in column order. Not canonicalized.
pub fn kernel_vectors(m: &RationalMatrix) -> Vec<IntVec> {
    let rows = m.rows();
    let mut e = Echelon::new(rows);
    let mut out = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        let mut augmented = c.clone();
        augmented.push((rows + j, Rational::one()));
        if let Insert::Dependent(r) = e.insert(IntVec::from_rational(&augmented)) {
            let mut k = r.tail_from(rows);
            k.make_primitive();
            out.push(k);
        }
    }
    out
}

pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    let vecs: Vec<QVec> = kernel_vectors(m).iter().map(IntVec::to_rational).collect();
    Subspace::from_vectors(m.cols(), &vecs)
}

pub fn image_basis(m: &RationalMatrix) -> Subspace {
    Subspace::from_echelon(&column_echelon(m))
}

/// A subspace of `Q^ambient_dim` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<QVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| vec![(i, Rational::one())])
                .collect(),
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[QVec]) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            assert!(
                v.iter().all(|(i, _)| *i < ambient_dim),
                "vector outside ambient space"
            );
            e.push(IntVec::from_rational(v));
        }
        Self::from_echelon(&e)
    }

    /// Canonical form of the span of an echelon's rows (tags are dropped).
    pub fn from_echelon(e: &Echelon) -> Self {
        let dim = e.dim();
        let mut rows: Vec<IntVec> = e
            .rows()
            .iter()
            .map(|r| {
                IntVec::new(
                    r.entries()
                        .iter()
                        .filter(|(i, _)| *i < dim)
                        .cloned()
                        .collect(),
                )
            })
            .collect();
        rows.sort_by_key(|r| r.lead());
        // Back-substitute from the last pivot upwards; later pivots never
        // touch the lead of an earlier row.
        let mut reduced = Echelon::new(dim);
        let mut out: Vec<QVec> = Vec::with_capacity(rows.len());
        for r in rows.into_iter().rev() {
            let lead = r.lead().expect("nonzero row");
            let full = reduced.reduce(r);
            let lead_value = Rational::from_integer(full.get(lead).expect("lead kept").clone());
            out.push(
                full.entries()
                    .iter()
                    .map(|(i, c)| (*i, Rational::from_integer(c.clone()) / &lead_value))
                    .collect(),
            );
            reduced.push(full);
        }
        out.reverse();
        Subspace {
            ambient_dim: dim,
            basis: out,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v[0].0).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            e.push(IntVec::from_rational(v));
        }
        e
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        // RREF: v is in the span iff v - sum v[pivot_k] * b_k vanishes.
        let mut residual: QVec = v.to_vec();
        for b in &self.basis {
            let p = b[0].0;
            if let Ok(k) = residual.binary_search_by_key(&p, |(i, _)| *i) {
                let c = residual[k].1.clone();
                residual = axpy(&Rational::one(), &residual, &-c, b);
            }
        }
        residual.is_empty()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Span of `self` and `other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = self.echelon();
        for v in &other.basis {
            e.push(IntVec::from_rational(v));
        }
        Subspace::from_echelon(&e)
    }
}

pub fn membership(v: &[(usize, Rational)], s: &Subspace) -> bool {
    s.contains(v)
}

/// Coordinates in `Z/B` with respect to a fixed complement basis of `B` in `Z`.
///
/// The complement is spanned by those basis vectors of `Z` (in RREF order)
/// that are independent modulo `B` and the previously chosen ones.
#[derive(Debug, Clone)]
pub struct Quotient {
    ambient_dim: usize,
    echelon: Echelon,
    representatives: Vec<QVec>,
    boundary_rank: usize,
}

impl Quotient {
    /// `b` must be contained in the span of `z`.
    pub fn new(ambient_dim: usize, z: &[QVec], b: &[QVec]) -> Result<Self> {
        let mut z_echelon = Echelon::new(ambient_dim);
        for v in z {
            z_echelon.push(IntVec::from_rational(v));
        }
        let mut echelon = Echelon::new(ambient_dim);
        for v in b {
            let iv = IntVec::from_rational(v);
            if !z_echelon.contains(iv.clone()) {
                return Err(Error::Precondition(
                    "boundary space not contained in cycle space".into(),
                ));
            }
            echelon.push(iv);
        }
        let boundary_rank = echelon.rank();
        let mut representatives = Vec::new();
        for v in z {
            let k = representatives.len();
            let tagged = IntVec::tagged(v, ambient_dim, k);
            if echelon.push(tagged) {
                representatives.push(v.clone());
            }
        }
        Ok(Quotient {
            ambient_dim,
            echelon,
            representatives,
            boundary_rank,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    pub fn representatives(&self) -> &[QVec] {
        &self.representatives
    }

    /// Whether `v` lies in the boundary space `B`.
    pub fn is_boundary(&self, v: &[(usize, Rational)]) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(Zero::is_zero))
    }

    /// Coordinates of the class of `v`; errors when `v` is not in `Z`.
    pub fn coordinates(&self, v: &[(usize, Rational)]) -> Result<Vec<Rational>> {
        let k = self.representatives.len();
        let lambda_index = k;
        let tagged = IntVec::tagged(v, self.ambient_dim, lambda_index);
        let r = self.echelon.reduce(tagged);
        if !r.is_zero_below(self.ambient_dim) {
            return Err(Error::Precondition(
                "vector is not in the cycle space".into(),
            ));
        }
        let tail = r.tail_from(self.ambient_dim);
        let lambda =
            Rational::from_integer(tail.get(lambda_index).cloned().unwrap_or_else(BigInt::zero));
        debug_assert!(!lambda.is_zero());
        let mut coords = vec![Rational::zero(); k];
        for (i, c) in tail.entries() {
            if *i < k {
                coords[*i] = -Rational::from_integer(c.clone()) / &lambda;
            }
        }
        Ok(coords)
    }
}

pub fn quotient_coordinates(
    v: &[(usize, Rational)],
    z: &Subspace,
    b: &Subspace,
) -> Result<Vec<Rational>> {
    Quotient::new(z.ambient_dim(), z.basis(), b.basis())?.coordinates(v)
}

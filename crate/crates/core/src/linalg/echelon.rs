//! Sparse fraction-free elimination.
//!
//! Vectors are stored as primitive integer vectors (content removed after
//! every combination), so elimination never creates fractions. Pivots are the
//! leading (smallest) index of each row, which makes every result depend only
//! on the order of insertion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::QVec;
use crate::ring::Rational;

/// Sparse integer vector with sorted, nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntVec {
    entries: Vec<(usize, BigInt)>,
}

impl IntVec {
    /// Builds a vector from entries with strictly increasing indices; zeros are dropped.
    pub fn new(entries: Vec<(usize, BigInt)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        IntVec {
            entries: entries.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn unit(index: usize) -> Self {
        IntVec {
            entries: vec![(index, BigInt::one())],
        }
    }

    /// Scales a rational vector to a primitive integer vector with the same span.
    pub fn from_rational(v: &[(usize, Rational)]) -> Self {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let entries = v
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
            .collect();
        let mut out = IntVec { entries };
        out.make_primitive();
        out
    }

    /// `v` followed by a unit tag at `offset + tag`, scaled together to a
    /// primitive integer vector (so the tag tracks `v` itself, not a multiple).
    pub fn tagged(v: &[(usize, Rational)], offset: usize, tag: usize) -> Self {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut entries: Vec<(usize, BigInt)> = v
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
            .collect();
        debug_assert!(entries.last().is_none_or(|(i, _)| *i < offset));
        entries.push((offset + tag, lcm));
        let mut out = IntVec { entries };
        out.make_primitive();
        out
    }

    pub fn to_rational(&self) -> QVec {
        self.entries
            .iter()
            .map(|(i, c)| (*i, Rational::from_integer(c.clone())))
            .collect()
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, BigInt)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// True when no entry has index below `dim`.
    pub fn is_zero_below(&self, dim: usize) -> bool {
        self.lead().is_none_or(|i| i >= dim)
    }

    /// Entries with index `>= dim`, shifted down by `dim`.
    pub fn tail_from(&self, dim: usize) -> IntVec {
        IntVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= dim)
                .map(|(i, c)| (i - dim, c.clone()))
                .collect(),
        }
    }

    /// Appends the entries of `tail`, shifted up by `offset` (must exceed all indices).
    pub fn with_tail(mut self, offset: usize, tail: &IntVec) -> IntVec {
        debug_assert!(self.entries.last().is_none_or(|(i, _)| *i < offset));
        self.entries
            .extend(tail.entries.iter().map(|(i, c)| (i + offset, c.clone())));
        self
    }

    /// Divides out the content and makes the leading entry positive.
    pub fn make_primitive(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.entries {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.entries[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.entries {
                *c /= &g;
            }
        }
    }

    /// `a * self - b * other`.
    fn combine(&self, a: &BigInt, b: &BigInt, other: &IntVec) -> IntVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while i < x.len() || j < y.len() {
            let next = match (x.get(i), y.get(j)) {
                (Some((ix, cx)), Some((iy, cy))) if ix == iy => {
                    i += 1;
                    j += 1;
                    let v = a * cx - b * cy;
                    if v.is_zero() {
                        continue;
                    }
                    (*ix, v)
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
                    (*iy, -(b * cy))
                }
                (None, None) => unreachable!(),
            };
            out.push(next);
        }
        IntVec { entries: out }
    }

    /// Eliminates the entry at position `pos` (index `k`) using `pivot`, whose lead is `k`.
    fn eliminate_with(&self, pos: usize, pivot: &IntVec) -> IntVec {
        let c = &self.entries[pos].1;
        let p = &pivot.entries[0].1;
        let g = c.gcd(p);
        let a = p / &g;
        let b = c / &g;
        let mut out = self.combine(&a, &b, pivot);
        out.make_primitive_keep_sign();
        out
    }

    fn make_primitive_keep_sign(&mut self) {
        let mut g = BigInt::zero();
        for (_, c) in &self.entries {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, c) in &mut self.entries {
                *c /= &g;
            }
        }
    }

    pub fn dot(&self, dense: &[BigInt]) -> BigInt {
        self.entries
            .iter()
            .map(|(i, c)| c * &dense[*i])
            .fold(BigInt::zero(), |a, b| a + b)
    }
}

/// Outcome of [`Echelon::insert`].
#[derive(Debug, Clone)]
pub enum Insert {
    /// The vector was independent and became the pivot row for this index.
    Pivot(usize),
    /// The vector reduced to zero below the pivot range; the residual keeps
    /// any entries at or above it (tags).
    Dependent(IntVec),
}

/// Semi-reduced echelon basis of a subspace of `Q^dim`.
///
/// Vectors may carry extra entries at indices `>= dim` ("tags"). Tags never
/// become pivots and are combined along with the vector, which records the
/// linear combination performed during reduction.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    rows: Vec<IntVec>,
    pivot_row: Vec<u32>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows
            .iter()
            .map(|r| r.lead().expect("pivot rows are nonzero"))
    }

    pub fn is_pivot(&self, index: usize) -> bool {
        index < self.dim && self.pivot_row[index] != NO_PIVOT
    }

    /// Eliminates every pivot position of `v`.
    pub fn reduce(&self, mut v: IntVec) -> IntVec {
        let mut pos = 0;
        while pos < v.entries.len() {
            let k = v.entries[pos].0;
            if k >= self.dim {
                break;
            }
            let r = self.pivot_row[k];
            if r == NO_PIVOT {
                pos += 1;
            } else {
                v = v.eliminate_with(pos, &self.rows[r as usize]);
            }
        }
        v.make_primitive_keep_sign();
        v
    }

    pub fn contains(&self, v: IntVec) -> bool {
        self.reduce(v).is_zero_below(self.dim)
    }

    pub fn insert(&mut self, v: IntVec) -> Insert {
        let mut v = self.reduce(v);
        match v.lead() {
            Some(k) if k < self.dim => {
                v.make_primitive();
                self.pivot_row[k] = self.rows.len() as u32;
                self.rows.push(v);
                Insert::Pivot(k)
            }
            _ => Insert::Dependent(v),
        }
    }

    /// Inserts `v` and reports whether it was independent.
    pub fn push(&mut self, v: IntVec) -> bool {
        matches!(self.insert(v), Insert::Pivot(_))
    }
}

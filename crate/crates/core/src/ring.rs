//! Exact arithmetic in a weighted-graded polynomial ring `Q[x_1..x_n]`.
//!
//! Variables carry positive integer weights; a polynomial is homogeneous of
//! degree `t` when every monomial has weighted degree `t`. Terms are kept in
//! a `BTreeMap` keyed by exponent vector, and the *canonical order* used for
//! bases and printing is weighted degree descending, then lexicographic
//! descending (so `x^3 + y^3 + z^3`, `x^2, xy, y^2`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The ambient ring: variable names and their weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    var_names: Vec<String>,
    weights: Vec<u32>,
    omega: i64,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: Into<String>>(
        var_names: impl IntoIterator<Item = S>,
        weights: Vec<u32>,
    ) -> Result<Arc<Self>> {
        let var_names: Vec<String> = var_names.into_iter().map(Into::into).collect();
        if var_names.is_empty() {
            return Err(Error::InvalidContext(
                "at least one variable is required".into(),
            ));
        }
        if var_names.len() != weights.len() {
            return Err(Error::InvalidContext(format!(
                "{} variables but {} weights",
                var_names.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidContext(format!("weight {w} is not positive")));
        }
        for (i, name) in var_names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if var_names[..i].contains(name) {
                return Err(Error::InvalidContext(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        let omega = weights.iter().map(|&w| w as i64).sum();
        Ok(Arc::new(RingContext {
            var_names,
            weights,
            omega,
        }))
    }

    /// All weights equal to one.
    pub fn standard<S: Into<String>>(var_names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = var_names.into_iter().map(Into::into).collect();
        let weights = vec![1; names.len()];
        Self::new(names, weights)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }

    /// Sum of the weights.
    pub fn omega(&self) -> i64 {
        self.omega
    }

    pub fn max_weight(&self) -> i64 {
        self.weights.iter().copied().max().unwrap_or(1) as i64
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    /// Canonical order: weighted degree descending, then lex descending.
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree_of(b)
            .cmp(&self.degree_of(a))
            .then_with(|| b.cmp(a))
    }

    /// All monomials of weighted degree `t`, in canonical order.
    pub fn monomial_basis(&self, t: i64) -> GradedBasis {
        let mut monomials = Vec::new();
        if t >= 0 {
            let mut current = vec![0u32; self.n()];
            enumerate_monomials(&self.weights, 0, t, &mut current, &mut monomials);
        }
        GradedBasis::new(t, monomials)
    }
}

fn enumerate_monomials(
    weights: &[u32],
    pos: usize,
    remaining: i64,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    let w = weights[pos] as i64;
    if pos + 1 == weights.len() {
        if remaining % w == 0 {
            current[pos] = (remaining / w) as u32;
            out.push(Monomial(current.clone()));
            current[pos] = 0;
        }
        return;
    }
    for e in (0..=remaining / w).rev() {
        current[pos] = e as u32;
        enumerate_monomials(weights, pos + 1, remaining - e * w, current, out);
    }
    current[pos] = 0;
}

/// Exponent vector. The derived `Ord` is plain lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }
}

/// Basis of the graded piece `R_t`.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(degree: i64, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Result of [`Polynomial::weighted_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// The zero polynomial (degree minus infinity).
    Zero,
    Homogeneous(i64),
    NotHomogeneous,
}

impl Degree {
    pub fn homogeneous(self) -> Option<i64> {
        match self {
            Degree::Homogeneous(t) => Some(t),
            _ => None,
        }
    }
}

/// Sparse polynomial with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Arc<RingContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", crate::parser::format_polynomial(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_polynomial(self))
    }
}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<RingContext>, c: Rational) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.n()), c)
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Arc<RingContext>, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.n(), i), Rational::one())
    }

    pub fn monomial(ctx: &Arc<RingContext>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), ctx.n(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Sums up the given terms; repeated monomials are combined.
    pub fn from_terms(
        ctx: &Arc<RingContext>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ctx.n(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    /// Polynomial with the given coordinates in a graded basis.
    pub fn from_coordinates(
        ctx: &Arc<RingContext>,
        basis: &GradedBasis,
        coords: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        Self::from_terms(
            ctx,
            coords
                .into_iter()
                .map(|(i, c)| (basis.monomials[i].clone(), c)),
        )
    }

    /// Coordinates in `basis`, or `None` if some monomial lies outside it.
    pub fn coordinates(&self, basis: &GradedBasis) -> Option<Vec<(usize, Rational)>> {
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((basis.index_of(m)?, c.clone()));
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical order (weighted degree descending, lex descending).
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ctx.canonical_cmp(a.0, b.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lex-largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn weighted_degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|m| self.ctx.degree_of(m));
        match degrees.next() {
            None => Degree::Zero,
            Some(t) => {
                if degrees.all(|s| s == t) {
                    Degree::Homogeneous(t)
                } else {
                    Degree::NotHomogeneous
                }
            }
        }
    }

    fn check_ctx(&self, other: &Polynomial) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "polynomials from different rings"
        );
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        self.check_ctx(other);
        let mut out = Polynomial::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ctx);
        for _ in 0..e {
            out = out.multiply(self);
        }
        out
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!(i < self.ctx.n(), "variable index out of range");
        let mut out = Polynomial::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * rat(e as i64));
        }
        out
    }

    /// Division with remainder by `f` using its lex-leading term.
    ///
    /// Since `{f}` is a Gröbner basis of `(f)`, the remainder vanishes exactly
    /// when `f` divides `self`.
    pub fn div_rem(&self, f: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ctx(f);
        let (lm, lc) = f.leading_term().ok_or(Error::ZeroPolynomial)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(&self.ctx);
        let mut remainder = Polynomial::zero(&self.ctx);
        while let Some((m, c)) = rem.terms.pop_last() {
            match m.div(&lm) {
                Some(q) => {
                    let coeff = &c / &lc;
                    for (fm, fc) in f.terms.iter().rev().skip(1) {
                        rem.add_term(fm.mul(&q), -(&coeff * fc));
                    }
                    quotient.add_term(q, coeff);
                }
                None => {
                    remainder.terms.insert(m, c);
                }
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact quotient `self / f`, or `None` when `f` does not divide `self`.
    pub fn exact_divide(&self, f: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(f)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Weighted Euler operator `sum_i w_i x_i d/dx_i` with arbitrary weights.
    pub fn euler_operator(&self, weights: &[u32]) -> Polynomial {
        assert_eq!(weights.len(), self.ctx.n());
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let d = m.weighted_degree(weights);
                    (d != 0).then(|| (m.clone(), c * rat(d)))
                })
                .collect(),
        }
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ctx.n());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }
}

/// Checks the Euler identity `sum_i w_i x_i df/dx_i = deg(f) f` in the ring's grading.
pub fn euler_check(f: &Polynomial) -> Result<bool> {
    let d = match f.weighted_degree() {
        Degree::Zero => return Err(Error::ZeroPolynomial),
        Degree::NotHomogeneous => return Err(Error::NotHomogeneous),
        Degree::Homogeneous(d) => d,
    };
    Ok(f.euler_operator(f.ctx().weights()) == f.scale(&rat(d)))
}

/// Whether `f` is an eigenvector of the Euler operator for `weights`, i.e.
/// quasi-homogeneous for that (possibly different) weight vector.
pub fn satisfies_euler_identity(f: &Polynomial, weights: &[u32]) -> bool {
    let Some((lm, _)) = f.leading_term() else {
        return false;
    };
    let lambda = rat(lm.weighted_degree(weights));
    f.euler_operator(weights) == f.scale(&lambda)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ctx(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ctx(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

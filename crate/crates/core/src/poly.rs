//! Tropical (min-plus) polynomials with exact rational coefficients.
//!
//! A polynomial `⊕ c_α ⊙ x^α` is evaluated as `min_α (c_α + α·x)`. Its
//! hypersurface is the set of points where that minimum is attained by at
//! least two terms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, ExtRational, Rat};

pub type Exponent = Vec<u32>;

/// A point of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn origin(n: usize) -> Self {
        Point(vec![Rat::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }
}

impl From<Vec<Rat>> for Point {
    fn from(v: Vec<Rat>) -> Self {
        Point(v)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        f.write_str(&parts.join(","))
    }
}

/// One finite term `c ⊙ x^α`. Absent terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponent: Exponent,
    pub coefficient: Rat,
}

impl Monomial {
    pub fn new(exponent: Exponent, coefficient: Rat) -> Self {
        Monomial {
            exponent,
            coefficient,
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponent.iter().sum()
    }

    /// `c + α·x`
    pub fn value_at(&self, x: &[Rat]) -> Rat {
        let mut v = self.coefficient.clone();
        for (e, xi) in self.exponent.iter().zip(x) {
            if *e != 0 {
                v += xi * Rat::from_integer((*e).into());
            }
        }
        v
    }
}

/// Result of evaluating a polynomial: the minimum and the exponents attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rat,
    /// Sorted, without duplicates.
    pub argmin: Vec<Exponent>,
}

/// A tropical polynomial in `dim` variables with a nonempty finite support.
///
/// Terms keep the order they were given in; exponents are pairwise distinct.
/// Equality compares supports as sets.
#[derive(Clone, Debug)]
pub struct TropicalPolynomial {
    dim: usize,
    terms: Vec<Monomial>,
}

impl TropicalPolynomial {
    pub fn new(dim: usize, terms: Vec<Monomial>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut seen = std::collections::HashSet::with_capacity(terms.len());
        for t in &terms {
            if t.exponent.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: t.exponent.len(),
                });
            }
            if !seen.insert(&t.exponent) {
                return Err(Error::DuplicateExponent(t.exponent.clone()));
            }
        }
        Ok(TropicalPolynomial { dim, terms })
    }

    /// Builds a polynomial from possibly infinite coefficients; `+∞` terms are dropped.
    pub fn from_ext_terms(dim: usize, terms: Vec<(Exponent, ExtRational)>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .filter_map(|(e, c)| match c {
                ExtRational::Finite(c) => Some(Monomial::new(e, c)),
                ExtRational::Infinity => None,
            })
            .collect();
        Self::new(dim, terms)
    }

    /// Shorthand for tests and gadget construction: `(exponent, coefficient)` pairs.
    pub fn from_pairs(dim: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        Self::new(
            dim,
            terms
                .iter()
                .map(|(e, c)| Monomial::new(e.to_vec(), crate::rational::rat(*c)))
                .collect(),
        )
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        TropicalPolynomial {
            dim,
            terms: vec![Monomial::new(vec![0; dim], c)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn check_degree(&self, bound: u32) -> Result<()> {
        let degree = self.degree();
        if degree > bound {
            return Err(Error::DegreeBound { degree, bound });
        }
        Ok(())
    }

    /// Coefficient of `x^α`, or `+∞` when absent.
    pub fn coefficient(&self, exponent: &[u32]) -> ExtRational {
        self.terms
            .iter()
            .find(|t| t.exponent == exponent)
            .map(|t| ExtRational::Finite(t.coefficient.clone()))
            .unwrap_or(ExtRational::Infinity)
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Minimum value and the indices of the terms attaining it.
    pub(crate) fn argmin_indices(&self, x: &[Rat]) -> (Rat, Vec<usize>) {
        let mut best: Option<Rat> = None;
        let mut idx = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            let v = t.value_at(x);
            match &best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => idx.push(i),
                _ => {
                    best = Some(v);
                    idx.clear();
                    idx.push(i);
                }
            }
        }
        (best.expect("support is nonempty"), idx)
    }

    pub fn eval(&self, x: &Point) -> Result<Evaluation> {
        self.check_point(x)?;
        let (value, idx) = self.argmin_indices(x.coords());
        let mut argmin: Vec<Exponent> = idx
            .into_iter()
            .map(|i| self.terms[i].exponent.clone())
            .collect();
        argmin.sort();
        Ok(Evaluation { value, argmin })
    }

    /// Whether `x` lies on the tropical hypersurface of `self`.
    pub fn is_member(&self, x: &Point) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.argmin_indices(x.coords()).1.len() >= 2)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Tropical product: Minkowski sum of supports, coefficients combined by min-plus convolution.
    pub fn trop_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut acc: BTreeMap<Exponent, Rat> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let e: Exponent = a.exponent.iter().zip(&b.exponent).map(|(x, y)| x + y).collect();
                let c = &a.coefficient + &b.coefficient;
                acc.entry(e)
                    .and_modify(|old| {
                        if c < *old {
                            *old = c.clone();
                        }
                    })
                    .or_insert(c);
            }
        }
        Ok(Self::from_map(self.dim, acc))
    }

    /// Tropical sum: union of supports, min on shared exponents.
    pub fn trop_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut acc: BTreeMap<Exponent, Rat> = BTreeMap::new();
        for t in self.terms.iter().chain(&other.terms) {
            acc.entry(t.exponent.clone())
                .and_modify(|old| {
                    if t.coefficient < *old {
                        *old = t.coefficient.clone();
                    }
                })
                .or_insert_with(|| t.coefficient.clone());
        }
        Ok(Self::from_map(self.dim, acc))
    }

    /// Product of several factors; `factors` must be nonempty.
    pub fn product(factors: &[TropicalPolynomial]) -> Result<Self> {
        let (first, rest) = factors.split_first().ok_or(Error::EmptySupport)?;
        rest.iter().try_fold(first.clone(), |acc, f| acc.trop_mul(f))
    }

    /// `c ⊙ f`
    pub fn scale(&self, c: &Rat) -> Self {
        TropicalPolynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Monomial::new(t.exponent.clone(), &t.coefficient + c))
                .collect(),
        }
    }

    /// Reinterprets `self` in `new_dim ≥ dim` variables; the new variables do not occur.
    pub fn embed(&self, new_dim: usize) -> Self {
        assert!(new_dim >= self.dim);
        TropicalPolynomial {
            dim: new_dim,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mut e = t.exponent.clone();
                    e.resize(new_dim, 0);
                    Monomial::new(e, t.coefficient.clone())
                })
                .collect(),
        }
    }

    /// Variables with a nonzero exponent in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&j| self.terms.iter().any(|t| t.exponent[j] != 0))
            .collect()
    }

    fn from_map(dim: usize, map: BTreeMap<Exponent, Rat>) -> Self {
        TropicalPolynomial {
            dim,
            terms: map
                .into_iter()
                .map(|(e, c)| Monomial::new(e, c))
                .collect(),
        }
    }
}

impl PartialEq for TropicalPolynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.terms.len() != other.terms.len() {
            return false;
        }
        let mut a: Vec<&Monomial> = self.terms.iter().collect();
        let mut b: Vec<&Monomial> = other.terms.iter().collect();
        a.sort_by(|x, y| x.exponent.cmp(&y.exponent));
        b.sort_by(|x, y| x.exponent.cmp(&y.exponent));
        a == b
    }
}

impl Eq for TropicalPolynomial {}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            f.write_str(&fmt_rat(&t.coefficient))?;
            for (j, e) in t.exponent.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{}", j + 1)?,
                    _ => write!(f, "·x{}^{}", j + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// A finite list of polynomials sharing one ambient dimension. The empty
/// system cuts out all of `Q^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    dim: usize,
    polys: Vec<TropicalPolynomial>,
}

impl PolySystem {
    pub fn new(dim: usize, polys: Vec<TropicalPolynomial>) -> Result<Self> {
        for p in &polys {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        Ok(PolySystem { dim, polys })
    }

    /// Uses the dimension of the first polynomial.
    pub fn from_polys(polys: Vec<TropicalPolynomial>) -> Result<Self> {
        let dim = polys.first().map(|p| p.dim()).ok_or(Error::EmptySupport)?;
        Self::new(dim, polys)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polys(&self) -> &[TropicalPolynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Whether `x` lies on every hypersurface.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        for p in &self.polys {
            if !p.is_member(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

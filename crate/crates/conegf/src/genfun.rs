//! Factored rational generating functions and truncated multivariate power
//! series.
//!
//! A [`RationalGF`] is a *sum of simple terms*, each a polynomial numerator
//! over a multiset of factors `(1 - z^d)`. Sums are never forced over a
//! common denominator: Brion sums and the closed forms verified here are
//! naturally sums of simple terms, and common denominators are the known
//! blowup mode. A [`TruncatedSeries`] is the common currency for all
//! coefficient-level comparisons; truncation is by total degree, which under
//! the `z -> q` specialization is exactly the partition size.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactmath::{BigInt, BigRat};
use crate::Result;

/// Exponent vector of a Laurent monomial. Negative entries are permitted;
/// tangent cones at non-minimal vertices need them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(vars: usize) -> Self {
        ExponentVector(vec![0; vars])
    }

    /// The standard basis vector `e_i` (0-indexed).
    pub fn unit(vars: usize, i: usize) -> Self {
        let mut v = vec![0; vars];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self + k * other`, the k-th step along a denominator direction.
    pub fn add_scaled(&self, other: &ExponentVector, k: i64) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{:?}", self.0)
    }
}

/// A substitution sending each source variable to a monomial in the target
/// variables; exponent vectors map linearly through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    from_vars: usize,
    to_vars: usize,
    images: Vec<ExponentVector>,
}

impl MonomialMap {
    pub fn new(to_vars: usize, images: Vec<ExponentVector>) -> Self {
        for img in &images {
            assert_eq!(img.len(), to_vars, "image arity mismatch");
        }
        MonomialMap {
            from_vars: images.len(),
            to_vars,
            images,
        }
    }

    /// Sends every variable to the single target variable `q`.
    pub fn all_to_q(from_vars: usize) -> Self {
        MonomialMap::new(1, vec![ExponentVector::new(vec![1]); from_vars])
    }

    /// Sends the last variable to `q` and every other variable to 1.
    pub fn last_to_q(from_vars: usize) -> Self {
        let mut images = vec![ExponentVector::zero(1); from_vars];
        if from_vars > 0 {
            images[from_vars - 1] = ExponentVector::new(vec![1]);
        }
        MonomialMap::new(1, images)
    }

    pub fn identity(vars: usize) -> Self {
        MonomialMap::new(vars, (0..vars).map(|i| ExponentVector::unit(vars, i)).collect())
    }

    pub fn from_vars(&self) -> usize {
        self.from_vars
    }

    pub fn to_vars(&self) -> usize {
        self.to_vars
    }

    pub fn image(&self, var: usize) -> &ExponentVector {
        &self.images[var]
    }

    pub fn apply(&self, e: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(e.len(), self.from_vars);
        let mut out = vec![0i64; self.to_vars];
        for (i, &k) in e.entries().iter().enumerate() {
            if k == 0 {
                continue;
            }
            for (o, &img) in out.iter_mut().zip(self.images[i].entries()) {
                *o += k * img;
            }
        }
        ExponentVector::new(out)
    }

    /// Largest total degree among images, the degree stretch of the map.
    pub fn max_stretch(&self) -> i64 {
        self.images
            .iter()
            .map(|img| img.total_degree())
            .max()
            .unwrap_or(0)
    }
}

/// A multivariate Laurent polynomial with exact integer coefficients, kept in
/// canonical map form: no zero coefficients are ever stored, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyDto", into = "PolyDto")]
pub struct MultiPolynomial {
    vars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl MultiPolynomial {
    pub fn zero(vars: usize) -> Self {
        MultiPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(ExponentVector::zero(vars), BigInt::one())
    }

    pub fn monomial(e: ExponentVector, coeff: BigInt) -> Self {
        let vars = e.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(e, coeff);
        }
        MultiPolynomial { vars, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: ExponentVector, coeff: BigInt) {
        assert_eq!(e.len(), self.vars, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPolynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = MultiPolynomial::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    /// Monomial substitution: each variable is replaced by its image under
    /// the map, and colliding exponents are combined.
    pub fn substitute(&self, map: &MonomialMap) -> Self {
        assert_eq!(self.vars, map.from_vars());
        let mut out = MultiPolynomial::zero(map.to_vars());
        for (e, c) in &self.terms {
            out.add_term(map.apply(e), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRat]) -> Result<BigRat> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: point.len(),
            });
        }
        if self.terms.keys().all(|e| e.is_nonneg()) {
            return Ok(evaluate_cleared(self.terms.iter(), point));
        }
        // Laurent fallback: one monomial at a time with cached powers
        let mut table = PowerTable::new(point);
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            acc += BigRat::from_integer(c.clone()) * table.monomial(e)?;
        }
        Ok(acc)
    }

    /// Sum of absolute coefficient values, used for series tail bounds.
    pub fn coeff_abs_sum(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// First exponent (in lexicographic order) where the two polynomials
    /// differ, with both coefficients.
    pub fn first_mismatch(&self, other: &Self) -> Option<(ExponentVector, BigInt, BigInt)> {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for e in keys {
            let a = self.coefficient(e);
            let b = other.coefficient(e);
            if a != b {
                return Some((e.clone(), a, b));
            }
        }
        None
    }
}

impl fmt::Debug for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*z^{:?}", e.entries()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One summand of a [`RationalGF`]: a polynomial numerator over a multiset of
/// `(1 - z^d)` factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SimpleTermDto", into = "SimpleTermDto")]
pub struct SimpleTerm {
    numerator: MultiPolynomial,
    denominator: Vec<ExponentVector>,
}

impl SimpleTerm {
    pub fn new(numerator: MultiPolynomial, mut denominator: Vec<ExponentVector>) -> Self {
        for d in &denominator {
            assert_eq!(d.len(), numerator.vars(), "denominator arity mismatch");
            assert!(!d.is_zero(), "denominator factor must be nonzero");
        }
        denominator.sort();
        SimpleTerm {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> &MultiPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &[ExponentVector] {
        &self.denominator
    }
}

/// A formal sum of simple terms representing a rational function of the
/// variables `z_1, ..., z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RationalGFDto", into = "RationalGFDto")]
pub struct RationalGF {
    vars: usize,
    terms: Vec<SimpleTerm>,
}

impl RationalGF {
    pub fn zero(vars: usize) -> Self {
        RationalGF {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(vars: usize, terms: Vec<SimpleTerm>) -> Self {
        for t in &terms {
            assert_eq!(t.numerator.vars(), vars, "term arity mismatch");
        }
        RationalGF { vars, terms }
    }

    pub fn single(numerator: MultiPolynomial, denominator: Vec<ExponentVector>) -> Self {
        let vars = numerator.vars();
        RationalGF::from_terms(vars, vec![SimpleTerm::new(numerator, denominator)])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[SimpleTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Term-list concatenation; no cancellation is performed.
    pub fn gf_add(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: other.vars,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(RationalGF {
            vars: self.vars,
            terms,
        })
    }

    pub fn gf_sub(&self, other: &Self) -> Result<Self> {
        self.gf_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalGF {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|t| SimpleTerm {
                    numerator: t.numerator.neg(),
                    denominator: t.denominator.clone(),
                })
                .collect(),
        }
    }

    /// Coefficientwise-correct power-series expansion through total degree
    /// `order`. Every factor `1/(1 - z^d)` is expanded as the geometric
    /// series over multiples of `d`; products are truncated as they form.
    pub fn expand(&self, order: i64) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(self.vars, order);
        for term in &self.terms {
            for d in &term.denominator {
                if d.is_zero() || !d.is_nonneg() {
                    return Err(Error::NonExpandableDenominator);
                }
            }
            let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
            for (e, c) in term.numerator.iter() {
                if !e.is_nonneg() {
                    return Err(Error::NonExpandableNumerator);
                }
                if e.total_degree() <= order {
                    acc.insert(e.clone(), c.clone());
                }
            }
            for d in &term.denominator {
                acc = convolve_geometric(&acc, d, order);
            }
            for (e, c) in acc {
                out.add_coefficient(e, c);
            }
        }
        Ok(out)
    }

    /// Applies a monomial substitution to every numerator and denominator
    /// exponent vector. Fails with [`Error::PoleCreated`] if a denominator
    /// factor degenerates to `1 - 1`.
    pub fn specialize(&self, map: &MonomialMap) -> Result<Self> {
        if map.from_vars() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: map.from_vars(),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let mut denominator = Vec::with_capacity(term.denominator.len());
            for d in &term.denominator {
                let image = map.apply(d);
                if image.is_zero() {
                    return Err(Error::PoleCreated);
                }
                denominator.push(image);
            }
            terms.push(SimpleTerm::new(term.numerator.substitute(map), denominator));
        }
        Ok(RationalGF {
            vars: map.to_vars(),
            terms,
        })
    }

    /// Exact rational value at a point, summed over all simple terms.
    pub fn evaluate(&self, point: &[BigRat]) -> Result<BigRat> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: point.len(),
            });
        }
        let mut total = BigRat::zero();
        for term in &self.terms {
            let numerator = term.numerator.evaluate(point)?;
            let mut denominator = BigRat::one();
            for d in &term.denominator {
                let factor = BigRat::one() - eval_monomial(point, d)?;
                if factor.is_zero() {
                    return Err(Error::PoleAtPoint);
                }
                denominator *= factor;
            }
            total += numerator / denominator;
        }
        Ok(total)
    }

    /// Upper bound on the absolute value of the series tail beyond `order`,
    /// valid at any point with all coordinates of absolute value <= 1/4.
    /// Derived per term by dominating the degree-`t` slice by
    /// `S * (t+1)^K * 4^(-t)` with `S` the numerator coefficient mass and `K`
    /// the number of denominator factors.
    pub fn expansion_tail_bound(&self, order: i64) -> Result<BigRat> {
        let quarter = BigRat::new(BigInt::one(), BigInt::from(4));
        let mut total = BigRat::zero();
        for term in &self.terms {
            for d in &term.denominator {
                if d.is_zero() || !d.is_nonneg() {
                    return Err(Error::NonExpandableDenominator);
                }
            }
            let k = term.denominator.len() as u32;
            let s = BigRat::from_integer(term.numerator.coeff_abs_sum());
            let n2 = BigRat::from_integer(BigInt::from(order + 2));
            let n3 = BigRat::from_integer(BigInt::from(order + 3));
            // first tail term: (N+2)^K * (1/4)^(N+1)
            let first = n2.pow(k as i32) * quarter.pow((order + 1) as i32);
            // geometric ratio bound: ((N+3)/(N+2))^K / 4, must stay below 1
            let ratio = (n3 / n2).pow(k as i32) * &quarter;
            assert!(
                ratio < BigRat::one(),
                "tail ratio must be < 1; increase the order"
            );
            total += s * first / (BigRat::one() - ratio);
        }
        Ok(total)
    }
}

fn convolve_geometric(
    acc: &BTreeMap<ExponentVector, BigInt>,
    d: &ExponentVector,
    order: i64,
) -> BTreeMap<ExponentVector, BigInt> {
    let step = d.total_degree();
    debug_assert!(step >= 1);
    let mut out: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
    for (e, c) in acc {
        let base = e.total_degree();
        let mut k = 0i64;
        while base + k * step <= order {
            let entry = out
                .entry(e.add_scaled(d, k))
                .or_insert_with(BigInt::zero);
            *entry += c;
            k += 1;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn eval_monomial(point: &[BigRat], e: &ExponentVector) -> Result<BigRat> {
    debug_assert_eq!(point.len(), e.len());
    // scan for poles before multiplying so 0 * 0^(-1) is rejected
    for (p, &k) in point.iter().zip(e.entries()) {
        if k < 0 && p.is_zero() {
            return Err(Error::PoleAtPoint);
        }
    }
    let mut acc = BigRat::one();
    for (p, &k) in point.iter().zip(e.entries()) {
        if k == 0 {
            continue;
        }
        if p.is_zero() {
            return Ok(BigRat::zero());
        }
        let k32 = i32::try_from(k).expect("exponent fits in i32");
        acc *= p.pow(k32);
    }
    Ok(acc)
}

/// Exact evaluation of a polynomial with nonnegative exponents: clear all
/// denominators up front and accumulate in plain big integers, reducing the
/// fraction once at the end. Rational accumulation would re-run gcds on
/// every operation, which dominates for oracle polynomials with thousands
/// of monomials.
fn evaluate_cleared<'a>(
    terms: impl Iterator<Item = (&'a ExponentVector, &'a BigInt)> + Clone,
    point: &[BigRat],
) -> BigRat {
    let vars = point.len();
    let mut max_exp = vec![0i64; vars];
    for (e, _) in terms.clone() {
        for (m, &k) in max_exp.iter_mut().zip(e.entries()) {
            *m = (*m).max(k);
        }
    }
    // tables of a_i^k and b_i^k for p_i = a_i / b_i
    let mut numer_pows: Vec<Vec<BigInt>> = Vec::with_capacity(vars);
    let mut denom_pows: Vec<Vec<BigInt>> = Vec::with_capacity(vars);
    for (p, &m) in point.iter().zip(&max_exp) {
        let mut np = Vec::with_capacity(m as usize + 1);
        let mut dp = Vec::with_capacity(m as usize + 1);
        np.push(BigInt::one());
        dp.push(BigInt::one());
        for k in 1..=m as usize {
            np.push(&np[k - 1] * p.numer());
            dp.push(&dp[k - 1] * p.denom());
        }
        numer_pows.push(np);
        denom_pows.push(dp);
    }
    let mut acc = BigInt::zero();
    for (e, c) in terms {
        let mut t = c.clone();
        for (i, &k) in e.entries().iter().enumerate() {
            t *= &numer_pows[i][k as usize];
            t *= &denom_pows[i][(max_exp[i] - k) as usize];
        }
        acc += t;
    }
    let mut common = BigInt::one();
    for (dp, &m) in denom_pows.iter().zip(&max_exp) {
        common *= &dp[m as usize];
    }
    BigRat::new(acc, common)
}

/// Per-variable cache of coordinate powers for evaluating many monomials at
/// the same point.
struct PowerTable<'a> {
    point: &'a [BigRat],
    cache: Vec<std::collections::HashMap<i64, BigRat>>,
}

impl<'a> PowerTable<'a> {
    fn new(point: &'a [BigRat]) -> Self {
        PowerTable {
            point,
            cache: vec![std::collections::HashMap::new(); point.len()],
        }
    }

    fn monomial(&mut self, e: &ExponentVector) -> Result<BigRat> {
        for (p, &k) in self.point.iter().zip(e.entries()) {
            if k < 0 && p.is_zero() {
                return Err(Error::PoleAtPoint);
            }
        }
        let mut acc = BigRat::one();
        for (i, &k) in e.entries().iter().enumerate() {
            if k == 0 {
                continue;
            }
            if self.point[i].is_zero() {
                return Ok(BigRat::zero());
            }
            let power = self.cache[i].entry(k).or_insert_with(|| {
                let k32 = i32::try_from(k).expect("exponent fits in i32");
                self.point[i].pow(k32)
            });
            acc *= &*power;
        }
        Ok(acc)
    }
}

/// A power series truncated by total degree: every stored exponent vector is
/// componentwise nonnegative with total degree at most `order`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesDto", into = "SeriesDto")]
pub struct TruncatedSeries {
    vars: usize,
    order: i64,
    coeffs: BTreeMap<ExponentVector, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(vars: usize, order: i64) -> Self {
        TruncatedSeries {
            vars,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `q^k` in a univariate series.
    pub fn q_coefficient(&self, k: i64) -> BigInt {
        assert_eq!(self.vars, 1, "q_coefficient needs a univariate series");
        self.coefficient(&ExponentVector::new(vec![k]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.coeffs.iter()
    }

    /// Inserts, dropping anything outside the truncation window.
    pub fn add_coefficient(&mut self, e: ExponentVector, c: BigInt) {
        assert_eq!(e.len(), self.vars, "exponent arity mismatch");
        if c.is_zero() || !e.is_nonneg() || e.total_degree() > self.order {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(e) {
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for (e, c) in &other.coeffs {
            out.add_coefficient(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for (e, c) in &other.coeffs {
            out.add_coefficient(e.clone(), -c);
        }
        out
    }

    pub fn truncated(&self, order: i64) -> Self {
        let mut out = TruncatedSeries::zero(self.vars, order.min(self.order));
        for (e, c) in &self.coeffs {
            out.add_coefficient(e.clone(), c.clone());
        }
        out
    }

    /// Series-level monomial substitution truncated to `order`.
    pub fn specialized(&self, map: &MonomialMap, order: i64) -> Self {
        assert_eq!(self.vars, map.from_vars());
        let mut out = TruncatedSeries::zero(map.to_vars(), order);
        for (e, c) in &self.coeffs {
            out.add_coefficient(map.apply(e), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRat]) -> Result<BigRat> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch {
                expected: self.vars,
                got: point.len(),
            });
        }
        // series exponents are nonnegative by invariant
        Ok(evaluate_cleared(self.coeffs.iter(), point))
    }

    /// First exponent (lexicographic) where the two series differ within the
    /// common truncation order.
    pub fn first_mismatch(&self, other: &Self) -> Option<(ExponentVector, BigInt, BigInt)> {
        assert_eq!(self.vars, other.vars, "series arity mismatch");
        let order = self.order.min(other.order);
        let keys: std::collections::BTreeSet<_> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .filter(|e| e.total_degree() <= order)
            .collect();
        for e in keys {
            let a = self.coefficient(e);
            let b = other.coefficient(e);
            if a != b {
                return Some((e.clone(), a, b));
            }
        }
        None
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "series(vars={}, order={}, ", self.vars, self.order)?;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| format!("{c}*z^{:?}", e.entries()))
            .collect();
        write!(f, "{})", parts.join(" + "))
    }
}

/// Structural equality of coefficient maps up to the common order.
pub fn series_eq(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
    a.first_mismatch(b).is_none()
}

// --- canonical JSON forms -------------------------------------------------
//
// Exponent vectors serialize as integer arrays and coefficients as decimal
// strings, so arbitrary precision survives the round trip.

#[derive(Serialize, Deserialize)]
struct TermEntryDto {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyDto {
    vars: usize,
    terms: Vec<TermEntryDto>,
}

impl From<MultiPolynomial> for PolyDto {
    fn from(p: MultiPolynomial) -> Self {
        PolyDto {
            vars: p.vars,
            terms: p
                .terms
                .iter()
                .map(|(e, c)| TermEntryDto {
                    exp: e.entries().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyDto> for MultiPolynomial {
    type Error = Error;

    fn try_from(dto: PolyDto) -> Result<Self> {
        let mut out = MultiPolynomial::zero(dto.vars);
        for t in dto.terms {
            if t.exp.len() != dto.vars {
                return Err(Error::DimensionMismatch {
                    expected: dto.vars,
                    got: t.exp.len(),
                });
            }
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            out.add_term(ExponentVector::new(t.exp), coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct SimpleTermDto {
    numerator: PolyDto,
    denominator: Vec<Vec<i64>>,
}

impl From<SimpleTerm> for SimpleTermDto {
    fn from(t: SimpleTerm) -> Self {
        SimpleTermDto {
            numerator: t.numerator.into(),
            denominator: t
                .denominator
                .iter()
                .map(|d| d.entries().to_vec())
                .collect(),
        }
    }
}

impl TryFrom<SimpleTermDto> for SimpleTerm {
    type Error = Error;

    fn try_from(dto: SimpleTermDto) -> Result<Self> {
        let numerator: MultiPolynomial = dto.numerator.try_into()?;
        let mut denominator = Vec::with_capacity(dto.denominator.len());
        for d in dto.denominator {
            if d.len() != numerator.vars() {
                return Err(Error::DimensionMismatch {
                    expected: numerator.vars(),
                    got: d.len(),
                });
            }
            let ev = ExponentVector::new(d);
            if ev.is_zero() {
                return Err(Error::Parse("zero denominator factor".into()));
            }
            denominator.push(ev);
        }
        Ok(SimpleTerm::new(numerator, denominator))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalGFDto {
    vars: usize,
    terms: Vec<SimpleTermDto>,
}

impl From<RationalGF> for RationalGFDto {
    fn from(g: RationalGF) -> Self {
        RationalGFDto {
            vars: g.vars,
            terms: g.terms.into_iter().map(Into::into).collect(),
        }
    }
}

impl TryFrom<RationalGFDto> for RationalGF {
    type Error = Error;

    fn try_from(dto: RationalGFDto) -> Result<Self> {
        let mut terms = Vec::with_capacity(dto.terms.len());
        for t in dto.terms {
            let term: SimpleTerm = t.try_into()?;
            if term.numerator.vars() != dto.vars {
                return Err(Error::DimensionMismatch {
                    expected: dto.vars,
                    got: term.numerator.vars(),
                });
            }
            terms.push(term);
        }
        Ok(RationalGF {
            vars: dto.vars,
            terms,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesDto {
    vars: usize,
    order: i64,
    coeffs: Vec<TermEntryDto>,
}

impl From<TruncatedSeries> for SeriesDto {
    fn from(s: TruncatedSeries) -> Self {
        SeriesDto {
            vars: s.vars,
            order: s.order,
            coeffs: s
                .coeffs
                .iter()
                .map(|(e, c)| TermEntryDto {
                    exp: e.entries().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesDto> for TruncatedSeries {
    type Error = Error;

    fn try_from(dto: SeriesDto) -> Result<Self> {
        let mut out = TruncatedSeries::zero(dto.vars, dto.order);
        for t in dto.coeffs {
            if t.exp.len() != dto.vars {
                return Err(Error::DimensionMismatch {
                    expected: dto.vars,
                    got: t.exp.len(),
                });
            }
            let ev = ExponentVector::new(t.exp);
            if !ev.is_nonneg() || ev.total_degree() > dto.order {
                return Err(Error::Parse("series exponent outside truncation".into()));
            }
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            out.add_coefficient(ev, coeff);
        }
        Ok(out)
    }
}

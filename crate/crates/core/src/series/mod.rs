//! Truncated Laurent series in `t = q^(1/24)` with exact rational coefficients.
//!
//! Exponents are stored in t-units, so `q` is `t^24`, `q^(1/2)` is `t^12`,
//! `q^(1/8)` is `t^3` and `q^(1/24)` is `t`. A series with truncation order
//! `trunc` is known exactly for exponents `< trunc`; everything at or above is
//! unknown.

pub mod modular;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{coefficient_prefix, join_terms, to_fraction_string, Rational};

/// Number of t-units per unit power of q.
pub const LATTICE: i64 = 24;

/// Default truncation order, in powers of q.
pub const DEFAULT_ORDER: i64 = 24;

#[derive(Clone, Debug)]
pub struct FracSeries {
    terms: BTreeMap<i64, Rational>,
    trunc: i64,
}

impl FracSeries {
    pub fn zero(trunc: i64) -> Self {
        FracSeries { terms: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: i64) -> Self {
        Self::monomial(c, 0, trunc)
    }

    /// `c * t^exp + O(t^trunc)`.
    pub fn monomial(c: Rational, exp: i64, trunc: i64) -> Self {
        Self::from_terms([(exp, c)], trunc)
    }

    /// Builds a series from `(t-exponent, coefficient)` pairs, summing repeated
    /// exponents and dropping zeros and anything at or beyond `trunc`.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>, trunc: i64) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e < trunc {
                *map.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        FracSeries { terms: map, trunc }
    }

    /// Builds `sum_n coeffs[n] q^n + O(q^order)`.
    pub fn from_q_coeffs(coeffs: &[Rational], order: i64) -> Self {
        Self::from_terms(
            coeffs.iter().enumerate().map(|(n, c)| (n as i64 * LATTICE, c.clone())),
            order * LATTICE,
        )
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Valuation, or the truncation order for a series that vanishes in its window.
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^exp`. Fails when `exp` lies outside the window.
    pub fn coeff(&self, exp: i64) -> Result<Rational> {
        if exp >= self.trunc {
            return Err(Error::InsufficientPrecision { needed: exp, trunc: self.trunc });
        }
        Ok(self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of `q^n` (i.e. `t^(24 n)`).
    pub fn q_coeff(&self, n: i64) -> Result<Rational> {
        self.coeff(n * LATTICE)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowers the truncation order to `trunc` (never raises it).
    pub fn truncate(&self, trunc: i64) -> Self {
        let trunc = trunc.min(self.trunc);
        FracSeries {
            terms: self.terms.range(..trunc).map(|(e, c)| (*e, c.clone())).collect(),
            trunc,
        }
    }

    /// Multiplies by `t^by`.
    pub fn shift(&self, by: i64) -> Self {
        FracSeries {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
            trunc: self.trunc + by,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        FracSeries {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Applies `f(exponent, coefficient)` termwise, keeping the window.
    pub fn map_terms(&self, mut f: impl FnMut(i64, &Rational) -> Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, f(*e, c))), self.trunc)
    }

    /// True when every stored exponent is divisible by `step`.
    pub fn exponents_divisible_by(&self, step: i64) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(step) == 0)
    }

    /// Multiplicative inverse up to truncation. The result has valuation
    /// `-v` and keeps the relative precision `trunc - v` of the input.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroSeries)?;
        let lead = &self.terms[&v];
        let lead_inv = lead.recip();
        let precision = (self.trunc - v) as usize;
        // Normalized tail u_j for j > 0 in 1 + sum u_j t^j.
        let tail: Vec<(usize, Rational)> = self
            .terms
            .range(v + 1..)
            .map(|(e, c)| ((e - v) as usize, c * &lead_inv))
            .collect();
        let mut w: Vec<Rational> = Vec::with_capacity(precision);
        for k in 0..precision {
            if k == 0 {
                w.push(Rational::one());
                continue;
            }
            let mut acc = Rational::zero();
            for (j, u) in &tail {
                if *j > k {
                    break;
                }
                let prev = &w[k - j];
                if !prev.is_zero() {
                    acc -= u * prev;
                }
            }
            w.push(acc);
        }
        Ok(Self::from_terms(
            w.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c * &lead_inv)),
            self.trunc - 2 * v,
        ))
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.trunc - self.effective_valuation());
        }
        let mut result: Option<FracSeries> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = &base * &base;
        }
        result.expect("n > 0")
    }

    /// Integer power with negative exponents going through [`Self::inverse`].
    pub fn powi(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inverse()?.pow(n.unsigned_abs()))
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "series",
            "lattice_denominator": LATTICE,
            "trunc": self.trunc,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| json!([e, to_fraction_string(c)]))
                .collect::<Vec<_>>(),
        })
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut terms: BTreeMap<i64, Rational> =
            self.terms.range(..trunc).map(|(e, c)| (*e, c.clone())).collect();
        for (e, c) in other.terms.range(..trunc) {
            let slot = terms.entry(*e).or_insert_with(Rational::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FracSeries { terms, trunc }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let va = self.effective_valuation();
        let vb = other.effective_valuation();
        let trunc = (self.trunc + vb).min(other.trunc + va);
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let lo = va + vb;
        let width = (trunc - lo).max(0) as usize;
        // Convolve integer numerators over a common denominator; this avoids a
        // gcd per product.
        let (na, da) = integer_terms(&self.terms, trunc - vb);
        let (nb, db) = integer_terms(&other.terms, trunc - va);
        let mut dense: Vec<BigInt> = vec![BigInt::zero(); width];
        for (ea, ca) in &na {
            let room = trunc - ea;
            for (eb, cb) in nb.iter().take_while(|(eb, _)| *eb < room) {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        let denom = da * db;
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, Rational::new(c, denom.clone())))
            .collect();
        FracSeries { terms, trunc }
    }
}

/// Terms below `bound` rescaled to integers, with the common denominator.
fn integer_terms(terms: &BTreeMap<i64, Rational>, bound: i64) -> (Vec<(i64, BigInt)>, BigInt) {
    let mut denom = BigInt::one();
    for c in terms.range(..bound).map(|(_, c)| c) {
        if !c.denom().is_one() {
            denom = denom.lcm(c.denom());
        }
    }
    let scaled = terms
        .range(..bound)
        .map(|(e, c)| (*e, c.numer() * (&denom / c.denom())))
        .collect();
    (scaled, denom)
}

/// Equality on the common window `min(trunc)`.
impl PartialEq for FracSeries {
    fn eq(&self, other: &Self) -> bool {
        let w = self.trunc.min(other.trunc);
        self.terms.range(..w).eq(other.terms.range(..w))
    }
}

impl<'a> Add<&'a FracSeries> for &'a FracSeries {
    type Output = FracSeries;
    fn add(self, rhs: &FracSeries) -> FracSeries {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a FracSeries> for &'a FracSeries {
    type Output = FracSeries;
    fn sub(self, rhs: &FracSeries) -> FracSeries {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a FracSeries> for &'a FracSeries {
    type Output = FracSeries;
    fn mul(self, rhs: &FracSeries) -> FracSeries {
        self.mul_impl(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<FracSeries> for FracSeries {
            type Output = FracSeries;
            fn $m(self, rhs: FracSeries) -> FracSeries { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FracSeries> for FracSeries {
            type Output = FracSeries;
            fn $m(self, rhs: &FracSeries) -> FracSeries { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for &FracSeries {
    type Output = FracSeries;
    fn neg(self) -> FracSeries {
        FracSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            trunc: self.trunc,
        }
    }
}

impl Neg for FracSeries {
    type Output = FracSeries;
    fn neg(self) -> FracSeries {
        -&self
    }
}

/// `q^(e/24)` rendered in lowest terms.
pub fn q_power_string(exp: i64) -> String {
    let g = num_integer::gcd(exp, LATTICE);
    let (n, d) = (exp / g, LATTICE / g);
    match (n, d) {
        (0, _) => String::new(),
        (1, 1) => "q".to_string(),
        (n, 1) => format!("q^{n}"),
        (n, d) => format!("q^({n}/{d})"),
    }
}

impl fmt::Display for FracSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(bool, String)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let q = q_power_string(*e);
                let (neg, coef) = coefficient_prefix(c, !q.is_empty());
                let body = match (coef.is_empty(), q.is_empty()) {
                    (true, _) => q,
                    (false, true) => coef,
                    (false, false) => format!("{coef}*{q}"),
                };
                (neg, body)
            })
            .collect();
        let tail = q_power_string(self.trunc);
        pieces.push((false, format!("O({})", if tail.is_empty() { "1".into() } else { tail })));
        write!(f, "{}", join_terms(pieces))
    }
}

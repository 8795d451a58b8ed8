//! Polynomials whose coefficients are truncated q-series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::poly::{Monomial, Poly, Vars};
use crate::rational::{rat, Rational};
use crate::series::FracSeries;

/// A polynomial in the variables `V` with [`FracSeries`] coefficients.
///
/// `trunc` is the smallest truncation order among all coefficients that ever
/// contributed, including ones that cancelled to zero; a missing monomial
/// therefore means "zero below `trunc`".
pub struct SeriesPoly<V: Vars> {
    terms: BTreeMap<Monomial, FracSeries>,
    trunc: i64,
    _vars: PhantomData<V>,
}

impl<V: Vars> Clone for SeriesPoly<V> {
    fn clone(&self) -> Self {
        SeriesPoly { terms: self.terms.clone(), trunc: self.trunc, _vars: PhantomData }
    }
}

impl<V: Vars> fmt::Debug for SeriesPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeriesPoly({self})")
    }
}

impl<V: Vars> SeriesPoly<V> {
    pub fn zero(trunc: i64) -> Self {
        SeriesPoly { terms: BTreeMap::new(), trunc, _vars: PhantomData }
    }

    pub fn constant(s: FracSeries) -> Self {
        Self::term(Monomial::one(), s)
    }

    pub fn term(m: Monomial, s: FracSeries) -> Self {
        Self::from_terms([(m, s)], i64::MAX)
    }

    /// Sums the given terms; `trunc` caps the truncation order from above.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, FracSeries)>, trunc: i64) -> Self {
        let mut acc: HashMap<Monomial, FracSeries> = HashMap::new();
        let mut trunc = trunc;
        for (m, s) in terms {
            trunc = trunc.min(s.trunc());
            match acc.remove(&m) {
                Some(prev) => {
                    acc.insert(m, &prev + &s);
                }
                None => {
                    acc.insert(m, s);
                }
            }
        }
        Self::collect(acc, trunc)
    }

    fn collect(acc: HashMap<Monomial, FracSeries>, trunc: i64) -> Self {
        let mut trunc = trunc;
        let mut terms = BTreeMap::new();
        for (m, s) in acc {
            trunc = trunc.min(s.trunc());
            if !s.is_zero() {
                terms.insert(m, s);
            }
        }
        SeriesPoly { terms, trunc, _vars: PhantomData }
    }

    /// Embeds a rational polynomial with constant coefficient series.
    pub fn from_poly(p: &Poly<V>, trunc: i64) -> Self {
        Self::from_terms(
            p.terms().map(|(m, c)| (*m, FracSeries::constant(c.clone(), trunc))),
            trunc,
        )
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FracSeries)> + '_ {
        self.terms.iter()
    }

    /// Coefficient of `m` (the zero series when absent).
    pub fn coeff(&self, m: &Monomial) -> FracSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| FracSeries::zero(self.trunc))
    }

    pub fn map_series(&self, mut f: impl FnMut(&Monomial, &FracSeries) -> FracSeries) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, s)| (*m, f(m, s))), self.trunc)
    }

    pub fn scale_series(&self, s: &FracSeries) -> Self {
        self.map_series(|_, c| c * s)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_series(|_, s| s.scale(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::constant(FracSeries::one(i64::MAX / 4));
        for _ in 0..n {
            result = &result * self;
        }
        if n == 0 {
            result.trunc = self.trunc;
        }
        result
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut trunc = self.trunc;
        let terms = self.terms.iter().filter_map(|(m, s)| {
            let e = m.exp(i);
            if e == 0 {
                trunc = trunc.min(s.trunc());
                None
            } else {
                Some((m.with(i, e - 1), s.scale(&rat(e as i64))))
            }
        });
        let collected: Vec<_> = terms.collect();
        Self::from_terms(collected, trunc)
    }

    /// Substitutes `images[i]` for variable `i`; exponents must be nonnegative.
    pub fn substitute<W: Vars>(&self, images: &[SeriesPoly<W>]) -> SeriesPoly<W> {
        assert_eq!(images.len(), V::count());
        let mut powers: HashMap<(usize, i32), SeriesPoly<W>> = HashMap::new();
        let mut acc: HashMap<Monomial, FracSeries> = HashMap::new();
        let mut trunc = self.trunc;
        for (m, s) in &self.terms {
            let mut term = SeriesPoly::<W>::constant(s.clone());
            for (i, image) in images.iter().enumerate() {
                let e = m.exp(i);
                assert!(e >= 0, "substitution requires nonnegative exponents");
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((i, e)).or_insert_with(|| image.pow(e as u32));
                term = &term * pw;
            }
            trunc = trunc.min(term.trunc);
            for (k, v) in term.terms {
                match acc.remove(&k) {
                    Some(prev) => acc.insert(k, &prev + &v),
                    None => acc.insert(k, v),
                };
            }
        }
        SeriesPoly::collect(acc, trunc)
    }

    /// Applies `f` to each exponent vector; `f` must be injective.
    pub fn map_monomials<W: Vars>(&self, f: impl Fn(&Monomial) -> Monomial) -> SeriesPoly<W> {
        SeriesPoly {
            terms: self.terms.iter().map(|(m, s)| (f(m), s.clone())).collect(),
            trunc: self.trunc,
            _vars: PhantomData,
        }
    }

    pub fn to_json(&self) -> Value {
        let n = V::count();
        json!({
            "variables": V::NAMES,
            "trunc": self.trunc,
            "terms": self
                .terms
                .iter()
                .map(|(m, s)| json!({"monomial": m.exponents(n), "series": s.to_json()}))
                .collect::<Vec<_>>(),
        })
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut acc: HashMap<Monomial, FracSeries> =
            self.terms.iter().map(|(m, s)| (*m, s.clone())).collect();
        for (m, s) in &other.terms {
            let next = match acc.remove(m) {
                Some(prev) if negate => &prev - s,
                Some(prev) => &prev + s,
                None if negate => -s,
                None => s.clone(),
            };
            acc.insert(*m, next);
        }
        Self::collect(acc, self.trunc.min(other.trunc))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut acc: HashMap<Monomial, FracSeries> = HashMap::new();
        let mut trunc = i64::MAX;
        for (ma, sa) in &self.terms {
            for (mb, sb) in &other.terms {
                let p = sa * sb;
                trunc = trunc.min(p.trunc());
                let key = ma.mul(mb);
                match acc.remove(&key) {
                    Some(prev) => acc.insert(key, &prev + &p),
                    None => acc.insert(key, p),
                };
            }
        }
        if self.is_zero() || other.is_zero() {
            trunc = self.trunc.min(other.trunc);
        }
        let mut out = Self::collect(acc, trunc);
        if out.is_zero() {
            out.trunc = out.trunc.min(self.trunc.min(other.trunc));
        }
        out
    }
}

/// Coefficientwise equality on each coefficient's common window.
impl<V: Vars> PartialEq for SeriesPoly<V> {
    fn eq(&self, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<&Monomial> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|m| self.coeff(m) == other.coeff(m))
    }
}

impl<V: Vars> fmt::Display for SeriesPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, s)| {
                let mono = Poly::<V>::monomial_string(m);
                if mono.is_empty() {
                    format!("({s})")
                } else {
                    format!("({s})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a, V: Vars> Add<&'a SeriesPoly<V>> for &'a SeriesPoly<V> {
    type Output = SeriesPoly<V>;
    fn add(self, rhs: &SeriesPoly<V>) -> SeriesPoly<V> {
        self.add_impl(rhs, false)
    }
}

impl<'a, V: Vars> Sub<&'a SeriesPoly<V>> for &'a SeriesPoly<V> {
    type Output = SeriesPoly<V>;
    fn sub(self, rhs: &SeriesPoly<V>) -> SeriesPoly<V> {
        self.add_impl(rhs, true)
    }
}

impl<'a, V: Vars> Mul<&'a SeriesPoly<V>> for &'a SeriesPoly<V> {
    type Output = SeriesPoly<V>;
    fn mul(self, rhs: &SeriesPoly<V>) -> SeriesPoly<V> {
        self.mul_impl(rhs)
    }
}

impl<V: Vars> Neg for &SeriesPoly<V> {
    type Output = SeriesPoly<V>;
    fn neg(self) -> SeriesPoly<V> {
        self.scale(&rat(-1))
    }
}

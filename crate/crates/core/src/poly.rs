//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`Poly`] is parameterized by a marker type implementing [`Vars`], which
//! fixes the variable names and count. Exponents are signed so that the few
//! places needing a controlled denominator (a power of `c0`, `b0`, `alpha_0`,
//! `E4`, ...) can use the same type; [`Poly::is_polynomial`] tells the two
//! apart.
//!
//! Terms are kept in canonical graded-lexicographic order, largest first, with
//! the first variable of the set the most significant.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{coefficient_prefix, join_terms, rat, to_fraction_string, Rational};

pub const MAX_VARS: usize = 10;

/// A fixed, named set of polynomial variables.
pub trait Vars: Copy + Clone + fmt::Debug + Default + Eq + Hash + Send + Sync + 'static {
    const NAMES: &'static [&'static str];

    fn count() -> usize {
        Self::NAMES.len()
    }

    fn index_of(name: &str) -> Option<usize> {
        Self::NAMES.iter().position(|n| *n == name)
    }
}

/// Exponent vector. Slots past the variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [i32; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(index: usize) -> Self {
        let mut m = [0; MAX_VARS];
        m[index] = 1;
        Monomial(m)
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Weighted degree `sum w_i e_i`.
    pub fn weighted(&self, weights: &[i32]) -> i32 {
        weights.iter().zip(self.0.iter()).map(|(w, e)| w * e).sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|e| *e >= 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn inverse(&self) -> Self {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a = -*a;
        }
        Monomial(m)
    }

    pub fn with(&self, i: usize, e: i32) -> Self {
        let mut m = self.0;
        m[i] = e;
        Monomial(m)
    }

    pub fn exponents(&self, n: usize) -> &[i32] {
        &self.0[..n]
    }

    fn grlex(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Canonical order: descending graded lex, so `BTreeMap` iteration lists the
/// largest monomial first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.grlex(self)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|e| *e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

pub struct Poly<V: Vars> {
    terms: BTreeMap<Monomial, Rational>,
    _vars: PhantomData<V>,
}

impl<V: Vars> Clone for Poly<V> {
    fn clone(&self) -> Self {
        Poly { terms: self.terms.clone(), _vars: PhantomData }
    }
}

impl<V: Vars> PartialEq for Poly<V> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<V: Vars> Eq for Poly<V> {}

impl<V: Vars> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<V: Vars> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Vars> Poly<V> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new(), _vars: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(index: usize) -> Self {
        assert!(index < V::count());
        Self::term(Rational::one(), Monomial::var(index))
    }

    /// Variable looked up by name; panics on an unknown name.
    pub fn named(name: &str) -> Self {
        let i = V::index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(i)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms, _vars: PhantomData }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Poly { terms: map, _vars: PhantomData }
    }

    fn from_accumulator(acc: HashMap<Monomial, Rational>) -> Self {
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            _vars: PhantomData,
        }
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

    /// Terms in canonical order (largest monomial first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    /// Smallest exponent of variable `i` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.exp(i)).min().unwrap_or(0)
    }

    pub fn max_exponent(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// The common value of `f(monomial)` over all terms, if there is one.
    /// `Ok(None)` for the zero polynomial.
    pub fn homogeneous_value(&self, f: impl Fn(&Monomial) -> i32) -> Result<Option<i32>> {
        let mut seen = None;
        for m in self.terms.keys() {
            let d = f(m);
            match seen {
                None => seen = Some(d),
                Some(s) if s != d => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(seen)
    }

    pub fn homogeneous_weight(&self, weights: &[i32]) -> Result<Option<i32>> {
        self.homogeneous_value(|m| m.weighted(weights))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
            _vars: PhantomData,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
            _vars: PhantomData,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; a negative exponent is only defined for a single term.
    pub fn powi(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        Ok(self.monomial_inverse()?.pow(n.unsigned_abs()))
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 => Ok(Self::term(c.recip(), m.inverse())),
            _ => Err(Error::NotPolynomial(format!("cannot invert {self}"))),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.exp(i) != 0).map(|(m, c)| {
            let e = m.exp(i);
            (m.with(i, e - 1), c * rat(e as i64))
        }))
    }

    /// Substitutes `images[i]` for variable `i`, landing in another variable set.
    /// Negative exponents are allowed when the corresponding image is a single term.
    pub fn substitute<W: Vars>(&self, images: &[Poly<W>]) -> Result<Poly<W>> {
        assert_eq!(images.len(), V::count());
        let mut cache: HashMap<(usize, i32), Poly<W>> = HashMap::new();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = Poly::<W>::constant(c.clone());
            for (i, image) in images.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if !cache.contains_key(&(i, e)) {
                    cache.insert((i, e), image.powi(e)?);
                }
                term = &term * &cache[&(i, e)];
            }
            for (k, v) in term.terms {
                *acc.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
        Ok(Poly::from_accumulator(acc))
    }

    /// Evaluates at rational values; all exponents must be nonnegative or the
    /// corresponding value nonzero.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), V::count());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                t *= crate::rational::rat_pow(x, m.exp(i));
            }
            acc += t;
        }
        acc
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
            _vars: PhantomData,
        }
    }

    /// Reinterprets the exponent vectors in a different variable set of the
    /// same size (e.g. `alpha_i -> a_i`).
    pub fn rename<W: Vars>(&self) -> Poly<W> {
        assert!(W::count() >= V::count());
        Poly { terms: self.terms.clone(), _vars: PhantomData }
    }

    pub fn to_json(&self) -> Value {
        let n = V::count();
        json!({
            "variables": V::NAMES,
            "terms": self
                .terms
                .iter()
                .map(|(m, c)| json!([m.exponents(n), to_fraction_string(c)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn monomial_string(m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in V::NAMES.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push((*name).to_string()),
                e if e < 0 => parts.push(format!("{name}^({e})")),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let slot = terms.entry(*m).or_insert_with(Rational::zero);
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
            if slot.is_zero() {
                terms.remove(m);
            }
        }
        Poly { terms, _vars: PhantomData }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self::from_accumulator(acc)
    }
}

impl<V: Vars> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces = self.terms.iter().map(|(m, c)| {
            let mono = Self::monomial_string(m);
            let (neg, coef) = coefficient_prefix(c, !mono.is_empty());
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coef,
                (false, false) => format!("{coef}*{mono}"),
            };
            (neg, body)
        });
        write!(f, "{}", join_terms(pieces))
    }
}

impl<'a, V: Vars> Add<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        self.add_impl(rhs, false)
    }
}

impl<'a, V: Vars> Sub<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        self.add_impl(rhs, true)
    }
}

impl<'a, V: Vars> Mul<&'a Poly<V>> for &'a Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        self.mul_impl(rhs)
    }
}

impl<V: Vars> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        &self + &rhs
    }
}

impl<V: Vars> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<V: Vars> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

impl<V: Vars> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        self.scale(&-Rational::one())
    }
}

impl<V: Vars> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

impl<V: Vars> std::str::FromStr for Poly<V> {
    type Err = Error;

    /// Parses expressions such as `3/2*a0^2*b1 - (a2 + b0)^2`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens: &tokens, pos: 0, _vars: PhantomData::<V> };
        let p = parser.expr()?;
        if parser.pos != tokens.len() {
            return Err(Error::Parse(format!("unexpected {:?}", tokens[parser.pos])));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n: num_bigint::BigInt = text.parse().map_err(|_| Error::Parse(text.clone()))?;
            out.push(Token::Num(Rational::from_integer(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, V: Vars> {
    tokens: &'a [Token],
    pos: usize,
    _vars: PhantomData<V>,
}

impl<V: Vars> Parser<'_, V> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<V>> {
        let mut acc = if self.eat('-') { -self.term()? } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<V>> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                let inv = match d.terms().next() {
                    Some((m, c)) if d.len() == 1 && *m == Monomial::one() => c.recip(),
                    _ => return Err(Error::Parse("can only divide by a nonzero number".into())),
                };
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly<V>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = match self.tokens.get(self.pos) {
            Some(Token::Num(n)) if n.is_integer() => {
                self.pos += 1;
                let e: i32 = n.to_integer().try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                if neg { -e } else { e }
            }
            other => return Err(Error::Parse(format!("expected an integer exponent, found {other:?}"))),
        };
        if paren && !self.eat(')') {
            return Err(Error::Parse("missing closing parenthesis".into()));
        }
        base.powi(e)
    }

    fn atom(&mut self) -> Result<Poly<V>> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Self::constant(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let i = V::index_of(&name).ok_or_else(|| {
                    Error::Parse(format!("unknown variable {name}; expected one of {}", V::NAMES.join(", ")))
                })?;
                Ok(Poly::var(i))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }

    fn constant(c: Rational) -> Poly<V> {
        Poly::constant(c)
    }
}

/// Declares a [`Vars`] marker type.
#[macro_export]
macro_rules! declare_vars {
    ($(#[$meta:meta])* $name:ident => [$($var:expr),* $(,)?]) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
        pub struct $name;
        impl $crate::poly::Vars for $name {
            const NAMES: &'static [&'static str] = &[$($var),*];
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    declare_vars!(XYZ => ["x", "y", "z"]);
    type P = Poly<XYZ>;

    fn x() -> P {
        P::var(0)
    }
    fn y() -> P {
        P::var(1)
    }

    #[test]
    fn canonical_order_is_descending_grlex() {
        let p = &(&x() + &y().pow(2)) + &(&x() * &y());
        let order: Vec<_> = p.terms().map(|(m, _)| *m).collect();
        assert_eq!(
            order,
            vec![
                Monomial::from_exponents(&[1, 1, 0]),
                Monomial::from_exponents(&[0, 2, 0]),
                Monomial::from_exponents(&[1, 0, 0]),
            ]
        );
        assert_eq!(p.to_string(), "x*y + y^2 + x");
    }

    #[test]
    fn laurent_substitution() {
        // x -> 2y, y -> y^-1 * z
        let images = [y().scale(&rat(2)), P::term(rat(1), Monomial::from_exponents(&[0, -1, 1])), P::var(2)];
        let p = &x().pow(2) * &y();
        let r = p.substitute(&images).unwrap();
        assert_eq!(r, P::term(rat(4), Monomial::from_exponents(&[0, 1, 1])));
        let bad = P::term(rat(1), Monomial::from_exponents(&[-1, 0, 0]));
        let images = [&x() + &y(), y(), P::var(2)];
        assert!(bad.substitute(&images).is_err());
    }

    #[test]
    fn parse_expressions() {
        let p: P = "3/2*x^2*y - (x + z)^2 + 4".parse().unwrap();
        let expected = &(&(&x().pow(2) * &y()).scale(&ratio(3, 2)) - &(&x() + &P::var(2)).pow(2)) + &P::constant(rat(4));
        assert_eq!(p, expected);
        let q: P = "-x^-2*y".parse().unwrap();
        assert_eq!(q, P::term(rat(-1), Monomial::from_exponents(&[-2, 1, 0])));
        assert_eq!(q.to_string().parse::<P>().unwrap(), q);
        assert!("w + 1".parse::<P>().is_err());
        assert!("x / y".parse::<P>().is_err());
        assert!("(x".parse::<P>().is_err());
        let shown: P = p.to_string().parse().unwrap();
        assert_eq!(shown, p);
    }

    #[test]
    fn derivative_and_display() {
        let p = &x().pow(3).scale(&ratio(1, 2)) - &(&x() * &y());
        assert_eq!(p.derivative(0).to_string(), "3/2*x^2 - y");
        assert_eq!(P::zero().to_string(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec(((0i32..3, 0i32..3, 0i32..3), -5i64..5), 0..6).prop_map(|ts| {
            P::from_terms(ts.into_iter().map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), rat(k))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
            let lhs = (&a * &b).derivative(1);
            let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

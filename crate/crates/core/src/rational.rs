//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Rational::from_integer(acc)
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Integer power; negative exponents invert.
pub fn rat_pow(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Serialized form used everywhere in JSON output: always `"num/den"`.
pub fn to_fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"n"`, `"-n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Renders `c` as a coefficient in front of a monomial string.
/// Returns the sign separately so callers can join terms with ` + ` / ` - `.
pub(crate) fn coefficient_prefix(c: &Rational, has_monomial: bool) -> (bool, String) {
    let negative = c.is_negative();
    let a = c.abs();
    let body = if has_monomial && a.is_one() {
        String::new()
    } else if a.is_integer() {
        format!("{}", a.numer())
    } else {
        format!("{}/{}", a.numer(), a.denom())
    };
    (negative, body)
}

pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (negative, body)) in terms.into_iter().enumerate() {
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

//! Polynomials in `z1..z4` and in the W(D4) generators `I2, I4, I6, It4`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::declare_vars;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{Monomial, Poly};
use crate::rational::{ratio, Rational};

declare_vars!(
    /// Coordinates `z1..z4`.
    ZVars => ["z1", "z2", "z3", "z4"]
);
declare_vars!(
    /// W(D4) generators; `It4` is the Pfaffian-type generator `z1 z2 z3 z4`.
    IVars => ["I2", "I4", "I6", "It4"]
);

pub type ZPoly = Poly<ZVars>;
pub type IPoly = Poly<IVars>;

pub const I2: usize = 0;
pub const I4: usize = 1;
pub const I6: usize = 2;
pub const IT4: usize = 3;

/// Polynomial degrees of `I2, I4, I6, It4`.
pub const I_DEGREES: [i32; 4] = [2, 4, 6, 4];

pub fn z(i: usize) -> ZPoly {
    ZPoly::var(i)
}

/// `I2 = sum z_i^2`, `I4 = sum_{i<j} z_i^2 z_j^2`, `I6 = sum_{i<j<k} z_i^2 z_j^2 z_k^2`,
/// `It4 = z1 z2 z3 z4`.
pub fn weyl_generators() -> [ZPoly; 4] {
    let sq: Vec<ZPoly> = (0..4).map(|i| z(i).pow(2)).collect();
    let mut i2 = ZPoly::zero();
    let mut i4 = ZPoly::zero();
    let mut i6 = ZPoly::zero();
    for i in 0..4 {
        i2 = &i2 + &sq[i];
        for j in i + 1..4 {
            i4 = &i4 + &(&sq[i] * &sq[j]);
            for k in j + 1..4 {
                i6 = &i6 + &(&(&sq[i] * &sq[j]) * &sq[k]);
            }
        }
    }
    let it4 = ZPoly::term(Rational::one(), Monomial::from_exponents(&[1, 1, 1, 1]));
    [i2, i4, i6, it4]
}

pub fn ipoly_to_zpoly(p: &IPoly) -> ZPoly {
    p.substitute(&weyl_generators()).expect("I-polynomials have no negative exponents")
}

pub fn ipoly_degree(m: &Monomial) -> i32 {
    m.weighted(&I_DEGREES)
}

/// All I-monomials of polynomial degree `m`, in canonical order.
pub fn i_monomials(m: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if m < 0 || m % 2 != 0 {
        return out;
    }
    for c in 0..=m / 6 {
        for b in 0..=(m - 6 * c) / 4 {
            for d in 0..=(m - 6 * c - 4 * b) / 4 {
                let rest = m - 6 * c - 4 * b - 4 * d;
                out.push(Monomial::from_exponents(&[rest / 2, b, c, d]));
            }
        }
    }
    out.sort();
    out
}

/// Rewrites a homogeneous W(D4)-invariant polynomial in the generators.
pub fn zpoly_to_ipoly(p: &ZPoly) -> Result<IPoly> {
    let Some(degree) = p.homogeneous_value(Monomial::total_degree)? else {
        return Ok(IPoly::zero());
    };
    let basis = i_monomials(degree);
    if basis.is_empty() {
        return Err(Error::NotInvariant);
    }
    let expansions: Vec<ZPoly> = basis
        .iter()
        .map(|m| ipoly_to_zpoly(&IPoly::term(Rational::one(), *m)))
        .collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for zm in expansions.iter().flat_map(|e| e.terms().map(|(m, _)| *m)).chain(p.terms().map(|(m, _)| *m)) {
        let next = rows.len();
        rows.entry(zm).or_insert(next);
    }
    let mut a = RationalMatrix::zeros(rows.len(), basis.len());
    for (col, e) in expansions.iter().enumerate() {
        for (m, c) in e.terms() {
            a.set(rows[m], col, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (m, c) in p.terms() {
        rhs[rows[m]] = c.clone();
    }
    let (x, free) = a.solve(&rhs).ok_or(Error::NotInvariant)?;
    debug_assert_eq!(free, 0, "the W(D4) generators are algebraically independent");
    Ok(IPoly::from_terms(basis.into_iter().zip(x)))
}

/// Determinant by cofactor expansion along the first row, for any commutative
/// ring whose elements support by-reference arithmetic.
pub fn cofactor_determinant<T>(m: &[Vec<T>]) -> T
where
    T: Clone,
    for<'a> &'a T: std::ops::Add<&'a T, Output = T>
        + std::ops::Sub<&'a T, Output = T>
        + std::ops::Mul<&'a T, Output = T>,
{
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Option<T> = None;
    for j in 0..n {
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_determinant(&minor);
        acc = Some(match acc {
            None => term,
            Some(a) if j % 2 == 0 => &a + &term,
            Some(a) => &a - &term,
        });
    }
    acc.expect("n > 0")
}

/// `det(d f_i / d z_j)`.
pub fn jacobian_z(fs: &[ZPoly; 4]) -> ZPoly {
    let m: Vec<Vec<ZPoly>> = fs.iter().map(|f| (0..4).map(|j| f.derivative(j)).collect()).collect();
    cofactor_determinant(&m)
}

/// `prod_{i<j} (z_i^2 - z_j^2)`.
pub fn vandermonde_squares() -> ZPoly {
    let mut acc = ZPoly::one();
    for i in 0..4 {
        for j in i + 1..4 {
            acc = &acc * &(&z(i).pow(2) - &z(j).pow(2));
        }
    }
    acc
}

/// The building blocks `T1, T2, T3`, which satisfy `T1 + T2 + T3 = 0`.
pub fn t_blocks() -> [IPoly; 3] {
    let v = |i| IPoly::var(i);
    let i2sq = v(I2).pow(2);
    let t1 = &v(I4).scale(&ratio(1, 6)) - &i2sq.scale(&ratio(1, 24));
    let common = &v(I4).scale(&ratio(-1, 12)) + &i2sq.scale(&ratio(1, 48));
    let half_it4 = v(IT4).scale(&ratio(1, 2));
    [t1, &common - &half_it4, &common + &half_it4]
}

/// `N = I6/4 - I2 I4/24 + I2^3/96`.
pub fn n_ipoly() -> IPoly {
    let v = |i| IPoly::var(i);
    &(&v(I6).scale(&ratio(1, 4)) - &(&v(I2) * &v(I4)).scale(&ratio(1, 24)))
        + &v(I2).pow(3).scale(&ratio(1, 96))
}

//! q-expansions of the classical modular objects: Bernoulli numbers,
//! Eisenstein series, theta constants, Dedekind eta, the discriminant and the
//! weight-2 forms `e_1, e_2, e_3` on Γ(2).
//!
//! Every constructor takes `order` in powers of q and returns a series with
//! truncation `24 * order` in t-units.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::{FracSeries, LATTICE};
use crate::rational::{binomial, rat, ratio, Rational};

/// Bernoulli number `B_k` with `x/(e^x - 1) = sum B_k x^k / k!` (so `B_1 = -1/2`).
pub fn bernoulli(k: u32) -> Rational {
    let k = k as usize;
    let mut table: Vec<Rational> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        if n == 0 {
            table.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += binomial(n as i64 + 1, j as i64) * b;
        }
        table.push(-acc / rat(n as i64 + 1));
    }
    table.pop().expect("table has k + 1 entries")
}

fn divisor_power_sum(n: i64, p: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(p);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(p);
            }
        }
        d += 1;
    }
    acc
}

/// `E_{2n} = 1 - (4n / B_{2n}) sum_k sigma_{2n-1}(k) q^k`, normalized to `1 + O(q)`.
pub fn eisenstein(two_n: u32, order: i64) -> FracSeries {
    assert!(two_n >= 2 && two_n % 2 == 0, "Eisenstein weight must be even and >= 2");
    assert!(order >= 1);
    let factor = -rat(2 * two_n as i64) / bernoulli(two_n);
    let mut coeffs = vec![Rational::one()];
    for k in 1..order {
        coeffs.push(&factor * Rational::from_integer(divisor_power_sum(k, two_n - 1)));
    }
    FracSeries::from_q_coeffs(&coeffs, order)
}

/// Jacobi theta constants `theta_k(0, tau)`, summed over exactly the lattice
/// points whose exponent lies inside the window.
///
/// `theta_1(0, tau)` carries an overall factor of `i`; its real lattice sum is
/// returned, which vanishes identically.
pub fn theta_const(k: u8, order: i64) -> FracSeries {
    assert!(order >= 1);
    let trunc = order * LATTICE;
    let mut terms = Vec::new();
    match k {
        1 | 2 => {
            // (n - 1/2)^2 / 2 = m^2 / 8 with m = 2n - 1 odd: t-exponent 3 m^2.
            let bound = ((trunc - 1) / 3).sqrt();
            for m in (-bound..=bound).filter(|m| m.rem_euclid(2) == 1) {
                let sign = if k == 1 && ((m + 1) / 2).rem_euclid(2) == 1 { -1 } else { 1 };
                terms.push((3 * m * m, rat(sign)));
            }
        }
        3 | 4 => {
            let bound = ((trunc - 1) / 12).sqrt();
            for n in -bound..=bound {
                let sign = if k == 4 && n.rem_euclid(2) == 1 { -1 } else { 1 };
                terms.push((12 * n * n, rat(sign)));
            }
        }
        _ => panic!("theta index must be 1, 2, 3 or 4"),
    }
    debug_assert!(terms.iter().all(|(e, _)| *e < trunc));
    FracSeries::from_terms(terms, trunc)
}

/// `prod_{n >= 1} (1 - q^n)` up to `O(q^order)`.
fn euler_product(order: i64) -> FracSeries {
    let len = order.max(1) as usize;
    let mut coeffs = vec![BigInt::zero(); len];
    coeffs[0] = BigInt::one();
    for n in 1..len {
        for i in (n..len).rev() {
            let prev = coeffs[i - n].clone();
            coeffs[i] -= prev;
        }
    }
    let coeffs: Vec<Rational> = coeffs.into_iter().map(Rational::from_integer).collect();
    FracSeries::from_q_coeffs(&coeffs, order)
}

/// Returns `(eta, Delta)` with `eta = q^(1/24) prod (1 - q^n)` and `Delta = eta^24`.
pub fn eta_delta(order: i64) -> (FracSeries, FracSeries) {
    assert!(order >= 2);
    let trunc = order * LATTICE;
    let product = euler_product(order);
    let eta = product.shift(1).truncate(trunc);
    let delta = product.pow(24).shift(LATTICE).truncate(trunc);
    (eta, delta)
}

pub fn eta(order: i64) -> FracSeries {
    eta_delta(order).0
}

pub fn delta(order: i64) -> FracSeries {
    eta_delta(order).1
}

/// The weight-2 forms `e_i` built from fourth powers of theta constants:
/// `e_1 = (th3^4 + th4^4)/12`, `e_2 = (th2^4 - th4^4)/12`, `e_3 = -(th2^4 + th3^4)/12`.
pub fn e_series(i: u8, order: i64) -> FracSeries {
    assert!(order >= 1);
    let twelfth = ratio(1, 12);
    let th = |k| theta_const(k, order).pow(4);
    let sum = match i {
        1 => th(3) + th(4),
        2 => th(2) - th(4),
        3 => -(th(2) + th(3)),
        _ => panic!("e_i is defined for i = 1, 2, 3"),
    };
    sum.scale(&twelfth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_coeffs(s: &FracSeries, n: i64) -> Vec<Rational> {
        (0..n).map(|k| s.q_coeff(k).unwrap()).collect()
    }

    /// Bernoulli numbers from the defining generating function, by expanding
    /// `x/(e^x - 1)` as the reciprocal of `sum x^j/(j+1)!` with plain series
    /// division (independent of the recurrence used by `bernoulli`).
    fn bernoulli_by_division(k: usize) -> Rational {
        let mut fact = vec![Rational::one()];
        for j in 1..=k + 1 {
            let next = &fact[j - 1] * rat(j as i64);
            fact.push(next);
        }
        let denom: Vec<Rational> = (0..=k).map(|j| fact[j + 1].recip()).collect();
        let mut inv = vec![Rational::one()];
        for n in 1..=k {
            let mut acc = Rational::zero();
            for j in 1..=n {
                acc -= &denom[j] * &inv[n - j];
            }
            inv.push(acc);
        }
        &inv[k] * &fact[k]
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(6), ratio(1, 42));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
        assert_eq!(bernoulli(13), rat(0));
        for k in 0..16 {
            assert_eq!(bernoulli(k as u32), bernoulli_by_division(k), "B_{k}");
        }
    }

    #[test]
    fn eisenstein_leading_terms() {
        assert_eq!(q_coeffs(&eisenstein(4, 3), 3), vec![rat(1), rat(240), rat(2160)]);
        assert_eq!(q_coeffs(&eisenstein(6, 3), 3), vec![rat(1), rat(-504), rat(-16632)]);
        for w in [2, 4, 6, 8, 10, 12] {
            assert_eq!(eisenstein(w, 4).q_coeff(0).unwrap(), rat(1));
        }
        assert_eq!(eisenstein(4, 3).trunc(), 72);
    }

    #[test]
    fn e8_is_e4_squared() {
        let e4 = eisenstein(4, 12);
        assert_eq!(eisenstein(8, 12), e4.pow(2));
    }

    #[test]
    fn theta_leading_terms() {
        let t3 = theta_const(3, 6);
        let expected = FracSeries::from_terms(
            [(0, rat(1)), (12, rat(2)), (48, rat(2)), (108, rat(2))],
            144,
        );
        assert_eq!(t3, expected);
        let t4 = theta_const(4, 6);
        let expected = FracSeries::from_terms(
            [(0, rat(1)), (12, rat(-2)), (48, rat(2)), (108, rat(-2))],
            144,
        );
        assert_eq!(t4, expected);
        let t2 = theta_const(2, 6);
        assert_eq!(t2.valuation(), Some(3));
        assert_eq!(t2.coeff(3).unwrap(), rat(2));
        assert!(theta_const(1, 6).is_zero());
    }

    #[test]
    fn theta_window_boundary_is_exact() {
        // 12 n^2 < 48 admits |n| <= 1 only; exponent 48 itself is outside.
        let t3 = theta_const(3, 2);
        assert_eq!(t3.len(), 2);
        assert_eq!(t3.coeff(12).unwrap(), rat(2));
        let t3 = theta_const(3, 3);
        assert_eq!(t3.coeff(48).unwrap(), rat(2));
    }

    #[test]
    fn jacobi_quartic_identity() {
        let order = 10;
        let lhs = theta_const(3, order).pow(4);
        let rhs = theta_const(2, order).pow(4) + theta_const(4, order).pow(4);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_pentagonal() {
        let (eta, delta) = eta_delta(8);
        let expected = FracSeries::from_terms(
            [(1, rat(1)), (25, rat(-1)), (49, rat(-1)), (121, rat(1)), (169, rat(1))],
            192,
        );
        assert_eq!(eta, expected);
        assert_eq!(
            q_coeffs(&delta, 5),
            vec![rat(0), rat(1), rat(-24), rat(252), rat(-1472)]
        );
    }

    #[test]
    fn delta_inverse_leading_terms() {
        let inv = delta(6).inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-24));
        assert_eq!(inv.coeff(-24).unwrap(), rat(1));
        assert_eq!(inv.coeff(0).unwrap(), rat(24));
    }

    #[test]
    fn e_series_relations() {
        let order = 8;
        let (e1, e2, e3) = (e_series(1, order), e_series(2, order), e_series(3, order));
        assert!((&(&e1 + &e2) + &e3).is_zero());
        assert_eq!(e1.coeff(0).unwrap(), ratio(1, 6));
        assert_eq!(e1.q_coeff(1).unwrap(), rat(4));
        assert_eq!(e1.q_coeff(2).unwrap(), rat(4));
        // q^(1/2) -> -q^(1/2) swaps e2 and e3.
        let flipped = e2.map_terms(|e, c| if (e / 12) % 2 == 0 { c.clone() } else { -c });
        assert_eq!(flipped, e3);
    }
}

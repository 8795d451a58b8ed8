//! Coefficient algebra of the two normal forms of the elliptic curve
//!
//! ```text
//! y^2 = 4x^3 - (a0 u^2 + a2) x - (b0 u^3 + b1 u^2 + b2 u + b3)
//! y^2 = 4x^3 - (c0 u^2 + c1 u + c2) x - (d0 u^3 + d2 u + d3)
//! ```
//!
//! which differ by a translation of `u`. The coefficients generate the rings
//! `Q[a0, a2, b0, b1, b2, b3]` and `Q[c0, c1, c2, d0, d2, d3]`; their
//! intersection is the ring of triality invariants.

use serde_json::{json, Value};

use crate::declare_vars;
use crate::error::Result;
use crate::invariant::{delta_poly, Expansions, Invariant, KlmnPoly, K, L, M, N};
use crate::poly::{Monomial, Poly};
use crate::rational::{binomial, ratio};
use crate::series::FracSeries;
use crate::weyl::cofactor_determinant;

declare_vars!(
    /// Coefficients of the first normal form (`a1` vanishes identically).
    AbVars => ["a0", "a2", "b0", "b1", "b2", "b3"]
);
declare_vars!(
    /// Coefficients of the second normal form (`d1` vanishes identically).
    CdVars => ["c0", "c1", "c2", "d0", "d2", "d3"]
);

pub type CurvePolyAB = Poly<AbVars>;
/// May carry negative powers of `c0`.
pub type CurvePolyCD = Poly<CdVars>;

pub const AB_WEIGHTS: [i32; 6] = [4, 8, 6, 8, 10, 12];
pub const AB_DEGREES: [i32; 6] = [0, 4, 0, 2, 4, 6];
pub const CD_WEIGHTS: [i32; 6] = [4, 6, 8, 6, 10, 12];
pub const CD_DEGREES: [i32; 6] = [0, 2, 4, 0, 4, 6];

/// Slot of `a_i` in [`AbVars`] (or of `c_i` in [`CdVars`]); `None` for `a1`.
pub fn a_slot(i: usize) -> Option<usize> {
    [Some(0), None, Some(1)][i]
}

/// Slot of `b_j` in [`AbVars`].
pub fn b_slot(j: usize) -> usize {
    2 + j
}

/// Slot of `d_j` in [`CdVars`]; `None` for `d1`.
pub fn d_slot(j: usize) -> Option<usize> {
    [Some(3), None, Some(4), Some(5)][j]
}

/// Slot of `c_i` in [`CdVars`].
pub fn c_slot(i: usize) -> usize {
    i
}

/// Grading of a monomial in the ab frame.
pub fn ab_weight_degree(m: &Monomial) -> (i32, i32) {
    (m.weighted(&AB_WEIGHTS), m.weighted(&AB_DEGREES))
}

/// `(d_a, d_b)`: total degree in the `a`'s and in the `b`'s.
pub fn refined_degrees(m: &Monomial) -> (i32, i32) {
    (m.exp(0) + m.exp(1), (2..6).map(|i| m.exp(i)).sum())
}

/// Coefficients of `sum_i x_i (u + s)^(n - i)` given `x_i` (absent ones are zero).
pub(crate) fn translate<W: crate::poly::Vars>(coeffs: &[Option<Poly<W>>], shift: &Poly<W>) -> Vec<Poly<W>> {
    let n = coeffs.len() - 1;
    (0..=n)
        .map(|i| {
            let mut acc = Poly::zero();
            for (j, x) in coeffs.iter().enumerate().take(i + 1) {
                if let Some(x) = x {
                    let c = binomial((n - j) as i64, (n - i) as i64);
                    acc = &acc + &(x * &shift.pow((i - j) as u32)).scale(&c);
                }
            }
            acc
        })
        .collect()
}

/// Images of `a0, a2, b0, b1, b2, b3` in the cd frame (shift `-c1/(2 c0)`).
pub fn ab_images() -> [CurvePolyCD; 6] {
    let c = |i: usize| CurvePolyCD::var(c_slot(i));
    let d = |j: usize| d_slot(j).map(CurvePolyCD::var);
    let shift = CurvePolyCD::term(ratio(-1, 2), Monomial::from_exponents(&[-1, 1, 0, 0, 0, 0]));
    let a = translate(&[Some(c(0)), Some(c(1)), Some(c(2))], &shift);
    let b = translate(&[d(0), d(1), d(2), d(3)], &shift);
    debug_assert!(a[1].is_zero());
    [a[0].clone(), a[2].clone(), b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone()]
}

/// Images of `c0, c1, c2, d0, d2, d3` in the ab frame (shift `-b1/(3 b0)`).
pub fn cd_images() -> [CurvePolyAB; 6] {
    let a = |i: usize| a_slot(i).map(CurvePolyAB::var);
    let b = |j: usize| CurvePolyAB::var(b_slot(j));
    let shift = CurvePolyAB::term(ratio(-1, 3), Monomial::from_exponents(&[0, 0, -1, 1, 0, 0]));
    let c = translate(&[a(0), a(1), a(2)], &shift);
    let d = translate(&[Some(b(0)), Some(b(1)), Some(b(2)), Some(b(3))], &shift);
    debug_assert!(d[1].is_zero());
    [c[0].clone(), c[1].clone(), c[2].clone(), d[0].clone(), d[2].clone(), d[3].clone()]
}

pub fn ab_to_cd(p: &CurvePolyAB) -> CurvePolyCD {
    p.substitute(&ab_images()).expect("images of a, b are defined for nonnegative exponents")
}

/// Inverse frame change; negative powers of `c0` map to negative powers of `a0`.
pub fn cd_to_ab(p: &CurvePolyCD) -> CurvePolyAB {
    p.substitute(&cd_images()).expect("c0 maps to the single term a0")
}

/// True iff `p` is also a polynomial in the cd frame.
pub fn is_triality_invariant(p: &CurvePolyAB) -> bool {
    ab_to_cd(p).is_polynomial()
}

fn klmn(s: &str) -> KlmnPoly {
    s.parse().expect("well-formed expression")
}

/// `sum_i Delta^(p_i) body_i`.
fn with_delta(parts: &[(u32, &str)]) -> KlmnPoly {
    let delta = delta_poly();
    parts.iter().fold(KlmnPoly::zero(), |acc, (power, body)| &acc + &(&delta.pow(*power) * &klmn(body)))
}

/// `a0, a2, b0, b1, b2, b3` as functions of `E4, E6, K, L, M, N`.
pub fn ab_symbolic_images() -> [KlmnPoly; 6] {
    [
        with_delta(&[(0, "E4/12")]),
        with_delta(&[(1, "K^2*E4^-1/4"), (0, "-E6*L/24 + E4*M/24")]),
        with_delta(&[(0, "E6/216")]),
        with_delta(&[(1, "K*E4^-1")]),
        with_delta(&[(1, "-E6*K^2*E4^-2/24"), (0, "-E4^2*L/288 + E6*M/288")]),
        with_delta(&[(2, "-K^3*E4^-3"), (1, "K*M*E4^-1/4 + N/4")]),
    ]
}

/// `c0, c1, c2, d0, d2, d3` as functions of `E4, E6, K, L, M, N`.
pub fn cd_symbolic_images() -> [KlmnPoly; 6] {
    [
        with_delta(&[(0, "E4/12")]),
        with_delta(&[(1, "-12*K*E6^-1")]),
        with_delta(&[(1, "E4^2*K^2*E6^-2/4"), (0, "-E6*L/24 + E4*M/24")]),
        with_delta(&[(0, "E6/216")]),
        with_delta(&[(1, "-E4*K^2*E6^-1/24"), (0, "-E4^2*L/288 + E6*M/288")]),
        with_delta(&[(2, "2*K^3*E6^-2"), (1, "E4*K*L*E6^-1/4 + N/4")]),
    ]
}

/// `p(a, b)` written in `E4, E6, K, L, M, N` (Laurent in `E4`).
pub fn symbolic_ab(p: &CurvePolyAB) -> KlmnPoly {
    p.substitute(&ab_symbolic_images()).expect("ab polynomials have no negative exponents")
}

/// `p(c, d)` written in `E4, E6, K, L, M, N` (Laurent in `E4` and `E6`).
pub fn symbolic_cd(p: &CurvePolyCD) -> KlmnPoly {
    p.substitute(&cd_symbolic_images()).expect("c0 maps to a single term")
}

pub fn evaluate_ab(p: &CurvePolyAB, ctx: &Expansions) -> Result<Invariant> {
    ctx.realize(&symbolic_ab(p))
}

pub fn evaluate_cd(p: &CurvePolyCD, ctx: &Expansions) -> Result<Invariant> {
    ctx.realize(&symbolic_cd(p))
}

/// Polynomials whose evaluations are `Delta K, Delta^2 L, Delta^2 M, Delta^3 N`
/// in each frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Recovery {
    pub ab: [CurvePolyAB; 4],
    pub cd: [CurvePolyCD; 4],
}

pub fn recover_klmn() -> Recovery {
    let ab = |s: &str| s.parse::<CurvePolyAB>().expect("well-formed");
    let cd = |s: &str| s.parse::<CurvePolyCD>().expect("well-formed");
    Recovery {
        ab: [
            ab("12*a0*b1"),
            ab("-2*a0^4*b2 + 3*a0^3*a2*b0 + 54*a0*b0^2*b2 - 27*a0*b0*b1^2 - 81*a2*b0^3"),
            ab("2*a0^5*a2 - 36*a0^3*b0*b2 - 6*a0^3*b1^2 - 54*a0^2*a2*b0^2 + 972*b0^3*b2 - 324*b0^2*b1^2"),
            ab("4*a0^6*b3 - 2*a0^5*a2*b1 - 216*a0^3*b0^2*b3 + 36*a0^3*b0*b1*b2 + 10*a0^3*b1^3 \
                + 54*a0^2*a2*b0^2*b1 + 2916*b0^4*b3 - 972*b0^3*b1*b2 + 216*b0^2*b1^3"),
        ],
        cd: [
            cd("-18*c1*d0"),
            cd("-2*c0^4*d2 + 3*c0^3*c2*d0 - 9/4*c0^2*c1^2*d0 + 54*c0*d0^2*d2 - 81*c2*d0^3"),
            cd("2*c0^5*c2 - 1/2*c0^4*c1^2 - 36*c0^3*d0*d2 - 54*c0^2*c2*d0^2 - 27*c0*c1^2*d0^2 + 972*d0^3*d2"),
            cd("4*c0^6*d3 - 2*c0^5*c1*d2 + 3*c0^4*c1*c2*d0 - 5/4*c0^3*c1^3*d0 - 216*c0^3*d0^2*d3 \
                + 54*c0^2*c1*d0^2*d2 - 81*c0*c1*c2*d0^3 - 27*c1^3*d0^3 + 2916*d0^4*d3"),
        ],
    }
}

/// `det d(a2, b1, b2, b3)/d(K, L, M, N)` and `det d(c1, c2, d2, d3)/d(K, L, M, N)`,
/// as polynomials in `E4^(+-1), E6^(+-1)`.
pub fn jacobian_klmn_symbolic() -> (KlmnPoly, KlmnPoly) {
    let det = |fs: [&KlmnPoly; 4]| {
        let rows: Vec<Vec<KlmnPoly>> = fs.iter().map(|f| [K, L, M, N].iter().map(|&v| f.derivative(v)).collect()).collect();
        cofactor_determinant(&rows)
    };
    let ab = ab_symbolic_images();
    let cd = cd_symbolic_images();
    (det([&ab[1], &ab[3], &ab[4], &ab[5]]), det([&cd[1], &cd[2], &cd[4], &cd[5]]))
}

/// The two Jacobian determinants as q-series.
pub fn jacobian_klmn(ctx: &Expansions) -> Result<(FracSeries, FracSeries)> {
    let (a, c) = jacobian_klmn_symbolic();
    let to_series = |p: &KlmnPoly| -> Result<FracSeries> {
        let inv = ctx.realize(p)?;
        Ok(inv.poly().coeff(&Monomial::one()))
    };
    Ok((to_series(&a)?, to_series(&c)?))
}

/// Frame-tagged JSON with the lowest exponent of each variable.
pub fn ab_json(p: &CurvePolyAB) -> Value {
    frame_json("ab", p.to_json(), (0..6).map(|i| p.min_exponent(i)).collect())
}

pub fn cd_json(p: &CurvePolyCD) -> Value {
    frame_json("cd", p.to_json(), (0..6).map(|i| p.min_exponent(i)).collect())
}

fn frame_json(frame: &str, mut body: Value, lows: Vec<i32>) -> Value {
    body["frame"] = json!(frame);
    body["min_exponents"] = json!(lows);
    body
}

/// `a0^3 - 27 b0^2`, which is `Delta` in either frame.
pub fn delta_ab() -> CurvePolyAB {
    "a0^3 - 27*b0^2".parse().expect("well-formed")
}

pub fn ab_var(name: &str) -> CurvePolyAB {
    CurvePolyAB::named(name)
}

pub fn cd_var(name: &str) -> CurvePolyCD {
    CurvePolyCD::named(name)
}

//! Joint covariants and semiinvariants of the binary quadratic
//! `f = alpha0 u^2 + alpha1 u v + alpha2 v^2` and the binary cubic
//! `g = beta0 u^3 + beta1 u^2 v + beta2 u v^2 + beta3 v^3`, and their
//! correspondence with triality invariants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::curve::{self, CurvePolyAB};
use crate::declare_vars;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{Monomial, Poly};
use crate::rational::{binomial, factorial, rat, ratio, Rational};

declare_vars!(
    /// Coefficients of `f` and `g` followed by the binary variables.
    FormVars => ["alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2", "beta3", "u", "v"]
);
declare_vars!(
    /// [`FormVars`] extended by the unipotent parameter.
    KappaVars => ["alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2", "beta3", "u", "v", "kappa"]
);

pub type FormPoly = Poly<FormVars>;
type KappaPoly = Poly<KappaVars>;

pub const U: usize = 7;
pub const V: usize = 8;
const KAPPA: usize = 9;

pub fn alpha(i: usize) -> FormPoly {
    FormPoly::var(i)
}

pub fn beta(j: usize) -> FormPoly {
    FormPoly::var(3 + j)
}

/// Scaling weights `2 - 2i` for `alpha_i` and `3 - 2j` for `beta_j`.
const ORDER_WEIGHTS: [i32; 9] = [2, 0, -2, 3, 1, -1, -3, 0, 0];

fn binary_form(coeffs: impl Iterator<Item = FormPoly>, n: i32) -> FormPoly {
    coeffs.enumerate().fold(FormPoly::zero(), |acc, (i, c)| {
        let i = i as i32;
        let uv = FormPoly::term(rat(1), Monomial::var(U).with(U, n - i).with(V, i));
        &acc + &(&c * &uv)
    })
}

pub fn f() -> FormPoly {
    binary_form((0..3).map(alpha), 2)
}

pub fn g() -> FormPoly {
    binary_form((0..4).map(beta), 3)
}

/// `(d_alpha, d_beta)` of a monomial.
pub fn form_degrees(m: &Monomial) -> (i32, i32) {
    ((0..3).map(|i| m.exp(i)).sum(), (3..7).map(|i| m.exp(i)).sum())
}

/// Total degree in `u, v`.
pub fn uv_degree(m: &Monomial) -> i32 {
    m.exp(U) + m.exp(V)
}

fn has_uv(p: &FormPoly) -> bool {
    p.terms().any(|(m, _)| uv_degree(m) != 0)
}

/// The `i`-th transvectant of forms of orders `n1` and `n2`.
pub fn transvectant(f1: &FormPoly, f2: &FormPoly, i: i32, n1: i32, n2: i32) -> Result<FormPoly> {
    if i < 0 || i > n1 || i > n2 {
        return Err(Error::BadOrder { index: i, n1, n2 });
    }
    let prefactor = &(&factorial((n1 - i) as u32) * &factorial((n2 - i) as u32))
        / &(&factorial(n1 as u32) * &factorial(n2 as u32));
    let partial = |p: &FormPoly, du: i32, dv: i32| {
        let mut out = p.clone();
        for _ in 0..du {
            out = out.derivative(U);
        }
        for _ in 0..dv {
            out = out.derivative(V);
        }
        out
    };
    let mut acc = FormPoly::zero();
    for j in 0..=i {
        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        let term = &partial(f1, i - j, j) * &partial(f2, j, i - j);
        acc = &acc + &term.scale(&(sign * binomial(i as i64, j as i64)));
    }
    Ok(acc.scale(&prefactor))
}

/// [`transvectant`] with the orders read off from the `u, v`-degrees.
pub fn transvect(f1: &FormPoly, f2: &FormPoly, i: i32) -> Result<FormPoly> {
    let n1 = f1.homogeneous_value(uv_degree)?.unwrap_or(0);
    let n2 = f2.homogeneous_value(uv_degree)?.unwrap_or(0);
    transvectant(f1, f2, i, n1, n2)
}

/// Images of `alpha_i, beta_j` under `u -> u + kappa v`.
fn unipotent_images() -> Vec<KappaPoly> {
    let kappa = KappaPoly::var(KAPPA);
    let shifted = |base: usize, n: i64| -> Vec<KappaPoly> {
        (0..=n)
            .map(|i| {
                (0..=i).fold(KappaPoly::zero(), |acc, j| {
                    let c = binomial(n - j, i - j);
                    &acc + &(&KappaPoly::var(base + j as usize) * &kappa.pow((i - j) as u32)).scale(&c)
                })
            })
            .collect()
    };
    let mut images = shifted(0, 2);
    images.extend(shifted(3, 3));
    images.push(KappaPoly::var(U));
    images.push(KappaPoly::var(V));
    images
}

/// `P(alpha', beta') - P(alpha, beta)` as a polynomial in `kappa`.
fn unipotent_defect(p: &FormPoly, images: &[KappaPoly]) -> KappaPoly {
    let moved = p.substitute(images).expect("nonnegative exponents");
    &moved - &p.rename::<KappaVars>()
}

/// True iff `p` (free of `u, v`) is invariant under `u -> u + kappa v`.
pub fn is_semiinvariant(p: &FormPoly) -> bool {
    !has_uv(p) && p.is_polynomial() && unipotent_defect(p, &unipotent_images()).is_zero()
}

/// Order of a semiinvariant under the scaling weights.
pub fn order_of(p: &FormPoly) -> Result<i32> {
    Ok(p.homogeneous_weight(&ORDER_WEIGHTS)?.unwrap_or(0))
}

/// `u^omega Phi(alpha-hat, beta-hat)` with `alpha-hat_i = sum_j alpha_j C(j, i) (v/u)^(j-i)`.
pub fn roberts_to_covariant(phi: &FormPoly) -> Result<FormPoly> {
    let omega = order_of(phi)?;
    if omega < 0 {
        return Err(Error::NegativeOrder(omega));
    }
    let ratio_vu = FormPoly::term(rat(1), Monomial::var(V).with(U, -1));
    let hatted = |base: usize, n: i64| -> Vec<FormPoly> {
        (0..=n)
            .map(|i| {
                (i..=n).fold(FormPoly::zero(), |acc, j| {
                    let t = &FormPoly::var(base + j as usize) * &ratio_vu.pow((j - i) as u32);
                    &acc + &t.scale(&binomial(j, i))
                })
            })
            .collect()
    };
    let mut images = hatted(0, 2);
    images.extend(hatted(3, 3));
    images.push(FormPoly::var(U));
    images.push(FormPoly::var(V));
    let psi = phi.substitute(&images)?.mul_monomial(&Monomial::var(U).with(U, omega));
    if !psi.is_polynomial() {
        return Err(Error::NotPolynomial(psi.to_string()));
    }
    Ok(psi)
}

/// The leading coefficient `Psi(u = 1, v = 0)`.
pub fn roberts_to_semiinvariant(psi: &FormPoly) -> FormPoly {
    let mut images: Vec<FormPoly> = (0..7).map(FormPoly::var).collect();
    images.push(FormPoly::one());
    images.push(FormPoly::zero());
    psi.substitute(&images).expect("nonnegative exponents")
}

/// `(a-hat, b-hat, c-hat, d-hat)`: coefficients of `f, g` after translating
/// `u` by `-alpha1/(2 alpha0)` resp. `-beta1/(3 beta0)`. Laurent in `alpha0` resp. `beta0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HatCoefficients {
    pub a: [FormPoly; 3],
    pub b: [FormPoly; 4],
    pub c: [FormPoly; 3],
    pub d: [FormPoly; 4],
}

pub fn hat_coefficients() -> HatCoefficients {
    let alphas: Vec<Option<FormPoly>> = (0..3).map(|i| Some(alpha(i))).collect();
    let betas: Vec<Option<FormPoly>> = (0..4).map(|j| Some(beta(j))).collect();
    let sigma = FormPoly::term(ratio(-1, 2), Monomial::var(1).with(0, -1));
    let sigma_prime = FormPoly::term(ratio(-1, 3), Monomial::var(4).with(3, -1));
    let arr3 = |v: Vec<FormPoly>| -> [FormPoly; 3] { v.try_into().expect("three coefficients") };
    let arr4 = |v: Vec<FormPoly>| -> [FormPoly; 4] { v.try_into().expect("four coefficients") };
    HatCoefficients {
        a: arr3(curve::translate(&alphas, &sigma)),
        b: arr4(curve::translate(&betas, &sigma)),
        c: arr3(curve::translate(&alphas, &sigma_prime)),
        d: arr4(curve::translate(&betas, &sigma_prime)),
    }
}

/// `phi(a_i, b_j) -> phi(a-hat_i, b-hat_j)`.
pub fn psi_forward(p: &CurvePolyAB) -> Result<FormPoly> {
    let h = hat_coefficients();
    let images = [h.a[0].clone(), h.a[2].clone(), h.b[0].clone(), h.b[1].clone(), h.b[2].clone(), h.b[3].clone()];
    let out = p.substitute(&images)?;
    if !out.is_polynomial() {
        return Err(Error::NotPolynomial(out.to_string()));
    }
    Ok(out)
}

/// `alpha0 -> a0, alpha1 -> 0, alpha2 -> a2, beta_j -> b_j`.
pub fn psi_inverse(phi: &FormPoly) -> Result<CurvePolyAB> {
    if has_uv(phi) {
        return Err(Error::NotPolynomial(format!("semiinvariant expected, got {phi}")));
    }
    let v = CurvePolyAB::var;
    let images = [v(0), CurvePolyAB::zero(), v(1), v(2), v(3), v(4), v(5), CurvePolyAB::zero(), CurvePolyAB::zero()];
    phi.substitute(&images)
}

/// One of the fifteen generators of the joint covariants of `f` and `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GordanGenerator {
    /// Transvectant expression, e.g. `<f,g>^1`.
    pub expression: &'static str,
    pub covariant: FormPoly,
    pub d_a: i32,
    pub d_b: i32,
    /// Degree `m = 2 d_a + 3 d_b - omega` of the corresponding triality invariant.
    pub m: i32,
    pub omega: i32,
}

impl GordanGenerator {
    /// `<d_a,d_b>_{m,omega}`.
    pub fn label(&self) -> String {
        format!("<{},{}>_{{{},{}}}", self.d_a, self.d_b, self.m, self.omega)
    }

    pub fn weight(&self) -> i32 {
        3 * self.m + 2 * self.omega
    }

    pub fn semiinvariant(&self) -> FormPoly {
        roberts_to_semiinvariant(&self.covariant)
    }
}

impl fmt::Display for GordanGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} : {}", self.label(), self.expression, self.covariant)
    }
}

fn generator(expression: &'static str, covariant: FormPoly) -> GordanGenerator {
    let lead = covariant.leading().map(|(m, _)| *m).expect("generators are nonzero");
    let (d_a, d_b) = form_degrees(&lead);
    let omega = uv_degree(&lead);
    GordanGenerator { expression, covariant, d_a, d_b, m: 2 * d_a + 3 * d_b - omega, omega }
}

pub fn gordan_generators() -> Vec<GordanGenerator> {
    let t = |a: &FormPoly, b: &FormPoly, i: i32| transvect(a, b, i).expect("indices within the orders");
    let (f, g) = (f(), g());
    let p = t(&g, &g, 2);
    let q = t(&g, &p, 1);
    let f2 = f.pow(2);
    let f3 = f.pow(3);
    vec![
        generator("f", f.clone()),
        generator("g", g.clone()),
        generator("<f,g>^1", t(&f, &g, 1)),
        generator("<f,f>^2", t(&f, &f, 2)),
        generator("<f,g>^2", t(&f, &g, 2)),
        generator("P = <g,g>^2", p.clone()),
        generator("<f^2,g>^3", t(&f2, &g, 3)),
        generator("<f,P>^1", t(&f, &p, 1)),
        generator("Q = <g,P>^1", q.clone()),
        generator("<f,P>^2", t(&f, &p, 2)),
        generator("<f,Q>^2", t(&f, &q, 2)),
        generator("<f^3,g^2>^6", t(&f3, &g.pow(2), 6)),
        generator("<P,P>^2", t(&p, &p, 2)),
        generator("<f^2,Q>^3", t(&f2, &q, 3)),
        generator("<f^3,gQ>^6", t(&f3, &(&g * &q), 6)),
    ]
}

/// Monomials in `alpha, beta` of degrees `(d_alpha, d_beta)` and order `omega`.
pub fn semiinvariant_monomials(d_alpha: i32, d_beta: i32, omega: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in compositions(d_alpha, 3) {
        for b in compositions(d_beta, 4) {
            let mut exps = [0i32; 9];
            exps[..3].copy_from_slice(&a);
            exps[3..7].copy_from_slice(&b);
            let m = Monomial::from_exponents(&exps);
            if m.weighted(&ORDER_WEIGHTS) == omega {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

fn compositions(total: i32, parts: usize) -> Vec<Vec<i32>> {
    if total < 0 {
        return Vec::new();
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Reduced echelon basis of the joint semiinvariants of degrees
/// `(d_alpha, d_beta)` and order `omega`.
pub fn semiinvariant_basis(d_alpha: i32, d_beta: i32, omega: i32) -> Vec<FormPoly> {
    if d_alpha < 0 || d_beta < 0 || omega < 0 {
        return Vec::new();
    }
    let monomials = semiinvariant_monomials(d_alpha, d_beta, omega);
    let images = unipotent_images();
    let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
    let mut cache: HashMap<Monomial, KappaPoly> = HashMap::new();
    for (col, m) in monomials.iter().enumerate() {
        let defect = cache
            .entry(*m)
            .or_insert_with(|| unipotent_defect(&FormPoly::term(rat(1), *m), &images));
        for (km, c) in defect.terms() {
            rows.entry(*km).or_insert_with(|| vec![Rational::zero(); monomials.len()])[col] = c.clone();
        }
    }
    let matrix = RationalMatrix::from_rows(monomials.len(), rows.into_values().collect());
    matrix
        .kernel()
        .into_iter()
        .map(|v| FormPoly::from_terms(monomials.iter().copied().zip(v).filter(|(_, c)| !c.is_zero())))
        .collect()
}

pub fn semiinvariant_dimension(d_alpha: i32, d_beta: i32, omega: i32) -> usize {
    semiinvariant_basis(d_alpha, d_beta, omega).len()
}

/// Degree of the triality invariant matching a semiinvariant of degrees
/// `(d_a, d_b)` and order `omega`.
pub fn curve_degree(d_a: i32, d_b: i32, omega: i32) -> i32 {
    2 * d_a + 3 * d_b - omega
}

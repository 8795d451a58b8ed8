//! The bigraded ring `M*(Gamma(2)) (x) C[I2, I4, I6, It4]`, the injection that
//! encodes the cusp condition, and the fundamental weak invariants `K, L, M, N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::declare_vars;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{Monomial, Poly};
use crate::rational::{rat, ratio, Rational};
use crate::series::modular::{e_series, eisenstein, eta_delta};
use crate::series::{FracSeries, LATTICE};
use crate::series_poly::SeriesPoly;
use crate::weyl::{self, i_monomials, IPoly, IVars, I2, I4, I6, IT4, I_DEGREES};

declare_vars!(
    /// Formal generators over which invariants are expressed:
    /// `E4, E6` and the weak invariants `K, L, M, N`.
    KlmnVars => ["E4", "E6", "K", "L", "M", "N"]
);

/// Polynomial in `E4, E6, K, L, M, N`; `E4` and `E6` may carry negative
/// exponents when it describes a meromorphic expression.
pub type KlmnPoly = Poly<KlmnVars>;

pub const E4: usize = 0;
pub const E6: usize = 1;
pub const K: usize = 2;
pub const L: usize = 3;
pub const M: usize = 4;
pub const N: usize = 5;

pub const KLMN_WEIGHTS: [i32; 6] = [4, 6, 0, 2, 4, 0];
pub const KLMN_DEGREES: [i32; 6] = [0, 0, 2, 4, 4, 6];

/// `Delta = (E4^3 - E6^2)/1728` as a polynomial.
pub fn delta_poly() -> KlmnPoly {
    let e4 = KlmnPoly::var(E4);
    let e6 = KlmnPoly::var(E6);
    (&e4.pow(3) - &e6.pow(2)).scale(&ratio(1, 1728))
}

/// Cusp classification of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// The injected expansion is a power series in q.
    Invariant,
    /// A weak invariant whose injected expansion has a pole.
    WeakOnly,
    NotWeak,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Invariant => "invariant",
            Classification::WeakOnly => "weak_only",
            Classification::NotWeak => "not_weak",
        })
    }
}

/// A homogeneous element of weight `weight` and polynomial degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariant {
    poly: SeriesPoly<IVars>,
    weight: i32,
    degree: i32,
}

impl Invariant {
    /// Checks that every monomial has polynomial degree `degree`.
    pub fn new(poly: SeriesPoly<IVars>, weight: i32, degree: i32) -> Result<Self> {
        if poly.terms().any(|(m, _)| weyl::ipoly_degree(m) != degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(Invariant { poly, weight, degree })
    }

    pub fn zero(weight: i32, degree: i32, trunc: i64) -> Self {
        Invariant { poly: SeriesPoly::zero(trunc), weight, degree }
    }

    /// A modular form of the given weight, times the constant polynomial 1.
    pub fn modular(s: FracSeries, weight: i32) -> Self {
        Invariant { poly: SeriesPoly::constant(s), weight, degree: 0 }
    }

    /// A homogeneous I-polynomial with constant coefficients (weight 0).
    pub fn from_ipoly(p: &IPoly, trunc: i64) -> Result<Self> {
        let degree = p.homogeneous_value(weyl::ipoly_degree)?.unwrap_or(0);
        Self::new(SeriesPoly::from_poly(p, trunc), 0, degree)
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn trunc(&self) -> i64 {
        self.poly.trunc()
    }

    pub fn poly(&self) -> &SeriesPoly<IVars> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient series of `I2^a I4^b I6^c It4^d`.
    pub fn coeff(&self, exps: [i32; 4]) -> FracSeries {
        self.poly.coeff(&Monomial::from_exponents(&exps))
    }

    fn check_grading(&self, other: &Self) -> Result<()> {
        if (self.weight, self.degree) != (other.weight, other.degree) {
            return Err(Error::GradingMismatch(self.weight, self.degree, other.weight, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        Ok(Invariant { poly: &self.poly + &other.poly, ..*self })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        Ok(Invariant { poly: &self.poly - &other.poly, ..*self })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Invariant { poly: self.poly.scale(c), ..*self }
    }

    /// Multiplies by a modular form of weight `weight`.
    pub fn scale_series(&self, s: &FracSeries, weight: i32) -> Self {
        Invariant { poly: self.poly.scale_series(s), weight: self.weight + weight, degree: self.degree }
    }

    pub fn pow(&self, n: u32) -> Self {
        Invariant { poly: self.poly.pow(n), weight: self.weight * n as i32, degree: self.degree * n as i32 }
    }

    /// Partial derivative with respect to the generator with index `i`.
    pub fn derivative(&self, i: usize) -> Self {
        Invariant {
            poly: self.poly.derivative(i),
            weight: self.weight,
            degree: self.degree - I_DEGREES[i],
        }
    }

    /// `(q, I2, I4, I6, It4) -> (q, I2/q, I4/q, I6/q, It4/q^(1/2))`.
    pub fn inject(&self) -> Self {
        let poly = self.poly.map_series(|m, s| s.shift(-injection_shift(m)));
        Invariant { poly, ..*self }
    }

    /// Classification relative to the truncation window.
    pub fn classify(&self) -> Classification {
        let even = |x: i32| x >= 0 && x % 2 == 0;
        if !even(self.weight) || !even(self.degree) {
            return Classification::NotWeak;
        }
        let injected = self.inject();
        let regular = injected
            .poly
            .terms()
            .all(|(_, s)| s.terms().all(|(e, _)| e >= 0 && e % LATTICE == 0));
        if regular {
            return Classification::Invariant;
        }
        let weak = self.poly.terms().all(|(m, s)| {
            let parity = i64::from(m.exp(IT4).rem_euclid(2)) * 12;
            s.terms().all(|(e, _)| e >= 0 && e.rem_euclid(LATTICE) == parity)
        });
        if weak {
            Classification::WeakOnly
        } else {
            Classification::NotWeak
        }
    }

    /// `q^(1/2) -> -q^(1/2)` together with `It4 -> -It4`.
    pub fn t_action(&self) -> Result<Self> {
        for (_, s) in self.poly.terms() {
            if let Some((e, _)) = s.terms().find(|(e, _)| e % 12 != 0) {
                return Err(Error::UnsupportedLattice(e));
            }
        }
        let poly = self.poly.map_series(|m, s| {
            let d = i64::from(m.exp(IT4));
            s.map_terms(|e, c| if (e / 12 + d).rem_euclid(2) == 0 { c.clone() } else { -c })
        });
        Ok(Invariant { poly, ..*self })
    }

    /// The `q^0` coefficient of the injected expansion.
    pub fn leading_ipoly(&self) -> Result<IPoly> {
        let deepest = i_monomials(self.degree).iter().map(injection_shift).max().unwrap_or(0);
        if self.trunc() <= deepest {
            return Err(Error::InsufficientPrecision { needed: deepest + 1, trunc: self.trunc() });
        }
        let injected = self.inject();
        let mut out = Vec::new();
        for (m, s) in injected.poly.terms() {
            if let Some(v) = s.valuation() {
                if v < 0 {
                    return Err(Error::HasPole(v));
                }
            }
            if s.trunc() <= 0 {
                return Err(Error::InsufficientPrecision { needed: 0, trunc: s.trunc() });
            }
            out.push((*m, s.coeff(0)?));
        }
        if injected.trunc() <= 0 {
            return Err(Error::InsufficientPrecision { needed: 0, trunc: injected.trunc() });
        }
        Ok(IPoly::from_terms(out))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "invariant",
            "grading": {"weight": self.weight, "degree": self.degree},
            "lattice_denominator": LATTICE,
            "trunc": self.trunc(),
            "variables": ["I2", "I4", "I6", "It4"],
            "terms": self
                .poly
                .terms()
                .map(|(m, s)| json!({"monomial": m.exponents(4), "series": s.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

fn injection_shift(m: &Monomial) -> i64 {
    i64::from(LATTICE as i32 * (m.exp(I2) + m.exp(I4) + m.exp(I6)) + 12 * m.exp(IT4))
}

impl std::ops::Mul for &Invariant {
    type Output = Invariant;
    fn mul(self, rhs: &Invariant) -> Invariant {
        Invariant {
            poly: &self.poly * &rhs.poly,
            weight: self.weight + rhs.weight,
            degree: self.degree + rhs.degree,
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Shared q-expansions at a fixed truncation order, with memoized products.
pub struct Expansions {
    order: i64,
    e4: FracSeries,
    e6: FracSeries,
    eta: FracSeries,
    delta: FracSeries,
    e: [FracSeries; 3],
    e4_inv: FracSeries,
    e6_inv: FracSeries,
    klmn: [Invariant; 4],
    modular_cache: Mutex<HashMap<(i32, i32), FracSeries>>,
    klmn_cache: Mutex<HashMap<[i32; 4], Arc<Invariant>>>,
}

impl fmt::Debug for Expansions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Expansions").field("order", &self.order).finish_non_exhaustive()
    }
}

impl Expansions {
    pub fn new(order: i64) -> Self {
        assert!(order >= 2, "truncation order must be at least 2");
        let e4 = eisenstein(4, order);
        let e6 = eisenstein(6, order);
        let (eta, delta) = eta_delta(order);
        let e = [e_series(1, order), e_series(2, order), e_series(3, order)];
        let e4_inv = e4.inverse().expect("E4 = 1 + O(q)");
        let e6_inv = e6.inverse().expect("E6 = 1 + O(q)");
        let klmn = build_klmn(&e, order * LATTICE);
        Expansions {
            order,
            e4,
            e6,
            eta,
            delta,
            e,
            e4_inv,
            e6_inv,
            klmn,
            modular_cache: Mutex::new(HashMap::new()),
            klmn_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn trunc(&self) -> i64 {
        self.order * LATTICE
    }

    pub fn e4(&self) -> &FracSeries {
        &self.e4
    }

    pub fn e6(&self) -> &FracSeries {
        &self.e6
    }

    pub fn eta(&self) -> &FracSeries {
        &self.eta
    }

    pub fn delta(&self) -> &FracSeries {
        &self.delta
    }

    /// `e_1, e_2, e_3`.
    pub fn e(&self, i: usize) -> &FracSeries {
        &self.e[i - 1]
    }

    /// `K, L, M, N`.
    pub fn klmn(&self) -> &[Invariant; 4] {
        &self.klmn
    }

    /// `E4^a E6^b`, negative exponents allowed.
    pub fn modular_monomial(&self, a: i32, b: i32) -> FracSeries {
        if let Some(s) = self.modular_cache.lock().expect("cache lock").get(&(a, b)) {
            return s.clone();
        }
        let part = |base: &FracSeries, inv: &FracSeries, n: i32| {
            if n >= 0 {
                base.pow(n as u32)
            } else {
                inv.pow(n.unsigned_abs())
            }
        };
        let s = &part(&self.e4, &self.e4_inv, a) * &part(&self.e6, &self.e6_inv, b);
        self.modular_cache.lock().expect("cache lock").insert((a, b), s.clone());
        s
    }

    /// `K^a L^b M^c N^d` as an invariant.
    pub fn klmn_monomial(&self, exps: [i32; 4]) -> Arc<Invariant> {
        if let Some(inv) = self.klmn_cache.lock().expect("cache lock").get(&exps) {
            return inv.clone();
        }
        let inv = if exps == [0; 4] {
            Invariant::modular(FracSeries::one(self.trunc()), 0)
        } else {
            let i = (0..4).rev().find(|&i| exps[i] > 0).expect("nonzero exponent");
            let mut rest = exps;
            rest[i] -= 1;
            &*self.klmn_monomial(rest) * &self.klmn[i]
        };
        let inv = Arc::new(inv);
        self.klmn_cache.lock().expect("cache lock").insert(exps, inv.clone());
        inv
    }

    /// Evaluates a homogeneous polynomial in `E4, E6, K, L, M, N`.
    pub fn realize(&self, p: &KlmnPoly) -> Result<Invariant> {
        let weight = p.homogeneous_weight(&KLMN_WEIGHTS)?.unwrap_or(0);
        let degree = p.homogeneous_weight(&KLMN_DEGREES)?.unwrap_or(0);
        let mut groups: BTreeMap<[i32; 4], Vec<(i32, i32, &Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let key = [m.exp(K), m.exp(L), m.exp(M), m.exp(N)];
            if key.iter().any(|e| *e < 0) {
                return Err(Error::NotPolynomial(format!("negative power of K, L, M or N in {p}")));
            }
            groups.entry(key).or_default().push((m.exp(E4), m.exp(E6), c));
        }
        let mut acc = SeriesPoly::zero(self.trunc());
        for (key, coeffs) in groups {
            let mut s = FracSeries::zero(self.trunc());
            for (a, b, c) in coeffs {
                s = &s + &self.modular_monomial(a, b).scale(c);
            }
            let base = self.klmn_monomial(key);
            acc = &acc + &base.poly.scale_series(&s);
        }
        Invariant::new(acc, weight, degree)
    }

    /// Writes `phi` as a polynomial in `E4, E6, K, L, M, N`.
    ///
    /// The I-generators are first rewritten in terms of `K, L, M, N` over the
    /// field of q-series; every resulting coefficient is then matched against
    /// the monomials `E4^a E6^b` of the required weight by an exact solve.
    pub fn express_in_klmn(&self, phi: &Invariant) -> Result<KlmnPoly> {
        let images = self.inverse_images();
        let rewritten: SeriesPoly<KlmnVars> = phi.poly.substitute(&images);
        let mut out = Vec::new();
        for (m, s) in rewritten.terms() {
            let w = phi.weight - m.exp(L) * KLMN_WEIGHTS[L] - m.exp(M) * KLMN_WEIGHTS[M];
            for (exps, c) in self.express_modular(s, w)? {
                out.push((m.with(E4, exps.0).with(E6, exps.1), c));
            }
        }
        Ok(KlmnPoly::from_terms(out))
    }

    /// Solves `s = sum c_ab E4^a E6^b` over `4a + 6b = weight`.
    fn express_modular(&self, s: &FracSeries, weight: i32) -> Result<Vec<((i32, i32), Rational)>> {
        if s.is_zero() {
            return Ok(Vec::new());
        }
        if s.terms().any(|(e, _)| e < 0 || e % LATTICE != 0) || weight < 0 || weight % 2 != 0 {
            return Err(Error::NoRepresentation);
        }
        let basis: Vec<(i32, i32)> = (0..=weight / 6)
            .rev()
            .filter(|b| (weight - 6 * b) % 4 == 0)
            .map(|b| ((weight - 6 * b) / 4, b))
            .collect();
        if basis.is_empty() {
            return Err(Error::NoRepresentation);
        }
        let rows = (s.trunc().min(self.trunc()) + LATTICE - 1) / LATTICE;
        let columns: Vec<FracSeries> = basis.iter().map(|&(a, b)| self.modular_monomial(a, b)).collect();
        let mut a = RationalMatrix::zeros(rows as usize, basis.len());
        let mut rhs = Vec::with_capacity(rows as usize);
        for n in 0..rows {
            for (j, col) in columns.iter().enumerate() {
                a.set(n as usize, j, col.q_coeff(n)?);
            }
            rhs.push(s.q_coeff(n)?);
        }
        let (x, free) = a.solve(&rhs).ok_or(Error::NoRepresentation)?;
        if free > 0 {
            return Err(Error::AmbiguousRepresentation(free));
        }
        Ok(basis.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Images of `I2, I4, I6, It4` as polynomials in `K, L, M, N` with series
    /// coefficients (variable slots as in [`KlmnVars`]).
    fn inverse_images(&self) -> Vec<SeriesPoly<KlmnVars>> {
        let trunc = self.trunc();
        let [t1, t2, t3] = weyl::t_blocks();
        let blocks = [t1, t2, t3];
        let i4 = Monomial::var(I4);
        let it4 = Monomial::var(IT4);
        let i2sq = Monomial::var(I2).with(I2, 2);
        // L = alpha I4 + beta It4 + gamma I2^2 and likewise for M.
        let linear = |weights: [FracSeries; 3]| {
            let part = |mono: &Monomial| {
                blocks
                    .iter()
                    .zip(&weights)
                    .fold(FracSeries::zero(trunc), |acc, (t, w)| &acc + &w.scale(&t.coeff(mono)))
            };
            (part(&i4), part(&it4), part(&i2sq))
        };
        let (al, bl, gl) = linear(self.e.clone());
        let sq = |x: &FracSeries| (x * x).scale(&rat(12));
        let (am, bm, gm) = linear([sq(&self.e[0]), sq(&self.e[1]), sq(&self.e[2])]);
        let det = &(&al * &bm) - &(&bl * &am);
        let det_inv = det.inverse().expect("the L, M system is nondegenerate");
        let var = |i: usize| SeriesPoly::<KlmnVars>::term(Monomial::var(i), FracSeries::one(trunc));
        let k = var(K);
        let k2 = &k * &k;
        let l_rest = &var(L) - &k2.scale_series(&gl);
        let m_rest = &var(M) - &k2.scale_series(&gm);
        let x = (&l_rest.scale_series(&bm) - &m_rest.scale_series(&bl)).scale_series(&det_inv);
        let y = (&m_rest.scale_series(&al) - &l_rest.scale_series(&am)).scale_series(&det_inv);
        let kx = (&k * &x).scale(&ratio(1, 6));
        let k3 = (&k2 * &k).scale(&ratio(1, 24));
        let i6 = &(&var(N).scale(&rat(4)) + &kx) - &k3;
        let mut images = vec![SeriesPoly::zero(trunc); 4];
        images[I2] = k;
        images[I4] = x;
        images[I6] = i6;
        images[IT4] = y;
        images
    }
}

/// `K = I2`, `L = sum e_i T_i`, `M = 12 sum e_i^2 T_i`, `N = I6/4 - I2 I4/24 + I2^3/96`.
fn build_klmn(e: &[FracSeries; 3], trunc: i64) -> [Invariant; 4] {
    let blocks = weyl::t_blocks();
    let combine = |weights: Vec<FracSeries>| {
        let mut acc = SeriesPoly::zero(trunc);
        for (t, w) in blocks.iter().zip(&weights) {
            acc = &acc + &SeriesPoly::from_poly(t, trunc).scale_series(w);
        }
        acc
    };
    let k = SeriesPoly::from_poly(&IPoly::var(I2), trunc);
    let l = combine(e.to_vec());
    let m = combine(e.iter().map(|x| (x * x).scale(&rat(12))).collect());
    let n = SeriesPoly::from_poly(&weyl::n_ipoly(), trunc);
    [
        Invariant { poly: k, weight: 0, degree: 2 },
        Invariant { poly: l, weight: 2, degree: 4 },
        Invariant { poly: m, weight: 4, degree: 4 },
        Invariant { poly: n, weight: 0, degree: 6 },
    ]
}

/// `K, L, M, N` at the given order.
pub fn klmn(order: i64) -> [Invariant; 4] {
    Expansions::new(order).klmn().clone()
}

/// `det d(K, L, M, N) / d(I2, I4, I6, It4)` as a series.
pub fn klmn_jacobian(ctx: &Expansions) -> FracSeries {
    let rows: Vec<Vec<SeriesPoly<IVars>>> = ctx
        .klmn()
        .iter()
        .map(|f| (0..4).map(|j| f.poly.derivative(j)).collect())
        .collect();
    let det = weyl::cofactor_determinant(&rows);
    debug_assert!(det.terms().all(|(m, _)| *m == Monomial::one()));
    det.coeff(&Monomial::one())
}

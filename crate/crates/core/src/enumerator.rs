//! Enumeration of triality invariants of fixed weight and degree.
//!
//! An ansatz over all ab-monomials of the requested grading is pushed through
//! the frame change; the coefficients of every cd-monomial with a negative
//! power of `c0` must vanish, and the null space of that linear system is the
//! space of invariants.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::curve::{ab_images, ab_json, AbVars, CurvePolyAB, CurvePolyCD, AB_DEGREES, AB_WEIGHTS};
use crate::linalg::RationalMatrix;
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;

/// A basis of the invariants of weight `weight` and degree `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzBasis {
    pub weight: i32,
    pub degree: i32,
    pub monomials: Vec<Monomial>,
    pub basis: Vec<CurvePolyAB>,
}

impl AnsatzBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "basis",
            "grading": {"weight": self.weight, "degree": self.degree},
            "variables": <AbVars as crate::poly::Vars>::NAMES,
            "monomials": self.monomials.iter().map(|m| m.exponents(6)).collect::<Vec<_>>(),
            "dimension": self.dimension(),
            "basis": self.basis.iter().map(ab_json).collect::<Vec<_>>(),
        })
    }
}

/// All ab-monomials of weight `k` and degree `m`, in canonical order.
pub fn monomials_of(k: i32, m: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = [0i32; 6];
    fill(0, k, m, &mut exps, &mut out);
    out.sort();
    out
}

fn fill(slot: usize, k: i32, m: i32, exps: &mut [i32; 6], out: &mut Vec<Monomial>) {
    if k < 0 || m < 0 {
        return;
    }
    if slot == 6 {
        if k == 0 && m == 0 {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    let (w, d) = (AB_WEIGHTS[slot], AB_DEGREES[slot]);
    let mut e = 0;
    while e * w <= k && e * d <= m {
        exps[slot] = e;
        fill(slot + 1, k - e * w, m - e * d, exps, out);
        e += 1;
    }
    exps[slot] = 0;
}

/// Exact null-space basis in reduced row echelon form.
pub fn rational_kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel()
}

/// Caches powers of the frame-change images.
struct ImageCache {
    images: [CurvePolyCD; 6],
    powers: HashMap<(usize, i32), CurvePolyCD>,
}

impl ImageCache {
    fn new() -> Self {
        ImageCache { images: ab_images(), powers: HashMap::new() }
    }

    fn image(&mut self, m: &Monomial) -> CurvePolyCD {
        let mut acc = CurvePolyCD::one();
        for i in 0..6 {
            let e = m.exp(i);
            if e > 0 {
                let images = &self.images;
                let pw = self.powers.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                acc = &acc * pw;
            }
        }
        acc
    }
}

pub fn triality_basis(k: i32, m: i32) -> AnsatzBasis {
    let mut cache = ImageCache::new();
    triality_basis_with(k, m, &mut cache)
}

fn triality_basis_with(k: i32, m: i32, cache: &mut ImageCache) -> AnsatzBasis {
    let monomials = monomials_of(k, m);
    let images: Vec<CurvePolyCD> = monomials.iter().map(|mono| cache.image(mono)).collect();
    let mut rows: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
    for (col, image) in images.iter().enumerate() {
        for (cd, c) in image.terms() {
            if cd.exp(0) < 0 {
                rows.entry(*cd).or_insert_with(|| vec![Rational::zero(); monomials.len()])[col] = c.clone();
            }
        }
    }
    let matrix = RationalMatrix::from_rows(monomials.len(), rows.into_values().collect());
    let basis = rational_kernel(&matrix)
        .into_iter()
        .map(|v| Poly::from_terms(monomials.iter().copied().zip(v).filter(|(_, c)| !c.is_zero())))
        .collect();
    AnsatzBasis { weight: k, degree: m, monomials, basis }
}

/// `dim R_{k,m}` for `0 <= k <= k_max`, `0 <= m <= m_max`, indexed `[m][k]`.
pub fn dimension_table(k_max: i32, m_max: i32) -> Vec<Vec<usize>> {
    let mut cache = ImageCache::new();
    (0..=m_max.max(-1))
        .map(|m| {
            (0..=k_max.max(-1))
                .map(|k| if k % 2 != 0 || m % 2 != 0 { 0 } else { triality_basis_with(k, m, &mut cache).dimension() })
                .collect()
        })
        .collect()
}

/// Coefficients of `1/((1-x^2)(1-x^4)^2(1-x^6))` through `x^m_max`.
pub fn rank_series(m_max: i32) -> Vec<u64> {
    let n = (m_max.max(0) + 1) as usize;
    let mut coeffs = vec![0u64; n];
    coeffs[0] = 1;
    for step in [2usize, 4, 4, 6] {
        for i in step..n {
            coeffs[i] += coeffs[i - step];
        }
    }
    coeffs
}

/// Numerator of the Hilbert series of `R_{*,m}` over `Q[E4, E6]`, read off from
/// `dims[k] - dims[k-4] - dims[k-6] + dims[k-10]`.
pub fn free_module_numerator(dims: &[usize]) -> Vec<i64> {
    let at = |k: isize| if k < 0 { 0 } else { dims[k as usize] as i64 };
    (0..dims.len() as isize).map(|k| at(k) - at(k - 4) - at(k - 6) + at(k - 10)).collect()
}

/// Outcome of the free-module check for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleReport {
    pub degree: i32,
    pub rank: u64,
    pub numerator: Vec<i64>,
    /// Smallest `k` from which the partial sums of the numerator stay equal to
    /// the rank, if reached within the computed range.
    pub stabilized_at: Option<i32>,
}

impl FreeModuleReport {
    pub fn passes(&self) -> bool {
        self.numerator.iter().all(|&x| x >= 0) && self.stabilized_at.is_some()
    }
}

/// Runs the free-module check for degree `m` over weights `0..=k_max`.
pub fn free_module_report(m: i32, k_max: i32) -> FreeModuleReport {
    let table = dimension_table(k_max, m);
    free_module_report_from(m, &table[m as usize])
}

pub fn free_module_report_from(m: i32, dims: &[usize]) -> FreeModuleReport {
    let rank = rank_series(m)[m.max(0) as usize];
    let numerator = free_module_numerator(dims);
    let mut partial = 0i64;
    let mut stabilized_at = None;
    for (k, x) in numerator.iter().enumerate() {
        partial += x;
        if partial == rank as i64 {
            stabilized_at.get_or_insert(k as i32);
        } else {
            stabilized_at = None;
        }
    }
    FreeModuleReport { degree: m, rank, numerator, stabilized_at }
}

//! Identity suites run by `triality verify`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::covariants::{
    gordan_generators, order_of, psi_forward, psi_inverse, roberts_to_covariant, roberts_to_semiinvariant,
    semiinvariant_basis, semiinvariant_dimension, form_degrees, is_semiinvariant,
};
use crate::curve::{
    ab_to_cd, ab_var, cd_to_ab, cd_var, evaluate_ab, evaluate_cd, is_triality_invariant, jacobian_klmn,
    recover_klmn, refined_degrees, CurvePolyAB,
};
use crate::enumerator::{dimension_table, free_module_report_from, triality_basis};
use crate::invariant::{klmn_jacobian, Classification, Expansions, Invariant, KlmnPoly};
use crate::rational::{rat, ratio};
use crate::weyl::{jacobian_z, vandermonde_squares, weyl_generators, IPoly, ZPoly};

/// Largest weight and degree covered by the enumeration suites.
pub const K_MAX: i32 = 24;
pub const M_MAX: i32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Series,
    Jacobians,
    Curve,
    Isomorphism,
    Table1,
    Classify,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Series, Suite::Jacobians, Suite::Curve, Suite::Isomorphism, Suite::Table1, Suite::Classify];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Series => "series",
            Suite::Jacobians => "jacobians",
            Suite::Curve => "curve",
            Suite::Isomorphism => "isomorphism",
            Suite::Table1 => "table1",
            Suite::Classify => "classify",
        }
    }

    pub fn run(self, ctx: &Expansions) -> Vec<Check> {
        match self {
            Suite::Series => series(ctx),
            Suite::Jacobians => jacobians(ctx),
            Suite::Curve => curve(ctx),
            Suite::Isomorphism => isomorphism(),
            Suite::Table1 => table1(ctx),
            Suite::Classify => classify(ctx),
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| s.to_string())
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    /// Short topic label.
    pub topic: &'static str,
    pub identity: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "topic": self.topic,
            "identity": self.identity,
            "passed": self.passed,
            "detail": self.detail,
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} [{}/{}] {}", self.suite, self.topic, self.identity)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder { suite, checks: Vec::new() }
    }

    fn check(&mut self, topic: &'static str, identity: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, topic, identity: identity.into(), passed, detail: detail.into() });
    }

    fn done(self) -> Vec<Check> {
        self.checks
    }
}

fn klmn_expr(s: &str) -> KlmnPoly {
    s.replace("Delta", "((E4^3 - E6^2)/1728)").parse().expect("well-formed expression")
}

fn ipoly(s: &str) -> IPoly {
    s.parse().expect("well-formed expression")
}

fn series(ctx: &Expansions) -> Vec<Check> {
    let mut r = Recorder::new(Suite::Series);
    let e4 = ctx.e4();
    let e6 = ctx.e6();
    let from_eisenstein = (&e4.pow(3) - &e6.pow(2)).scale(&ratio(1, 1728));
    r.check("discriminant", "eta^24 = (E4^3 - E6^2)/1728", ctx.eta().pow(24) == from_eisenstein, "");
    r.check("discriminant", "Delta = (E4^3 - E6^2)/1728", *ctx.delta() == from_eisenstein, "");
    let sum = &(ctx.e(1) + ctx.e(2)) + ctx.e(3);
    r.check("half-periods", "e1 + e2 + e3 = 0", sum.is_zero(), format!("window q^{}", ctx.order()));
    let e12 = ctx.e(1) - ctx.e(2);
    let e13 = ctx.e(1) - ctx.e(3);
    let e23 = ctx.e(2) - ctx.e(3);
    let disc = (&(&e12 * &e13) * &e23).pow(2).scale(&rat(16));
    r.check("half-periods", "16 prod (e_i - e_j)^2 = Delta", disc == *ctx.delta(), "");
    let sym2 = &(&(ctx.e(1) * ctx.e(2)) + &(ctx.e(1) * ctx.e(3))) + &(ctx.e(2) * ctx.e(3));
    r.check("half-periods", "e1 e2 + e1 e3 + e2 e3 = -E4/48", sym2 == e4.scale(&ratio(-1, 48)), "");
    let prod = &(ctx.e(1) * ctx.e(2)) * ctx.e(3);
    r.check("half-periods", "e1 e2 e3 = E6/864", prod == e6.scale(&ratio(1, 864)), "");
    r.done()
}

fn jacobians(ctx: &Expansions) -> Vec<Check> {
    let mut r = Recorder::new(Suite::Jacobians);
    let vdm = vandermonde_squares();
    r.check(
        "weyl",
        "det d(I2, I4, I6, It4)/dz = 8 prod (z_i^2 - z_j^2)",
        jacobian_z(&weyl_generators()) == vdm.scale(&rat(8)),
        "",
    );
    let expected = ctx.eta().pow(12).scale(&ratio(-1, 16));
    r.check("klmn", "det d(K, L, M, N)/d(I2, I4, I6, It4) = -eta^12/16", klmn_jacobian(ctx) == expected, "");
    match jacobian_klmn(ctx) {
        Ok((ab, cd)) => {
            let d3 = ctx.delta().pow(3);
            let e4_inv = ctx.e4().inverse().expect("E4 is a unit");
            let e6_inv = ctx.e6().inverse().expect("E6 is a unit");
            r.check("curve", "det d(a2, b1, b2, b3)/d(K, L, M, N) = -Delta^3/(16 E4)", ab == (&d3 * &e4_inv).scale(&ratio(-1, 16)), "");
            r.check("curve", "det d(c1, c2, d2, d3)/d(K, L, M, N) = -3 Delta^3/(4 E6)", cd == (&d3 * &e6_inv).scale(&ratio(-3, 4)), "");
        }
        Err(e) => r.check("curve", "curve-coefficient Jacobians", false, e.to_string()),
    }
    let leading = |names: [&str; 4], cd: bool| -> Option<ZPoly> {
        let fs: Vec<ZPoly> = names
            .iter()
            .map(|n| {
                let inv = if cd { evaluate_cd(&cd_var(n), ctx) } else { evaluate_ab(&ab_var(n), ctx) };
                inv.and_then(|i| i.leading_ipoly()).map(|p| crate::weyl::ipoly_to_zpoly(&p))
            })
            .collect::<crate::Result<_>>()
            .ok()?;
        Some(jacobian_z(&fs.try_into().ok()?))
    };
    let ab = leading(["a2", "b1", "b2", "b3"], false);
    r.check("leading", "det d(a2, b1, b2, b3)^(0)/dz = prod (z_i^2 - z_j^2)/32", ab == Some(vdm.scale(&ratio(1, 32))), "");
    let cd = leading(["c1", "c2", "d2", "d3"], true);
    r.check("leading", "det d(c1, c2, d2, d3)^(0)/dz = 3 prod (z_i^2 - z_j^2)/8", cd == Some(vdm.scale(&ratio(3, 8))), "");
    r.done()
}

/// Leading coefficients of the curve coefficients after injection.
pub const LEADING_AB: [(&str, &str); 6] = [
    ("a0", "1/12"),
    ("a2", "I4 + It4/4 - 64*I2^2"),
    ("b0", "1/216"),
    ("b1", "I2"),
    ("b2", "-I4/6 + It4/48 + 128/3*I2^2"),
    ("b3", "I6/16 - 4*I2*I4 + I2*It4 + 512*I2^3"),
];

pub const LEADING_CD: [(&str, &str); 6] = [
    ("c0", "1/12"),
    ("c1", "-12*I2"),
    ("c2", "I4 + It4/4 + 368*I2^2"),
    ("d0", "1/216"),
    ("d2", "-I4/6 + It4/48 - 88/3*I2^2"),
    ("d3", "I6/16 + 8*I2*I4 - I2*It4/2 + 896*I2^3"),
];

fn curve(ctx: &Expansions) -> Vec<Check> {
    let mut r = Recorder::new(Suite::Curve);
    for (frame, table) in [("ab", LEADING_AB), ("cd", LEADING_CD)] {
        for (name, expected) in table {
            let inv = if frame == "ab" { evaluate_ab(&ab_var(name), ctx) } else { evaluate_cd(&cd_var(name), ctx) };
            let got = inv.and_then(|i| i.leading_ipoly());
            let passed = got.as_ref().is_ok_and(|p| *p == ipoly(expected));
            let detail = match got {
                Ok(p) if !passed => format!("got {p}"),
                Err(e) => e.to_string(),
                _ => String::new(),
            };
            r.check("leading", format!("{name}^(0) = {expected}"), passed, detail);
        }
    }
    for name in ["a2", "b1", "b2", "b3"] {
        let p = ab_var(name);
        let cd = ab_to_cd(&p);
        let same = match (evaluate_cd(&cd, ctx), evaluate_ab(&p, ctx)) {
            (Ok(x), Ok(y)) => x.poly() == y.poly() && x.weight() == y.weight() && x.degree() == y.degree(),
            _ => false,
        };
        r.check("frame change", format!("{name} agrees in both frames"), same, format!("window q^{}", ctx.order()));
        r.check("frame change", format!("cd_to_ab(ab_to_cd({name})) = {name}"), cd_to_ab(&cd) == p, "");
    }
    let delta = Invariant::modular(ctx.delta().clone(), 12);
    let k = &ctx.klmn()[0];
    let targets = [
        ("Delta K", &delta * k),
        ("Delta^2 L", &delta.pow(2) * &ctx.klmn()[1]),
        ("Delta^2 M", &delta.pow(2) * &ctx.klmn()[2]),
        ("Delta^3 N", &delta.pow(3) * &ctx.klmn()[3]),
    ];
    let rec = recover_klmn();
    for (i, (label, target)) in targets.iter().enumerate() {
        let ab = evaluate_ab(&rec.ab[i], ctx).map(|x| x.poly() == target.poly()).unwrap_or(false);
        r.check("recovery", format!("{label} = {}", rec.ab[i]), ab, "");
        let cd = evaluate_cd(&rec.cd[i], ctx).map(|x| x.poly() == target.poly()).unwrap_or(false);
        r.check("recovery", format!("{label} = {}", rec.cd[i]), cd, "");
    }
    r.done()
}

fn isomorphism() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Isomorphism);
    let table = dimension_table(K_MAX, M_MAX);
    let mut mismatches = Vec::new();
    let mut below = Vec::new();
    for m in (0..=M_MAX).step_by(2) {
        for k in (0..=K_MAX).step_by(2) {
            let dim = table[m as usize][k as usize];
            let mut oracle = 0;
            if (k - 3 * m) % 2 == 0 {
                for d_a in 0..=k / 4 {
                    for d_b in 0..=k / 6 {
                        if 4 * d_a + 6 * d_b + m == k {
                            oracle += semiinvariant_dimension(d_a, d_b, (k - 3 * m) / 2);
                        }
                    }
                }
            }
            if dim != oracle {
                mismatches.push(format!("(k={k}, m={m}): {dim} vs {oracle}"));
            }
            if k < 3 * m && dim != 0 {
                below.push(format!("(k={k}, m={m})"));
            }
        }
    }
    r.check(
        "dimensions",
        format!("dim R_(k,m) = sum of semiinvariant dimensions, k <= {K_MAX}, m <= {M_MAX}"),
        mismatches.is_empty(),
        mismatches.join(", "),
    );
    r.check("dimensions", "dim R_(k,m) = 0 for k < 3m", below.is_empty(), below.join(", "));
    for m in [0, 2, 4, 6] {
        let report = free_module_report_from(m, &table[m as usize]);
        let detail = match report.stabilized_at {
            Some(k) => format!("numerator sums to {} from weight {k}", report.rank),
            None => format!("numerator {:?} never reaches {}", report.numerator, report.rank),
        };
        r.check("free module", format!("degree {m} is free of rank {}", report.rank), report.passes(), detail);
    }
    let mut psi_ok = true;
    let mut order_ok = true;
    for m in (0..=M_MAX).step_by(2) {
        for k in (0..=K_MAX).step_by(2) {
            for p in triality_basis(k, m).basis {
                match psi_forward(&p) {
                    Ok(phi) => {
                        psi_ok &= is_semiinvariant(&phi) && psi_inverse(&phi).ok() == Some(p.clone());
                        let lead = *p.leading().expect("nonzero").0;
                        let (d_a, d_b) = refined_degrees(&lead);
                        order_ok &= order_of(&phi).ok() == Some(2 * d_a + 3 * d_b - m);
                    }
                    Err(_) => psi_ok = false,
                }
            }
        }
    }
    r.check("psi", "psi_inverse(psi_forward(p)) = p on every enumerated basis element", psi_ok, "");
    r.check("psi", "order of psi_forward(p) = 2 d_a + 3 d_b - m", order_ok, "");
    let mut back_ok = true;
    for d_a in 0..=3 {
        for d_b in 0..=3 {
            for omega in 0..=6 {
                for phi in semiinvariant_basis(d_a, d_b, omega) {
                    back_ok &= psi_inverse(&phi).and_then(|p| psi_forward(&p)).ok() == Some(phi);
                }
            }
        }
    }
    r.check("psi", "psi_forward(psi_inverse(phi)) = phi on semiinvariant bases, degrees <= 3", back_ok, "");
    for g in gordan_generators() {
        let phi = g.semiinvariant();
        let back = roberts_to_covariant(&phi);
        let ok = back.as_ref().is_ok_and(|c| *c == g.covariant && roberts_to_semiinvariant(c) == phi)
            && order_of(&phi).ok() == Some(g.omega);
        r.check("roberts", format!("round trip for {}", g.expression), ok, "");
    }
    r.done()
}

/// The six evaluated generators, as `(expression, ab form, E4/E6/K/L/M/N form)`
/// where `Delta` stands for `(E4^3 - E6^2)/1728`.
pub const EXAMPLES: [(&str, &str, &str); 6] = [
    ("f", "a0", "E4/12"),
    ("g", "b0", "E6/216"),
    ("<f,g>^1", "a0*b1/3", "Delta*K/36"),
    ("<f,f>^2", "2*a0*a2", "(6*Delta*K^2 - E4*E6*L + E4^2*M)/144"),
    ("<f,g>^2", "(a0*b2 + 3*a2*b0)/3", "(-(E6^2 + 576*Delta)*L + E4*E6*M)/3456"),
    ("P = <g,g>^2", "2*(3*b0*b2 - b1^2)/9", "(-12*E4*Delta*K^2 - E4^2*E6*L + E6^2*M)/93312"),
];

/// Number of generators per `(m, omega)`.
pub const TABLE1: [((i32, i32), usize); 14] = [
    ((0, 2), 1),
    ((0, 3), 1),
    ((2, 3), 1),
    ((4, 0), 1),
    ((4, 1), 1),
    ((4, 2), 1),
    ((6, 1), 1),
    ((6, 2), 1),
    ((6, 3), 1),
    ((8, 0), 1),
    ((10, 1), 1),
    ((12, 0), 2),
    ((12, 1), 1),
    ((18, 0), 1),
];

fn table1(ctx: &Expansions) -> Vec<Check> {
    let mut r = Recorder::new(Suite::Table1);
    let gens = gordan_generators();
    r.check("generators", "15 generators", gens.len() == 15, format!("{} found", gens.len()));
    let mut cells: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for g in &gens {
        *cells.entry((g.m, g.omega)).or_default() += 1;
    }
    let expected: BTreeMap<(i32, i32), usize> = TABLE1.into_iter().collect();
    r.check("generators", "counts per (m, omega)", cells == expected, format!("{cells:?}"));
    let mut by_omega = [0usize; 4];
    for g in &gens {
        by_omega[g.omega as usize] += 1;
    }
    r.check("generators", "totals by omega = (5, 4, 3, 3)", by_omega == [5, 4, 3, 3], format!("{by_omega:?}"));
    for g in &gens {
        let phi = g.semiinvariant();
        let lead = *phi.leading().expect("nonzero").0;
        let grading_ok = form_degrees(&lead) == (g.d_a, g.d_b) && g.weight() == 4 * g.d_a + 6 * g.d_b + g.m;
        r.check("generators", format!("{} leading coefficient is semiinvariant", g.label()), is_semiinvariant(&phi) && grading_ok, "");
        let p = psi_inverse(&phi);
        let member = p.as_ref().is_ok_and(is_triality_invariant);
        r.check("generators", format!("{} psi_inverse is a triality invariant", g.label()), member, "");
        let expressed = p.ok().map(|p| evaluate_ab(&p, ctx).and_then(|x| ctx.express_in_klmn(&x)));
        let ok = matches!(expressed, Some(Ok(_)));
        let detail = match expressed {
            Some(Err(e)) => e.to_string(),
            _ => String::new(),
        };
        r.check("generators", format!("{} is a polynomial in E4, E6, K, L, M, N", g.label()), ok, detail);
    }
    for (expr, ab, klmn) in EXAMPLES {
        let Some(g) = gens.iter().find(|g| g.expression == expr) else {
            r.check("examples", format!("{expr} present"), false, "");
            continue;
        };
        let p = psi_inverse(&g.semiinvariant()).ok();
        let expected_ab: CurvePolyAB = ab.parse().expect("well-formed");
        r.check("examples", format!("{} = {ab}", g.expression), p.as_ref() == Some(&expected_ab), "");
        let expected_klmn = klmn_expr(klmn);
        let got = evaluate_ab(&expected_ab, ctx).and_then(|x| ctx.express_in_klmn(&x));
        let passed = got.as_ref().is_ok_and(|x| *x == expected_klmn);
        let detail = match got {
            Ok(x) if !passed => format!("got {x}"),
            Err(e) => e.to_string(),
            _ => String::new(),
        };
        r.check("examples", format!("{ab} = {klmn}"), passed, detail);
    }
    r.done()
}

fn classify(ctx: &Expansions) -> Vec<Check> {
    let mut r = Recorder::new(Suite::Classify);
    let [k, l, m, n] = ctx.klmn();
    let delta = Invariant::modular(ctx.delta().clone(), 12);
    let e4 = Invariant::modular(ctx.e4().clone(), 4);
    let e6 = Invariant::modular(ctx.e6().clone(), 6);
    let window = format!("window q^{}", ctx.order());
    let cases: [(&str, Invariant, Classification); 7] = [
        ("Delta K", &delta * k, Classification::Invariant),
        ("K", k.clone(), Classification::WeakOnly),
        ("L", l.clone(), Classification::WeakOnly),
        ("M", m.clone(), Classification::WeakOnly),
        ("N", n.clone(), Classification::WeakOnly),
        ("E4", e4, Classification::Invariant),
        ("E6", e6, Classification::Invariant),
    ];
    for (name, inv, expected) in cases {
        let got = inv.classify();
        r.check("classification", format!("{name} is {expected}"), got == expected, format!("{got}, {window}"));
    }
    r.done()
}

/// Runs suites in order.
pub fn run_suites(suites: &[Suite], ctx: &Expansions) -> Vec<Check> {
    suites.iter().flat_map(|s| s.run(ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_low_order() {
        let ctx = Expansions::new(6);
        for suite in Suite::ALL {
            for c in suite.run(&ctx) {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nosuch".parse::<Suite>().is_err());
    }
}

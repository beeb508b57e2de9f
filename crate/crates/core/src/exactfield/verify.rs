//! Exact checks of the dimension-3 identities: coefficient extraction from the
//! reduced determinant, and the evaluation at the reference point `nu0`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::{det3, ExactPoly, Ring, NU1, NU2, NU3, X, Z};
use super::{alg_sign_with_precision, AlgComplex, AlgNum, Sign, DEFAULT_SIGN_BITS};

/// One line of a proof log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: &str, statement: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            statement: statement.to_string(),
            passed,
            detail,
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check: `PASS name: statement [detail]`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}", c.name, c.statement));
            if let Some(d) = &c.detail {
                out.push_str(&format!(" [{d}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} of {} checks passed\n",
            self.passed(),
            self.checks.len()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

type RPoly = ExactPoly<BigRational>;
type CPoly = ExactPoly<AlgComplex>;

fn v(i: usize) -> RPoly {
    RPoly::var(i)
}

fn k(n: i64) -> RPoly {
    RPoly::from_int(n)
}

/// `(e1, e2, e3)` of `(nu1, nu2, nu3)` as polynomials.
fn symmetric_polys() -> (RPoly, RPoly, RPoly) {
    let (a, b, c) = (v(NU1), v(NU2), v(NU3));
    let e1 = a.add(&b).add(&c);
    let e2 = a.mul(&b).add(&a.mul(&c)).add(&b.mul(&c));
    let e3 = a.mul(&b).mul(&c);
    (e1, e2, e3)
}

/// `a, b, c` from their symmetric-function expressions.
pub fn abc_polys() -> (RPoly, RPoly, RPoly) {
    let (e1, e2, e3) = symmetric_polys();
    let a = e2.mul(&k(2).sub(&e1)).add(&e3.mul(&e1.scale(&Ring::from_int(2)).sub(&k(3))));
    let c = e2.sub(&e1.scale(&Ring::from_int(2))).add(&k(3));
    let b = e1.sub(&k(2)).mul(&c).add(&e3.sub(&e1).add(&k(2)).scale(&Ring::from_int(3)));
    (a, b, c)
}

/// The bracket
/// `(nu1 + nu3 - 2)(z nu2 + z nu3 - 2)(1 - z nu1)^2 (1 - nu2)^2
///  - (nu2 + nu3 - 2)(z nu1 + z nu3 - 2)(1 - nu1)^2 (1 - z nu2)^2`.
pub fn bracket_poly() -> RPoly {
    let z = v(Z);
    let n3 = v(NU3);
    let term = |p: RPoly, q: RPoly| {
        let first = p.add(&n3).sub(&k(2));
        let second = z.mul(&q.add(&n3)).sub(&k(2));
        let third = k(1).sub(&z.mul(&p)).pow(2);
        let fourth = k(1).sub(&q).pow(2);
        first.mul(&second).mul(&third).mul(&fourth)
    };
    term(v(NU1), v(NU2)).sub(&term(v(NU2), v(NU1)))
}

/// `(A, B, C)` read off from the bracket: `z^3 -> A`, `z^0 -> -2C`, `z^1 -> B + 2C`.
pub fn extracted_abc(bracket: &RPoly) -> (RPoly, RPoly, RPoly) {
    let half: BigRational = BigRational::new(1.into(), 2.into());
    let a = bracket.coefficient_of(Z, 3);
    let c = bracket.coefficient_of(Z, 0).neg().scale(&half);
    let b = bracket.coefficient_of(Z, 1).sub(&c.scale(&Ring::from_int(2)));
    (a, b, c)
}

pub fn verify_appendix_a() -> VerificationReport {
    let mut report = VerificationReport::default();
    let bracket = bracket_poly();
    let z = v(Z);
    let factor = v(NU2).sub(&v(NU1));
    let (a, b, c) = abc_polys();
    let (big_a, big_b, big_c) = extracted_abc(&bracket);

    report.push(
        "appendix_a.bracket_cubic",
        "the bracket is a polynomial of degree 3 in z",
        bracket.degree_in(Z) == 3,
        Some(format!("{} terms", bracket.num_terms())),
    );

    // 3x3 determinant with rows scaled by (1 - nu_j)^2 (1 - z nu_j)^2
    let rows: Vec<[RPoly; 3]> = [NU1, NU2, NU3]
        .iter()
        .map(|&j| {
            let p = k(1).sub(&v(j)).pow(2);
            let q = k(1).sub(&z.mul(&v(j))).pow(2);
            [q.clone(), p.clone(), p.mul(&q)]
        })
        .collect();
    let m = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
    let lhs = det3(&m);
    let rhs = v(NU1)
        .sub(&v(NU3))
        .mul(&v(NU2).sub(&v(NU3)))
        .mul(&z)
        .mul(&bracket);
    report.push(
        "appendix_a.determinant_reduction",
        "det[(1-nu_j)^-2, (1-z nu_j)^-2, 1] prod_j (1-nu_j)^2 (1-z nu_j)^2 = (nu1-nu3)(nu2-nu3) z * bracket",
        lhs == rhs,
        None,
    );

    report.push(
        "appendix_a.a_coefficient",
        "z^3 coefficient A = (nu2 - nu1) a(nu)",
        big_a == factor.mul(&a),
        None,
    );
    report.push(
        "appendix_a.c_coefficient",
        "constant coefficient -2C with C = (nu2 - nu1) c(nu)",
        big_c == factor.mul(&c),
        None,
    );
    report.push(
        "appendix_a.b_coefficient",
        "z coefficient B + 2C with B = (nu2 - nu1) b(nu)",
        big_b == factor.mul(&b),
        None,
    );

    let quadratic = big_a.mul(&z.pow(2)).sub(&big_b.mul(&z)).add(&big_c.scale(&Ring::from_int(2)));
    report.push(
        "appendix_a.factorization",
        "bracket = (z - 1)(A z^2 - B z + 2C)",
        bracket == z.sub(&k(1)).mul(&quadratic),
        None,
    );
    report
}

/// A deliberately wrong input for exercising the verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Negates the linear coefficient of the displayed polynomial `p`.
    PCoeff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub fault: Option<Fault>,
    /// Starting precision for exact sign decisions.
    pub sign_start_bits: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            fault: None,
            sign_start_bits: DEFAULT_SIGN_BITS,
        }
    }
}

/// `nu0 = (e^{i pi/6}, e^{i pi/3}, e^{-i pi/6})`.
pub fn nu0_exact() -> [AlgComplex; 3] {
    [
        AlgComplex::exp_i_pi_twelfths(2),
        AlgComplex::exp_i_pi_twelfths(4),
        AlgComplex::exp_i_pi_twelfths(-2),
    ]
}

fn exact_sym(nu: &[AlgComplex; 3]) -> [AlgComplex; 3] {
    let e1 = &(&nu[0] + &nu[1]) + &nu[2];
    let e2 = &(&(&nu[0] * &nu[1]) + &(&nu[0] * &nu[2])) + &(&nu[1] * &nu[2]);
    let e3 = &(&nu[0] * &nu[1]) * &nu[2];
    [e1, e2, e3]
}

/// Exact `(a, b, c)` at an exact `nu`.
pub fn abc_exact(nu: &[AlgComplex; 3]) -> [AlgComplex; 3] {
    let [e1, e2, e3] = exact_sym(nu);
    let two = AlgComplex::from_int(2);
    let three = AlgComplex::from_int(3);
    let c = &(&e2 - &(&e1 * &two)) + &three;
    let a = &(&e2 * &(&two - &e1)) + &(&e3 * &(&(&e1 * &two) - &three));
    let b = &(&(&e1 - &two) * &c) + &(&(&(&e3 - &e1) + &two) * &three);
    [a, b, c]
}

fn real(x: AlgNum) -> AlgComplex {
    AlgComplex::real(x)
}

/// Coefficients `[p0, p1, p2]` of the displayed real quadratic
/// `(3√3 - 5) x^2 + (3√6 - 6√2) x + 4√3 - 6`.
pub fn displayed_p() -> [AlgNum; 3] {
    [
        AlgNum::from_ints(-6, 0, 4, 0, 1),
        AlgNum::from_ints(0, -6, 0, 3, 1),
        AlgNum::from_ints(-5, 0, 3, 0, 1),
    ]
}

fn eval_real_quadratic(p: &[AlgNum; 3], x: &AlgNum) -> AlgNum {
    &(&p[0] + &(&p[1] * x)) + &(&(&p[2] * x) * x)
}

pub fn verify_appendix_b(options: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    let bits = options.sign_start_bits;
    let nu = nu0_exact();
    let [e1, e2, e3] = exact_sym(&nu);

    let pi31 = AlgComplex::new(AlgNum::from_ints(1, 0, 2, 0, 2), AlgNum::from_ints(0, 0, 1, 0, 2));
    let pi32 = AlgComplex::new(AlgNum::from_ints(2, 0, 1, 0, 2), AlgNum::from_ints(3, 0, 0, 0, 2));
    let pi33 = AlgComplex::exp_i_pi_twelfths(4);
    for (name, statement, got, want) in [
        ("appendix_b.pi31", "pi_{3,1}(nu0) = (1 + 2√3 + i√3)/2", &e1, &pi31),
        ("appendix_b.pi32", "pi_{3,2}(nu0) = (2 + √3 + 3i)/2", &e2, &pi32),
        ("appendix_b.pi33", "pi_{3,3}(nu0) = e^{i pi/3}", &e3, &pi33),
    ] {
        report.push(name, statement, got == want, Some(format!("{got}")));
    }

    let [a, b, c] = abc_exact(&nu);
    let a_want = real(AlgNum::from_ints(-5, 0, 3, 0, 1)) * AlgComplex::exp_i_pi_twelfths(4);
    let b_want = real(AlgNum::from_ints(0, 6, 0, -3, 1)) * AlgComplex::exp_i_pi_twelfths(1);
    let c_want = real(AlgNum::from_ints(-3, 0, 2, 0, 1)) * AlgComplex::exp_i_pi_twelfths(-2);
    for (name, statement, got, want) in [
        ("appendix_b.a_value", "a(nu0) = (3√3 - 5) e^{i pi/3}", &a, &a_want),
        ("appendix_b.b_value", "b(nu0) = (6√2 - 3√6) e^{i pi/12}", &b, &b_want),
        ("appendix_b.c_value", "c(nu0) = (2√3 - 3) e^{-i pi/6}", &c, &c_want),
    ] {
        report.push(name, statement, got == want, Some(format!("{got}")));
    }

    // e^{i pi/6} (a z^2 - b z + 2c) with z = e^{-i pi/4} x, as a polynomial in x
    let x = CPoly::var(X);
    let zpoly = x.scale(&AlgComplex::exp_i_pi_twelfths(-3));
    let quad = zpoly
        .pow(2)
        .scale(&a)
        .sub(&zpoly.scale(&b))
        .add(&CPoly::constant(&c * &AlgComplex::from_int(2)));
    let derived = quad.scale(&AlgComplex::exp_i_pi_twelfths(2));
    let mut shown = displayed_p();
    if options.fault == Some(Fault::PCoeff) {
        shown[1] = -&shown[1];
    }
    let shown_poly = (0..3).fold(CPoly::zero(), |acc, i| {
        acc.add(&x.pow(i as u32).scale(&real(shown[i].clone())))
    });
    report.push(
        "appendix_b.p_substitution",
        "e^{i pi/6}(a z^2 - b z + 2c) at z = e^{-i pi/4} x equals (3√3-5)x^2 + (3√6-6√2)x + 4√3-6",
        derived == shown_poly,
        None,
    );

    // remaining checks use the derived polynomial; its real parts are p when
    // the substitution check passes
    let p: [AlgNum; 3] = [0, 1, 2].map(|i| derived.coefficient_of(X, i).constant_term().re);
    let disc = &p[1].square() - &(&(&p[2] * &p[0]) * &AlgNum::from_int(4));
    report.push(
        "appendix_b.discriminant_value",
        "discriminant of p equals 80√3 - 138",
        disc == AlgNum::from_ints(-138, 0, 80, 0, 1),
        Some(format!("{disc}")),
    );
    let (disc_sign, used) = alg_sign_with_precision(&disc, bits);
    report.push(
        "appendix_b.discriminant_positive",
        "80√3 - 138 > 0, so both roots of p are real",
        disc_sign == Sign::Positive,
        Some(format!("decided at {used} bits")),
    );
    let (lead_sign, used) = alg_sign_with_precision(&p[2], bits);
    report.push(
        "appendix_b.leading_positive",
        "leading coefficient 3√3 - 5 > 0",
        lead_sign == Sign::Positive,
        Some(format!("decided at {used} bits")),
    );
    let p_at_0 = eval_real_quadratic(&p, &AlgNum::zero());
    let (s0, used) = alg_sign_with_precision(&p_at_0, bits);
    report.push(
        "appendix_b.p0_positive",
        "p(0) = 4√3 - 6 > 0",
        s0 == Sign::Positive,
        Some(format!("{p_at_0}, decided at {used} bits")),
    );
    let p_at_1 = eval_real_quadratic(&p, &AlgNum::one());
    let (s1, used) = alg_sign_with_precision(&p_at_1, bits);
    report.push(
        "appendix_b.p1_negative",
        "p(1) = 7√3 + 3√6 - 6√2 - 11 < 0",
        s1 == Sign::Negative,
        Some(format!("{p_at_1}, decided at {used} bits")),
    );
    report.push(
        "appendix_b.smaller_root_in_unit_interval",
        "p opens upward with p(0) > 0 > p(1): its smaller root lies in (0, 1), the other exceeds 1",
        lead_sign == Sign::Positive && s0 == Sign::Positive && s1 == Sign::Negative,
        None,
    );
    report
}

//! The Bannai-Ito algebra realized by shift and reflection operators acting
//! on polynomials:
//!
//! ```text
//! K1 = F(x)(1 - R) + G(x)(T⁺R - 1) + h,  K2 = 2x + 1/2,  K3 = {K1, K2} - ω3
//! F(x) = (x-ρ1)(x-ρ2)/x,  G(x) = (x-r1+1/2)(x-r2+1/2)/(x+1/2)
//! ```
//!
//! `K1` preserves degree, so every check runs on monomials `x^j` and extends
//! by linearity.

use serde::{Deserialize, Serialize};

use crate::error::{BiError, Result};
use crate::exact::Rat;
use crate::matrix::RatMatrix;
use crate::poly::{poly_divide_exact, poly_reflect, poly_shift_reflect, Poly};
use crate::report::VerificationReport;

/// Parameters `(ρ1, ρ2, r1, r2)` with the derived `h` and structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BIParams {
    rho1: Rat,
    rho2: Rat,
    r1: Rat,
    r2: Rat,
    h: Rat,
    omega1: Rat,
    omega2: Rat,
    omega3: Rat,
}

impl BIParams {
    pub fn new(rho1: Rat, rho2: Rat, r1: Rat, r2: Rat) -> BIParams {
        let h = &rho1 + &rho2 - &r1 - &r2 + Rat::half();
        let four = Rat::int(4);
        let two = Rat::int(2);
        let omega1 = &four * (&rho1 * &rho2 + &r1 * &r2);
        let omega2 = &two * (&rho1 * &rho1 + &rho2 * &rho2 - &r1 * &r1 - &r2 * &r2);
        let omega3 = &four * (&rho1 * &rho2 - &r1 * &r2);
        BIParams { rho1, rho2, r1, r2, h, omega1, omega2, omega3 }
    }

    /// Parses four `p/q` strings.
    pub fn parse(rho1: &str, rho2: &str, r1: &str, r2: &str) -> Result<BIParams> {
        Ok(BIParams::new(rho1.parse()?, rho2.parse()?, r1.parse()?, r2.parse()?))
    }

    pub fn rho1(&self) -> &Rat {
        &self.rho1
    }
    pub fn rho2(&self) -> &Rat {
        &self.rho2
    }
    pub fn r1(&self) -> &Rat {
        &self.r1
    }
    pub fn r2(&self) -> &Rat {
        &self.r2
    }
    pub fn h(&self) -> &Rat {
        &self.h
    }
    pub fn omega1(&self) -> &Rat {
        &self.omega1
    }
    pub fn omega2(&self) -> &Rat {
        &self.omega2
    }
    pub fn omega3(&self) -> &Rat {
        &self.omega3
    }

    /// Copy with ω3 shifted by one, for exercising the failure paths of the
    /// checkers and the CLI.
    #[doc(hidden)]
    pub fn with_corrupted_omega3(&self) -> BIParams {
        let mut p = self.clone();
        p.omega3 = &p.omega3 + Rat::one();
        p
    }

    /// `(x - ρ1)(x - ρ2)`, the numerator of `F`.
    fn f_numer(&self) -> Poly {
        &Poly::linear(Rat::one(), -&self.rho1) * &Poly::linear(Rat::one(), -&self.rho2)
    }

    /// `(x - r1 + 1/2)(x - r2 + 1/2)`, the numerator of `G`.
    fn g_numer(&self) -> Poly {
        let half = Rat::half();
        &Poly::linear(Rat::one(), &half - &self.r1) * &Poly::linear(Rat::one(), &half - &self.r2)
    }
}

pub fn k1_apply(params: &BIParams, p: &Poly) -> Poly {
    // Both difference quotients are exact for every polynomial.
    let odd = poly_divide_exact(&(p - &poly_reflect(p)), &Rat::zero()).expect("(1-R)p vanishes at 0");
    let shifted =
        poly_divide_exact(&(&poly_shift_reflect(p) - p), &-Rat::half()).expect("(T⁺R-1)p vanishes at -1/2");
    let mut out = &params.f_numer() * &odd;
    out = &out + &(&params.g_numer() * &shifted);
    &out + &p.scale(&params.h)
}

pub fn k2_apply(_params: &BIParams, p: &Poly) -> Poly {
    &Poly::linear(Rat::int(2), Rat::half()) * p
}

/// `K3 = {K1, K2} - ω3`, always by composition.
pub fn k3_apply(params: &BIParams, p: &Poly) -> Poly {
    let a = k1_apply(params, &k2_apply(params, p));
    let b = k2_apply(params, &k1_apply(params, p));
    &(&a + &b) - &p.scale(&params.omega3)
}

pub fn structure_constants(params: &BIParams) -> (Rat, Rat, Rat) {
    (params.omega1.clone(), params.omega2.clone(), params.omega3.clone())
}

/// Checks the three anticommutation relations on `x^j`, `j <= maxdeg`.
pub fn check_bi_relations(params: &BIParams, maxdeg: usize) -> VerificationReport {
    let mut report = VerificationReport::new("bi-operator relations");
    for j in 0..=maxdeg {
        let xj = Poly::monomial(j, Rat::one());
        let k1 = k1_apply(params, &xj);
        let k2 = k2_apply(params, &xj);
        let k3 = k3_apply(params, &xj);

        let lhs = &k1_apply(params, &k2) + &k2_apply(params, &k1);
        let rhs = &k3 + &xj.scale(&params.omega3);
        report.check_eq("{K1,K2} = K3 + w3", j, &lhs, &rhs);

        let lhs = &k2_apply(params, &k3) + &k3_apply(params, &k2);
        let rhs = &k1 + &xj.scale(&params.omega1);
        report.check_eq("{K2,K3} = K1 + w1", j, &lhs, &rhs);

        let lhs = &k3_apply(params, &k1) + &k1_apply(params, &k3);
        let rhs = &k2 + &xj.scale(&params.omega2);
        report.check_eq("{K3,K1} = K2 + w2", j, &lhs, &rhs);
    }
    report
}

/// Closed-form Casimir value `2(ρ1² + ρ2² + r1² + r2²) - 1/4`.
pub fn casimir_value(params: &BIParams) -> Rat {
    let s = &params.rho1 * &params.rho1 + &params.rho2 * &params.rho2 + &params.r1 * &params.r1 + &params.r2 * &params.r2;
    Rat::int(2) * s - Rat::frac(1, 4)
}

/// Applies `K1² + K2² + K3²` to every `x^j` and returns the common scalar.
pub fn casimir_scalar(params: &BIParams, maxdeg: usize) -> Result<Rat> {
    let mut value: Option<Rat> = None;
    for j in 0..=maxdeg {
        let xj = Poly::monomial(j, Rat::one());
        let q = [k1_apply, k2_apply, k3_apply]
            .iter()
            .map(|k| k(params, &k(params, &xj)))
            .fold(Poly::zero(), |acc, t| &acc + &t);
        let c = q.coeff(j);
        let scalar = q == xj.scale(&c);
        match &value {
            _ if !scalar => {
                return Err(BiError::NonScalarCasimir {
                    degree: j,
                    expected: value.map_or_else(|| "scalar".into(), |v| v.to_string()),
                    got: q.to_string(),
                })
            }
            None => value = Some(c),
            Some(v) if *v != c => {
                return Err(BiError::NonScalarCasimir { degree: j, expected: v.to_string(), got: c.to_string() })
            }
            Some(_) => {}
        }
    }
    Ok(value.expect("maxdeg >= 0 gives at least one degree"))
}

/// Matrix of `K1` on `{1, x, ..., x^N}`; entry `(i, j)` is the `x^i`
/// coefficient of `K1 x^j`.
pub fn k1_matrix(params: &BIParams, n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n + 1, n + 1);
    for j in 0..=n {
        let col = k1_apply(params, &Poly::monomial(j, Rat::one()));
        for i in 0..=n {
            m.set(i, j, col.coeff(i));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    pub(crate) fn p1() -> BIParams {
        BIParams::new(Rat::one(), Rat::int(2), r(1, 2), r(1, 4))
    }

    #[test]
    fn derived_fields() {
        let p = p1();
        assert_eq!(p.h(), &r(11, 4));
        assert_eq!(structure_constants(&p), (r(17, 2), r(75, 8), r(15, 2)));
        let a = r(7, 3);
        let spin = BIParams::new(Rat::zero(), a.clone(), Rat::zero(), a);
        assert_eq!(structure_constants(&spin), (Rat::zero(), Rat::zero(), Rat::zero()));
        let zero = BIParams::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero());
        assert_eq!(structure_constants(&zero), (Rat::zero(), Rat::zero(), Rat::zero()));
    }

    #[test]
    fn k1_examples() {
        let p = p1();
        assert_eq!(k1_apply(&p, &Poly::one()), Poly::constant(r(11, 4)));
        assert_eq!(k1_apply(&p, &Poly::x()), Poly::linear(r(-15, 4), Rat::int(4)));
        let b1 = Poly::linear(Rat::one(), r(-8, 13));
        assert_eq!(k1_apply(&p, &b1), b1.scale(&r(-15, 4)));
    }

    #[test]
    fn k2_examples() {
        let p = p1();
        assert_eq!(k2_apply(&p, &Poly::one()), Poly::linear(Rat::int(2), r(1, 2)));
        assert_eq!(k2_apply(&p, &Poly::x()), Poly::new(vec![Rat::zero(), r(1, 2), Rat::int(2)]));
        assert_eq!(k2_apply(&p, &Poly::zero()), Poly::zero());
    }

    #[test]
    fn k3_examples() {
        let p = p1();
        let k2one = Poly::linear(Rat::int(2), r(1, 2));
        let expected = &(&k1_apply(&p, &k2one) + &k2one.scale(&r(11, 4))) - &Poly::constant(r(15, 2));
        assert_eq!(k3_apply(&p, &Poly::one()), expected);
        let a = r(-5, 7);
        let spin = BIParams::new(Rat::zero(), a.clone(), Rat::zero(), a);
        let one = Poly::one();
        let anti = &k1_apply(&spin, &k2_apply(&spin, &one)) + &k2_apply(&spin, &k1_apply(&spin, &one));
        assert_eq!(k3_apply(&spin, &one), anti);
        assert_eq!(k3_apply(&p, &Poly::zero()), Poly::zero());
    }

    #[test]
    fn relations_hold() {
        let rep = check_bi_relations(&p1(), 10);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.summary.total, 33);
        let a = r(3, 5);
        assert!(check_bi_relations(&BIParams::new(Rat::zero(), a.clone(), Rat::zero(), a), 10).passed());
        assert!(check_bi_relations(&BIParams::new(r(-3, 7), r(9, 2), r(5, 3), Rat::int(-2)), 0).passed());
    }

    #[test]
    fn corrupted_structure_constant_is_caught() {
        let rep = check_bi_relations(&p1().with_corrupted_omega3(), 2);
        assert!(!rep.passed());
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir_scalar(&p1(), 8).unwrap(), r(83, 8));
        let zero = BIParams::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero());
        assert_eq!(casimir_scalar(&zero, 8).unwrap(), r(-1, 4));
        let a = r(2, 3);
        let spin = BIParams::new(Rat::zero(), a.clone(), Rat::zero(), a.clone());
        assert_eq!(casimir_scalar(&spin, 8).unwrap(), Rat::int(4) * &a * &a - r(1, 4));
    }

    #[test]
    fn casimir_detects_corruption() {
        // Corrupting ω3 changes K3 and breaks scalarity.
        assert!(casimir_scalar(&p1().with_corrupted_omega3(), 4).is_err());
    }

    #[test]
    fn k1_matrix_examples() {
        let p = p1();
        let m = k1_matrix(&p, 1);
        assert_eq!(m.to_rows(), vec![vec![r(11, 4), Rat::int(4)], vec![Rat::zero(), r(-15, 4)]]);
        assert_eq!(k1_matrix(&p, 0).to_rows(), vec![vec![r(11, 4)]]);
        let m3 = k1_matrix(&p, 3);
        assert!(m3.is_upper_triangular());
        assert_eq!(m3.diag(), vec![r(11, 4), r(-15, 4), r(19, 4), r(-23, 4)]);
    }
}

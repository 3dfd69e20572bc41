//! Bannai-Ito polynomials `B_n(x)`.
//!
//! Three independent constructions are provided and cross-checked in the
//! tests: the three-term recurrence ([`bi_recurrence`]), the terminating
//! double `4F3` sum ([`bi_hypergeometric`]) and back-substitution in the
//! upper-triangular matrix of `K1` ([`bi_from_operator`]).

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::bi_operator::{k1_apply, k1_matrix, k2_apply, k3_apply, BIParams};
use crate::error::{BiError, Result};
use crate::exact::Rat;
use crate::poly::{pochhammer, pochhammer_poly, poly_divide_exact, Poly};
use crate::report::VerificationReport;

/// `λ_n = (-1)^n (n + h)`.
pub fn eigenvalue(params: &BIParams, n: usize) -> Rat {
    Rat::sign_pow(n) * (Rat::int(n as i64) + params.h())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceCoeffs {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Rat,
    #[serde(rename = "C")]
    pub c: Rat,
}

fn nonzero(value: Rat, what: impl FnOnce() -> String) -> Result<Rat> {
    if value.is_zero() {
        Err(BiError::DegenerateParameters(format!("{} vanishes", what())))
    } else {
        Ok(value)
    }
}

/// Recurrence coefficients `(A_n, C_n)`. `C_0 = 0` is taken directly since
/// its numerator carries the factor `n`.
pub fn recurrence_coeffs(params: &BIParams, n: usize) -> Result<RecurrenceCoeffs> {
    let (rho1, rho2, r1, r2) = (params.rho1(), params.rho2(), params.r1(), params.r2());
    let nn = Rat::int(n as i64);
    let one = Rat::one();
    let two = Rat::int(2);
    let four = Rat::int(4);
    let base = &nn + rho1 + rho2 - r1 - r2;
    let a_den = nonzero(&four * (&base + &one), || format!("A_{n} denominator 4(n+rho1+rho2-r1-r2+1)"))?;
    let a = if n % 2 == 0 {
        (&nn + &one + &two * rho1 - &two * r1) * (&nn + &one + &two * rho1 - &two * r2) / a_den
    } else {
        (&nn + &one + &two * (rho1 + rho2) - &two * (r1 + r2)) * (&nn + &one + &two * (rho1 + rho2)) / a_den
    };
    let c = if n == 0 {
        Rat::zero()
    } else {
        let c_den = nonzero(&four * &base, || format!("C_{n} denominator 4(n+rho1+rho2-r1-r2)"))?;
        if n % 2 == 0 {
            -(&nn * (&nn - &two * r1 - &two * r2)) / c_den
        } else {
            -((&nn + &two * rho2 - &two * r2) * (&nn + &two * rho2 - &two * r1)) / c_den
        }
    };
    Ok(RecurrenceCoeffs { n, a, c })
}

/// `B_0, ..., B_n` from `B_{k+1} = (x - (ρ1 - A_k - C_k)) B_k - A_{k-1} C_k B_{k-1}`.
pub fn bi_recurrence_all(params: &BIParams, n: usize) -> Result<Vec<Poly>> {
    let mut out = vec![Poly::one()];
    let mut prev_a: Option<Rat> = None;
    for k in 0..n {
        let RecurrenceCoeffs { a, c, .. } = recurrence_coeffs(params, k)?;
        let shift = params.rho1() - &a - &c;
        let mut next = &Poly::linear(Rat::one(), -shift) * &out[k];
        if let Some(pa) = &prev_a {
            next = &next - &out[k - 1].scale(&(pa * &c));
        }
        out.push(next);
        prev_a = Some(a);
    }
    Ok(out)
}

pub fn bi_recurrence(params: &BIParams, n: usize) -> Result<Poly> {
    Ok(bi_recurrence_all(params, n)?.pop().expect("nonempty"))
}

/// Terminating `4F3(upper; lower | 1)` summed for `k = 0..=terms`, with
/// polynomial upper parameters.
fn hyper_4f3(upper: [&Poly; 4], lower: [(&Rat, &str); 3], terms: usize) -> Result<Poly> {
    let mut sum = Poly::zero();
    let mut factorial = Rat::one();
    for k in 0..=terms {
        if k > 0 {
            factorial *= &Rat::int(k as i64);
        }
        let mut denom = factorial.clone();
        for (b, name) in lower {
            let pk = pochhammer(b, k);
            if pk.is_zero() {
                return Err(BiError::DegenerateParameters(format!(
                    "lower 4F3 parameter {name} = {b} gives a vanishing Pochhammer ({name})_{k}"
                )));
            }
            denom *= &pk;
        }
        let num = upper.iter().fold(Poly::one(), |acc, u| &acc * &pochhammer_poly(u, k));
        sum = &sum + &num.scale(&(Rat::one() / denom));
    }
    Ok(sum)
}

/// Checks that no lower `4F3` parameter of `B_0..B_nmax` hits a
/// nonpositive integer within the summation range.
pub fn hypergeometric_lower_check(params: &BIParams, nmax: usize) -> Result<()> {
    let (rho1, rho2, r1, r2) = (params.rho1(), params.rho2(), params.r1(), params.r2());
    let half = Rat::half();
    let three_half = Rat::frac(3, 2);
    let m = nmax / 2;
    let ms = nmax.saturating_sub(1) / 2;
    let lower = [
        (Rat::one() - r1 - r2, "1-r1-r2", m),
        (rho1 - r1 + &half, "rho1-r1+1/2", m),
        (rho2 - r1 + &half, "rho2-r1+1/2", m),
        (rho1 - r1 + &three_half, "rho1-r1+3/2", ms),
        (rho2 - r1 + &three_half, "rho2-r1+3/2", ms),
    ];
    for (b, name, terms) in lower {
        for k in 1..=terms {
            if pochhammer(&b, k).is_zero() {
                return Err(BiError::DegenerateParameters(format!(
                    "lower 4F3 parameter {name} = {b} gives a vanishing Pochhammer ({name})_{k} (needed for n <= {nmax})"
                )));
            }
        }
    }
    Ok(())
}

/// `B_n` from its hypergeometric representation, scaled by `c_n` so it is monic.
pub fn bi_hypergeometric(params: &BIParams, n: usize) -> Result<Poly> {
    let (rho1, rho2, r1, r2, h) = (params.rho1(), params.rho2(), params.r1(), params.r2(), params.h());
    let half = Rat::half();
    let three_half = Rat::frac(3, 2);
    let m = n / 2;
    let parity = n % 2;

    let b1 = Rat::one() - r1 - r2;
    let b2 = rho1 - r1 + &half;
    let b3 = rho2 - r1 + &half;
    let b2s = rho1 - r1 + &three_half;
    let b3s = rho2 - r1 + &three_half;

    let c_den = pochhammer(&(Rat::int(m as i64) + h + &half), m + parity);
    if c_den.is_zero() {
        return Err(BiError::DegenerateParameters(format!(
            "normalization denominator (n/2+h+1/2)_{} vanishes for n = {n}",
            m + parity
        )));
    }
    let sign = Rat::sign_pow(parity);
    let c_n = sign * pochhammer(&b1, m) * pochhammer(&b2, m + parity) * pochhammer(&b3, m + parity) / c_den;

    let prefactor_den = &b2 * &b3;
    if n > 0 && prefactor_den.is_zero() {
        return Err(BiError::DegenerateParameters(
            "prefactor denominator (rho1-r1+1/2)(rho2-r1+1/2) vanishes".into(),
        ));
    }

    let lower = [(&b1, "1-r1-r2"), (&b2, "rho1-r1+1/2"), (&b3, "rho2-r1+1/2")];
    let lower_shift = [(&b1, "1-r1-r2"), (&b2s, "rho1-r1+3/2"), (&b3s, "rho2-r1+3/2")];
    let x_a = Poly::linear(Rat::one(), &half - r1); // x - r1 + 1/2
    let x_b = Poly::linear(Rat::int(-1), &half - r1); // -x - r1 + 1/2
    let x_c = Poly::linear(Rat::one(), &three_half - r1); // x - r1 + 3/2
    let mm = Rat::int(m as i64);

    let body = if parity == 0 {
        let top = Poly::constant(-&mm);
        let second_up = Poly::constant(&mm + &half + h);
        let first = hyper_4f3([&top, &second_up, &x_a, &x_b], lower, m)?;
        if m == 0 {
            first
        } else {
            let top2 = Poly::constant(Rat::one() - &mm);
            let f2 = hyper_4f3([&top2, &second_up, &x_c, &x_b], lower_shift, m - 1)?;
            let coef = Rat::frac(n as i64, 2) / &prefactor_den;
            &first + &(&x_a * &f2).scale(&coef)
        }
    } else {
        let top = Poly::constant(-&mm);
        let up1 = Poly::constant(Rat::frac(n as i64, 2) + h);
        let up2 = Poly::constant(Rat::frac(n as i64 + 2, 2) + h);
        let first = hyper_4f3([&top, &up1, &x_a, &x_b], lower, m)?;
        let f2 = hyper_4f3([&top, &up2, &x_c, &x_b], lower_shift, m)?;
        let coef = (Rat::frac(n as i64, 2) + h) / &prefactor_den;
        &first - &(&x_a * &f2).scale(&coef)
    };
    Ok(body.scale(&c_n))
}

/// Monic eigenvector of the upper-triangular `K1` matrix for `λ_n`.
pub fn bi_from_operator(params: &BIParams, n: usize) -> Result<Poly> {
    let lambda = eigenvalue(params, n);
    for m in 0..n {
        if eigenvalue(params, m) == lambda {
            return Err(BiError::DegenerateSpectrum { n, m, value: lambda.to_string() });
        }
    }
    let k1 = k1_matrix(params, n);
    let mut v = vec![Rat::zero(); n + 1];
    v[n] = Rat::one();
    for i in (0..n).rev() {
        let s: Rat = ((i + 1)..=n).map(|j| k1.get(i, j) * &v[j]).sum();
        let d = k1.get(i, i) - &lambda;
        v[i] = -s / d;
    }
    Ok(Poly::new(v))
}

/// Bannai-Ito grid `x_s = (-1)^s (s/2 + ρ1 + 1/4) - 1/4`.
pub fn grid_point(params: &BIParams, s: usize) -> Rat {
    grid_point_at(params.rho1(), s)
}

pub fn grid_point_at(rho1: &Rat, s: usize) -> Rat {
    let quarter = Rat::frac(1, 4);
    Rat::sign_pow(s) * (Rat::frac(s as i64, 2) + rho1 + &quarter) - quarter
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderSign {
    Plus,
    Minus,
}

/// `K+ = (K2 + K3)(K1 - 1/2) - (ω2 + ω3)/2`, `K- = (K2 - K3)(K1 + 1/2) + (ω2 - ω3)/2`.
pub fn ladder_apply(params: &BIParams, sign: LadderSign, p: &Poly) -> Poly {
    let half = Rat::half();
    let k1p = k1_apply(params, p);
    match sign {
        LadderSign::Plus => {
            let inner = &k1p - &p.scale(&half);
            let outer = &k2_apply(params, &inner) + &k3_apply(params, &inner);
            &outer - &p.scale(&((params.omega2() + params.omega3()) * &half))
        }
        LadderSign::Minus => {
            let inner = &k1p + &p.scale(&half);
            let outer = &k2_apply(params, &inner) - &k3_apply(params, &inner);
            &outer + &p.scale(&((params.omega2() - params.omega3()) * &half))
        }
    }
}

/// Ladder coefficients; only the parity-appropriate pair is populated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderCoeffs {
    pub n: usize,
    pub alpha0: Option<Rat>,
    pub alpha1: Option<Rat>,
    pub beta0: Option<Rat>,
    pub beta1: Option<Rat>,
}

impl LadderCoeffs {
    /// Coefficient of `K+ B_n` (on `B_{n-1}` for even n, `B_{n+1}` for odd n).
    pub fn plus(&self) -> &Rat {
        self.alpha0.as_ref().or(self.alpha1.as_ref()).expect("one alpha is set")
    }

    /// Coefficient of `K- B_n` (on `B_{n+1}` for even n, `B_{n-1}` for odd n).
    pub fn minus(&self) -> &Rat {
        self.beta0.as_ref().or(self.beta1.as_ref()).expect("one beta is set")
    }
}

pub fn ladder_coeffs(params: &BIParams, n: usize) -> Result<LadderCoeffs> {
    let (rho1, rho2, r1, r2, h) = (params.rho1(), params.rho2(), params.r1(), params.r2(), params.h());
    let nn = Rat::int(n as i64);
    let half = Rat::half();
    let n2 = Rat::frac(n as i64, 2);
    let four = Rat::int(4);
    if n % 2 == 0 {
        let den = nonzero(&nn + h - &half, || "alpha_n^(0) denominator n+h-1/2".into())?;
        let alpha0 = Rat::int(2) * &nn * (&n2 + rho1 + rho2) * (r1 + r2 - &n2)
            * (Rat::frac(n as i64 - 1, 2) + h)
            / den;
        let beta0 = &four * (&nn + h + &half);
        Ok(LadderCoeffs { n, alpha0: Some(alpha0), alpha1: None, beta0: Some(beta0), beta1: None })
    } else {
        let den = nonzero(&nn + h - &half, || "beta_n^(1) denominator n+h-1/2".into())?;
        let alpha1 = -(&four * (&nn + h + &half));
        let beta1 = &four * (rho1 - r1 + &n2) * (rho2 - r1 + &n2) * (rho1 - r2 + &n2) * (rho2 - r2 + &n2) / den;
        Ok(LadderCoeffs { n, alpha0: None, alpha1: Some(alpha1), beta0: None, beta1: Some(beta1) })
    }
}

/// `V = K+(K1 + 1/2) + K-(K1 - 1/2)`.
pub fn v_apply_ladder(params: &BIParams, p: &Poly) -> Poly {
    let half = Rat::half();
    let k1p = k1_apply(params, p);
    let a = ladder_apply(params, LadderSign::Plus, &(&k1p + &p.scale(&half)));
    let b = ladder_apply(params, LadderSign::Minus, &(&k1p - &p.scale(&half)));
    &a + &b
}

/// `V = 2 K2 (K1² - 1/4) - ω3 K1 - ω2/2`.
pub fn v_apply_direct(params: &BIParams, p: &Poly) -> Poly {
    let quarter = Rat::frac(1, 4);
    let k1p = k1_apply(params, p);
    let k1k1p = k1_apply(params, &k1p);
    let inner = &k1k1p - &p.scale(&quarter);
    let mut out = k2_apply(params, &inner).scale(&Rat::int(2));
    out = &out - &k1p.scale(params.omega3());
    &out - &p.scale(&(params.omega2() * &Rat::half()))
}

/// Two-diagonal action of `V` on `B_n` assembled from the ladder coefficients.
/// `polys` must hold `B_0..=B_{n+1}`.
pub fn v_on_bn_ladder_form(params: &BIParams, n: usize, polys: &[Poly]) -> Result<Poly> {
    let lam = eigenvalue(params, n);
    let half = Rat::half();
    let lc = ladder_coeffs(params, n)?;
    let below = if n == 0 { Poly::zero() } else { polys[n - 1].clone() };
    let above = &polys[n + 1];
    Ok(if n % 2 == 0 {
        &below.scale(&((&lam + &half) * lc.plus())) + &above.scale(&((&lam - &half) * lc.minus()))
    } else {
        &below.scale(&((&lam - &half) * lc.minus())) + &above.scale(&((&lam + &half) * lc.plus()))
    })
}

/// `V B_n = [(λ_n² - 1/4)(4x + 1) - ω3 λ_n - ω2/2] B_n`.
pub fn v_on_bn_multiplier_form(params: &BIParams, n: usize, bn: &Poly) -> Poly {
    let lam = eigenvalue(params, n);
    let quarter = Rat::frac(1, 4);
    let a = &lam * &lam - &quarter;
    let mult = Poly::linear(Rat::int(4) * &a, &a - params.omega3() * &lam - params.omega2() * &Rat::half());
    &mult * bn
}

/// Complementary polynomial `I_n = (B_{n+1} - (B_{n+1}(ρ1)/B_n(ρ1)) B_n) / (x - ρ1)`.
pub fn complementary_bi(params: &BIParams, n: usize) -> Result<Poly> {
    let polys = bi_recurrence_all(params, n + 1)?;
    let rho1 = params.rho1();
    let bn_at = polys[n].eval(rho1);
    if bn_at.is_zero() {
        return Err(BiError::DegenerateParameters(format!("B_{n}(rho1) vanishes")));
    }
    let ratio = polys[n + 1].eval(rho1) / bn_at;
    let numer = &polys[n + 1] - &polys[n].scale(&ratio);
    poly_divide_exact(&numer, rho1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureNode {
    pub node: f64,
    pub weight: f64,
}

/// Nodes and weights of the `N+1`-point orthogonality: eigenvalues of the
/// symmetrized Jacobi matrix and squared first eigenvector components.
/// Requires the truncation `A_N = 0` and `A_{k-1} C_k > 0` for `1 <= k <= N`.
/// Nodes come back in ascending order.
pub fn discrete_weights(params: &BIParams, n_max: usize) -> Result<Vec<QuadratureNode>> {
    let coeffs = (0..=n_max).map(|k| recurrence_coeffs(params, k)).collect::<Result<Vec<_>>>()?;
    if !coeffs[n_max].a.is_zero() {
        return Err(BiError::NotFinitelyOrthogonal(format!("A_{n_max} = {} is not zero", coeffs[n_max].a)));
    }
    let dim = n_max + 1;
    let mut jac = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..dim {
        jac[(k, k)] = (params.rho1() - &coeffs[k].a - &coeffs[k].c).to_f64();
        if k > 0 {
            let prod = &coeffs[k - 1].a * &coeffs[k].c;
            if !prod.is_positive() {
                return Err(BiError::NotFinitelyOrthogonal(format!("A_{} C_{k} = {prod} is not positive", k - 1)));
            }
            let u = prod.to_f64().sqrt();
            jac[(k, k - 1)] = u;
            jac[(k - 1, k)] = u;
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut nodes: Vec<QuadratureNode> = (0..dim)
        .map(|i| QuadratureNode { node: eig.eigenvalues[i], weight: eig.eigenvectors[(0, i)].powi(2) })
        .collect();
    nodes.sort_by(|a, b| a.node.total_cmp(&b.node));
    Ok(nodes)
}

/// Recurrence, hypergeometric and operator constructions agree for `n <= nmax`;
/// `K1 B_n = λ_n B_n` for `n <= eig_max`.
pub fn polynomial_oracle_check(params: &BIParams, nmax: usize, eig_max: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("BI polynomial oracles");
    let rec = match bi_recurrence_all(params, nmax.max(eig_max)) {
        Ok(r) => r,
        Err(e) => {
            rep.push("recurrence", 0, e.to_string(), "polynomials", false);
            return rep;
        }
    };
    for n in 0..=nmax {
        match bi_hypergeometric(params, n) {
            Ok(p) => {
                rep.check_eq("recurrence = hypergeometric", n, &rec[n], &p);
            }
            Err(e) => rep.push("recurrence = hypergeometric", n, e.to_string(), &rec[n], false),
        }
        match bi_from_operator(params, n) {
            Ok(p) => {
                rep.check_eq("recurrence = operator", n, &rec[n], &p);
            }
            Err(e) => rep.push("recurrence = operator", n, e.to_string(), &rec[n], false),
        }
    }
    for (n, b) in rec.iter().enumerate().take(eig_max + 1) {
        rep.check_eq("K1 B_n = lambda_n B_n", n, &k1_apply(params, b), &b.scale(&eigenvalue(params, n)));
    }
    rep
}

/// Parity actions of `K±` on `B_n` with the closed-form `α`, `β`, the two
/// expressions of `V` on monomials and on `B_n`, and the recurrence obeyed by
/// the operator eigenpolynomials, for `n <= nmax`.
pub fn ladder_v_check(params: &BIParams, nmax: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("ladder and V operators");
    let polys = match bi_recurrence_all(params, nmax + 1) {
        Ok(p) => p,
        Err(e) => {
            rep.push("recurrence", 0, e.to_string(), "polynomials", false);
            return rep;
        }
    };
    for n in 0..=nmax {
        let below = if n == 0 { Poly::zero() } else { polys[n - 1].clone() };
        let above = &polys[n + 1];
        match ladder_coeffs(params, n) {
            Ok(lc) => {
                let plus = ladder_apply(params, LadderSign::Plus, &polys[n]);
                let minus = ladder_apply(params, LadderSign::Minus, &polys[n]);
                if n % 2 == 0 {
                    rep.check_eq("K+ B_n = alpha0 B_(n-1) (n even)", n, &plus, &below.scale(lc.plus()));
                    rep.check_eq("K- B_n = beta0 B_(n+1) (n even)", n, &minus, &above.scale(lc.minus()));
                } else {
                    rep.check_eq("K+ B_n = alpha1 B_(n+1) (n odd)", n, &plus, &above.scale(lc.plus()));
                    rep.check_eq("K- B_n = beta1 B_(n-1) (n odd)", n, &minus, &below.scale(lc.minus()));
                }
            }
            Err(e) => rep.push("ladder coefficients", n, e.to_string(), "alpha, beta", false),
        }

        let x_n = Poly::monomial(n, Rat::one());
        rep.check_eq("V via ladders = V direct (monomial)", n, &v_apply_ladder(params, &x_n), &v_apply_direct(params, &x_n));
        let v_bn = v_apply_direct(params, &polys[n]);
        rep.check_eq("V B_n = V via ladders", n, &v_apply_ladder(params, &polys[n]), &v_bn);
        match v_on_bn_ladder_form(params, n, &polys) {
            Ok(two_term) => {
                rep.check_eq("V B_n two-term form", n, &v_bn, &two_term);
            }
            Err(e) => rep.push("V B_n two-term form", n, e.to_string(), &v_bn, false),
        }
        rep.check_eq("V B_n multiplier form", n, &v_bn, &v_on_bn_multiplier_form(params, n, &polys[n]));

        match (bi_from_operator(params, n + 1), recurrence_coeffs(params, n)) {
            (Ok(next), Ok(c)) => {
                let mut rhs = &next + &polys[n].scale(&(params.rho1() - &c.a - &c.c));
                if n > 0 {
                    if let Ok(prev) = recurrence_coeffs(params, n - 1) {
                        rhs = &rhs + &below.scale(&(&prev.a * &c.c));
                    }
                }
                rep.check_eq("x B_n = B_(n+1) + (rho1-A_n-C_n) B_n + A_(n-1) C_n B_(n-1)", n, &(&Poly::x() * &polys[n]), &rhs);
            }
            (Err(e), _) | (_, Err(e)) => rep.push("three-term recurrence", n, e.to_string(), "", false),
        }
    }
    rep
}

/// `N+1`-point orthogonality under `A_N = 0`. Exact weights come from the
/// Christoffel numbers `w_s = 1 / Σ_n B_n(x_s)² / h_n` with
/// `h_n = Π_{k<=n} A_{k-1} C_k`; the Jacobi-matrix eigen-solve must
/// reproduce them and the grid.
pub fn orthogonality_check(params: &BIParams, n_max: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("finite orthogonality N={n_max}"));
    let nodes = match discrete_weights(params, n_max) {
        Ok(w) => w,
        Err(e) => {
            rep.push("truncation and positivity", n_max, e.to_string(), "A_N = 0, A_(k-1) C_k > 0", false);
            return rep;
        }
    };
    let polys = match bi_recurrence_all(params, n_max + 1) {
        Ok(p) => p,
        Err(e) => {
            rep.push("recurrence", n_max, e.to_string(), "polynomials", false);
            return rep;
        }
    };
    let mut norms = vec![Rat::one()];
    for k in 1..=n_max {
        let (prev, cur) = match (recurrence_coeffs(params, k - 1), recurrence_coeffs(params, k)) {
            (Ok(p), Ok(c)) => (p, c),
            (Err(e), _) | (_, Err(e)) => {
                rep.push("recurrence coefficients", k, e.to_string(), "", false);
                return rep;
            }
        };
        let h = &norms[k - 1] * &(&prev.a * &cur.c);
        norms.push(h);
    }

    let grid: Vec<Rat> = (0..=n_max).map(|s| grid_point(params, s)).collect();
    let mut exact_w = Vec::with_capacity(grid.len());
    for (s, x) in grid.iter().enumerate() {
        rep.check_eq("B_(N+1)(x_s) = 0", s, &polys[n_max + 1].eval(x), &Rat::zero());
        let christoffel: Rat = (0..=n_max).map(|n| {
            let v = polys[n].eval(x);
            &v * &v / &norms[n]
        }).sum();
        let w = Rat::one() / christoffel;
        rep.push("w_s > 0", s, &w, "0", w.is_positive());
        exact_w.push(w);
    }
    rep.check_eq("sum w_s = 1", n_max, &exact_w.iter().cloned().sum::<Rat>(), &Rat::one());

    let mut pairs: Vec<(f64, f64)> = grid.iter().zip(&exact_w).map(|(x, w)| (x.to_f64(), w.to_f64())).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let dn = nodes.iter().zip(&pairs).map(|(q, p)| (q.node - p.0).abs()).fold(0.0, f64::max);
    let dw = nodes.iter().zip(&pairs).map(|(q, p)| (q.weight - p.1).abs()).fold(0.0, f64::max);
    rep.check_tol("eigen-solve nodes = grid", n_max, dn, 1e-10);
    rep.check_tol("eigen-solve weights = Christoffel weights", n_max, dw, 1e-10);
    rep.push("eigen-solve weights positive", n_max, nodes.iter().map(|q| q.weight).fold(f64::INFINITY, f64::min), "0", nodes.iter().all(|q| q.weight > 0.0));

    let mut worst = 0.0f64;
    for m in 0..=n_max {
        for n in 0..m {
            let sum: Rat = grid.iter().zip(&exact_w).map(|(x, w)| w * &polys[m].eval(x) * polys[n].eval(x)).sum();
            worst = worst.max(sum.to_f64().abs());
        }
    }
    rep.check_tol("sum_s w_s B_m(x_s) B_n(x_s) = 0 (m != n)", n_max, worst, 1e-9);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bi_operator::k1_apply;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    fn p1() -> BIParams {
        BIParams::new(Rat::one(), Rat::int(2), r(1, 2), r(1, 4))
    }

    /// Identifications from the Racah parameters (1/4, 1/3, 1/2; N = 2).
    fn r1_params() -> BIParams {
        BIParams::new(r(5, 12), r(13, 6), r(1, 12), r(23, 12))
    }

    #[test]
    fn eigenvalue_examples() {
        let p = p1();
        assert_eq!(eigenvalue(&p, 0), r(11, 4));
        assert_eq!(eigenvalue(&p, 1), r(-15, 4));
        assert_eq!(eigenvalue(&p, 2), r(19, 4));
    }

    #[test]
    fn recurrence_coeff_examples() {
        let c0 = recurrence_coeffs(&p1(), 0).unwrap();
        assert_eq!((c0.a, c0.c), (r(5, 13), Rat::zero()));
        let other = BIParams::new(r(2, 3), r(-1, 5), r(7, 2), Rat::int(1));
        assert_eq!(recurrence_coeffs(&other, 0).unwrap().c, Rat::zero());
        assert_eq!(recurrence_coeffs(&r1_params(), 2).unwrap().a, Rat::zero());
    }

    #[test]
    fn recurrence_degenerate_denominator() {
        // rho1 + rho2 - r1 - r2 + 1 = 0 at n = 0
        let p = BIParams::new(Rat::zero(), Rat::zero(), r(1, 2), r(1, 2));
        assert!(matches!(recurrence_coeffs(&p, 0), Err(BiError::DegenerateParameters(_))));
    }

    #[test]
    fn recurrence_examples() {
        let p = p1();
        assert_eq!(bi_recurrence(&p, 0).unwrap(), Poly::one());
        assert_eq!(bi_recurrence(&p, 1).unwrap(), Poly::linear(Rat::one(), r(-8, 13)));
        for n in 0..8 {
            assert!(bi_recurrence(&p, n).unwrap().is_monic());
        }
    }

    #[test]
    fn hypergeometric_examples() {
        let p = p1();
        assert_eq!(bi_hypergeometric(&p, 0).unwrap(), Poly::one());
        assert_eq!(bi_hypergeometric(&p, 1).unwrap(), Poly::linear(Rat::one(), r(-8, 13)));
        for n in 0..=10 {
            assert_eq!(bi_hypergeometric(&p, n).unwrap(), bi_recurrence(&p, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn hypergeometric_rejects_vanishing_lower_parameter() {
        let p = BIParams::new(Rat::zero(), Rat::zero(), r(1, 2), r(1, 2));
        assert!(matches!(bi_hypergeometric(&p, 2), Err(BiError::DegenerateParameters(_))));
    }

    #[test]
    fn operator_examples() {
        let p = p1();
        assert_eq!(bi_from_operator(&p, 0).unwrap(), Poly::one());
        assert_eq!(bi_from_operator(&p, 1).unwrap(), Poly::linear(Rat::one(), r(-8, 13)));
        for n in 0..=10 {
            assert_eq!(bi_from_operator(&p, n).unwrap(), bi_recurrence(&p, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn operator_refuses_collision() {
        // h = -1/2 makes λ_0 = -1/2 = λ_1
        let p = BIParams::new(Rat::zero(), Rat::zero(), r(1, 2), r(1, 2));
        assert!(matches!(bi_from_operator(&p, 1), Err(BiError::DegenerateSpectrum { n: 1, m: 0, .. })));
    }

    #[test]
    fn eigen_equation() {
        let p = p1();
        for (n, b) in bi_recurrence_all(&p, 12).unwrap().iter().enumerate() {
            assert_eq!(k1_apply(&p, b), b.scale(&eigenvalue(&p, n)));
        }
    }

    #[test]
    fn grid_examples() {
        let p = BIParams::new(Rat::one(), r(1, 3), r(1, 5), r(1, 7));
        assert_eq!(grid_point(&p, 0), Rat::one());
        assert_eq!(grid_point(&p, 1), Rat::int(-2));
        assert_eq!(grid_point(&p, 2), Rat::int(2));
    }

    #[test]
    fn ladder_examples() {
        let p = p1();
        let b = bi_recurrence_all(&p, 3).unwrap();
        assert_eq!(ladder_apply(&p, LadderSign::Plus, &b[0]), Poly::zero());
        assert_eq!(ladder_apply(&p, LadderSign::Minus, &b[0]), b[1].scale(&Rat::int(13)));
        assert_eq!(ladder_apply(&p, LadderSign::Plus, &b[1]), b[2].scale(&Rat::int(-17)));
        let lc = ladder_coeffs(&p, 0).unwrap();
        assert_eq!(lc.beta0, Some(Rat::int(13)));
        assert_eq!(ladder_coeffs(&p, 1).unwrap().alpha1, Some(Rat::int(-17)));
    }

    #[test]
    fn complementary_examples() {
        let p = p1();
        assert_eq!(complementary_bi(&p, 0).unwrap(), Poly::one());
        for n in 0..=8 {
            let i_n = complementary_bi(&p, n).unwrap();
            assert_eq!(i_n.degree(), Some(n));
            assert!(i_n.is_monic());
        }
    }

    #[test]
    fn weights_single_node() {
        // N = 0 needs A_0 = 0: take r1 = rho1 + 1/2.
        let p = BIParams::new(r(1, 3), r(5, 2), r(5, 6), r(1, 7));
        let w = discrete_weights(&p, 0).unwrap();
        assert_eq!(w.len(), 1);
        assert!((w[0].node - 1.0 / 3.0).abs() < 1e-14);
        assert!((w[0].weight - 1.0).abs() < 1e-14);
    }

    #[test]
    fn weights_racah_three_nodes() {
        let p = r1_params();
        let w = discrete_weights(&p, 2).unwrap();
        let mut grid: Vec<f64> = (0..3).map(|s| grid_point(&p, s).to_f64()).collect();
        grid.sort_by(f64::total_cmp);
        for (q, g) in w.iter().zip(&grid) {
            assert!((q.node - g).abs() < 1e-10, "{} vs {}", q.node, g);
            assert!(q.weight > 0.0);
        }
        let total: f64 = w.iter().map(|q| q.weight).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weights_require_truncation() {
        assert!(matches!(discrete_weights(&p1(), 3), Err(BiError::NotFinitelyOrthogonal(_))));
    }

    #[test]
    fn oracle_and_ladder_reports() {
        let rep = polynomial_oracle_check(&p1(), 8, 10);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let rep = ladder_v_check(&p1(), 8);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let rep = ladder_v_check(&r1_params(), 6);
        assert!(rep.entries.len() > 20);
    }

    #[test]
    fn orthogonality_racah_three_nodes() {
        let rep = orthogonality_check(&r1_params(), 2);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(!orthogonality_check(&p1(), 3).passed());
    }
}

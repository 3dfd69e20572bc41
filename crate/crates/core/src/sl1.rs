//! `sl_{-1}(2)`: discrete-series modules, the `osp(1|2)` Casimir and the
//! Dunkl realization on the line.
//!
//! Module actions involve `ρ_n = sqrt(n + μ(1 - (-1)^n))`, which is
//! irrational in general. States are therefore stored relative to the
//! basis vector they were generated from (see [`StateVector`]); every word
//! in `J±`, `J0`, `R` then acts by rational multiplications only, so all
//! checks here are exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BiError, Result};
use crate::exact::Rat;
use crate::poly::{poly_divide_exact, poly_reflect, Poly};
use crate::report::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleParams {
    epsilon: i8,
    mu: Rat,
}

impl ModuleParams {
    pub fn new(epsilon: i8, mu: Rat) -> Result<ModuleParams> {
        if epsilon != 1 && epsilon != -1 {
            return Err(BiError::InvalidInput(format!("epsilon must be +1 or -1, got {epsilon}")));
        }
        if mu <= Rat::frac(-1, 2) {
            return Err(BiError::InvalidInput(format!("mu must exceed -1/2, got {mu}")));
        }
        Ok(ModuleParams { epsilon, mu })
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    fn eps(&self) -> Rat {
        Rat::int(self.epsilon as i64)
    }
}

/// `ρ_n² = n + μ(1 - (-1)^n)`.
pub fn rho_squared(params: &ModuleParams, n: usize) -> Rat {
    rho_squared_mu(&params.mu, n)
}

pub(crate) fn rho_squared_mu(mu: &Rat, n: usize) -> Rat {
    if n % 2 == 0 {
        Rat::int(n as i64)
    } else {
        Rat::int(n as i64) + Rat::int(2) * mu
    }
}

/// Finite combination of basis states `|k>` generated from `|origin>`.
///
/// The stored coefficient `c` at level `k` stands for `c · Π ρ_e` over the
/// edges `e` strictly between `origin` and `k` (indexed by their upper end),
/// so applying `J±` only ever multiplies by `1` or by some `ρ_e²`.
#[derive(Clone, PartialEq, Eq)]
pub struct StateVector {
    origin: usize,
    coeffs: BTreeMap<usize, Rat>,
}

impl StateVector {
    pub fn basis(n: usize) -> StateVector {
        StateVector { origin: n, coeffs: BTreeMap::from([(n, Rat::one())]) }
    }

    fn empty(origin: usize) -> StateVector {
        StateVector { origin, coeffs: BTreeMap::new() }
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    /// Stored (frame-relative) coefficient at level `k`.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, k: usize, c: Rat) {
        let e = self.coeffs.entry(k).or_insert_with(Rat::zero);
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rat) -> StateVector {
        let mut out = StateVector::empty(self.origin);
        for (k, v) in &self.coeffs {
            out.insert(*k, v * c);
        }
        out
    }

    pub fn add(&self, other: &StateVector) -> StateVector {
        assert_eq!(self.origin, other.origin, "states from different frames");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.insert(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &StateVector) -> StateVector {
        self.add(&other.scale(&Rat::int(-1)))
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(k, c)| format!("({c})|{k}>")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Generators of `sl_{-1}(2)` acting on a module `V^(ε, μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Plus,
    Minus,
    Zero,
    R,
}

pub fn apply_gen(params: &ModuleParams, g: Gen, v: &StateVector) -> StateVector {
    let mut out = StateVector::empty(v.origin);
    for (&k, c) in &v.coeffs {
        match g {
            Gen::Plus => {
                let c2 = if k >= v.origin { c.clone() } else { c * &rho_squared(params, k + 1) };
                out.insert(k + 1, c2);
            }
            Gen::Minus => {
                if k == 0 {
                    continue;
                }
                let c2 = if k > v.origin { c * &rho_squared(params, k) } else { c.clone() };
                out.insert(k - 1, c2);
            }
            Gen::Zero => {
                let j0 = Rat::int(k as i64) + &params.mu + Rat::half();
                out.insert(k, c * &j0);
            }
            Gen::R => {
                let sign = params.eps() * Rat::sign_pow(k);
                out.insert(k, c * &sign);
            }
        }
    }
    out
}

/// Applies a word written left to right as an operator product, so the
/// rightmost generator acts first.
pub fn apply_word(params: &ModuleParams, word: &[Gen], v: &StateVector) -> StateVector {
    word.iter().rev().fold(v.clone(), |acc, g| apply_gen(params, *g, &acc))
}

/// `Q = J+ J- R - J0 R + R/2`.
pub fn casimir_apply(params: &ModuleParams, v: &StateVector) -> StateVector {
    use Gen::*;
    let a = apply_word(params, &[Plus, Minus, R], v);
    let b = apply_word(params, &[Zero, R], v);
    let c = apply_word(params, &[R], v).scale(&Rat::half());
    a.sub(&b).add(&c)
}

fn commutator(params: &ModuleParams, x: &[Gen], y: &[Gen], v: &StateVector, anti: bool) -> StateVector {
    let xy: Vec<Gen> = x.iter().chain(y).copied().collect();
    let yx: Vec<Gen> = y.iter().chain(x).copied().collect();
    let a = apply_word(params, &xy, v);
    let b = apply_word(params, &yx, v);
    if anti {
        a.add(&b)
    } else {
        a.sub(&b)
    }
}

/// Defining relations, the Casimir value `-εμ`, and `[J-, J+] = 1 - 2QR = 1 + 2εμR`
/// on `|n>`, `n <= nmax`.
pub fn module_bilinear_check(params: &ModuleParams, nmax: usize) -> VerificationReport {
    use Gen::*;
    let mut rep = VerificationReport::new("sl_{-1}(2) module");
    let casimir_value = -(params.eps() * &params.mu);
    for n in 0..=nmax {
        let v = StateVector::basis(n);
        let two = Rat::int(2);

        rep.check_eq("{J+,J-} = 2 J0", n, &commutator(params, &[Plus], &[Minus], &v, true), &apply_gen(params, Zero, &v).scale(&two));
        rep.check_eq("J+ J- = rho_n^2", n, &apply_word(params, &[Plus, Minus], &v), &v.scale(&rho_squared(params, n)));
        rep.check_eq("J- J+ = rho_(n+1)^2", n, &apply_word(params, &[Minus, Plus], &v), &v.scale(&rho_squared(params, n + 1)));
        rep.check_eq("[J0,J+] = J+", n, &commutator(params, &[Zero], &[Plus], &v, false), &apply_gen(params, Plus, &v));
        rep.check_eq("[J0,J-] = -J-", n, &commutator(params, &[Zero], &[Minus], &v, false), &apply_gen(params, Minus, &v).scale(&Rat::int(-1)));
        let zero = StateVector::empty(n);
        rep.check_eq("[J0,R] = 0", n, &commutator(params, &[Zero], &[R], &v, false), &zero);
        rep.check_eq("{J+,R} = 0", n, &commutator(params, &[Plus], &[R], &v, true), &zero);
        rep.check_eq("{J-,R} = 0", n, &commutator(params, &[Minus], &[R], &v, true), &zero);
        rep.check_eq("R^2 = 1", n, &apply_word(params, &[R, R], &v), &v);

        let q = casimir_apply(params, &v);
        rep.check_eq("Q = -eps mu", n, &q, &v.scale(&casimir_value));

        let comm = commutator(params, &[Minus], &[Plus], &v, false);
        let qr = casimir_apply(params, &apply_gen(params, R, &v));
        rep.check_eq("[J-,J+] = 1 - 2QR", n, &comm, &v.sub(&qr.scale(&two)));
        let rhs = v.add(&apply_gen(params, R, &v).scale(&(two * params.eps() * &params.mu)));
        rep.check_eq("[J-,J+] = 1 + 2 eps mu R", n, &comm, &rhs);
    }
    rep
}

/// `osp(1|2)` relations for `F± = J±`, `E± = J±²/2`, `E0 = J0` and
/// `C_osp = (E0 - 1/2)² - 4E+E- - F+F- = Q² = μ²`.
pub fn osp_casimir_check(params: &ModuleParams, nmax: usize) -> VerificationReport {
    use Gen::*;
    let mut rep = VerificationReport::new("osp(1|2) Casimir");
    let half = Rat::half();
    let mu2 = &params.mu * &params.mu;
    for n in 0..=nmax {
        let v = StateVector::basis(n);
        // E± carry a factor 1/2 per occurrence; scale each word accordingly.
        let e_plus = |w: &StateVector| apply_word(params, &[Plus, Plus], w).scale(&half);
        let e_minus = |w: &StateVector| apply_word(params, &[Minus, Minus], w).scale(&half);
        let e0 = |w: &StateVector| apply_gen(params, Zero, w);
        let f_plus = |w: &StateVector| apply_gen(params, Plus, w);
        let f_minus = |w: &StateVector| apply_gen(params, Minus, w);

        let shifted = |w: &StateVector| e0(w).sub(&w.scale(&half));
        let c = shifted(&shifted(&v))
            .sub(&e_plus(&e_minus(&v)).scale(&Rat::int(4)))
            .sub(&f_plus(&f_minus(&v)));
        rep.check_eq("C_osp = mu^2", n, &c, &v.scale(&mu2));
        let q2 = casimir_apply(params, &casimir_apply(params, &v));
        rep.check_eq("C_osp = Q^2", n, &c, &q2);

        rep.check_eq("[E0,F+] = F+", n, &e0(&f_plus(&v)).sub(&f_plus(&e0(&v))), &f_plus(&v));
        rep.check_eq("[E0,F-] = -F-", n, &e0(&f_minus(&v)).sub(&f_minus(&e0(&v))), &f_minus(&v).scale(&Rat::int(-1)));
        rep.check_eq("[E0,E+] = 2E+", n, &e0(&e_plus(&v)).sub(&e_plus(&e0(&v))), &e_plus(&v).scale(&Rat::int(2)));
        rep.check_eq("[E0,E-] = -2E-", n, &e0(&e_minus(&v)).sub(&e_minus(&e0(&v))), &e_minus(&v).scale(&Rat::int(-2)));
        rep.check_eq("[E-,E+] = E0", n, &e_minus(&e_plus(&v)).sub(&e_plus(&e_minus(&v))), &e0(&v));
        let zero = StateVector::empty(n);
        rep.check_eq("[F+,E+] = 0", n, &f_plus(&e_plus(&v)).sub(&e_plus(&f_plus(&v))), &zero);
        rep.check_eq("[F-,E-] = 0", n, &f_minus(&e_minus(&v)).sub(&e_minus(&f_minus(&v))), &zero);
        rep.check_eq("[F+,E-] = -F-", n, &f_plus(&e_minus(&v)).sub(&e_minus(&f_plus(&v))), &f_minus(&v).scale(&Rat::int(-1)));
        rep.check_eq("[F-,E+] = F+", n, &f_minus(&e_plus(&v)).sub(&e_plus(&f_minus(&v))), &f_plus(&v));
    }
    rep
}

/// `D p = p' + ν (p(x) - p(-x)) / x`.
pub fn dunkl_derivative(nu: &Rat, p: &Poly) -> Poly {
    let odd = poly_divide_exact(&(p - &poly_reflect(p)), &Rat::zero()).expect("odd part divisible by x");
    &p.derivative() + &odd.scale(nu)
}

/// Checks the Dunkl realization `Ĵ± = (x ∓ D)/√2` on monomials up to `maxdeg`.
/// The `1/√2` factors always appear squared and are tracked as `1/2`.
pub fn dunkl_commutator_check(nu: &Rat, maxdeg: usize) -> VerificationReport {
    let mut rep = VerificationReport::new("Dunkl realization");
    let half = Rat::half();
    let x = Poly::x();
    let d = |p: &Poly| dunkl_derivative(nu, p);
    // √2·Ĵ± as maps on polynomials
    let jp = |p: &Poly| &(&x * p) - &d(p);
    let jm = |p: &Poly| &(&x * p) + &d(p);
    // Ĵ0 = ½{Ĵ-, Ĵ+} = ¼({√2Ĵ-, √2Ĵ+})
    let j0 = |p: &Poly| (&jm(&jp(p)) + &jp(&jm(p))).scale(&Rat::frac(1, 4));

    for j in 0..=maxdeg {
        let p = Poly::monomial(j, Rat::one());
        let comm = &d(&(&x * &p)) - &(&x * &d(&p));
        let rhs = &p + &poly_reflect(&p).scale(&(Rat::int(2) * nu));
        rep.check_eq("[D,x] = 1 + 2 nu R", j, &comm, &rhs);

        let comm_j = (&jm(&jp(&p)) - &jp(&jm(&p))).scale(&half);
        rep.check_eq("[J-,J+] = 1 + 2 nu R", j, &comm_j, &rhs);

        let c = &j0(&jp(&p)) - &jp(&j0(&p));
        rep.check_eq("[J0,J+] = J+", j, &c, &jp(&p));
        let c = &j0(&jm(&p)) - &jm(&j0(&p));
        rep.check_eq("[J0,J-] = -J-", j, &c, &(-&jm(&p)));

        let anti = &jp(&poly_reflect(&p)) + &poly_reflect(&jp(&p));
        rep.check_eq("{J+,R} = 0", j, &anti, &Poly::zero());

        // Q = Ĵ+Ĵ-R - Ĵ0 R + R/2 with ε = 1, μ = ν
        let rp = poly_reflect(&p);
        let q = &(&jp(&jm(&rp)).scale(&half) - &j0(&rp)) + &rp.scale(&half);
        rep.check_eq("Q = -nu", j, &q, &p.scale(&(-nu)));
    }
    rep
}

//! Dense univariate polynomials over [`Rat`], with the reflection and
//! shift-reflection primitives used by the shift/reflection realization.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{BiError, Result};
use crate::exact::Rat;

/// Coefficients indexed by degree, trailing zeros trimmed. The zero
/// polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Poly {
        Poly::monomial(1, Rat::one())
    }

    pub fn monomial(deg: usize, c: Rat) -> Poly {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    /// `a·x + b`.
    pub fn linear(a: Rat, b: Rat) -> Poly {
        Poly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Rat::one()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add_const(&self, c: &Rat) -> Poly {
        self + &Poly::constant(c.clone())
    }

    /// Rescales to leading coefficient one. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lc) => self.scale(&(Rat::one() / lc)),
        }
    }

    pub fn eval(&self, x0: &Rat) -> Rat {
        poly_eval(self, x0)
    }

    pub fn eval_f64(&self, x0: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x0 + c.to_f64())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Rat::int(k as i64)).collect(),
        )
    }

    /// Composition `self(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Horner evaluation.
pub fn poly_eval(p: &Poly, x0: &Rat) -> Rat {
    p.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x0 + c)
}

/// `(Rp)(x) = p(-x)`.
pub fn poly_reflect(p: &Poly) -> Poly {
    Poly::new(
        p.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// `(T⁺R p)(x) = p(-x-1)`: reflect first, then shift.
pub fn poly_shift_reflect(p: &Poly) -> Poly {
    p.compose(&Poly::linear(Rat::int(-1), Rat::int(-1)))
}

/// Quotient of `p` by `(x - root)`; fails unless `p(root) = 0`.
pub fn poly_divide_exact(p: &Poly, root: &Rat) -> Result<Poly> {
    let Some(deg) = p.degree() else {
        return Ok(Poly::zero());
    };
    // synthetic division from the top
    let mut q = vec![Rat::zero(); deg];
    let mut carry = Rat::zero();
    for k in (0..=deg).rev() {
        let cur = p.coeffs[k].clone() + &carry * root;
        if k == 0 {
            if !cur.is_zero() {
                return Err(BiError::NotDivisible { root: root.to_string(), remainder: cur.to_string() });
            }
        } else {
            q[k - 1] = cur.clone();
        }
        carry = cur;
    }
    Ok(Poly::new(q))
}

/// Rising factorial `base·(base+1)···(base+k-1)`; the empty product is 1.
pub fn pochhammer_poly(base: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, j| &acc * &base.add_const(&Rat::int(j as i64)))
}

/// Scalar Pochhammer symbol `(a)_k`.
pub fn pochhammer(a: &Rat, k: usize) -> Rat {
    (0..k).map(|j| a + Rat::int(j as i64)).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::frac(n, d)
    }

    fn p(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| r(n, d)).collect())
    }

    #[test]
    fn eval_examples() {
        let q = p(&[(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(poly_eval(&q, &Rat::int(2)), Rat::int(3));
        assert_eq!(poly_eval(&Poly::zero(), &Rat::int(5)), Rat::zero());
        let b1 = p(&[(-8, 13), (1, 1)]);
        assert_eq!(poly_eval(&b1, &r(8, 13)), Rat::zero());
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(poly_reflect(&p(&[(0, 1), (1, 1), (1, 1)])), p(&[(0, 1), (-1, 1), (1, 1)]));
        let even = p(&[(3, 1), (0, 1), (-2, 5), (0, 1), (1, 1)]);
        assert_eq!(poly_reflect(&even), even);
        let cube = Poly::monomial(3, Rat::one());
        assert_eq!(poly_reflect(&cube), Poly::monomial(3, Rat::int(-1)));
    }

    #[test]
    fn shift_reflect_examples() {
        assert_eq!(poly_shift_reflect(&Poly::x()), p(&[(-1, 1), (-1, 1)]));
        assert_eq!(poly_shift_reflect(&Poly::monomial(2, Rat::one())), p(&[(1, 1), (2, 1), (1, 1)]));
        assert_eq!(poly_shift_reflect(&Poly::one()), Poly::one());
    }

    #[test]
    fn divide_examples() {
        let q = poly_divide_exact(&Poly::monomial(3, Rat::int(2)), &Rat::zero()).unwrap();
        assert_eq!(q, Poly::monomial(2, Rat::int(2)));
        let q = poly_divide_exact(&p(&[(1, 1), (2, 1)]), &r(-1, 2)).unwrap();
        assert_eq!(q, Poly::constant(Rat::int(2)));
        // (x-1)(x+2) = x^2 + x - 2
        let q = poly_divide_exact(&p(&[(-2, 1), (1, 1), (1, 1)]), &Rat::one()).unwrap();
        assert_eq!(q, p(&[(2, 1), (1, 1)]));
    }

    #[test]
    fn divide_rejects_remainder() {
        let err = poly_divide_exact(&p(&[(1, 1), (1, 1)]), &Rat::zero()).unwrap_err();
        assert!(matches!(err, BiError::NotDivisible { .. }));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_poly(&Poly::constant(Rat::int(3)), 4), Poly::constant(Rat::int(360)));
        assert_eq!(pochhammer_poly(&Poly::x(), 0), Poly::one());
        assert_eq!(pochhammer_poly(&Poly::x(), 2), p(&[(0, 1), (1, 1), (1, 1)]));
        assert_eq!(pochhammer(&Rat::int(3), 4), Rat::int(360));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![Rat::zero(), Rat::zero()]), Poly::zero());
        assert_eq!(Poly::one().degree(), Some(0));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| r(n, d))
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(arb_rat(), 0..=max_deg + 1).prop_map(Poly::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reflections_are_involutions(q in arb_poly(30)) {
            prop_assert_eq!(poly_reflect(&poly_reflect(&q)), q.clone());
            prop_assert_eq!(poly_shift_reflect(&poly_shift_reflect(&q)), q);
        }

        #[test]
        fn difference_quotients_always_divide(q in arb_poly(30)) {
            let odd = &q - &poly_reflect(&q);
            prop_assert!(poly_divide_exact(&odd, &Rat::zero()).is_ok());
            let shifted = &poly_shift_reflect(&q) - &q;
            prop_assert!(poly_divide_exact(&shifted, &r(-1, 2)).is_ok());
        }

        #[test]
        fn divide_inverts_multiply(q in arb_poly(12), a in arb_rat()) {
            let prod = &q * &Poly::linear(Rat::one(), -&a);
            prop_assert_eq!(poly_divide_exact(&prod, &a).unwrap(), q);
        }
    }
}

//! Polynomials in an integration variable `t` whose coefficients are
//! polynomials in `q`, together with the one integration step that builds
//! composition polynomials layer by layer.

use crate::qpoly::QPoly;
use crate::rational::Rational;

/// Polynomial in `t` with [`QPoly`] coefficients, ascending by the power
/// of `t`, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TPoly {
    coeffs: Vec<QPoly>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(QPoly::one())
    }

    pub fn constant(c: QPoly) -> Self {
        TPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<QPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients, ascending by the power of `t`.
    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    /// One layer of the iterated integral: `R(T) = integral from q to T of
    /// p(t) * t^(m-1) dt` for `m >= 1`. The lower-bound evaluation folds
    /// powers of `q` into the coefficients, so the result is again a
    /// polynomial in the (renamed) outer variable with `QPoly` coefficients.
    pub fn integrate_power_from_q(&self, m: usize) -> TPoly {
        assert!(m >= 1, "integrate_power_from_q: exponent must be positive");
        // multiply by t^(m-1), then take the antiderivative
        let mut anti = vec![QPoly::zero(); self.coeffs.len() + m];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = k + m; // t^(k+m-1) integrates to t^(k+m)/(k+m)
            anti[e] = c.scale(&Rational::new(1.into(), e.into()));
        }
        let anti = TPoly::from_coeffs(anti);
        let at_lower = anti.eval_at_q();
        let mut coeffs = anti.coeffs;
        if coeffs.is_empty() {
            coeffs.push(QPoly::zero());
        }
        coeffs[0] = &coeffs[0] - &at_lower;
        TPoly::from_coeffs(coeffs)
    }

    /// Substitute `t = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> QPoly {
        self.coeffs
            .iter()
            .fold(QPoly::zero(), |acc, c| &acc + c)
    }

    /// Substitute `t = q`: each `t^k` coefficient picks up `q^k`.
    pub fn eval_at_q(&self) -> QPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(QPoly::zero(), |acc, (k, c)| &acc + &c.shift_up(k))
    }
}

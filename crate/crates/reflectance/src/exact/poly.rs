//! Dense univariate polynomials with exact rational coefficients.
//!
//! Used to represent beta densities over θ ∈ [0, 1] exactly, so that mixture
//! collapse can be decided by structural equality instead of a tolerance.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rat;

/// A polynomial in one variable, stored densely: `coeffs[k]` is the
/// coefficient of θ^k. Canonical form keeps the highest-index coefficient
/// nonzero; the zero polynomial is the empty sequence.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros to restore canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeffs.get(k).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, factor: &Rat) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }

    /// Horner evaluation at an exact point.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Exact `∫₀¹ p(θ) dθ = Σ_k coeffs[k] / (k+1)`.
    pub fn integral_01(&self) -> Rat {
        self.integral_0x(&Rat::one())
    }

    /// Exact `∫₀ˣ p(θ) dθ`.
    pub fn integral_0x(&self, x: &Rat) -> Rat {
        let mut total = Rat::zero();
        let mut x_pow = x.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            total = total + c * &x_pow / Rat::from_int(k as i64 + 1);
            x_pow = x_pow * x;
        }
        total
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if k == 1 {
                        write!(f, "θ")?;
                    } else {
                        write!(f, "θ^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::ratio(n, d)
    }

    fn theta() -> Poly {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    #[test]
    fn add_theta_and_one_minus_theta() {
        let one_minus = Poly::from_coeffs(vec![Rat::one(), Rat::from_int(-1)]);
        assert_eq!(theta().add(&one_minus), Poly::constant(Rat::one()));
    }

    #[test]
    fn scale_theta_squared() {
        let t2 = theta().mul(&theta());
        let scaled = t2.scale(&r(3, 10));
        assert_eq!(
            scaled.coeffs(),
            &[Rat::zero(), Rat::zero(), r(3, 10)]
        );
    }

    #[test]
    fn canonical_trims_trailing_zeros() {
        let p = Poly::from_coeffs(vec![Rat::one(), Rat::zero(), Rat::zero()]);
        assert_eq!(p.degree(), Some(0));
        let q = Poly::from_coeffs(vec![Rat::zero(), Rat::zero()]);
        assert!(q.is_zero());
        assert_eq!(q.degree(), None);
    }

    #[test]
    fn integral_examples() {
        assert_eq!(Poly::constant(Rat::one()).integral_01(), Rat::one());
        // 6θ(1−θ) = 6θ − 6θ² integrates to 1 over [0,1]
        let beta22 = Poly::from_coeffs(vec![Rat::zero(), Rat::from_int(6), Rat::from_int(-6)]);
        assert_eq!(beta22.integral_01(), Rat::one());
        assert_eq!(Poly::zero().integral_01(), Rat::zero());
    }

    #[test]
    fn partial_integral_matches_eval_of_antiderivative() {
        // ∫₀^{1/3} (6θ − 6θ²) dθ = 3x² − 2x³ at x = 1/3 → 3/9 − 2/27 = 7/27
        let beta22 = Poly::from_coeffs(vec![Rat::zero(), Rat::from_int(6), Rat::from_int(-6)]);
        assert_eq!(beta22.integral_0x(&r(1, 3)), r(7, 27));
    }

    #[test]
    fn eval_horner() {
        // 1 + 2θ + 3θ² at θ = 1/2 → 1 + 1 + 3/4 = 11/4
        let p = Poly::from_coeffs(vec![Rat::one(), Rat::from_int(2), Rat::from_int(3)]);
        assert_eq!(p.eval(&r(1, 2)), r(11, 4));
    }

    #[test]
    fn display_reads_naturally() {
        let p = Poly::from_coeffs(vec![Rat::zero(), Rat::from_int(6), Rat::from_int(-6)]);
        assert_eq!(p.to_string(), "6·θ - 6·θ^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::constant(r(1, 2)).to_string(), "1/2");
    }
}

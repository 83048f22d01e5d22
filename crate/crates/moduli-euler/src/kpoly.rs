//! Dense polynomials in the edge-counting variable kappa over exact rationals.
//!
//! The refined invariants of fixed type live here: degrees stay small
//! (3g - 3 + n), so a dense coefficient vector is the right shape.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

/// A polynomial in kappa; `coeffs[i]` is the coefficient of kappa^i.
/// Trailing zeros are trimmed so that equality is coefficientwise.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KPoly {
    coeffs: Vec<Rat>,
}

impl KPoly {
    pub fn zero() -> Self {
        KPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        KPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = KPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial kappa.
    pub fn kappa() -> Self {
        KPoly::monomial(Rat::one(), 1)
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        if c.is_zero() {
            return KPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        KPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = KPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn scale(&self, r: &Rat) -> KPoly {
        if r.is_zero() {
            return KPoly::zero();
        }
        KPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiply by kappa^k.
    pub fn shift_up(&self, k: usize) -> KPoly {
        if self.is_zero() {
            return KPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        KPoly { coeffs }
    }

    pub fn eval(&self, kappa: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * kappa + c;
        }
        acc
    }

    /// d/d kappa.
    pub fn derivative(&self) -> KPoly {
        if self.coeffs.len() <= 1 {
            return KPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_int(i as i64))
            .collect();
        KPoly::from_coeffs(coeffs)
    }

    /// Antiderivative with zero constant term: kappa^i -> kappa^{i+1}/(i+1).
    pub fn integrate(&self) -> KPoly {
        if self.is_zero() {
            return KPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / &Rat::from_int(i as i64 + 1));
        }
        KPoly::from_coeffs(coeffs)
    }
}

impl Add<&KPoly> for &KPoly {
    type Output = KPoly;
    fn add(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        KPoly::from_coeffs(coeffs)
    }
}

impl Sub<&KPoly> for &KPoly {
    type Output = KPoly;
    fn sub(self, rhs: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        KPoly::from_coeffs(coeffs)
    }
}

impl Mul<&KPoly> for &KPoly {
    type Output = KPoly;
    fn mul(self, rhs: &KPoly) -> KPoly {
        if self.is_zero() || rhs.is_zero() {
            return KPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        KPoly::from_coeffs(coeffs)
    }
}

impl Neg for &KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        KPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for KPoly {
    /// Renders like `-1/240 + 13/288 κ - 1/6 κ^2 + 5/24 κ^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
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
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "κ")?,
                1 => write!(f, "{mag} κ")?,
                _ if mag.is_one() => write!(f, "κ^{i}")?,
                _ => write!(f, "{mag} κ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

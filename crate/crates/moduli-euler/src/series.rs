//! Truncated formal power series over an exact coefficient ring.
//!
//! A `TruncSeries` of order N carries coefficients for exponents 0..=N and
//! every operation is exact modulo x^{N+1}. The truncation order is a value,
//! not a global: callers choose it per computation.

use crate::error::Error;
use crate::kpoly::KPoly;
use crate::rat::{binomial, Rat};

/// Coefficient ring for truncated series: exact rationals or kappa-polynomials.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiply by a rational scalar.
    fn scale(&self, r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
}

impl Coeff for KPoly {
    fn zero() -> Self {
        KPoly::zero()
    }
    fn one() -> Self {
        KPoly::one()
    }
    fn is_zero(&self) -> bool {
        KPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        KPoly::scale(self, r)
    }
}

/// A power series truncated at a fixed order.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The identity series x (requires order >= 1).
    pub fn x(order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[1] = C::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: C) {
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, C::zero());
        TruncSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, C::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, C::sub)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect();
        TruncSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncSeries { coeffs }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by x^k, discarding overflow beyond the truncation order.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); order + 1];
        if k <= order {
            coeffs[k..].clone_from_slice(&self.coeffs[..=order - k]);
        }
        TruncSeries { coeffs }
    }

    /// Termwise derivative d/dx; keeps the same truncation order, so the top
    /// coefficient of the result is unreliable only when callers overrun it.
    pub fn derivative(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); order + 1];
        for i in 1..=order {
            coeffs[i - 1] = self.coeffs[i].scale(&Rat::from_int(i as i64));
        }
        TruncSeries { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let order = self.order();
        let mut coeffs = vec![C::zero(); order + 1];
        for i in 0..order {
            coeffs[i + 1] = self.coeffs[i].scale(&Rat::new(1, i as i64 + 1));
        }
        TruncSeries { coeffs }
    }

    /// exp(self) for a series with zero constant term, via f' = s' f.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm("exp"));
        }
        let order = self.order();
        let mut f = vec![C::zero(); order + 1];
        f[0] = C::one();
        for n in 1..=order {
            let mut acc = C::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let term = self.coeffs[j].scale(&Rat::from_int(j as i64)).mul(&f[n - j]);
                acc = acc.add(&term);
            }
            f[n] = acc.scale(&Rat::new(1, n as i64));
        }
        Ok(TruncSeries { coeffs: f })
    }

    /// log(1 + self) for a series with zero constant term, via (1+s) f' = s'.
    pub fn log1p(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm("log1p"));
        }
        let order = self.order();
        let mut f = vec![C::zero(); order + 1];
        for n in 1..=order {
            // n f_n = n s_n - sum_{j=1}^{n-1} j f_j s_{n-j}
            let mut acc = self.coeffs[n].scale(&Rat::from_int(n as i64));
            for j in 1..n {
                if f[j].is_zero() || self.coeffs[n - j].is_zero() {
                    continue;
                }
                let term = f[j].scale(&Rat::from_int(j as i64)).mul(&self.coeffs[n - j]);
                acc = acc.sub(&term);
            }
            f[n] = acc.scale(&Rat::new(1, n as i64));
        }
        Ok(TruncSeries { coeffs: f })
    }

    /// Evaluate a polynomial (coefficients low to high) at this series.
    pub fn eval_poly(&self, poly: &[C]) -> Self {
        let mut acc = TruncSeries::zero(self.order());
        for c in poly.iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }
}

/// The binomial series (1 + x)^m over Rat, for any integer m.
pub fn one_plus_x_pow(m: i64, order: usize) -> TruncSeries<Rat> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rat::one();
    coeffs.push(c.clone());
    for j in 1..=order as i64 {
        // c_{j} = c_{j-1} * (m - j + 1) / j
        c = c * Rat::new(m - j + 1, j);
        coeffs.push(c.clone());
    }
    TruncSeries::from_coeffs(coeffs)
}

/// (1 + x)^m for a nonnegative big exponent is not needed; integer binomials
/// suffice elsewhere.
pub fn binomial_rat(n: u64, k: u64) -> Rat {
    Rat::from_bigint(binomial(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log1p_of_x_is_mercator() {
        let x: TruncSeries<Rat> = TruncSeries::x(3);
        let l = x.log1p().unwrap();
        assert_eq!(l.coeff(0), &Rat::zero());
        assert_eq!(l.coeff(1), &Rat::one());
        assert_eq!(l.coeff(2), &Rat::new(-1, 2));
        assert_eq!(l.coeff(3), &Rat::new(1, 3));
    }

    #[test]
    fn log1p_of_zero_is_zero() {
        let z: TruncSeries<Rat> = TruncSeries::zero(5);
        assert!(z.log1p().unwrap().is_zero());
    }

    #[test]
    fn exp_log_inverse_pair() {
        let x: TruncSeries<Rat> = TruncSeries::x(8);
        // exp(log1p(x)) - 1 = x
        let e = x.log1p().unwrap().exp().unwrap();
        let mut expected = TruncSeries::x(8);
        expected.set_coeff(0, Rat::one());
        assert_eq!(e, expected);
    }

    #[test]
    fn log1p_requires_zero_constant() {
        let s: TruncSeries<Rat> = TruncSeries::constant(Rat::one(), 4);
        assert!(s.log1p().is_err());
        assert!(s.exp().is_err());
    }

    #[test]
    fn binomial_series_negative_exponent() {
        let s = one_plus_x_pow(-2, 4);
        // (1+x)^{-2} = 1 - 2x + 3x^2 - 4x^3 + 5x^4 - ...
        for (i, expected) in [(0, 1i64), (1, -2), (2, 3), (3, -4), (4, 5)] {
            assert_eq!(s.coeff(i), &Rat::from_int(expected));
        }
    }

    #[test]
    fn derivative_integrate_inverse() {
        let s = one_plus_x_pow(5, 6);
        let roundtrip = s.derivative().integrate();
        // Equal except the constant term (integration starts at zero), and the
        // top coefficient which the derivative truncates away.
        for i in 1..6 {
            assert_eq!(roundtrip.coeff(i), s.coeff(i));
        }
    }
}

//! Tree-counting polynomials Q_{n,k}(x) and their classical companions
//! psi_k(r, x), tied to the genus-0 coefficient ladder through special values.

use crate::error::Error;
use crate::rat::Rat;

/// Dense polynomial in x over exact rationals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct XPoly {
    coeffs: Vec<Rat>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly { coeffs: vec![Rat::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = XPoly { coeffs };
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

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        XPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, r: &Rat) -> XPoly {
        if r.is_zero() {
            return XPoly::zero();
        }
        XPoly {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// (x + c) * self.
    pub fn mul_linear(&self, c: &Rat) -> XPoly {
        if self.is_zero() {
            return XPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] += a;
            coeffs[i] += &(a * c);
        }
        XPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// (x + c)^e expanded.
    pub fn linear_power(c: &Rat, e: u32) -> XPoly {
        let mut p = XPoly::one();
        for _ in 0..e {
            p = p.mul_linear(c);
        }
        p
    }
}

/// Q_{n,k}(x) by the two-term recursion
/// Q_{n,k} = (x + n - 1) Q_{n-1,k} + (n + k - 2) Q_{n-1,k-1},
/// with Q_{1,0} = 1, Q_{n,-1} = 0, Q_{1,k} = 0 for k >= 1.
pub fn shor_q(n: u32, k: i64) -> XPoly {
    assert!(n >= 1);
    if k < 0 || k as u32 >= n {
        return XPoly::zero();
    }
    shor_row(n).swap_remove(k as usize)
}

/// The full row Q_{n,0..n-1}.
pub fn shor_row(n: u32) -> Vec<XPoly> {
    let mut row = vec![XPoly::one()];
    for m in 2..=n {
        let mut next = Vec::with_capacity(m as usize);
        for k in 0..m as usize {
            let mut q = if k < row.len() {
                row[k].mul_linear(&Rat::from_int(m as i64 - 1))
            } else {
                XPoly::zero()
            };
            if k >= 1 {
                q = q.add(&row[k - 1].scale(&Rat::from_int(m as i64 + k as i64 - 2)));
            }
            next.push(q);
        }
        row = next;
    }
    row
}

/// psi_k(r, x) through the identity Q_{n,k}(x) = psi_{k+1}(n - 1, x + n):
/// psi_k(r, x) = Q_{r+1,k-1}(x - r - 1), defined for 1 <= k <= r + 1.
pub fn ramanujan_psi(k: u32, r: u32, x: &Rat) -> Result<Rat, Error> {
    if k < 1 || k > r + 1 {
        return Err(Error::Domain(format!(
            "psi_k(r, x) needs 1 <= k <= r + 1, got k = {k}, r = {r}"
        )));
    }
    let shifted = x - &Rat::from_int(r as i64 + 1);
    Ok(shor_q(r + 1, k as i64 - 1).eval(&shifted))
}

/// One side-by-side evaluation of the descent identity
/// psi_k(r,x) = (x - r - k + 1) psi_k(r-1, x) + (r + k - 2) psi_{k-1}(r-1, x),
/// with psi_0 = 0; valid for 1 <= k <= r.
pub fn berndt_identity_holds(k: u32, r: u32, x: &Rat) -> Result<bool, Error> {
    if k < 1 || k > r {
        return Err(Error::Domain(format!(
            "descent identity needs 1 <= k <= r, got k = {k}, r = {r}"
        )));
    }
    let lhs = ramanujan_psi(k, r, x)?;
    let mut rhs = (x - &Rat::from_int(r as i64 + k as i64 - 1)) * ramanujan_psi(k, r - 1, x)?;
    if k >= 2 {
        rhs += &(Rat::from_int(r as i64 + k as i64 - 2) * ramanujan_psi(k - 1, r - 1, x)?);
    }
    Ok(lhs == rhs)
}

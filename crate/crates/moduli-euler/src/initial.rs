//! Closed-form initial data: Euler characteristics of the open moduli spaces,
//! vertex weights for the graph sum, and the total vertex-weight series.

use crate::error::Error;
use crate::rat::{bernoulli, factorial, Rat};
use crate::series::TruncSeries;

/// True when a vertex/type of genus g with n half-edges is stable.
pub fn is_stable(g: u32, n: u32) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

/// chi(M_{g,n}) for stable (g, n):
/// (-1)^n (2g - 1) B_{2g} (2g + n - 3)! / (2g)!.
pub fn chi_open(g: u32, n: u32) -> Result<Rat, Error> {
    if !is_stable(g, n) {
        return Err(Error::Unstable(g, n));
    }
    let g = g as u64;
    let n = n as u64;
    let sign = if n % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
    let num = Rat::from_int(2 * g as i64 - 1) * bernoulli(2 * g as u32) * Rat::from_bigint(factorial(2 * g + n - 3));
    Ok(sign * num / Rat::from_bigint(factorial(2 * g)))
}

/// The Feynman weight of a vertex: chi(M_{g,n}) carried at t^{2-2g-n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeight {
    pub value: Rat,
    pub t_exponent: i64,
}

impl VertexWeight {
    pub fn new(g: u32, n: u32) -> Result<Self, Error> {
        Ok(VertexWeight {
            value: chi_open(g, n)?,
            t_exponent: 2 - 2 * g as i64 - n as i64,
        })
    }
}

/// Truncation of the total vertex weight of valence n,
/// V_n(z) = sum over stable g of chi(M_{g,n}) z^{2-2g-n},
/// stored as a series in u = 1/z (index = exponent of u).
#[derive(Clone, Debug, PartialEq)]
pub struct VSeries {
    pub valence: u32,
    series: TruncSeries<Rat>,
}

impl VSeries {
    /// Coefficient of z^{-e} = u^e.
    pub fn coeff(&self, e: usize) -> &Rat {
        self.series.coeff(e)
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn as_series(&self) -> &TruncSeries<Rat> {
        &self.series
    }
}

/// V_n(z) truncated so that all terms with u-exponent <= order are present.
/// The genus range follows the stability of the vertex: g >= 2 for n = 0,
/// g >= 1 for n = 1, 2, and g >= 0 for n >= 3.
pub fn v_series(n: u32, order: usize) -> VSeries {
    let mut series = TruncSeries::zero(order);
    let g_min = match n {
        0 => 2u32,
        1 | 2 => 1,
        _ => 0,
    };
    for g in g_min.. {
        // u-exponent of the genus-g term.
        let e = 2 * g as i64 - 2 + n as i64;
        if e > order as i64 {
            break;
        }
        if e >= 0 {
            series.set_coeff(e as usize, chi_open(g, n).expect("stable by genus range"));
        }
    }
    VSeries { valence: n, series }
}

//! Exact functions of the form sum_m e^{m(s+1)} p_m(s) with rational
//! polynomial parts, closed under the operations the closed-form series
//! solutions need: derivation, integration, multiplication by e^{a(s+1)},
//! and expansion into x-series under x = e^{s+1} - 1.

use std::collections::BTreeMap;

use crate::kpoly::KPoly;
use crate::rat::Rat;
use crate::series::{one_plus_x_pow, TruncSeries};

/// Polynomial part in s; reuses the dense rational polynomial.
pub type SPoly = KPoly;

/// A finite sum of components e^{m(s+1)} p_m(s), keyed by the integer m.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ExpPolyInS {
    components: BTreeMap<i64, SPoly>,
}

impl ExpPolyInS {
    pub fn zero() -> Self {
        ExpPolyInS::default()
    }

    pub fn constant(c: Rat) -> Self {
        ExpPolyInS::component(0, SPoly::constant(c))
    }

    pub fn component(m: i64, poly: SPoly) -> Self {
        let mut out = ExpPolyInS::zero();
        out.add_component(m, poly);
        out
    }

    pub fn add_component(&mut self, m: i64, poly: SPoly) {
        if poly.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.components.entry(m) {
            Entry::Vacant(e) => {
                e.insert(poly);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &poly;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &SPoly)> {
        self.components.iter().map(|(&m, p)| (m, p))
    }

    pub fn polynomial_part(&self, m: i64) -> SPoly {
        self.components.get(&m).cloned().unwrap_or_else(SPoly::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, p) in &other.components {
            out.add_component(m, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExpPolyInS {
            components: self.components.iter().map(|(&m, p)| (m, -p)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return ExpPolyInS::zero();
        }
        ExpPolyInS {
            components: self.components.iter().map(|(&m, p)| (m, p.scale(r))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ExpPolyInS::zero();
        for (&ma, pa) in &self.components {
            for (&mb, pb) in &other.components {
                out.add_component(ma + mb, pa * pb);
            }
        }
        out
    }

    /// Multiply by e^{a(s+1)}.
    pub fn shift_exp(&self, a: i64) -> Self {
        ExpPolyInS {
            components: self.components.iter().map(|(&m, p)| (m + a, p.clone())).collect(),
        }
    }

    /// d/ds: e^{m(s+1)} p  ->  e^{m(s+1)} (m p + p').
    pub fn derivative(&self) -> Self {
        let mut out = ExpPolyInS::zero();
        for (&m, p) in &self.components {
            out.add_component(m, &p.scale(&Rat::from_int(m)) + &p.derivative());
        }
        out
    }

    /// An antiderivative in s (no normalization of the constant).
    ///
    /// For m != 0 the antiderivative of e^{m(s+1)} p is e^{m(s+1)} q with
    /// q = p/m - p'/m^2 + p''/m^3 - ..., a finite sum.
    pub fn integrate(&self) -> Self {
        let mut out = ExpPolyInS::zero();
        for (&m, p) in &self.components {
            if m == 0 {
                out.add_component(0, p.integrate());
            } else {
                let inv = Rat::new(1, m);
                let mut q = SPoly::zero();
                let mut term = p.scale(&inv);
                while !term.is_zero() {
                    q = &q + &term;
                    term = term.derivative().scale(&inv).scale(&Rat::from_int(-1));
                }
                out.add_component(m, q);
            }
        }
        out
    }

    /// Value at s = -1, where every exponential factor is 1.
    pub fn eval_at_minus_one(&self) -> Rat {
        let minus_one = Rat::from_int(-1);
        let mut acc = Rat::zero();
        for p in self.components.values() {
            acc += &p.eval(&minus_one);
        }
        acc
    }

    /// Expansion as a truncated x-series under x = e^{s+1} - 1, so that
    /// e^{m(s+1)} = (1+x)^m and s = log(1+x) - 1.
    pub fn to_x_series(&self, order: usize) -> TruncSeries<Rat> {
        let mut s_series = TruncSeries::<Rat>::x(order).log1p().expect("zero constant");
        s_series.set_coeff(0, Rat::from_int(-1));
        let mut out = TruncSeries::zero(order);
        for (&m, p) in &self.components {
            let poly_part = s_series.eval_poly(p.coeffs());
            out = out.add(&one_plus_x_pow(m, order).mul(&poly_part));
        }
        out
    }
}

/// The unique solution of f'(s) - a f = rhs with f(-1) = 0, exact in this
/// representation.
pub fn solve_linear_ode(a: i64, rhs: &ExpPolyInS) -> ExpPolyInS {
    let antiderivative = rhs.shift_exp(-a).integrate();
    let constant = antiderivative.eval_at_minus_one();
    antiderivative
        .sub(&ExpPolyInS::constant(constant))
        .shift_exp(a)
}

//! The central engine: kappa-polynomials of the refined Euler characteristics
//! for all stable types, computed by a linear add-a-point recursion over genus
//! base rows, with an independent quadratic integral recursion kept as a
//! verification route.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::initial::{chi_open, is_stable};
use crate::kpoly::KPoly;
use crate::rat::{bernoulli, factorial, Rat};
use crate::series::TruncSeries;

/// How a table entry was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Base,
    Quadratic,
    Linear,
}

/// Memoized table of the polynomials chi-tilde_{g,n}(kappa).
///
/// Production route: genus-0 and genus-1 rows grow from the bases (0,3) and
/// (1,1) by the linear recursion; (1,1) and (2,0) come from one quadratic
/// integral step; higher genus bases (g,0) come from the closed recursion in
/// the n = 0 column. Entries are immutable once inserted.
#[derive(Default)]
pub struct ChiTable {
    entries: BTreeMap<(u32, u32), (KPoly, Provenance)>,
}

impl ChiTable {
    pub fn new() -> Self {
        ChiTable::default()
    }

    /// chi-tilde_{g,n}(kappa), a polynomial of degree 3g - 3 + n whose
    /// constant term is chi(M_{g,n})/n!.
    pub fn chi_tilde(&mut self, g: u32, n: u32) -> Result<KPoly, Error> {
        if !is_stable(g, n) {
            return Err(Error::Unstable(g, n));
        }
        if let Some((poly, _)) = self.entries.get(&(g, n)) {
            return Ok(poly.clone());
        }
        let (poly, provenance) = match (g, n) {
            (0, 3) => (KPoly::constant(Rat::new(1, 6)), Provenance::Base),
            (1, 1) | (2, 0) => (self.quadratic_step(g, n)?, Provenance::Quadratic),
            (g, 0) if g >= 3 => {
                let mut lower = BTreeMap::new();
                for r in 2..g {
                    lower.insert(r, self.chi_tilde(r, 0)?);
                }
                (genus_base_step(g, &lower), Provenance::Quadratic)
            }
            (g, n) => {
                let base_n = if g == 0 { 3 } else if g == 1 { 1 } else { 0 };
                let mut poly = self.chi_tilde(g, base_n)?;
                for m in base_n..n {
                    poly = linear_step(g, m, &poly);
                }
                (poly, Provenance::Linear)
            }
        };
        self.entries.insert((g, n), (poly.clone(), provenance));
        Ok(poly)
    }

    /// One quadratic integral step, reading lower entries from this table.
    fn quadratic_step(&mut self, g: u32, n: u32) -> Result<KPoly, Error> {
        let mut bracket = KPoly::zero();
        if g >= 1 {
            let higher = self.chi_tilde(g - 1, n + 2)?;
            let c = Rat::from_int(((n + 2) * (n + 1)) as i64);
            bracket = &bracket + &higher.scale(&c);
        }
        for g1 in 0..=g {
            for n1 in 1..=(n + 1) {
                let (g2, n2) = (g - g1, n + 2 - n1);
                if !is_stable(g1, n1) || !is_stable(g2, n2) {
                    continue;
                }
                let a = self.chi_tilde(g1, n1)?;
                let b = self.chi_tilde(g2, n2)?;
                let c = Rat::from_int((n1 * n2) as i64);
                bracket = &bracket + &(&a * &b).scale(&c);
            }
        }
        let integral = bracket.integrate().scale(&Rat::new(1, 2));
        let constant = chi_open(g, n)? / Rat::from_bigint(factorial(n as u64));
        Ok(&integral + &KPoly::constant(constant))
    }

    /// a_{g,n}^k, the coefficient of kappa^k.
    pub fn coefficient(&mut self, g: u32, n: u32, k: usize) -> Result<Rat, Error> {
        Ok(self.chi_tilde(g, n)?.coeff(k))
    }

    /// The pair (chi-tilde_{g,n}, 2 - 2g - n): the full refined invariant with
    /// its t-exponent factored out.
    pub fn chi_refined(&mut self, g: u32, n: u32) -> Result<(KPoly, i64), Error> {
        Ok((self.chi_tilde(g, n)?, 2 - 2 * g as i64 - n as i64))
    }

    /// chi(Mbar_{g,n}) = n! * chi-tilde_{g,n}(1).
    pub fn chi_mbar(&mut self, g: u32, n: u32) -> Result<Rat, Error> {
        let poly = self.chi_tilde(g, n)?;
        Ok(Rat::from_bigint(factorial(n as u64)) * poly.eval(&Rat::one()))
    }

    pub fn provenance(&self, g: u32, n: u32) -> Option<Provenance> {
        self.entries.get(&(g, n)).map(|(_, p)| *p)
    }

    /// Generating series over n of the refined invariants of fixed genus, as a
    /// truncated series in 1/t with kappa-polynomial coefficients. The
    /// coefficient of t^{-(n + 2g - 2)} is n! * chi-tilde_{g,n} (weighted) or
    /// chi-tilde_{g,n} (unweighted), for n up to n_max.
    pub fn chi_point_generating(
        &mut self,
        g: u32,
        n_max: u32,
        weighted: bool,
    ) -> Result<TruncSeries<KPoly>, Error> {
        let n_min: u32 = match g {
            0 => 3,
            1 => 1,
            _ => 0,
        };
        let order = (n_max as i64 + 2 * g as i64 - 2).max(0) as usize;
        let mut out = TruncSeries::zero(order);
        for n in n_min..=n_max {
            let e = (n as i64 + 2 * g as i64 - 2) as usize;
            if e > order {
                break;
            }
            let mut poly = self.chi_tilde(g, n)?;
            if weighted {
                poly = poly.scale(&Rat::from_bigint(factorial(n as u64)));
            }
            out.set_coeff(e, poly);
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<TableRecord> {
        self.entries
            .iter()
            .map(|(&(g, n), (poly, provenance))| TableRecord {
                g,
                n,
                coeffs: poly.coeffs().to_vec(),
                provenance: *provenance,
            })
            .collect()
    }

    pub fn from_records(records: Vec<TableRecord>) -> Self {
        let mut table = ChiTable::new();
        for r in records {
            table
                .entries
                .insert((r.g, r.n), (KPoly::from_coeffs(r.coeffs), r.provenance));
        }
        table
    }
}

/// Serialized form of one table entry, used by the optional CLI cache.
#[derive(Serialize, Deserialize)]
pub struct TableRecord {
    pub g: u32,
    pub n: u32,
    pub coeffs: Vec<Rat>,
    pub provenance: Provenance,
}

/// One step of the linear recursion:
/// (n+1) a_{g,n+1}^k = (2 - 2g - n) a_{g,n}^k + (n + k - 1) a_{g,n}^{k-1}.
fn linear_step(g: u32, n: u32, prev: &KPoly) -> KPoly {
    let deg_next = (3 * g as i64 - 3 + n as i64 + 1).max(0) as usize;
    let inv = Rat::new(1, n as i64 + 1);
    let mut coeffs = Vec::with_capacity(deg_next + 1);
    for k in 0..=deg_next {
        let mut c = prev.coeff(k) * Rat::from_int(2 - 2 * g as i64 - n as i64);
        if k >= 1 {
            c += &(prev.coeff(k - 1) * Rat::from_int(n as i64 + k as i64 - 1));
        }
        coeffs.push(c * &inv);
    }
    KPoly::from_coeffs(coeffs)
}

/// chi-tilde_{g,n} by iterating the linear recursion upward in n from the
/// genus base row ((0,3), (1,1), or (g,0)).
pub fn chi_tilde_linear(g: u32, n: u32) -> Result<KPoly, Error> {
    ChiTable::new().chi_tilde(g, n)
}

/// chi-tilde_{g,n} by the quadratic integral recursion alone:
///
///   chi-tilde_{g,n} = 1/2 Int_0^kappa [ (n+2)(n+1) chi-tilde_{g-1,n+2}
///       + sum over ordered stable splittings n1 n2 chi-tilde_{g1,n1} chi-tilde_{g2,n2} ]
///       + chi(M_{g,n})/n!
///
/// Every entry below (g, n) is computed the same way; no linear steps anywhere.
pub fn chi_tilde_quadratic(g: u32, n: u32) -> Result<KPoly, Error> {
    let mut memo = BTreeMap::new();
    quadratic_memo(g, n, &mut memo)
}

fn quadratic_memo(g: u32, n: u32, memo: &mut BTreeMap<(u32, u32), KPoly>) -> Result<KPoly, Error> {
    if !is_stable(g, n) {
        return Err(Error::Unstable(g, n));
    }
    if let Some(poly) = memo.get(&(g, n)) {
        return Ok(poly.clone());
    }
    let mut bracket = KPoly::zero();
    if g >= 1 {
        let higher = quadratic_memo(g - 1, n + 2, memo)?;
        bracket = &bracket + &higher.scale(&Rat::from_int(((n + 2) * (n + 1)) as i64));
    }
    for g1 in 0..=g {
        for n1 in 1..=(n + 1) {
            let (g2, n2) = (g - g1, n + 2 - n1);
            if !is_stable(g1, n1) || !is_stable(g2, n2) {
                continue;
            }
            let a = quadratic_memo(g1, n1, memo)?;
            let b = quadratic_memo(g2, n2, memo)?;
            bracket = &bracket + &(&a * &b).scale(&Rat::from_int((n1 * n2) as i64));
        }
    }
    let poly = &bracket.integrate().scale(&Rat::new(1, 2))
        + &KPoly::constant(chi_open(g, n)? / Rat::from_bigint(factorial(n as u64)));
    memo.insert((g, n), poly.clone());
    Ok(poly)
}

/// (c + kappa^2 d/dkappa) p.
fn shifted_derivation(c: i64, p: &KPoly) -> KPoly {
    &p.scale(&Rat::from_int(c)) + &p.derivative().shift_up(2)
}

/// One step of the closed n = 0 recursion for g >= 3, from the n = 0
/// polynomials of genus 2..g-1:
///
///   chi-tilde_{g,0} = B_{2g}/(2g(2g-2)) + 1/2 Int_0^kappa [
///       ((3-2g) + kappa^2 d + 2 kappa - 1/6)((4-2g) + kappa^2 d) chi-tilde_{g-1,0}
///       + sum_{r=2}^{g-2} ((2-2r) + kappa^2 d) chi-tilde_{r,0}
///                       * ((2-2g+2r) + kappa^2 d) chi-tilde_{g-r,0} ]
pub fn genus_base_step(g: u32, lower: &BTreeMap<u32, KPoly>) -> KPoly {
    assert!(g >= 3);
    let gi = g as i64;
    let inner = shifted_derivation(4 - 2 * gi, &lower[&(g - 1)]);
    let mut bracket = &shifted_derivation(3 - 2 * gi, &inner)
        + &(&inner.shift_up(1).scale(&Rat::from_int(2)) - &inner.scale(&Rat::new(1, 6)));
    for r in 2..=g.saturating_sub(2) {
        let a = shifted_derivation(2 - 2 * r as i64, &lower[&r]);
        let b = shifted_derivation(2 - 2 * gi + 2 * r as i64, &lower[&(g - r)]);
        bracket = &bracket + &(&a * &b);
    }
    let constant = bernoulli(2 * g) / Rat::from_int(2 * gi * (2 * gi - 2));
    &bracket.integrate().scale(&Rat::new(1, 2)) + &KPoly::constant(constant)
}

/// chi-tilde_{g,0} for g >= 3 purely from the n = 0 column.
pub fn chi_tilde_g0(g: u32) -> Result<KPoly, Error> {
    if g < 3 {
        return Err(Error::Domain(format!(
            "the n = 0 genus recursion starts at g = 3, got g = {g}"
        )));
    }
    let mut lower = BTreeMap::new();
    lower.insert(2, chi_tilde_quadratic(2, 0)?);
    for h in 3..=g {
        let poly = genus_base_step(h, &lower);
        lower.insert(h, poly);
    }
    Ok(lower.remove(&g).expect("inserted above"))
}

/// The coefficient-level n = 0 recursion as printed alongside the integral
/// form; used only to cross-check the integral route, never as production.
pub fn genus_base_step_coefficient_form(g: u32, lower: &BTreeMap<u32, KPoly>) -> KPoly {
    assert!(g >= 3);
    let gi = g as i64;
    let a = |r: u32, k: i64| -> Rat {
        if k < 0 {
            Rat::zero()
        } else {
            lower[&r].coeff(k as usize)
        }
    };
    let deg = 3 * g as usize - 3;
    let mut coeffs = vec![bernoulli(2 * g) / Rat::from_int(2 * gi * (2 * gi - 2))];
    for k in 1..=deg as i64 {
        let mut acc = (Rat::new(17, 6) - Rat::from_int(2 * gi)) * Rat::from_int(4 - 2 * gi) * a(g - 1, k - 1);
        acc += &((Rat::from_int(k) * Rat::from_int(4 - 2 * gi)
            + Rat::from_int(k - 2) * (Rat::new(17, 6) - Rat::from_int(2 * gi)))
            * a(g - 1, k - 2));
        acc += &(Rat::from_int(k * k - 3 * k) * a(g - 1, k - 3));
        for r in 2..=g.saturating_sub(2) {
            let (cr, cgr) = (2 - 2 * r as i64, 2 - 2 * gi + 2 * r as i64);
            for l in 0..=(k - 1) {
                let m = k - 1 - l;
                acc += &(Rat::from_int(cr * cgr) * a(r, l) * a(g - r, m));
            }
            for l in 0..=(k - 2) {
                let m = k - 2 - l;
                acc += &(Rat::from_int(m * cr + l * cgr) * a(r, l) * a(g - r, m));
            }
            for l in 0..=(k - 3) {
                let m = k - 3 - l;
                acc += &(Rat::from_int(l * m) * a(r, l) * a(g - r, m));
            }
        }
        coeffs.push(acc / Rat::from_int(2 * k));
    }
    KPoly::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn poly(coeffs: &[(i64, i64)]) -> KPoly {
        KPoly::from_coeffs(coeffs.iter().map(|&(n, d)| Rat::new(n, d)).collect())
    }

    fn chi_tilde_20() -> KPoly {
        poly(&[(-1, 240), (13, 288), (-1, 6), (5, 24)])
    }

    fn chi_tilde_30() -> KPoly {
        poly(&[
            (1, 1008),
            (-19, 1440),
            (1307, 17280),
            (-2539, 10368),
            (35, 72),
            (-55, 96),
            (5, 16),
        ])
    }

    #[test]
    fn quadratic_reproduces_published_polynomials() {
        assert_eq!(chi_tilde_quadratic(0, 4).unwrap(), poly(&[(-1, 24), (1, 8)]));
        assert_eq!(chi_tilde_quadratic(1, 1).unwrap(), poly(&[(-1, 12), (1, 2)]));
        assert_eq!(chi_tilde_quadratic(2, 0).unwrap(), chi_tilde_20());
    }

    #[test]
    fn linear_reproduces_published_polynomials() {
        assert_eq!(chi_tilde_linear(1, 2).unwrap(), poly(&[(1, 24), (-7, 24), (1, 2)]));
        // The kappa coefficient -7/180 is pinned by the total: 7! times the
        // value at kappa = 1 must equal 213 (checked below).
        let c07 = chi_tilde_linear(0, 7).unwrap();
        assert_eq!(c07, poly(&[(1, 210), (-7, 180), (5, 36), (-1, 4), (3, 16)]));
        assert_eq!(
            Rat::from_bigint(factorial(7)) * c07.eval(&Rat::one()),
            Rat::from_int(213)
        );
        // One explicit triangle step: 4 a_{0,4}^1 = 3 a_{0,3}^0.
        let mut t = ChiTable::new();
        assert_eq!(t.coefficient(0, 4, 1).unwrap(), Rat::new(1, 8));
    }

    #[test]
    fn genus_zero_row_published() {
        let mut t = ChiTable::new();
        assert_eq!(
            t.chi_tilde(0, 5).unwrap(),
            poly(&[(1, 60), (-1, 12), (1, 8)])
        );
        assert_eq!(
            t.chi_tilde(0, 6).unwrap(),
            poly(&[(-1, 120), (1, 18), (-7, 48), (7, 48)])
        );
    }

    #[test]
    fn genus_base_recursion_published() {
        assert_eq!(chi_tilde_g0(3).unwrap(), chi_tilde_30());
        let g4 = chi_tilde_g0(4).unwrap();
        assert_eq!(g4.coeff(9), Rat::new(1105, 1152));
        assert_eq!(g4.coeff(0), Rat::new(-1, 1440));
        assert_eq!(g4.coeff(1), Rat::new(6221, 604800));
        let g5 = chi_tilde_g0(5).unwrap();
        assert_eq!(g5.coeff(0), Rat::new(1, 1056));
        assert_eq!(g5.coeff(12), Rat::new(565, 128));
        assert!(chi_tilde_g0(2).is_err());
    }

    #[test]
    fn routes_agree() {
        for (g, n) in [(0u32, 6u32), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1)] {
            assert_eq!(
                chi_tilde_quadratic(g, n).unwrap(),
                chi_tilde_linear(g, n).unwrap(),
                "mismatch at ({g},{n})"
            );
        }
        assert_eq!(chi_tilde_quadratic(3, 0).unwrap(), chi_tilde_g0(3).unwrap());
        assert_eq!(chi_tilde_quadratic(4, 0).unwrap(), chi_tilde_g0(4).unwrap());
    }

    #[test]
    fn coefficient_form_matches_integral_form() {
        // The printed coefficient recursion against the operator-integral
        // route, genus by genus.
        let mut lower = BTreeMap::new();
        lower.insert(2, chi_tilde_quadratic(2, 0).unwrap());
        for g in 3..=6u32 {
            let integral = genus_base_step(g, &lower);
            let coefficient = genus_base_step_coefficient_form(g, &lower);
            assert_eq!(integral, coefficient, "disagreement at g = {g}");
            lower.insert(g, integral);
        }
    }

    #[test]
    fn chi_mbar_published_values() {
        let mut t = ChiTable::new();
        assert_eq!(t.chi_mbar(0, 10).unwrap(), Rat::from_int(153946));
        assert_eq!(t.chi_mbar(1, 5).unwrap(), Rat::new(389, 12));
        assert_eq!(t.chi_mbar(2, 6).unwrap(), Rat::new(853541, 720));
        assert_eq!(t.chi_mbar(1, 1).unwrap(), Rat::new(5, 12));
    }

    #[test]
    fn chi_refined_exponents() {
        let mut t = ChiTable::new();
        let (p, e) = t.chi_refined(0, 3).unwrap();
        assert_eq!((p, e), (KPoly::constant(Rat::new(1, 6)), -1));
        let (_, e) = t.chi_refined(2, 0).unwrap();
        assert_eq!(e, -2);
        assert!(t.chi_refined(0, 2).is_err());
    }

    #[test]
    fn degree_and_constant_term_laws() {
        let mut t = ChiTable::new();
        for g in 0..=4u32 {
            for n in 0..=6u32 {
                if !is_stable(g, n) {
                    continue;
                }
                let p = t.chi_tilde(g, n).unwrap();
                assert_eq!(p.degree(), Some(3 * g as usize + n as usize - 3));
                assert_eq!(
                    p.coeff(0),
                    chi_open(g, n).unwrap() / Rat::from_bigint(factorial(n as u64))
                );
            }
        }
    }

    #[test]
    fn top_coefficient_recursion() {
        let mut t = ChiTable::new();
        for g in 3..=6u32 {
            let lhs = t.coefficient(g, 0, 3 * g as usize - 3).unwrap();
            let mut rhs = Rat::new(3 * g as i64 - 6, 2) * t.coefficient(g - 1, 0, 3 * (g - 1) as usize - 3).unwrap();
            let mut pair = Rat::zero();
            for r in 2..=g - 2 {
                pair += &(Rat::from_int(3 * r as i64 - 3)
                    * Rat::from_int(3 * (g - r) as i64 - 3)
                    * t.coefficient(r, 0, 3 * r as usize - 3).unwrap()
                    * t.coefficient(g - r, 0, 3 * (g - r) as usize - 3).unwrap());
            }
            rhs += &(pair / Rat::from_int(6 * g as i64 - 6));
            assert_eq!(lhs, rhs, "top-coefficient law failed at g = {g}");
        }
    }

    #[test]
    fn point_generating_series() {
        let mut t = ChiTable::new();
        let s0 = t.chi_point_generating(0, 5, true).unwrap();
        assert_eq!(s0.coeff(1), &KPoly::one()); // 3! * 1/6
        let s1 = t.chi_point_generating(1, 3, true).unwrap();
        assert_eq!(s1.coeff(1), &t.chi_tilde(1, 1).unwrap());
        let s2 = t.chi_point_generating(2, 2, false).unwrap();
        assert_eq!(s2.coeff(2).coeff(0), Rat::new(-1, 240));
    }

    #[test]
    fn provenance_tags() {
        let mut t = ChiTable::new();
        t.chi_tilde(2, 1).unwrap();
        assert_eq!(t.provenance(0, 3), Some(Provenance::Base));
        assert_eq!(t.provenance(1, 1), Some(Provenance::Quadratic));
        assert_eq!(t.provenance(2, 0), Some(Provenance::Quadratic));
        assert_eq!(t.provenance(2, 1), Some(Provenance::Linear));
    }

    #[test]
    fn records_round_trip() {
        let mut t = ChiTable::new();
        t.chi_tilde(2, 2).unwrap();
        let records = t.to_records();
        let mut back = ChiTable::from_records(records);
        assert_eq!(back.chi_tilde(2, 2).unwrap(), t.chi_tilde(2, 2).unwrap());
    }
}

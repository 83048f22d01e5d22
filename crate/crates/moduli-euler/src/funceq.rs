//! Series-level solver and verifiers for the functional equations satisfied
//! by the genus generating series in the puncture variable y.
//!
//! Genus 0 is solved independently from scratch (the only inputs are the
//! normalization chi(0) = 0, chi'(0) = 1); the higher-genus identities are
//! verified against the recursion table, since the differential equation
//! alone leaves their y-independent part undetermined.

use crate::chi::ChiTable;
use crate::error::Error;
use crate::kpoly::KPoly;
use crate::rat::Rat;
use crate::series::TruncSeries;

/// Generating series in y with kappa-polynomial coefficients.
pub type YSeries = TruncSeries<KPoly>;

/// The unique solution of (1 + y - kappa chi) chi' = 1 + chi with
/// chi = y + O(y^2), built order by order:
/// (n+1) c_{n+1} = (1 - n) c_n + kappa sum_{i=1}^{n} (n - i + 1) c_i c_{n+1-i}.
pub fn solve_chi0(order: usize) -> YSeries {
    let mut c: Vec<KPoly> = vec![KPoly::zero(); order + 1];
    if order >= 1 {
        c[1] = KPoly::one();
    }
    for n in 1..order {
        let mut acc = c[n].scale(&Rat::from_int(1 - n as i64));
        let mut pair = KPoly::zero();
        for i in 1..=n {
            if c[i].is_zero() || c[n + 1 - i].is_zero() {
                continue;
            }
            pair = &pair + &(&c[i] * &c[n + 1 - i]).scale(&Rat::from_int((n - i + 1) as i64));
        }
        acc = &acc + &pair.shift_up(1);
        c[n + 1] = acc.scale(&Rat::new(1, n as i64 + 1));
    }
    TruncSeries::from_coeffs(c)
}

/// Residual of the implicit equation
/// kappa (1 + chi) log(1 + chi) - (kappa + 1) chi + y, which must vanish.
pub fn chi0_implicit_residual(chi: &YSeries) -> YSeries {
    let order = chi.order();
    let log = chi.log1p().expect("chi has no constant term");
    let one = TruncSeries::constant(KPoly::one(), order);
    let kappa = KPoly::kappa();
    let lhs = one.add(chi).mul(&log).scale_coeff(&kappa);
    let mut rhs = chi.scale_coeff(&(&kappa + &KPoly::one()));
    rhs = rhs.sub(&TruncSeries::x(order));
    lhs.sub(&rhs)
}

/// Evaluate the kappa-polynomials of a y-series at a rational kappa.
pub fn specialize_kappa(series: &YSeries, kappa: &Rat) -> TruncSeries<Rat> {
    let coeffs = (0..=series.order())
        .map(|i| series.coeff(i).eval(kappa))
        .collect();
    TruncSeries::from_coeffs(coeffs)
}

/// Checks the kappa = 1 specialization: (1 + chi) log(1 + chi) = 2 chi - y,
/// and that the coefficient of y^{n-1} is chi(Mbar_{0,n})/(n-1)!.
pub fn verify_manin(order: usize) -> Result<bool, Error> {
    let chi = specialize_kappa(&solve_chi0(order), &Rat::one());
    let log = chi.log1p().expect("zero constant term");
    let one = TruncSeries::constant(Rat::one(), order);
    let residual = one
        .add(&chi)
        .mul(&log)
        .sub(&chi.scale(&Rat::from_int(2)))
        .add(&TruncSeries::x(order));
    if !residual.is_zero() {
        return Ok(false);
    }
    let mut table = ChiTable::new();
    let mut fact = Rat::one();
    for n in 3..=(order as u32 + 1) {
        fact = fact * Rat::from_int(n as i64 - 1);
        if (n as usize - 1) > order {
            break;
        }
        let expected = table.chi_mbar(0, n)? / fact.clone();
        if chi.coeff(n as usize - 1) != &expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weighted genus-g ladder sum_{n >= 1} n kappa y^{n-1} chi-tilde_{g,n},
/// with the extra leading y when g = 0.
pub fn genus_series(table: &mut ChiTable, g: u32, order: usize) -> Result<YSeries, Error> {
    if g == 0 {
        return Ok(solve_chi0(order));
    }
    let mut out = TruncSeries::zero(order);
    for n in 1..=(order as u32 + 1) {
        let poly = table.chi_tilde(g, n)?;
        let weighted = poly.scale(&Rat::from_int(n as i64)).shift_up(1);
        out.set_coeff(n as usize - 1, weighted);
    }
    Ok(out)
}

/// The genus-1 identity (1 + y - kappa chi) psi = kappa^2 chi'/2 - kappa/12,
/// checked exactly to the requested order.
pub fn verify_genus1(order: usize) -> Result<bool, Error> {
    Ok(genus1_residual(order)?.is_zero())
}

pub fn genus1_residual(order: usize) -> Result<YSeries, Error> {
    // Work with one extra order so the derivative is reliable.
    let slack = order + 1;
    let mut table = ChiTable::new();
    let chi = solve_chi0(slack);
    let psi = genus_series(&mut table, 1, slack)?;
    let kappa = KPoly::kappa();
    let one = TruncSeries::constant(KPoly::one(), slack);
    let front = one.add(&TruncSeries::x(slack)).sub(&chi.scale_coeff(&kappa));
    let lhs = front.mul(&psi);
    let rhs = chi
        .derivative()
        .scale_coeff(&(&kappa * &kappa))
        .scale(&Rat::new(1, 2))
        .sub(&TruncSeries::constant(kappa.scale(&Rat::new(1, 12)), slack));
    Ok(lhs.sub(&rhs).truncate(order))
}

/// The all-genus hierarchy
/// (y+1) f_g' + (2g-1) f_g = kappa^2 f_{g-1}''/2 + kappa sum f_{g1}' f_{g2},
/// verified for 1 <= g <= g_max to the given order.
pub fn verify_genus_hierarchy(g_max: u32, order: usize) -> Result<bool, Error> {
    for g in 1..=g_max {
        if !genus_hierarchy_residual(g, order)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn genus_hierarchy_residual(g: u32, order: usize) -> Result<YSeries, Error> {
    assert!(g >= 1);
    let slack = order + 2;
    let mut table = ChiTable::new();
    let series: Vec<YSeries> = (0..=g)
        .map(|h| genus_series(&mut table, h, slack))
        .collect::<Result<_, _>>()?;
    let kappa = KPoly::kappa();
    let one_plus_y = TruncSeries::constant(KPoly::one(), slack).add(&TruncSeries::x(slack));
    let lhs = one_plus_y
        .mul(&series[g as usize].derivative())
        .add(&series[g as usize].scale(&Rat::from_int(2 * g as i64 - 1)));
    let mut rhs = series[g as usize - 1]
        .derivative()
        .derivative()
        .scale_coeff(&(&kappa * &kappa))
        .scale(&Rat::new(1, 2));
    let mut pair = TruncSeries::zero(slack);
    for g1 in 0..=g {
        pair = pair.add(&series[g1 as usize].derivative().mul(&series[(g - g1) as usize]));
    }
    rhs = rhs.add(&pair.scale_coeff(&kappa));
    Ok(lhs.sub(&rhs).truncate(order))
}

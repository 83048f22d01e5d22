//! Closed-form generating series for the coefficient ladders at fixed genus:
//! the genus-0 family A_k(x), the genus-1 families C_k, D_k, B_k, and the
//! general-genus families A_{g,k}^p(x).
//!
//! In the variable s = log(x+1) - 1 each family member is a finite sum of
//! terms e^{m(s+1)} poly(s). The families satisfy first-order linear
//! recursions in k which integrate exactly in that representation; the
//! explicit coefficient formulas, where printed, are kept alongside as
//! diagnostics (`*_printed`) and compared component by component.

use crate::error::Error;
use crate::expoly::{solve_linear_ode, ExpPolyInS, SPoly};
use crate::rat::{binomial, factorial, Rat};
use crate::series::TruncSeries;

/// Elementary symmetric polynomial e_l of the given values, with e_0 = 1 and
/// e_l = 0 for l < 0 or l > #values.
pub fn elem_sym(l: i64, values: &[Rat]) -> Rat {
    if l < 0 {
        return Rat::zero();
    }
    let l = l as usize;
    if l > values.len() {
        return Rat::zero();
    }
    let mut e = vec![Rat::zero(); l + 1];
    e[0] = Rat::one();
    for v in values {
        for j in (1..=l).rev() {
            let add = &e[j - 1] * v;
            e[j] += &add;
        }
    }
    e.pop().expect("nonempty")
}

/// The consecutive integers from..=to as rationals (empty when to < from).
fn int_range(from: i64, to: i64) -> Vec<Rat> {
    (from..=to).map(Rat::from_int).collect()
}

fn inv_factorial(n: u64) -> Rat {
    Rat::from_bigint(factorial(n)).recip()
}

/// Sum_{l} (s^l / l!) c_l as a polynomial in s.
fn s_poly<F: Fn(i64) -> Rat>(l_max: i64, coeff: F) -> SPoly {
    if l_max < 0 {
        return SPoly::zero();
    }
    let coeffs = (0..=l_max)
        .map(|l| coeff(l) * inv_factorial(l as u64))
        .collect();
    SPoly::from_coeffs(coeffs)
}

/// (1 - e^{-(s+1)}) f' + (k-1) f, the transport term feeding every family
/// recursion.
fn transport_rhs(prev: &ExpPolyInS, k: usize) -> ExpPolyInS {
    let dp = prev.derivative();
    dp.sub(&dp.shift_exp(-1))
        .add(&prev.scale(&Rat::from_int(k as i64 - 1)))
}

// ---------------------------------------------------------------------------
// Genus 0: A_k(x) = sum_n a_{0,n}^k x^n.
// ---------------------------------------------------------------------------

/// The base member in s-space:
/// A_0 = -1/4 + e^{s+1} + e^{2(s+1)} (s/2 - 1/4).
fn a0_expoly() -> ExpPolyInS {
    let mut f = ExpPolyInS::constant(Rat::new(-1, 4));
    f.add_component(1, SPoly::one());
    f.add_component(2, SPoly::from_coeffs(vec![Rat::new(-1, 4), Rat::new(1, 2)]));
    f
}

/// A_1 = 1/2 + e^{s+1} s + e^{2(s+1)} s^2/2.
fn a1_expoly() -> ExpPolyInS {
    let mut f = ExpPolyInS::constant(Rat::new(1, 2));
    f.add_component(1, SPoly::monomial(Rat::one(), 1));
    f.add_component(2, SPoly::monomial(Rat::new(1, 2), 2));
    f
}

/// The closed form for k >= 2: the coefficient of e^{-m(s+1)} is
/// (1/(m+2)!) sum_{l=0}^{k-m-1} (s^l/l!) e_{l+m}(1-m, 2-m, ..., k-m-1),
/// with m running from -2 to k-2.
pub fn a_k_expoly(k: usize) -> ExpPolyInS {
    match k {
        0 => return a0_expoly(),
        1 => return a1_expoly(),
        _ => {}
    }
    let ki = k as i64;
    let mut f = ExpPolyInS::zero();
    for m in -2..=(ki - 2) {
        let args = int_range(1 - m, ki - m - 1);
        let poly = s_poly(ki - m - 1, |l| elem_sym(l + m, &args));
        f.add_component(-m, poly.scale(&inv_factorial((m + 2) as u64)));
    }
    f
}

/// A_0 .. A_kmax by one transport step per k: A_k' = 2 A_k + rhs(A_{k-1}).
/// Independent of the closed form above; used as a cross-check.
pub fn a_family_ode(kmax: usize) -> Vec<ExpPolyInS> {
    let mut family = vec![a0_expoly()];
    for k in 1..=kmax {
        family.push(solve_linear_ode(2, &transport_rhs(&family[k - 1], k)));
    }
    family
}

/// Truncation of A_k(x). The base members expand their logarithmic closed
/// forms directly; higher k go through the s-space closed form.
pub fn a_k_series(k: usize, order: usize) -> TruncSeries<Rat> {
    match k {
        0 => {
            // 1/2 (1+x)^2 log(1+x) - x/2 - 3 x^2/4
            let x = TruncSeries::<Rat>::x(order);
            let log = x.log1p().expect("zero constant");
            let one_plus_x_sq = crate::series::one_plus_x_pow(2, order);
            let mut out = one_plus_x_sq.mul(&log).scale(&Rat::new(1, 2));
            out.set_coeff(1, out.coeff(1) - Rat::new(1, 2));
            out.set_coeff(2, out.coeff(2) - Rat::new(3, 4));
            out
        }
        1 => {
            // 1/2 + (1+x)(log(1+x) - 1) + 1/2 (1+x)^2 (log(1+x) - 1)^2
            let x = TruncSeries::<Rat>::x(order);
            let mut log_minus_one = x.log1p().expect("zero constant");
            log_minus_one.set_coeff(0, Rat::from_int(-1));
            let one_plus_x = crate::series::one_plus_x_pow(1, order);
            let linear = one_plus_x.mul(&log_minus_one);
            let mut out = linear.add(&linear.mul(&linear).scale(&Rat::new(1, 2)));
            out.set_coeff(0, out.coeff(0) + Rat::new(1, 2));
            out
        }
        _ => a_k_expoly(k).to_x_series(order),
    }
}

// ---------------------------------------------------------------------------
// Genus 1: B_k = -C_k/12 + D_k/2.
// ---------------------------------------------------------------------------

/// C_0 = s + 1, then one transport step per k with no decay term.
pub fn c_family(kmax: usize) -> Vec<ExpPolyInS> {
    let mut family = vec![ExpPolyInS::component(
        0,
        SPoly::from_coeffs(vec![Rat::one(), Rat::one()]),
    )];
    for k in 1..=kmax {
        family.push(solve_linear_ode(0, &transport_rhs(&family[k - 1], k)));
    }
    family
}

/// D_0 = 0 and D_1 = s + 1 seed the second genus-1 ladder.
pub fn d_family(kmax: usize) -> Vec<ExpPolyInS> {
    let mut family = vec![ExpPolyInS::zero()];
    if kmax >= 1 {
        family.push(ExpPolyInS::component(
            0,
            SPoly::from_coeffs(vec![Rat::one(), Rat::one()]),
        ));
    }
    for k in 2..=kmax {
        family.push(solve_linear_ode(0, &transport_rhs(&family[k - 1], k)));
    }
    family
}

/// Truncation of B_k(x) = sum_n a_{1,n}^k x^n.
pub fn b_k_series(k: usize, order: usize) -> TruncSeries<Rat> {
    let c = c_family(k).pop().expect("nonempty");
    let d = d_family(k).pop().expect("nonempty");
    c.scale(&Rat::new(-1, 12))
        .add(&d.scale(&Rat::new(1, 2)))
        .to_x_series(order)
}

// ---------------------------------------------------------------------------
// General genus g >= 2: A_{g,k}^p(x).
// ---------------------------------------------------------------------------

fn check_gp(g: u32, p: usize) -> Result<(), Error> {
    if g < 2 {
        return Err(Error::Domain(format!("family needs genus >= 2, got {g}")));
    }
    if p > 3 * g as usize - 3 {
        return Err(Error::Domain(format!(
            "column index p = {p} exceeds 3g - 3 = {}",
            3 * g - 3
        )));
    }
    Ok(())
}

/// A_{g,0}^p .. A_{g,kmax}^p: zero below the diagonal, e^{(2-2g)(s+1)} on it,
/// then one transport step per k against the decay 2 - 2g.
pub fn a_gkp_family(g: u32, p: usize, kmax: usize) -> Result<Vec<ExpPolyInS>, Error> {
    check_gp(g, p)?;
    let decay = 2 - 2 * g as i64;
    let mut family = vec![ExpPolyInS::zero(); p.min(kmax + 1)];
    if p <= kmax {
        family.push(ExpPolyInS::component(decay, SPoly::one()));
    }
    for k in (p + 1)..=kmax {
        family.push(solve_linear_ode(decay, &transport_rhs(&family[k - 1], k)));
    }
    Ok(family)
}

/// Truncation of A_{g,k}^p(x).
pub fn a_gkp_series(g: u32, k: usize, p: usize, order: usize) -> Result<TruncSeries<Rat>, Error> {
    Ok(a_gkp_family(g, p, k)?
        .pop()
        .map(|f| f.to_x_series(order))
        .unwrap_or_else(|| TruncSeries::zero(order)))
}

// ---------------------------------------------------------------------------
// Printed coefficient formulas, kept verbatim as diagnostics.
// ---------------------------------------------------------------------------

/// The printed explicit coefficients for C_k (k >= 1): the m = 0 and
/// 1 <= m <= k-1 cases as displayed; the m = k component has no printed
/// formula and is omitted here.
pub fn c_k_printed(k: usize) -> ExpPolyInS {
    assert!(k >= 1);
    let ki = k as i64;
    let mut f = ExpPolyInS::zero();
    // c_{k,0} = sum_{l=1}^{k} (s^l/l!) e_{l-1}(1, 2, ..., k-1)
    let args = int_range(1, ki - 1);
    f.add_component(
        0,
        s_poly(ki, |l| if l == 0 { Rat::zero() } else { elem_sym(l - 1, &args) }),
    );
    // c_{k,-m} = (1/m!) sum_{l=0}^{k-m-1} (s^l/l!) e_l(-m+1, ..., k-m-1)
    for m in 1..=(ki - 1) {
        let args = int_range(1 - m, ki - m - 1);
        let poly = s_poly(ki - m - 1, |l| elem_sym(l, &args));
        f.add_component(-m, poly.scale(&inv_factorial(m as u64)));
    }
    f
}

/// The printed explicit coefficients for D_k (k >= 2).
pub fn d_k_printed(k: usize) -> ExpPolyInS {
    assert!(k >= 2);
    let ki = k as i64;
    let mut f = ExpPolyInS::zero();
    // d_{k,0} = 1/k + k s + sum_{l=2}^{k} (s^l/l!) sum_{j=1}^{k-l+1} j^2 e_{l-2}(j+1, ..., k-1)
    let mut d0 = s_poly(ki, |l| {
        if l < 2 {
            return Rat::zero();
        }
        let mut acc = Rat::zero();
        for j in 1..=(ki - l + 1) {
            acc += &(Rat::from_int(j * j) * elem_sym(l - 2, &int_range(j + 1, ki - 1)));
        }
        acc
    });
    d0 = &d0 + &SPoly::from_coeffs(vec![Rat::new(1, ki), Rat::from_int(ki)]);
    f.add_component(0, d0);
    // d_{k,-1} = (k-1) + sum_{l=1}^{k-2} (s^l/l!) sum_{j=0}^{k-l} j^2 e_{l-1}(j+1, ..., k-2)
    let mut d1 = s_poly(ki - 2, |l| {
        if l == 0 {
            return Rat::zero();
        }
        let mut acc = Rat::zero();
        for j in 0..=(ki - l) {
            acc += &(Rat::from_int(j * j) * elem_sym(l - 1, &int_range(j + 1, ki - 2)));
        }
        acc
    });
    d1 = &d1 + &SPoly::constant(Rat::from_int(ki - 1));
    f.add_component(-1, d1);
    // d_{k,-m} for m >= 2 with the harmonic-argument inner symmetric sums.
    for m in 2..=(ki - 1) {
        let harmonic: Vec<Rat> = (1..=(m - 1)).map(|i| Rat::new(1, i)).collect();
        let sign = if m % 2 == 0 { Rat::from_int(-1) } else { Rat::one() };
        let mut poly = s_poly(ki - m - 1, |l| {
            let mut acc = Rat::zero();
            for h in 0..=(m - 1) {
                let outer = elem_sym(h, &harmonic);
                if outer.is_zero() {
                    continue;
                }
                let mut inner = Rat::zero();
                for j in 1..=(ki - l - m - h) {
                    inner += &(Rat::from_int(j * j) * elem_sym(l - 1 + h, &int_range(j + 1, ki - m - 1)));
                }
                let signed = if h % 2 == 0 { inner } else { -inner };
                acc += &(outer * signed);
            }
            acc
        });
        poly = poly.scale(&(&sign / &Rat::from_int(m)));
        poly = &poly + &SPoly::constant(&sign * Rat::from_int(ki - m) / Rat::from_int(m));
        f.add_component(-m, poly);
    }
    f
}

/// The printed explicit coefficients for A_{g,k}^p with k > p (cases
/// p = 0, 1, 2 and p >= 3 as displayed); component exponents are
/// 2 - 2g - m for m = 0 .. k - p.
pub fn a_gkp_printed(g: u32, k: usize, p: usize) -> Result<ExpPolyInS, Error> {
    check_gp(g, p)?;
    assert!(k > p, "printed formulas cover the region above the diagonal");
    let (gi, ki, pi) = (g as i64, k as i64, p as i64);
    let base = 2 - 2 * gi;
    let mut f = ExpPolyInS::zero();
    match p {
        0 => {
            // m = 0: (2-2g) sum_{l=1}^{k} (s^l/l!) e_{l-1}(-2g+3, ..., -2g+k+1)
            let args = int_range(base + 1, base + ki - 1);
            f.add_component(
                base,
                s_poly(ki, |l| if l == 0 { Rat::zero() } else { elem_sym(l - 1, &args) })
                    .scale(&Rat::from_int(base)),
            );
            // m >= 1: ((2-2g)/m!) sum_{l=0}^{k-m} (s^l/l!) e_{l+m-1}(-2g+3-m, ..., -2g+k+1-m)
            for m in 1..=ki {
                let args = int_range(base + 1 - m, base + ki - 1 - m);
                let poly = s_poly(ki - m, |l| elem_sym(l + m - 1, &args));
                f.add_component(base - m, poly.scale(&(Rat::from_int(base) * inv_factorial(m as u64))));
            }
        }
        1 => {
            // (1/m!) sum_{l=0}^{k-m-1} (s^l/l!) e_{l+m}(-2g+3-m, ..., -2g+k+1-m)
            for m in 0..=(ki - 1) {
                let args = int_range(base + 1 - m, base + ki - 1 - m);
                let poly = s_poly(ki - m - 1, |l| elem_sym(l + m, &args));
                f.add_component(base - m, poly.scale(&inv_factorial(m as u64)));
            }
        }
        2 => {
            // m = 0: (k-1) + sum_{l=1}^{k-2} (s^l/l!)
            //        sum_j j (j+2g-3) e_{l-1}(j+1, ..., k-2g+1)
            let mut top = s_poly(ki - 2, |l| {
                if l == 0 {
                    return Rat::zero();
                }
                let mut acc = Rat::zero();
                for j in (4 - 2 * gi)..=(ki - l - 2 * gi + 2) {
                    acc += &(Rat::from_int(j * (j + 2 * gi - 3))
                        * elem_sym(l - 1, &int_range(j + 1, ki - 2 * gi + 1)));
                }
                acc
            });
            top = &top + &SPoly::constant(Rat::from_int(ki - 1));
            f.add_component(base, top);
            // m >= 1 with the binomial-argument outer symmetric sums.
            for m in 1..=(ki - 2) {
                let outer_args = int_range(2 * gi - 2, 2 * gi - 3 + m);
                let sign = if m % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
                let mut poly = s_poly(ki - 2 - m, |l| {
                    let mut acc = Rat::zero();
                    for h in 0..=m {
                        let outer = elem_sym(m - h, &outer_args);
                        if outer.is_zero() {
                            continue;
                        }
                        let mut inner = Rat::zero();
                        for j in (4 - 2 * gi)..=(ki - l - 2 * gi + 2 - m - h) {
                            inner += &(Rat::from_int(j * (j + 2 * gi - 3))
                                * elem_sym(l - 1 + h, &int_range(j + 1, ki - 2 * gi - m + 1)));
                        }
                        let signed = if h % 2 == 0 { inner } else { -inner };
                        acc += &(outer * signed);
                    }
                    acc
                });
                poly = poly.scale(&(&sign * inv_factorial(m as u64)));
                let constant = &sign
                    * Rat::from_bigint(binomial((2 * gi - 3 + m) as u64, m as u64))
                    * Rat::from_int(ki - 1 - m);
                poly = &poly + &SPoly::constant(constant);
                f.add_component(base - m, poly);
            }
        }
        _ => {
            // ((-1)^m/m!) sum_{l=0}^{k-p-m} (s^l/l!) [ sum_{h=0}^{m} (-1)^h
            //   e_{m-h}(2g-2, ..., 2g-3+m)
            //   sum_j C(j+2g-3, p-2) e_{l+h}(j+1, ..., k-2g-m+1) ]
            for m in 0..=(ki - pi) {
                let outer_args = int_range(2 * gi - 2, 2 * gi - 3 + m);
                let sign = if m % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
                let poly = s_poly(ki - pi - m, |l| {
                    let mut acc = Rat::zero();
                    for h in 0..=m {
                        let outer = elem_sym(m - h, &outer_args);
                        if outer.is_zero() {
                            continue;
                        }
                        let mut inner = Rat::zero();
                        for j in (pi + 1 - 2 * gi)..=(ki - l - 2 * gi + 1 - m - h) {
                            inner += &(Rat::from_bigint(binomial((j + 2 * gi - 3) as u64, (pi - 2) as u64))
                                * elem_sym(l + h, &int_range(j + 1, ki - 2 * gi - m + 1)));
                        }
                        let signed = if h % 2 == 0 { inner } else { -inner };
                        acc += &(outer * signed);
                    }
                    acc
                });
                f.add_component(base - m, poly.scale(&(&sign * inv_factorial(m as u64))));
            }
        }
    }
    Ok(f)
}

/// Component-level comparison of the printed genus-1 coefficient formulas
/// against the recursion-integrated families; each mismatch is reported as
/// (family, k, exponent).
pub fn genus1_printed_discrepancies(kmax: usize) -> Vec<(char, usize, i64)> {
    let mut out = Vec::new();
    let c = c_family(kmax);
    let d = d_family(kmax);
    for k in 1..=kmax {
        let printed = c_k_printed(k);
        for m in 0..=(k as i64) {
            if printed.polynomial_part(-m) != c[k].polynomial_part(-m) {
                out.push(('C', k, -m));
            }
        }
        if k >= 2 {
            let printed = d_k_printed(k);
            for m in 0..=(k as i64) {
                if printed.polynomial_part(-m) != d[k].polynomial_part(-m) {
                    out.push(('D', k, -m));
                }
            }
        }
    }
    out
}

/// Same comparison for the printed A_{g,k}^p formulas, reporting
/// (p, k, exponent) mismatches.
pub fn a_gkp_printed_discrepancies(g: u32, kmax: usize) -> Result<Vec<(usize, usize, i64)>, Error> {
    let mut out = Vec::new();
    for p in 0..=(3 * g as usize - 3).min(kmax) {
        let family = a_gkp_family(g, p, kmax)?;
        for k in (p + 1)..=kmax {
            let printed = a_gkp_printed(g, k, p)?;
            let base = 2 - 2 * g as i64;
            for m in 0..=(k - p) as i64 {
                if printed.polynomial_part(base - m) != family[k].polynomial_part(base - m) {
                    out.push((p, k, base - m));
                }
            }
        }
    }
    Ok(out)
}

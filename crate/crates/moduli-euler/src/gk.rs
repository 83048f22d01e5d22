//! Fixed-edge-count generating polynomials in the vertex-weight variables,
//! computed by three independent methods, plus the substitution back to
//! series in 1/z that recovers the n = 0 coefficient ladder.
//!
//! The three methods:
//! * `gk_dtilde` — quadratic recursion driven by the add-a-box derivation;
//! * `gk_virasoro` — repeated application of the raising operator;
//! * `gk_wick` — expansion of the formal Gaussian integral by moment pairing.

use crate::error::Error;
use crate::initial::v_series;
use crate::rat::{bernoulli, odd_double_factorial, Rat};
use crate::series::{binomial_rat, TruncSeries};
use crate::vpoly::VPoly;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// G_0, ..., G_k by the quadratic derivation recursion
/// k G_k = 1/2 (d^2 G_{k-1} + sum_{r=1}^{k} d G_{r-1} d G_{k-r}).
pub fn gk_dtilde_upto(k: usize) -> Vec<VPoly> {
    let mut g: Vec<VPoly> = vec![VPoly::v0()];
    let mut dg: Vec<VPoly> = vec![VPoly::v(1)];
    for j in 1..=k {
        #[cfg(feature = "parallel")]
        let pair_sum = (1..=j)
            .into_par_iter()
            .map(|r| dg[r - 1].mul(&dg[j - r]))
            .reduce(VPoly::zero, |a, b| a.add(&b));
        #[cfg(not(feature = "parallel"))]
        let pair_sum = (1..=j)
            .map(|r| dg[r - 1].mul(&dg[j - r]))
            .fold(VPoly::zero(), |a, b| a.add(&b));
        let bracket = dg[j - 1].dtilde().add(&pair_sum);
        let gj = bracket.scale(&Rat::new(1, 2 * j as i64));
        dg.push(gj.dtilde());
        g.push(gj);
    }
    g
}

pub fn gk_dtilde(k: usize) -> VPoly {
    gk_dtilde_upto(k).pop().expect("nonempty")
}

/// The raising operator
/// E = sum_{m>=1} V_m ( sum_{k>=0} C(m+k-1, k) V_{k+1} d/dV_{m+k-1} + d/dV_{m-2} ),
/// with d/dV_{-1} = 0 and d/dV_0 acting on the V_0 symbol.
pub fn raising_operator(p: &VPoly) -> VPoly {
    let mut out = VPoly::zero();
    let top = p.max_index().max(if p.partial(0).is_zero() { 0 } else { 1 });
    for j in 0..=top {
        let pj = p.partial(j);
        if pj.is_zero() {
            continue;
        }
        // First part: m + k - 1 = j, so m runs 1..=j+1 with k = j + 1 - m.
        for m in 1..=(j + 1) {
            let k = j + 1 - m;
            let c = binomial_rat(j as u64, k as u64);
            if c.is_zero() {
                continue;
            }
            out = out.add(&pj.mul(&VPoly::v(m)).mul(&VPoly::v(k + 1)).scale(&c));
        }
        // Second part: m - 2 = j.
        out = out.add(&pj.mul(&VPoly::v(j + 2)));
    }
    out
}

/// G_0, ..., G_k through G_l = E G_{l-1} / (2l).
pub fn gk_virasoro_upto(k: usize) -> Vec<VPoly> {
    let mut g: Vec<VPoly> = vec![VPoly::v0()];
    for l in 1..=k {
        g.push(raising_operator(&g[l - 1]).scale(&Rat::new(1, 2 * l as i64)));
    }
    g
}

pub fn gk_virasoro(k: usize) -> VPoly {
    gk_virasoro_upto(k).pop().expect("nonempty")
}

/// G_k from the formal Gaussian integral: expand
/// exp(sum_{l>=1} V_l x^l / l!) to x-degree 2k, replace x^{2m} by the moment
/// (2m-1)!! (odd powers vanish), and read the lambda^{2k} coefficient of the
/// logarithm. V_0 contributes only the additive G_0 = V_0.
pub fn gk_wick(k: usize) -> VPoly {
    if k == 0 {
        return VPoly::v0();
    }
    let deg = 2 * k;
    // exp(S) as a polynomial in x with VPoly coefficients, truncated at x^deg.
    let mut expansion: Vec<VPoly> = vec![VPoly::zero(); deg + 1];
    expansion[0] = VPoly::one();
    for l in 1..=deg as u32 {
        // Multiply by exp(V_l x^l / l!) = sum_j (V_l^j / (j! (l!)^j)) x^{lj}.
        let mut term = VPoly::one();
        let mut factor = Rat::one();
        let mut next = expansion.clone();
        for j in 1..=(deg as u32 / l) {
            term = term.mul(&VPoly::v(l));
            factor = factor
                * Rat::new(1, j as i64)
                * Rat::from_bigint(crate::rat::factorial(l as u64)).recip();
            let scaled = term.scale(&factor);
            let shift = (l * j) as usize;
            for i in 0..=(deg - shift) {
                if expansion[i].is_zero() {
                    continue;
                }
                next[i + shift] = next[i + shift].add(&expansion[i].mul(&scaled));
            }
        }
        expansion = next;
    }
    // Gaussian moments: x^{2m} integrates to (2m-1)!! lambda^{2m}.
    let mut z = TruncSeries::<VPoly>::zero(k);
    z.set_coeff(0, VPoly::one());
    for m in 1..=k {
        let moment = Rat::from_bigint(odd_double_factorial(m as u64));
        z.set_coeff(m, expansion[2 * m].scale(&moment));
    }
    // log(Z) picks out the connected part.
    let mut z_minus_one = z;
    z_minus_one.set_coeff(0, VPoly::zero());
    let log = z_minus_one.log1p().expect("zero constant term");
    log.coeff(k).clone()
}

/// Substitute each V_l (and V_0) by its truncated series in u = 1/z and
/// multiply out; coefficient index = exponent of 1/z.
pub fn vpoly_to_zseries(p: &VPoly, order: usize) -> TruncSeries<Rat> {
    let substitutions: Vec<TruncSeries<Rat>> = (0..=p.max_index())
        .map(|l| v_series(l, order).as_series().clone())
        .collect();
    let monomial = |(key, c): (&crate::vpoly::Partition, &Rat)| {
        let mut term = TruncSeries::constant(c.clone(), order);
        for _ in 0..key.v0_pow() {
            term = term.mul(&substitutions[0]);
        }
        for &l in key.parts() {
            term = term.mul(&substitutions[l as usize]);
        }
        term
    };
    let zero = || TruncSeries::zero(order);
    #[cfg(feature = "parallel")]
    {
        let terms: Vec<_> = p.terms().collect();
        terms
            .into_par_iter()
            .map(monomial)
            .reduce(zero, |a, b| a.add(&b))
    }
    #[cfg(not(feature = "parallel"))]
    p.terms().map(monomial).fold(zero(), |a, b| a.add(&b))
}

/// Seeds of the series recursion: the four nonzero coefficients of the
/// genus-2 base polynomial.
fn genus2_seed(k: usize) -> Rat {
    match k {
        0 => Rat::new(-1, 240),
        1 => Rat::new(13, 288),
        2 => Rat::new(-1, 6),
        3 => Rat::new(5, 24),
        _ => Rat::zero(),
    }
}

/// theta = z d/dz acts on a series in u = 1/z by c u^e -> -e c u^e.
fn theta(s: &TruncSeries<Rat>) -> TruncSeries<Rat> {
    let mut out = TruncSeries::zero(s.order());
    for e in 0..=s.order() {
        out.set_coeff(e, s.coeff(e) * Rat::from_int(-(e as i64)));
    }
    out
}

/// G_0(z), ..., G_k(z) as truncated series in u = 1/z, computed directly at
/// series level:
///
///   G_k = a_k u^2 + (u^2 / 2k) [ (theta - 7/6) theta G_{k-1}
///       + ((2k-2) theta - 7k/6 + 7/3) G_{k-2} + (k^2 - 3k) G_{k-3}
///       + sum theta G_l theta G_{k-1-l}
///       + 2 sum theta G_l (k-2-l) G_{k-2-l}
///       + sum l (k-3-l) G_l G_{k-3-l} ]
pub fn gk_series_recursion_upto(k: usize, order: usize) -> Vec<TruncSeries<Rat>> {
    let mut g0 = TruncSeries::zero(order);
    for gg in 2.. {
        let e = 2 * gg - 2;
        if e > order {
            break;
        }
        g0.set_coeff(
            e,
            bernoulli(2 * gg as u32) / Rat::from_int((2 * gg as i64) * (2 * gg as i64 - 2)),
        );
    }
    let mut g: Vec<TruncSeries<Rat>> = vec![g0];
    let mut tg: Vec<TruncSeries<Rat>> = vec![theta(&g[0])];
    for j in 1..=k {
        let ji = j as i64;
        let mut bracket = theta(&tg[j - 1]).sub(&tg[j - 1].scale(&Rat::new(7, 6)));
        if j >= 2 {
            let c = Rat::new(-7 * ji, 6) + Rat::new(7, 3);
            bracket = bracket
                .add(&tg[j - 2].scale(&Rat::from_int(2 * ji - 2)))
                .add(&g[j - 2].scale(&c));
        }
        if j >= 3 {
            bracket = bracket.add(&g[j - 3].scale(&Rat::from_int(ji * ji - 3 * ji)));
        }
        for l in 0..j {
            bracket = bracket.add(&tg[l].mul(&tg[j - 1 - l]));
        }
        if j >= 2 {
            for l in 0..=(j - 2) {
                let c = Rat::from_int(2 * (j - 2 - l) as i64);
                if !c.is_zero() {
                    bracket = bracket.add(&tg[l].mul(&g[j - 2 - l]).scale(&c));
                }
            }
        }
        if j >= 3 {
            for l in 0..=(j - 3) {
                let c = Rat::from_int((l * (j - 3 - l)) as i64);
                if !c.is_zero() {
                    bracket = bracket.add(&g[l].mul(&g[j - 3 - l]).scale(&c));
                }
            }
        }
        let mut gj = bracket.scale(&Rat::new(1, 2 * ji)).shift_up(2);
        gj.set_coeff(2, gj.coeff(2) + genus2_seed(j));
        tg.push(theta(&gj));
        g.push(gj);
    }
    g
}

pub fn gk_series_recursion(k: usize, order: usize) -> TruncSeries<Rat> {
    gk_series_recursion_upto(k, order).pop().expect("nonempty")
}

/// chi(Mbar_{g,0}) as the z^{2-2g} coefficient of sum_k G_k(z), with the
/// G_k obtained from the derivation recursion and substitution.
pub fn chi_mbar_g0_via_gk(g: u32) -> Result<Rat, Error> {
    Ok(chi_mbar_g0_via_gk_upto(g)?.pop().expect("nonempty").1)
}

/// chi(Mbar_{g,0}) for every 2 <= g <= g_max, sharing one pass over the G_k
/// ladder (the per-genus entry point recomputes it from scratch each time).
pub fn chi_mbar_g0_via_gk_upto(g_max: u32) -> Result<Vec<(u32, Rat)>, Error> {
    if g_max < 2 {
        return Err(Error::Domain(format!(
            "closed surfaces need genus >= 2, got {g_max}"
        )));
    }
    let order = 2 * g_max as usize - 2;
    let kmax = 3 * g_max as usize - 3;
    let mut totals = vec![Rat::zero(); order + 1];
    for gk in gk_dtilde_upto(kmax) {
        let s = vpoly_to_zseries(&gk, order);
        for (e, total) in totals.iter_mut().enumerate() {
            *total += s.coeff(e);
        }
    }
    Ok((2..=g_max)
        .map(|g| (g, totals[2 * g as usize - 2].clone()))
        .collect())
}

/// Both sides of the truncated operator identity: the lambda^{2j}
/// coefficients of exp(lambda^2 d^2 / 2) applied to the exponential of G_0,
/// against the exponential of sum_{k>=1} lambda^{2k} G_k. The common factor
/// exp(G_0) is divided out of both sides.
pub fn operator_identity_sides(kmax: usize) -> (TruncSeries<VPoly>, TruncSeries<VPoly>) {
    // d(exp(G_0) p) = exp(G_0) (V_1 p + d p), so conjugation by exp(G_0)
    // replaces the derivation d by p -> V_1 p + d p.
    let conjugated = |p: &VPoly| VPoly::v(1).mul(p).add(&p.dtilde());
    let mut lhs = TruncSeries::<VPoly>::zero(kmax);
    let mut power = VPoly::one();
    let mut factor = Rat::one();
    lhs.set_coeff(0, power.clone());
    for j in 1..=kmax {
        power = conjugated(&conjugated(&power));
        factor = factor * Rat::new(1, 2 * j as i64);
        lhs.set_coeff(j, power.scale(&factor));
    }

    let g = gk_dtilde_upto(kmax);
    let mut exponent = TruncSeries::<VPoly>::zero(kmax);
    for (k, gk) in g.into_iter().enumerate().skip(1) {
        exponent.set_coeff(k, gk);
    }
    let rhs = exponent.exp().expect("zero constant term");
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vpoly::Partition;

    fn v(l: u32) -> VPoly {
        VPoly::v(l)
    }

    fn published_g1() -> VPoly {
        v(2).scale(&Rat::new(1, 2)).add(&v(1).mul(&v(1)).scale(&Rat::new(1, 2)))
    }

    fn published_g2() -> VPoly {
        v(4).scale(&Rat::new(1, 8))
            .add(&v(2).mul(&v(2)).scale(&Rat::new(1, 4)))
            .add(&v(1).mul(&v(3)).scale(&Rat::new(1, 2)))
            .add(&v(1).mul(&v(1)).mul(&v(2)).scale(&Rat::new(1, 2)))
    }

    fn published_g3() -> VPoly {
        let m = |parts: &[u32], num: i64, den: i64| {
            VPoly::monomial(Partition::new(parts.to_vec(), 0), Rat::new(num, den))
        };
        m(&[2, 2, 1, 1], 1, 2)
            .add(&m(&[2, 2, 2], 1, 6))
            .add(&m(&[3, 1, 1, 1], 1, 6))
            .add(&m(&[3, 2, 1], 1, 1))
            .add(&m(&[3, 3], 5, 24))
            .add(&m(&[4, 1, 1], 1, 4))
            .add(&m(&[4, 2], 1, 4))
            .add(&m(&[5, 1], 1, 8))
            .add(&m(&[6], 1, 48))
    }

    #[test]
    fn dtilde_route_matches_published() {
        let g = gk_dtilde_upto(3);
        assert_eq!(g[0], VPoly::v0());
        assert_eq!(g[1], published_g1());
        assert_eq!(g[2], published_g2());
        assert_eq!(g[3], published_g3());
    }

    #[test]
    fn raising_operator_on_v0() {
        let e = raising_operator(&VPoly::v0());
        assert_eq!(e, v(1).mul(&v(1)).add(&v(2)));
    }

    #[test]
    fn virasoro_route_matches_published() {
        let g = gk_virasoro_upto(4);
        assert_eq!(g[1], published_g1());
        assert_eq!(g[2], published_g2());
        assert_eq!(g[3], published_g3());
        // coefficient of V_8 in G_4 is 1/384
        assert_eq!(g[4].coeff(&Partition::new(vec![8], 0)), Rat::new(1, 384));
        // and of V_3 V_5 is 7/48
        assert_eq!(g[4].coeff(&Partition::new(vec![5, 3], 0)), Rat::new(7, 48));
    }

    #[test]
    fn wick_route_matches_others() {
        assert_eq!(gk_wick(0), VPoly::v0());
        assert_eq!(gk_wick(1), published_g1());
        assert_eq!(gk_wick(2), published_g2());
        assert_eq!(gk_wick(3), published_g3());
    }

    #[test]
    fn one_row_and_hook_coefficients() {
        // a_{(2k)} = 1/(2^k k!) and hooks a_{(1^n m)} = 1/(n! (m-n)!!).
        let g = gk_dtilde_upto(4);
        for (k, gk) in g.iter().enumerate().skip(1) {
            let expect = (Rat::from_int(1i64 << k)
                * Rat::from_bigint(crate::rat::factorial(k as u64)))
            .recip();
            assert_eq!(gk.coeff(&Partition::new(vec![2 * k as u32], 0)), expect);
        }
        // hook (1^2 4^1) in G_3: 1/(2! * 2!!) = 1/4
        assert_eq!(g[3].coeff(&Partition::new(vec![4, 1, 1], 0)), Rat::new(1, 4));
        // hook (1^3 3^1) in G_3: 1/(3! * 0!!) = 1/6
        assert_eq!(g[3].coeff(&Partition::new(vec![3, 1, 1, 1], 0)), Rat::new(1, 6));
    }

    #[test]
    fn homogeneity_and_integrality() {
        for (k, gk) in gk_dtilde_upto(5).iter().enumerate() {
            assert!(gk.is_homogeneous(2 * k as u32), "G_{k} not of weight {}", 2 * k);
            // 2^k k! G_k has integer coefficients.
            let scale = Rat::from_int(1i64 << k) * Rat::from_bigint(crate::rat::factorial(k as u64));
            for (_, c) in gk.scale(&scale).terms() {
                assert!(c.is_integer(), "2^k k! G_{k} has non-integer coefficient {c}");
            }
        }
    }

    #[test]
    fn substitution_recovers_coefficients() {
        let g = gk_dtilde_upto(3);
        // [u^2] of G_1 under substitution = 13/288, the kappa coefficient of
        // the genus-2 base polynomial.
        assert_eq!(vpoly_to_zseries(&g[1], 4).coeff(2), &Rat::new(13, 288));
        // [u^2] of G_2 = -1/6.
        assert_eq!(vpoly_to_zseries(&g[2], 4).coeff(2), &Rat::new(-1, 6));
        // [u^2] of G_0 = -1/240.
        assert_eq!(vpoly_to_zseries(&g[0], 4).coeff(2), &Rat::new(-1, 240));
    }

    #[test]
    fn series_recursion_matches_substitution() {
        let order = 8;
        let series = gk_series_recursion_upto(4, order);
        let polys = gk_dtilde_upto(4);
        for k in 0..=4 {
            assert_eq!(
                series[k],
                vpoly_to_zseries(&polys[k], order),
                "series recursion disagrees at k = {k}"
            );
        }
        // Spot values: [u^4] G_1 = -19/1440 and [u^4] G_3 = -2539/10368.
        assert_eq!(series[1].coeff(4), &Rat::new(-19, 1440));
        assert_eq!(series[3].coeff(4), &Rat::new(-2539, 10368));
    }

    #[test]
    fn genus_assembly_small() {
        // Sum over k of [u^2] G_k = chi(Mbar_{2,0}) = 119/1440.
        assert_eq!(chi_mbar_g0_via_gk(2).unwrap(), Rat::new(119, 1440));
        assert!(chi_mbar_g0_via_gk(1).is_err());
        // At genus 3 the assembly equals the sum of the published base
        // coefficients, which is also 0! chi-tilde_{3,0}(1).
        let published_sum = [
            Rat::new(1, 1008),
            Rat::new(-19, 1440),
            Rat::new(1307, 17280),
            Rat::new(-2539, 10368),
            Rat::new(35, 72),
            Rat::new(-55, 96),
            Rat::new(5, 16),
        ]
        .into_iter()
        .fold(Rat::zero(), |acc, c| acc + c);
        assert_eq!(chi_mbar_g0_via_gk(3).unwrap(), published_sum);
        assert_eq!(
            crate::chi::ChiTable::new().chi_mbar(3, 0).unwrap(),
            published_sum
        );
    }

    #[test]
    fn operator_identity_truncated() {
        let (lhs, rhs) = operator_identity_sides(4);
        assert_eq!(lhs, rhs);
    }
}

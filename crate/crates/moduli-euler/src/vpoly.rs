//! Sparse polynomials in the formal vertex-weight variables V_1, V_2, ...
//! (plus the weight-zero symbol V_0), keyed by integer partitions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::rat::Rat;
use crate::series::Coeff;

/// A monomial key: the multiset of V-indices >= 1 as a nonincreasing
/// partition, together with a power of the special symbol V_0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
    v0_pow: u32,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>, v0_pow: u32) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts, v0_pow }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn v0_pow(&self) -> u32 {
        self.v0_pow
    }

    /// Total weight: sum of parts; V_0 carries weight zero.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity of the part `l` (l >= 1).
    pub fn multiplicity(&self, l: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == l).count() as u32
    }

    fn merged(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition {
            parts,
            v0_pow: self.v0_pow + other.v0_pow,
        }
    }

    /// Remove one copy of part `l`; `None` if absent.
    fn without_part(&self, l: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == l)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts, v0_pow: self.v0_pow })
    }

    /// Replace one copy of part `l` by `l + 1` (the add-a-box move).
    fn bump_part(&self, l: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == l)?;
        let mut parts = self.parts.clone();
        parts[pos] += 1;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts, v0_pow: self.v0_pow })
    }
}

/// A finitely supported map from partitions to exact rationals; zero values
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VPoly {
    terms: BTreeMap<Partition, Rat>,
}

/// Serialized form of one VPoly term.
#[derive(Serialize)]
pub struct VPolyRecord {
    pub partition: Vec<u32>,
    pub v0_power: u32,
    pub coeff: Rat,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly::default()
    }

    pub fn one() -> Self {
        VPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = VPoly::zero();
        p.add_term(Partition::empty(), c);
        p
    }

    /// The single variable V_l (l >= 1).
    pub fn v(l: u32) -> Self {
        let mut p = VPoly::zero();
        p.add_term(Partition::new(vec![l], 0), Rat::one());
        p
    }

    /// The weight-zero symbol V_0.
    pub fn v0() -> Self {
        let mut p = VPoly::zero();
        p.add_term(Partition::new(vec![], 1), Rat::one());
        p
    }

    pub fn monomial(key: Partition, c: Rat) -> Self {
        let mut p = VPoly::zero();
        p.add_term(key, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &Partition) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &VPoly) -> VPoly {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(key.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VPoly) -> VPoly {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(key.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> VPoly {
        VPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> VPoly {
        if r.is_zero() {
            return VPoly::zero();
        }
        VPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &VPoly) -> VPoly {
        // Collect-sort-merge beats repeated tree inserts on the large
        // products the edge-count ladder produces.
        let mut pairs: Vec<(Partition, Rat)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                pairs.push((ka.merged(kb), ca * cb));
            }
        }
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms = BTreeMap::new();
        let mut iter = pairs.into_iter();
        if let Some((mut key, mut acc)) = iter.next() {
            for (k, c) in iter {
                if k == key {
                    acc += &c;
                } else {
                    if !acc.is_zero() {
                        terms.insert(key, acc);
                    }
                    key = k;
                    acc = c;
                }
            }
            if !acc.is_zero() {
                terms.insert(key, acc);
            }
        }
        VPoly { terms }
    }

    /// Partial derivative with respect to V_j; j = 0 differentiates the
    /// V_0 symbol.
    pub fn partial(&self, j: u32) -> VPoly {
        let mut out = VPoly::zero();
        for (key, c) in &self.terms {
            if j == 0 {
                if key.v0_pow >= 1 {
                    let mut k = key.clone();
                    k.v0_pow -= 1;
                    out.add_term(k, c * Rat::from_int(key.v0_pow as i64));
                }
            } else {
                let mult = key.multiplicity(j);
                if mult >= 1 {
                    let k = key.without_part(j).expect("part present");
                    out.add_term(k, c * Rat::from_int(mult as i64));
                }
            }
        }
        out
    }

    /// The add-a-box derivation: V_0 -> V_1, V_l -> V_{l+1}, extended by the
    /// Leibniz rule.
    pub fn dtilde(&self) -> VPoly {
        let mut out = VPoly::zero();
        for (key, c) in &self.terms {
            if key.v0_pow >= 1 {
                let mut k = key.clone();
                k.v0_pow -= 1;
                out.add_term(
                    k.merged(&Partition::new(vec![1], 0)),
                    c * Rat::from_int(key.v0_pow as i64),
                );
            }
            let mut seen = Vec::new();
            for &l in key.parts() {
                if seen.contains(&l) {
                    continue;
                }
                seen.push(l);
                let mult = key.multiplicity(l);
                let k = key.bump_part(l).expect("part present");
                out.add_term(k, c * Rat::from_int(mult as i64));
            }
        }
        out
    }

    /// True when every supported partition has the given V-weight.
    pub fn is_homogeneous(&self, weight: u32) -> bool {
        self.terms.keys().all(|k| k.weight() == weight)
    }

    /// Largest V-index appearing.
    pub fn max_index(&self) -> u32 {
        self.terms
            .keys()
            .filter_map(|k| k.parts().first().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn to_records(&self) -> Vec<VPolyRecord> {
        self.terms
            .iter()
            .map(|(k, c)| VPolyRecord {
                partition: k.parts().to_vec(),
                v0_power: k.v0_pow(),
                coeff: c.clone(),
            })
            .collect()
    }
}

impl Coeff for VPoly {
    fn zero() -> Self {
        VPoly::zero()
    }
    fn one() -> Self {
        VPoly::one()
    }
    fn is_zero(&self) -> bool {
        VPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        VPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        VPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        VPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        VPoly::neg(self)
    }
    fn scale(&self, r: &Rat) -> Self {
        VPoly::scale(self, r)
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if key.v0_pow() == 1 {
                write!(f, " V0")?;
            } else if key.v0_pow() > 1 {
                write!(f, " V0^{}", key.v0_pow())?;
            }
            let mut current = 0u32;
            let mut run = 0u32;
            for &p in key.parts().iter().rev() {
                if p == current {
                    run += 1;
                    continue;
                }
                if run > 1 {
                    write!(f, "^{run}")?;
                }
                write!(f, " V{p}")?;
                current = p;
                run = 1;
            }
            if run > 1 {
                write!(f, "^{run}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(l: u32) -> VPoly {
        VPoly::v(l)
    }

    #[test]
    fn dtilde_basics() {
        assert_eq!(VPoly::v0().dtilde(), v(1));
        // Leibniz: d(V1^2) = 2 V1 V2
        let v1sq = v(1).mul(&v(1));
        assert_eq!(v1sq.dtilde(), v(1).mul(&v(2)).scale(&Rat::from_int(2)));
        // d(V2 V3) = V3^2 + V2 V4
        let p = v(2).mul(&v(3));
        assert_eq!(p.dtilde(), v(3).mul(&v(3)).add(&v(2).mul(&v(4))));
    }

    #[test]
    fn partial_derivatives() {
        let p = v(1).mul(&v(1)).mul(&v(3)); // V1^2 V3
        assert_eq!(p.partial(1), v(1).mul(&v(3)).scale(&Rat::from_int(2)));
        assert_eq!(p.partial(3), v(1).mul(&v(1)));
        assert!(p.partial(2).is_zero());
        let q = VPoly::v0().mul(&VPoly::v0());
        assert_eq!(q.partial(0), VPoly::v0().scale(&Rat::from_int(2)));
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = v(2).sub(&v(2));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn homogeneity_and_weight() {
        let g1 = v(2).scale(&Rat::new(1, 2)).add(&v(1).mul(&v(1)).scale(&Rat::new(1, 2)));
        assert!(g1.is_homogeneous(2));
        assert!(!g1.add(&v(3)).is_homogeneous(2));
        // V_0 carries weight zero.
        assert!(VPoly::v0().is_homogeneous(0));
    }

    #[test]
    fn display_format() {
        let p = v(1).mul(&v(1)).mul(&v(2)).scale(&Rat::new(1, 2));
        assert_eq!(p.to_string(), "1/2 V1^2 V2");
    }
}

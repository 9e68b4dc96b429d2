//! Ambient polynomial rings, monomials and the term order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};

/// Default total-degree bound for Gröbner basis computations.
pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// Reserved name of the auxiliary variable used for eliminations.
pub const TAG_VARIABLE: &str = "__tag";

/// Shared handle to a ring; polynomials and ideals carry one.
pub type Ring = Arc<RingSpec>;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize, exp: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// Term orders available to a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Weighted degree first, ties broken reverse-lexicographically.
    WeightedDegRevLex,
    /// Block order: the weighted degree in the last `k` variables decides
    /// first, then [`TermOrder::WeightedDegRevLex`]. Eliminates those variables.
    EliminateLast(usize),
}

/// The ambient ring `F_p[X_1, ..., X_n]` with a weight vector and term order.
#[derive(Debug, Clone)]
pub struct RingSpec {
    names: Vec<String>,
    field: PrimeField,
    weights: Vec<u32>,
    order: TermOrder,
    degree_cap: u32,
    tagged: OnceLock<Ring>,
}

impl PartialEq for RingSpec {
    /// Rings are compatible iff variables, characteristic, weights and order
    /// agree; the degree cap is a computational guard, not part of the ring.
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || self.names == other.names
                && self.field == other.field
                && self.weights == other.weights
                && self.order == other.order
    }
}

impl Eq for RingSpec {}

impl RingSpec {
    pub fn new(names: Vec<String>, characteristic: u32, weights: Option<Vec<u32>>) -> Result<Self> {
        let field = PrimeField::new(characteristic)?;
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a == TAG_VARIABLE {
                return Err(Error::InvalidRing(format!("invalid variable name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidRing(format!("duplicate variable name {a}")));
            }
        }
        let weights = weights.unwrap_or_else(|| vec![1; names.len()]);
        if weights.len() != names.len() {
            return Err(Error::InvalidRing(format!("{} weights for {} variables", weights.len(), names.len())));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        Ok(Self {
            names,
            field,
            weights,
            order: TermOrder::WeightedDegRevLex,
            degree_cap: DEFAULT_DEGREE_CAP,
            tagged: OnceLock::new(),
        })
    }

    /// `n` variables named `X1, ..., Xn` with unit weights.
    pub fn standard(n: usize, characteristic: u32) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("X{i}")).collect(), characteristic, None)
    }

    pub fn standard_default(n: usize) -> Result<Self> {
        Self::standard(n, DEFAULT_PRIME)
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self.tagged = OnceLock::new();
        self
    }

    pub fn into_ring(self) -> Ring {
        Arc::new(self)
    }

    /// The same ring with the tag variable appended last (weight 1) and an
    /// order eliminating it.
    pub fn with_tag(&self) -> RingSpec {
        let mut names = self.names.clone();
        names.push(TAG_VARIABLE.to_string());
        let mut weights = self.weights.clone();
        weights.push(1);
        RingSpec {
            names,
            field: self.field,
            weights,
            order: TermOrder::EliminateLast(1),
            degree_cap: self.degree_cap * 2,
            tagged: OnceLock::new(),
        }
    }

    /// Cached shared handle to [`RingSpec::with_tag`].
    pub fn tag_ring(&self) -> Ring {
        self.tagged.get_or_init(|| Arc::new(self.with_tag())).clone()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    /// Compares two monomials in the ring's term order.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let TermOrder::EliminateLast(k) = self.order {
            let n = self.nvars();
            let block = |m: &Monomial| -> u32 { (n - k..n).map(|i| m.0[i] as u32 * self.weights[i]).sum() };
            match block(a).cmp(&block(b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.weighted_degree(a).cmp(&self.weighted_degree(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.nvars()).rev() {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                // a smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                e => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// descending lexicographic exponent order.
    pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as u16;
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            return out;
        }
        rec(0, deg, &mut vec![0; nvars], &mut out);
        out
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.characteristic(), self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let r = RingSpec::standard_default(3).unwrap();
        // degree dominates
        assert_eq!(r.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        // revlex tie break: x1^2 > x1*x2 > x2^2 > x1*x3
        assert_eq!(r.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(r.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn weights_change_the_order() {
        let r = RingSpec::new(vec!["x".into(), "y".into()], 32003, Some(vec![1, 3])).unwrap();
        assert_eq!(r.cmp(&m(&[0, 1]), &m(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn tag_order_eliminates() {
        let r = RingSpec::standard_default(2).unwrap().with_tag();
        assert_eq!(r.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
    }

    #[test]
    fn invalid_rings() {
        assert!(RingSpec::new(vec!["x".into(), "x".into()], 7, None).is_err());
        assert!(RingSpec::new(vec!["x".into()], 8, None).is_err());
        assert!(RingSpec::new(vec!["x".into()], 7, Some(vec![0])).is_err());
        assert!(RingSpec::new(vec![TAG_VARIABLE.into()], 7, None).is_err());
    }

    #[test]
    fn monomials_of_degree_counts() {
        assert_eq!(RingSpec::monomials_of_degree(3, 2).len(), 6);
        assert_eq!(RingSpec::monomials_of_degree(4, 0).len(), 1);
    }
}

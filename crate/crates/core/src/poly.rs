//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::ring::{Monomial, Ring};

/// A polynomial: nonzero terms sorted strictly descending in the ring's
/// term order. Equality is structural.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    /// The variable with index `i` (0-based).
    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let field = *ring.field();
        let mut terms: Vec<(Monomial, u32)> = terms.into_iter().collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { ring: ring.clone(), terms: out }
    }

    /// Sum of variables with signed integer coefficients, e.g. `X1 + X2`.
    pub fn linear(ring: &Ring, coeffs: &[(usize, i64)]) -> Self {
        let f = ring.field();
        Self::from_terms(ring, coeffs.iter().map(|&(i, c)| (Monomial::var(ring.nvars(), i, 1), f.from_i64(c))))
    }

    /// Product of variables, e.g. `X1*X2` from `[0, 1]`.
    pub fn product_of_vars(ring: &Ring, vars: &[usize]) -> Self {
        let mut m = Monomial::one(ring.nvars());
        for &v in vars {
            m.0[v] += 1;
        }
        Self::monomial(ring, m, 1)
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Self { ring: ring.clone(), terms }
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    #[inline]
    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.total_degree()).max().unwrap_or(0)
    }

    /// Largest weighted degree of a term.
    pub fn weighted_degree(&self) -> u32 {
        self.terms.iter().map(|t| self.ring.weighted_degree(&t.0)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| self.ring.weighted_degree(&t.0));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), f.mul(*a, c))).collect(),
        }
    }

    /// `self + c * m * other`, merging the sorted term lists.
    pub fn add_scaled(&self, c: u32, m: &Monomial, other: &Polynomial) -> Polynomial {
        let ring = &self.ring;
        let f = ring.field();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(n, d)| (n.mul(m), f.mul(*d, c))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = f.add(x.1, y.1);
                    if s != 0 {
                        out.push((y.0, s));
                    }
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / g` if `g` divides `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        let f = self.ring.field();
        let (glm, glc) = {
            let t = g.terms.first()?;
            (&t.0, t.1)
        };
        let ginv = f.inv(glc);
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((lm, lc)) = rest.terms.first().cloned() {
            if !glm.divides(&lm) {
                return None;
            }
            let q = glm.quotient_of(&lm);
            let c = f.mul(lc, ginv);
            rest = rest.add_scaled(f.neg(c), &q, g);
            quotient.push((q, c));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quotient })
    }

    /// Reinterprets the polynomial in `target`, which must have at least as
    /// many variables; extra exponents are zero.
    pub fn embed(&self, target: &Ring) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(n, 0);
                (Monomial(e), *c)
            }),
        )
    }

    /// Drops trailing variables (which must not occur) to land in `target`.
    pub fn restrict(&self, target: &Ring) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                debug_assert!(m.0[n..].iter().all(|&e| e == 0));
                (Monomial::from_exponents(&m.0[..n]), *c)
            }),
        )
    }

    /// Whether any term involves one of the variables with index `>= from`.
    pub fn involves_from(&self, from: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[from..].iter().any(|&e| e > 0))
    }

    pub fn check_ring(&self, ring: &Ring) -> Result<()> {
        self.ring.check_same(ring)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(1, &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let minus_one = self.ring.field().neg(1);
        self.add_scaled(minus_one, &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(*c, m, large);
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{mag}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

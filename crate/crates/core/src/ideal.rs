//! Ideals with cached Gröbner bases, and the ideal-theoretic toolkit:
//! membership, sums, intersections, colons, saturation, dimension, lengths.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// Iteration guard for saturations.
pub const SATURATION_STEPS: usize = 64;

struct IdealData {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
    dim: OnceLock<Option<usize>>,
}

/// An ideal given by generators. The reduced Gröbner basis and the Krull
/// dimension are computed on first use and cached; clones share the cache.
#[derive(Clone)]
pub struct Ideal(Arc<IdealData>);

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.0.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            g.check_ring(ring)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self::from_parts(ring, gens, None))
    }

    fn from_parts(ring: &Ring, gens: Vec<Polynomial>, gb: Option<Vec<Polynomial>>) -> Self {
        let cache = OnceLock::new();
        if let Some(gb) = gb {
            let _ = cache.set(gb);
        }
        Ideal(Arc::new(IdealData { ring: ring.clone(), gens, gb: cache, dim: OnceLock::new() }))
    }

    /// Wraps a reduced Gröbner basis, installing it as the cache.
    fn from_reduced_basis(ring: &Ring, basis: Vec<Polynomial>) -> Self {
        Self::from_parts(ring, basis.clone(), Some(basis))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_reduced_basis(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::from_reduced_basis(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the variables with the given indices.
    pub fn variables(ring: &Ring, indices: &[usize]) -> Self {
        let mut idx: Vec<usize> = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let basis: Vec<Polynomial> = idx.iter().rev().map(|&i| Polynomial::var(ring, i)).collect();
        let mut basis = basis;
        basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Self::from_reduced_basis(ring, basis)
    }

    /// The homogeneous maximal ideal `(X_1, ..., X_n)`.
    pub fn maximal(ring: &Ring) -> Self {
        Self::variables(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.0.gens
    }

    /// Reduced Gröbner basis, sorted ascending by leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(gb) = self.0.gb.get() {
            return Ok(gb);
        }
        let gb = groebner::groebner_basis(&self.0.ring, &self.0.gens)?;
        Ok(self.0.gb.get_or_init(|| gb))
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.groebner_basis()?.iter().map(|g| g.leading_monomial().unwrap().clone()).collect())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        f.check_ring(self.ring())?;
        Ok(groebner::normal_form(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.ring().check_same(other.ring())?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, decided by comparing reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.ring().check_same(other.ring())?;
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.first().is_some_and(|g| g.is_unit()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_empty())
    }

    /// Whether every generator is a monomial.
    pub fn is_monomial(&self) -> bool {
        self.0.gens.iter().all(|g| g.is_monomial())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring().check_same(other.ring())?;
        self.with_generators(other.generators())
    }

    /// `self + (extra)`.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.0.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(self.ring(), gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring().check_same(other.ring())?;
        let mut gens = Vec::new();
        for f in self.generators() {
            for g in other.generators() {
                gens.push(f * g);
            }
        }
        Ideal::new(self.ring(), gens)
    }

    /// `self ∩ other`, by eliminating a tag variable `t` from
    /// `t·self + (1 − t)·other`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let ring = self.ring();
        ring.check_same(other.ring())?;
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        if self.is_zero()? || other.is_zero()? {
            return Ok(Ideal::zero(ring));
        }
        let tr = ring.tag_ring();
        let n = ring.nvars();
        let t = Polynomial::var(&tr, n);
        let one_minus_t = &Polynomial::one(&tr) - &t;
        let mut gens = Vec::new();
        for f in self.generators() {
            gens.push(&t * &f.embed(&tr));
        }
        for g in other.generators() {
            gens.push(&one_minus_t * &g.embed(&tr));
        }
        let gb = groebner::groebner_basis(&tr, &gens)?;
        let mut basis: Vec<Polynomial> = gb.iter().filter(|g| !g.involves_from(n)).map(|g| g.restrict(ring)).collect();
        basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Ok(Ideal::from_reduced_basis(ring, basis))
    }

    /// Intersection of several ideals; the empty intersection is the unit ideal.
    pub fn intersect_all<'a>(ring: &Ring, ideals: impl IntoIterator<Item = &'a Ideal>) -> Result<Ideal> {
        let mut acc = Ideal::unit(ring);
        for i in ideals {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    /// `self : g = {f : f·g ∈ self}`.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        let ring = self.ring();
        g.check_ring(ring)?;
        if g.is_zero() {
            return Err(Error::ZeroElement);
        }
        if g.is_unit() || self.is_unit()? {
            return Ok(self.clone());
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(ring));
        }
        let principal = Ideal::new(ring, vec![g.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens =
            meet.generators().iter().map(|h| h.div_exact(g).expect("elements of (g) are divisible by g")).collect();
        Ideal::new(ring, gens)
    }

    /// `self : other = {f : f·other ⊆ self}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        let ring = self.ring();
        ring.check_same(other.ring())?;
        let mut acc = Ideal::unit(ring);
        for g in other.groebner_basis()? {
            acc = acc.intersect(&self.colon_element(g)?)?;
        }
        Ok(acc)
    }

    /// `self : other^∞`, iterating colons until the ideal stabilizes.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        let mut current = self.clone();
        for _ in 0..SATURATION_STEPS {
            let next = current.colon(other)?;
            if next.same_ideal(&current)? {
                return Ok(next);
            }
            current = next;
        }
        Err(Error::SaturationLimit(SATURATION_STEPS))
    }

    /// Krull dimension of `R/self`: the largest set of variables containing
    /// the support of no leading monomial. `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<Option<usize>> {
        if let Some(d) = self.0.dim.get() {
            return Ok(*d);
        }
        let d = if self.is_unit()? {
            None
        } else {
            let n = self.ring().nvars();
            let supports: Vec<u64> =
                self.leading_monomials()?.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
            Some(max_independent_set(n, &supports))
        };
        Ok(*self.0.dim.get_or_init(|| d))
    }

    /// Standard monomials of a zero-dimensional ideal, in ascending order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        match self.krull_dimension()? {
            None => return Ok(Vec::new()),
            Some(0) => {}
            Some(d) => return Err(Error::NotArtinian(d)),
        }
        let n = self.ring().nvars();
        let lms = self.leading_monomials()?;
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut frontier = vec![Monomial::one(n)];
        seen.insert(Monomial::one(n));
        while let Some(m) = frontier.pop() {
            for i in 0..n {
                let mut next = m.clone();
                next.0[i] += 1;
                if seen.contains(&next) || lms.iter().any(|l| l.divides(&next)) {
                    continue;
                }
                seen.insert(next.clone());
                frontier.push(next);
            }
        }
        let ring = self.ring();
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        out.sort_by(|a, b| ring.cmp(a, b));
        Ok(out)
    }

    /// Number of standard monomials, i.e. `dim_k R/self`.
    fn affine_length(&self) -> Result<usize> {
        Ok(self.standard_monomials()?.len())
    }

    /// Length of the Artinian ring `R/self`, required to be supported at the
    /// origin only so that it equals the local length.
    pub fn artinian_length(&self) -> Result<usize> {
        let len = self.affine_length()?;
        if len > 0 && self.origin_part_dimension()? != len {
            return Err(Error::NotOriginSupported);
        }
        Ok(len)
    }

    /// `self + (X_1^e, ..., X_n^e)`.
    fn with_variable_powers(&self, e: u32) -> Result<Ideal> {
        let ring = self.ring();
        let powers: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i).pow(e)).collect();
        self.with_generators(&powers)
    }

    /// Length of the localization of `R/self` at the origin. Agrees with
    /// [`Ideal::artinian_length`] whenever that is defined.
    pub fn local_length(&self) -> Result<usize> {
        match self.krull_dimension()? {
            None => return Ok(0),
            Some(0) if self.generators().iter().all(Polynomial::is_homogeneous) => {
                return self.affine_length();
            }
            Some(0) => return self.origin_part_dimension(),
            Some(_) => {}
        }
        // ℓ(I + (X^e)) is stable from one exponent to the next only once
        // (X^e) vanishes locally modulo I, by Nakayama's lemma.
        let cap = self.ring().degree_cap();
        let mut e = 1u32;
        while e < cap {
            let a = self.with_variable_powers(e)?.affine_length()?;
            let b = self.with_variable_powers(e + 1)?.affine_length()?;
            if a == b {
                return Ok(a);
            }
            e *= 2;
        }
        Err(Error::NotLocallyArtinian)
    }

    /// Dimension of the local factor at the origin of the Artinian algebra
    /// `A = R/self`: the common generalized kernel of multiplication by the
    /// variables, which is `⋂_j ker(X_j^L)` with `L = dim_k A`.
    fn origin_part_dimension(&self) -> Result<usize> {
        let ring = self.ring();
        let field = *ring.field();
        let basis = self.standard_monomials()?;
        let len = basis.len();
        let index: std::collections::HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut stacked: Vec<Vec<u32>> = Vec::new();
        for j in 0..ring.nvars() {
            let mut mat = vec![vec![0u32; len]; len];
            for (col, b) in basis.iter().enumerate() {
                let mut m = b.clone();
                m.0[j] += 1;
                let image = self.normal_form(&Polynomial::monomial(ring, m, 1))?;
                for (t, c) in image.terms() {
                    mat[index[t]][col] = *c;
                }
            }
            let mut power = 1usize;
            while power < len {
                mat = mat_mul(&field, &mat, &mat);
                power *= 2;
            }
            stacked.extend(mat);
        }
        Ok(len - rank(&field, stacked))
    }

    /// Whether `R/self` has finite length at the origin.
    pub fn is_locally_artinian(&self) -> Result<bool> {
        match self.krull_dimension()? {
            None | Some(0) => Ok(true),
            Some(_) => {
                let m = Ideal::maximal(self.ring());
                self.saturation(&m)?.sum(&m)?.is_unit()
            }
        }
    }

    /// Length of the subquotient `self / inner` at the origin, through the
    /// chain `inner ⊆ inner + (g_1) ⊆ ... ⊆ self` with cyclic factors
    /// `R / ((inner + (g_1, ..., g_{j-1})) : g_j)`.
    pub fn subquotient_length(&self, inner: &Ideal) -> Result<usize> {
        let ring = self.ring();
        ring.check_same(inner.ring())?;
        if !self.contains_ideal(inner)? {
            return Err(Error::NotContained("the inner ideal is not contained in the outer one".into()));
        }
        let mut current = inner.clone();
        let mut total = 0;
        for g in self.groebner_basis()? {
            if current.contains(g)? {
                continue;
            }
            let factor = current.colon_element(g)?;
            total += factor.local_length().map_err(|e| match e {
                Error::NotLocallyArtinian | Error::NotArtinian(_) => Error::InfiniteLength,
                e => e,
            })?;
            current = current.with_generators(std::slice::from_ref(g))?;
        }
        Ok(total)
    }
}

fn mat_mul(field: &crate::field::PrimeField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = b.first().map_or(0, Vec::len);
    let p = field.characteristic() as u64;
    a.iter()
        .map(|row| {
            let mut acc = vec![0u64; n];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (slot, &y) in acc.iter_mut().zip(&b[k]) {
                    *slot = (*slot + x as u64 * y as u64) % p;
                }
            }
            acc.into_iter().map(|v| v as u32).collect()
        })
        .collect()
}

fn rank(field: &crate::field::PrimeField, mut rows: Vec<Vec<u32>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = field.sub(*v, field.mul(f, pv));
                }
            }
        }
        r += 1;
    }
    r
}

/// Size of a largest subset of `0..n` containing none of the `forbidden`
/// bit masks.
fn max_independent_set(n: usize, forbidden: &[u64]) -> usize {
    fn rec(i: usize, n: usize, set: u64, size: usize, forbidden: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = set | (1 << i);
        if forbidden.iter().all(|&f| f & with != f) {
            rec(i + 1, n, with, size + 1, forbidden, best);
        }
        rec(i + 1, n, set, size, forbidden, best);
    }
    let mut best = 0;
    rec(0, n, 0, 0, forbidden, &mut best);
    best
}

/// Distinct monomials of the ideal's generators; convenience for monomial ideals.
pub fn monomial_generators(ideal: &Ideal) -> BTreeSet<Vec<u16>> {
    ideal.generators().iter().filter_map(|g| g.leading_monomial().map(|m| m.exponents().to_vec())).collect()
}

pub fn normal_form(f: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    ideal.normal_form(f)
}

pub fn groebner_basis(ideal: &Ideal) -> Result<Vec<Polynomial>> {
    Ok(ideal.groebner_basis()?.to_vec())
}

pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.intersect(b)
}

pub fn ideal_colon(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.colon(b)
}

pub fn saturation(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.saturation(b)
}

pub fn krull_dimension(ideal: &Ideal) -> Result<Option<usize>> {
    ideal.krull_dimension()
}

pub fn artinian_length(ideal: &Ideal) -> Result<usize> {
    ideal.artinian_length()
}

pub fn subquotient_length(outer: &Ideal, inner: &Ideal) -> Result<usize> {
    outer.subquotient_length(inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn ring(n: usize) -> Ring {
        RingSpec::standard_default(n).unwrap().into_ring()
    }

    fn mono(r: &Ring, e: &[u16]) -> Polynomial {
        Polynomial::monomial(r, Monomial::from_exponents(e), 1)
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let r = ring(5);
        let a = Ideal::variables(&r, &[1, 2]);
        let b = Ideal::variables(&r, &[3, 4]);
        let meet = a.intersect(&b).unwrap();
        let expected = Ideal::new(
            &r,
            vec![
                mono(&r, &[0, 1, 0, 1, 0]),
                mono(&r, &[0, 1, 0, 0, 1]),
                mono(&r, &[0, 0, 1, 1, 0]),
                mono(&r, &[0, 0, 1, 0, 1]),
            ],
        )
        .unwrap();
        assert!(meet.same_ideal(&expected).unwrap());
        assert_eq!(meet.krull_dimension().unwrap(), Some(3));
    }

    #[test]
    fn colon_and_saturation() {
        let r = ring(2);
        let i = Ideal::new(&r, vec![mono(&r, &[2, 0]), mono(&r, &[1, 1])]).unwrap();
        let x = Polynomial::var(&r, 0);
        let c = i.colon_element(&x).unwrap();
        assert!(c.same_ideal(&Ideal::maximal(&r)).unwrap());
        let sat = i.saturation(&Ideal::maximal(&r)).unwrap();
        assert!(sat.same_ideal(&Ideal::variables(&r, &[0])).unwrap());
        assert_eq!(i.colon_element(&Polynomial::zero(&r)).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn lengths() {
        let r = ring(2);
        let ci = Ideal::new(&r, vec![mono(&r, &[2, 0]), mono(&r, &[0, 2])]).unwrap();
        assert_eq!(ci.artinian_length().unwrap(), 4);
        let outer = Ideal::maximal(&r);
        let inner = Ideal::new(&r, vec![mono(&r, &[2, 0]), mono(&r, &[1, 1]), mono(&r, &[0, 2])]).unwrap();
        assert_eq!(outer.subquotient_length(&inner).unwrap(), 2);
        assert_eq!(inner.subquotient_length(&inner).unwrap(), 0);
    }

    #[test]
    fn artinian_away_from_origin() {
        let r = ring(1);
        let x = Polynomial::var(&r, 0);
        // x^2 (x - 1): length 3 affinely, 2 at the origin
        let f = &x.pow(2) * &(&x - &Polynomial::one(&r));
        let i = Ideal::new(&r, vec![f]).unwrap();
        assert_eq!(i.artinian_length().unwrap_err(), Error::NotOriginSupported);
        assert_eq!(i.local_length().unwrap(), 2);
    }

    #[test]
    fn local_length_of_positive_dimensional_ideal() {
        let r = ring(2);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let y_minus_one = &y - &Polynomial::one(&r);
        // the line y = 1 together with a length-two point at the origin
        let i = Ideal::new(&r, vec![&x * &y_minus_one, &y.pow(2) * &y_minus_one]).unwrap();
        assert_eq!(i.krull_dimension().unwrap(), Some(1));
        assert!(i.is_locally_artinian().unwrap());
        assert_eq!(i.local_length().unwrap(), 2);
        let line = Ideal::new(&r, vec![x.clone()]).unwrap();
        assert_eq!(line.local_length().unwrap_err(), Error::NotLocallyArtinian);
        assert!(!line.is_locally_artinian().unwrap());
    }
}

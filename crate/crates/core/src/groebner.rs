//! Buchberger's algorithm with the normal selection strategy and
//! Gebauer–Möller pair pruning, plus division by a basis.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring};

/// Full reduction of `f` by `basis`: no term of the result is divisible by
/// a leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = *ring.field();
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    loop {
        let (lm, lc) = match p.terms().first() {
            None => break,
            Some((m, c)) => (m.clone(), *c),
        };
        let reducer = basis.iter().find(|g| g.leading_monomial().is_some_and(|glm| glm.divides(&lm)));
        match reducer {
            Some(g) => {
                let glm = g.leading_monomial().unwrap();
                let c = field.mul(lc, field.inv(g.leading_coefficient().unwrap()));
                p = p.add_scaled(field.neg(c), &glm.quotient_of(&lm), g);
            }
            None => {
                let mut terms = p.into_terms();
                let lead = terms.remove(0);
                remainder.push(lead);
                p = Polynomial::from_sorted_terms(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, remainder)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    // both monic
    let field = f.ring().field();
    let fm = f.leading_monomial().unwrap().quotient_of(lcm);
    let gm = g.leading_monomial().unwrap().quotient_of(lcm);
    f.mul_monomial(&fm, 1).add_scaled(field.neg(1), &gm, g)
}

struct Builder {
    ring: Ring,
    polys: Vec<Polynomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_polys(&self) -> Vec<Polynomial> {
        self.active.iter().map(|&i| self.polys[i].clone()).collect()
    }

    /// Inserts a new monic basis element and updates the pair set.
    fn update(&mut self, h: Polynomial) {
        let k = self.polys.len();
        self.polys.push(h);
        let hlm = self.lm(k).clone();

        let mut candidates: Vec<Pair> =
            self.active.iter().map(|&g| Pair { i: g, j: k, lcm: self.lm(g).lcm(&hlm) }).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = self.lm(p.i).is_coprime(&hlm);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !self.lm(p.i).is_coprime(&hlm));

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.pairs.retain(|p| !(hlm.divides(&p.lcm) && lm(p.i).lcm(&hlm) != p.lcm && lm(p.j).lcm(&hlm) != p.lcm));
        self.pairs.extend(kept);

        self.active.retain(|&g| !hlm.divides(lm(g)));
        self.active.push(k);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for idx in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[idx], &self.pairs[best]);
            let ord = ring.cmp(&a.lcm, &b.lcm).then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = idx;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted ascending
/// by leading monomial. The zero ideal yields an empty basis and the unit
/// ideal yields `[1]`.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    for g in gens {
        g.check_ring(ring)?;
    }
    let cap = ring.degree_cap();
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic()).collect();
    if input.iter().any(|g| g.is_unit()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut b = Builder { ring: ring.clone(), polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in input {
        let h = normal_form(&g, &b.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        b.update(h.make_monic());
    }

    while let Some(pair) = b.select() {
        let degree = pair.lcm.total_degree();
        if degree > cap {
            return Err(Error::DegreeCap { cap, degree });
        }
        let s = s_polynomial(&b.polys[pair.i], &b.polys[pair.j], &pair.lcm);
        let h = normal_form(&s, &b.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        b.update(h.make_monic());
    }

    Ok(interreduce(ring, b.active_polys()))
}

/// Turns a minimal Gröbner basis into the reduced one.
fn interreduce(ring: &Ring, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<Polynomial> =
            basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        out.push(normal_form(&basis[i], &others).make_monic());
    }
    out
}

/// Whether `basis` is a Gröbner basis (all S-polynomials reduce to zero).
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (f, g) = (basis[i].make_monic(), basis[j].make_monic());
            let lcm = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
            if !normal_form(&s_polynomial(&f, &g, &lcm), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

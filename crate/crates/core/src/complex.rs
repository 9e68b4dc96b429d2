//! Simplicial complexes given by facets, their Stanley-Reisner ideals,
//! facet primes and facet-count profiles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::ring::{Monomial, Ring, RingSpec};

/// Largest vertex count handled by the subset-mask routines.
pub const MAX_VERTICES: usize = 20;

/// A simplicial complex on vertices `1..=vertices`, stored by its facets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Facet counts keyed by facet dimension (`|F| - 1`).
pub type LambdaProfile = BTreeMap<usize, usize>;

impl SimplicialComplex {
    /// Validates and canonicalizes; ghost vertices (in no facet) are rejected.
    pub fn new(vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        validate_complex(&SimplicialComplex { vertices, facets }, false)
    }

    pub fn from_json(text: &str, allow_ghost_vertices: bool) -> Result<Self> {
        let raw: SimplicialComplex = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        validate_complex(&raw, allow_ghost_vertices)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complexes serialize")
    }

    fn masks(&self) -> Vec<u32> {
        self.facets.iter().map(|f| f.iter().fold(0u32, |m, &v| m | (1 << (v - 1)))).collect()
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        let mask = face.iter().fold(0u32, |m, &v| m | (1 << (v - 1)));
        self.masks().iter().any(|&f| f & mask == mask)
    }

    /// Krull dimension of the Stanley-Reisner ring: the largest facet size.
    pub fn ring_dimension(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether all facets have the same size.
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Minimal non-faces, each sorted, in lexicographic order.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let facets = self.masks();
        let is_face = |s: u32| facets.iter().any(|&f| f & s == s);
        let mut out = Vec::new();
        for s in 1u32..(1 << self.vertices) {
            if is_face(s) {
                continue;
            }
            let minimal = (0..self.vertices).filter(|&v| s & (1 << v) != 0).all(|v| is_face(s & !(1 << v)));
            if minimal {
                out.push((0..self.vertices).filter(|&v| s & (1 << v) != 0).map(|v| v + 1).collect());
            }
        }
        out.sort();
        out
    }

    /// The complex obtained by renaming vertex `v` to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        let mut facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| perm[v - 1]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        facets.sort();
        SimplicialComplex { vertices: self.vertices, facets }
    }

    /// Lexicographically least relabeling; equal for isomorphic complexes.
    pub fn isomorphism_canonical_form(&self) -> SimplicialComplex {
        let mut perm: Vec<usize> = (1..=self.vertices).collect();
        let mut best = self.relabel(&perm);
        while next_permutation(&mut perm) {
            let c = self.relabel(&perm);
            if c.facets < best.facets {
                best = c;
            }
        }
        best
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Checks ranges and the antichain property, then sorts vertices within
/// facets and facets lexicographically, dropping duplicates.
pub fn validate_complex(raw: &SimplicialComplex, allow_ghost_vertices: bool) -> Result<SimplicialComplex> {
    let n = raw.vertices;
    if n == 0 {
        return Err(Error::InvalidComplex("a complex needs at least one vertex".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidComplex(format!("at most {MAX_VERTICES} vertices are supported")));
    }
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(raw.facets.len());
    for f in &raw.facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidComplex(format!("vertex {v} outside 1..={n}")));
        }
        facets.push(f);
    }
    facets.sort();
    facets.dedup();
    if facets.iter().all(Vec::is_empty) {
        return Err(Error::InvalidComplex("the empty complex is not supported".into()));
    }
    for (i, a) in facets.iter().enumerate() {
        for (j, b) in facets.iter().enumerate() {
            if i != j && a.iter().all(|v| b.contains(v)) {
                return Err(Error::InvalidComplex(format!("nested facets {a:?} ⊂ {b:?}")));
            }
        }
    }
    if !allow_ghost_vertices {
        if let Some(v) = (1..=n).find(|v| !facets.iter().any(|f| f.contains(v))) {
            return Err(Error::InvalidComplex(format!("vertex {v} lies in no facet")));
        }
    }
    Ok(SimplicialComplex { vertices: n, facets })
}

/// The polynomial ring `F_p[X1, ..., Xn]` for a complex on `n` vertices.
pub fn complex_ring(complex: &SimplicialComplex, characteristic: u32, degree_cap: u32) -> Result<Ring> {
    Ok(RingSpec::standard(complex.vertices, characteristic)?.with_degree_cap(degree_cap).into_ring())
}

fn check_ring(complex: &SimplicialComplex, ring: &Ring) -> Result<()> {
    if ring.nvars() != complex.vertices {
        return Err(Error::InvalidComplex(format!(
            "complex on {} vertices needs a ring with as many variables, not {}",
            complex.vertices,
            ring.nvars()
        )));
    }
    Ok(())
}

/// `I_Δ`, generated by the square-free monomials of the minimal non-faces.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex, ring: &Ring) -> Result<Ideal> {
    check_ring(complex, ring)?;
    let gens = complex
        .minimal_non_faces()
        .iter()
        .map(|s| Polynomial::product_of_vars(ring, &s.iter().map(|v| v - 1).collect::<Vec<_>>()))
        .collect();
    Ideal::new(ring, gens)
}

/// For each facet `F`, the prime generated by the variables outside `F`,
/// with the Krull dimension `|F|` of its quotient.
pub fn facet_primes(complex: &SimplicialComplex, ring: &Ring) -> Result<Vec<(Ideal, usize)>> {
    check_ring(complex, ring)?;
    Ok(complex
        .facets
        .iter()
        .map(|f| {
            let outside: Vec<usize> = (1..=complex.vertices).filter(|v| !f.contains(v)).map(|v| v - 1).collect();
            (Ideal::variables(ring, &outside), f.len())
        })
        .collect())
}

pub fn lambda_profile(complex: &SimplicialComplex) -> LambdaProfile {
    let mut profile = LambdaProfile::new();
    for f in &complex.facets {
        *profile.entry(f.len().saturating_sub(1)).or_insert(0) += 1;
    }
    profile
}

/// All complexes on `n` labeled vertices (facet antichains of nonempty
/// subsets), in canonical form. Without ghost vertices every vertex lies in
/// some facet.
pub fn enumerate_complexes(n: usize, allow_ghost_vertices: bool) -> Vec<SimplicialComplex> {
    assert!(n <= 6, "enumeration is limited to six vertices");
    let full = (1u32 << n) - 1;
    let subsets: Vec<u32> = (1..=full).collect();
    let mut out = Vec::new();
    fn rec(idx: usize, subsets: &[u32], chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == subsets.len() {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        let s = subsets[idx];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            rec(idx + 1, subsets, chosen, out);
            chosen.pop();
        }
        rec(idx + 1, subsets, chosen, out);
    }
    let mut raw = Vec::new();
    rec(0, &subsets, &mut Vec::new(), &mut raw);
    for family in raw {
        let union = family.iter().fold(0, |a, &b| a | b);
        if !allow_ghost_vertices && union != full {
            continue;
        }
        let mut facets: Vec<Vec<usize>> =
            family.iter().map(|&m| (0..n).filter(|&v| m & (1 << v) != 0).map(|v| v + 1).collect()).collect();
        facets.sort();
        out.push(SimplicialComplex { vertices: n, facets });
    }
    out.sort();
    out
}

/// One representative per isomorphism class, in canonical form.
pub fn enumerate_complexes_up_to_isomorphism(n: usize, allow_ghost_vertices: bool) -> Vec<SimplicialComplex> {
    let mut classes: Vec<SimplicialComplex> = enumerate_complexes(n, allow_ghost_vertices)
        .iter()
        .map(SimplicialComplex::isomorphism_canonical_form)
        .collect();
    classes.sort();
    classes.dedup();
    classes
}

/// Exponent vector of the square-free monomial on `face` (1-based vertices).
pub fn face_monomial(nvars: usize, face: &[usize]) -> Monomial {
    let mut m = Monomial::one(nvars);
    for &v in face {
        m.0[v - 1] = 1;
    }
    m
}

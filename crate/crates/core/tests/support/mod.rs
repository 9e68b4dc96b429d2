//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use seqcm::complex::{complex_ring, SimplicialComplex};
use seqcm::filtration::ModulePresentation;
use seqcm::{Ideal, Monomial, Polynomial, Ring, RingSpec};

pub const P: u32 = 32003;

pub fn ring(n: usize) -> Ring {
    RingSpec::standard(n, P).unwrap().into_ring()
}

pub fn sr(n: usize, facets: &[&[usize]]) -> ModulePresentation {
    let c = SimplicialComplex::new(n, facets.iter().map(|f| f.to_vec()).collect()).unwrap();
    sr_of(&c)
}

pub fn sr_of(c: &SimplicialComplex) -> ModulePresentation {
    let r = complex_ring(c, P, 40).unwrap();
    ModulePresentation::from_complex(c, &r).unwrap()
}

// ---------------------------------------------------------------------------
// Monomial ideals as sets of exponent vectors.

pub type Exps = Vec<u16>;

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn member(m: &[u16], gens: &[Exps]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Minimal generators, sorted.
pub fn minimalize(gens: &[Exps]) -> Vec<Exps> {
    let mut out: Vec<Exps> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let redundant = gens.iter().enumerate().any(|(j, h)| j != i && divides(h, g) && (h != g || j < i));
        if !redundant {
            out.push(g.clone());
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn oracle_intersect(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let lcms: Vec<Exps> =
        a.iter().flat_map(|g| b.iter().map(move |h| g.iter().zip(h).map(|(x, y)| *x.max(y)).collect())).collect();
    minimalize(&lcms)
}

fn colon_monomial(a: &[Exps], m: &[u16]) -> Vec<Exps> {
    minimalize(&a.iter().map(|g| g.iter().zip(m).map(|(x, y)| x.saturating_sub(*y)).collect()).collect::<Vec<_>>())
}

pub fn oracle_colon(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let mut acc: Option<Vec<Exps>> = None;
    for m in b {
        let c = colon_monomial(a, m);
        acc = Some(match acc {
            None => c,
            Some(prev) => oracle_intersect(&prev, &c),
        });
    }
    acc.unwrap()
}

pub fn oracle_saturation(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    let mut current = minimalize(a);
    loop {
        let next = oracle_colon(&current, b);
        if next == current {
            return current;
        }
        current = next;
    }
}

pub fn monomial_ideal(ring: &Ring, gens: &[Exps]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| Polynomial::monomial(ring, Monomial::from_exponents(g), 1)).collect()).unwrap()
}

/// Minimal monomial generators of an ideal whose Gröbner basis consists of
/// monomials; `None` if some basis element is not a monomial.
pub fn as_monomial_set(ideal: &Ideal) -> Option<Vec<Exps>> {
    let gb = ideal.groebner_basis().unwrap();
    if gb.iter().any(|g| !g.is_monomial()) {
        return None;
    }
    Some(minimalize(&gb.iter().map(|g| g.leading_monomial().unwrap().exponents().to_vec()).collect::<Vec<_>>()))
}

/// A random monomial ideal with 1 to 4 generators of degree 1 to 4.
pub fn random_monomial_ideal(rng: &mut impl Rng, n: usize) -> Vec<Exps> {
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| {
            let deg = rng.gen_range(1..=4u16);
            let mut e = vec![0u16; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            e
        })
        .collect()
}

/// Mismatches between the ideal operations and the combinatorial oracles on
/// `count` seeded random instances.
pub fn monomial_oracle_mismatches(count: usize, seed: u64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for case in 0..count {
        let n = rng.gen_range(1..=4);
        let r = ring(n);
        let a = random_monomial_ideal(&mut rng, n);
        let b = random_monomial_ideal(&mut rng, n);
        let (ia, ib) = (monomial_ideal(&r, &a), monomial_ideal(&r, &b));
        let checks = [
            ("intersect", ia.intersect(&ib).unwrap(), oracle_intersect(&a, &b)),
            ("colon", ia.colon(&ib).unwrap(), oracle_colon(&a, &b)),
            ("saturation", ia.saturation(&ib).unwrap(), oracle_saturation(&a, &b)),
        ];
        for (op, got, want) in checks {
            if as_monomial_set(&got).as_ref() != Some(&want) {
                bad.push(format!("case {case} {op}: {a:?} vs {b:?}"));
            }
        }
    }
    bad
}

// ---------------------------------------------------------------------------
// Linear algebra over F_p.

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + p - f * pv % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn monomials_of_degree(n: usize, d: u16) -> Vec<Exps> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `dim_k (R/J)_D` from the Macaulay matrix of `J` in degree `D`, for
/// generators homogeneous in the standard grading.
pub fn hilbert_function(n: usize, gens: &[Polynomial], d: u16) -> usize {
    let basis = monomials_of_degree(n, d);
    let index: std::collections::HashMap<&Exps, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.total_degree() as u16;
        if g.is_zero() || gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let mut row = vec![0u64; basis.len()];
            for (t, c) in g.terms() {
                let e: Exps = t.exponents().iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&e]] = *c as u64;
            }
            rows.push(row);
        }
    }
    basis.len() - rank_mod_p(rows, P as u64)
}

/// Length of `R/J` for a homogeneous `J` of finite colength, summing the
/// Hilbert function until it vanishes.
pub fn graded_length(n: usize, gens: &[Polynomial]) -> usize {
    assert!(gens.iter().all(|g| g.is_homogeneous() && g.total_degree() == g.weighted_degree()));
    let mut total = 0;
    for d in 0.. {
        let h = hilbert_function(n, gens, d);
        if h == 0 {
            return total;
        }
        total += h;
    }
    unreachable!()
}

/// Generators of `I + (x_1^{n_1}, …)` as plain polynomials.
pub fn quotient_generators(module: &ModulePresentation, x: &[Polynomial], n: &[u32]) -> Vec<Polynomial> {
    let mut gens = module.ideal().generators().to_vec();
    gens.extend(x.iter().zip(n).map(|(f, &e)| f.pow(e)));
    gens
}

/// `e(x; k[Δ])` for a homogeneous system `x`: the number of top facets
/// times the product of the degrees.
pub fn sr_multiplicity(c: &SimplicialComplex, x: &[Polynomial]) -> usize {
    let top = c.facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let count = c.facets.iter().filter(|f| f.len() == top).count();
    count * x.iter().map(|f| f.total_degree() as usize).product::<usize>()
}

// ---------------------------------------------------------------------------
// Corpus sweeps over every labeled complex on at most four vertices.

pub fn small_corpus() -> Vec<SimplicialComplex> {
    (1..=4).flat_map(|n| seqcm::complex::enumerate_complexes(n, false)).collect()
}

/// Violations found on one complex with its searched good system.
#[derive(Debug, Default)]
pub struct SweepResult {
    pub negative: Vec<String>,
    pub non_monotone: Vec<String>,
    pub power_unstable: Vec<String>,
    pub route_disagreements: Vec<String>,
}

impl SweepResult {
    pub fn merge(&mut self, other: SweepResult) {
        self.negative.extend(other.negative);
        self.non_monotone.extend(other.non_monotone);
        self.power_unstable.extend(other.power_unstable);
        self.route_disagreements.extend(other.route_disagreements);
    }
}

pub fn sweep_complex(c: &SimplicialComplex) -> SweepResult {
    use seqcm::filtration::*;
    use seqcm::sequences::is_dd_sequence_bounded;
    let mut out = SweepResult::default();
    let m = sr_of(c);
    let f = dimension_filtration(&m).unwrap();
    let x = find_good_sop(&m, &f, &SearchConfig::default()).unwrap();
    let config = MultiplicityConfig::default();
    let deficiency = Deficiency::new(&m, &f, &x, MultiplicityRoute::General, &config).unwrap();
    let table: std::collections::HashMap<Vec<u32>, i64> = deficiency.table(3).unwrap().into_iter().collect();
    let tag = |n: &[u32]| format!("{:?} at {n:?}", c.facets);
    for (n, &v) in &table {
        if v < 0 {
            out.negative.push(tag(n));
        }
        for k in 0..n.len() {
            if n[k] < 3 {
                let mut up = n.clone();
                up[k] += 1;
                if table[&up] < v {
                    out.non_monotone.push(tag(n));
                }
            }
        }
        let powered = ParameterSystem::new(x.powers(n));
        if !is_good_sop(&m, &f, &powered).unwrap().good {
            out.power_unstable.push(tag(n));
        }
    }
    let d = x.len();
    let squares_route = table[&vec![2; d]] == 0;
    let cert = is_dd_sequence_bounded(&m, &x, 2, 3, &config).unwrap();
    let dd_route = cert.certified() && table[&vec![1; d]] == 0;
    if squares_route != dd_route {
        out.route_disagreements.push(format!("{:?}: squares {squares_route} dd {dd_route}", c.facets));
    }
    out
}

pub fn sweep_corpus() -> SweepResult {
    let mut total = SweepResult::default();
    for c in small_corpus() {
        total.merge(sweep_complex(&c));
    }
    total
}

/// `dim_k R/(J + m^N)` by linear algebra on polynomials of degree `< N`.
pub fn truncated_colength(n: usize, gens: &[Polynomial], big_n: u16) -> usize {
    let basis: Vec<Exps> = (0..big_n).flat_map(|d| monomials_of_degree(n, d)).collect();
    let index: std::collections::HashMap<&Exps, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for t in &basis {
            let mut row = vec![0u64; basis.len()];
            let mut any = false;
            for (m, c) in g.terms() {
                let e: Exps = m.exponents().iter().zip(t).map(|(a, b)| a + b).collect();
                if let Some(&k) = index.get(&e) {
                    row[k] = *c as u64;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    basis.len() - rank_mod_p(rows, P as u64)
}

/// Length of `R/J` localized at the origin: `dim_k R/(J + m^N)` once it is
/// stable from `N` to `N + 1`, which by Nakayama means `m^N ⊆ J` locally.
pub fn local_length_oracle(n: usize, gens: &[Polynomial]) -> usize {
    let mut previous = truncated_colength(n, gens, 1);
    for big_n in 2..40 {
        let current = truncated_colength(n, gens, big_n);
        if current == previous {
            return current;
        }
        previous = current;
    }
    panic!("no stable truncation below degree 40")
}

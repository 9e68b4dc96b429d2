//! Module presentations, filtrations satisfying the dimension condition,
//! good systems of parameters, multiplicities and the deficiency function
//! `I_{F,M}(x(n)) = ℓ(M/x(n)M) − Σ_i n_1⋯n_{d_i}·e(x_1, …, x_{d_i}; D_i)`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{facet_primes, lambda_profile, stanley_reisner_ideal, SimplicialComplex};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::parse::PresentationSource;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingSpec};

/// `M = R/I` together with a reduced primary decomposition of `I`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    ideal: Ideal,
    components: Vec<(Ideal, usize)>,
    dim: usize,
    complex: Option<SimplicialComplex>,
}

impl ModulePresentation {
    /// Verifies that the components intersect to `ideal` and have the
    /// recorded dimensions.
    pub fn new(ideal: Ideal, components: Vec<(Ideal, usize)>) -> Result<Self> {
        let ring = ideal.ring().clone();
        if components.is_empty() {
            return Err(Error::InconsistentComponents("no components given".into()));
        }
        for (k, (c, d)) in components.iter().enumerate() {
            c.ring().check_same(&ring)?;
            match c.krull_dimension()? {
                Some(actual) if actual == *d => {}
                actual => {
                    return Err(Error::InconsistentComponents(format!(
                        "component {} has dimension {}, recorded {d}",
                        k + 1,
                        actual.map_or("undefined (unit ideal)".to_string(), |a| a.to_string())
                    )))
                }
            }
        }
        let meet = Ideal::intersect_all(&ring, components.iter().map(|(c, _)| c))?;
        if !meet.same_ideal(&ideal)? {
            return Err(Error::InconsistentComponents("components do not intersect to the ideal".into()));
        }
        let dim = components.iter().map(|(_, d)| *d).max().unwrap();
        if dim == 0 {
            return Err(Error::InconsistentComponents("modules of dimension zero are not supported".into()));
        }
        Ok(Self { ideal, components, dim, complex: None })
    }

    pub fn from_source(source: PresentationSource) -> Result<Self> {
        Self::new(source.ideal, source.components)
    }

    /// The Stanley-Reisner ring of `complex` with its facet primes.
    pub fn from_complex(complex: &SimplicialComplex, ring: &Ring) -> Result<Self> {
        let ideal = stanley_reisner_ideal(complex, ring)?;
        let components = facet_primes(complex, ring)?;
        let mut m = Self::new(ideal, components)?;
        m.complex = Some(complex.clone());
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn components(&self) -> &[(Ideal, usize)] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn complex(&self) -> Option<&SimplicialComplex> {
        self.complex.as_ref()
    }

    /// Distinct component dimensions, ascending.
    pub fn component_dimensions(&self) -> Vec<usize> {
        self.components.iter().map(|(_, d)| *d).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Whether all components share one dimension.
    pub fn is_unmixed(&self) -> bool {
        self.component_dimensions().len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiltrationKind {
    /// The dimension filtration, built from the primary components.
    Dimension,
    /// `0 ⊂ M`.
    Trivial,
    /// A user-supplied chain satisfying the dimension condition.
    UserSupplied,
}

/// One submodule `D_i = J_i / I`; `dim` is `None` for the zero module.
#[derive(Debug, Clone)]
pub struct FiltrationStep {
    pub ideal: Ideal,
    pub dim: Option<usize>,
}

/// An increasing chain `J_0 ⊆ … ⊆ J_t = R` of ideals containing `I` with
/// strictly increasing dimensions `d_i = dim J_i / I`. When known, the
/// companions `K_i` satisfy `J_i ∩ K_i = I` and `dim R/(J_i + K_i) < d_i`.
#[derive(Debug, Clone)]
pub struct Filtration {
    steps: Vec<FiltrationStep>,
    companions: Option<Vec<Ideal>>,
    kind: FiltrationKind,
}

impl Filtration {
    pub fn steps(&self) -> &[FiltrationStep] {
        &self.steps
    }

    pub fn companions(&self) -> Option<&[Ideal]> {
        self.companions.as_deref()
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    /// Index `t` of the last step.
    pub fn top(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn dims(&self) -> Vec<Option<usize>> {
        self.steps.iter().map(|s| s.dim).collect()
    }

    /// `0 ⊂ M` with companions `R` and `I`.
    pub fn trivial(ideal: &Ideal, dim: usize) -> Filtration {
        let ring = ideal.ring();
        Filtration {
            steps: vec![
                FiltrationStep { ideal: ideal.clone(), dim: None },
                FiltrationStep { ideal: Ideal::unit(ring), dim: Some(dim) },
            ],
            companions: Some(vec![Ideal::unit(ring), ideal.clone()]),
            kind: FiltrationKind::Trivial,
        }
    }

    /// A user-supplied chain `I ⊆ J_0 ⊆ … ⊆ R`; the unit ideal is appended
    /// if missing. Dimensions are `dim R/(I : J_i)`.
    pub fn user_supplied(module: &ModulePresentation, chain: Vec<Ideal>) -> Result<Filtration> {
        let ring = module.ring();
        let i = module.ideal();
        let mut chain = chain;
        if !chain.last().map_or(Ok(false), |j| j.is_unit())? {
            chain.push(Ideal::unit(ring));
        }
        let mut steps = Vec::with_capacity(chain.len());
        let mut previous = i.clone();
        for (k, j) in chain.into_iter().enumerate() {
            if !j.contains_ideal(&previous)? {
                return Err(Error::DimensionCondition(format!("step {k} does not contain the previous step")));
            }
            let dim = i.colon(&j)?.krull_dimension()?;
            if let Some(last) = steps.last() {
                let last: &FiltrationStep = last;
                if dim <= last.dim {
                    return Err(Error::DimensionCondition(format!("dimension does not increase at step {k}")));
                }
            }
            previous = j.clone();
            steps.push(FiltrationStep { ideal: j, dim });
        }
        if steps.last().unwrap().dim != Some(module.dim()) {
            return Err(Error::DimensionCondition("the last step must be the whole module".into()));
        }
        Ok(Filtration { steps, companions: None, kind: FiltrationKind::UserSupplied })
    }

    /// `J_i ∩ K_i = I` for every step, when companions are known.
    pub fn check_companions(&self, module: &ModulePresentation) -> Result<bool> {
        let Some(ks) = &self.companions else { return Ok(true) };
        for (s, k) in self.steps.iter().zip(ks) {
            if !s.ideal.intersect(k)?.same_ideal(module.ideal())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The dimension filtration: with component dimensions `c_0 < … < c_s`,
/// `J_i = ⋂_{dim ≥ c_{i+1}} N(p)`, `K_i = ⋂_{dim ≤ c_i} N(p)` and `J_s = R`.
/// Without a zero-dimensional component the chain starts at `D_0 = 0`.
pub fn dimension_filtration(module: &ModulePresentation) -> Result<Filtration> {
    let ring = module.ring();
    let dims = module.component_dimensions();
    let meet_where = |pred: &dyn Fn(usize) -> bool| {
        Ideal::intersect_all(ring, module.components().iter().filter(|(_, d)| pred(*d)).map(|(c, _)| c))
    };
    let mut steps = Vec::new();
    let mut companions = Vec::new();
    if dims[0] > 0 {
        steps.push(FiltrationStep { ideal: module.ideal().clone(), dim: None });
        companions.push(Ideal::unit(ring));
    }
    for (k, &c) in dims.iter().enumerate() {
        let j = match dims.get(k + 1) {
            Some(&next) => meet_where(&|d| d >= next)?,
            None => Ideal::unit(ring),
        };
        let kc = if k + 1 == dims.len() { module.ideal().clone() } else { meet_where(&|d| d <= c)? };
        steps.push(FiltrationStep { ideal: j, dim: Some(c) });
        companions.push(kc);
    }
    Ok(Filtration { steps, companions: Some(companions), kind: FiltrationKind::Dimension })
}

/// A sequence of ring elements used as a system of parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterSystem {
    elements: Vec<Polynomial>,
}

impl ParameterSystem {
    pub fn new(elements: Vec<Polynomial>) -> Self {
        Self { elements }
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Weighted degrees (the largest over the terms for inhomogeneous elements).
    pub fn degrees(&self) -> Vec<u32> {
        self.elements.iter().map(Polynomial::weighted_degree).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(Polynomial::is_homogeneous)
    }

    /// `x(n) = (x_1^{n_1}, …, x_d^{n_d})`.
    pub fn powers(&self, n: &[u32]) -> Vec<Polynomial> {
        assert_eq!(n.len(), self.elements.len(), "one exponent per element");
        self.elements.iter().zip(n).map(|(x, &e)| x.pow(e)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.elements.iter().map(|x| x.to_string()).collect()
    }
}

/// Whether `x` is a system of parameters of `R/I` at the origin: `dim M`
/// elements without constant term such that `R/(I + (x))` has finite length.
pub fn check_system_of_parameters(module: &ModulePresentation, x: &ParameterSystem) -> Result<()> {
    if x.len() != module.dim() {
        return Err(Error::NotSystemOfParameters(format!(
            "{} elements for a module of dimension {}",
            x.len(),
            module.dim()
        )));
    }
    for (k, e) in x.elements().iter().enumerate() {
        e.check_ring(module.ring())?;
        if e.is_zero() || e.terms().iter().any(|(m, _)| m.is_one()) {
            return Err(Error::NotSystemOfParameters(format!("element {} is not in the maximal ideal", k + 1)));
        }
    }
    if !module.ideal().with_generators(x.elements())?.is_locally_artinian()? {
        return Err(Error::NotSystemOfParameters("the quotient does not have finite length".into()));
    }
    Ok(())
}

/// Result of a goodness check; `violated` is the first failing step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Goodness {
    pub good: bool,
    pub violated: Option<usize>,
}

/// Checks `J_i ∩ (I + (x_{d_i+1}, …, x_d)) = I` for every `i < t`.
pub fn is_good_sop(module: &ModulePresentation, filtration: &Filtration, x: &ParameterSystem) -> Result<Goodness> {
    check_system_of_parameters(module, x)?;
    good_without_sop_check(module, filtration, x)
}

fn good_without_sop_check(
    module: &ModulePresentation,
    filtration: &Filtration,
    x: &ParameterSystem,
) -> Result<Goodness> {
    let i = module.ideal();
    for (idx, step) in filtration.steps()[..filtration.top()].iter().enumerate() {
        let Some(d) = step.dim else { continue };
        let tail = i.with_generators(&x.elements()[d..])?;
        if !step.ideal.intersect(&tail)?.same_ideal(i)? {
            return Ok(Goodness { good: false, violated: Some(idx) });
        }
    }
    Ok(Goodness { good: true, violated: None })
}

/// Bounds for the good system of parameters search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest absolute coefficient tried.
    pub box_limit: u32,
    /// Largest total degree of basis elements.
    pub max_degree: u32,
    /// Largest number of basis elements combined into one candidate of
    /// degree at least two; linear candidates are unrestricted.
    pub max_support: usize,
    /// Nonzero seeds shuffle candidates within each tier.
    pub seed: u64,
    /// Limit on explored search nodes.
    pub node_budget: usize,
    /// Candidates passing the dimension test that are explored per slot.
    pub max_branching: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { box_limit: 2, max_degree: 3, max_support: 3, seed: 0, node_budget: 20_000, max_branching: 8 }
    }
}

struct SearchContext<'a> {
    module: &'a ModulePresentation,
    filtration: &'a Filtration,
    companions: &'a [Ideal],
    config: SearchConfig,
    nodes: usize,
}

/// Index of the companion each slot draws from: the largest `i` with `d_i < j`.
fn pool_index(filtration: &Filtration, slot: usize) -> usize {
    filtration
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.dim.is_none_or(|d| d < slot))
        .map(|(i, _)| i)
        .max()
        .unwrap_or(0)
}

/// Elements of `pool` reduced modulo `I`: `NF_I(m − NF_K(m))` for leading
/// monomials `m` of `pool` of the given total degree.
fn basis_elements(ideal: &Ideal, pool: &Ideal, degree: u32) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let lms = pool.leading_monomials()?;
    let mut out: Vec<Polynomial> = Vec::new();
    for m in RingSpec::monomials_of_degree(ring.nvars(), degree) {
        if !lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let mono = Polynomial::monomial(ring, m, 1);
        let inside = &mono - &pool.normal_form(&mono)?;
        let b = ideal.normal_form(&inside)?.make_monic();
        if !b.is_zero() && !out.contains(&b) {
            out.push(b);
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficient vectors of length `k` with entries in `{−c..c} ∖ {0}` and a
/// positive first entry.
fn coefficient_vectors(k: usize, c: i64) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (1..=c).flat_map(|v| [v, -v]).collect();
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for pos in 0..k {
        let mut next = Vec::new();
        for v in &out {
            for &a in &values {
                if pos == 0 && a < 0 {
                    continue;
                }
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Candidates for a slot drawing from `pool`, ordered by degree, support
/// size and position. Combined basis elements share one weighted degree.
fn candidates(
    ideal: &Ideal,
    pool: &Ideal,
    max_degree: u32,
    coef: i64,
    config: &SearchConfig,
) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let field = *ring.field();
    let mut out: Vec<Polynomial> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for degree in 1..=max_degree {
        let basis = basis_elements(ideal, pool, degree)?;
        let max_support = if degree == 1 { basis.len() } else { config.max_support.min(basis.len()) };
        for size in 1..=max_support {
            let mut tier = Vec::new();
            for support in subsets(basis.len(), size) {
                let elems: Vec<&Polynomial> = support.iter().map(|&i| &basis[i]).collect();
                let homogeneous = elems.iter().all(|e| e.is_homogeneous());
                if homogeneous && elems.iter().any(|e| e.weighted_degree() != elems[0].weighted_degree()) {
                    continue;
                }
                for coeffs in coefficient_vectors(size, coef) {
                    let mut f = Polynomial::zero(ring);
                    for (e, &a) in elems.iter().zip(&coeffs) {
                        f = &f + &e.scale(field.from_i64(a));
                    }
                    if !f.is_zero() && !out.contains(&f) && !tier.contains(&f) {
                        tier.push(f);
                    }
                }
            }
            if config.seed != 0 {
                tier.shuffle(&mut rng);
            }
            out.extend(tier);
        }
    }
    Ok(out)
}

impl SearchContext<'_> {
    /// Necessary dimension drops after filling slots `1..=j`.
    fn prefix_ok(&mut self, prefix: &[Polynomial]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.config.node_budget {
            return Err(Error::SearchExhausted(format!("node budget {} reached", self.config.node_budget)));
        }
        let j = prefix.len();
        for (step, k) in self.filtration.steps().iter().zip(self.companions) {
            let Some(d) = step.dim else { continue };
            if d < j {
                continue;
            }
            if k.with_generators(prefix)?.krull_dimension()? != Some(d - j) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn dfs(
        &mut self,
        pools: &[Vec<Polynomial>],
        prefix: &mut Vec<Polynomial>,
        accept: &mut dyn FnMut(&ParameterSystem) -> Result<bool>,
    ) -> Result<Option<ParameterSystem>> {
        let slot = prefix.len();
        if slot == pools.len() {
            let x = ParameterSystem::new(prefix.clone());
            check_system_of_parameters(self.module, &x)?;
            if good_without_sop_check(self.module, self.filtration, &x)?.good && accept(&x)? {
                return Ok(Some(x));
            }
            return Ok(None);
        }
        let mut explored = 0;
        for c in &pools[slot] {
            if prefix.contains(c) {
                continue;
            }
            prefix.push(c.clone());
            if self.prefix_ok(prefix)? {
                if let Some(x) = self.dfs(pools, prefix, accept)? {
                    return Ok(Some(x));
                }
                explored += 1;
            }
            prefix.pop();
            if explored == self.config.max_branching {
                break;
            }
        }
        Ok(None)
    }
}

/// The first good system of parameters found by the bounded search.
pub fn find_good_sop(
    module: &ModulePresentation,
    filtration: &Filtration,
    config: &SearchConfig,
) -> Result<ParameterSystem> {
    find_good_sop_where(module, filtration, config, |_| Ok(true))
}

/// Depth-first search over candidate systems; slot `j` draws from the
/// companion `K_i` with `i` largest such that `d_i < j`, which makes every
/// completed system good. Returns the first system accepted by `accept`.
pub fn find_good_sop_where(
    module: &ModulePresentation,
    filtration: &Filtration,
    config: &SearchConfig,
    mut accept: impl FnMut(&ParameterSystem) -> Result<bool>,
) -> Result<ParameterSystem> {
    let companions = filtration
        .companions()
        .ok_or_else(|| Error::SearchExhausted("the filtration has no companion ideals".into()))?;
    let d = module.dim();
    let mut ctx = SearchContext { module, filtration, companions, config: *config, nodes: 0 };
    for max_degree in 1..=config.max_degree.max(1) {
        for coef in 1..=config.box_limit.max(1) as i64 {
            let mut pools = Vec::with_capacity(d);
            for slot in 1..=d {
                let pool = &companions[pool_index(filtration, slot)];
                pools.push(candidates(module.ideal(), pool, max_degree, coef, config)?);
            }
            if pools.iter().any(Vec::is_empty) {
                continue;
            }
            if let Some(x) = ctx.dfs(&pools, &mut Vec::new(), &mut accept)? {
                return Ok(x);
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no good system within coefficient box {} and degree {}",
        config.box_limit, config.max_degree
    )))
}

/// Window budget and stabilization width for multiplicity extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityConfig {
    /// Largest exponent `n` evaluated.
    pub window_budget: u32,
}

impl Default for MultiplicityConfig {
    fn default() -> Self {
        Self { window_budget: 8 }
    }
}

/// Number of consecutive equal `r`-th differences required.
pub const STABILIZATION_WINDOW: u32 = 3;

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn factorial(r: usize) -> i64 {
    (1..=r as i64).product()
}

/// Leading coefficient `e` of `L(n) ~ e·n^r`, read off from the `r`-th
/// finite difference once it is constant on a window.
pub fn extract_multiplicity(
    r: usize,
    config: &MultiplicityConfig,
    mut length: impl FnMut(u32) -> Result<usize>,
) -> Result<usize> {
    let budget = config.window_budget;
    let mut values: Vec<i64> = Vec::new();
    let mut value_at = |n: u32, values: &mut Vec<i64>| -> Result<i64> {
        while values.len() < n as usize {
            let next = values.len() as u32 + 1;
            values.push(length(next)? as i64);
        }
        Ok(values[n as usize - 1])
    };
    let mut diff = |s: u32, values: &mut Vec<i64>| -> Result<i64> {
        let mut acc = 0i64;
        for k in 0..=r {
            let sign = if (r - k).is_multiple_of(2) { 1 } else { -1 };
            acc += sign * binomial(r as u64, k as u64) * value_at(s + k as u32, values)?;
        }
        Ok(acc)
    };
    let mut s = 1u32;
    while s + r as u32 + STABILIZATION_WINDOW - 1 <= budget {
        let first = diff(s, &mut values)?;
        let mut stable = true;
        for w in 1..STABILIZATION_WINDOW {
            if diff(s + w, &mut values)? != first {
                stable = false;
                break;
            }
        }
        if stable {
            let f = factorial(r);
            if first >= 0 && first % f == 0 {
                return Ok((first / f) as usize);
            }
            return Err(Error::NoStabilization { budget });
        }
        s += 1;
    }
    Err(Error::NoStabilization { budget })
}

/// `e(x_1, …, x_r; R/A)`, zero when `dim R/A < r`.
pub fn cyclic_multiplicity(x: &[Polynomial], a: &Ideal, config: &MultiplicityConfig) -> Result<usize> {
    let r = x.len();
    match a.krull_dimension()? {
        None => return Ok(0),
        Some(d) if d < r => return Ok(0),
        _ => {}
    }
    if r == 0 {
        return a.local_length();
    }
    extract_multiplicity(r, config, |n| {
        let powers: Vec<Polynomial> = x.iter().map(|f| f.pow(n)).collect();
        a.with_generators(&powers)?.local_length().map_err(not_a_sop)
    })
}

fn not_a_sop(e: Error) -> Error {
    match e {
        Error::NotLocallyArtinian | Error::InfiniteLength => {
            Error::NotSystemOfParameters("the quotient does not have finite length".into())
        }
        e => e,
    }
}

/// `e(x_1, …, x_r; J/K)` via `n ↦ ℓ(J / (K + x(n)·J))`.
pub fn subquotient_multiplicity(
    x: &[Polynomial],
    outer: &Ideal,
    inner: &Ideal,
    config: &MultiplicityConfig,
) -> Result<usize> {
    let r = x.len();
    if r == 0 {
        return outer.subquotient_length(inner);
    }
    match inner.colon(outer)?.krull_dimension()? {
        None => return Ok(0),
        Some(d) if d < r => return Ok(0),
        _ => {}
    }
    extract_multiplicity(r, config, |n| {
        let mut gens = Vec::new();
        for f in x {
            let p = f.pow(n);
            for g in outer.generators() {
                gens.push(&p * g);
            }
        }
        outer.subquotient_length(&inner.with_generators(&gens)?).map_err(not_a_sop)
    })
}

/// How multiplicities of the filtration steps are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplicityRoute {
    /// `e_r(R/K_i) − e_r(R/(J_i + K_i))` when companions are known,
    /// otherwise the subquotient `J_i / I` directly.
    General,
    /// `λ_i · deg(x_1)⋯deg(x_{d_i})` for Stanley-Reisner rings and
    /// homogeneous systems.
    StanleyReisner,
}

/// `e(x_1, …, x_{d_i}; D_i)` for one step of the filtration.
pub fn step_multiplicity(
    module: &ModulePresentation,
    filtration: &Filtration,
    index: usize,
    x: &ParameterSystem,
    route: MultiplicityRoute,
    config: &MultiplicityConfig,
) -> Result<usize> {
    let step = &filtration.steps()[index];
    let Some(r) = step.dim else { return Ok(0) };
    let prefix = &x.elements()[..r];
    match route {
        MultiplicityRoute::StanleyReisner => {
            let complex = module
                .complex()
                .ok_or_else(|| Error::InconsistentComponents("the module is not a Stanley-Reisner ring".into()))?;
            if !x.is_homogeneous() {
                return Err(Error::NotHomogeneous(x.elements().iter().position(|e| !e.is_homogeneous()).unwrap()));
            }
            if r == 0 {
                return Ok(0);
            }
            let lambda = lambda_profile(complex).get(&(r - 1)).copied().unwrap_or(0);
            let degrees: usize = x.degrees()[..r].iter().map(|&d| d as usize).product();
            Ok(lambda * degrees)
        }
        MultiplicityRoute::General => {
            if r == 0 {
                return step.ideal.subquotient_length(module.ideal());
            }
            match filtration.companions() {
                Some(ks) => {
                    let k = &ks[index];
                    let whole = cyclic_multiplicity(prefix, k, config)?;
                    let lower = cyclic_multiplicity(prefix, &step.ideal.sum(k)?, config)?;
                    Ok(whole - lower)
                }
                None => subquotient_multiplicity(prefix, &step.ideal, module.ideal(), config),
            }
        }
    }
}

/// The deficiency function of a good system of parameters, with the
/// step multiplicities computed once.
#[derive(Debug, Clone)]
pub struct Deficiency {
    ideal: Ideal,
    sop: ParameterSystem,
    dims: Vec<Option<usize>>,
    multiplicities: Vec<usize>,
}

impl Deficiency {
    pub fn new(
        module: &ModulePresentation,
        filtration: &Filtration,
        x: &ParameterSystem,
        route: MultiplicityRoute,
        config: &MultiplicityConfig,
    ) -> Result<Self> {
        let goodness = is_good_sop(module, filtration, x)?;
        if let Some(index) = goodness.violated {
            return Err(Error::NotGood { index });
        }
        let multiplicities = (0..filtration.steps().len())
            .map(|i| step_multiplicity(module, filtration, i, x, route, config))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ideal: module.ideal().clone(), sop: x.clone(), dims: filtration.dims(), multiplicities })
    }

    pub fn sop(&self) -> &ParameterSystem {
        &self.sop
    }

    /// `e(x_1, …, x_{d_i}; D_i)` per step.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// `ℓ(M/x(n)M)`.
    pub fn length(&self, n: &[u32]) -> Result<usize> {
        self.ideal.with_generators(&self.sop.powers(n))?.local_length().map_err(not_a_sop)
    }

    /// `Σ_i n_1⋯n_{d_i} · e_i`.
    pub fn expected(&self, n: &[u32]) -> i64 {
        self.dims
            .iter()
            .zip(&self.multiplicities)
            .filter_map(|(d, &e)| d.map(|d| n[..d].iter().map(|&v| v as i64).product::<i64>() * e as i64))
            .sum()
    }

    /// `I_{F,M}(x(n))`.
    pub fn value(&self, n: &[u32]) -> Result<i64> {
        Ok(self.length(n)? as i64 - self.expected(n))
    }

    /// Values on `{1, …, grid}^d` in lexicographic order.
    pub fn table(&self, grid: u32) -> Result<Vec<(Vec<u32>, i64)>> {
        grid_points(self.sop.len(), grid).into_iter().map(|n| Ok((n.clone(), self.value(&n)?))).collect()
    }
}

/// All tuples in `{1, …, max}^d`, lexicographically.
pub fn grid_points(d: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for v in &out {
            for a in 1..=max {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// `I_{F,M}(x(n))` computed from scratch.
#[allow(non_snake_case)]
pub fn I_value(
    module: &ModulePresentation,
    filtration: &Filtration,
    x: &ParameterSystem,
    n: &[u32],
    config: &MultiplicityConfig,
) -> Result<i64> {
    Deficiency::new(module, filtration, x, MultiplicityRoute::General, config)?.value(n)
}

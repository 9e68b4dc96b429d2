//! d-sequences, bounded dd-sequence certificates and the polynomial length
//! law `ℓ(M/x(n)M) = Σ a_i n_1⋯n_i`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::filtration::{
    cyclic_multiplicity, grid_points, subquotient_multiplicity, Filtration, ModulePresentation, MultiplicityConfig,
    ParameterSystem,
};
use crate::{Error, Ideal, Polynomial, Result};

/// A pair `(i, j)` (1-based) with `B_{i−1} : x_j ≠ B_{i−1} : x_i x_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonViolation {
    pub i: usize,
    pub j: usize,
}

/// First violation of the d-sequence condition of `x` on `R/base`.
pub fn d_sequence_violation(base: &Ideal, x: &[Polynomial]) -> Result<Option<ColonViolation>> {
    if x.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroElement);
    }
    let mut prefix = base.clone();
    for i in 0..x.len() {
        for j in i..x.len() {
            let single = prefix.colon_element(&x[j])?;
            let double = prefix.colon_element(&(&x[i] * &x[j]))?;
            if !single.same_ideal(&double)? {
                return Ok(Some(ColonViolation { i: i + 1, j: j + 1 }));
            }
        }
        prefix = prefix.with_generators(std::slice::from_ref(&x[i]))?;
    }
    Ok(None)
}

/// Whether `x` is a d-sequence on `M = R/I`.
pub fn is_d_sequence(module: &ModulePresentation, x: &[Polynomial]) -> Result<bool> {
    Ok(d_sequence_violation(module.ideal(), x)?.is_none())
}

/// Where a bounded dd check failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DDFailure {
    /// Exponent tuple.
    pub n: Vec<u32>,
    /// Length of the prefix tested as a d-sequence.
    pub prefix: usize,
    pub violation: ColonViolation,
}

/// Result of checking the dd-sequence conditions up to a bound together with
/// the polynomial length law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DDCertificate {
    pub sequence: Vec<String>,
    pub bound: u32,
    pub colon_checks_passed: bool,
    pub first_failure: Option<DDFailure>,
    pub fit_coefficients: Vec<i64>,
    pub fit_residual_zero: bool,
    pub verification_grid: String,
    /// `a_i` recomputed as multiplicities of the colon modules, when the fit
    /// is exact.
    pub colon_multiplicities: Option<Vec<usize>>,
    pub colon_formula_agrees: Option<bool>,
}

impl DDCertificate {
    /// Both the bounded colon checks and the length law hold.
    pub fn certified(&self) -> bool {
        self.colon_checks_passed && self.fit_residual_zero
    }
}

/// Memoized colon ideals `(I + (x_k^{e_k})_k) : Π x_k^{f_k}`.
struct ColonCache<'a> {
    ideal: &'a Ideal,
    x: &'a [Polynomial],
    colons: HashMap<(Vec<u32>, Vec<u32>), Ideal>,
}

impl ColonCache<'_> {
    fn colon(&mut self, base: Vec<u32>, factor: Vec<u32>) -> Result<Ideal> {
        let key = (base, factor);
        if let Some(found) = self.colons.get(&key) {
            return Ok(found.clone());
        }
        let (base, factor) = &key;
        let gens: Vec<Polynomial> = base.iter().zip(self.x).filter(|(&e, _)| e > 0).map(|(&e, f)| f.pow(e)).collect();
        let b = self.ideal.with_generators(&gens)?;
        let g = factor
            .iter()
            .zip(self.x)
            .filter(|(&e, _)| e > 0)
            .fold(Polynomial::one(self.ideal.ring()), |acc, (&e, f)| &acc * &f.pow(e));
        let result = b.colon_element(&g)?;
        self.colons.insert(key, result.clone());
        Ok(result)
    }
}

/// Checks that `(x_1^{n_1}, …, x_i^{n_i})` is a d-sequence on
/// `M/(x_{i+1}^{n_{i+1}}, …, x_s^{n_s})M` for every `n ∈ {1, …, bound}^s`
/// and every `i`.
pub fn dd_colon_checks(module: &ModulePresentation, x: &ParameterSystem, bound: u32) -> Result<Option<DDFailure>> {
    let s = x.len();
    let mut cache = ColonCache { ideal: module.ideal(), x: x.elements(), colons: HashMap::new() };
    for n in grid_points(s, bound) {
        for prefix in 1..=s {
            for a in 0..prefix {
                let mut base = vec![0u32; s];
                base[..a].copy_from_slice(&n[..a]);
                base[prefix..].copy_from_slice(&n[prefix..]);
                for j in a..prefix {
                    let mut single = vec![0u32; s];
                    single[j] = n[j];
                    let mut double = single.clone();
                    double[a] += n[a];
                    let lhs = cache.colon(base.clone(), single)?;
                    let rhs = cache.colon(base.clone(), double)?;
                    if !lhs.same_ideal(&rhs)? {
                        return Ok(Some(DDFailure {
                            n: n.clone(),
                            prefix,
                            violation: ColonViolation { i: a + 1, j: j + 1 },
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Coefficients solved from the corner tuples and residuals on a grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFit {
    /// `(a_0, …, a_d)`, absent when the corner values admit no nonnegative
    /// integer solution.
    pub coefficients: Option<Vec<i64>>,
    /// `ℓ(M/x(n)M) − Σ a_i n_1⋯n_i` per grid tuple.
    pub residuals: Vec<(Vec<u32>, i64)>,
}

impl PolynomialFit {
    pub fn exact(&self) -> bool {
        self.coefficients.is_some() && self.residuals.iter().all(|(_, r)| *r == 0)
    }
}

/// `Σ_i a_i n_1⋯n_i`.
pub fn evaluate_length_law(coefficients: &[i64], n: &[u32]) -> i64 {
    let mut product = 1i64;
    let mut total = coefficients[0];
    for (a, &v) in coefficients[1..].iter().zip(n) {
        product *= v as i64;
        total += a * product;
    }
    total
}

/// Solves `(a_0, …, a_d)` from `c_k = (2, …, 2, 1, …, 1)` (k twos), using
/// `ℓ(c_k) − ℓ(c_{k−1}) = 2^{k−1} Σ_{i≥k} a_i`.
pub fn solve_from_corners(corner_lengths: &[i64]) -> Option<Vec<i64>> {
    let d = corner_lengths.len() - 1;
    let mut tails = vec![0i64; d + 2];
    tails[0] = corner_lengths[0];
    for k in 1..=d {
        let diff = corner_lengths[k] - corner_lengths[k - 1];
        let scale = 1i64 << (k - 1);
        if diff % scale != 0 {
            return None;
        }
        tails[k] = diff / scale;
    }
    let coefficients: Vec<i64> = (0..=d).map(|i| tails[i] - tails[i + 1]).collect();
    coefficients.iter().all(|&a| a >= 0).then_some(coefficients)
}

/// Fits the length law from the corners of `{1,2}^d` and checks it on
/// `{1, …, grid}^d`.
pub fn dd_polynomial_fit(module: &ModulePresentation, x: &ParameterSystem, grid: u32) -> Result<PolynomialFit> {
    let d = x.len();
    let mut lengths: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut length = |n: &[u32]| -> Result<i64> {
        if let Some(&v) = lengths.get(n) {
            return Ok(v);
        }
        let v = module.ideal().with_generators(&x.powers(n))?.local_length()? as i64;
        lengths.insert(n.to_vec(), v);
        Ok(v)
    };
    let corners = (0..=d)
        .map(|k| {
            let n: Vec<u32> = (0..d).map(|j| if j < k { 2 } else { 1 }).collect();
            length(&n)
        })
        .collect::<Result<Vec<_>>>()?;
    let Some(coefficients) = solve_from_corners(&corners) else {
        return Ok(PolynomialFit { coefficients: None, residuals: Vec::new() });
    };
    let residuals = grid_points(d, grid)
        .into_iter()
        .map(|n| Ok((n.clone(), length(&n)? - evaluate_length_law(&coefficients, &n))))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolynomialFit { coefficients: Some(coefficients), residuals })
}

/// `a_i = e(x_1, …, x_i; T_i : x_{i+1} / T_i)` with
/// `T_i = I + (x_{i+2}, …, x_d)`, and `a_d = e(x; M)`.
pub fn colon_multiplicities(
    module: &ModulePresentation,
    x: &ParameterSystem,
    config: &MultiplicityConfig,
) -> Result<Vec<usize>> {
    let d = x.len();
    let xs = x.elements();
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..d {
        let tail = module.ideal().with_generators(&xs[i + 1..])?;
        let outer = tail.colon_element(&xs[i])?;
        out.push(subquotient_multiplicity(&xs[..i], &outer, &tail, config)?);
    }
    out.push(cyclic_multiplicity(xs, module.ideal(), config)?);
    Ok(out)
}

/// Bounded dd certificate: colon checks on `{1, …, bound}^s` plus the
/// length law fitted on the corners and verified on `{1, …, grid}^d`.
pub fn is_dd_sequence_bounded(
    module: &ModulePresentation,
    x: &ParameterSystem,
    bound: u32,
    grid: u32,
    config: &MultiplicityConfig,
) -> Result<DDCertificate> {
    let failure = dd_colon_checks(module, x, bound)?;
    let fit = dd_polynomial_fit(module, x, grid)?;
    let exact = fit.exact();
    let (colon_multiplicities, colon_formula_agrees) = if exact {
        let coefficients = fit.coefficients.as_ref().unwrap();
        let formula = colon_multiplicities(module, x, config)?;
        let agrees = formula.iter().zip(coefficients).all(|(&e, &a)| e as i64 == a);
        (Some(formula), Some(agrees))
    } else {
        (None, None)
    };
    Ok(DDCertificate {
        sequence: x.to_strings(),
        bound,
        colon_checks_passed: failure.is_none(),
        first_failure: failure,
        fit_coefficients: fit.coefficients.unwrap_or_default(),
        fit_residual_zero: exact,
        verification_grid: format!("{{1..{grid}}}^{}", x.len()),
        colon_multiplicities,
        colon_formula_agrees,
    })
}

/// `D_i = 0 :_M x_{d_i+1}` for every step of positive dimension below the top.
pub fn annihilators_match_filtration(
    module: &ModulePresentation,
    filtration: &Filtration,
    x: &ParameterSystem,
) -> Result<bool> {
    let steps = filtration.steps();
    for step in &steps[..steps.len() - 1] {
        let Some(d) = step.dim else { continue };
        let Some(next) = x.elements().get(d) else { continue };
        if !module.ideal().colon_element(next)?.same_ideal(&step.ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(0 :_M x_2) ∩ (x_1, …, x_s)M = x_1 (0 :_M x_2)`.
pub fn second_annihilator_identity(module: &ModulePresentation, x: &[Polynomial]) -> Result<bool> {
    if x.len() < 2 {
        return Ok(true);
    }
    let i = module.ideal();
    let ann = i.colon_element(&x[1])?;
    let lhs = ann.intersect(&i.with_generators(x)?)?;
    let scaled: Vec<Polynomial> = ann.generators().iter().map(|g| &x[0] * g).collect();
    let rhs = i.with_generators(&scaled)?;
    lhs.same_ideal(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complex_ring, SimplicialComplex};
    use crate::ring::RingSpec;

    fn sr(n: usize, facets: Vec<Vec<usize>>) -> ModulePresentation {
        let c = SimplicialComplex::new(n, facets).unwrap();
        let r = complex_ring(&c, 32003, 40).unwrap();
        ModulePresentation::from_complex(&c, &r).unwrap()
    }

    fn lin(m: &ModulePresentation, coeffs: &[(usize, i64)]) -> Polynomial {
        Polynomial::linear(m.ring(), coeffs)
    }

    #[test]
    fn regular_sequence_is_a_d_sequence() {
        let r = RingSpec::standard(2, 32003).unwrap().into_ring();
        let zero = Ideal::zero(&r);
        let x = [Polynomial::var(&r, 0), Polynomial::var(&r, 1)];
        assert!(d_sequence_violation(&zero, &x).unwrap().is_none());
    }

    #[test]
    fn nilpotent_is_not_a_d_sequence() {
        let r = RingSpec::standard(1, 32003).unwrap().into_ring();
        let cube = Ideal::new(&r, vec![Polynomial::var(&r, 0).pow(3)]).unwrap();
        let v = d_sequence_violation(&cube, &[Polynomial::var(&r, 0)]).unwrap();
        assert_eq!(v, Some(ColonViolation { i: 1, j: 1 }));
    }

    #[test]
    fn corner_solution() {
        // 2 n1 n2 + 1
        assert_eq!(solve_from_corners(&[3, 5, 9]), Some(vec![1, 0, 2]));
        assert_eq!(solve_from_corners(&[3, 4, 9]), None);
        assert_eq!(evaluate_length_law(&[0, 1, 0, 2], &[2, 3, 1]), 2 + 12);
    }

    #[test]
    fn two_disjoint_edges_certificate() {
        let m = sr(4, vec![vec![1, 4], vec![2, 3]]);
        let x = ParameterSystem::new(vec![lin(&m, &[(0, 1), (1, 1)]), lin(&m, &[(2, 1), (3, 1)])]);
        let cert = is_dd_sequence_bounded(&m, &x, 2, 3, &MultiplicityConfig::default()).unwrap();
        assert_eq!(cert.fit_coefficients, vec![1, 0, 2]);
        assert!(cert.certified());
        assert_eq!(cert.colon_formula_agrees, Some(true));
    }

    #[test]
    fn complete_intersection_coefficients() {
        let m = sr(3, vec![vec![1, 2, 3]]);
        let x = ParameterSystem::new((0..3).map(|i| Polynomial::var(m.ring(), i)).collect());
        let fit = dd_polynomial_fit(&m, &x, 2).unwrap();
        assert_eq!(fit.coefficients, Some(vec![0, 0, 0, 1]));
        assert!(fit.exact());
    }
}

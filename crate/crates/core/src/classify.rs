//! Decision procedures for the Cohen-Macaulay, sequentially Cohen-Macaulay
//! and approximately Cohen-Macaulay properties, the Stanley-Reisner closed
//! form, and the classification report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::complex::{lambda_profile, LambdaProfile, SimplicialComplex};
use crate::filtration::{
    check_system_of_parameters, dimension_filtration, find_good_sop, find_good_sop_where, is_good_sop, Deficiency,
    Filtration, ModulePresentation, MultiplicityConfig, MultiplicityRoute, ParameterSystem, SearchConfig,
};
use crate::sequences::{is_dd_sequence_bounded, DDCertificate};
use crate::{Error, Ideal, Polynomial, Result};

/// Bounds and optional extras for classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[derive(Default)]
pub struct ClassifyOptions {
    pub search: SearchConfig,
    pub multiplicity: MultiplicityConfig,
    /// Bound `N` for the dd colon checks; `None` skips the certificate.
    pub dd_bound: Option<u32>,
    /// Side of the grid `{1, …, g}^d` for the deficiency table.
    pub i_table_grid: Option<u32>,
    /// Search for an element `a` with `0 :_M a = 0 :_M a²` and `M/a²M`
    /// Cohen-Macaulay of dimension `d − 1`.
    pub approx_witness: bool,
    /// Record wall-clock timings in the report.
    pub timings: bool,
}


fn squares(d: usize) -> Vec<u32> {
    vec![2; d]
}

/// Cohen-Macaulayness of `R/I` via `ℓ(M/x²M) = 2^d e(x; M)` for one system
/// of parameters, found by search when not supplied.
pub fn is_cohen_macaulay(
    module: &ModulePresentation,
    x: Option<&ParameterSystem>,
    options: &ClassifyOptions,
) -> Result<bool> {
    let trivial = Filtration::trivial(module.ideal(), module.dim());
    let x = match x {
        Some(x) => {
            check_system_of_parameters(module, x)?;
            x.clone()
        }
        None => find_good_sop(module, &trivial, &options.search)?,
    };
    let deficiency = Deficiency::new(module, &trivial, &x, MultiplicityRoute::General, &options.multiplicity)?;
    Ok(deficiency.value(&squares(module.dim()))? == 0)
}

/// Cohen-Macaulayness of `R/ideal` without a known decomposition; Artinian
/// quotients are Cohen-Macaulay.
pub fn ideal_is_cohen_macaulay(ideal: &Ideal, options: &ClassifyOptions) -> Result<bool> {
    match ideal.krull_dimension()? {
        None => Err(Error::InconsistentComponents("the quotient is zero".into())),
        Some(0) => Ok(true),
        Some(d) => {
            let module = ModulePresentation::new(ideal.clone(), vec![(ideal.clone(), d)])?;
            is_cohen_macaulay(&module, None, options)
        }
    }
}

/// Outcome of the squares test for the dimension filtration.
#[derive(Debug, Clone)]
pub struct SequentialWitness {
    pub sequentially_cm: bool,
    pub filtration: Filtration,
    pub deficiency: Deficiency,
    pub length_sq: usize,
    pub expected_sq: i64,
}

impl SequentialWitness {
    pub fn sop(&self) -> &ParameterSystem {
        self.deficiency.sop()
    }

    /// `ℓ(M/x²M) = 2^d e(x; M)`, valid for any system of parameters.
    pub fn cohen_macaulay(&self) -> bool {
        let d = self.sop().len() as u32;
        let top = *self.deficiency.multiplicities().last().unwrap() as i64;
        self.length_sq as i64 == (1i64 << d) * top
    }

    /// Dimension filtration of the form `0 ⊂ D_1 ⊂ M` with
    /// `dim D_1 = d − 1`.
    pub fn has_codimension_one_shape(&self) -> bool {
        let d = self.sop().len();
        let dims: Vec<usize> = self.filtration.dims().into_iter().flatten().collect();
        dims == [d - 1, d]
    }
}

/// Sequential Cohen-Macaulayness: a good system of parameters `x` for the
/// dimension filtration with `I(x_1², …, x_d²) = 0`. A nonzero value is a
/// negative answer since the deficiency vanishes at every power of every good
/// system of a sequentially Cohen-Macaulay module.
pub fn is_sequentially_cm(
    module: &ModulePresentation,
    x: Option<&ParameterSystem>,
    options: &ClassifyOptions,
) -> Result<SequentialWitness> {
    let filtration = dimension_filtration(module)?;
    let x = match x {
        Some(x) => x.clone(),
        None => find_good_sop(module, &filtration, &options.search)?,
    };
    let deficiency = Deficiency::new(module, &filtration, &x, MultiplicityRoute::General, &options.multiplicity)?;
    let sq = squares(module.dim());
    let length_sq = deficiency.length(&sq)?;
    let expected_sq = deficiency.expected(&sq);
    Ok(SequentialWitness {
        sequentially_cm: length_sq as i64 == expected_sq,
        filtration,
        deficiency,
        length_sq,
        expected_sq,
    })
}

/// `0 :_M a = 0 :_M a²` and `M/a²M` Cohen-Macaulay of dimension `d − 1`.
pub fn approximating_element_holds(
    module: &ModulePresentation,
    a: &Polynomial,
    options: &ClassifyOptions,
) -> Result<bool> {
    let i = module.ideal();
    let square = a.pow(2);
    if !i.colon_element(a)?.same_ideal(&i.colon_element(&square)?)? {
        return Ok(false);
    }
    let quotient = i.with_generators(std::slice::from_ref(&square))?;
    if quotient.krull_dimension()? != Some(module.dim() - 1) {
        return Ok(false);
    }
    ideal_is_cohen_macaulay(&quotient, options)
}

/// Approximate Cohen-Macaulayness. With `a`, tests `a` directly; without,
/// decides by the shape of the dimension filtration of a sequentially
/// Cohen-Macaulay, non-Cohen-Macaulay module.
pub fn is_approximately_cm(
    module: &ModulePresentation,
    a: Option<&Polynomial>,
    options: &ClassifyOptions,
) -> Result<bool> {
    let witness = is_sequentially_cm(module, None, options)?;
    if witness.cohen_macaulay() {
        return Ok(false);
    }
    match a {
        Some(a) => approximating_element_holds(module, a, options),
        None => Ok(witness.sequentially_cm && witness.has_codimension_one_shape()),
    }
}

/// An element `a` satisfying [`approximating_element_holds`], searched among
/// last entries of good systems of parameters.
pub fn find_approximating_element(
    module: &ModulePresentation,
    filtration: &Filtration,
    options: &ClassifyOptions,
) -> Result<Polynomial> {
    let x = find_good_sop_where(module, filtration, &options.search, |x| {
        approximating_element_holds(module, x.elements().last().unwrap(), options)
    })?;
    Ok(x.elements().last().unwrap().clone())
}

/// One stratum of the closed form `Σ_i 2^{d_i} λ_i deg(x_1)⋯deg(x_{d_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumContribution {
    pub dim: usize,
    pub lambda: usize,
    pub degree_product: usize,
    pub contribution: usize,
}

/// Both sides of the Stanley-Reisner length identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrLedger {
    pub length_sq: usize,
    pub closed_form: usize,
    pub strata: Vec<StratumContribution>,
    pub agrees: bool,
}

/// Compares `ℓ(k[Δ]/(x_1², …, x_d²))` with the closed form from the facet
/// counts and the degrees of a good homogeneous system `x`.
pub fn sr_fast_check(module: &ModulePresentation, x: &ParameterSystem) -> Result<SrLedger> {
    let complex = module
        .complex()
        .ok_or_else(|| Error::InconsistentComponents("the module is not a Stanley-Reisner ring".into()))?;
    if let Some(k) = x.elements().iter().position(|e| !e.is_homogeneous()) {
        return Err(Error::NotHomogeneous(k));
    }
    let filtration = dimension_filtration(module)?;
    if let Some(index) = is_good_sop(module, &filtration, x)?.violated {
        return Err(Error::NotGood { index });
    }
    let degrees = x.degrees();
    let strata: Vec<StratumContribution> = lambda_profile(complex)
        .into_iter()
        .map(|(face_dim, lambda)| {
            let dim = face_dim + 1;
            let degree_product: usize = degrees[..dim].iter().map(|&d| d as usize).product();
            StratumContribution { dim, lambda, degree_product, contribution: (1usize << dim) * lambda * degree_product }
        })
        .collect();
    let closed_form = strata.iter().map(|s| s.contribution).sum();
    let length_sq = module.ideal().with_generators(&x.powers(&squares(x.len())))?.local_length()?;
    Ok(SrLedger { length_sq, closed_form, strata, agrees: length_sq == closed_form })
}

/// Where the classified module came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescriptor {
    pub kind: InputKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub characteristic: u32,
    pub variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<SimplicialComplex>,
    pub ideal: Vec<String>,
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    Complex,
    Presentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub ideal: Vec<String>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationEntry {
    pub dim: Option<usize>,
    pub ideal: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Verdicts {
    pub cm: Option<bool>,
    pub seq_cm: Option<bool>,
    pub approx_cm: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: Vec<u32>,
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Unknown,
}

/// Everything computed for one module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub input: InputDescriptor,
    pub dim: usize,
    pub filtration: Vec<FiltrationEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_profile: Option<LambdaProfile>,
    pub good_sop: Vec<String>,
    pub sop_degrees: Vec<u32>,
    pub multiplicities: Vec<usize>,
    pub length_sq: Option<usize>,
    pub expected_sq: Option<i64>,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sr_fast_path: Option<SrLedger>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx_witness: Option<String>,
    pub dd_certificate: Option<DDCertificate>,
    pub i_table: Vec<TableEntry>,
    pub status: Status,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

fn ideal_strings(ideal: &Ideal) -> Vec<String> {
    match ideal.groebner_basis() {
        Ok(gb) => gb.iter().map(ToString::to_string).collect(),
        Err(_) => ideal.generators().iter().map(ToString::to_string).collect(),
    }
}

/// Describes `module`; `label` names the source file or catalog entry.
pub fn describe_input(module: &ModulePresentation, label: Option<String>) -> InputDescriptor {
    let ring = module.ring();
    InputDescriptor {
        kind: if module.complex().is_some() { InputKind::Complex } else { InputKind::Presentation },
        label,
        characteristic: ring.field().characteristic(),
        variables: ring.names().to_vec(),
        complex: module.complex().cloned(),
        ideal: ideal_strings(module.ideal()),
        components: module
            .components()
            .iter()
            .map(|(c, d)| ComponentEntry { ideal: ideal_strings(c), dim: *d })
            .collect(),
    }
}

struct Clock {
    enabled: bool,
    start: Instant,
    entries: BTreeMap<String, f64>,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if self.enabled {
            let now = Instant::now();
            self.entries.insert(name.to_string(), (now - self.start).as_secs_f64() * 1000.0);
            self.start = now;
        }
    }
}

/// Classifies `module`. Mathematical failures (search exhaustion, degree
/// caps, stabilization) yield status `unknown` with all verdicts null.
pub fn classify_report(
    module: &ModulePresentation,
    label: Option<String>,
    sop: Option<&ParameterSystem>,
    options: &ClassifyOptions,
) -> ClassificationReport {
    let mut report = ClassificationReport {
        input: describe_input(module, label),
        dim: module.dim(),
        filtration: Vec::new(),
        lambda_profile: module.complex().map(lambda_profile),
        good_sop: Vec::new(),
        sop_degrees: Vec::new(),
        multiplicities: Vec::new(),
        length_sq: None,
        expected_sq: None,
        verdicts: Verdicts::default(),
        sr_fast_path: None,
        approx_witness: None,
        dd_certificate: None,
        i_table: Vec::new(),
        status: Status::Ok,
        notes: Vec::new(),
        timings_ms: None,
    };
    let mut clock = Clock { enabled: options.timings, start: Instant::now(), entries: BTreeMap::new() };
    if let Err(e) = fill_report(module, sop, options, &mut report, &mut clock) {
        report.status = Status::Unknown;
        report.verdicts = Verdicts::default();
        report.notes.push(format!("undecided: {e}"));
    }
    if options.timings {
        report.timings_ms = Some(clock.entries);
    }
    report
}

fn fill_report(
    module: &ModulePresentation,
    sop: Option<&ParameterSystem>,
    options: &ClassifyOptions,
    report: &mut ClassificationReport,
    clock: &mut Clock,
) -> Result<()> {
    let witness = is_sequentially_cm(module, sop, options)?;
    clock.lap("sequentially_cm");
    let x = witness.sop().clone();
    report.filtration = witness
        .filtration
        .steps()
        .iter()
        .map(|s| FiltrationEntry { dim: s.dim, ideal: ideal_strings(&s.ideal) })
        .collect();
    report.good_sop = x.to_strings();
    report.sop_degrees = x.degrees();
    report.multiplicities = witness.deficiency.multiplicities().to_vec();
    report.length_sq = Some(witness.length_sq);
    report.expected_sq = Some(witness.expected_sq);
    let cm = witness.cohen_macaulay();
    let seq_cm = witness.sequentially_cm;
    if cm && !seq_cm {
        return Err(Error::InconsistentComponents("Cohen-Macaulay but not sequentially Cohen-Macaulay".into()));
    }
    let approx_cm = seq_cm && !cm && witness.has_codimension_one_shape();
    report.verdicts = Verdicts { cm: Some(cm), seq_cm: Some(seq_cm), approx_cm: Some(approx_cm) };
    if module.complex().is_some() {
        if x.is_homogeneous() {
            let ledger = sr_fast_check(module, &x)?;
            clock.lap("sr_fast_path");
            if ledger.agrees != seq_cm {
                report.sr_fast_path = Some(ledger);
                return Err(Error::InconsistentComponents("closed form and filtration route disagree".into()));
            }
            report.sr_fast_path = Some(ledger);
        } else {
            report.notes.push("closed form skipped: the system of parameters is not homogeneous".into());
        }
    }
    if module.is_unmixed() && cm != seq_cm {
        report.notes.push("unmixed module with differing verdicts".into());
    }
    if options.approx_witness && approx_cm {
        match find_approximating_element(module, &witness.filtration, options) {
            Ok(a) => report.approx_witness = Some(a.to_string()),
            Err(e) => report.notes.push(format!("no approximating element found: {e}")),
        }
        clock.lap("approx_witness");
    }
    if let Some(bound) = options.dd_bound {
        report.dd_certificate = Some(is_dd_sequence_bounded(module, &x, bound, 3, &options.multiplicity)?);
        clock.lap("dd_certificate");
    }
    if let Some(grid) = options.i_table_grid {
        report.i_table =
            witness.deficiency.table(grid)?.into_iter().map(|(n, value)| TableEntry { n, value }).collect();
        clock.lap("i_table");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex_ring;

    fn sr(n: usize, facets: Vec<Vec<usize>>) -> ModulePresentation {
        let c = SimplicialComplex::new(n, facets).unwrap();
        let r = complex_ring(&c, 32003, 40).unwrap();
        ModulePresentation::from_complex(&c, &r).unwrap()
    }

    #[test]
    fn edge_and_point() {
        let m = sr(3, vec![vec![1, 2], vec![3]]);
        let opts = ClassifyOptions::default();
        let report = classify_report(&m, None, None, &opts);
        assert_eq!(report.status, Status::Ok);
        assert_eq!(report.verdicts, Verdicts { cm: Some(false), seq_cm: Some(true), approx_cm: Some(true) });
        assert_eq!(report.length_sq, Some(6));
        assert!(report.sr_fast_path.unwrap().agrees);
        assert!(!is_cohen_macaulay(&m, None, &opts).unwrap());
        assert!(is_approximately_cm(&m, None, &opts).unwrap());
    }

    #[test]
    fn two_disjoint_edges() {
        let m = sr(4, vec![vec![1, 4], vec![2, 3]]);
        let opts = ClassifyOptions { i_table_grid: Some(2), ..ClassifyOptions::default() };
        let report = classify_report(&m, None, None, &opts);
        assert_eq!(report.verdicts.seq_cm, Some(false));
        assert_eq!(report.verdicts.cm, Some(false));
        assert!(report.i_table.iter().all(|e| e.value == 1));
        let json = serde_json::to_value(&report).unwrap();
        for key in [
            "input",
            "dim",
            "filtration",
            "good_sop",
            "length_sq",
            "expected_sq",
            "verdicts",
            "dd_certificate",
            "i_table",
            "status",
            "notes",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn exhausted_search_is_unknown() {
        let m = sr(4, vec![vec![1, 4], vec![2, 3]]);
        let opts = ClassifyOptions {
            search: SearchConfig { node_budget: 1, ..SearchConfig::default() },
            ..ClassifyOptions::default()
        };
        let report = classify_report(&m, None, None, &opts);
        assert_eq!(report.status, Status::Unknown);
        assert_eq!(report.verdicts, Verdicts::default());
    }
}

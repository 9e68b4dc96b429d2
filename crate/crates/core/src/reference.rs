//! Catalog of reference instances with their published systems of
//! parameters and the exact values to reproduce.

use serde::Serialize;

use crate::classify::{is_sequentially_cm, ClassifyOptions};
use crate::complex::{complex_ring, SimplicialComplex};
use crate::filtration::{
    dimension_filtration, grid_points, Deficiency, ModulePresentation, MultiplicityRoute, ParameterSystem,
};
use crate::parse::{parse_ideal, parse_polynomial, ParseOptions};
use crate::ring::DEFAULT_DEGREE_CAP;
use crate::sequences::{colon_multiplicities, dd_polynomial_fit, evaluate_length_law};
use crate::{Ideal, Result};

/// How a reference module is built.
#[derive(Debug, Clone, Copy)]
pub enum ReferenceSource {
    Complex {
        vertices: usize,
        facets: &'static [&'static [usize]],
    },
    Presentation {
        variables: &'static str,
        weights: Option<&'static str>,
        components: &'static [(&'static [&'static str], usize)],
    },
}

/// A module together with the system of parameters used for its values.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceInstance {
    pub id: &'static str,
    pub title: &'static str,
    pub source: ReferenceSource,
    pub sop: &'static [&'static str],
}

pub const CATALOG: &[ReferenceInstance] = &[
    ReferenceInstance {
        id: "ex42ii",
        title: "boundary of a triangle, R/(X1X2X3)",
        source: ReferenceSource::Complex { vertices: 3, facets: &[&[1, 2], &[1, 3], &[2, 3]] },
        sop: &["X1+X2", "X1+X3"],
    },
    ReferenceInstance {
        id: "ex42iii",
        title: "two edges sharing a vertex, R/(X2X3)",
        source: ReferenceSource::Complex { vertices: 3, facets: &[&[1, 2], &[1, 3]] },
        sop: &["X1", "X2+X3"],
    },
    ReferenceInstance {
        id: "ex42iv",
        title: "three points, R/(X1X2,X2X3,X1X3)",
        source: ReferenceSource::Complex { vertices: 3, facets: &[&[1], &[2], &[3]] },
        sop: &["X1+X2+X3"],
    },
    ReferenceInstance {
        id: "ex42v",
        title: "an edge and a point, R/(X1X3,X2X3)",
        source: ReferenceSource::Complex { vertices: 3, facets: &[&[1, 2], &[3]] },
        sop: &["X2+X3", "X1"],
    },
    ReferenceInstance {
        id: "ex43",
        title: "two disjoint edges, R/(X1X2,X1X3,X2X4,X3X4)",
        source: ReferenceSource::Complex { vertices: 4, facets: &[&[1, 4], &[2, 3]] },
        sop: &["X1+X2", "X3+X4"],
    },
    ReferenceInstance {
        id: "ex43b",
        title: "a triangle with a cone of edges, R/(X1X2X4,X1X3X4,X2X3X4)",
        source: ReferenceSource::Complex { vertices: 4, facets: &[&[1, 2, 3], &[1, 4], &[2, 4], &[3, 4]] },
        sop: &["X3+X4", "X1+X2+X3", "X1*X2"],
    },
    ReferenceInstance {
        id: "ex44",
        title: "two triangles sharing a vertex, R/(X2,X3)∩(X4,X5)",
        source: ReferenceSource::Complex { vertices: 5, facets: &[&[1, 2, 3], &[1, 4, 5]] },
        sop: &["X1", "X2+X4", "X3+X5"],
    },
    ReferenceInstance {
        id: "s3-1",
        title: "P∩Q with P the monomial curve ideal and Q = (y^2,z,w), weights 4,5,6,7",
        source: ReferenceSource::Presentation {
            variables: "x,y,z,w",
            weights: Some("4,5,6,7"),
            components: &[(&["x*w-y*z", "x^3-z^2", "w^2-x*y^2", "z*w-x^2*y"], 2), (&["y^2", "z", "w"], 1)],
        },
        sop: &["x+y+z+w", "w"],
    },
    ReferenceInstance {
        id: "s3-2",
        title: "(x,w)∩(y,z)∩(x,y^2,z)",
        source: ReferenceSource::Presentation {
            variables: "x,y,z,w",
            weights: None,
            components: &[(&["x", "w"], 2), (&["y", "z"], 2), (&["x", "y^2", "z"], 1)],
        },
        sop: &["z+w", "x+y"],
    },
];

pub fn find(id: &str) -> Option<&'static ReferenceInstance> {
    CATALOG.iter().find(|r| r.id == id)
}

impl ReferenceInstance {
    pub fn complex(&self) -> Option<SimplicialComplex> {
        match self.source {
            ReferenceSource::Complex { vertices, facets } => {
                Some(SimplicialComplex::new(vertices, facets.iter().map(|f| f.to_vec()).collect()).unwrap())
            }
            ReferenceSource::Presentation { .. } => None,
        }
    }

    /// The module over `F_p`.
    pub fn module(&self, characteristic: u32) -> Result<ModulePresentation> {
        match self.source {
            ReferenceSource::Complex { .. } => {
                let c = self.complex().unwrap();
                let ring = complex_ring(&c, characteristic, DEFAULT_DEGREE_CAP)?;
                ModulePresentation::from_complex(&c, &ring)
            }
            ReferenceSource::Presentation { variables, weights, components } => {
                let mut header = format!("vars: {variables}\nchar: {characteristic}\n");
                if let Some(w) = weights {
                    header.push_str(&format!("weights: {w}\n"));
                }
                let opts = ParseOptions::default();
                let ring = parse_ideal(&header, &opts)?.ring().clone();
                let mut parts = Vec::new();
                for (gens, dim) in components {
                    let polys = gens.iter().map(|g| parse_polynomial(&ring, g)).collect::<Result<Vec<_>>>()?;
                    parts.push((Ideal::new(&ring, polys)?, *dim));
                }
                let ideal = Ideal::intersect_all(&ring, parts.iter().map(|(c, _)| c))?;
                ModulePresentation::new(ideal, parts)
            }
        }
    }

    /// The published system of parameters in the module's ring.
    pub fn parameters(&self, module: &ModulePresentation) -> Result<ParameterSystem> {
        Ok(ParameterSystem::new(self.sop.iter().map(|s| parse_polynomial(module.ring(), s)).collect::<Result<_>>()?))
    }
}

/// One line of the reference table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub id: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

fn row(id: &str, check: &str, expected: String, actual: Result<String>) -> ReferenceRow {
    let actual = actual.unwrap_or_else(|e| format!("error: {e}"));
    ReferenceRow { id: id.into(), check: check.into(), pass: expected == actual, expected, actual }
}

fn verdict_string(cm: bool, seq_cm: bool, approx_cm: bool) -> String {
    format!("cm={cm} seq_cm={seq_cm} approx_cm={approx_cm}")
}

fn verdicts(module: &ModulePresentation, options: &ClassifyOptions) -> Result<String> {
    let w = is_sequentially_cm(module, None, options)?;
    let cm = w.cohen_macaulay();
    Ok(verdict_string(cm, w.sequentially_cm, w.sequentially_cm && !cm && w.has_codimension_one_shape()))
}

fn length_at_squares(instance: &ReferenceInstance, characteristic: u32) -> Result<String> {
    let module = instance.module(characteristic)?;
    let x = instance.parameters(&module)?;
    Ok(module.ideal().with_generators(&x.powers(&vec![2; x.len()]))?.local_length()?.to_string())
}

fn table_string(values: &[(Vec<u32>, i64)]) -> String {
    values.iter().map(|(n, v)| format!("{n:?}:{v}")).collect::<Vec<_>>().join(" ")
}

fn deficiency_table(
    instance: &ReferenceInstance,
    characteristic: u32,
    grid: u32,
    options: &ClassifyOptions,
) -> Result<String> {
    let module = instance.module(characteristic)?;
    let x = instance.parameters(&module)?;
    let filtration = dimension_filtration(&module)?;
    let d = Deficiency::new(&module, &filtration, &x, MultiplicityRoute::General, &options.multiplicity)?;
    Ok(table_string(&d.table(grid)?))
}

fn length_law(instance: &ReferenceInstance, characteristic: u32, law: &[i64]) -> Result<String> {
    let module = instance.module(characteristic)?;
    let x = instance.parameters(&module)?;
    let mismatches: Vec<String> = grid_points(x.len(), 3)
        .into_iter()
        .map(|n| Ok((n.clone(), module.ideal().with_generators(&x.powers(&n))?.local_length()? as i64)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(n, l)| *l != evaluate_length_law(law, n))
        .map(|(n, l)| format!("{n:?}:{l}"))
        .collect();
    Ok(if mismatches.is_empty() { "exact on {1,2,3}^d".into() } else { mismatches.join(" ") })
}

fn fitted_coefficients(instance: &ReferenceInstance, characteristic: u32, options: &ClassifyOptions) -> Result<String> {
    let module = instance.module(characteristic)?;
    let x = instance.parameters(&module)?;
    let fit = dd_polynomial_fit(&module, &x, 3)?;
    let formula = colon_multiplicities(&module, &x, &options.multiplicity)?;
    Ok(format!("fit={:?} exact={} colon={formula:?}", fit.coefficients.clone().unwrap_or_default(), fit.exact()))
}

fn expected_table(d: usize, grid: u32, f: impl Fn(&[u32]) -> i64) -> String {
    table_string(&grid_points(d, grid).into_iter().map(|n| (n.clone(), f(&n))).collect::<Vec<_>>())
}

/// Runs every reference check, optionally restricted to one id.
pub fn reference_checks(only: Option<&str>, characteristic: u32, options: &ClassifyOptions) -> Vec<ReferenceRow> {
    let mut rows = Vec::new();
    let wanted = |id: &str| only.is_none_or(|o| o == id);
    let inst = |id: &str| find(id).unwrap();
    let verdict_row = |id: &str, expected: String| {
        row(id, "verdicts", expected, inst(id).module(characteristic).and_then(|m| verdicts(&m, options)))
    };
    for (id, len) in [("ex42ii", 12), ("ex42iii", 8), ("ex42v", 6), ("ex43", 9), ("ex43b", 28)] {
        if wanted(id) {
            rows.push(row(id, "length at squares", len.to_string(), length_at_squares(inst(id), characteristic)));
        }
    }
    for (id, cm, seq, approx) in [
        ("ex42ii", true, true, false),
        ("ex42iii", true, true, false),
        ("ex42iv", true, true, false),
        ("ex42v", false, true, true),
        ("ex43", false, false, false),
        ("ex43b", false, true, true),
        ("ex44", false, false, false),
        ("s3-1", false, false, false),
        ("s3-2", false, false, false),
    ] {
        if wanted(id) {
            rows.push(verdict_row(id, verdict_string(cm, seq, approx)));
        }
    }
    if wanted("ex43-law") || wanted("ex43") {
        rows.push(row(
            "ex43-law",
            "length law 2n1n2+1",
            "exact on {1,2,3}^d".into(),
            length_law(inst("ex43"), characteristic, &[1, 0, 2]),
        ));
        rows.push(row(
            "ex43-law",
            "fitted coefficients",
            "fit=[1, 0, 2] exact=true colon=[1, 0, 2]".into(),
            fitted_coefficients(inst("ex43"), characteristic, options),
        ));
        rows.push(row(
            "ex43-law",
            "deficiency table",
            expected_table(2, 3, |_| 1),
            deficiency_table(inst("ex43"), characteristic, 3, options),
        ));
    }
    if wanted("ex44") {
        rows.push(row(
            "ex44",
            "length law 2n1n2n3+n1",
            "exact on {1,2,3}^d".into(),
            length_law(inst("ex44"), characteristic, &[0, 1, 0, 2]),
        ));
        rows.push(row(
            "ex44",
            "fitted coefficients",
            "fit=[0, 1, 0, 2] exact=true colon=[0, 1, 0, 2]".into(),
            fitted_coefficients(inst("ex44"), characteristic, options),
        ));
    }
    if wanted("s3-1") {
        rows.push(row(
            "s3-1",
            "deficiency table",
            expected_table(2, 2, |n| if n == [1, 1] { 0 } else { 1 }),
            deficiency_table(inst("s3-1"), characteristic, 2, options),
        ));
    }
    if wanted("s3-2") {
        rows.push(row(
            "s3-2",
            "deficiency table",
            expected_table(2, 3, |n| if n[1] == 1 { 0 } else { 1 }),
            deficiency_table(inst("s3-2"), characteristic, 3, options),
        ));
    }
    rows
}

//! Loading complexes, presentations and parameter systems from files.

use std::path::Path;

use seqcm::complex::{complex_ring, SimplicialComplex};
use seqcm::filtration::{ModulePresentation, ParameterSystem};
use seqcm::parse::{parse_polynomial, read_presentation_file, ParseOptions};

use crate::RunConfig;

/// A complex JSON file (recognized by a leading `{`) or a presentation file.
pub fn load_module(path: &Path, config: &RunConfig) -> Result<ModulePresentation, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let located = |e: seqcm::Error| format!("{}: {e}", path.display());
    if text.trim_start().starts_with('{') {
        let complex = SimplicialComplex::from_json(&text, config.allow_ghost_vertices).map_err(located)?;
        let ring = complex_ring(&complex, config.prime_or_default(), config.degree_cap).map_err(located)?;
        ModulePresentation::from_complex(&complex, &ring).map_err(located)
    } else {
        let opts = ParseOptions { characteristic: config.prime, degree_cap: Some(config.degree_cap) };
        let source = read_presentation_file(path, &opts).map_err(|e| e.to_string())?;
        ModulePresentation::from_source(source).map_err(located)
    }
}

/// One polynomial per line; blank lines and `#` comments are skipped.
pub fn load_sop(path: &Path, module: &ModulePresentation) -> Result<ParameterSystem, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut elements = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = parse_polynomial(module.ring(), line).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?;
        elements.push(f);
    }
    Ok(ParameterSystem::new(elements))
}

//! Classification of all small complexes with a content-addressed cache.

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use seqcm::classify::{classify_report, ClassificationReport, Status};
use seqcm::complex::{complex_ring, enumerate_complexes, enumerate_complexes_up_to_isomorphism, SimplicialComplex};
use seqcm::filtration::ModulePresentation;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::RunConfig;

#[derive(Debug, Serialize)]
pub struct SurveySummary {
    pub vertices: usize,
    pub up_to_isomorphism: bool,
    pub total: usize,
    pub cohen_macaulay: usize,
    pub sequentially_cm: usize,
    pub not_sequentially_cm: usize,
    pub approximately_cm: usize,
    pub unknown: usize,
    pub cache_dir: PathBuf,
    pub cache_hits: usize,
    pub non_sequentially_cm_complexes: Vec<SimplicialComplex>,
    pub unknown_complexes: Vec<SimplicialComplex>,
    pub notes: Vec<String>,
}

/// Every field of the configuration that can change a report.
#[derive(Serialize)]
struct CacheKey<'a> {
    version: &'static str,
    complex: &'a SimplicialComplex,
    prime: u32,
    degree_cap: u32,
    window_budget: u32,
    box_limit: u32,
    seed: u64,
}

fn cache_path(dir: &Path, complex: &SimplicialComplex, config: &RunConfig) -> PathBuf {
    let key = CacheKey {
        version: env!("CARGO_PKG_VERSION"),
        complex,
        prime: config.prime_or_default(),
        degree_cap: config.degree_cap,
        window_budget: config.window_budget,
        box_limit: config.box_limit,
        seed: config.seed,
    };
    let digest = Sha256::digest(serde_json::to_vec(&key).unwrap());
    dir.join(format!("{}.json", hex::encode(digest)))
}

fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn classify_complex(complex: &SimplicialComplex, config: &RunConfig) -> ClassificationReport {
    let module = complex_ring(complex, config.prime_or_default(), config.degree_cap)
        .and_then(|ring| ModulePresentation::from_complex(complex, &ring));
    match module {
        Ok(m) => classify_report(&m, None, None, &config.options()),
        Err(e) => panic!("enumerated complex rejected: {e}"),
    }
}

/// Returns the report and whether it came from the cache.
fn report_for(
    complex: &SimplicialComplex,
    dir: &Path,
    config: &RunConfig,
) -> Result<(ClassificationReport, bool), String> {
    let path = cache_path(dir, complex, config);
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(report) = serde_json::from_slice::<ClassificationReport>(&bytes) {
            return Ok((report, true));
        }
    }
    let report = classify_complex(complex, config);
    let mut bytes = serde_json::to_vec_pretty(&report).unwrap();
    bytes.push(b'\n');
    write_atomically(&path, &bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((report, false))
}

pub fn default_cache_dir() -> PathBuf {
    std::env::temp_dir().join("seqcm-cache")
}

pub fn run(n: usize, up_to_iso: bool, config: &RunConfig) -> Result<SurveySummary, String> {
    let dir = config.cache.clone().unwrap_or_else(default_cache_dir);
    std::fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let complexes = if up_to_iso {
        enumerate_complexes_up_to_isomorphism(n, config.allow_ghost_vertices)
    } else {
        enumerate_complexes(n, config.allow_ghost_vertices)
    };
    let results = complexes
        .par_iter()
        .map(|c| report_for(c, &dir, config).map(|(r, hit)| (c.clone(), r, hit)))
        .collect::<Result<Vec<_>, String>>()?;
    let mut summary = SurveySummary {
        vertices: n,
        up_to_isomorphism: up_to_iso,
        total: results.len(),
        cohen_macaulay: 0,
        sequentially_cm: 0,
        not_sequentially_cm: 0,
        approximately_cm: 0,
        unknown: 0,
        cache_dir: dir,
        cache_hits: 0,
        non_sequentially_cm_complexes: Vec::new(),
        unknown_complexes: Vec::new(),
        notes: Vec::new(),
    };
    if up_to_iso {
        summary
            .notes
            .push("classes are complexes up to vertex relabeling; ring isomorphism is not tested separately".into());
    }
    for (complex, report, hit) in results {
        summary.cache_hits += hit as usize;
        if report.status == Status::Unknown {
            summary.unknown += 1;
            summary.unknown_complexes.push(complex);
            continue;
        }
        let v = report.verdicts;
        summary.cohen_macaulay += (v.cm == Some(true)) as usize;
        summary.approximately_cm += (v.approx_cm == Some(true)) as usize;
        if v.seq_cm == Some(true) {
            summary.sequentially_cm += 1;
        } else {
            summary.not_sequentially_cm += 1;
            summary.non_sequentially_cm_complexes.push(complex);
        }
    }
    Ok(summary)
}

//! Machine-readable reports for the analysis pipeline. All reports are
//! serde structs carrying `schema: 1`; floating point numbers are rounded
//! to 12 significant digits before serialization so output is
//! deterministic byte for byte.

use crate::assoc::{self, QuasiCliqueReport};
use crate::error::{input_err, Result};
use crate::families::{hypergraph_from_cover, intersection_graph, is_linear_uniform};
use crate::forbidden::{
    certify_line, scan_forbidden_hoffman, verify_certificate, CertifyOutcome, ForbiddenHit,
    PartTag,
};
use crate::graph::Graph;
use crate::hoffman::HoffmanGraph;
use crate::spectral::{spectrum, SymMatrix, DEFAULT_GROUP_TOL};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Default cap on the number of vertices handed to the dense eigensolver
/// inside `analyze`; above it the spectrum section reports `skipped`.
pub const DEFAULT_SPECTRUM_BUDGET: usize = 1000;

/// Rounds to 12 significant digits, for stable report output.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumOut {
    /// (eigenvalue, multiplicity) pairs, descending.
    pub pairs: Vec<(f64, usize)>,
    pub lambda_min: f64,
}

fn spectrum_out(g: &Graph) -> Result<SpectrumOut> {
    let s = spectrum(g, DEFAULT_GROUP_TOL)?;
    Ok(SpectrumOut {
        pairs: s.pairs.iter().map(|&(v, m)| (sig12(v), m)).collect(),
        lambda_min: sig12(s.lambda_min()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub schema: u32,
    pub n: usize,
    pub edge_count: usize,
    pub spectrum: SpectrumOut,
}

pub fn spectrum_report(g: &Graph) -> Result<SpectrumReport> {
    Ok(SpectrumReport {
        schema: SCHEMA_VERSION,
        n: g.n(),
        edge_count: g.edge_count(),
        spectrum: spectrum_out(g)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CospectralReport {
    pub schema: u32,
    pub cospectral: bool,
    /// Largest absolute difference between sorted eigenvalue lists.
    pub max_diff: f64,
}

pub fn cospectral_report(g1: &Graph, g2: &Graph, tol: f64) -> Result<CospectralReport> {
    if g1.n() != g2.n() {
        return input_err("cospectrality comparison requires equal vertex counts");
    }
    let e1 = SymMatrix::adjacency(g1).eigenvalues()?;
    let e2 = SymMatrix::adjacency(g2).eigenvalues()?;
    let max_diff = e1
        .iter()
        .zip(&e2)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    Ok(CospectralReport {
        schema: SCHEMA_VERSION,
        cospectral: max_diff <= tol,
        max_diff: sig12(max_diff),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateOut {
    pub added_fats: Vec<Vec<usize>>,
    pub parts: Vec<Vec<usize>>,
    pub part_tags: Vec<PartTag>,
    /// Independent recheck embedded in the report.
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub schema: u32,
    pub t: usize,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub forbidden_hits: Vec<ForbiddenHit>,
}

pub fn certify_report(h: &HoffmanGraph, t: usize) -> Result<CertifyReport> {
    match certify_line(h, t)? {
        CertifyOutcome::Certified(cert) => {
            let verified = verify_certificate(h, &cert, t)?.ok;
            Ok(CertifyReport {
                schema: SCHEMA_VERSION,
                t,
                certified: true,
                certificate: Some(CertificateOut {
                    added_fats: cert.added_fats.iter().map(|f| f.members().to_vec()).collect(),
                    parts: cert.parts.parts.iter().map(|p| p.members().to_vec()).collect(),
                    part_tags: cert.part_tags.clone(),
                    verified,
                }),
                reasons: Vec::new(),
                forbidden_hits: Vec::new(),
            })
        }
        CertifyOutcome::Failed(f) => Ok(CertifyReport {
            schema: SCHEMA_VERSION,
            t,
            certified: false,
            certificate: None,
            reasons: f.reasons,
            forbidden_hits: f.hits,
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlexBoundReport {
    pub schema: u32,
    pub n: usize,
    pub degree: usize,
    pub p: usize,
    pub theta2: f64,
    /// The spectral upper bound on the order of a p-plex.
    pub bound: f64,
    /// Exhaustive maximum p-plex order, when the graph is small enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_max_plex: Option<usize>,
}

pub fn plexbound_report(g: &Graph, p: usize) -> Result<PlexBoundReport> {
    let Some(degree) = g.is_regular() else {
        return input_err("the plex bound needs a regular graph");
    };
    let eigs = SymMatrix::adjacency(g).eigenvalues()?;
    if eigs.len() < 2 {
        return input_err("the plex bound needs at least two vertices");
    }
    let theta2 = eigs[1];
    let bound = crate::spectral::plex_bound(g.n(), degree, theta2, p)?;
    let exact_max_plex = g.max_plex_order(p).ok();
    Ok(PlexBoundReport {
        schema: SCHEMA_VERSION,
        n: g.n(),
        degree,
        p,
        theta2: sig12(theta2),
        bound: sig12(bound),
        exact_max_plex,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AssocStats {
    pub clique_count: usize,
    pub class_count: usize,
    pub min_quasi_clique_size: usize,
    pub max_quasi_clique_size: usize,
    pub disagreement_count: usize,
    pub conditions: QuasiCliqueReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypergraphOut {
    pub extracted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_graph_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub n: usize,
    pub edge_count: usize,
    pub t: usize,
    pub m: usize,
    pub clique_size_threshold: usize,
    /// Adjacency spectrum, or omitted with `spectrum_skipped: true` when
    /// the graph exceeds the eigensolver budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumOut>,
    pub spectrum_skipped: bool,
    /// lambda_min(G) >= -t-1 within tolerance (absent when skipped).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_min_ok: Option<bool>,
    pub assoc: AssocStats,
    /// Minimum fat degree of the associated Hoffman graph.
    pub min_fat_degree: usize,
    pub t_plus_1_fat: bool,
    pub forbidden_hits: Vec<ForbiddenHit>,
    pub certify: CertifyReport,
    pub hypergraph: HypergraphOut,
}

impl AnalysisReport {
    /// True when the analysis is a full positive: no forbidden structure
    /// and a verified certificate.
    pub fn positive(&self) -> bool {
        self.forbidden_hits.is_empty()
            && self.certify.certified
            && self
                .certify
                .certificate
                .as_ref()
                .is_some_and(|c| c.verified)
            && self.lambda_min_ok != Some(false)
    }
}

/// Full analysis pipeline: spectrum (within budget), associated Hoffman
/// graph, fatness, forbidden scan, line certificate, and hypergraph
/// extraction when every slim vertex is covered by exactly t+1 fats.
pub fn analyze(
    g: &Graph,
    t: usize,
    m: usize,
    n: usize,
    spectrum_budget: usize,
) -> Result<AnalysisReport> {
    if t == 0 {
        return input_err("t must be positive");
    }
    let build = assoc::associated_hoffman(g, m, n)?;
    let hof = &build.hoffman;
    let (spectrum, spectrum_skipped, lambda_min_ok) = if g.n() <= spectrum_budget {
        let s = spectrum_out(g)?;
        let ok = s.lambda_min >= -(t as f64) - 1.0 - 1e-8;
        (Some(s), false, Some(ok))
    } else {
        (None, true, None)
    };
    let sizes: Vec<usize> = build.quasi_cliques.iter().map(|q| q.vertices.len()).collect();
    let conditions = assoc::quasi_clique_conditions(g, &build.quasi_cliques, t);
    let assoc_stats = AssocStats {
        clique_count: build.clique_count,
        class_count: build.classes.len(),
        min_quasi_clique_size: sizes.iter().copied().min().unwrap_or(0),
        max_quasi_clique_size: sizes.iter().copied().max().unwrap_or(0),
        disagreement_count: build.disagreements.len(),
        conditions,
    };
    let min_fat_degree = (0..hof.slim_count())
        .map(|x| hof.fat_degree(x))
        .min()
        .unwrap_or(0);
    let forbidden_hits = scan_forbidden_hoffman(hof, t as i64)?;
    // a graph whose associated Hoffman graph is not even t-fat is a
    // negative analysis result, not a malformed input
    let certify = match certify_report(hof, t) {
        Ok(r) => r,
        Err(crate::Error::Input(msg)) => CertifyReport {
            schema: SCHEMA_VERSION,
            t,
            certified: false,
            certificate: None,
            reasons: vec![msg],
            forbidden_hits: Vec::new(),
        },
        Err(e) => return Err(e),
    };
    let hypergraph = if certify.certified {
        match hypergraph_from_cover(hof, t) {
            Ok(hg) => HypergraphOut {
                extracted: true,
                edge_count: Some(hg.edges().len()),
                uniform: Some(t + 1),
                linear: Some(is_linear_uniform(&hg, t + 1)?),
                intersection_graph_matches: Some(&intersection_graph(&hg)? == hof.slim_graph()),
                reason: None,
            },
            Err(e) => HypergraphOut {
                extracted: false,
                edge_count: None,
                uniform: None,
                linear: None,
                intersection_graph_matches: None,
                reason: Some(e.to_string()),
            },
        }
    } else {
        HypergraphOut {
            extracted: false,
            edge_count: None,
            uniform: None,
            linear: None,
            intersection_graph_matches: None,
            reason: Some("no certificate".into()),
        }
    };
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        n: g.n(),
        edge_count: g.edge_count(),
        t,
        m,
        clique_size_threshold: n,
        spectrum,
        spectrum_skipped,
        lambda_min_ok,
        assoc: assoc_stats,
        min_fat_degree,
        t_plus_1_fat: hof.is_t_fat(t + 1),
        forbidden_hits,
        certify,
        hypergraph,
    })
}

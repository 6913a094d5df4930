//! Verification runs: closed forms against the oracle, with identity suites
//! on every solution found.

use std::fmt::Write as _;
use std::time::Instant;

use kvlab_core::families::enumerate_classified;
use kvlab_core::lemmas::{all_passed, lemma_suite};
use kvlab_core::oracle::{compare_sets, solve_all};
use kvlab_core::{
    Comparison, Completeness, ComplexFunction, Family, LemmaCheck, Provenance, Setting, Verdict, DEDUP_TOL,
};
use serde::{Deserialize, Serialize};

use crate::io::{CharacterFile, MorphismFile};
use crate::{Error, Result};

/// Which `z0` to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z0Choice {
    Element(usize),
    /// Every central element, ascending.
    All,
}

impl std::str::FromStr for Z0Choice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Z0Choice::All);
        }
        s.parse().map(Z0Choice::Element).map_err(|_| format!("expected an element index or \"all\", got {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub semigroup: String,
    pub order: usize,
    pub family: Family,
    pub equation: String,
    pub tau_index: Option<usize>,
    pub tau: MorphismFile,
    pub mu_index: Option<usize>,
    pub mu: CharacterFile,
    pub z0: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Both,
    OracleOnly,
    ClassifiedOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub f: ComplexFunction,
    pub origin: Origin,
    pub provenance: Option<Provenance>,
    pub residual: f64,
    pub lemmas: Vec<LemmaCheck>,
    pub lemmas_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: Instance,
    /// Nonzero closed-form solutions.
    pub classified_count: usize,
    /// Nonzero oracle solutions.
    pub oracle_count: usize,
    pub completeness: Completeness,
    pub comparison: Comparison,
    pub verdict: Verdict,
    /// Set when a closed form failed its residual check.
    pub constructor_failure: Option<String>,
    /// Every nonzero solution, oracle order first, then closed forms the
    /// oracle missed.
    pub solutions: Vec<SolutionRecord>,
    pub lemmas_passed: bool,
    pub timing_ms: f64,
}

impl VerificationReport {
    /// Anything other than a confirmed, fully passing instance.
    pub fn is_finding(&self) -> bool {
        self.verdict != Verdict::Confirmed || self.constructor_failure.is_some() || !self.lemmas_passed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_markdown(&self) -> String {
        let i = &self.instance;
        let mut out = String::new();
        let _ = writeln!(out, "## {} ({}) on {}, z0 = {}", i.family, i.equation, i.semigroup, i.z0);
        let _ = writeln!(out);
        let _ = writeln!(out, "| field | value |");
        let _ = writeln!(out, "|---|---|");
        let _ = writeln!(out, "| order | {} |", i.order);
        let _ = writeln!(out, "| tau | {} {:?} ({}) |", i.tau.kind, i.tau.map, index_label(i.tau_index));
        let _ = writeln!(out, "| mu | {} ({}) |", format_exact(&i.mu), index_label(i.mu_index));
        let _ = writeln!(out, "| classified | {} |", self.classified_count);
        let _ = writeln!(out, "| oracle | {} |", self.oracle_count);
        let _ = writeln!(out, "| completeness | {} |", self.completeness);
        let _ = writeln!(out, "| verdict | {} |", self.verdict);
        if let Some(msg) = &self.constructor_failure {
            let _ = writeln!(out, "| constructor failure | {msg} |");
        }
        let _ = writeln!(out, "| lemmas | {} |", if self.lemmas_passed { "all passed" } else { "FAILED" });
        let _ = writeln!(out, "| time | {:.1} ms |", self.timing_ms);

        if !self.solutions.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "| # | f | origin | residual |");
            let _ = writeln!(out, "|---|---|---|---|");
            for (k, s) in self.solutions.iter().enumerate() {
                let origin = match s.origin {
                    Origin::Both => "both",
                    Origin::OracleOnly => "oracle only",
                    Origin::ClassifiedOnly => "classified only",
                };
                let _ = writeln!(out, "| {k} | {} | {origin} | {:.1e} |", format_function(&s.f), s.residual);
            }

            let _ = writeln!(out);
            let header: Vec<String> = (0..self.solutions.len()).map(|k| format!("f{k}")).collect();
            let _ = writeln!(out, "| identity | {} |", header.join(" | "));
            let _ = writeln!(out, "|---|{}", "---|".repeat(header.len()));
            for (row, check) in self.solutions[0].lemmas.iter().enumerate() {
                let cells: Vec<String> = self
                    .solutions
                    .iter()
                    .map(|s| match s.lemmas.get(row) {
                        Some(c) if c.passed => "pass".to_string(),
                        Some(c) => format!("FAIL ({:.1e})", c.deviation),
                        None => "-".to_string(),
                    })
                    .collect();
                let _ = writeln!(out, "| ({}) | {} |", check.id, cells.join(" | "));
            }
        }
        out
    }
}

fn index_label(i: Option<usize>) -> String {
    i.map_or_else(|| "from file".to_string(), |i| format!("index {i}"))
}

fn format_exact(c: &CharacterFile) -> String {
    let parts: Vec<String> = c
        .exact
        .iter()
        .map(|e| match (e.zero, e.order) {
            (true, _) => "0".to_string(),
            (false, 1) => "1".to_string(),
            (false, 2) => "-1".to_string(),
            (false, m) => format!("e({}/{m})", e.exp),
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// Values rounded to six places, imaginary parts only when present.
pub fn format_function(f: &ComplexFunction) -> String {
    let clean = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
    let parts: Vec<String> = f
        .values()
        .iter()
        .map(|v| {
            let (re, im) = (clean(v.re), clean(v.im));
            if im == 0.0 {
                format!("{re:.6}")
            } else {
                format!("{re:.6}{im:+.6}i")
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// Runs one instance: closed forms, oracle, comparison, and the identity
/// suite on every nonzero solution.
pub fn run_verification(
    st: &Setting,
    tau_index: Option<usize>,
    mu_index: Option<usize>,
    family: Family,
    z0: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let eq = st.equation(family, Some(z0))?;

    let (classified, constructor_failure) = match enumerate_classified(st, family, z0, tol) {
        Ok(c) => (c, None),
        Err(e @ kvlab_core::Error::ResidualCheckFailed { .. }) => (Vec::new(), Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let oracle = solve_all(&eq, tol)?;
    let classified_fs: Vec<ComplexFunction> = classified.iter().map(|c| c.f.clone()).collect();
    let comparison = compare_sets(&classified_fs, &oracle.solutions, DEDUP_TOL);

    let mut solutions = Vec::new();
    let mut record = |f: &ComplexFunction, origin, provenance| -> Result<()> {
        let lemmas = lemma_suite(st, f, family, z0, tol)?;
        let lemmas_passed = all_passed(&lemmas);
        let residual = eq.residual(f)?.max_abs;
        solutions.push(SolutionRecord { f: f.clone(), origin, provenance, residual, lemmas, lemmas_passed });
        Ok(())
    };
    for (j, f) in oracle.solutions.iter().enumerate() {
        if f.is_zero(DEDUP_TOL) {
            continue;
        }
        match comparison.matched.iter().find(|(_, o)| *o == j) {
            Some(&(c, _)) => record(f, Origin::Both, Some(classified[c].provenance))?,
            None => record(f, Origin::OracleOnly, None)?,
        }
    }
    for &c in &comparison.classified_only {
        record(&classified[c].f, Origin::ClassifiedOnly, Some(classified[c].provenance))?;
    }
    let lemmas_passed = solutions.iter().all(|s| s.lemmas_passed);

    let instance = Instance {
        semigroup: st.semigroup().name().to_string(),
        order: st.order(),
        family,
        equation: family.equation_number().to_string(),
        tau_index,
        tau: MorphismFile::from(st.tau()),
        mu_index,
        mu: CharacterFile::from(st.mu()),
        z0,
        tol,
    };
    Ok(VerificationReport {
        instance,
        classified_count: classified_fs.iter().filter(|f| !f.is_zero(DEDUP_TOL)).count(),
        oracle_count: oracle.nonzero_count(),
        completeness: oracle.completeness,
        verdict: comparison.verdict,
        comparison,
        constructor_failure,
        solutions,
        lemmas_passed,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// [`run_verification`] at one `z0` or at every central element in
/// ascending order.
pub fn run_verification_sweep(
    st: &Setting,
    tau_index: Option<usize>,
    mu_index: Option<usize>,
    family: Family,
    z0: Z0Choice,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let center = st.semigroup().center();
    if center.is_empty() {
        return Err(Error::EmptyCenter(st.semigroup().name().to_string()));
    }
    let points: Vec<usize> = match z0 {
        Z0Choice::Element(z) => vec![z],
        Z0Choice::All => center.elements.clone(),
    };
    points.into_iter().map(|z| run_verification(st, tau_index, mu_index, family, z, tol)).collect()
}

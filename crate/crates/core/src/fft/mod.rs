//! End-to-end verification of the first and second fundamental theorems for
//! the interior, `SL_r` and conjugation coactions, with `q = 1` baselines.

mod run;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::coact::CoactionKind;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::lifting::ExactnessReport;
use crate::qalgebra::{dimension_of, AlgebraSpec, FreeGenerator};

pub use run::{classical_baseline, classical_baseline_against, verify, verify_conjugation, verify_interior, verify_slr};

pub const DEFAULT_CEILING: u128 = 4000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentParams {
    pub kind: CoactionKind,
    pub dmax: usize,
    /// Extra specialization points, reported but never asserted.
    pub lambdas: Vec<Rational>,
    /// Largest admissible dimension of any graded component that is enumerated.
    pub ceiling: u128,
}

impl ExperimentParams {
    pub fn new(kind: CoactionKind, dmax: usize) -> Self {
        ExperimentParams {
            kind,
            dmax,
            lambdas: Vec::new(),
            ceiling: DEFAULT_CEILING,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.kind.validate()?;
        if self.lambdas.iter().any(|l| l == &Rational::from_integer(0.into())) {
            return Err(Error::ZeroSpecialization);
        }
        Ok(())
    }

    /// Highest `lambda`-degree whose kernel is computed for `slr`.
    pub(crate) fn slr_top_degree(&self) -> usize {
        match self.kind {
            CoactionKind::Slr { r, .. } => (self.dmax / r).max(3),
            _ => 0,
        }
    }

    /// Every graded component the run will enumerate, as `(label, dimension)`.
    pub fn component_sizes(&self) -> Vec<(String, u128)> {
        let mut out = Vec::new();
        let mut push = |label: &str, spec: &AlgebraSpec, d: usize| {
            out.push((format!("{label} degree {d}"), dimension_of(spec, d)));
        };
        match self.kind {
            CoactionKind::Interior { m, n, t } => {
                let carrier = AlgebraSpec::Tensor(
                    Box::new(AlgebraSpec::QuantumMatrix { rows: m, cols: t }),
                    Box::new(AlgebraSpec::QuantumMatrix { rows: t, cols: n }),
                );
                let source = AlgebraSpec::QuantumMatrix { rows: m, cols: n };
                for e in 0..=2 * self.dmax {
                    push("carrier", &carrier, e);
                }
                for d in 0..=self.dmax {
                    push("source", &source, d);
                }
            }
            CoactionKind::Slr { n, r } => {
                let carrier = AlgebraSpec::QuantumMatrix { rows: n, cols: r };
                let free = slr_free_spec(n, r);
                for d in 0..=self.dmax {
                    push("carrier", &carrier, d);
                }
                for k in 0..=self.slr_top_degree() {
                    push("free", &free, k);
                    push("carrier", &carrier, k * r);
                }
            }
            CoactionKind::Conjugation { n } => {
                let carrier = AlgebraSpec::QuantumMatrix { rows: n, cols: n };
                let free = conjugation_free_spec(n);
                for d in 0..=self.dmax {
                    push("carrier", &carrier, d);
                    push("free", &free, d);
                }
            }
        }
        out
    }

    /// Fails with `CeilingExceeded` before any enumeration if a component is too large.
    pub fn check_size(&self) -> Result<()> {
        if let Some((_, dim)) = self
            .component_sizes()
            .into_iter()
            .filter(|(_, dim)| *dim > self.ceiling)
            .max_by_key(|(_, dim)| *dim)
        {
            return Err(Error::CeilingExceeded {
                dim,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}

pub(crate) fn tuple_label(tuple: &[usize]) -> String {
    if tuple.iter().all(|&i| i < 10) {
        format!("L{}", tuple.iter().join(""))
    } else {
        format!("L{}", tuple.iter().join("_"))
    }
}

/// Free algebra on `lambda_I`, `I` a strictly increasing `r`-tuple, each of degree 1.
pub fn slr_free_spec(n: usize, r: usize) -> AlgebraSpec {
    AlgebraSpec::Free {
        generators: (1..=n)
            .combinations(r)
            .map(|t| FreeGenerator::new(tuple_label(&t), 1))
            .collect(),
    }
}

/// Free algebra on `gamma_1, ..., gamma_n` with `deg gamma_i = i`.
pub fn conjugation_free_spec(n: usize) -> AlgebraSpec {
    AlgebraSpec::Free {
        generators: (1..=n).map(|i| FreeGenerator::new(format!("g{i}"), i)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    #[serde(flatten)]
    pub kind: CoactionKind,
    pub dmax: usize,
    pub lambdas: Vec<String>,
    pub ceiling: String,
    pub deformation: String,
}

/// One carrier degree. For interior the source degree is half the carrier
/// degree; for `slr` it is the `lambda`-degree; for conjugation they agree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub d: usize,
    pub source_degree: Option<usize>,
    pub dim_carrier: usize,
    pub dim_coinvariants: Option<usize>,
    pub dim_image: Option<usize>,
    pub dim_source: Option<usize>,
    pub dim_kernel: Option<usize>,
    pub dim_ideal: Option<usize>,
    pub flags: BTreeMap<String, bool>,
    /// Flags that are reported without entering `pass`.
    pub findings: BTreeMap<String, bool>,
    pub lifting: BTreeMap<String, ExactnessReport>,
    pub pass: bool,
}

impl DegreeRecord {
    pub(crate) fn finish(mut self) -> Self {
        self.pass = self.flags.values().all(|&b| b);
        self
    }

    /// The dimension columns compared by baselines.
    pub fn dims(&self) -> [Option<usize>; 6] {
        [
            Some(self.dim_carrier),
            self.dim_coinvariants,
            self.dim_image,
            self.dim_source,
            self.dim_kernel,
            self.dim_ideal,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub params: ParamsDoc,
    pub degrees: Vec<DegreeRecord>,
    pub checks: Vec<Check>,
    pub verdict: String,
    pub wall_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub(crate) fn finish(mut self) -> Self {
        let ok = self.degrees.iter().all(|d| d.pass) && self.checks.iter().all(|c| c.pass);
        self.verdict = if ok { "pass" } else { "fail" }.into();
        self
    }

    pub fn degree(&self, d: usize) -> Option<&DegreeRecord> {
        self.degrees.iter().find(|r| r.d == d)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut s = String::new();
        let p = &self.params;
        let _ = writeln!(s, "# {}\n", self.experiment);
        let _ = writeln!(
            s,
            "params: {}, dmax = {}, deformation = {}, ceiling = {}, lambdas = [{}]\n",
            p.kind,
            p.dmax,
            p.deformation,
            p.ceiling,
            p.lambdas.join(", ")
        );
        let _ = writeln!(
            s,
            "| d | source | carrier | coinvariants | image | source dim | kernel | ideal | lifting | pass |"
        );
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|");
        for r in &self.degrees {
            let lifting = r
                .lifting
                .iter()
                .map(|(name, rep)| {
                    let pts = rep
                        .entries
                        .iter()
                        .map(|e| format!("{}:{}", e.at, if e.exact { "exact" } else { "not exact" }))
                        .join(" ");
                    format!("{name}[{pts}]")
                })
                .join(" ");
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                r.d,
                opt(r.source_degree),
                r.dim_carrier,
                opt(r.dim_coinvariants),
                opt(r.dim_image),
                opt(r.dim_source),
                opt(r.dim_kernel),
                opt(r.dim_ideal),
                lifting,
                if r.pass { "yes" } else { "NO" }
            );
        }
        let failing: Vec<String> = self
            .degrees
            .iter()
            .flat_map(|r| {
                r.flags
                    .iter()
                    .filter(|(_, v)| !**v)
                    .map(move |(k, _)| format!("d={}: {k}", r.d))
            })
            .collect();
        if !failing.is_empty() {
            let _ = writeln!(s, "\nfailed flags: {}", failing.join("; "));
        }
        let findings: Vec<String> = self
            .degrees
            .iter()
            .flat_map(|r| r.findings.iter().map(move |(k, v)| format!("d={}: {k}={v}", r.d)))
            .collect();
        if !findings.is_empty() {
            let _ = writeln!(s, "\nfindings: {}", findings.join("; "));
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\n| check | pass | detail |\n|---|---|---|");
            for c in &self.checks {
                let _ = writeln!(s, "| {} | {} | {} |", c.name, if c.pass { "yes" } else { "NO" }, c.detail);
            }
        }
        let _ = writeln!(s, "\nverdict: **{}**", self.verdict);
        if let Some(ms) = self.wall_ms {
            let _ = writeln!(s, "\nwall time: {ms} ms");
        }
        s
    }
}

/// Partitions of `d` into parts of size at most `n`.
pub fn partition_count(d: usize, n: usize) -> usize {
    let mut ways = vec![0usize; d + 1];
    ways[0] = 1;
    for part in 1..=n.min(d.max(1)) {
        for x in part..=d {
            ways[x] += ways[x - part];
        }
    }
    ways[d]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        assert_eq!(partition_count(4, 2), 3);
        assert_eq!(partition_count(0, 2), 1);
        assert_eq!(partition_count(6, 3), 7);
        assert_eq!(partition_count(5, 1), 1);
    }

    #[test]
    fn guards() {
        let p = ExperimentParams::new(CoactionKind::Interior { m: 9, n: 9, t: 8 }, 6);
        assert!(matches!(p.check_size(), Err(Error::CeilingExceeded { .. })));
        let p = ExperimentParams::new(CoactionKind::Interior { m: 2, n: 2, t: 1 }, 4);
        assert!(p.check_size().is_ok());
        let bad = ExperimentParams::new(CoactionKind::Interior { m: 2, n: 2, t: 3 }, 2);
        assert!(bad.validate().is_err());
        let bad = ExperimentParams::new(CoactionKind::Slr { n: 2, r: 2 }, 2);
        assert!(bad.validate().is_err());
        assert_eq!(tuple_label(&[1, 2]), "L12");
        assert_eq!(tuple_label(&[1, 12]), "L1_12");
    }
}

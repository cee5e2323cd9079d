//! Verification reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::script::{ClaimKind, Relation};
use crate::arrangements::{Composition, Method};
use crate::bounds::{Degrees, Params, CERT_EPSILON};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    /// The bounds do not exclude the configuration.
    Refused,
    /// A justification of this chain did not verify.
    DependencyUnverified,
    /// The claim could not be evaluated at these parameters.
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refused => "refused",
            Verdict::DependencyUnverified => "dependency-unverified",
            Verdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub kind: ClaimKind,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_sum: Option<Degrees>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<Degrees>,
    /// Largest admissible count, for capacity claims.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<Composition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Exhaustive minimum recomputed for two-class claims.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<Degrees>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub depends_on: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ClaimReport {
    pub(crate) fn new(id: &str, kind: ClaimKind, verdict: Verdict) -> Self {
        ClaimReport {
            id: id.to_string(),
            kind,
            verdict,
            min_sum: None,
            margin: None,
            capacity: None,
            method: None,
            composition: None,
            witness: None,
            cross_check: None,
            depends_on: Vec::new(),
            detail: None,
        }
    }
}

/// A printed number compared with its recomputed value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedCheck {
    pub claim: String,
    pub item: String,
    pub printed: f64,
    pub relation: Relation,
    pub recomputed: f64,
    pub delta: f64,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub used_in_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub passed: bool,
    /// Verified impossible `(weight-1, weight-1/2)` count pairs.
    pub impossible_pairs: Vec<(u32, u32)>,
    pub uncovered: Vec<(u32, u32)>,
    pub checked: u32,
}

impl CoverageReport {
    pub fn first_uncovered(&self) -> Option<(u32, u32)> {
        self.uncovered.first().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: Params,
    pub epsilon: f64,
    pub claims: Vec<ClaimReport>,
    pub coverage: CoverageReport,
    pub printed_values_checked: usize,
    /// Printed values that disagree with recomputation. Warnings only.
    pub discrepancies: Vec<PrintedCheck>,
    /// How misprinted arguments in the original were read, by claim.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transcription_notes: Vec<(String, String)>,
    pub failing_claims: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_margin: Option<Degrees>,
    pub verified: bool,
}

impl VerificationReport {
    pub(crate) fn assemble(
        params: Params,
        claims: Vec<ClaimReport>,
        coverage: CoverageReport,
        checks: Vec<PrintedCheck>,
        claim_notes: Vec<(String, String)>,
    ) -> Self {
        let failing_claims: Vec<String> = claims
            .iter()
            .filter(|c| c.verdict != Verdict::Verified)
            .map(|c| c.id.clone())
            .collect();
        let worst_margin = claims
            .iter()
            .filter_map(|c| c.margin)
            .min_by(|a, b| a.0.total_cmp(&b.0));
        let verified = failing_claims.is_empty() && coverage.passed;
        let printed_values_checked = checks.len();
        let mut transcription_notes = claim_notes;
        for c in checks.iter().filter(|c| c.agrees) {
            if let Some(n) = &c.note {
                transcription_notes.push((c.claim.clone(), format!("{}: {n}", c.item)));
            }
        }
        let discrepancies = checks.into_iter().filter(|c| !c.agrees).collect();
        VerificationReport {
            params,
            epsilon: CERT_EPSILON,
            claims,
            coverage,
            printed_values_checked,
            discrepancies,
            transcription_notes,
            failing_claims,
            worst_margin,
            verified,
        }
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        let _ = writeln!(
            s,
            "Proof verification at p = {} (q = {:.6}), epsilon = {:e}, paranoid: {}",
            p.p(),
            p.q(),
            self.epsilon,
            if p.is_paranoid() { "on" } else { "off" }
        );
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<20} {:<12} {:<22} {:>10} {:>9}  detail",
            "claim", "kind", "verdict", "min sum", "margin"
        );
        for c in &self.claims {
            let kind = match c.kind {
                ClaimKind::Capacity => "capacity",
                ClaimKind::Arrangement => "arrangement",
                ClaimKind::Chain => "chain",
            };
            let fmt_deg = |d: Option<Degrees>| d.map_or("-".to_string(), |d| format!("{d}"));
            let mut detail = Vec::new();
            if let Some(k) = c.capacity {
                detail.push(format!("capacity {k}"));
            }
            if let Some(comp) = c.composition {
                detail.push(format!("composition {comp}"));
            } else if let Some(w) = &c.witness {
                detail.push(format!("witness {}", w.join(" ")));
            }
            if !c.depends_on.is_empty() {
                detail.push(format!("via {}", c.depends_on.join(" -> ")));
            }
            if let Some(d) = &c.detail {
                detail.push(d.clone());
            }
            let _ = writeln!(
                s,
                "{:<20} {:<12} {:<22} {:>10} {:>9}  {}",
                c.id,
                kind,
                c.verdict.as_str(),
                fmt_deg(c.min_sum),
                fmt_deg(c.margin),
                detail.join("; ")
            );
        }
        let _ = writeln!(s);
        let pairs: Vec<String> = self
            .coverage
            .impossible_pairs
            .iter()
            .map(|(m, h)| format!("({m},{h})"))
            .collect();
        if self.coverage.passed {
            let _ = writeln!(
                s,
                "Coverage: pass ({} count pairs checked against {})",
                self.coverage.checked,
                pairs.join(" ")
            );
        } else {
            let uncovered: Vec<String> = self
                .coverage
                .uncovered
                .iter()
                .map(|(m, h)| format!("({m},{h})"))
                .collect();
            let _ = writeln!(s, "Coverage: FAIL, uncovered {}", uncovered.join(" "));
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "Printed-value discrepancies ({} of {} checked):",
            self.discrepancies.len(),
            self.printed_values_checked
        );
        for d in &self.discrepancies {
            let rel = match d.relation {
                Relation::Approx => "=",
                Relation::LowerBound => ">",
            };
            let _ = write!(
                s,
                "  {:<20} {}: printed {rel} {:.4}, recomputed {:.4} (delta {:+.4})",
                d.claim, d.item, d.printed, d.recomputed, d.delta
            );
            if let Some(n) = &d.note {
                let _ = write!(s, "; {n}");
            }
            let _ = writeln!(s);
        }
        if !self.transcription_notes.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "Transcription notes:");
            for (claim, note) in &self.transcription_notes {
                let _ = writeln!(s, "  {claim:<20} {note}");
            }
        }
        let _ = writeln!(s);
        if self.verified {
            let _ = writeln!(s, "Overall: PROOF VERIFIED");
        } else {
            let _ = writeln!(
                s,
                "Overall: NOT VERIFIED (failing: {})",
                self.failing_claims.join(", ")
            );
        }
        s
    }
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub verified: bool,
    pub failing_claims: Vec<String>,
    pub coverage_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_margin: Option<Degrees>,
}

pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("p,verified,worst_margin,failing_claims\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            r.p,
            r.verified,
            r.worst_margin
                .map_or(String::new(), |m| format!("{:.6}", m.0)),
            r.failing_claims.join(";")
        );
    }
    s
}

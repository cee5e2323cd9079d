//! Mechanical verification of the weight-15 case analysis.
//!
//! The argument is a [`ProofScript`]: capacity and arrangement claims that
//! are checked numerically, and chain claims that combine them by
//! pigeonhole. A final coverage step confirms that every count pair of total
//! weight at least 15 contains one of the refuted pairs.

mod builtin;
mod chain;
mod report;
mod script;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::arrangements::{
    certify_impossible, min_sum_general, Certification, PointClass, MAX_POINTS,
};
use crate::bounds::{
    capacity_bound, pair_angle_bound, phi, BoundsError, Degrees, Params, Weight, FULL_TURN,
};

pub use builtin::builtin_paper_script;
pub use chain::check_chain;
pub use report::{
    sweep_to_csv, ClaimReport, CoverageReport, PrintedCheck, SweepRow, Verdict, VerificationReport,
};
pub use script::{
    habitat_radii, ChainStep, ClaimKind, ClaimSpec, ClassSpec, Distance, Placement, PrintedPhi,
    PrintedValue, ProofScript, Radius, Relation, Side, Sym, PRINTED_TOL,
};

/// Coverage grid limits: no more than 18 weight-1 or 36 weight-1/2 points.
pub const MAX_ONES: u32 = 18;
pub const MAX_HALVES: u32 = 36;

/// Twice the weight that must be ruled out.
pub const TARGET_DOUBLE_WEIGHT: u32 = 30;

/// Agreement required between the closed form and the exhaustive minimum.
const CROSS_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProofError {
    #[error("claim `{claim}`, field `{field}`: {message}")]
    Structural {
        claim: String,
        field: String,
        message: String,
    },
    #[error("malformed proof script: {0}")]
    Parse(String),
    #[error("invalid sweep range: {0}")]
    Domain(String),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

impl ProofError {
    pub(crate) fn structural(claim: &str, field: &str, message: &str) -> Self {
        ProofError::Structural {
            claim: claim.to_string(),
            field: field.to_string(),
            message: message.to_string(),
        }
    }
}

fn point_classes(claim: &ClaimSpec, params: &Params) -> Result<Vec<PointClass>, BoundsError> {
    claim
        .classes
        .iter()
        .map(|c| c.to_point_class(params))
        .collect()
}

/// Verify one claim. Chains consult `verdicts` for their justifications,
/// which must already have been verified.
pub fn verify_claim(
    claim: &ClaimSpec,
    script: &ProofScript,
    params: &Params,
    verdicts: &BTreeMap<String, Verdict>,
) -> Result<ClaimReport, ProofError> {
    match claim.kind {
        ClaimKind::Capacity => Ok(verify_capacity(claim, params)),
        ClaimKind::Arrangement => Ok(verify_arrangement(claim, params)),
        ClaimKind::Chain => verify_chain(claim, script, params, verdicts),
    }
}

fn errored(claim: &ClaimSpec, e: impl std::fmt::Display) -> ClaimReport {
    let mut r = ClaimReport::new(&claim.id, claim.kind, Verdict::Error);
    r.detail = Some(e.to_string());
    r
}

fn verify_capacity(claim: &ClaimSpec, params: &Params) -> ClaimReport {
    let run = || -> Result<ClaimReport, BoundsError> {
        let cls = claim.classes[0].to_point_class(params)?;
        let key = (cls.weight, cls.annulus);
        let bound = pair_angle_bound(key, key, params)?;
        let cap = capacity_bound(key, params)?;
        let sum = cls.count as f64 * bound.0;
        let verdict = if cls.count > cap {
            Verdict::Verified
        } else {
            Verdict::Refused
        };
        let mut r = ClaimReport::new(&claim.id, claim.kind, verdict);
        r.min_sum = Some(Degrees(sum));
        r.margin = Some(Degrees(sum - FULL_TURN));
        r.capacity = Some(cap);
        r.detail = Some(format!("{} x {bound}", cls.count));
        Ok(r)
    };
    run().unwrap_or_else(|e| errored(claim, e))
}

fn verify_arrangement(claim: &ClaimSpec, params: &Params) -> ClaimReport {
    let classes = match point_classes(claim, params) {
        Ok(c) => c,
        Err(e) => return errored(claim, e),
    };
    let certification = match certify_impossible(&classes, params) {
        Ok(c) => c,
        Err(e) => return errored(claim, e),
    };
    let cert = certification.certificate().clone();
    let verdict = match certification {
        Certification::Verified(_) => Verdict::Verified,
        Certification::Refused(_) => Verdict::Refused,
    };
    let mut r = ClaimReport::new(&claim.id, claim.kind, verdict);
    r.min_sum = Some(cert.min_sum);
    r.margin = Some(cert.margin);
    r.method = Some(cert.method);
    r.composition = cert.composition;
    r.witness = Some(cert.witness);

    let total: u32 = classes.iter().map(|c| c.count).sum();
    if cert.composition.is_some() && total <= MAX_POINTS {
        match min_sum_general(&classes, params) {
            Ok(general) => {
                r.cross_check = Some(general.min_sum);
                if (general.min_sum.0 - cert.min_sum.0).abs() > CROSS_CHECK_TOL {
                    r.verdict = Verdict::Error;
                    r.detail = Some(format!(
                        "closed form {} disagrees with exhaustive {}",
                        cert.min_sum, general.min_sum
                    ));
                }
            }
            Err(e) => return errored(claim, e),
        }
    }
    r
}

fn verify_chain(
    claim: &ClaimSpec,
    script: &ProofScript,
    params: &Params,
    verdicts: &BTreeMap<String, Verdict>,
) -> Result<ClaimReport, ProofError> {
    check_chain(claim, script, params)?;
    let deps: Vec<String> = claim
        .steps
        .iter()
        .map(|s| s.justification.clone())
        .collect();
    let unverified: Vec<&str> = deps
        .iter()
        .filter(|d| verdicts.get(d.as_str()) != Some(&Verdict::Verified))
        .map(String::as_str)
        .collect();
    let mut r = if unverified.is_empty() {
        ClaimReport::new(&claim.id, claim.kind, Verdict::Verified)
    } else {
        let mut r = ClaimReport::new(&claim.id, claim.kind, Verdict::DependencyUnverified);
        r.detail = Some(format!("unverified: {}", unverified.join(", ")));
        r
    };
    r.depends_on = deps;
    Ok(r)
}

/// Every `(m, h)` with `2m + h >= 30` inside the grid must contain a refuted
/// pair: deleting points keeps a configuration admissible, so a superset of
/// an impossible configuration is impossible too.
pub fn coverage_check(impossible: &BTreeSet<(u32, u32)>) -> CoverageReport {
    let mut uncovered = Vec::new();
    let mut checked = 0;
    for m in 0..=MAX_ONES {
        for h in 0..=MAX_HALVES {
            if 2 * m + h < TARGET_DOUBLE_WEIGHT {
                continue;
            }
            checked += 1;
            if !impossible.iter().any(|&(a, b)| a <= m && b <= h) {
                uncovered.push((m, h));
            }
        }
    }
    CoverageReport {
        passed: uncovered.is_empty(),
        impossible_pairs: impossible.iter().copied().collect(),
        uncovered,
        checked,
    }
}

/// Compare every printed number in the script with its recomputation.
pub fn check_printed_values(
    script: &ProofScript,
    params: &Params,
    reports: &[ClaimReport],
) -> Vec<PrintedCheck> {
    let mut out = Vec::new();
    for claim in &script.claims {
        for e in &claim.printed_phi {
            let r = e.r.resolve(params);
            let big_r = e.big_r.resolve(params);
            let d = e.d.resolve(params);
            let item = format!("{} [Φ({d:.4}; {r}, {big_r:.4})]", e.printed_as);
            match phi(d, r, big_r) {
                Ok(value) => out.push(PrintedCheck {
                    claim: claim.id.clone(),
                    item,
                    printed: e.printed.value,
                    relation: e.printed.relation,
                    recomputed: value.0,
                    delta: value.0 - e.printed.value,
                    agrees: e.printed.relation.agrees(e.printed.value, value.0),
                    used_in_sum: e.used_in_sum,
                    note: e.note.clone(),
                }),
                Err(err) => out.push(PrintedCheck {
                    claim: claim.id.clone(),
                    item,
                    printed: e.printed.value,
                    relation: e.printed.relation,
                    recomputed: f64::NAN,
                    delta: f64::NAN,
                    agrees: false,
                    used_in_sum: e.used_in_sum,
                    note: Some(err.to_string()),
                }),
            }
        }
        if let Some(expected) = claim.expected_margin {
            if let Some(margin) = reports
                .iter()
                .find(|r| r.id == claim.id)
                .and_then(|r| r.margin)
            {
                out.push(PrintedCheck {
                    claim: claim.id.clone(),
                    item: "margin over 360°".to_string(),
                    printed: expected.value,
                    relation: expected.relation,
                    recomputed: margin.0,
                    delta: margin.0 - expected.value,
                    agrees: expected.relation.agrees(expected.value, margin.0),
                    used_in_sum: None,
                    note: None,
                });
            }
        }
        if !claim.printed_compositions.is_empty() {
            let m = claim.total(Weight::One);
            let h = claim.total(Weight::Half);
            let mut printed = claim.printed_compositions.clone();
            printed.sort();
            let (agrees, note) = match crate::arrangements::enumerate_compositions(m, h) {
                Ok(mut got) => {
                    got.sort();
                    let fmt = |v: &[crate::arrangements::Composition]| {
                        v.iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    (got == printed, format!("enumerated {}", fmt(&got)))
                }
                Err(e) => (false, e.to_string()),
            };
            out.push(PrintedCheck {
                claim: claim.id.clone(),
                item: "composition list".to_string(),
                printed: printed.len() as f64,
                relation: Relation::Approx,
                recomputed: if agrees {
                    printed.len() as f64
                } else {
                    f64::NAN
                },
                delta: 0.0,
                agrees,
                used_in_sum: None,
                note: if agrees { None } else { Some(note) },
            });
        }
    }
    out
}

/// Verify a whole script at `params`.
pub fn verify_script(
    script: &ProofScript,
    params: &Params,
) -> Result<VerificationReport, ProofError> {
    let order = script.validate()?;
    let mut verdicts = BTreeMap::new();
    let mut by_index: Vec<Option<ClaimReport>> = vec![None; script.claims.len()];
    for i in order {
        let claim = &script.claims[i];
        let report = verify_claim(claim, script, params, &verdicts)?;
        verdicts.insert(claim.id.clone(), report.verdict);
        by_index[i] = Some(report);
    }
    let reports: Vec<ClaimReport> = by_index
        .into_iter()
        .map(|r| r.expect("every claim visited"))
        .collect();

    let impossible: BTreeSet<(u32, u32)> = script
        .claims
        .iter()
        .zip(&reports)
        .filter(|(_, r)| r.verdict == Verdict::Verified)
        .filter_map(|(c, _)| c.count_pair())
        .collect();
    let coverage = coverage_check(&impossible);
    let checks = check_printed_values(script, params, &reports);
    let notes = script
        .claims
        .iter()
        .filter_map(|c| c.note.clone().map(|n| (c.id.clone(), n)))
        .collect();
    Ok(VerificationReport::assemble(
        *params, reports, coverage, checks, notes,
    ))
}

/// Verify the built-in case analysis.
pub fn verify_paper_proof(params: &Params) -> VerificationReport {
    verify_script(&builtin_paper_script(), params).expect("built-in script is well formed")
}

/// Grid `p_lo, p_lo + step, ..., p_hi`, each value rounded to 1e-9.
pub fn sweep_grid(p_lo: f64, p_hi: f64, step: f64) -> Result<Vec<f64>, ProofError> {
    if !(p_lo.is_finite() && p_hi.is_finite() && step.is_finite()) {
        return Err(ProofError::Domain("non-finite bound".into()));
    }
    if p_lo <= 1.0 {
        return Err(ProofError::Domain(format!("need p > 1, got {p_lo}")));
    }
    if p_lo > p_hi {
        return Err(ProofError::Domain(format!("from {p_lo} exceeds to {p_hi}")));
    }
    if step <= 0.0 {
        return Err(ProofError::Domain(format!(
            "step must be positive, got {step}"
        )));
    }
    let n = ((p_hi - p_lo) / step + 1e-9).floor() as u64;
    if n > 1_000_000 {
        return Err(ProofError::Domain(format!("{n} grid points is too many")));
    }
    Ok((0..=n)
        .map(|i| ((p_lo + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

/// Run [`verify_paper_proof`] at every grid point.
pub fn sweep_p(
    p_lo: f64,
    p_hi: f64,
    step: f64,
    paranoid: bool,
) -> Result<Vec<SweepRow>, ProofError> {
    let script = builtin_paper_script();
    sweep_grid(p_lo, p_hi, step)?
        .into_iter()
        .map(|p| {
            let params = Params::new(p)?.paranoid(paranoid);
            let report = verify_script(&script, &params)?;
            Ok(SweepRow {
                p,
                verified: report.verified,
                failing_claims: report.failing_claims,
                coverage_passed: report.coverage.passed,
                worst_margin: report.worst_margin,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn impossible_pairs() -> BTreeSet<(u32, u32)> {
        [
            (12, 0),
            (0, 27),
            (2, 24),
            (4, 21),
            (5, 20),
            (6, 18),
            (7, 16),
            (8, 14),
            (9, 12),
            (10, 10),
            (11, 8),
        ]
        .into_iter()
        .collect()
    }

    #[test]
    fn coverage_of_the_eleven_cases() {
        assert!(coverage_check(&impossible_pairs()).passed);
        let mut fewer = impossible_pairs();
        fewer.remove(&(10, 10));
        let r = coverage_check(&fewer);
        assert!(!r.passed);
        assert_eq!(r.first_uncovered(), Some((10, 10)));
        assert!(!coverage_check(&BTreeSet::new()).passed);
    }

    #[test]
    fn builtin_script_is_well_formed() {
        let script = builtin_paper_script();
        let order = script.validate().unwrap();
        assert_eq!(order.len(), script.claims.len());
        let params = Params::new(1.409).unwrap();
        for c in script.claims.iter().filter(|c| c.kind == ClaimKind::Chain) {
            check_chain(c, &script, &params).unwrap();
        }
    }

    #[test]
    fn chain_arithmetic_mismatch_is_structural() {
        let mut script = builtin_paper_script();
        let lemma = script
            .claims
            .iter_mut()
            .find(|c| c.id == "lemma-4.3")
            .unwrap();
        lemma.steps[0].derived.as_mut().unwrap().count = 12;
        let params = Params::new(1.409).unwrap();
        let err = verify_script(&script, &params).unwrap_err();
        assert!(
            matches!(err, ProofError::Structural { ref claim, .. } if claim == "lemma-4.3"),
            "{err}"
        );
    }

    #[test]
    fn chain_with_inapplicable_justification_is_structural() {
        let mut script = builtin_paper_script();
        let lemma = script
            .claims
            .iter_mut()
            .find(|c| c.id == "lemma-4.3")
            .unwrap();
        lemma.steps[1].justification = "lemma-3.3.cap".to_string();
        let params = Params::new(1.409).unwrap();
        assert!(matches!(
            verify_script(&script, &params),
            Err(ProofError::Structural { .. })
        ));
    }

    #[test]
    fn cycles_and_unknown_ids_are_rejected() {
        let mut script = builtin_paper_script();
        let lemma = script
            .claims
            .iter_mut()
            .find(|c| c.id == "lemma-4.3")
            .unwrap();
        lemma.steps[1].justification = "nope".to_string();
        assert!(matches!(
            script.validate(),
            Err(ProofError::Structural { .. })
        ));

        let mut script = builtin_paper_script();
        let dup = script.claims[0].clone();
        script.claims.push(dup);
        assert!(matches!(
            script.validate(),
            Err(ProofError::Structural { .. })
        ));
    }

    #[test]
    fn sweep_grid_rounds_and_validates() {
        let g = sweep_grid(1.408, 1.410, 0.001).unwrap();
        assert_eq!(g, vec![1.408, 1.409, 1.41]);
        assert_eq!(sweep_grid(1.409, 1.409, 0.001).unwrap(), vec![1.409]);
        assert!(sweep_grid(1.5, 1.4, 0.01).is_err());
        assert!(sweep_grid(0.9, 1.4, 0.01).is_err());
        assert!(sweep_grid(1.2, 1.4, 0.0).is_err());
    }
}

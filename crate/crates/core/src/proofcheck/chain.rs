//! Pigeonhole bookkeeping for chain claims.
//!
//! A chain starts from the counts of the refuted configuration and learns
//! lower bounds of the form "at least n points in [lo, x]" (prefix facts) or
//! "at least n points in [x, hi]" (suffix facts). Each step assumes a region
//! is crowded, shows that the justification's configuration would then fit,
//! and concludes the complement holds the remaining points.

use super::script::{ChainStep, ClaimSpec, Placement, ProofScript, Side};
use super::ProofError;
use crate::bounds::{Params, Weight};

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Default)]
struct Known {
    total: u32,
    prefix: Vec<(f64, u32)>,
    suffix: Vec<(f64, u32)>,
}

impl Known {
    /// Guaranteed number of points with radius at most `x`.
    fn at_most(&self, x: f64, full_hi: f64) -> u32 {
        if x >= full_hi - TOL {
            return self.total;
        }
        self.prefix
            .iter()
            .filter(|(t, _)| *t <= x + TOL)
            .map(|(_, n)| *n)
            .max()
            .unwrap_or(0)
    }

    /// Guaranteed number of points with radius at least `x`.
    fn at_least(&self, x: f64, full_lo: f64) -> u32 {
        if x <= full_lo + TOL {
            return self.total;
        }
        self.suffix
            .iter()
            .filter(|(t, _)| *t >= x - TOL)
            .map(|(_, n)| *n)
            .max()
            .unwrap_or(0)
    }
}

struct Knowledge<'a> {
    params: &'a Params,
    ones: Known,
    halves: Known,
}

impl<'a> Knowledge<'a> {
    fn of(&self, w: Weight) -> &Known {
        match w {
            Weight::One => &self.ones,
            Weight::Half => &self.halves,
        }
    }

    fn of_mut(&mut self, w: Weight) -> &mut Known {
        match w {
            Weight::One => &mut self.ones,
            Weight::Half => &mut self.halves,
        }
    }

    fn learn(&mut self, fact: &Placement) -> Result<(), String> {
        let lo = fact.lo.resolve(self.params);
        let hi = fact.hi.resolve(self.params);
        let side = fact.side();
        let k = self.of_mut(fact.weight);
        match side {
            Side::Prefix => k.prefix.push((hi, fact.count)),
            Side::Suffix => k.suffix.push((lo, fact.count)),
            Side::Full => {}
            Side::Interior => return Err(format!("{fact}: must share an end of its range")),
        }
        Ok(())
    }

    /// Hall's condition for nested annuli: every inner group of demands
    /// fits into the points known to lie there.
    fn satisfies(&self, demands: &[&Placement]) -> Result<(), String> {
        for w in [Weight::One, Weight::Half] {
            let known = self.of(w);
            let hab = self.params.habitat(w);
            let mine: Vec<&Placement> = demands.iter().copied().filter(|d| d.weight == w).collect();
            let total: u32 = mine.iter().map(|d| d.count).sum();
            if total > known.total {
                return Err(format!(
                    "{total} {w} points demanded, only {} exist",
                    known.total
                ));
            }
            let mut prefix = Vec::new();
            let mut suffix = Vec::new();
            for d in &mine {
                match d.side() {
                    Side::Full => {}
                    Side::Prefix => prefix.push((d.hi.resolve(self.params), d.count, *d)),
                    Side::Suffix => suffix.push((d.lo.resolve(self.params), d.count, *d)),
                    Side::Interior => return Err(format!("{d}: must share an end of its range")),
                }
            }
            if !prefix.is_empty() && !suffix.is_empty() {
                return Err(format!("{w} classes mix inner and outer annuli"));
            }
            prefix.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut need = 0;
            for (x, n, d) in prefix {
                need += n;
                let have = known.at_most(x, hab.hi());
                if need > have {
                    return Err(format!(
                        "{d}: needs {need} points up to radius {x}, known {have}"
                    ));
                }
            }
            suffix.sort_by(|a, b| b.0.total_cmp(&a.0));
            let mut need = 0;
            for (x, n, d) in suffix {
                need += n;
                let have = known.at_least(x, hab.lo());
                if need > have {
                    return Err(format!(
                        "{d}: needs {need} points from radius {x}, known {have}"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Check that every step of `chain` follows from its justification and the
/// facts learned so far, and that the last step's justification applies
/// outright.
pub fn check_chain(
    chain: &ClaimSpec,
    script: &ProofScript,
    params: &Params,
) -> Result<(), ProofError> {
    let err = |field: String, msg: String| ProofError::structural(&chain.id, &field, &msg);
    let mut kb = Knowledge {
        params,
        ones: Known {
            total: chain.total(Weight::One),
            ..Known::default()
        },
        halves: Known {
            total: chain.total(Weight::Half),
            ..Known::default()
        },
    };
    for (k, step) in chain.steps.iter().enumerate() {
        let field = format!("steps[{k}]");
        let just = script.get(&step.justification).ok_or_else(|| {
            err(
                field.clone(),
                format!("unknown claim `{}`", step.justification),
            )
        })?;
        let demands: Vec<&Placement> = just.classes.iter().map(|c| &c.placement).collect();
        match (&step.region, &step.derived) {
            (Some(region), Some(derived)) => {
                check_split(step, region, derived, &kb).map_err(|m| err(field.clone(), m))?;
                let mut hyp = Knowledge {
                    params,
                    ones: kb.ones.clone(),
                    halves: kb.halves.clone(),
                };
                hyp.learn(region)
                    .map_err(|m| err(format!("{field}.region"), m))?;
                hyp.satisfies(&demands).map_err(|m| {
                    err(field.clone(), format!("`{}` does not apply: {m}", just.id))
                })?;
                kb.learn(derived)
                    .map_err(|m| err(format!("{field}.derived"), m))?;
            }
            (None, None) => {
                kb.satisfies(&demands).map_err(|m| {
                    err(field.clone(), format!("`{}` does not apply: {m}", just.id))
                })?;
            }
            _ => return Err(err(field, "region and derived go together".into())),
        }
    }
    Ok(())
}

/// The derived placement is the complement of the region and carries
/// `total − (region.count − 1)` points.
fn check_split(
    step: &ChainStep,
    region: &Placement,
    derived: &Placement,
    kb: &Knowledge,
) -> Result<(), String> {
    if region.weight != derived.weight {
        return Err("region and derived placement have different weights".into());
    }
    let complementary = match region.side() {
        Side::Prefix => derived.side() == Side::Suffix && derived.lo == region.hi,
        Side::Suffix => derived.side() == Side::Prefix && derived.hi == region.lo,
        _ => return Err(format!("region {region} must be an inner or outer annulus")),
    };
    if !complementary {
        return Err(format!("{derived} is not the complement of {region}"));
    }
    let total = kb.of(region.weight).total;
    if region.count == 0 || region.count > total {
        return Err(format!("region count {} outside 1..={total}", region.count));
    }
    let expect = total - (region.count - 1);
    if derived.count != expect {
        return Err(format!(
            "{}: derived count {} but {total} − ({} − 1) = {expect}",
            step.assumption, derived.count, region.count
        ));
    }
    Ok(())
}

//! Proof-script data model and its static validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ProofError;
use crate::arrangements::{Composition, PointClass};
use crate::bounds::{Annulus, Params, Weight};

/// Radii symbolic in `p` so that one script serves every parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Radius {
    Value(f64),
    Symbol(Sym),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sym {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "1+p")]
    OnePlusP,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "1+q")]
    OnePlusQ,
}

impl Radius {
    pub fn resolve(&self, params: &Params) -> f64 {
        match self {
            Radius::Value(v) => *v,
            Radius::Symbol(Sym::P) => params.p(),
            Radius::Symbol(Sym::OnePlusP) => params.outer(),
            Radius::Symbol(Sym::Q) => params.q(),
            Radius::Symbol(Sym::OnePlusQ) => params.half_cap(),
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Value(v) => write!(f, "{v}"),
            Radius::Symbol(Sym::P) => f.write_str("p"),
            Radius::Symbol(Sym::OnePlusP) => f.write_str("1+p"),
            Radius::Symbol(Sym::Q) => f.write_str("q"),
            Radius::Symbol(Sym::OnePlusQ) => f.write_str("1+q"),
        }
    }
}

/// Inner and outer radius of a weight's admissible range, symbolically.
pub fn habitat_radii(weight: Weight) -> (Radius, Radius) {
    match weight {
        Weight::One => (Radius::Symbol(Sym::P), Radius::Symbol(Sym::OnePlusP)),
        Weight::Half => (Radius::Value(1.0), Radius::Symbol(Sym::OnePlusP)),
    }
}

/// Where a placement sits inside its weight's admissible range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Full,
    /// Shares the inner radius of the range.
    Prefix,
    /// Shares the outer radius of the range.
    Suffix,
    /// Touches neither end.
    Interior,
}

/// `count` points of one weight in the annulus `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub weight: Weight,
    pub lo: Radius,
    pub hi: Radius,
    pub count: u32,
}

impl Placement {
    pub fn new(weight: Weight, lo: Radius, hi: Radius, count: u32) -> Self {
        Placement {
            weight,
            lo,
            hi,
            count,
        }
    }

    pub fn annulus(&self, params: &Params) -> Result<Annulus, crate::bounds::BoundsError> {
        Annulus::new(self.lo.resolve(params), self.hi.resolve(params))
    }

    pub fn side(&self) -> Side {
        let (lo, hi) = habitat_radii(self.weight);
        match (self.lo == lo, self.hi == hi) {
            (true, true) => Side::Full,
            (true, false) => Side::Prefix,
            (false, true) => Side::Suffix,
            (false, false) => Side::Interior,
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} x {} in [{}, {}]",
            self.count, self.weight, self.lo, self.hi
        )
    }
}

/// A labelled class of a claim's configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub label: String,
    #[serde(flatten)]
    pub placement: Placement,
}

impl ClassSpec {
    pub fn new(label: &str, weight: Weight, lo: Radius, hi: Radius, count: u32) -> Self {
        ClassSpec {
            label: label.to_string(),
            placement: Placement::new(weight, lo, hi, count),
        }
    }

    pub fn to_point_class(
        &self,
        params: &Params,
    ) -> Result<PointClass, crate::bounds::BoundsError> {
        Ok(PointClass::new(
            self.label.clone(),
            self.placement.weight,
            self.placement.annulus(params)?,
            self.placement.count,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    /// Too many points of a single class: `count · bound > 360°`.
    Capacity,
    /// Every circular arrangement of the classes exceeds 360°.
    Arrangement,
    /// A pigeonhole argument over previously established claims.
    Chain,
}

/// How a printed number relates to the exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Printed as `= x...`: a truncation of the exact value.
    Approx,
    /// Printed as `> x`, or computed from truncated terms.
    LowerBound,
}

/// Tolerance for printed-value cross-checks, in degrees.
pub const PRINTED_TOL: f64 = 0.02;

impl Relation {
    pub fn agrees(self, printed: f64, recomputed: f64) -> bool {
        match self {
            Relation::Approx => (recomputed - printed).abs() <= PRINTED_TOL,
            Relation::LowerBound => recomputed >= printed - PRINTED_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrintedValue {
    pub value: f64,
    pub relation: Relation,
}

impl PrintedValue {
    pub fn approx(value: f64) -> Self {
        PrintedValue {
            value,
            relation: Relation::Approx,
        }
    }

    pub fn lower(value: f64) -> Self {
        PrintedValue {
            value,
            relation: Relation::LowerBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distance {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "q")]
    Q,
}

impl Distance {
    pub fn resolve(self, params: &Params) -> f64 {
        match self {
            Distance::P => params.p(),
            Distance::Q => params.q(),
        }
    }
}

/// One `Φ_d(r, R) = value` quoted in a claim's argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedPhi {
    /// The notation as printed, which may carry an argument typo.
    pub printed_as: String,
    pub d: Distance,
    pub r: Radius,
    #[serde(rename = "R")]
    pub big_r: Radius,
    #[serde(flatten)]
    pub printed: PrintedValue,
    /// The same quantity as it enters the claim's own arithmetic, when
    /// that differs from `printed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub used_in_sum: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One pigeonhole step of a chain.
///
/// Assuming `region` holds at least `region.count` points, the classes of
/// `justification` can be filled from what is already known, which is
/// impossible. So at most `region.count − 1` points lie there and `derived`
/// holds the rest. A step without `region` is the final contradiction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub justification: String,
    pub assumption: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<Placement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<Placement>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    pub kind: ClaimKind,
    pub statement: String,
    /// The configuration declared impossible.
    #[serde(default)]
    pub classes: Vec<ClassSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<ChainStep>,
    /// Printed `sum − 360°`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_margin: Option<PrintedValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub printed_compositions: Vec<Composition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub printed_phi: Vec<PrintedPhi>,
    /// How a misprint in the original statement or proof was read.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimSpec {
    /// The `(weight-1, weight-1/2)` point counts this claim rules out, when
    /// its classes span the full admissible ranges.
    pub fn count_pair(&self) -> Option<(u32, u32)> {
        let mut ones = None;
        let mut halves = None;
        for c in &self.classes {
            if c.placement.side() != Side::Full {
                return None;
            }
            let slot = match c.placement.weight {
                Weight::One => &mut ones,
                Weight::Half => &mut halves,
            };
            if slot.is_some() {
                return None;
            }
            *slot = Some(c.placement.count);
        }
        if ones.is_none() && halves.is_none() {
            return None;
        }
        Some((ones.unwrap_or(0), halves.unwrap_or(0)))
    }

    pub fn total(&self, weight: Weight) -> u32 {
        self.classes
            .iter()
            .filter(|c| c.placement.weight == weight)
            .map(|c| c.placement.count)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofScript {
    pub version: u32,
    pub claims: Vec<ClaimSpec>,
}

impl ProofScript {
    pub const VERSION: u32 = 1;

    pub fn new(claims: Vec<ClaimSpec>) -> Self {
        ProofScript {
            version: Self::VERSION,
            claims,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ProofError> {
        let script: ProofScript =
            serde_json::from_str(text).map_err(|e| ProofError::Parse(e.to_string()))?;
        if script.version != Self::VERSION {
            return Err(ProofError::Parse(format!(
                "unsupported script version {} (expected {})",
                script.version,
                Self::VERSION
            )));
        }
        Ok(script)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("script serializes")
    }

    pub fn get(&self, id: &str) -> Option<&ClaimSpec> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Parameter-independent checks: unique ids, fields populated per kind,
    /// justifications that exist. Returns claim indices in an order where
    /// every justification precedes its chain.
    pub fn validate(&self) -> Result<Vec<usize>, ProofError> {
        let mut index = BTreeMap::new();
        for (i, c) in self.claims.iter().enumerate() {
            if c.id.is_empty() {
                return Err(ProofError::structural(&format!("#{i}"), "id", "empty"));
            }
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(ProofError::structural(&c.id, "id", "duplicate id"));
            }
        }
        for c in &self.claims {
            validate_shape(c)?;
            for (k, step) in c.steps.iter().enumerate() {
                if !index.contains_key(step.justification.as_str()) {
                    return Err(ProofError::structural(
                        &c.id,
                        &format!("steps[{k}].justification"),
                        &format!("unknown claim `{}`", step.justification),
                    ));
                }
            }
        }
        topo_order(self, &index)
    }
}

fn validate_shape(c: &ClaimSpec) -> Result<(), ProofError> {
    if c.classes.is_empty() {
        return Err(ProofError::structural(
            &c.id,
            "classes",
            "must not be empty",
        ));
    }
    let mut labels = BTreeSet::new();
    for cls in &c.classes {
        if !labels.insert(cls.label.as_str()) {
            return Err(ProofError::structural(
                &c.id,
                "classes",
                &format!("duplicate label `{}`", cls.label),
            ));
        }
    }
    match c.kind {
        ClaimKind::Capacity => {
            if c.classes.len() != 1 || !c.steps.is_empty() {
                return Err(ProofError::structural(
                    &c.id,
                    "classes",
                    "a capacity claim has exactly one class and no steps",
                ));
            }
        }
        ClaimKind::Arrangement => {
            if !c.steps.is_empty() {
                return Err(ProofError::structural(
                    &c.id,
                    "steps",
                    "arrangement claims have no steps",
                ));
            }
        }
        ClaimKind::Chain => {
            if c.steps.is_empty() {
                return Err(ProofError::structural(
                    &c.id,
                    "steps",
                    "a chain needs at least one step",
                ));
            }
            if c.count_pair().is_none() {
                return Err(ProofError::structural(
                    &c.id,
                    "classes",
                    "a chain refutes one full-range class per weight",
                ));
            }
            let last = c.steps.len() - 1;
            for (k, s) in c.steps.iter().enumerate() {
                let leaf = k == last;
                if leaf != s.region.is_none() || s.region.is_some() != s.derived.is_some() {
                    return Err(ProofError::structural(
                        &c.id,
                        &format!("steps[{k}]"),
                        "every step but the last needs region and derived; the last has neither",
                    ));
                }
            }
        }
    }
    Ok(())
}

fn topo_order(
    script: &ProofScript,
    index: &BTreeMap<&str, usize>,
) -> Result<Vec<usize>, ProofError> {
    let n = script.claims.len();
    let mut indegree = vec![0usize; n];
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in script.claims.iter().enumerate() {
        let deps: BTreeSet<usize> = c
            .steps
            .iter()
            .map(|s| index[s.justification.as_str()])
            .collect();
        for d in deps {
            if d == i {
                return Err(ProofError::structural(
                    &c.id,
                    "steps",
                    "claim justifies itself",
                ));
            }
            indegree[i] += 1;
            users[d].push(i);
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &u in &users[i] {
            indegree[u] -= 1;
            if indegree[u] == 0 {
                ready.insert(u);
            }
        }
    }
    if order.len() != n {
        let stuck = (0..n)
            .find(|&i| indegree[i] > 0)
            .expect("some claim is on a cycle");
        return Err(ProofError::structural(
            &script.claims[stuck].id,
            "steps",
            "justifications form a cycle",
        ));
    }
    Ok(order)
}

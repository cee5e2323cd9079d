//! Circular arrangements of weighted point classes.
//!
//! Points sorted by amplitude form a cycle; every consecutive pair subtends
//! at least its [`pair_angle_bound`]. A configuration is impossible when every
//! cyclic arrangement of its points forces the bounds to sum past 360°.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{
    exceeds_full_turn, pair_angle_bound, Annulus, BoundsError, Degrees, Params, Weight, FULL_TURN,
};

/// Largest multiset the exact minimizer accepts.
pub const MAX_POINTS: u32 = 32;

/// Upper limit on `(remaining-count vector, last class)` memo entries.
const MAX_STATES: usize = 1 << 24;

/// Tolerance used to recognize ties when reconstructing the witness.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArrangementError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("need at least 2 points to form an angle, got {0}")]
    TooFewPoints(u32),
    #[error("{0} points exceed the exhaustive-search limit of {MAX_POINTS}")]
    TooManyPoints(u32),
    #[error("state space of {0} entries is too large")]
    StateSpace(usize),
    #[error("duplicate class label `{0}`")]
    DuplicateLabel(String),
    #[error("expected a weight-1 class and a weight-1/2 class, got {0} and {1}")]
    WrongWeights(Weight, Weight),
}

/// A homogeneous group of points: same weight, same annulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointClass {
    pub label: String,
    pub weight: Weight,
    pub annulus: Annulus,
    pub count: u32,
}

impl PointClass {
    pub fn new(label: impl Into<String>, weight: Weight, annulus: Annulus, count: u32) -> Self {
        PointClass {
            label: label.into(),
            weight,
            annulus,
            count,
        }
    }

    fn key(&self) -> (Weight, Annulus) {
        (self.weight, self.annulus)
    }
}

/// Numbers of consecutive pairs by type: weight-1/weight-1, half/half, mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub n11: u32,
    pub nhh: u32,
    pub n1h: u32,
}

impl Composition {
    pub fn new(n11: u32, nhh: u32, n1h: u32) -> Self {
        Composition { n11, nhh, n1h }
    }

    /// Number of maximal weight-1 blocks on the circle.
    pub fn blocks(&self) -> u32 {
        self.n1h / 2
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.n11, self.nhh, self.n1h]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.n11, self.nhh, self.n1h)
    }
}

impl From<[u32; 3]> for Composition {
    fn from(v: [u32; 3]) -> Self {
        Composition::new(v[0], v[1], v[2])
    }
}

/// All pair-type counts realizable by a cycle of `ones` weight-1 and
/// `halves` half-weight points. With both kinds present the cycle splits
/// into `k` alternating blocks of each, giving `[m−k, h−k, 2k]`.
pub fn enumerate_compositions(
    ones: u32,
    halves: u32,
) -> Result<Vec<Composition>, ArrangementError> {
    let total = ones + halves;
    if total < 2 {
        return Err(ArrangementError::TooFewPoints(total));
    }
    if halves == 0 {
        return Ok(vec![Composition::new(ones, 0, 0)]);
    }
    if ones == 0 {
        return Ok(vec![Composition::new(0, halves, 0)]);
    }
    Ok((1..=ones.min(halves))
        .map(|k| Composition::new(ones - k, halves - k, 2 * k))
        .collect())
}

/// A cyclic word over `{1, h}` with the given composition, weight-1 blocks
/// first. `None` when the composition is not realizable for its counts.
pub fn composition_word(c: &Composition) -> Option<Vec<Weight>> {
    let k = c.blocks();
    let ones = c.n11 + k;
    let halves = c.nhh + k;
    if c.n1h % 2 != 0 {
        return None;
    }
    if k == 0 {
        return match (ones, halves) {
            (0, h) if h >= 2 => Some(vec![Weight::Half; h as usize]),
            (m, 0) if m >= 2 => Some(vec![Weight::One; m as usize]),
            _ => None,
        };
    }
    let mut word = Vec::with_capacity((ones + halves) as usize);
    for i in 0..k {
        let run1 = if i == 0 { ones - k + 1 } else { 1 };
        let runh = if i == 0 { halves - k + 1 } else { 1 };
        word.extend(std::iter::repeat(Weight::One).take(run1 as usize));
        word.extend(std::iter::repeat(Weight::Half).take(runh as usize));
    }
    Some(word)
}

/// Count consecutive pair types around a cyclic word.
pub fn count_adjacencies(word: &[Weight]) -> Composition {
    let n = word.len();
    let mut c = Composition::new(0, 0, 0);
    for i in 0..n {
        match (word[i], word[(i + 1) % n]) {
            (Weight::One, Weight::One) => c.n11 += 1,
            (Weight::Half, Weight::Half) => c.nhh += 1,
            _ => c.n1h += 1,
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TwoClassClosedForm,
    Exhaustive,
}

/// The minimizing circular arrangement and its angle-sum lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementCertificate {
    pub min_sum: Degrees,
    pub margin: Degrees,
    /// Class labels around the circle, starting at the canonical first point.
    pub witness: Vec<String>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<Composition>,
}

impl ArrangementCertificate {
    fn new(
        min_sum: f64,
        witness: Vec<String>,
        method: Method,
        composition: Option<Composition>,
    ) -> Self {
        ArrangementCertificate {
            min_sum: Degrees(min_sum),
            margin: Degrees(min_sum - FULL_TURN),
            witness,
            method,
            composition,
        }
    }

    pub fn is_contradiction(&self) -> bool {
        exceeds_full_turn(self.min_sum.0)
    }
}

/// Sum of consecutive pair bounds around `witness`, looked up by label.
pub fn evaluate_witness(
    witness: &[String],
    classes: &[PointClass],
    params: &Params,
) -> Result<Degrees, ArrangementError> {
    let find = |label: &str| classes.iter().find(|c| c.label == label);
    let n = witness.len();
    let mut sum = 0.0;
    for i in 0..n {
        let (a, b) = (&witness[i], &witness[(i + 1) % n]);
        let (Some(ca), Some(cb)) = (find(a), find(b)) else {
            return Err(ArrangementError::DuplicateLabel(format!(
                "{a}/{b} not found"
            )));
        };
        sum += pair_angle_bound(ca.key(), cb.key(), params)?.0;
    }
    Ok(Degrees(sum))
}

/// Closed-form minimum for one weight-1 class and one half-weight class.
///
/// The angle sum is affine in the number of blocks `k`, so only the
/// compositions from [`enumerate_compositions`] need to be compared.
pub fn min_sum_two_class(
    ones: &PointClass,
    halves: &PointClass,
    params: &Params,
) -> Result<ArrangementCertificate, ArrangementError> {
    if ones.weight != Weight::One || halves.weight != Weight::Half {
        return Err(ArrangementError::WrongWeights(ones.weight, halves.weight));
    }
    let comps = enumerate_compositions(ones.count, halves.count)?;
    let b11 = if ones.count >= 2 {
        pair_angle_bound(ones.key(), ones.key(), params)?.0
    } else {
        0.0
    };
    let bhh = if halves.count >= 2 {
        pair_angle_bound(halves.key(), halves.key(), params)?.0
    } else {
        0.0
    };
    let b1h = if ones.count > 0 && halves.count > 0 {
        pair_angle_bound(ones.key(), halves.key(), params)?.0
    } else {
        0.0
    };

    let mut best: Option<(f64, Composition)> = None;
    for c in comps {
        let sum = c.n11 as f64 * b11 + c.nhh as f64 * bhh + c.n1h as f64 * b1h;
        if best.map_or(true, |(s, _)| sum < s - TIE_TOL) {
            best = Some((sum, c));
        }
    }
    let (sum, comp) = best.expect("at least one composition");
    let word = composition_word(&comp).expect("enumerated compositions are realizable");
    let witness = word
        .into_iter()
        .map(|w| match w {
            Weight::One => ones.label.clone(),
            Weight::Half => halves.label.clone(),
        })
        .collect();
    Ok(ArrangementCertificate::new(
        sum,
        witness,
        Method::TwoClassClosedForm,
        Some(comp),
    ))
}

/// Exact minimum over every circular arrangement of the class multiset.
///
/// Rotations are factored out by starting at a point of the class with the
/// least label. The rest is a shortest-path recursion over
/// `(remaining counts, class of the last placed point)`; the witness is the
/// lexicographically least optimal word.
pub fn min_sum_general(
    classes: &[PointClass],
    params: &Params,
) -> Result<ArrangementCertificate, ArrangementError> {
    let mut live: Vec<&PointClass> = classes.iter().filter(|c| c.count > 0).collect();
    live.sort_by(|a, b| a.label.cmp(&b.label));
    for w in live.windows(2) {
        if w[0].label == w[1].label {
            return Err(ArrangementError::DuplicateLabel(w[0].label.clone()));
        }
    }
    let total: u32 = live.iter().map(|c| c.count).sum();
    if total < 2 {
        return Err(ArrangementError::TooFewPoints(total));
    }
    if total > MAX_POINTS {
        return Err(ArrangementError::TooManyPoints(total));
    }

    let k = live.len();
    let mut bound = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let b = pair_angle_bound(live[i].key(), live[j].key(), params)?.0;
            bound[i][j] = b;
            bound[j][i] = b;
        }
    }

    let mut start: Vec<u32> = live.iter().map(|c| c.count).collect();
    start[0] -= 1;
    let search = Search::new(&bound, &start)?;
    let mut memo = vec![f64::NAN; search.states * k];
    let best = search.solve(&start, 0, &mut memo);

    // Walk the memo forward, always taking the least label that stays optimal.
    let mut word = vec![0usize];
    let mut rem = start.clone();
    let mut last = 0usize;
    let mut target = best;
    while rem.iter().any(|&r| r > 0) {
        let mut chosen = None;
        for j in 0..k {
            if rem[j] == 0 {
                continue;
            }
            rem[j] -= 1;
            let tail = search.solve(&rem, j, &mut memo);
            rem[j] += 1;
            if bound[last][j] + tail <= target + TIE_TOL * target.max(1.0) {
                chosen = Some((j, tail));
                break;
            }
        }
        let (j, tail) = chosen.expect("an optimal continuation exists");
        rem[j] -= 1;
        word.push(j);
        last = j;
        target = tail;
    }

    let witness: Vec<String> = word.iter().map(|&i| live[i].label.clone()).collect();
    let n = word.len();
    let sum: f64 = (0..n).map(|i| bound[word[i]][word[(i + 1) % n]]).sum();
    debug_assert!((sum - best).abs() < 1e-9);
    Ok(ArrangementCertificate::new(
        sum,
        witness,
        Method::Exhaustive,
        None,
    ))
}

struct Search<'a> {
    bound: &'a [Vec<f64>],
    radix: Vec<usize>,
    states: usize,
}

impl<'a> Search<'a> {
    fn new(bound: &'a [Vec<f64>], start: &[u32]) -> Result<Self, ArrangementError> {
        let mut radix = Vec::with_capacity(start.len());
        let mut states = 1usize;
        for &c in start {
            radix.push(states);
            states = states
                .checked_mul(c as usize + 1)
                .filter(|&s| s.saturating_mul(start.len()) <= MAX_STATES)
                .ok_or(ArrangementError::StateSpace(usize::MAX))?;
        }
        Ok(Search {
            bound,
            radix,
            states,
        })
    }

    fn index(&self, rem: &[u32], last: usize) -> usize {
        let code: usize = rem
            .iter()
            .zip(&self.radix)
            .map(|(&r, &w)| r as usize * w)
            .sum();
        code * self.bound.len() + last
    }

    /// Cheapest way to place `rem` after a point of class `last` and close
    /// the cycle back to class 0.
    fn solve(&self, rem: &[u32], last: usize, memo: &mut [f64]) -> f64 {
        let idx = self.index(rem, last);
        if !memo[idx].is_nan() {
            return memo[idx];
        }
        let value = if rem.iter().all(|&r| r == 0) {
            self.bound[last][0]
        } else {
            let mut rem = rem.to_vec();
            let mut best = f64::INFINITY;
            for j in 0..rem.len() {
                if rem[j] == 0 {
                    continue;
                }
                rem[j] -= 1;
                let v = self.bound[last][j] + self.solve(&rem, j, memo);
                rem[j] += 1;
                if v < best {
                    best = v;
                }
            }
            best
        };
        memo[idx] = value;
        value
    }
}

/// Outcome of trying to certify a configuration impossible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Certification {
    /// Every arrangement exceeds 360° by more than the certification slack.
    Verified(ArrangementCertificate),
    /// Some arrangement stays within 360°. Not a disproof: the bounds are
    /// simply too weak to exclude it.
    Refused(ArrangementCertificate),
}

impl Certification {
    pub fn certificate(&self) -> &ArrangementCertificate {
        match self {
            Certification::Verified(c) | Certification::Refused(c) => c,
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Certification::Verified(_))
    }
}

/// Try to prove that no configuration with these classes exists.
///
/// One weight-1 class against one half-weight class goes through the closed
/// form; anything else through the exact search.
pub fn certify_impossible(
    classes: &[PointClass],
    params: &Params,
) -> Result<Certification, ArrangementError> {
    let live: Vec<&PointClass> = classes.iter().filter(|c| c.count > 0).collect();
    let cert = match live.as_slice() {
        [a, b] if a.weight != b.weight => {
            let (ones, halves) = if a.weight == Weight::One {
                (a, b)
            } else {
                (b, a)
            };
            min_sum_two_class(ones, halves, params)?
        }
        _ => min_sum_general(classes, params)?,
    };
    Ok(if cert.is_contradiction() {
        Certification::Verified(cert)
    } else {
        Certification::Refused(cert)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: f64 = 1.409;

    fn params() -> Params {
        Params::new(P).unwrap()
    }

    fn class(label: &str, weight: Weight, lo: f64, hi: f64, count: u32) -> PointClass {
        PointClass::new(label, weight, Annulus::new(lo, hi).unwrap(), count)
    }

    #[test]
    fn compositions_printed_lists() {
        let got = enumerate_compositions(6, 8).unwrap();
        let want: Vec<Composition> = [
            [5, 7, 2],
            [4, 6, 4],
            [3, 5, 6],
            [2, 4, 8],
            [1, 3, 10],
            [0, 2, 12],
        ]
        .into_iter()
        .map(Composition::from)
        .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want_sorted = want;
        want_sorted.sort();
        assert_eq!(got_sorted, want_sorted);

        let got = enumerate_compositions(10, 2).unwrap();
        assert_eq!(
            got,
            vec![Composition::new(9, 1, 2), Composition::new(8, 0, 4)]
        );

        assert_eq!(
            enumerate_compositions(12, 0).unwrap(),
            vec![Composition::new(12, 0, 0)]
        );
        assert_eq!(
            enumerate_compositions(0, 5).unwrap(),
            vec![Composition::new(0, 5, 0)]
        );
        assert!(matches!(
            enumerate_compositions(1, 0),
            Err(ArrangementError::TooFewPoints(1))
        ));
    }

    #[test]
    fn words_realize_compositions() {
        for m in 0..8 {
            for h in 0..8 {
                if m + h < 2 {
                    continue;
                }
                for c in enumerate_compositions(m, h).unwrap() {
                    let word = composition_word(&c).unwrap();
                    assert_eq!(word.len() as u32, m + h);
                    assert_eq!(count_adjacencies(&word), c, "m={m} h={h}");
                }
            }
        }
    }

    #[test]
    fn two_class_printed_minima() {
        let pr = params();
        let ones = class("one", Weight::One, P, 1.0 + P, 4);
        let halves = class("half", Weight::Half, 1.25, 1.0 + P, 11);
        let cert = min_sum_two_class(&ones, &halves, &pr).unwrap();
        assert_eq!(cert.composition, Some(Composition::new(3, 10, 2)));
        assert!(cert.min_sum.0 >= 360.23);

        let ones = class("one", Weight::One, P, 1.0 + P, 10);
        let halves = class("half", Weight::Half, 1.2931, 1.0 + P, 2);
        let cert = min_sum_two_class(&ones, &halves, &pr).unwrap();
        assert_eq!(cert.composition, Some(Composition::new(9, 1, 2)));
        assert!((cert.min_sum.0 - 360.0015).abs() < 0.02);

        let ones = class("one", Weight::One, P, 1.0 + P, 12);
        let halves = class("half", Weight::Half, 1.0, 1.0 + P, 0);
        let cert = min_sum_two_class(&ones, &halves, &pr).unwrap();
        assert!(cert.min_sum.0 > 375.0);
        assert_eq!(cert.composition, Some(Composition::new(12, 0, 0)));
    }

    #[test]
    fn two_class_witness_reevaluates() {
        let pr = params();
        let ones = class("one", Weight::One, P, 1.0 + P, 6);
        let halves = class("half", Weight::Half, 1.259, 1.0 + P, 8);
        let cert = min_sum_two_class(&ones, &halves, &pr).unwrap();
        let again = evaluate_witness(&cert.witness, &[ones, halves], &pr).unwrap();
        assert!((again.0 - cert.min_sum.0).abs() < 1e-9);
    }

    #[test]
    fn general_colored_configuration() {
        let pr = params();
        let classes = vec![
            class("a-red", Weight::Half, 1.0, 1.1072, 6),
            class("b1", Weight::Half, 1.0, 1.1138, 1),
            class("b2", Weight::Half, 1.0, 1.1254, 1),
            class("b3", Weight::Half, 1.0, 1.1513, 1),
            class("b4", Weight::Half, 1.0, 1.2571, 1),
        ];
        let cert = min_sum_general(&classes, &pr).unwrap();
        assert!((cert.min_sum.0 - 360.0047).abs() < 0.02, "{}", cert.min_sum);
        // no two blues adjacent in the optimum
        let n = cert.witness.len();
        for i in 0..n {
            let a = &cert.witness[i];
            let b = &cert.witness[(i + 1) % n];
            assert!(a == "a-red" || b == "a-red", "{:?}", cert.witness);
        }
        let again = evaluate_witness(&cert.witness, &classes, &pr).unwrap();
        assert!((again.0 - cert.min_sum.0).abs() < 1e-9);
    }

    #[test]
    fn general_rejects_bad_input() {
        let pr = params();
        let one = vec![class("x", Weight::Half, 1.0, 1.2, 1)];
        assert!(matches!(
            min_sum_general(&one, &pr),
            Err(ArrangementError::TooFewPoints(1))
        ));
        let big = vec![class("x", Weight::Half, 1.0, 1.2, 33)];
        assert!(matches!(
            min_sum_general(&big, &pr),
            Err(ArrangementError::TooManyPoints(33))
        ));
        let dup = vec![
            class("x", Weight::Half, 1.0, 1.2, 2),
            class("x", Weight::Half, 1.0, 1.3, 2),
        ];
        assert!(matches!(
            min_sum_general(&dup, &pr),
            Err(ArrangementError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn certify_examples() {
        let pr = params();
        let single = vec![class("h", Weight::Half, 1.0, 1.259, 11)];
        let c = certify_impossible(&single, &pr).unwrap();
        assert!(c.is_verified());
        assert!((c.certificate().margin.0 - 0.16).abs() < 0.02);

        let two_ones = vec![class("o", Weight::One, P, 1.0 + P, 2)];
        assert!(!certify_impossible(&two_ones, &pr).unwrap().is_verified());
    }

    #[test]
    fn lex_least_witness_is_deterministic() {
        let pr = params();
        let classes = vec![
            class("r", Weight::Half, 1.0, 1.19, 9),
            class("s", Weight::Half, 1.0, 1.24, 1),
            class("t", Weight::Half, 1.0, 1.45, 1),
        ];
        let a = min_sum_general(&classes, &pr).unwrap();
        let mut rev = classes.clone();
        rev.reverse();
        let b = min_sum_general(&rev, &pr).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.witness[0], "r");
    }
}

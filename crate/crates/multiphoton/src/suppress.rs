//! Detection and rule-based prediction of suppressed transitions: output
//! configurations whose probability vanishes by complete destructive
//! interference of the routing-class amplitudes.

use std::fmt;

use crate::combinat::{self, Composition};
use crate::optics::{self, InterferometerMatrix};
use crate::transition::{self, TransitionError};

/// Default absolute threshold under which a probability counts as
/// suppressed. Double-precision cancellation of O(1) amplitudes leaves
/// residue well under 1e-15, so 1e-12 separates cleanly.
pub const DEFAULT_SUPPRESSION_THRESHOLD: f64 = 1e-12;

/// A selection rule that predicted a suppression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleTag {
    /// Cyclic selection rule for balanced outputs of the three-port Fourier
    /// interferometer.
    Z3Balanced,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTag::Z3Balanced => write!(f, "z3-balanced"),
        }
    }
}

/// One suppressed transition found by a scan.
#[derive(Clone, Debug)]
pub struct SuppressionRecord {
    pub input: Composition,
    pub output: Composition,
    pub probability: f64,
    pub predicted_by_rule: Option<RuleTag>,
}

/// Verdict of a selection rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RulePrediction {
    Allowed,
    Suppressed,
}

/// Selection rule for balanced outputs c = (d, d, d) of the three-port
/// Fourier interferometer: the transition from input n is suppressed unless
/// 2*n_1 + n_2 = 0 (mod 3), in the 1-based port convention of
/// [`optics::fourier`].
pub fn z3_balanced_rule(n: &Composition) -> RulePrediction {
    assert_eq!(n.k(), 3, "the cyclic rule applies to three ports");
    if (2 * n.count(0) + n.count(1)).is_multiple_of(3) {
        RulePrediction::Allowed
    } else {
        RulePrediction::Suppressed
    }
}

fn is_fourier_tritter(u: &InterferometerMatrix) -> bool {
    if u.k() != 3 {
        return false;
    }
    let reference = optics::fourier(3);
    u.entries()
        .iter()
        .zip(reference.entries())
        .all(|(a, b)| (a - b).norm() < 1e-12)
}

fn is_balanced(c: &Composition) -> bool {
    c.counts().iter().all(|&x| x == c.count(0))
}

/// Scans every output composition of input `n` and returns those whose
/// bosonic probability falls below `threshold`, in the colexicographic
/// output order. For the three-port Fourier matrix, balanced-output hits
/// that the cyclic rule predicts are tagged.
pub fn scan_suppressed(
    u: &InterferometerMatrix,
    n: &Composition,
    threshold: f64,
) -> Result<Vec<SuppressionRecord>, TransitionError> {
    let tag_rule = is_fourier_tritter(u);
    let mut records = Vec::new();
    for c in combinat::enumerate_compositions(n.total(), u.k()) {
        let p = transition::p_quantum(u, n, &c)?.probability;
        if p < threshold {
            let predicted_by_rule = (tag_rule
                && is_balanced(&c)
                && z3_balanced_rule(n) == RulePrediction::Suppressed)
                .then_some(RuleTag::Z3Balanced);
            records.push(SuppressionRecord {
                input: n.clone(),
                output: c,
                probability: p,
                predicted_by_rule,
            });
        }
    }
    Ok(records)
}

//! Transition probabilities for bosons, distinguishable particles, and
//! fermions, all from one enumeration of routing classes.
//!
//! Every probability has the shape
//!
//! ```text
//!   P = (input prefactor) * (output prefactor) * |combined amplitude|^2
//! ```
//!
//! where the combined amplitude averages the per-class amplitudes under the
//! multivariate hypergeometric weights: coherently for bosons, coherently
//! with permutation signs for fermions, and incoherently (squared moduli)
//! for distinguishable particles. Coherent sums accumulate in the fixed
//! enumeration order of [`crate::combinat`], so results are reproducible
//! bit for bit.

use num_complex::Complex64;
use thiserror::Error;

use crate::combinat::{
    self, BigCount, CombinatError, Composition, RoutingMatrix,
};
use crate::optics::InterferometerMatrix;

#[derive(Debug, Error)]
pub enum TransitionError {
    #[error("composition has {composition_k} ports but the matrix has {matrix_k}")]
    PortMismatch {
        composition_k: usize,
        matrix_k: usize,
    },
    #[error("input carries {input} photons but output carries {output}")]
    PhotonMismatch { input: u32, output: u32 },
    #[error("fermionic occupation exceeds 1 in ({0})")]
    FermionCollision(Composition),
    #[error(transparent)]
    Capacity(#[from] CombinatError),
    #[error("quantum-to-classical ratio is undefined: the classical probability is zero")]
    UndefinedRatio,
}

/// Which particle statistics combine the routing-class amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatisticsKind {
    Boson,
    Distinguishable,
    Fermion,
}

impl StatisticsKind {
    pub fn label(self) -> &'static str {
        match self {
            StatisticsKind::Boson => "boson",
            StatisticsKind::Distinguishable => "distinguishable",
            StatisticsKind::Fermion => "fermion",
        }
    }
}

/// A transition probability together with its routing-class decomposition.
#[derive(Clone, Debug)]
pub struct TransitionReport {
    pub kind: StatisticsKind,
    pub probability: f64,
    /// Weighted amplitude sum; carries the fermionic signs for fermions.
    pub coherent_sum: Complex64,
    /// Weighted sum of squared amplitude moduli.
    pub incoherent_sum: f64,
    pub class_count: usize,
    /// Multinomial coefficient of the input composition.
    pub input_prefactor: BigCount,
    /// Multinomial coefficient of the output composition.
    pub output_prefactor: BigCount,
    /// |coherent|^2 / incoherent, in [0, 1] by Jensen; `None` when the
    /// incoherent sum vanishes.
    pub interference_factor: Option<f64>,
    /// Quantum-to-classical ratio: input prefactor times the interference
    /// factor; `None` where the classical probability is zero.
    pub ratio: Option<f64>,
}

/// Product of single-photon scattering amplitudes prescribed by a routing
/// matrix: prod_ij U_ij^(J_ij). The empty product is 1.
pub fn amplitude(u: &InterferometerMatrix, j: &RoutingMatrix) -> Complex64 {
    debug_assert_eq!(u.k(), j.k());
    let mut acc = Complex64::new(1.0, 0.0);
    for row in 0..j.k() {
        for col in 0..j.k() {
            for _ in 0..j.entry(row, col) {
                acc *= u.entry(row, col);
            }
        }
    }
    acc
}

fn check_margins(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> Result<(), TransitionError> {
    for comp in [n, c] {
        if comp.k() != u.k() {
            return Err(TransitionError::PortMismatch {
                composition_k: comp.k(),
                matrix_k: u.k(),
            });
        }
    }
    if n.total() != c.total() {
        return Err(TransitionError::PhotonMismatch {
            input: n.total(),
            output: c.total(),
        });
    }
    Ok(())
}

struct ClassSums {
    coherent: Complex64,
    incoherent: f64,
    class_count: usize,
}

fn accumulate(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
    sign: impl Fn(&RoutingMatrix) -> f64,
) -> Result<ClassSums, TransitionError> {
    let weighted = combinat::hypergeometric_weights(n, c)?;
    let mut coherent = Complex64::new(0.0, 0.0);
    let mut incoherent = 0.0;
    for (j, w) in &weighted {
        let a = amplitude(u, j);
        coherent += sign(j) * w * a;
        incoherent += w * a.norm_sqr();
    }
    Ok(ClassSums {
        coherent,
        incoherent,
        class_count: weighted.len(),
    })
}

fn report(
    kind: StatisticsKind,
    n: &Composition,
    c: &Composition,
    sums: ClassSums,
) -> Result<TransitionReport, TransitionError> {
    let m = n.total();
    let input_prefactor = combinat::multinomial(m, n)?;
    let output_prefactor = combinat::multinomial(m, c)?;
    let coherent_power = sums.coherent.norm_sqr();
    let probability = match kind {
        StatisticsKind::Boson | StatisticsKind::Fermion => {
            input_prefactor.as_f64() * output_prefactor.as_f64() * coherent_power
        }
        StatisticsKind::Distinguishable => output_prefactor.as_f64() * sums.incoherent,
    };
    let interference_factor = (sums.incoherent > 0.0).then(|| coherent_power / sums.incoherent);
    let ratio = interference_factor.map(|f| input_prefactor.as_f64() * f);
    Ok(TransitionReport {
        kind,
        probability,
        coherent_sum: sums.coherent,
        incoherent_sum: sums.incoherent,
        class_count: sums.class_count,
        input_prefactor,
        output_prefactor,
        interference_factor,
        ratio,
    })
}

/// Bosonic transition probability: prefactors times the squared modulus of
/// the coherent weighted amplitude sum.
pub fn p_quantum(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> Result<TransitionReport, TransitionError> {
    check_margins(u, n, c)?;
    // Prefactors first, so capacity errors surface before enumeration.
    combinat::multinomial(n.total(), n)?;
    let sums = accumulate(u, n, c, |_| 1.0)?;
    report(StatisticsKind::Boson, n, c, sums)
}

/// Distinguishable-particle probability: the output multinomial times the
/// incoherent average of squared amplitudes.
pub fn p_classical(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> Result<TransitionReport, TransitionError> {
    check_margins(u, n, c)?;
    combinat::multinomial(n.total(), n)?;
    let sums = accumulate(u, n, c, |_| 1.0)?;
    report(StatisticsKind::Distinguishable, n, c, sums)
}

/// Sign of the permutation a collision-free routing matrix encodes: the
/// parity of inversions of the occupied-column sequence, read by occupied
/// row in ascending order.
fn permutation_sign(j: &RoutingMatrix) -> f64 {
    let mut cols = Vec::new();
    for row in 0..j.k() {
        for col in 0..j.k() {
            if j.entry(row, col) == 1 {
                cols.push(col);
            }
        }
    }
    let mut inversions = 0usize;
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            if cols[a] > cols[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Fermionic transition probability: the coherent sum with permutation
/// signs. Inputs and outputs must be collision-free (Pauli exclusion).
pub fn p_fermionic(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> Result<TransitionReport, TransitionError> {
    check_margins(u, n, c)?;
    for comp in [n, c] {
        if !comp.is_collision_free() {
            return Err(TransitionError::FermionCollision(comp.clone()));
        }
    }
    let sums = accumulate(u, n, c, permutation_sign)?;
    report(StatisticsKind::Fermion, n, c, sums)
}

/// Decomposition of the quantum-to-classical probability ratio.
#[derive(Clone, Debug)]
pub struct RatioDecomposition {
    /// Symmetrization prefactor: the input multinomial coefficient.
    pub prefactor: BigCount,
    /// Jensen factor |sum w a|^2 / sum w |a|^2, in [0, 1].
    pub interference_factor: f64,
    /// The full ratio, prefactor times interference factor.
    pub ratio: f64,
}

/// Quantum-to-classical ratio split into its symmetrization prefactor and
/// interference factor. Errors with [`TransitionError::UndefinedRatio`]
/// where the classical probability vanishes.
pub fn qc_ratio(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> Result<RatioDecomposition, TransitionError> {
    check_margins(u, n, c)?;
    let sums = accumulate(u, n, c, |_| 1.0)?;
    if sums.incoherent <= 0.0 {
        return Err(TransitionError::UndefinedRatio);
    }
    let prefactor = combinat::multinomial(n.total(), n)?;
    let interference_factor = sums.coherent.norm_sqr() / sums.incoherent;
    Ok(RatioDecomposition {
        prefactor,
        interference_factor,
        ratio: prefactor.as_f64() * interference_factor,
    })
}

/// Full output distribution over all compositions of `m` into `k` parts, in
/// the colexicographic enumeration order.
#[derive(Clone, Debug)]
pub struct OutputDistribution {
    kind: StatisticsKind,
    entries: Vec<(Composition, f64)>,
}

impl OutputDistribution {
    pub fn kind(&self) -> StatisticsKind {
        self.kind
    }

    pub fn entries(&self) -> &[(Composition, f64)] {
        &self.entries
    }

    pub fn probability(&self, c: &Composition) -> Option<f64> {
        self.entries
            .iter()
            .find(|(comp, _)| comp == c)
            .map(|(_, p)| *p)
    }

    /// Sum of all probabilities; 1 within 1e-10 for a unitary matrix.
    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

/// Evaluates the output distribution of input `n` for the given statistics.
///
/// For fermions the input must be collision-free; outputs with a collision
/// get probability zero.
pub fn output_distribution(
    u: &InterferometerMatrix,
    n: &Composition,
    kind: StatisticsKind,
) -> Result<OutputDistribution, TransitionError> {
    if n.k() != u.k() {
        return Err(TransitionError::PortMismatch {
            composition_k: n.k(),
            matrix_k: u.k(),
        });
    }
    if kind == StatisticsKind::Fermion && !n.is_collision_free() {
        return Err(TransitionError::FermionCollision(n.clone()));
    }
    let m = n.total();
    let mut entries = Vec::new();
    for c in combinat::enumerate_compositions(m, u.k()) {
        let p = match kind {
            StatisticsKind::Boson => p_quantum(u, n, &c)?.probability,
            StatisticsKind::Distinguishable => p_classical(u, n, &c)?.probability,
            StatisticsKind::Fermion => {
                if c.is_collision_free() {
                    p_fermionic(u, n, &c)?.probability
                } else {
                    0.0
                }
            }
        };
        entries.push((c, p));
    }
    Ok(OutputDistribution { kind, entries })
}

/// Reporting-boundary clamp: rounding residue in [-1e-14, 0) becomes 0.
/// Never used inside computations.
pub fn clamp_probability(p: f64) -> f64 {
    if (-1e-14..0.0).contains(&p) {
        0.0
    } else {
        p
    }
}

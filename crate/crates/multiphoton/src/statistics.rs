//! Closed-form moments and cumulants, the two-port Krawtchouk structure,
//! the probability generating function, and brute-force oracles that
//! recompute everything directly from a distribution.
//!
//! The closed forms need only the transfer probabilities |U_ij|^2 (single
//! modes) or the matrix phases (cross modes); the brute-force versions sum
//! over a full [`OutputDistribution`]. Tests hold the two routes together.

use thiserror::Error;

use crate::combinat::{self, CombinatError, Composition};
use crate::optics::InterferometerMatrix;
use crate::transition::{self, OutputDistribution, StatisticsKind, TransitionError};

#[derive(Debug, Error)]
pub enum StatisticsError {
    #[error(transparent)]
    Capacity(#[from] CombinatError),
    #[error(transparent)]
    Transition(#[from] TransitionError),
}

/// Shared data for the two-port Krawtchouk machinery: photon number `m`,
/// transmittance `t`, and the derived reflectance.
#[derive(Clone, Copy, Debug)]
pub struct KrawtchoukContext {
    m: u32,
    t: f64,
    r: f64,
}

impl KrawtchoukContext {
    pub fn new(m: u32, t: f64) -> Self {
        assert!((0.0..=1.0).contains(&t), "transmittance out of range");
        KrawtchoukContext { m, t, r: 1.0 - t }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Squared norm h_n = C(m, n) (TR)^n of the n-th Krawtchouk function.
    pub fn squared_norm(&self, n: u32) -> f64 {
        binom_f64(self.m, n) * (self.t * self.r).powi(n as i32)
    }

    /// Binomial weight P_0(c) = C(m, c) T^(m-c) R^c: the distribution with
    /// all photons entering the first port.
    pub fn weight(&self, c: u32) -> f64 {
        binom_f64(self.m, c)
            * self.t.powi((self.m - c) as i32)
            * self.r.powi(c as i32)
    }
}

fn binom_f64(n: u32, r: u32) -> f64 {
    combinat::binomial(n, r)
        .expect("binomials up to m <= 30 fit comfortably in 128 bits")
        .as_f64()
}

/// Krawtchouk coefficient g_n(c) = [s^n] (1 + Ts)^c (1 - Rs)^(m-c), by
/// convolving the two binomial expansions.
pub fn krawtchouk_g(ctx: &KrawtchoukContext, n: u32, c: u32) -> f64 {
    assert!(n <= ctx.m && c <= ctx.m, "indices must lie in 0..=m");
    let lo = n.saturating_sub(ctx.m - c);
    let hi = n.min(c);
    let mut acc = 0.0;
    for a in lo..=hi {
        let b = n - a;
        let sign = if b.is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += binom_f64(c, a)
            * ctx.t.powi(a as i32)
            * binom_f64(ctx.m - c, b)
            * ctx.r.powi(b as i32)
            * sign;
    }
    acc
}

/// Two-port transition probability as the squared orthonormal Krawtchouk
/// function: P_n(c) = P_0(c) g_n(c)^2 / h_n. Matches the routing-class
/// evaluation on a beam splitter with the same transmittance.
pub fn p_via_krawtchouk(ctx: &KrawtchoukContext, n: u32, c: u32) -> f64 {
    let g = krawtchouk_g(ctx, n, c);
    ctx.weight(c) * g * g / ctx.squared_norm(n)
}

/// Probability generating function G_n(s) = sum_c P_n(c) s^c, evaluated in
/// closed form by extracting the [u^n v^n] coefficient of
/// [T(1-Ru)(1-Rv) + sR(1+Tu)(1+Tv)]^m and dividing by h_n.
pub fn pgf_value(ctx: &KrawtchoukContext, n: u32, s: f64) -> f64 {
    let (t, r, m) = (ctx.t, ctx.r, ctx.m as usize);
    let n = n as usize;
    // The base is bilinear in (u, v): f00 + f10 u + f01 v + f11 uv.
    let f00 = t + s * r;
    let f10 = s * r * t - t * r;
    let f01 = f10;
    let f11 = t * r * r + s * r * t * t;
    let dim = m + 1;
    let mut poly = vec![0.0f64; dim * dim];
    poly[0] = 1.0;
    let mut scratch = vec![0.0f64; dim * dim];
    for _ in 0..m {
        scratch.iter_mut().for_each(|x| *x = 0.0);
        for a in 0..dim {
            for b in 0..dim {
                let coeff = poly[a * dim + b];
                if coeff == 0.0 {
                    continue;
                }
                scratch[a * dim + b] += f00 * coeff;
                if a + 1 < dim {
                    scratch[(a + 1) * dim + b] += f10 * coeff;
                }
                if b + 1 < dim {
                    scratch[a * dim + b + 1] += f01 * coeff;
                }
                if a + 1 < dim && b + 1 < dim {
                    scratch[(a + 1) * dim + b + 1] += f11 * coeff;
                }
            }
        }
        std::mem::swap(&mut poly, &mut scratch);
    }
    poly[n * dim + n] / ctx.squared_norm(n as u32)
}

fn falling(x: f64, r: u32) -> f64 {
    (0..r).map(|i| x - i as f64).product()
}

fn factorial_moment_with_coeff(
    u: &InterferometerMatrix,
    n: &Composition,
    mode: usize,
    r: u32,
    squared: bool,
) -> Result<f64, CombinatError> {
    assert_eq!(n.k(), u.k(), "composition must match the port count");
    assert!(mode < u.k(), "mode index out of range");
    assert!(r >= 1, "moment order must be at least 1");
    let k = u.k();
    let mut acc = 0.0;
    for q in combinat::enumerate_compositions(r, k) {
        let coeff = combinat::multinomial(r, &q)?.as_f64();
        let coeff = if squared { coeff * coeff } else { coeff };
        let mut term = coeff;
        for i in 0..k {
            let qi = q.count(i);
            if qi == 0 {
                continue;
            }
            term *= u.probability(i, mode).powi(qi as i32) * falling(n.count(i) as f64, qi);
            if term == 0.0 {
                break;
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// Closed-form bosonic factorial moment E[c_mode^(r)]: a sum over
/// compositions q of r with *squared* multinomial coefficients,
/// prod_i |U_i,mode|^(2 q_i) n_i^(q_i).
pub fn factorial_moment_closed(
    u: &InterferometerMatrix,
    n: &Composition,
    mode: usize,
    r: u32,
) -> Result<f64, CombinatError> {
    factorial_moment_with_coeff(u, n, mode, r, true)
}

/// Classical (distinguishable-particle) counterpart: identical except the
/// multinomial coefficient enters unsquared.
pub fn factorial_moment_classical(
    u: &InterferometerMatrix,
    n: &Composition,
    mode: usize,
    r: u32,
) -> Result<f64, CombinatError> {
    factorial_moment_with_coeff(u, n, mode, r, false)
}

/// Brute-force factorial moments r = 1..=r_max from a distribution:
/// sum_c P(c) * c_mode (c_mode - 1) ... (c_mode - r + 1).
pub fn moments_bruteforce(dist: &OutputDistribution, mode: usize, r_max: u32) -> Vec<f64> {
    (1..=r_max)
        .map(|r| {
            dist.entries()
                .iter()
                .map(|(c, p)| p * falling(c.count(mode) as f64, r))
                .sum()
        })
        .collect()
}

/// Quantum and classical values of a cross-mode second moment
/// E[c_j c_l]; the quantum value adds the phase-sensitive coherence terms.
#[derive(Clone, Copy, Debug)]
pub struct CrossMoment {
    pub quantum: f64,
    pub classical: f64,
}

/// E[c_j c_l] for two distinct output modes, per particle statistics.
pub fn cross_moment(
    u: &InterferometerMatrix,
    n: &Composition,
    mode_j: usize,
    mode_l: usize,
) -> CrossMoment {
    assert_ne!(mode_j, mode_l, "cross moment needs two distinct modes");
    assert_eq!(n.k(), u.k(), "composition must match the port count");
    let k = u.k();
    let mut classical = 0.0;
    let mut coherence = 0.0;
    for i in 0..k {
        let ni = n.count(i) as f64;
        classical += u.probability(i, mode_j) * u.probability(i, mode_l) * falling(ni, 2);
        for i2 in 0..k {
            if i2 == i {
                continue;
            }
            let ni2 = n.count(i2) as f64;
            classical += u.probability(i, mode_j) * u.probability(i2, mode_l) * ni * ni2;
            let phase_term = u.entry(i, mode_j)
                * u.entry(i2, mode_j).conj()
                * u.entry(i2, mode_l)
                * u.entry(i, mode_l).conj();
            coherence += phase_term.re * ni * ni2;
        }
    }
    CrossMoment {
        quantum: classical + coherence,
        classical,
    }
}

/// Covariances Cov(c_j, c_l) for both statistics, from the cross moments
/// and the shared means.
pub fn covariance(
    u: &InterferometerMatrix,
    n: &Composition,
    mode_j: usize,
    mode_l: usize,
) -> CrossMoment {
    let cm = cross_moment(u, n, mode_j, mode_l);
    let mean = |mode: usize| -> f64 {
        (0..u.k())
            .map(|i| u.probability(i, mode) * n.count(i) as f64)
            .sum()
    };
    let product = mean(mode_j) * mean(mode_l);
    CrossMoment {
        quantum: cm.quantum - product,
        classical: cm.classical - product,
    }
}

/// Converts factorial moments f_r = E[c^(r)], r = 1..4, into cumulants
/// kappa_1..kappa_4 via raw moments (Stirling numbers of the second kind).
pub fn cumulants_from_factorial_moments(f: &[f64; 4]) -> [f64; 4] {
    let m1 = f[0];
    let m2 = f[0] + f[1];
    let m3 = f[0] + 3.0 * f[1] + f[2];
    let m4 = f[0] + 7.0 * f[1] + 6.0 * f[2] + f[3];
    let k1 = m1;
    let k2 = m2 - m1 * m1;
    let k3 = m3 - 3.0 * m2 * m1 + 2.0 * m1.powi(3);
    let k4 = m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1.powi(4);
    [k1, k2, k3, k4]
}

/// Cumulants kappa_1..kappa_4 of one output mode.
///
/// Boson and distinguishable statistics come from the closed-form factorial
/// moments; fermions have no closed form here and are summed brute force
/// from the full distribution.
pub fn cumulants(
    u: &InterferometerMatrix,
    n: &Composition,
    mode: usize,
    kind: StatisticsKind,
) -> Result<[f64; 4], StatisticsError> {
    let f = match kind {
        StatisticsKind::Boson => closed_moments(u, n, mode, true)?,
        StatisticsKind::Distinguishable => closed_moments(u, n, mode, false)?,
        StatisticsKind::Fermion => {
            let dist = transition::output_distribution(u, n, StatisticsKind::Fermion)?;
            let v = moments_bruteforce(&dist, mode, 4);
            [v[0], v[1], v[2], v[3]]
        }
    };
    Ok(cumulants_from_factorial_moments(&f))
}

fn closed_moments(
    u: &InterferometerMatrix,
    n: &Composition,
    mode: usize,
    squared: bool,
) -> Result<[f64; 4], CombinatError> {
    let mut f = [0.0; 4];
    for (idx, slot) in f.iter_mut().enumerate() {
        *slot = factorial_moment_with_coeff(u, n, mode, idx as u32 + 1, squared)?;
    }
    Ok(f)
}

/// Cumulants recomputed brute force from a distribution, for cross-checks.
pub fn cumulants_bruteforce(dist: &OutputDistribution, mode: usize) -> [f64; 4] {
    let v = moments_bruteforce(dist, mode, 4);
    cumulants_from_factorial_moments(&[v[0], v[1], v[2], v[3]])
}

/// Closed-form two-port third cumulant TR(R - T)(2n - m); identical for
/// bosons and distinguishable particles.
pub fn beam_splitter_kappa3(m: u32, n: u32, t: f64) -> f64 {
    let r = 1.0 - t;
    t * r * (r - t) * (2.0 * n as f64 - m as f64)
}

/// Closed-form two-port fourth-cumulant difference (quantum minus
/// classical): 2TR n(m-n) [1 - 3 sigma TR] with sigma = n(m-n) + m + 3.
pub fn beam_splitter_kappa4_excess(m: u32, n: u32, t: f64) -> f64 {
    let r = 1.0 - t;
    let spread = (n * (m - n)) as f64;
    let sigma = spread + m as f64 + 3.0;
    2.0 * t * r * spread * (1.0 - 3.0 * sigma * t * r)
}

/// Side-by-side closed-form moment summary for one output mode.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub mode: usize,
    pub factorial_moments_quantum: [f64; 4],
    pub factorial_moments_classical: [f64; 4],
    pub mean: f64,
    pub variance_quantum: f64,
    pub variance_classical: f64,
    pub cumulants_quantum: [f64; 4],
    pub cumulants_classical: [f64; 4],
}

pub fn moment_report(
    u: &InterferometerMatrix,
    n: &Composition,
    mode: usize,
) -> Result<MomentReport, StatisticsError> {
    let fq = closed_moments(u, n, mode, true)?;
    let fc = closed_moments(u, n, mode, false)?;
    let kq = cumulants_from_factorial_moments(&fq);
    let kc = cumulants_from_factorial_moments(&fc);
    Ok(MomentReport {
        mode,
        factorial_moments_quantum: fq,
        factorial_moments_classical: fc,
        mean: fq[0],
        variance_quantum: kq[1],
        variance_classical: kc[1],
        cumulants_quantum: kq,
        cumulants_classical: kc,
    })
}

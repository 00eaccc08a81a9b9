//! Acceptance suite: every release gate as one test, each printing its own
//! pass line (visible with `cargo test --test acceptance -- --nocapture`).

use multiphoton::combinat::{enumerate_compositions, enumerate_routing_matrices, Composition};
use multiphoton::optics::{beam_splitter, fourier, random_unitary};
use multiphoton::oracle::{determinant, p_via_permanent, scattering_submatrix};
use multiphoton::statistics::{
    beam_splitter_kappa3, beam_splitter_kappa4_excess, covariance, cumulants_bruteforce,
    factorial_moment_classical, factorial_moment_closed, krawtchouk_g, moment_report,
    moments_bruteforce, p_via_krawtchouk, pgf_value, KrawtchoukContext,
};
use multiphoton::suppress::{scan_suppressed, DEFAULT_SUPPRESSION_THRESHOLD};
use multiphoton::transition::{
    output_distribution, p_classical, p_fermionic, p_quantum, qc_ratio, StatisticsKind,
};

fn comp(counts: &[u32]) -> Composition {
    Composition::new(counts.to_vec())
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Two-port probability P(c | n) on a beam splitter, through compositions.
fn bs_p(t: f64, m: u32, n: u32, c: u32) -> f64 {
    let u = beam_splitter(t).unwrap();
    p_quantum(&u, &comp(&[n, m - n]), &comp(&[c, m - c]))
        .unwrap()
        .probability
}

#[test]
fn criterion_01_three_photon_family_table() {
    // Numerical grid at the balanced splitter, all 16 entries.
    let eighth = |x: f64| x / 8.0;
    let balanced: [[f64; 4]; 4] = [
        [eighth(1.0), eighth(3.0), eighth(3.0), eighth(1.0)],
        [eighth(3.0), eighth(1.0), eighth(1.0), eighth(3.0)],
        [eighth(3.0), eighth(1.0), eighth(1.0), eighth(3.0)],
        [eighth(1.0), eighth(3.0), eighth(3.0), eighth(1.0)],
    ];
    for n in 0..=3u32 {
        for c in 0..=3u32 {
            let got = bs_p(0.5, 3, n, c);
            let want = balanced[n as usize][c as usize];
            assert!((got - want).abs() < 1e-12, "T=1/2 n={n} c={c}: {got} vs {want}");
        }
    }
    // Symbolic rows evaluated at four transmittances.
    let symbolic = |t: f64, n: u32, c: u32| -> f64 {
        let r = 1.0 - t;
        let row1 = [
            3.0 * t * t * r,
            t * (2.0 * r - t).powi(2),
            r * (r - 2.0 * t).powi(2),
            3.0 * t * r * r,
        ];
        let row0 = [t.powi(3), 3.0 * t * t * r, 3.0 * t * r * r, r.powi(3)];
        match n {
            0 => row0[c as usize],
            1 => row1[c as usize],
            2 => row1[(3 - c) as usize],
            3 => row0[(3 - c) as usize],
            _ => unreachable!(),
        }
    };
    for t in [0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0] {
        for n in 0..=3u32 {
            for c in 0..=3u32 {
                let got = bs_p(t, 3, n, c);
                let want = symbolic(t, n, c);
                assert!((got - want).abs() < 1e-12, "T={t} n={n} c={c}: {got} vs {want}");
            }
        }
    }
    println!("criterion 01 (three-photon family table): PASS");
}

#[test]
fn criterion_02_six_photon_family_figure() {
    let expected: [[f64; 7]; 4] = [
        [0.015625, 0.09375, 0.234375, 0.3125, 0.234375, 0.09375, 0.015625],
        [0.09375, 0.25, 0.15625, 0.0, 0.15625, 0.25, 0.09375],
        [0.234375, 0.15625, 0.015625, 0.1875, 0.015625, 0.15625, 0.234375],
        [0.3125, 0.0, 0.1875, 0.0, 0.1875, 0.0, 0.3125],
    ];
    for n in 0..=3u32 {
        for c in 0..=6u32 {
            let got = bs_p(0.5, 6, n, c);
            let want = expected[n as usize][c as usize];
            assert!((got - want).abs() < 1e-12, "n={n} c={c}: {got} vs {want}");
        }
    }
    println!("criterion 02 (six-photon family figure): PASS");
}

#[test]
fn criterion_03_hong_ou_mandel_dip() {
    let u = beam_splitter(0.5).unwrap();
    let n = comp(&[1, 1]);
    let split = p_quantum(&u, &n, &comp(&[1, 1])).unwrap().probability;
    assert!(split < 1e-12, "split output not suppressed: {split}");
    let classical = p_classical(&u, &n, &comp(&[1, 1])).unwrap().probability;
    assert!((classical - 0.5).abs() < 1e-12);
    let bunched = qc_ratio(&u, &n, &comp(&[2, 0])).unwrap();
    assert_eq!(bunched.ratio, 2.0, "bunched-output ratio must be exactly 2");
    println!("criterion 03 (Hong-Ou-Mandel dip): PASS");
}

#[test]
fn criterion_04_interference_zeros() {
    assert!(bs_p(1.0 / 3.0, 3, 1, 2) < 1e-12);
    assert!(bs_p(2.0 / 3.0, 3, 1, 1) < 1e-12);
    println!("criterion 04 (interference zeros at T=1/3 and T=2/3): PASS");
}

#[test]
fn criterion_05_fourier_tritter() {
    let u = fourier(3);
    let ones = comp(&[1, 1, 1]);
    let q = p_quantum(&u, &ones, &ones).unwrap().probability;
    assert!((q - 1.0 / 3.0).abs() < 1e-12, "balanced transition: {q}");
    let cl = p_classical(&u, &ones, &ones).unwrap().probability;
    assert!((cl - 2.0 / 9.0).abs() < 1e-12, "classical value: {cl}");
    let ratio = qc_ratio(&u, &ones, &ones).unwrap().ratio;
    assert!((ratio - 1.5).abs() < 1e-12, "ratio: {ratio}");

    let p = p_quantum(&u, &comp(&[2, 1, 0]), &ones).unwrap().probability;
    assert!(p < 1e-12, "(2,1,0) -> (1,1,1) must be suppressed: {p}");

    for c in [[2, 1, 1], [1, 2, 1], [1, 1, 2]] {
        let p = p_quantum(&u, &comp(&[2, 2, 0]), &comp(&c)).unwrap().probability;
        assert!(p < 1e-12, "(2,2,0) -> {c:?} must be suppressed: {p}");
    }
    println!("criterion 05 (Fourier tritter values and suppressions): PASS");
}

#[test]
fn criterion_06_oracle_equivalence_grid() {
    let mut max_dev: f64 = 0.0;
    let mut max_fermion_dev: f64 = 0.0;
    for k in 2..=4usize {
        for seed in 0..20u64 {
            let u = random_unitary(k, seed);
            for m in 1..=5u32 {
                let comps: Vec<Composition> = enumerate_compositions(m, k).collect();
                for n in &comps {
                    for c in &comps {
                        let routing = p_quantum(&u, n, c).unwrap().probability;
                        let permanent = p_via_permanent(&u, n, c).unwrap();
                        max_dev = max_dev.max((routing - permanent).abs());
                    }
                }
                if m as usize <= k {
                    for n in comps.iter().filter(|x| x.is_collision_free()) {
                        for c in comps.iter().filter(|x| x.is_collision_free()) {
                            let routing = p_fermionic(&u, n, c).unwrap().probability;
                            let det = determinant(&scattering_submatrix(&u, n, c));
                            max_fermion_dev =
                                max_fermion_dev.max((routing - det.norm_sqr()).abs());
                        }
                    }
                }
            }
        }
    }
    assert!(max_dev < 1e-10, "max |P_routing - P_permanent| = {max_dev:e}");
    assert!(max_fermion_dev < 1e-10, "max fermion deviation = {max_fermion_dev:e}");
    println!(
        "criterion 06 (oracle equivalence, max dev {max_dev:.2e} / fermion {max_fermion_dev:.2e}): PASS"
    );
}

#[test]
fn criterion_07_normalization_and_symmetries() {
    // Normalization for every statistics kind over random unitaries.
    for k in 2..=4usize {
        for seed in [1u64, 2, 3] {
            let u = random_unitary(k, seed);
            for m in 1..=5u32 {
                for n in enumerate_compositions(m, k) {
                    for kind in [StatisticsKind::Boson, StatisticsKind::Distinguishable] {
                        let d = output_distribution(&u, &n, kind).unwrap();
                        assert!(
                            (d.total() - 1.0).abs() < 1e-10,
                            "k={k} seed={seed} {n:?} {kind:?}: {}",
                            d.total()
                        );
                        assert!(d.entries().iter().all(|(_, p)| *p >= -1e-14));
                    }
                    if m as usize <= k && n.is_collision_free() {
                        let d = output_distribution(&u, &n, StatisticsKind::Fermion).unwrap();
                        assert!((d.total() - 1.0).abs() < 1e-10, "fermion norm: {}", d.total());
                    }
                }
            }
        }
    }
    // Transpose symmetry P_U(c|n) = P_{U^T}(n|c).
    for k in 2..=4usize {
        for seed in [0u64, 1] {
            let u = random_unitary(k, seed);
            let ut = u.transposed();
            for m in 1..=4u32 {
                let comps: Vec<Composition> = enumerate_compositions(m, k).collect();
                for n in &comps {
                    for c in &comps {
                        let forward = p_quantum(&u, n, c).unwrap().probability;
                        let reverse = p_quantum(&ut, c, n).unwrap().probability;
                        assert!(
                            (forward - reverse).abs() < 1e-12,
                            "k={k} seed={seed} {n:?}->{c:?}"
                        );
                    }
                }
            }
        }
    }
    // Beam-splitter port swap P_n(c) = P_{m-n}(m-c).
    for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for m in 1..=6u32 {
            for n in 0..=m {
                for c in 0..=m {
                    let a = bs_p(t, m, n, c);
                    let b = bs_p(t, m, m - n, m - c);
                    assert!((a - b).abs() < 1e-12, "T={t} m={m} n={n} c={c}");
                }
            }
        }
    }
    println!("criterion 07 (normalization, transpose and port-swap symmetry): PASS");
}

#[test]
fn criterion_08_factorial_moments() {
    // Closed forms against brute-force sums, both statistics, r <= 4.
    for k in 2..=4usize {
        for seed in [5u64, 11] {
            let u = random_unitary(k, seed);
            for m in 1..=6u32 {
                for n in enumerate_compositions(m, k) {
                    let boson = output_distribution(&u, &n, StatisticsKind::Boson).unwrap();
                    let classical =
                        output_distribution(&u, &n, StatisticsKind::Distinguishable).unwrap();
                    for mode in [0, k - 1] {
                        let brute_q = moments_bruteforce(&boson, mode, 4);
                        let brute_c = moments_bruteforce(&classical, mode, 4);
                        for r in 1..=4u32 {
                            let closed_q = factorial_moment_closed(&u, &n, mode, r).unwrap();
                            let closed_c = factorial_moment_classical(&u, &n, mode, r).unwrap();
                            assert!(
                                rel_close(closed_q, brute_q[r as usize - 1], 1e-10),
                                "boson k={k} seed={seed} n={n:?} mode={mode} r={r}: {closed_q} vs {}",
                                brute_q[r as usize - 1]
                            );
                            assert!(
                                rel_close(closed_c, brute_c[r as usize - 1], 1e-10),
                                "classical k={k} seed={seed} n={n:?} mode={mode} r={r}"
                            );
                        }
                    }
                }
            }
        }
    }
    // Two-port variance formula TR[m + 2n(m-n)].
    for m in 1..=8u32 {
        for step in 1..=9u32 {
            let t = step as f64 / 10.0;
            let u = beam_splitter(t).unwrap();
            for n in 0..=m {
                let report = moment_report(&u, &comp(&[n, m - n]), 0).unwrap();
                let want = t * (1.0 - t) * (m as f64 + 2.0 * (n * (m - n)) as f64);
                assert!(
                    (report.variance_quantum - want).abs() < 1e-10,
                    "m={m} T={t} n={n}: {} vs {want}",
                    report.variance_quantum
                );
                let classical_want = m as f64 * t * (1.0 - t);
                assert!((report.variance_classical - classical_want).abs() < 1e-10);
            }
        }
    }
    // Fourier single-photon variance ratio is 2 for every port count.
    for k in 2..=5usize {
        let u = fourier(k);
        let report = moment_report(&u, &comp(&vec![1u32; k]), 0).unwrap();
        let ratio = report.variance_quantum / report.variance_classical;
        assert!((ratio - 2.0).abs() < 1e-12, "k={k}: {ratio}");
    }
    println!("criterion 08 (factorial moments and variance laws): PASS");
}

#[test]
fn criterion_09_covariances() {
    let bs = beam_splitter(0.5).unwrap();
    let cov = covariance(&bs, &comp(&[1, 1]), 0, 1);
    assert!((cov.quantum + 1.0).abs() < 1e-12);
    assert!((cov.classical + 0.5).abs() < 1e-12);
    for k in 3..=5usize {
        let u = fourier(k);
        let ones = comp(&vec![1u32; k]);
        let cov = covariance(&u, &ones, 0, k - 1);
        assert!(
            (cov.quantum + 2.0 / k as f64).abs() < 1e-12,
            "k={k}: quantum {}",
            cov.quantum
        );
        assert!(
            (cov.classical + 1.0 / k as f64).abs() < 1e-12,
            "k={k}: classical {}",
            cov.classical
        );
    }
    println!("criterion 09 (cross-mode covariances): PASS");
}

#[test]
fn criterion_10_cumulants() {
    // Two-port third cumulant is interference-invariant and matches the
    // closed form on the whole grid.
    for step in [1u32, 3, 5, 7, 9] {
        let t = step as f64 / 10.0;
        let u = beam_splitter(t).unwrap();
        for m in 1..=8u32 {
            for n in 0..=m {
                let input = comp(&[n, m - n]);
                let report = moment_report(&u, &input, 0).unwrap();
                let diff = report.cumulants_quantum[2] - report.cumulants_classical[2];
                assert!(diff.abs() < 1e-10, "T={t} m={m} n={n}: kappa3 diff {diff}");
                let closed = beam_splitter_kappa3(m, n, t);
                assert!((report.cumulants_quantum[2] - closed).abs() < 1e-10);
                // Fourth-cumulant difference against its closed form.
                let k4_diff = report.cumulants_quantum[3] - report.cumulants_classical[3];
                let k4_closed = beam_splitter_kappa4_excess(m, n, t);
                assert!(
                    (k4_diff - k4_closed).abs() < 1e-10,
                    "T={t} m={m} n={n}: {k4_diff} vs {k4_closed}"
                );
            }
        }
    }
    // Sign of the kurtosis departure at m = 2, n = 1.
    assert!(beam_splitter_kappa4_excess(2, 1, 0.5) < 0.0);
    assert!(beam_splitter_kappa4_excess(2, 1, 0.03) > 0.0);
    let u = beam_splitter(0.5).unwrap();
    let report = moment_report(&u, &comp(&[1, 1]), 0).unwrap();
    assert!(report.cumulants_quantum[3] - report.cumulants_classical[3] < 0.0);
    let u = beam_splitter(0.03).unwrap();
    let report = moment_report(&u, &comp(&[1, 1]), 0).unwrap();
    assert!(report.cumulants_quantum[3] - report.cumulants_classical[3] > 0.0);

    // Multiport: the third cumulant feels the interference, by 5(k-1)(k-2)/k^2
    // for single-photon Fourier inputs, via full distributions.
    for k in 3..=4usize {
        let u = fourier(k);
        let ones = comp(&vec![1u32; k]);
        let dq = output_distribution(&u, &ones, StatisticsKind::Boson).unwrap();
        let dc = output_distribution(&u, &ones, StatisticsKind::Distinguishable).unwrap();
        let diff = cumulants_bruteforce(&dq, 0)[2] - cumulants_bruteforce(&dc, 0)[2];
        let want = 5.0 * ((k - 1) * (k - 2)) as f64 / (k * k) as f64;
        assert!((diff - want).abs() < 1e-10, "k={k}: {diff} vs {want}");
    }
    println!("criterion 10 (cumulants): PASS");
}

#[test]
fn criterion_11_krawtchouk_identities() {
    // Orthogonality with respect to the binomial weight.
    for m in 1..=10u32 {
        for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let ctx = KrawtchoukContext::new(m, t);
            for n in 0..=m {
                for l in 0..=m {
                    let sum: f64 = (0..=m)
                        .map(|c| ctx.weight(c) * krawtchouk_g(&ctx, n, c) * krawtchouk_g(&ctx, l, c))
                        .sum();
                    let want = if n == l { ctx.squared_norm(n) } else { 0.0 };
                    assert!(
                        (sum - want).abs() < 1e-12,
                        "m={m} T={t} n={n} l={l}: {sum} vs {want}"
                    );
                }
            }
        }
    }
    // Squared orthonormal function equals the transition probability.
    for m in 1..=8u32 {
        for t in [0.2, 0.5, 0.8] {
            let ctx = KrawtchoukContext::new(m, t);
            for n in 0..=m {
                for c in 0..=m {
                    let via_k = p_via_krawtchouk(&ctx, n, c);
                    let via_r = bs_p(t, m, n, c);
                    assert!((via_k - via_r).abs() < 1e-12, "m={m} T={t} n={n} c={c}");
                }
            }
        }
    }
    // Generating function: normalization and pointwise values.
    for m in 1..=8u32 {
        for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let ctx = KrawtchoukContext::new(m, t);
            let u = beam_splitter(t).unwrap();
            for n in 0..=m {
                assert!((pgf_value(&ctx, n, 1.0) - 1.0).abs() < 1e-12, "m={m} T={t} n={n}");
                let dist =
                    output_distribution(&u, &comp(&[n, m - n]), StatisticsKind::Boson).unwrap();
                for s in [0.0f64, 0.5, 1.0, 2.0] {
                    let direct: f64 = dist
                        .entries()
                        .iter()
                        .map(|(c, p)| p * s.powi(c.count(0) as i32))
                        .sum();
                    let closed = pgf_value(&ctx, n, s);
                    assert!(
                        (closed - direct).abs() < 1e-10,
                        "m={m} T={t} n={n} s={s}: {closed} vs {direct}"
                    );
                }
            }
        }
    }
    println!("criterion 11 (Krawtchouk orthogonality, squared-function identity, PGF): PASS");
}

#[test]
fn criterion_12_routing_class_reduction() {
    let classes = enumerate_routing_matrices(&comp(&[5, 5]), &comp(&[5, 5]));
    assert_eq!(classes.len(), 6);
    println!("criterion 12 (routing-class count for ten photons): PASS");
}

#[test]
fn suppression_scans_are_oracle_confirmed() {
    // Companion check: every scan hit on the acceptance examples is below
    // threshold by the permanent route as well.
    let u = fourier(3);
    for n in [comp(&[2, 1, 0]), comp(&[2, 2, 0])] {
        let records = scan_suppressed(&u, &n, DEFAULT_SUPPRESSION_THRESHOLD).unwrap();
        assert!(!records.is_empty());
        for r in &records {
            let p = p_via_permanent(&u, &r.input, &r.output).unwrap();
            assert!(p < DEFAULT_SUPPRESSION_THRESHOLD);
        }
    }
    println!("companion (suppression scans oracle-confirmed): PASS");
}

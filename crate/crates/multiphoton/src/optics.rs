//! Interferometer matrices: constructors for the standard networks, a
//! unitarity check, seeded Haar-random sampling, and a JSON file format.

use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jsonfmt;

/// Default tolerance on max |U†U - I| entries.
pub const DEFAULT_UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum OpticsError {
    #[error("transmittance must lie in [0, 1], got {0}")]
    TransmittanceOutOfRange(f64),
    #[error("matrix is not unitary: max |U\u{2020}U - I| entry {deviation:.3e} exceeds tolerance {tolerance:.1e}")]
    NotUnitary { deviation: f64, tolerance: f64 },
    #[error("matrix file {path}: {message}")]
    Schema { path: String, message: String },
    #[error("matrix file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("matrix file {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

/// A `k×k` complex scattering matrix; entry `(i, j)` is the amplitude for a
/// photon entering port `i` to exit port `j`.
///
/// Instances are immutable after construction and safe to share.
#[derive(Clone, Debug, PartialEq)]
pub struct InterferometerMatrix {
    k: usize,
    entries: Vec<Complex64>, // row-major
}

impl InterferometerMatrix {
    /// Builds a matrix from row-major entries, rejecting it if it fails the
    /// unitarity check at [`DEFAULT_UNITARITY_TOL`].
    pub fn from_entries(k: usize, entries: Vec<Complex64>) -> Result<Self, OpticsError> {
        let m = Self::from_entries_unchecked(k, entries);
        let check = validate_unitary(&m, DEFAULT_UNITARITY_TOL);
        if check.pass {
            Ok(m)
        } else {
            Err(OpticsError::NotUnitary {
                deviation: check.max_deviation,
                tolerance: check.tolerance,
            })
        }
    }

    /// Builds a matrix without the unitarity check, for deliberately
    /// perturbed or non-unitary test inputs.
    pub fn from_entries_unchecked(k: usize, entries: Vec<Complex64>) -> Self {
        assert!(k >= 2, "port count must be at least 2");
        assert_eq!(entries.len(), k * k, "need {k}x{k} entries");
        InterferometerMatrix { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Single-photon transfer probability |U_ij|^2.
    pub fn probability(&self, i: usize, j: usize) -> f64 {
        self.entry(i, j).norm_sqr()
    }

    pub fn transposed(&self) -> InterferometerMatrix {
        let mut entries = vec![Complex64::new(0.0, 0.0); self.k * self.k];
        for i in 0..self.k {
            for j in 0..self.k {
                entries[j * self.k + i] = self.entry(i, j);
            }
        }
        InterferometerMatrix {
            k: self.k,
            entries,
        }
    }
}

/// Lossless beam splitter with transmittance `t_power` (the intensity
/// fraction T): `[[t, ir], [ir, t]]` with `t = sqrt(T)`, `r = sqrt(1-T)`.
pub fn beam_splitter(t_power: f64) -> Result<InterferometerMatrix, OpticsError> {
    if !(0.0..=1.0).contains(&t_power) {
        return Err(OpticsError::TransmittanceOutOfRange(t_power));
    }
    let t = t_power.sqrt();
    let r = (1.0 - t_power).sqrt();
    let ir = Complex64::new(0.0, r);
    let t = Complex64::new(t, 0.0);
    Ok(InterferometerMatrix::from_entries_unchecked(
        2,
        vec![t, ir, ir, t],
    ))
}

/// The `k`-port Fourier (DFT) interferometer, `U_ij = w^(ij)/sqrt(k)` with
/// `w = exp(2 pi i / k)` and ports indexed 1..k.
///
/// The 1-based index convention matters: selection rules on balanced
/// outputs are stated in terms of it (see [`crate::suppress`]).
pub fn fourier(k: usize) -> InterferometerMatrix {
    assert!(k >= 2, "port count must be at least 2");
    let scale = 1.0 / (k as f64).sqrt();
    let mut entries = Vec::with_capacity(k * k);
    for i in 1..=k {
        for j in 1..=k {
            let phase = TAU * ((i * j) % k) as f64 / k as f64;
            entries.push(Complex64::from_polar(scale, phase));
        }
    }
    InterferometerMatrix::from_entries_unchecked(k, entries)
}

/// Three-port interferometer from three mixing angles and one irreducible
/// phase, in the standard three-rotation parametrization. Unitary for any
/// parameter values.
pub fn tritter(theta_12: f64, theta_13: f64, theta_23: f64, phase: f64) -> InterferometerMatrix {
    let (s12, c12) = theta_12.sin_cos();
    let (s13, c13) = theta_13.sin_cos();
    let (s23, c23) = theta_23.sin_cos();
    let e_pos = Complex64::from_polar(1.0, phase);
    let e_neg = Complex64::from_polar(1.0, -phase);
    let re = |x: f64| Complex64::new(x, 0.0);
    let entries = vec![
        re(c12 * c13),
        re(s12 * c13),
        s13 * e_neg,
        re(-s12 * c23) - c12 * s23 * s13 * e_pos,
        re(c12 * c23) - s12 * s23 * s13 * e_pos,
        re(s23 * c13),
        re(s12 * s23) - c12 * c23 * s13 * e_pos,
        re(-c12 * s23) - s12 * c23 * s13 * e_pos,
        re(c23 * c13),
    ];
    InterferometerMatrix::from_entries_unchecked(3, entries)
}

/// Seeded Haar-random unitary: a complex Gaussian matrix orthonormalized
/// column by column with the positive-diagonal convention. Deterministic
/// for a fixed seed.
pub fn random_unitary(k: usize, seed: u64) -> InterferometerMatrix {
    assert!(k >= 2, "port count must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let col: Vec<Complex64> = (0..k)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, im)
            })
            .collect();
        cols.push(col);
    }
    // Modified Gram-Schmidt with one re-orthogonalization pass.
    for j in 0..k {
        let (done, rest) = cols.split_at_mut(j);
        let current = &mut rest[0];
        for _ in 0..2 {
            for prev in done.iter() {
                let proj: Complex64 = prev
                    .iter()
                    .zip(current.iter())
                    .map(|(p, c)| p.conj() * c)
                    .sum();
                for (c, p) in current.iter_mut().zip(prev.iter()) {
                    *c -= proj * p;
                }
            }
        }
        let norm: f64 = current.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in current.iter_mut() {
            *z /= norm;
        }
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); k * k];
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            entries[i * k + j] = z;
        }
    }
    InterferometerMatrix::from_entries_unchecked(k, entries)
}

/// Result of a unitarity check.
#[derive(Clone, Copy, Debug)]
pub struct UnitarityCheck {
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// Max-entry deviation of U†U from the identity, compared against `tol`.
pub fn validate_unitary(m: &InterferometerMatrix, tol: f64) -> UnitarityCheck {
    let k = m.k();
    let mut max_deviation: f64 = 0.0;
    for a in 0..k {
        for b in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..k {
                acc += m.entry(i, a).conj() * m.entry(i, b);
            }
            if a == b {
                acc -= Complex64::new(1.0, 0.0);
            }
            max_deviation = max_deviation.max(acc.norm());
        }
    }
    UnitarityCheck {
        pass: max_deviation <= tol,
        max_deviation,
        tolerance: tol,
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    k: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Writes a matrix as JSON: `{"k": .., "re": [[..]], "im": [[..]]}` with
/// floats at 17 significant digits so the file reparses bit-identically.
pub fn write_matrix(path: impl AsRef<Path>, m: &InterferometerMatrix) -> Result<(), OpticsError> {
    let path = path.as_ref();
    let k = m.k();
    let row = |i: usize, f: fn(Complex64) -> f64| (0..k).map(|j| f(m.entry(i, j))).collect();
    let file = MatrixFile {
        k,
        re: (0..k).map(|i| row(i, |z| z.re)).collect(),
        im: (0..k).map(|i| row(i, |z| z.im)).collect(),
    };
    let text = jsonfmt::to_string(&file).map_err(|source| OpticsError::Json {
        path: path.display().to_string(),
        source,
    })?;
    fs::write(path, text).map_err(|source| OpticsError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Reads a matrix file, checking the schema and unitarity at
/// [`DEFAULT_UNITARITY_TOL`].
pub fn read_matrix(path: impl AsRef<Path>) -> Result<InterferometerMatrix, OpticsError> {
    let m = read_matrix_unvalidated(&path)?;
    let check = validate_unitary(&m, DEFAULT_UNITARITY_TOL);
    if check.pass {
        Ok(m)
    } else {
        Err(OpticsError::NotUnitary {
            deviation: check.max_deviation,
            tolerance: check.tolerance,
        })
    }
}

/// Reads a matrix file without the unitarity check (schema still enforced),
/// for deliberately non-unitary test fixtures.
pub fn read_matrix_unvalidated(
    path: impl AsRef<Path>,
) -> Result<InterferometerMatrix, OpticsError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| OpticsError::Io {
        path: display.clone(),
        source,
    })?;
    let file: MatrixFile = serde_json::from_str(&text).map_err(|source| OpticsError::Json {
        path: display.clone(),
        source,
    })?;
    let schema_err = |message: String| OpticsError::Schema {
        path: display.clone(),
        message,
    };
    if file.k < 2 {
        return Err(schema_err(format!("k must be at least 2, got {}", file.k)));
    }
    for (name, part) in [("re", &file.re), ("im", &file.im)] {
        if part.len() != file.k {
            return Err(schema_err(format!(
                "'{name}' has {} rows, expected k = {}",
                part.len(),
                file.k
            )));
        }
        for (i, row) in part.iter().enumerate() {
            if row.len() != file.k {
                return Err(schema_err(format!(
                    "'{name}' row {i} has {} entries, expected k = {}",
                    row.len(),
                    file.k
                )));
            }
        }
    }
    let entries = (0..file.k)
        .flat_map(|i| (0..file.k).map(move |j| (i, j)))
        .map(|(i, j)| Complex64::new(file.re[i][j], file.im[i][j]))
        .collect();
    Ok(InterferometerMatrix::from_entries_unchecked(
        file.k, entries,
    ))
}

//! Independent ground truth for transition probabilities: scattering
//! submatrices, an exact-formula permanent (Ryser with Gray-code updates),
//! and an LU determinant. Shares no code with the routing-class evaluation
//! in [`crate::transition`].

use num_complex::Complex64;
use thiserror::Error;

use crate::combinat::Composition;
use crate::optics::InterferometerMatrix;

/// Practical cap on permanent evaluation; the Ryser loop is O(2^n * n).
pub const PERMANENT_SIZE_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("permanent supports matrices up to {PERMANENT_SIZE_CAP}x{PERMANENT_SIZE_CAP}, got {0}x{0}")]
    SizeCapExceeded(usize),
}

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            entries.extend(row);
        }
        SquareMatrix { n, entries }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        SquareMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn transposed(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self.entry(j, i))
    }
}

/// The m x m submatrix of `u` with row `i` repeated `n_i` times and column
/// `j` repeated `c_j` times, ports ascending, repeats consecutive.
pub fn scattering_submatrix(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> SquareMatrix {
    assert_eq!(n.k(), u.k(), "input composition must match the port count");
    assert_eq!(c.k(), u.k(), "output composition must match the port count");
    assert_eq!(n.total(), c.total(), "margins must share the photon total");
    let repeat = |comp: &Composition| -> Vec<usize> {
        comp.counts()
            .iter()
            .enumerate()
            .flat_map(|(port, &times)| std::iter::repeat_n(port, times as usize))
            .collect()
    };
    let rows = repeat(n);
    let cols = repeat(c);
    SquareMatrix::from_fn(rows.len(), |r, s| u.entry(rows[r], cols[s]))
}

/// Permanent by Ryser's formula with Gray-code column updates.
///
/// Exact formula evaluated in floating point; the empty matrix has
/// permanent 1.
pub fn permanent(m: &SquareMatrix) -> Result<Complex64, OracleError> {
    let n = m.n();
    if n > PERMANENT_SIZE_CAP {
        return Err(OracleError::SizeCapExceeded(n));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for g in 1u64..(1u64 << n) {
        let next = g ^ (g >> 1);
        let flipped = gray ^ next;
        let j = flipped.trailing_zeros() as usize;
        if next & flipped != 0 {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum += m.entry(i, j);
            }
        } else {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum -= m.entry(i, j);
            }
        }
        gray = next;
        let product: Complex64 = row_sums.iter().product();
        if gray.count_ones().is_multiple_of(2) {
            total += product;
        } else {
            total -= product;
        }
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(total * sign)
}

/// Determinant via LU decomposition with partial pivoting.
pub fn determinant(m: &SquareMatrix) -> Complex64 {
    let n = m.n();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut a = m.entries.clone();
    let mut sign = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&p, &q| {
                a[p * n + col]
                    .norm_sqr()
                    .total_cmp(&a[q * n + col].norm_sqr())
            })
            .unwrap();
        if a[pivot_row * n + col].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            sign = -sign;
        }
        let pivot = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            for j in col..n {
                let sub = factor * a[col * n + j];
                a[row * n + j] -= sub;
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).product::<Complex64>() * sign
}

/// Transition probability by the permanent route:
/// |perm(U_S)|^2 / (prod n_i! * prod c_j!).
pub fn p_via_permanent(
    u: &InterferometerMatrix,
    n: &Composition,
    c: &Composition,
) -> Result<f64, OracleError> {
    let sub = scattering_submatrix(u, n, c);
    let perm = permanent(&sub)?;
    let factorial = |x: u32| -> u128 { (1..=u128::from(x)).product::<u128>().max(1) };
    let denom: u128 = n
        .counts()
        .iter()
        .chain(c.counts())
        .map(|&x| factorial(x))
        .product();
    Ok(perm.norm_sqr() / denom as f64)
}

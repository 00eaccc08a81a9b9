//! Exact combinatorial primitives: compositions, multinomial coefficients,
//! routing-matrix enumeration over the transportation polytope, and the
//! multivariate hypergeometric weights attached to each routing class.
//!
//! All counts are exact 128-bit integers; anything larger fails loudly with
//! a capacity error instead of wrapping. Enumeration orders are part of the
//! contract: compositions come out in ascending colexicographic order and
//! routing matrices in ascending lexicographic row-major order, so that
//! downstream floating-point sums are reproducible run to run.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Error from the exact-count layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    /// The requested count does not fit in the 128-bit magnitude used for
    /// exact integers.
    #[error("{context} exceeds the 128-bit magnitude limit for exact counts")]
    CapacityExceeded { context: String },
}

/// Ordered tuple of non-negative photon counts, one entry per port.
///
/// The port count `k` is the tuple length and the photon total `m` is the
/// entry sum; both are derived, so any vector of counts is a valid
/// composition of its own sum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    counts: Vec<u32>,
}

impl Composition {
    pub fn new(counts: impl Into<Vec<u32>>) -> Self {
        let counts = counts.into();
        assert!(!counts.is_empty(), "a composition needs at least one port");
        Composition { counts }
    }

    /// Number of ports.
    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// Total photon number `m`.
    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, port: usize) -> u32 {
        self.counts[port]
    }

    /// True when every occupation is 0 or 1 (no two photons share a port).
    pub fn is_collision_free(&self) -> bool {
        self.counts.iter().all(|&n| n <= 1)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Error from parsing a `Composition` out of a comma-separated string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid composition '{0}': expected comma-separated non-negative integers")]
pub struct ParseCompositionError(pub String);

impl FromStr for Composition {
    type Err = ParseCompositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let counts: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        match counts {
            Ok(counts) if !counts.is_empty() => Ok(Composition::new(counts)),
            _ => Err(ParseCompositionError(s.to_string())),
        }
    }
}

/// Non-negative integer `k×k` matrix with prescribed margins.
///
/// Entry `(i, j)` counts the photons routed from input port `i` to output
/// port `j`; row sums reproduce the input composition and column sums the
/// output composition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RoutingMatrix {
    k: usize,
    entries: Vec<u32>, // row-major
}

impl RoutingMatrix {
    /// Builds a routing matrix from row-major entries without checking
    /// margins; the enumerator is the usual constructor.
    pub fn from_entries(k: usize, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), k * k, "routing matrix must be {k}x{k}");
        RoutingMatrix { k, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn row_sums(&self) -> Composition {
        Composition::new(
            (0..self.k)
                .map(|i| self.row(i).iter().sum::<u32>())
                .collect::<Vec<_>>(),
        )
    }

    pub fn col_sums(&self) -> Composition {
        Composition::new(
            (0..self.k)
                .map(|j| (0..self.k).map(|i| self.entry(i, j)).sum::<u32>())
                .collect::<Vec<_>>(),
        )
    }

    pub fn transposed(&self) -> RoutingMatrix {
        let mut entries = vec![0u32; self.k * self.k];
        for i in 0..self.k {
            for j in 0..self.k {
                entries[j * self.k + i] = self.entry(i, j);
            }
        }
        RoutingMatrix { k: self.k, entries }
    }
}

impl fmt::Debug for RoutingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.k {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Exact non-negative count held in a 128-bit magnitude.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(u128);

impl BigCount {
    pub const ZERO: BigCount = BigCount(0);
    pub const ONE: BigCount = BigCount(1);

    pub fn value(self) -> u128 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

impl From<u128> for BigCount {
    fn from(v: u128) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

fn capacity_error(context: impl Into<String>) -> CombinatError {
    CombinatError::CapacityExceeded {
        context: context.into(),
    }
}

/// Binomial coefficient C(n, r), exact. Returns 0 for `r > n`.
pub fn binomial(n: u32, r: u32) -> Result<BigCount, CombinatError> {
    if r > n {
        return Ok(BigCount::ZERO);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=u128::from(r) {
        // Multiply before dividing keeps every intermediate an integer.
        acc = acc
            .checked_mul(u128::from(n) - u128::from(r) + i)
            .ok_or_else(|| capacity_error(format!("binomial C({n}, {r})")))?;
        acc /= i;
    }
    Ok(BigCount(acc))
}

/// Multinomial coefficient m! / (parts_1! ... parts_k!), exact.
///
/// `parts` must be a composition of `m`.
pub fn multinomial(m: u32, parts: &Composition) -> Result<BigCount, CombinatError> {
    assert_eq!(
        parts.total(),
        m,
        "multinomial parts {parts} must sum to {m}"
    );
    let mut acc: u128 = 1;
    let mut placed: u32 = 0;
    for &part in parts.counts() {
        placed += part;
        let choose = binomial(placed, part)?;
        acc = acc
            .checked_mul(choose.value())
            .ok_or_else(|| capacity_error(format!("multinomial coefficient ({m}; {parts})")))?;
    }
    Ok(BigCount(acc))
}

/// Multiplicity of a routing matrix: the product over rows of the row
/// multinomial coefficients, i.e. the number of labeled photon assignments
/// that realize the matrix.
pub fn multiplicity(j: &RoutingMatrix) -> Result<BigCount, CombinatError> {
    let mut acc: u128 = 1;
    for i in 0..j.k() {
        let row = Composition::new(j.row(i).to_vec());
        let row_count = multinomial(row.total(), &row)?;
        acc = acc
            .checked_mul(row_count.value())
            .ok_or_else(|| capacity_error(format!("multiplicity of routing matrix {j:?}")))?;
    }
    Ok(BigCount(acc))
}

/// All routing matrices with row margins `n` and column margins `c`, in
/// ascending lexicographic row-major order.
///
/// The enumeration fills one row at a time, bounding each entry between the
/// slack forced by the remaining columns and the available row/column
/// capacity, so no branch ever dead-ends.
pub fn enumerate_routing_matrices(n: &Composition, c: &Composition) -> Vec<RoutingMatrix> {
    assert_eq!(n.k(), c.k(), "margins must have the same port count");
    assert_eq!(n.total(), c.total(), "margins must share the photon total");
    let k = n.k();
    let mut out = Vec::new();
    let mut entries = vec![0u32; k * k];
    let mut col_slack: Vec<u32> = c.counts().to_vec();
    fill_cell(0, 0, n.count(0), n, &mut col_slack, &mut entries, &mut out);
    out
}

fn fill_cell(
    row: usize,
    col: usize,
    row_rem: u32,
    n: &Composition,
    col_slack: &mut Vec<u32>,
    entries: &mut Vec<u32>,
    out: &mut Vec<RoutingMatrix>,
) {
    let k = n.k();
    if col == k {
        debug_assert_eq!(row_rem, 0);
        if row + 1 == k {
            out.push(RoutingMatrix::from_entries(k, entries.clone()));
        } else {
            fill_cell(row + 1, 0, n.count(row + 1), n, col_slack, entries, out);
        }
        return;
    }
    let suffix: u32 = col_slack[col + 1..].iter().sum();
    let lo = row_rem.saturating_sub(suffix);
    let hi = row_rem.min(col_slack[col]);
    for v in lo..=hi {
        entries[row * k + col] = v;
        col_slack[col] -= v;
        fill_cell(row, col + 1, row_rem - v, n, col_slack, entries, out);
        col_slack[col] += v;
    }
}

/// Routing matrices paired with their multivariate hypergeometric weights
/// w_J = mu_J / C(m, c), in enumeration order. The weights sum to one.
pub fn hypergeometric_weights(
    n: &Composition,
    c: &Composition,
) -> Result<Vec<(RoutingMatrix, f64)>, CombinatError> {
    let denominator = multinomial(c.total(), c)?.as_f64();
    enumerate_routing_matrices(n, c)
        .into_iter()
        .map(|j| {
            let w = multiplicity(&j)?.as_f64() / denominator;
            Ok((j, w))
        })
        .collect()
}

/// Iterator over all compositions of `m` into `k` parts in ascending
/// colexicographic order, starting at `(m, 0, ..., 0)` and ending at
/// `(0, ..., 0, m)`.
pub fn enumerate_compositions(m: u32, k: usize) -> Compositions {
    assert!(k >= 1, "need at least one part");
    let mut first = vec![0u32; k];
    first[0] = m;
    Compositions {
        current: Some(first),
    }
}

pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let item = Composition::new(cur.clone());
        // Colex successor: bump the first position that has mass to its
        // left, then flush that mass (minus one) back to the front.
        let mut next = cur;
        let mut prefix: u32 = next[0];
        let mut advanced = false;
        for i in 1..next.len() {
            if prefix > 0 {
                next[i] += 1;
                next[0] = prefix - 1;
                for slot in next.iter_mut().take(i).skip(1) {
                    *slot = 0;
                }
                advanced = true;
                break;
            }
            prefix += next[i];
        }
        if advanced {
            self.current = Some(next);
        }
        Some(item)
    }
}

/// Number of compositions of `m` into `k` parts, C(m + k - 1, k - 1).
pub fn composition_count(m: u32, k: usize) -> Result<BigCount, CombinatError> {
    binomial(m + k as u32 - 1, k as u32 - 1)
}

//! Dense integer matrices, Smith normal form, and finitely generated abelian
//! groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows. An empty slice gives the `0 × 0` matrix;
    /// use [`IntMatrix::zeros`] for other empty shapes.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)))
            .collect();
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = value.into();
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Entries as machine integers, row by row. Panics if an entry does not
    /// fit in an `i64`.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_i64().expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Invariant factors of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

/// Smith normal form by repeated minimal-pivot elimination.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot_found = true;
        loop {
            let Some((pi, pj)) = min_abs_position(&a, t) else {
                pivot_found = false;
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // The pivot must divide the rest of the block; if not, fold the
            // offending row into the pivot row and reduce again.
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if !pivot_found {
            break;
        }
        divisors.push(a[t][t].abs());
        t += 1;
    }
    SmithForm {
        rank: divisors.len(),
        divisors,
    }
}

fn min_abs_position(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn rank(m: &IntMatrix) -> usize {
    snf(m).rank
}

/// Rank of the kernel, which over ℤ is free.
pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols - rank(m)
}

pub fn cokernel(m: &IntMatrix) -> FGAbelianGroup {
    let s = snf(m);
    let torsion = s
        .divisors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect();
    FGAbelianGroup {
        free_rank: m.rows - s.rank,
        torsion,
    }
}

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | … | d_k` and every `d_i ≥ 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if torsion.iter().any(|&d| d < 2) {
            return Err(Error::InvalidArgument(format!(
                "torsion coefficients must be at least 2: {torsion:?}"
            )));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidArgument(format!(
                "torsion coefficients must form a divisibility chain: {torsion:?}"
            )));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `ℤ/n`, or the zero group for `n = 1`.
    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(0, &[n])
    }

    /// Canonical form of `ℤ^free_rank ⊕ ⨁ ℤ/n_i` for arbitrary positive `n_i`.
    pub fn from_orders(free_rank: usize, orders: &[u64]) -> Self {
        let diag: Vec<Vec<i64>> = (0..orders.len())
            .map(|i| {
                (0..orders.len())
                    .map(|j| if i == j { orders[i] as i64 } else { 0 })
                    .collect()
            })
            .collect();
        let mut g = if diag.is_empty() {
            Self::zero()
        } else {
            cokernel(&IntMatrix::from_rows(&diag).expect("square"))
        };
        g.free_rank += free_rank;
        g
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    /// `(p, p^k)` pairs of the primary decomposition, sorted.
    pub fn primary_decomposition(&self) -> Vec<(u64, u64)> {
        let mut parts = Vec::new();
        for &d in &self.torsion {
            let mut rest = d;
            let mut p = 2;
            while rest > 1 {
                if rest % p == 0 {
                    let mut q = 1;
                    while rest % p == 0 {
                        rest /= p;
                        q *= p;
                    }
                    parts.push((p, q));
                }
                p += 1;
            }
        }
        parts.sort();
        parts
    }

    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self
            .primary_decomposition()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        primes.dedup();
        primes
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        Self::from_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Rendering with the torsion split into primary parts, e.g. `ℤ² ⊕ (ℤ/2)²`.
    pub fn to_primary_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("ℤ".to_string()),
            k => terms.push(format!("ℤ{}", superscript(k))),
        }
        let parts = self.primary_decomposition();
        let mut i = 0;
        while i < parts.len() {
            let mut j = i;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            let q = parts[i].1;
            terms.push(match j - i {
                1 => format!("ℤ/{q}"),
                k => format!("(ℤ/{q}){}", superscript(k)),
            });
            i = j;
        }
        terms.join(" ⊕ ")
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Invariant-factor rendering, e.g. `Z^2 + Z/2 + Z/6`.
impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            k => terms.push(format!("Z^{k}")),
        }
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn divisors(x: &IntMatrix) -> Vec<i64> {
        snf(x)
            .divisors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn identity_has_unit_divisors() {
        let s = snf(&IntMatrix::identity(5));
        assert_eq!(s.rank, 5);
        assert!(s.divisors.iter().all(One::is_one));
    }

    #[test]
    fn a2_cartan_without_signs() {
        assert_eq!(divisors(&m(&[&[2, 1], &[1, 2]])), vec![1, 3]);
    }

    #[test]
    fn e6_cartan() {
        let e6 = m(&[
            &[2, 0, -1, 0, 0, 0],
            &[0, 2, 0, -1, 0, 0],
            &[-1, 0, 2, -1, 0, 0],
            &[0, -1, -1, 2, -1, 0],
            &[0, 0, 0, -1, 2, -1],
            &[0, 0, 0, 0, -1, 2],
        ]);
        assert_eq!(divisors(&e6), vec![1, 1, 1, 1, 1, 3]);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2, 3) ≅ ℤ/6
        assert_eq!(divisors(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(
            divisors(&m(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]])),
            vec![2, 2, 60]
        );
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zeros(3, 2);
        assert_eq!(cokernel(&z), FGAbelianGroup::free(3));
        assert_eq!(kernel_rank(&z), 2);
        let no_cols = IntMatrix::zeros(1, 0);
        assert_eq!(cokernel(&no_cols), FGAbelianGroup::free(1));
        let no_rows = IntMatrix::zeros(0, 4);
        assert_eq!(kernel_rank(&no_rows), 4);
        assert!(cokernel(&no_rows).is_zero());
    }

    #[test]
    fn tridiagonal_type_a_cokernel() {
        for n in 2..=12usize {
            let k = n - 1;
            let mut t = IntMatrix::zeros(k, k);
            for i in 0..k {
                t.set(i, i, 2);
                if i + 1 < k {
                    t.set(i, i + 1, 1);
                    t.set(i + 1, i, 1);
                }
            }
            assert_eq!(cokernel(&t), FGAbelianGroup::cyclic(n as u64), "n = {n}");
        }
    }

    #[test]
    fn two_diagonal_matrix_is_injective() {
        for k in 1..8 {
            let mut nk = IntMatrix::zeros(k + 1, k);
            for j in 0..k {
                nk.set(j, j, 1);
                nk.set(j + 1, j, 1);
            }
            assert_eq!(kernel_rank(&nk), 0);
            assert_eq!(cokernel(&nk), FGAbelianGroup::free(1));
        }
    }

    #[test]
    fn large_intermediates_stay_exact() {
        let big = m(&[&[i64::MAX, i64::MAX - 1], &[i64::MAX - 2, i64::MAX - 3]]);
        let s = snf(&big);
        assert_eq!(s.rank, 2);
        // det = (M)(M-3) - (M-1)(M-2) = -2
        assert_eq!(s.divisors, vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn group_canonical_forms() {
        assert_eq!(
            FGAbelianGroup::from_orders(0, &[2, 3]),
            FGAbelianGroup::cyclic(6)
        );
        assert_eq!(
            FGAbelianGroup::from_orders(1, &[2, 2, 1]).torsion(),
            &[2, 2]
        );
        assert!(FGAbelianGroup::cyclic(1).is_zero());
        assert!(FGAbelianGroup::new(0, vec![4, 2]).is_err());
        assert!(FGAbelianGroup::new(0, vec![1]).is_err());
        let g = FGAbelianGroup::new(2, vec![2, 2]).unwrap();
        assert_eq!(g.to_primary_string(), "ℤ² ⊕ (ℤ/2)²");
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/2");
        assert_eq!(FGAbelianGroup::cyclic(12).to_primary_string(), "ℤ/4 ⊕ ℤ/3");
        assert_eq!(FGAbelianGroup::cyclic(12).torsion_primes(), vec![2, 3]);
        assert_eq!(FGAbelianGroup::zero().to_primary_string(), "0");
    }
}

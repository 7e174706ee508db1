//! Type `A_{n−1}` cohomology from a second route: the minimal orbit there is
//! the set of nonzero rank-one traceless matrices, a `ℂ*`-bundle over the
//! total space of a rank `n − 1` bundle `F` on `ℙ^{n−1}`. The Gysin sequence
//! over `ℙ^{n−1}` only needs the top Chern class of `F`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gysin::{minimal_orbit_cohomology, GradedCohomology};
use crate::rootsys::{Family, RootSystem};
use crate::zlinalg::{cokernel, kernel_rank, FGAbelianGroup, IntMatrix};

/// An element of `ℤ[y]/(yⁿ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    modulus_degree: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedPolynomial {
    pub fn zero(n: usize) -> Self {
        TruncatedPolynomial {
            modulus_degree: n,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(n);
        for (c, &v) in p.coeffs.iter_mut().zip(coeffs) {
            *c = BigInt::from(v);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::from_coeffs(n, &[1])
    }

    pub fn modulus_degree(&self) -> usize {
        self.modulus_degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.modulus_degree), |acc, _| &acc * self)
    }
}

impl Mul for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn mul(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        assert_eq!(self.modulus_degree, rhs.modulus_degree, "different moduli");
        let n = self.modulus_degree;
        let mut out = TruncatedPolynomial::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// Total Chern class `(1 + y)ⁿ` of the bundle `F`, with `y = c₁(O(−1))`.
pub fn total_chern_kernel_bundle(n: usize) -> Result<TruncatedPolynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n ≥ 2, got {n}")));
    }
    Ok(TruncatedPolynomial::from_coeffs(n, &[1, 1]).pow(n as u32))
}

/// `H^*(O_min)` for `sl_n` via the Gysin sequence of multiplication by the
/// top Chern class `c = n·y^{n−1}` on `H^*(ℙ^{n−1})`.
pub fn typea_cohomology(n: usize) -> Result<GradedCohomology> {
    let total = total_chern_kernel_bundle(n)?;
    let c = total.coeff(n - 1).to_i64().expect("n fits in i64");
    let shift = 2 * (n - 1);
    // H^{2k}(ℙ^{n−1}) = ℤ·y^k for k < n; multiplication by c maps degree
    // 2k to 2k + shift.
    let base_rank = |deg: usize| usize::from(deg.is_multiple_of(2) && deg / 2 < n);
    let map = |from: usize| -> IntMatrix {
        let to = from + shift;
        let (rows, cols) = (base_rank(to), base_rank(from));
        let mut m = IntMatrix::zeros(rows, cols);
        if rows == 1 && cols == 1 {
            m.set(0, 0, c);
        }
        m
    };
    let top = 4 * n - 5;
    let mut h = GradedCohomology::new(top);
    for i in 0..=top {
        // 0 → coker(c: H^{i−shift} → H^i) → H^i(O_min) → ker(c: H^{i−shift+1} → H^{i+1}) → 0
        let coker = match i.checked_sub(shift) {
            Some(from) => cokernel(&map(from)),
            None => FGAbelianGroup::free(base_rank(i)),
        };
        let ker = match (i + 1).checked_sub(shift) {
            Some(from) => kernel_rank(&map(from)),
            None => 0,
        };
        h.insert(i, coker.sum(&FGAbelianGroup::free(ker)))?;
    }
    Ok(h)
}

/// Whether both routes agree for `sl_n`.
pub fn crosscheck_typea(n: usize) -> Result<bool> {
    let ours = typea_cohomology(n)?;
    let rs = RootSystem::build(Family::A, n - 1)?;
    Ok(ours == minimal_orbit_cohomology(&rs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(p: &TruncatedPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn chern_classes() {
        assert_eq!(coeffs(&total_chern_kernel_bundle(4).unwrap()), [1, 4, 6, 4]);
        assert_eq!(coeffs(&total_chern_kernel_bundle(2).unwrap()), [1, 2]);
        assert!(total_chern_kernel_bundle(1).is_err());
    }

    #[test]
    fn truncation() {
        let y = TruncatedPolynomial::from_coeffs(3, &[0, 1]);
        assert!(y.pow(3).coeffs().iter().all(Zero::is_zero));
        assert_eq!(coeffs(&y.pow(2)), [0, 0, 1]);
    }

    #[test]
    fn sl2_and_sl4() {
        let h = typea_cohomology(2).unwrap();
        assert_eq!(h.get(0), FGAbelianGroup::free(1));
        assert_eq!(h.get(2), FGAbelianGroup::cyclic(2));
        assert_eq!(h.get(3), FGAbelianGroup::free(1));
        assert_eq!(h.iter().count(), 3);

        let h = typea_cohomology(4).unwrap();
        let degrees: Vec<usize> = h.iter().map(|(n, _)| n).collect();
        assert_eq!(degrees, [0, 2, 4, 6, 7, 9, 11]);
        assert_eq!(h.get(6), FGAbelianGroup::cyclic(4));
        assert!(h.get(5).is_zero());
    }

    #[test]
    fn agrees_with_root_side() {
        for n in [2, 4, 10] {
            assert!(crosscheck_typea(n).unwrap(), "n = {n}");
        }
    }
}

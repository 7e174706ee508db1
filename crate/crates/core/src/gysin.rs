//! Graded cohomology of a `ℂ*`-bundle from the Chern-class differentials.
//!
//! Degree bookkeeping for the minimal orbit, with `d = 2h∨ − 2`:
//!
//! | quantity                      | range / value          |
//! |-------------------------------|------------------------|
//! | levels of long roots          | `0 ..= d − 1`          |
//! | differentials `D_i`           | `0 ..= d`              |
//! | `H^n`, `n` even               | `coker D_{n/2}`        |
//! | `H^n`, `n` odd                | `ℤ^{dim ker D_{(n+1)/2}}` |
//! | middle (finite) degree        | `d = 2h∨ − 2`          |
//! | top degree                    | `2d − 1 = 4h∨ − 5`     |
//!
//! `D_0` has no columns and `D_d` has no rows. The same rules apply to any
//! line bundle over `G/P_I` with `d` replaced by `dim G/P_I + 1`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::golden;
use crate::orbitposet::build_level_diagram;
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{coset_reps, reflection_table};
use crate::zlinalg::{cokernel, kernel_rank, rank, FGAbelianGroup, IntMatrix};

/// Cohomology groups by degree. Zero groups are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCohomology {
    top_degree: usize,
    groups: BTreeMap<usize, FGAbelianGroup>,
}

impl GradedCohomology {
    pub fn new(top_degree: usize) -> Self {
        GradedCohomology {
            top_degree,
            groups: BTreeMap::new(),
        }
    }

    /// Sets `H^degree`, dropping it if zero.
    pub fn insert(&mut self, degree: usize, group: FGAbelianGroup) -> Result<()> {
        if degree > self.top_degree {
            return Err(Error::InvalidArgument(format!(
                "degree {degree} exceeds top degree {}",
                self.top_degree
            )));
        }
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
        Ok(())
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn get(&self, degree: usize) -> FGAbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero groups in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &FGAbelianGroup)> {
        self.groups.iter().map(|(&n, g)| (n, g))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(n, g)| if n % 2 == 0 { 1 } else { -1 } * g.free_rank() as i64)
            .sum()
    }

    /// Assembles `H^*` from `D_0, …, D_d`.
    pub fn from_differentials(diffs: &[IntMatrix]) -> Self {
        assert!(diffs.len() >= 2, "need at least D_0 and D_1");
        let d = diffs.len() - 1;
        let mut h = GradedCohomology::new(2 * d - 1);
        for n in 0..2 * d {
            let g = if n % 2 == 0 {
                cokernel(&diffs[n / 2])
            } else {
                FGAbelianGroup::free(kernel_rank(&diffs[n.div_ceil(2)]))
            };
            h.insert(n, g).expect("degree within range");
        }
        h
    }
}

/// `H^*(O_min, ℤ)`.
pub fn minimal_orbit_cohomology(rs: &RootSystem) -> GradedCohomology {
    let diagram = build_level_diagram(rs);
    let diffs: Vec<IntMatrix> = diagram
        .differential_matrices()
        .into_iter()
        .map(|d| d.matrix)
        .collect();
    GradedCohomology::from_differentials(&diffs)
}

/// The degree `2h∨ − 2` in which the only non-bad torsion can occur.
pub fn middle_degree(rs: &RootSystem) -> usize {
    rs.num_levels()
}

/// Coweight lattice modulo coroot lattice of the subsystem spanned by the
/// long simple roots: the cokernel of its Cartan matrix.
pub fn middle_group(rs: &RootSystem) -> FGAbelianGroup {
    let sub = rs.long_simple_subsystem();
    let cartan = IntMatrix::from_rows(sub.datum().cartan_matrix()).expect("square matrix");
    cokernel(&cartan)
}

/// A character given by its coordinates on the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterWeight {
    pub coords: Vec<i64>,
}

impl CharacterWeight {
    pub fn new(coords: Vec<i64>) -> Self {
        CharacterWeight { coords }
    }

    /// `λ_j = ⟨root, α_j∨⟩`.
    pub fn from_root(rs: &RootSystem, root: &Root) -> Self {
        let coords = (0..rs.rank())
            .map(|j| rs.pairing_coeffs(root.coeffs(), rs.simple_root(j).coeffs()))
            .collect();
        CharacterWeight { coords }
    }

    /// `⟨λ, β∨⟩`.
    pub fn pairing(&self, rs: &RootSystem, beta: &Root) -> i64 {
        let d = rs.datum().symmetrizer();
        let num: i64 = beta
            .coeffs()
            .iter()
            .zip(d)
            .zip(&self.coords)
            .map(|((n, d), l)| 2 * n * d * l)
            .sum();
        let den = rs.doubled_form(beta.coeffs(), beta.coeffs());
        debug_assert_eq!(num % den, 0);
        num / den
    }
}

/// `H^*` of the complement of the zero section of the line bundle of weight
/// `λ` over `G/P_I`, from the Chevalley formula on `X_I`.
///
/// Cost grows with `|X_I|`; this is the slow reference path, not the one
/// used for the minimal orbit.
pub fn line_bundle_cohomology(
    rs: &RootSystem,
    subset: &[usize],
    lambda: &CharacterWeight,
    cap: usize,
) -> Result<GradedCohomology> {
    if lambda.coords.len() != rs.rank() {
        return Err(Error::InvalidArgument(format!(
            "weight has {} coordinates, expected {}",
            lambda.coords.len(),
            rs.rank()
        )));
    }
    if let Some(&i) = subset
        .iter()
        .find(|&&i| i < rs.rank() && lambda.coords[i] != 0)
    {
        return Err(Error::NonInvariantWeight {
            index: i,
            value: lambda.coords[i],
        });
    }
    let x = coset_reps(rs, subset, cap)?;
    let max_len = x.reps.last().map_or(0, |w| w.length());
    let mut by_length: Vec<Vec<usize>> = vec![Vec::new(); max_len + 1];
    let mut position = vec![0; x.len()];
    for (k, w) in x.reps.iter().enumerate() {
        position[k] = by_length[w.length()].len();
        by_length[w.length()].push(k);
    }
    let reflections = reflection_table(rs);

    let d = max_len + 1;
    let mut diffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let rows = by_length.get(i).map_or(0, Vec::len);
        let cols = if i == 0 { 0 } else { by_length[i - 1].len() };
        let mut m = IntMatrix::zeros(rows, cols);
        if i > 0 && i <= max_len {
            for &a in &by_length[i - 1] {
                let w = &x.reps[a];
                let w_inv = w.inverse();
                for &b in &by_length[i] {
                    let Some(&g) = reflections.get(x.reps[b].compose(&w_inv).perm()) else {
                        continue;
                    };
                    // ⟨w(λ), γ∨⟩ = ⟨λ, (w⁻¹γ)∨⟩
                    let beta = rs.root(w_inv.apply_index(g));
                    m.set(position[b], position[a], lambda.pairing(rs, beta));
                }
            }
        }
        diffs.push(m);
    }
    Ok(GradedCohomology::from_differentials(&diffs))
}

/// One named pass/fail assertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ProfileReport {
    pub label: String,
    pub checks: Vec<Check>,
}

impl ProfileReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Structural checks on the computed cohomology of the minimal orbit.
pub fn verify_profiles(rs: &RootSystem) -> ProfileReport {
    let diagram = build_level_diagram(rs);
    let diffs: Vec<IntMatrix> = diagram
        .differential_matrices()
        .into_iter()
        .map(|d| d.matrix)
        .collect();
    let h = GradedCohomology::from_differentials(&diffs);
    let d = rs.num_levels();
    let h_dual = rs.dual_coxeter_number() as usize;
    let middle = middle_degree(rs);
    let mut checks = Vec::new();

    // Rational profile below the middle degree.
    let k = rs.long_simple_indices().len();
    let degrees = golden::weyl_degrees(rs.family(), rs.rank());
    let mut expected: Vec<usize> = degrees[..k].iter().map(|&e| 2 * (e - 2)).collect();
    expected.sort_unstable();
    let mut observed: Vec<usize> = h
        .iter()
        .filter(|&(n, _)| n < middle)
        .flat_map(|(n, g)| std::iter::repeat_n(n, g.free_rank()))
        .collect();
    observed.sort_unstable();
    checks.push(Check {
        name: "betti-profile",
        passed: observed == expected,
        detail: format!("free degrees below {middle}: {observed:?}, expected {expected:?}"),
    });

    let bad = golden::bad_primes(rs.family());
    let stray: Vec<(usize, u64)> = h
        .iter()
        .filter(|&(n, _)| n != middle)
        .flat_map(|(n, g)| g.torsion_primes().into_iter().map(move |p| (n, p)))
        .filter(|(_, p)| !bad.contains(p))
        .collect();
    checks.push(Check {
        name: "bad-primes",
        passed: stray.is_empty(),
        detail: format!("torsion primes outside the middle degree not in {bad:?}: {stray:?}"),
    });

    let asym: Vec<usize> = (0..=d)
        .filter(|&i| diffs[d - i] != diffs[i].transpose())
        .collect();
    checks.push(Check {
        name: "transpose-duality",
        passed: asym.is_empty(),
        detail: format!("indices with D_(d-i) != D_i^T: {asym:?}"),
    });

    let lefschetz: Vec<usize> = (0..=d)
        .filter(|&i| {
            let m = &diffs[i];
            let r = rank(m);
            (i < h_dual && r != m.cols()) || (i + 1 >= h_dual && r != m.rows())
        })
        .collect();
    checks.push(Check {
        name: "hard-lefschetz",
        passed: lefschetz.is_empty(),
        detail: format!("indices failing the rank condition: {lefschetz:?}"),
    });

    let odd_low: Vec<usize> = h
        .iter()
        .filter(|&(n, _)| n % 2 == 1 && n + 3 <= 2 * h_dual)
        .map(|(n, _)| n)
        .collect();
    checks.push(Check {
        name: "odd-vanishing",
        passed: odd_low.is_empty(),
        detail: format!("nonzero odd degrees at most 2h∨−3: {odd_low:?}"),
    });

    let odd_torsion: Vec<usize> = h
        .iter()
        .filter(|&(n, g)| n % 2 == 1 && !g.is_free())
        .map(|(n, _)| n)
        .collect();
    let even_high_free: Vec<usize> = h
        .iter()
        .filter(|&(n, g)| n % 2 == 0 && n >= middle && g.free_rank() > 0)
        .map(|(n, _)| n)
        .collect();
    checks.push(Check {
        name: "parity-shape",
        passed: odd_torsion.is_empty() && even_high_free.is_empty() && h.get(0) == FGAbelianGroup::free(1),
        detail: format!(
            "H^0 = {}; odd with torsion {odd_torsion:?}; even ≥ middle with free part {even_high_free:?}",
            h.get(0)
        ),
    });

    let chi = h.euler_characteristic();
    checks.push(Check {
        name: "euler-characteristic",
        passed: chi == 0,
        detail: format!("χ = {chi}"),
    });

    let mid = middle_group(rs);
    checks.push(Check {
        name: "middle-group",
        passed: h.get(middle) == mid,
        detail: format!("H^{middle} = {}, coker Cartan(Φ′) = {mid}", h.get(middle)),
    });

    ProfileReport {
        label: rs.label(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use crate::weyl::DEFAULT_CAP;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::build(f, n).unwrap()
    }

    #[test]
    fn g2_table() {
        let h = minimal_orbit_cohomology(&rs(Family::G, 2));
        let got: Vec<(usize, String)> = h.iter().map(|(n, g)| (n, g.to_string())).collect();
        let want = [(0, "Z"), (4, "Z/3"), (6, "Z/2"), (8, "Z/3"), (11, "Z")];
        assert_eq!(got, want.map(|(n, s)| (n, s.to_string())));
        assert_eq!(h.top_degree(), 11);
    }

    #[test]
    fn a1_is_real_projective_three_space() {
        let h = minimal_orbit_cohomology(&rs(Family::A, 1));
        assert_eq!(h.get(0), FGAbelianGroup::free(1));
        assert_eq!(h.get(2), FGAbelianGroup::cyclic(2));
        assert_eq!(h.get(3), FGAbelianGroup::free(1));
        assert_eq!(h.iter().count(), 3);
    }

    #[test]
    fn line_bundle_over_projective_line() {
        let a1 = rs(Family::A, 1);
        let h =
            line_bundle_cohomology(&a1, &[], &CharacterWeight::new(vec![1]), DEFAULT_CAP).unwrap();
        let degrees: Vec<usize> = h.iter().map(|(n, _)| n).collect();
        assert_eq!(degrees, [0, 3]);
        assert!(h.iter().all(|(_, g)| *g == FGAbelianGroup::free(1)));
    }

    #[test]
    fn trivial_bundle_is_product() {
        let b2 = rs(Family::B, 2);
        let h = line_bundle_cohomology(&b2, &[1], &CharacterWeight::new(vec![0, 0]), DEFAULT_CAP)
            .unwrap();
        // G/P is a 3-dimensional quadric: ℤ in degrees 0, 2, 4, 6.
        for n in 0..=7 {
            assert_eq!(h.get(n), FGAbelianGroup::free(1), "degree {n}");
        }
    }

    #[test]
    fn non_invariant_weight_is_rejected() {
        let a2 = rs(Family::A, 2);
        let err = line_bundle_cohomology(&a2, &[0], &CharacterWeight::new(vec![1, 1]), DEFAULT_CAP);
        assert!(matches!(
            err,
            Err(Error::NonInvariantWeight { index: 0, value: 1 })
        ));
    }

    #[test]
    fn line_bundle_recovers_minimal_orbit() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::G, 2),
        ] {
            let r = rs(f, n);
            let lambda = CharacterWeight::from_root(&r, r.highest_root());
            let h = line_bundle_cohomology(&r, r.i_tilde(), &lambda, DEFAULT_CAP).unwrap();
            assert_eq!(h, minimal_orbit_cohomology(&r), "{}", r.label());
        }
    }

    #[test]
    fn middle_groups() {
        assert_eq!(middle_group(&rs(Family::C, 5)), FGAbelianGroup::cyclic(2));
        assert_eq!(middle_group(&rs(Family::B, 5)), FGAbelianGroup::cyclic(5));
        assert!(middle_group(&rs(Family::E, 8)).is_zero());
    }

    #[test]
    fn profiles_pass_for_small_types() {
        for (f, n) in [
            (Family::A, 4),
            (Family::B, 4),
            (Family::C, 3),
            (Family::D, 5),
            (Family::F, 4),
        ] {
            let report = verify_profiles(&rs(f, n));
            let failures: Vec<_> = report.failures().collect();
            assert!(failures.is_empty(), "{}: {failures:?}", report.label);
        }
    }
}

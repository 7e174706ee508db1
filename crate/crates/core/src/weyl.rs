//! Weyl-group elements as signed permutations of the root list, and minimal
//! coset representatives for parabolic subgroups.
//!
//! This module is the oracle side of the construction: it never enumerates
//! the whole group, only the quotient `X_I` by breadth-first search over
//! cosets.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};

pub const DEFAULT_CAP: usize = 10_000;

/// An element `w ∈ W`, stored as the permutation `k ↦ index of w(root[k])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    length: usize,
}

impl WeylElement {
    fn from_perm(perm: Vec<usize>) -> Self {
        let half = perm.len() / 2;
        let length = perm[..half].iter().filter(|&&k| k >= half).count();
        WeylElement { perm, length }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement {
            perm: (0..rs.num_roots()).collect(),
            length: 0,
        }
    }

    /// The reflection in the root with index `gamma`.
    pub fn reflection(rs: &RootSystem, gamma: usize) -> Self {
        Self::from_perm(
            (0..rs.num_roots())
                .map(|k| rs.reflect_index(gamma, k))
                .collect(),
        )
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Self {
        assert!(i < rs.rank(), "simple index {i} out of range");
        Self::reflection(rs, i)
    }

    /// `w ∘ v`: first `v`, then `w`.
    pub fn compose(&self, v: &WeylElement) -> Self {
        Self::from_perm(v.perm.iter().map(|&k| self.perm[k]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (k, &img) in self.perm.iter().enumerate() {
            inv[img] = k;
        }
        WeylElement {
            perm: inv,
            length: self.length,
        }
    }

    pub fn apply_index(&self, k: usize) -> usize {
        self.perm[k]
    }

    pub fn apply<'a>(&self, rs: &'a RootSystem, root: &Root) -> &'a Root {
        let k = rs.index_of_root(root).expect("root of this system");
        rs.root(self.perm[k])
    }

    /// `N(w)`: indices of positive roots sent to negative roots.
    pub fn inversion_set(&self) -> Vec<usize> {
        let half = self.perm.len() / 2;
        (0..half).filter(|&k| self.perm[k] >= half).collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }
}

/// Minimal-length representatives of `W / W_I`.
#[derive(Clone, Debug)]
pub struct CosetFamily {
    pub subset: Vec<usize>,
    /// In breadth-first order, hence sorted by length.
    pub reps: Vec<WeylElement>,
}

impl CosetFamily {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.reps.iter().map(WeylElement::length).collect()
    }
}

/// Coordinates of `w(ξ_I)` on the simple roots, where `ξ_I` is the coweight
/// taking value 1 on simple roots outside `I` and 0 on `I`. Its stabilizer
/// is exactly `W_I`, so the key identifies the coset `wW_I`.
fn coset_key(rs: &RootSystem, w: &WeylElement, outside: &[usize]) -> Vec<i64> {
    let inv = w.inverse();
    (0..rs.rank())
        .map(|j| {
            let c = rs.root(inv.perm[j]).coeffs();
            outside.iter().map(|&k| c[k]).sum()
        })
        .collect()
}

/// Breadth-first enumeration of `X_I`. Fails once more than `cap`
/// representatives have been found.
pub fn coset_reps(rs: &RootSystem, subset: &[usize], cap: usize) -> Result<CosetFamily> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be positive".into()));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= rs.rank()) {
        return Err(Error::InvalidArgument(format!(
            "simple index {bad} out of range for rank {}",
            rs.rank()
        )));
    }
    let outside: Vec<usize> = (0..rs.rank()).filter(|i| !subset.contains(i)).collect();
    let simples: Vec<WeylElement> = (0..rs.rank())
        .map(|i| WeylElement::simple_reflection(rs, i))
        .collect();

    let identity = WeylElement::identity(rs);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(coset_key(rs, &identity, &outside));
    let mut reps = vec![identity];
    let mut head = 0;
    while head < reps.len() {
        let w = reps[head].clone();
        head += 1;
        for s in &simples {
            let sw = s.compose(&w);
            if sw.length != w.length + 1 {
                continue;
            }
            if seen.insert(coset_key(rs, &sw, &outside)) {
                if reps.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: reps.len(),
                    });
                }
                reps.push(sw);
            }
        }
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    Ok(CosetFamily { subset, reps })
}

/// All elements of the subgroup generated by the given simple reflections.
pub fn parabolic_subgroup(
    rs: &RootSystem,
    subset: &[usize],
    cap: usize,
) -> Result<Vec<WeylElement>> {
    let gens: Vec<WeylElement> = subset
        .iter()
        .map(|&i| WeylElement::simple_reflection(rs, i))
        .collect();
    let identity = WeylElement::identity(rs);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(identity.perm.clone());
    let mut queue = VecDeque::from([identity.clone()]);
    let mut out = vec![identity];
    while let Some(w) = queue.pop_front() {
        for s in &gens {
            let sw = s.compose(&w);
            if seen.insert(sw.perm.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: out.len(),
                    });
                }
                out.push(sw.clone());
                queue.push_back(sw);
            }
        }
    }
    Ok(out)
}

/// The element `x_α ∈ X_Ĩ` with `x_α(α̃) = α`.
///
/// Built by walking from `α` up to `α̃` with simple reflections that raise
/// the dual height; each step moves exactly one level, so the resulting word
/// is reduced.
pub fn x_alpha(rs: &RootSystem, alpha: &Root) -> Result<WeylElement> {
    if !alpha.is_long() {
        return Err(Error::ShortRoot(alpha.label()));
    }
    let top = rs.highest_root_index();
    let mut current = rs
        .index_of_root(alpha)
        .ok_or_else(|| Error::InvalidArgument(format!("{alpha} is not a root")))?;
    let mut word = Vec::new();
    while current != top {
        let c = rs.root(current).coeffs();
        let i = (0..rs.rank())
            .find(|&i| rs.pairing_coeffs(c, rs.simple_root(i).coeffs()) < 0)
            .expect("a long root other than the highest root is not dominant");
        word.push(i);
        current = rs.reflect_index(i, current);
    }
    // α = s_{i₁} ⋯ s_{i_m}(α̃) with i₁ the first step taken from α.
    let mut x = WeylElement::identity(rs);
    for &i in &word {
        x = x.compose(&WeylElement::simple_reflection(rs, i));
    }
    Ok(x)
}

/// Lookup from reflection permutations to the positive root they reflect in.
pub fn reflection_table(rs: &RootSystem) -> HashMap<Vec<usize>, usize> {
    (0..rs.num_positive())
        .map(|g| (WeylElement::reflection(rs, g).perm, g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::build(f, n).unwrap()
    }

    #[test]
    fn simple_reflections_are_involutions() {
        let g2 = rs(Family::G, 2);
        for i in 0..2 {
            let s = WeylElement::simple_reflection(&g2, i);
            assert_eq!(s.length(), 1);
            assert!(s.compose(&s).is_identity());
            let img = s.apply(&g2, g2.simple_root(i));
            assert_eq!(img, &g2.simple_root(i).negated());
        }
    }

    #[test]
    fn g2_longest_element_is_minus_one() {
        let g2 = rs(Family::G, 2);
        let w = parabolic_subgroup(&g2, &[0, 1], 100).unwrap();
        assert_eq!(w.len(), 12);
        let w0 = w.iter().max_by_key(|w| w.length()).unwrap();
        assert_eq!(w0.length(), 6);
        let top = g2.highest_root();
        assert_eq!(w0.apply(&g2, top), &top.negated());
    }

    #[test]
    fn compose_order() {
        let a2 = rs(Family::A, 2);
        let s1 = WeylElement::simple_reflection(&a2, 0);
        let s2 = WeylElement::simple_reflection(&a2, 1);
        // s1 s2 (α₁) = s1(α₁ + α₂) = α₂
        let w = s1.compose(&s2);
        assert_eq!(w.apply(&a2, a2.simple_root(0)).coeffs(), &[0, 1]);
        assert_eq!(w.inverse().compose(&w), WeylElement::identity(&a2));
    }

    #[test]
    fn coset_reps_extremes() {
        let b3 = rs(Family::B, 3);
        let all = coset_reps(&b3, &[0, 1, 2], 10).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all.reps[0].is_identity());
        let full = coset_reps(&b3, &[], 1000).unwrap();
        assert_eq!(full.len(), 48);
    }

    #[test]
    fn coset_reps_count_long_roots() {
        for (f, n) in [
            (Family::A, 4),
            (Family::C, 3),
            (Family::F, 4),
            (Family::E, 6),
        ] {
            let r = rs(f, n);
            let x = coset_reps(&r, r.i_tilde(), DEFAULT_CAP).unwrap();
            assert_eq!(x.len(), r.num_long_roots(), "{}", r.label());
            let images: HashSet<usize> = x
                .reps
                .iter()
                .map(|w| w.apply_index(r.highest_root_index()))
                .collect();
            assert_eq!(images.len(), x.len());
        }
    }

    #[test]
    fn reps_preserve_positive_subsystem() {
        let d4 = rs(Family::D, 4);
        let subset = [0usize, 2];
        let x = coset_reps(&d4, &subset, DEFAULT_CAP).unwrap();
        assert_eq!(x.len(), 192 / 4);
        let sub_pos: Vec<usize> = (0..d4.num_positive())
            .filter(|&k| {
                let c = d4.root(k).coeffs();
                (0..4).all(|j| subset.contains(&j) || c[j] == 0)
            })
            .collect();
        for w in &x.reps {
            assert!(sub_pos
                .iter()
                .all(|&k| d4.is_positive_index(w.apply_index(k))));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let e8 = rs(Family::E, 8);
        match coset_reps(&e8, e8.i_tilde(), 100) {
            Err(Error::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 100);
                assert_eq!(partial, 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn x_alpha_endpoints() {
        let a3 = rs(Family::A, 3);
        let top = a3.highest_root().clone();
        assert!(x_alpha(&a3, &top).unwrap().is_identity());
        let bottom = x_alpha(&a3, &top.negated()).unwrap();
        assert_eq!(bottom.length(), 2 * 4 - 3);
        let g2 = rs(Family::G, 2);
        assert!(matches!(
            x_alpha(&g2, g2.simple_root(1)),
            Err(Error::ShortRoot(_))
        ));
    }
}

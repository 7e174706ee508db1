//! Long roots bucketed by level, the covers between consecutive levels, and
//! the differential matrices `D_i` they define.
//!
//! Ordering inside a level: positive roots in descending lexicographic order
//! of their coefficients, then negative roots in descending lexicographic
//! order of their absolute values. A level never mixes signs except at the
//! crossing, where this ordering makes the block from `Δlg` to `−Δlg` read
//! off as the Cartan matrix of the long simple roots, and it makes `D_{d−i}`
//! exactly the transpose of `D_i`.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::error::Result;
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{coset_reps, reflection_table};
use crate::zlinalg::IntMatrix;

/// A cover `β → α = s_γ(β)` between consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEdge {
    /// Level of `β`; `α` sits one level lower.
    pub level: usize,
    /// Position of `β` inside its level.
    pub source: usize,
    /// Position of `α` inside its level.
    pub target: usize,
    pub gamma: Root,
    /// `⟨β, γ∨⟩`.
    pub multiplicity: i64,
}

#[derive(Clone, Debug)]
pub struct LevelDiagram {
    label: String,
    long_ratio: i64,
    levels: Vec<Vec<Root>>,
    edges: Vec<CoverEdge>,
}

/// `(β, α, m)` triples, used to compare edge sets built in different ways.
pub type EdgeTriple = (Vec<i64>, Vec<i64>, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMatrix {
    pub index: usize,
    pub matrix: IntMatrix,
}

fn level_order(a: &Root, b: &Root) -> std::cmp::Ordering {
    let key = |r: &Root| {
        let abs: Vec<i64> = r.coeffs().iter().map(|c| c.abs()).collect();
        (Reverse(r.is_positive()), Reverse(abs))
    };
    key(a).cmp(&key(b))
}

pub fn build_level_diagram(rs: &RootSystem) -> LevelDiagram {
    let mut levels = vec![Vec::new(); rs.num_levels()];
    for k in rs.long_root_indices() {
        let root = rs.root(k);
        let l = rs.level(root).expect("long root");
        levels[l].push(root.clone());
    }
    for level in &mut levels {
        level.sort_by(level_order);
    }

    let mut edges = Vec::new();
    for l in 0..levels.len().saturating_sub(1) {
        for (s, beta) in levels[l].iter().enumerate() {
            for (t, alpha) in levels[l + 1].iter().enumerate() {
                if let Some((gamma, m)) = cover(rs, beta, alpha) {
                    edges.push(CoverEdge {
                        level: l,
                        source: s,
                        target: t,
                        gamma,
                        multiplicity: m,
                    });
                }
            }
        }
    }
    LevelDiagram {
        label: rs.label(),
        long_ratio: rs.long_ratio(),
        levels,
        edges,
    }
}

/// The positive root `γ` with `s_γ(β) = α`, if any, with `⟨β, γ∨⟩`. Such a `γ`
/// is proportional to `β − α`.
fn cover(rs: &RootSystem, beta: &Root, alpha: &Root) -> Option<(Root, i64)> {
    let diff: Vec<i64> = beta
        .coeffs()
        .iter()
        .zip(alpha.coeffs())
        .map(|(b, a)| b - a)
        .collect();
    let g = diff.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    let prim: Vec<i64> = diff.iter().map(|x| x / g).collect();
    let k = rs.index_of(&prim)?;
    if !rs.is_positive_index(k) {
        return None;
    }
    let gamma = rs.root(k);
    if rs.reflect(gamma, beta) != *alpha {
        return None;
    }
    Some((gamma.clone(), rs.pairing(beta, gamma)))
}

impl LevelDiagram {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn long_ratio(&self) -> i64 {
        self.long_ratio
    }

    /// `d = 2h∨ − 2`.
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<Root>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &[Root] {
        self.levels.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn edge_source(&self, e: &CoverEdge) -> &Root {
        &self.levels[e.level][e.source]
    }

    pub fn edge_target(&self, e: &CoverEdge) -> &Root {
        &self.levels[e.level + 1][e.target]
    }

    pub fn edge_triples(&self) -> Vec<EdgeTriple> {
        let mut out: Vec<EdgeTriple> = self
            .edges
            .iter()
            .map(|e| {
                (
                    self.edge_source(e).coeffs().to_vec(),
                    self.edge_target(e).coeffs().to_vec(),
                    e.multiplicity,
                )
            })
            .collect();
        out.sort();
        out
    }

    /// Index of the level holding the positive long simple roots, `h∨ − 2`.
    /// The crossing block is `D_{h∨−1}`.
    pub fn crossing_level(&self) -> usize {
        self.levels.len() / 2 - 1
    }

    /// `D_i` for `0 ≤ i ≤ d`: `|level i| × |level i−1|`, with out-of-range
    /// levels treated as empty.
    pub fn differential_matrix(&self, i: usize) -> DiffMatrix {
        let rows = self.level(i).len();
        let cols = if i == 0 { 0 } else { self.level(i - 1).len() };
        let mut m = IntMatrix::zeros(rows, cols);
        if i > 0 {
            for e in self.edges.iter().filter(|e| e.level + 1 == i) {
                m.set(e.target, e.source, e.multiplicity);
            }
        }
        DiffMatrix {
            index: i,
            matrix: m,
        }
    }

    /// `D_0, …, D_d`.
    pub fn differential_matrices(&self) -> Vec<DiffMatrix> {
        (0..=self.levels.len())
            .map(|i| self.differential_matrix(i))
            .collect()
    }

    /// Graph description with one rank row per level.
    pub fn export_dot(&self) -> String {
        let name = |l: usize, p: usize| format!("n{l}_{p}");
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", self.label).unwrap();
        writeln!(out, "  rankdir=TB;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (l, level) in self.levels.iter().enumerate() {
            write!(out, "  {{ rank=same;").unwrap();
            for (p, root) in level.iter().enumerate() {
                write!(out, " {} [label=\"{}\"];", name(l, p), root.label()).unwrap();
            }
            writeln!(out, " }}").unwrap();
        }
        for e in &self.edges {
            write!(
                out,
                "  {} -> {}",
                name(e.level, e.source),
                name(e.level + 1, e.target)
            )
            .unwrap();
            if e.multiplicity > 1 {
                write!(out, " [label=\"{}\"]", e.multiplicity).unwrap();
            }
            writeln!(out, ";").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Recomputes the covers on the Weyl-group side: pairs `x_β, x_α ∈ X_Ĩ` with
/// `l(x_α) = l(x_β) + 1` and `x_α = s_γ x_β`, labelled `⟨β, γ∨⟩`.
pub fn oracle_edges(rs: &RootSystem, cap: usize) -> Result<Vec<EdgeTriple>> {
    let x = coset_reps(rs, rs.i_tilde(), cap)?;
    let reflections = reflection_table(rs);
    let top = rs.highest_root_index();
    let mut out = Vec::new();
    for a in &x.reps {
        let a_inv = a.inverse();
        for b in x.reps.iter().filter(|b| b.length() == a.length() + 1) {
            let Some(&g) = reflections.get(b.compose(&a_inv).perm()) else {
                continue;
            };
            let beta = rs.root(a.apply_index(top));
            let alpha = rs.root(b.apply_index(top));
            out.push((
                beta.coeffs().to_vec(),
                alpha.coeffs().to_vec(),
                rs.pairing(beta, rs.root(g)),
            ));
        }
    }
    out.sort();
    Ok(out)
}

/// Whether the root-side and Weyl-side edge sets agree, multiplicities
/// included.
pub fn oracle_check_edges(rs: &RootSystem, cap: usize) -> Result<bool> {
    let ours = build_level_diagram(rs).edge_triples();
    let theirs = oracle_edges(rs, cap)?;
    let dup_free = ours
        .iter()
        .map(|(b, a, _)| (b, a))
        .collect::<BTreeSet<_>>()
        .len()
        == ours.len();
    Ok(dup_free && ours == theirs)
}

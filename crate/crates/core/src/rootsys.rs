//! Irreducible reduced root systems built from a Cartan datum.
//!
//! Conventions used throughout the crate:
//!
//! * `C[i][j] = ⟨α_i, α_j∨⟩`, so that `s_j(α_i) = α_i − C[i][j] α_j`.
//! * The symmetrizer stores the squared lengths `d_j = (α_j|α_j)`, normalized
//!   so that the shortest roots have squared length 1. The doubled form
//!   `2(α_i|α_j) = d_j C[i][j]` is then an integer matrix and every
//!   computation stays in ℤ.
//! * Simple roots are numbered as in Bourbaki, with `G2` taking `α₁` long.
//! * Roots are coefficient vectors over the simple roots. Positive roots come
//!   first, sorted by height and then by descending coefficient vector, so
//!   that simple root `α_i` has index `i`; the negative roots follow in the
//!   same order, so that `−root[k]` is `root[k + |Φ⁺|]`.

use std::cmp::Reverse;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper bound on the number of roots the closure may produce before the
/// datum is declared not to be of finite type.
const MAX_ROOTS: usize = 1 << 16;
/// No root of a finite-type system has a coefficient above 6 (E8).
const MAX_COEFF: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    /// The rank is determined by the family for `F` and `G`.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::F => Some(4),
            Family::G => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType {
                label: other.to_string(),
                valid: RankLimits::default().describe(),
            }),
        }
    }
}

/// Splits a label such as `"E8"`, `"b3"` or `"A"` into family and rank.
pub fn parse_type_label(label: &str) -> Result<(Family, Option<usize>)> {
    let label = label.trim();
    let mut chars = label.chars();
    let first = chars.next().ok_or_else(|| Error::InvalidType {
        label: String::new(),
        valid: RankLimits::default().describe(),
    })?;
    let family: Family = first.to_string().parse()?;
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok((family, family.fixed_rank()));
    }
    let rank = rest.parse::<usize>().map_err(|_| Error::InvalidType {
        label: label.to_string(),
        valid: RankLimits::default().describe(),
    })?;
    Ok((family, Some(rank)))
}

/// Rank bounds accepted by [`RootSystem::build_with_limits`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankLimits {
    pub max_a: usize,
    pub max_bcd: usize,
}

impl Default for RankLimits {
    fn default() -> Self {
        RankLimits {
            max_a: 32,
            max_bcd: 16,
        }
    }
}

impl RankLimits {
    pub fn range(&self, family: Family) -> (usize, usize) {
        match family {
            Family::A => (1, self.max_a),
            Family::B | Family::C => (2, self.max_bcd),
            Family::D => (3, self.max_bcd),
            Family::E => (6, 8),
            Family::F => (4, 4),
            Family::G => (2, 2),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "A1..A{}, B2..B{}, C2..C{}, D3..D{}, E6, E7, E8, F4, G2",
            self.max_a, self.max_bcd, self.max_bcd, self.max_bcd
        )
    }

    /// Every `(family, rank)` within the limits.
    pub fn types(&self) -> Vec<(Family, usize)> {
        Family::ALL
            .iter()
            .flat_map(|&f| {
                let (lo, hi) = self.range(f);
                (lo..=hi).map(move |n| (f, n))
            })
            .collect()
    }

    pub fn check(&self, family: Family, rank: usize) -> Result<()> {
        let (lo, hi) = self.range(family);
        if rank < lo || rank > hi {
            return Err(Error::InvalidType {
                label: format!("{family}{rank}"),
                valid: self.describe(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
}

impl CartanDatum {
    /// Validates a datum. The symmetrizer must already be normalized with
    /// minimum 1.
    pub fn new(
        family: Family,
        rank: usize,
        cartan: Vec<Vec<i64>>,
        symmetrizer: Vec<i64>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidDatum(msg));
        if rank == 0 {
            return bad("rank must be positive".into());
        }
        if cartan.len() != rank || cartan.iter().any(|row| row.len() != rank) {
            return bad(format!("Cartan matrix must be {rank}x{rank}"));
        }
        if symmetrizer.len() != rank {
            return bad(format!("symmetrizer must have {rank} entries"));
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return bad(format!("C[{i}][{i}] = {} (expected 2)", cartan[i][i]));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if cartan[i][j] > 0 {
                    return bad(format!("C[{i}][{j}] = {} is positive", cartan[i][j]));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return bad(format!("C[{i}][{j}] and C[{j}][{i}] disagree on vanishing"));
                }
                if symmetrizer[j] * cartan[i][j] != symmetrizer[i] * cartan[j][i] {
                    return bad(format!("symmetrizer does not symmetrize entry ({i},{j})"));
                }
            }
        }
        let min = *symmetrizer.iter().min().unwrap();
        let max = *symmetrizer.iter().max().unwrap();
        if min != 1 {
            return bad(format!("minimum squared length is {min}, expected 1"));
        }
        if !(1..=3).contains(&max) {
            return bad(format!("long/short ratio {max} not in {{1,2,3}}"));
        }
        let datum = CartanDatum {
            family,
            rank,
            cartan,
            symmetrizer,
        };
        if !datum.is_connected() {
            return bad("Dynkin diagram is not connected".into());
        }
        Ok(datum)
    }

    /// The datum of a simple type, with Bourbaki numbering.
    pub fn standard(family: Family, rank: usize) -> Result<Self> {
        let invalid = || Error::InvalidType {
            label: format!("{family}{rank}"),
            valid: RankLimits::default().describe(),
        };
        let n = rank;
        let chain = |len: usize| {
            (0..len.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>()
        };
        let (edges, lengths): (Vec<(usize, usize)>, Vec<i64>) = match family {
            Family::A if n >= 1 => (chain(n), vec![1; n]),
            Family::B if n >= 2 => {
                let mut d = vec![2; n];
                d[n - 1] = 1;
                (chain(n), d)
            }
            Family::C if n >= 2 => {
                let mut d = vec![1; n];
                d[n - 1] = 2;
                (chain(n), d)
            }
            Family::D if n >= 3 => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (e, vec![1; n])
            }
            Family::E if (6..=8).contains(&n) => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                (e, vec![1; n])
            }
            Family::F if n == 4 => (chain(4), vec![2, 2, 1, 1]),
            Family::G if n == 2 => (chain(2), vec![3, 1]),
            _ => return Err(invalid()),
        };
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            // 2(α_i|α_j) = −max(d_i, d_j) for every bond of a finite-type diagram
            let doubled = -lengths[i].max(lengths[j]);
            cartan[i][j] = doubled / lengths[j];
            cartan[j][i] = doubled / lengths[i];
        }
        CartanDatum::new(family, rank, cartan, lengths)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `2(α_i|α_j)`.
    pub fn doubled_form(&self, i: usize, j: usize) -> i64 {
        self.symmetrizer[j] * self.cartan[i][j]
    }

    /// Squared length of the long roots.
    pub fn long_ratio(&self) -> i64 {
        *self.symmetrizer.iter().max().unwrap()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.rank];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.rank {
                if !seen[j] && self.cartan[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    coeffs: Vec<i64>,
    is_long: bool,
}

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_long(&self) -> bool {
        self.is_long
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            is_long: self.is_long,
        }
    }

    /// Compact label `n₁n₂…n_r`, prefixed with `-` for negative roots.
    pub fn label(&self) -> String {
        let wide = self.coeffs.iter().any(|c| c.abs() >= 10);
        let digits: Vec<String> = self.coeffs.iter().map(|c| c.abs().to_string()).collect();
        let body = if wide {
            digits.join(".")
        } else {
            digits.concat()
        };
        if self.is_positive() {
            body
        } else {
            format!("-{body}")
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All of Φ together with the combinatorial data derived from the highest root.
#[derive(Clone, Debug)]
pub struct RootSystem {
    datum: CartanDatum,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    num_positive: usize,
    highest_root: usize,
    coxeter_number: i64,
    dual_coxeter_number: i64,
    i_tilde: Vec<usize>,
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        Self::build_with_limits(family, rank, &RankLimits::default())
    }

    pub fn build_with_limits(family: Family, rank: usize, limits: &RankLimits) -> Result<Self> {
        limits.check(family, rank)?;
        Self::from_datum(CartanDatum::standard(family, rank)?)
    }

    /// Enumerates Φ as the closure of the simple roots under simple reflections.
    pub fn from_datum(datum: CartanDatum) -> Result<Self> {
        let n = datum.rank();
        let mut found: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            found.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let p: i64 = (0..n).map(|k| beta[k] * datum.cartan[k][i]).sum();
                if p == 0 {
                    continue;
                }
                let mut image = beta.clone();
                image[i] -= p;
                if !found.contains_key(&image) {
                    if found.len() >= MAX_ROOTS || image[i].abs() > MAX_COEFF {
                        return Err(Error::InvalidDatum(
                            "root closure does not terminate; datum is not of finite type".into(),
                        ));
                    }
                    found.insert(image.clone(), ());
                    queue.push_back(image);
                }
            }
        }

        let mut positive: Vec<Vec<i64>> = Vec::with_capacity(found.len() / 2);
        for v in found.keys() {
            let pos = v.iter().all(|&c| c >= 0);
            let neg = v.iter().all(|&c| c <= 0);
            if !pos && !neg {
                return Err(Error::InvalidDatum(format!("root {v:?} has mixed signs")));
            }
            if pos {
                let minus: Vec<i64> = v.iter().map(|c| -c).collect();
                if !found.contains_key(&minus) {
                    return Err(Error::InvalidDatum(format!("root {v:?} has no negative")));
                }
                positive.push(v.clone());
            }
        }
        positive.sort_by_key(|v| (v.iter().sum::<i64>(), Reverse(v.clone())));

        let r = datum.long_ratio();
        let doubled = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    s += a[i] * b[j] * datum.doubled_form(i, j);
                }
            }
            s
        };
        let num_positive = positive.len();
        let mut roots = Vec::with_capacity(2 * num_positive);
        for v in &positive {
            roots.push(Root {
                is_long: doubled(v, v) == 2 * r,
                coeffs: v.clone(),
            });
        }
        for k in 0..num_positive {
            roots.push(roots[k].negated());
        }
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, root)| (root.coeffs.clone(), k))
            .collect();

        let highest_root = num_positive - 1;
        let top = &roots[highest_root];
        let dominates_all = roots[..num_positive]
            .iter()
            .all(|b| b.coeffs.iter().zip(&top.coeffs).all(|(x, y)| x <= y));
        if !dominates_all {
            return Err(Error::InvalidDatum("no unique highest root".into()));
        }
        let i_tilde = (0..n)
            .filter(|&j| {
                let mut e = vec![0; n];
                e[j] = 1;
                doubled(&top.coeffs, &e) == 0
            })
            .collect();

        let mut rs = RootSystem {
            datum,
            roots,
            index,
            num_positive,
            highest_root,
            coxeter_number: 0,
            dual_coxeter_number: 0,
            i_tilde,
        };
        rs.coxeter_number = rs.roots[highest_root].height() + 1;
        rs.dual_coxeter_number = rs.dual_height(&rs.roots[highest_root]) + 1;
        Ok(rs)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn family(&self) -> Family {
        self.datum.family
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn label(&self) -> String {
        self.datum.label()
    }

    /// `r = max (α|α)`.
    pub fn long_ratio(&self) -> i64 {
        self.datum.long_ratio()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive]
    }

    pub fn is_positive_index(&self, k: usize) -> bool {
        k < self.num_positive
    }

    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn index_of_root(&self, root: &Root) -> Option<usize> {
        self.index_of(&root.coeffs)
    }

    /// Index of `−root[k]`.
    pub fn negation(&self, k: usize) -> usize {
        if k < self.num_positive {
            k + self.num_positive
        } else {
            k - self.num_positive
        }
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest_root]
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest_root
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.dual_coxeter_number
    }

    /// Simple roots orthogonal to the highest root.
    pub fn i_tilde(&self) -> &[usize] {
        &self.i_tilde
    }

    pub fn long_root_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&k| self.roots[k].is_long)
    }

    pub fn num_long_roots(&self) -> usize {
        self.roots.iter().filter(|r| r.is_long).count()
    }

    pub fn long_simple_indices(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.roots[i].is_long)
            .collect()
    }

    /// `2(a|b)` for coefficient vectors.
    pub fn doubled_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 {
                    s += a[i] * b[j] * self.datum.doubled_form(i, j);
                }
            }
        }
        s
    }

    /// `⟨β, γ∨⟩ = 2(β|γ)/(γ|γ)`.
    pub fn pairing(&self, beta: &Root, gamma: &Root) -> i64 {
        self.pairing_coeffs(&beta.coeffs, &gamma.coeffs)
    }

    pub fn pairing_coeffs(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let num = 2 * self.doubled_form(beta, gamma);
        let den = self.doubled_form(gamma, gamma);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// `s_γ(β) = β − ⟨β, γ∨⟩ γ`.
    pub fn reflect(&self, gamma: &Root, beta: &Root) -> Root {
        let p = self.pairing(beta, gamma);
        let image: Vec<i64> = beta
            .coeffs
            .iter()
            .zip(&gamma.coeffs)
            .map(|(b, g)| b - p * g)
            .collect();
        let k = self
            .index_of(&image)
            .expect("reflection of a root is a root");
        self.roots[k].clone()
    }

    /// Index-level version of [`RootSystem::reflect`].
    pub fn reflect_index(&self, gamma: usize, beta: usize) -> usize {
        let g = &self.roots[gamma].coeffs;
        let b = &self.roots[beta].coeffs;
        let p = self.pairing_coeffs(b, g);
        if p == 0 {
            return beta;
        }
        let image: Vec<i64> = b.iter().zip(g).map(|(x, y)| x - p * y).collect();
        self.index[&image]
    }

    /// Height of the coroot `α∨ = 2α/(α|α)` in the basis of simple coroots.
    ///
    /// For a long root this is `Σ_long n_i + (1/r) Σ_short n_i`; it is an
    /// integer for every root.
    pub fn dual_height(&self, alpha: &Root) -> i64 {
        let d = self.datum.symmetrizer();
        let num: i64 = alpha.coeffs.iter().zip(d).map(|(n, d)| 2 * n * d).sum();
        let den = self.doubled_form(&alpha.coeffs, &alpha.coeffs);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Level of a long root: its distance below the highest root in the
    /// cover poset, in `[0, 2h∨ − 3]`.
    pub fn level(&self, alpha: &Root) -> Result<usize> {
        if !alpha.is_long {
            return Err(Error::ShortRoot(alpha.label()));
        }
        let top = self.dual_coxeter_number - 1;
        let l = if alpha.is_positive() {
            top - self.dual_height(alpha)
        } else {
            top - self.dual_height(alpha) - 1
        };
        Ok(l as usize)
    }

    /// Number of levels, `2h∨ − 2`.
    pub fn num_levels(&self) -> usize {
        (2 * self.dual_coxeter_number - 2) as usize
    }

    /// The sub-root system Φ′ generated by the long simple roots.
    pub fn long_simple_subsystem(&self) -> RootSystem {
        let long = self.long_simple_indices();
        if long.len() == self.rank() {
            return self.clone();
        }
        // For B, C, F and G the long simple roots span a type A chain, in
        // the ambient numbering order.
        let cartan: Vec<Vec<i64>> = long
            .iter()
            .map(|&i| long.iter().map(|&j| self.datum.cartan[i][j]).collect())
            .collect();
        let datum = CartanDatum::new(Family::A, long.len(), cartan, vec![1; long.len()])
            .expect("long simple roots form a simply-laced connected diagram");
        debug_assert_eq!(datum, CartanDatum::standard(Family::A, long.len()).unwrap());
        RootSystem::from_datum(datum).expect("type A datum is of finite type")
    }
}

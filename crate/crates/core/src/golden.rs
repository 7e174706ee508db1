//! Reference data: closed-form cohomology of the classical families, the
//! hand-transcribed tables and matrices of the exceptional types, and the
//! standard Weyl-degree and bad-prime tables.
//!
//! Exceptional data lives in `fixtures/` as plain text so that a
//! transcription slip shows up in a diff.

use crate::error::{Error, Result};
use crate::gysin::GradedCohomology;
use crate::rootsys::{CartanDatum, Family};
use crate::zlinalg::{FGAbelianGroup, IntMatrix};

const COHOMOLOGY_E6: &str = include_str!("../fixtures/cohomology/E6.txt");
const COHOMOLOGY_E7: &str = include_str!("../fixtures/cohomology/E7.txt");
const COHOMOLOGY_E8: &str = include_str!("../fixtures/cohomology/E8.txt");
const COHOMOLOGY_F4: &str = include_str!("../fixtures/cohomology/F4.txt");
const COHOMOLOGY_G2: &str = include_str!("../fixtures/cohomology/G2.txt");
const MATRICES_E6: &str = include_str!("../fixtures/matrices/E6.txt");
const MATRICES_E7: &str = include_str!("../fixtures/matrices/E7.txt");
const MATRICES_E8: &str = include_str!("../fixtures/matrices/E8.txt");
const MATRICES_F4: &str = include_str!("../fixtures/matrices/F4.txt");
const MATRICES_G2: &str = include_str!("../fixtures/matrices/G2.txt");

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses `Z`, `Z^2`, `Z/4`, `Z/2 + Z/2`, `0`.
pub fn parse_group(text: &str) -> Result<FGAbelianGroup> {
    let text = text.trim();
    if text == "0" {
        return Ok(FGAbelianGroup::zero());
    }
    let mut free = 0;
    let mut orders = Vec::new();
    for term in text.split('+').map(str::trim) {
        let bad = || Error::Fixture(format!("cannot parse group term {term:?}"));
        if term == "Z" {
            free += 1;
        } else if let Some(k) = term.strip_prefix("Z^") {
            free += k.parse::<usize>().map_err(|_| bad())?;
        } else if let Some(n) = term.strip_prefix("Z/") {
            orders.push(n.parse::<u64>().map_err(|_| bad())?);
        } else {
            return Err(bad());
        }
    }
    Ok(FGAbelianGroup::from_orders(free, &orders))
}

/// Parses a table: a `top N` line, then `degree group` lines.
pub fn parse_cohomology_table(text: &str) -> Result<GradedCohomology> {
    let mut h: Option<GradedCohomology> = None;
    for (lineno, line) in content_lines(text) {
        let (head, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Fixture(format!("line {lineno}: expected two fields")))?;
        if head == "top" {
            let top = rest
                .trim()
                .parse()
                .map_err(|_| Error::Fixture(format!("line {lineno}: bad top degree")))?;
            h = Some(GradedCohomology::new(top));
            continue;
        }
        let table = h
            .as_mut()
            .ok_or_else(|| Error::Fixture(format!("line {lineno}: degree before `top`")))?;
        let degree: usize = head
            .parse()
            .map_err(|_| Error::Fixture(format!("line {lineno}: bad degree {head:?}")))?;
        if !table.get(degree).is_zero() {
            return Err(Error::Fixture(format!(
                "line {lineno}: degree {degree} repeated"
            )));
        }
        table.insert(degree, parse_group(rest)?)?;
    }
    h.ok_or_else(|| Error::Fixture("missing `top` line".into()))
}

/// Parses `Dk: a b; c d` lines into `(k, matrix)` pairs.
pub fn parse_matrix_list(text: &str) -> Result<Vec<(usize, IntMatrix)>> {
    let mut out = Vec::new();
    for (lineno, line) in content_lines(text) {
        let err = |what: &str| Error::Fixture(format!("line {lineno}: {what}"));
        let (name, body) = line.split_once(':').ok_or_else(|| err("expected `Dk:`"))?;
        let k: usize = name
            .trim()
            .strip_prefix('D')
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| err("bad matrix name"))?;
        let rows: Vec<Vec<i64>> = body
            .split(';')
            .map(|r| r.split_whitespace().map(str::parse).collect())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err("bad entry"))?;
        out.push((
            k,
            IntMatrix::from_rows(&rows).map_err(|_| err("ragged rows"))?,
        ));
    }
    Ok(out)
}

fn fixture(family: Family, rank: usize) -> Result<(&'static str, &'static str)> {
    match (family, rank) {
        (Family::E, 6) => Ok((COHOMOLOGY_E6, MATRICES_E6)),
        (Family::E, 7) => Ok((COHOMOLOGY_E7, MATRICES_E7)),
        (Family::E, 8) => Ok((COHOMOLOGY_E8, MATRICES_E8)),
        (Family::F, 4) => Ok((COHOMOLOGY_F4, MATRICES_F4)),
        (Family::G, 2) => Ok((COHOMOLOGY_G2, MATRICES_G2)),
        _ => Err(Error::InvalidArgument(format!(
            "no fixture for {family}{rank}"
        ))),
    }
}

/// The printed table for an exceptional type.
pub fn exceptional_cohomology(family: Family, rank: usize) -> Result<GradedCohomology> {
    parse_cohomology_table(fixture(family, rank)?.0)
}

/// The printed differentials `D_1, …` for an exceptional type; the rest
/// follow by transposition.
pub fn exceptional_matrices(family: Family, rank: usize) -> Result<Vec<(usize, IntMatrix)>> {
    parse_matrix_list(fixture(family, rank)?.1)
}

fn table(
    top: usize,
    entries: impl IntoIterator<Item = (usize, FGAbelianGroup)>,
) -> GradedCohomology {
    let mut h = GradedCohomology::new(top);
    for (n, g) in entries {
        let merged = h.get(n).sum(&g);
        h.insert(n, merged).expect("degree within range");
    }
    h
}

/// Closed-form `H^*` of `A_{n−1}`, `n ≥ 2`.
pub fn type_a(n: usize) -> GradedCohomology {
    let z = FGAbelianGroup::free(1);
    let top = 4 * n - 5;
    table(
        top,
        (0..=top).filter_map(|i| {
            if (i % 2 == 0 && i + 4 <= 2 * n) || (i % 2 == 1 && i + 1 >= 2 * n) {
                Some((i, z.clone()))
            } else if i == 2 * n - 2 {
                Some((i, FGAbelianGroup::cyclic(n as u64)))
            } else {
                None
            }
        }),
    )
}

/// Closed-form `H^*` of `B_n`, `n ≥ 2`.
pub fn type_b(n: usize) -> GradedCohomology {
    let top = 8 * n - 9;
    table(
        top,
        (0..=top).flat_map(|i| {
            let mut v = Vec::new();
            if (i % 4 == 0 && i + 8 <= 4 * n) || (i % 4 == 3 && i + 1 >= 4 * n) {
                v.push((i, FGAbelianGroup::free(1)));
            }
            if i % 4 == 2 && i + 2 >= 2 * n && i + 6 <= 6 * n {
                v.push((i, FGAbelianGroup::cyclic(2)));
            }
            if i == 4 * n - 4 {
                v.push((i, FGAbelianGroup::cyclic(n as u64)));
            }
            v
        }),
    )
}

/// Closed-form `H^*` of `C_n`, `n ≥ 2`.
pub fn type_c(n: usize) -> GradedCohomology {
    let top = 4 * n - 1;
    table(
        top,
        (0..=top).filter_map(|i| {
            if i == 0 || i == top {
                Some((i, FGAbelianGroup::free(1)))
            } else if i % 2 == 0 {
                Some((i, FGAbelianGroup::cyclic(2)))
            } else {
                None
            }
        }),
    )
}

/// Closed-form `H^*` of `D_n`. The general formula holds for `n ≥ 4`;
/// `D_3 = A_3` is answered by the type `A` formula.
pub fn type_d(n: usize) -> GradedCohomology {
    if n == 3 {
        return type_a(4);
    }
    let top = 8 * n - 13;
    table(
        top,
        (0..=top).flat_map(|i| {
            let mut v = Vec::new();
            if (i % 4 == 0 && i + 8 <= 4 * n) || (i % 4 == 3 && i + 5 >= 4 * n) {
                v.push((i, FGAbelianGroup::free(1)));
            }
            // The odd partner of the extra class in degree 2n − 4 sits in
            // 6n − 9 = top − (2n − 4).
            if i == 2 * n - 4 || i == 6 * n - 9 {
                v.push((i, FGAbelianGroup::free(1)));
            }
            let lower = i + 4 > 2 * n && i + 6 < 4 * n;
            let upper = i + 6 > 4 * n && i + 8 < 6 * n;
            if i % 4 == 2 && (lower || upper) {
                v.push((i, FGAbelianGroup::cyclic(2)));
            }
            if i == 4 * n - 6 {
                let mid = if n.is_multiple_of(2) {
                    FGAbelianGroup::from_orders(0, &[2, 2])
                } else {
                    FGAbelianGroup::cyclic(4)
                };
                v.push((i, mid));
            }
            v
        }),
    )
}

/// The expected `H^*(O_min)` for any type in scope.
pub fn expected_cohomology(family: Family, rank: usize) -> Result<GradedCohomology> {
    Ok(match family {
        Family::A => type_a(rank + 1),
        Family::B => type_b(rank),
        Family::C => type_c(rank),
        Family::D => type_d(rank),
        _ => exceptional_cohomology(family, rank)?,
    })
}

/// Closed form of the middle group `P∨(Φ′)/Q∨(Φ′)`.
pub fn expected_middle_group(family: Family, rank: usize) -> FGAbelianGroup {
    match family {
        Family::A => FGAbelianGroup::cyclic(rank as u64 + 1),
        Family::B => FGAbelianGroup::cyclic(rank as u64),
        Family::C => FGAbelianGroup::cyclic(2),
        Family::D if rank == 3 => FGAbelianGroup::cyclic(4),
        Family::D if rank.is_multiple_of(2) => FGAbelianGroup::from_orders(0, &[2, 2]),
        Family::D => FGAbelianGroup::cyclic(4),
        Family::E => match rank {
            6 => FGAbelianGroup::cyclic(3),
            7 => FGAbelianGroup::cyclic(2),
            _ => FGAbelianGroup::zero(),
        },
        Family::F => FGAbelianGroup::cyclic(3),
        Family::G => FGAbelianGroup::cyclic(2),
    }
}

/// `M(k)`: `k × k`, ones on the diagonal and the subdiagonal.
pub fn m_matrix(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k, k);
    for j in 0..k {
        m.set(j, j, 1);
        if j + 1 < k {
            m.set(j + 1, j, 1);
        }
    }
    m
}

/// `N(k)`: `(k + 1) × k`, ones on the diagonal and the subdiagonal.
pub fn n_matrix(k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(k + 1, k);
    for j in 0..k {
        m.set(j, j, 1);
        m.set(j + 1, j, 1);
    }
    m
}

/// A Cartan matrix with the signs dropped.
pub fn unsigned_cartan(cartan: &[Vec<i64>]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = cartan
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).collect())
        .collect();
    IntMatrix::from_rows(&rows).expect("square matrix")
}

fn unsigned_standard_cartan(family: Family, rank: usize) -> IntMatrix {
    let datum = CartanDatum::standard(family, rank).expect("valid classical type");
    unsigned_cartan(datum.cartan_matrix())
}

fn add_unit(m: &mut IntMatrix, i: usize, j: usize, v: i64) {
    // 1-based; entries outside the matrix are ignored.
    if (1..=m.rows()).contains(&i) && (1..=m.cols()).contains(&j) {
        let x = m.get(i - 1, j - 1) + v;
        m.set(i - 1, j - 1, x);
    }
}

fn m_or_n(i: usize) -> IntMatrix {
    if i % 2 == 1 {
        m_matrix(i.div_ceil(2))
    } else {
        n_matrix(i / 2)
    }
}

/// The closed form of `D_i` for a classical type, for `1 ≤ i ≤ h∨ − 1`
/// (up to and including the crossing block). The remaining matrices are
/// transposes.
pub fn classical_matrix(family: Family, rank: usize, i: usize) -> Option<IntMatrix> {
    let n = rank;
    match family {
        // A_{n−1} with n = rank + 1.
        Family::A if (1..=rank - 1).contains(&i) => Some(n_matrix(i)),
        Family::A if i == rank => Some(unsigned_standard_cartan(Family::A, rank)),
        Family::B if (1..=2 * n - 3).contains(&i) => {
            let mut m = m_or_n(i);
            if i + 1 >= n {
                add_unit(&mut m, i + 2 - n, i + 2 - n, 1);
            }
            Some(m)
        }
        Family::B if i == 2 * n - 2 => Some(unsigned_standard_cartan(Family::A, n - 1)),
        Family::C if (1..=n).contains(&i) => Some(IntMatrix::from_rows(&[[2]]).unwrap()),
        Family::D if n >= 4 && (1..=n - 3).contains(&i) => Some(m_or_n(i)),
        Family::D if n >= 4 && i == n - 2 => {
            let lower = if n.is_multiple_of(2) {
                n_matrix((n - 2) / 2)
            } else {
                m_matrix((n - 1) / 2)
            };
            let mut m = IntMatrix::zeros(lower.rows() + 1, lower.cols());
            m.set(0, 0, 1);
            for r in 0..lower.rows() {
                for c in 0..lower.cols() {
                    m.set(r + 1, c, lower.get(r, c).clone());
                }
            }
            Some(m)
        }
        Family::D if n >= 4 && (n - 1..=2 * n - 4).contains(&i) => {
            let mut m = if i % 2 == 1 {
                m_matrix((i + 3) / 2)
            } else {
                n_matrix((i + 2) / 2)
            };
            let (a, b) = (i + 2 - n, i + 3 - n);
            add_unit(&mut m, a, b, 1);
            add_unit(&mut m, b, b, -1);
            add_unit(&mut m, b, b + 1, 1);
            Some(m)
        }
        Family::D if n >= 4 && i == 2 * n - 3 => Some(unsigned_standard_cartan(Family::D, n)),
        _ => None,
    }
}

/// Degrees of the basic invariants of `W`, in increasing order.
pub fn weyl_degrees(family: Family, rank: usize) -> Vec<usize> {
    let mut d: Vec<usize> = match family {
        Family::A => (2..=rank + 1).collect(),
        Family::B | Family::C => (1..=rank).map(|i| 2 * i).collect(),
        Family::D => (1..rank).map(|i| 2 * i).chain([rank]).collect(),
        Family::E => match rank {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
        Family::F => vec![2, 6, 8, 12],
        Family::G => vec![2, 6],
    };
    d.sort_unstable();
    d
}

/// Primes dividing a coefficient of the highest root.
pub fn bad_primes(family: Family) -> &'static [u64] {
    match family {
        Family::A => &[],
        Family::B | Family::C | Family::D => &[2],
        Family::E => &[2, 3, 5],
        Family::F | Family::G => &[2, 3],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for (f, n) in [
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let h = exceptional_cohomology(f, n).unwrap();
            assert_eq!(h.get(0), FGAbelianGroup::free(1));
            let mats = exceptional_matrices(f, n).unwrap();
            let ks: Vec<usize> = mats.iter().map(|(k, _)| *k).collect();
            assert_eq!(ks, (1..=ks.len()).collect::<Vec<_>>());
            // consecutive matrices compose shapes
            for w in mats.windows(2) {
                assert_eq!(w[0].1.rows(), w[1].1.cols());
            }
        }
    }

    #[test]
    fn group_parser() {
        assert_eq!(parse_group("Z/2 + Z/2").unwrap().torsion(), &[2, 2]);
        assert_eq!(parse_group("Z^3").unwrap(), FGAbelianGroup::free(3));
        assert!(parse_group("Q").is_err());
        assert!(parse_cohomology_table("0 Z").is_err());
        assert!(parse_cohomology_table("top 3\n0 Z\n0 Z").is_err());
    }

    #[test]
    fn closed_forms_small() {
        let a3 = type_a(4);
        assert_eq!(a3.get(6), FGAbelianGroup::cyclic(4));
        assert_eq!(a3.iter().count(), 7);
        let d4 = type_d(4);
        assert_eq!(d4.get(4), FGAbelianGroup::free(2));
        assert_eq!(d4.get(10).torsion(), &[2, 2]);
        assert_eq!(type_d(5).get(14), FGAbelianGroup::cyclic(4));
    }

    #[test]
    fn e8_degrees_count_roots() {
        // Σ (d_i − 1) = |Φ⁺|
        let d = weyl_degrees(Family::E, 8);
        assert_eq!(d.iter().map(|x| x - 1).sum::<usize>(), 120);
        assert_eq!(weyl_degrees(Family::D, 4), vec![2, 4, 4, 6]);
    }
}

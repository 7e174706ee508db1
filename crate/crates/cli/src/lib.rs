//! Request model, rendering and dispatch behind the `minorbit` binary.

use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use minorbit_core::golden;
use minorbit_core::gysin::{
    middle_degree, middle_group, minimal_orbit_cohomology, verify_profiles,
};
use minorbit_core::orbitposet::{build_level_diagram, oracle_check_edges};
use minorbit_core::rootsys::parse_type_label;
use minorbit_core::typea::crosscheck_typea;
use minorbit_core::weyl::DEFAULT_CAP;
use minorbit_core::{
    Error, FGAbelianGroup, Family, GradedCohomology, IntMatrix, LevelDiagram, RankLimits,
    RootSystem,
};

/// Largest rank accepted for `--max-rank`.
pub const MAX_RANK_CEILING: usize = 64;

/// Weyl-side edge checks are run up to this rank.
pub const ORACLE_MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Compute,
    Diagram,
    Matrices,
    Verify,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputationRequest {
    pub command: Command,
    /// `None` for sweeps over every type within `limits`.
    pub target: Option<(Family, usize)>,
    pub format: Format,
    pub cap: usize,
    pub limits: RankLimits,
}

/// Outcome of [`run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    CheckFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::CheckFailed => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl ComputationRequest {
    /// Builds and validates a request from raw option values.
    pub fn new(
        command: Command,
        type_label: Option<&str>,
        rank: Option<usize>,
        format: Format,
        cap: Option<usize>,
        max_rank: Option<usize>,
    ) -> Result<Self, CliError> {
        let limits = match max_rank {
            None => RankLimits::default(),
            Some(n) if (1..=MAX_RANK_CEILING).contains(&n) => RankLimits {
                max_a: n,
                max_bcd: n,
            },
            Some(n) => {
                return Err(CliError::Usage(format!(
                    "--max-rank must be between 1 and {MAX_RANK_CEILING}, got {n}"
                )))
            }
        };
        let cap = cap.unwrap_or(DEFAULT_CAP);
        if cap == 0 {
            return Err(CliError::Usage("--cap must be positive".into()));
        }
        if format == Format::Dot && command != Command::Diagram {
            return Err(CliError::Usage(
                "--format dot is only valid with `diagram`".into(),
            ));
        }
        let target = match type_label {
            None if rank.is_some() => {
                return Err(CliError::Usage("--rank requires --type".into()));
            }
            None => None,
            Some(label) => {
                let (family, label_rank) = parse_type_label(label)?;
                let rank = match (label_rank, rank) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(CliError::Usage(format!(
                            "--type {label} conflicts with --rank {b}"
                        )))
                    }
                    (Some(a), _) | (None, Some(a)) => a,
                    (None, None) => {
                        return Err(CliError::Usage(format!("type {family} needs a rank")));
                    }
                };
                limits.check(family, rank)?;
                Some((family, rank))
            }
        };
        let sweep = matches!(command, Command::All);
        if sweep && target.is_some() {
            return Err(CliError::Usage(
                "`all` sweeps every type; drop --type".into(),
            ));
        }
        if !sweep && command != Command::Verify && target.is_none() {
            return Err(CliError::Usage("--type is required".into()));
        }
        Ok(ComputationRequest {
            command,
            target,
            format,
            cap,
            limits,
        })
    }

    /// Types the request covers.
    pub fn types(&self) -> Vec<(Family, usize)> {
        match self.target {
            Some(t) => vec![t],
            None => self.limits.types(),
        }
    }
}

fn system(family: Family, rank: usize) -> RootSystem {
    RootSystem::build_with_limits(
        family,
        rank,
        &RankLimits {
            max_a: MAX_RANK_CEILING,
            max_bcd: MAX_RANK_CEILING,
        },
    )
    .expect("validated type")
}

fn label(family: Family, rank: usize) -> String {
    format!("{family}{rank}")
}

// ---------------------------------------------------------------- JSON

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CohomologyJson {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    h_dual: usize,
    groups: Vec<GroupJson>,
}

/// A cohomology table tagged with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRecord {
    pub family: Family,
    pub rank: usize,
    pub h_dual: usize,
    pub cohomology: GradedCohomology,
}

impl CohomologyRecord {
    pub fn compute(family: Family, rank: usize) -> Self {
        let rs = system(family, rank);
        CohomologyRecord {
            family,
            rank,
            h_dual: rs.dual_coxeter_number() as usize,
            cohomology: minimal_orbit_cohomology(&rs),
        }
    }

    fn to_json_value(&self) -> CohomologyJson {
        CohomologyJson {
            family: self.family.to_string(),
            rank: self.rank,
            h_dual: self.h_dual,
            groups: self
                .cohomology
                .iter()
                .map(|(degree, g)| GroupJson {
                    degree,
                    free_rank: g.free_rank(),
                    torsion: g.torsion().to_vec(),
                })
                .collect(),
        }
    }

    fn from_json_value(v: CohomologyJson) -> Result<Self, CliError> {
        let family: Family = v.family.parse()?;
        if v.h_dual < 2 {
            return Err(CliError::Usage(format!(
                "h_dual must be at least 2, got {}",
                v.h_dual
            )));
        }
        let mut cohomology = GradedCohomology::new(4 * v.h_dual - 5);
        for g in v.groups {
            let group = FGAbelianGroup::new(g.free_rank, g.torsion)?;
            if !cohomology.get(g.degree).is_zero() {
                return Err(CliError::Usage(format!("degree {} repeated", g.degree)));
            }
            cohomology.insert(g.degree, group)?;
        }
        Ok(CohomologyRecord {
            family,
            rank: v.rank,
            h_dual: v.h_dual,
            cohomology,
        })
    }
}

/// Stable JSON: `{"type", "rank", "h_dual", "groups": [{"degree", "free_rank", "torsion"}]}`.
/// Zero groups are omitted; torsion is in invariant-factor order.
pub fn render_json(record: &CohomologyRecord) -> String {
    serde_json::to_string_pretty(&record.to_json_value()).expect("serializable")
}

/// Inverse of [`render_json`].
pub fn parse_json(text: &str) -> Result<CohomologyRecord, CliError> {
    CohomologyRecord::from_json_value(serde_json::from_str(text)?)
}

// ---------------------------------------------------------------- text

/// Table with torsion written as a primary decomposition.
pub fn render_text(record: &CohomologyRecord) -> String {
    let mut out = String::new();
    let h = &record.cohomology;
    writeln!(
        out,
        "H^i(O_min, ℤ) for {} (h∨ = {}, top degree {})",
        label(record.family, record.rank),
        record.h_dual,
        h.top_degree()
    )
    .unwrap();
    let width = h.top_degree().to_string().len();
    for (n, g) in h.iter() {
        writeln!(out, "  i = {n:>width$}   {}", g.to_primary_string()).unwrap();
    }
    writeln!(out, "  0 in all other degrees").unwrap();
    out
}

fn matrix_text(m: &IntMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("({}x{} empty)", m.rows(), m.cols());
    }
    if m.cols() == 1 {
        let entries: Vec<String> = m.to_rows().iter().map(|r| r[0].to_string()).collect();
        return format!("({})", entries.join("; "));
    }
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn render_diagram_text(d: &LevelDiagram) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "level diagram of {} ({} long roots)",
        d.label(),
        d.num_nodes()
    )
    .unwrap();
    for (l, level) in d.levels().iter().enumerate() {
        let roots: Vec<String> = level.iter().map(|r| r.label()).collect();
        writeln!(out, "  {l:>3}: {}", roots.join("  ")).unwrap();
    }
    writeln!(out, "edges:").unwrap();
    for e in d.edges() {
        let m = if e.multiplicity > 1 {
            format!("  x{}", e.multiplicity)
        } else {
            String::new()
        };
        writeln!(
            out,
            "  {} -> {}{m}",
            d.edge_source(e).label(),
            d.edge_target(e).label()
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct DiagramJson {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    levels: Vec<Vec<Vec<i64>>>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct EdgeJson {
    level: usize,
    source: usize,
    target: usize,
    gamma: Vec<i64>,
    multiplicity: i64,
}

#[derive(Serialize)]
struct MatricesJson {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    matrices: Vec<MatrixJson>,
}

#[derive(Serialize)]
struct MatrixJson {
    index: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
}

// ---------------------------------------------------------------- verify

/// A named verification result.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    #[serde(rename = "type")]
    pub type_label: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Every check that applies to one type.
pub fn verify_type(family: Family, rank: usize, cap: usize) -> Vec<CheckResult> {
    let rs = system(family, rank);
    let type_label = label(family, rank);
    let mut out = Vec::new();
    let mut push = |check: &str, passed: bool, detail: String| {
        out.push(CheckResult {
            type_label: type_label.clone(),
            check: check.to_string(),
            passed,
            detail,
        })
    };

    let h = minimal_orbit_cohomology(&rs);
    match golden::expected_cohomology(family, rank) {
        Ok(want) => {
            let diff: Vec<String> = (0..=h.top_degree().max(want.top_degree()))
                .filter(|&n| h.get(n) != want.get(n))
                .map(|n| format!("H^{n}: {} vs {}", h.get(n), want.get(n)))
                .collect();
            push(
                "golden-table",
                diff.is_empty() && h.top_degree() == want.top_degree(),
                if diff.is_empty() {
                    "all degrees agree".into()
                } else {
                    diff.join("; ")
                },
            );
        }
        Err(e) => push("golden-table", false, e.to_string()),
    }

    let d = build_level_diagram(&rs);
    let printed: Vec<(usize, IntMatrix)> = match family {
        Family::E | Family::F | Family::G => {
            golden::exceptional_matrices(family, rank).unwrap_or_default()
        }
        _ => (1..rs.dual_coxeter_number() as usize)
            .filter_map(|i| golden::classical_matrix(family, rank, i).map(|m| (i, m)))
            .collect(),
    };
    if !printed.is_empty() {
        let bad: Vec<usize> = printed
            .iter()
            .filter(|(i, m)| d.differential_matrix(*i).matrix != *m)
            .map(|(i, _)| *i)
            .collect();
        push(
            "printed-matrices",
            bad.is_empty(),
            format!(
                "{} matrices compared; differing indices {bad:?}",
                printed.len()
            ),
        );
    }

    let mid = middle_group(&rs);
    let expected_mid = golden::expected_middle_group(family, rank);
    push(
        "middle-closed-form",
        mid == expected_mid,
        format!(
            "coker Cartan(Φ′) = {mid}, closed form {expected_mid}, H^{} = {}",
            middle_degree(&rs),
            h.get(middle_degree(&rs))
        ),
    );

    for c in verify_profiles(&rs).checks {
        push(c.name, c.passed, c.detail);
    }

    if family == Family::A {
        match crosscheck_typea(rank + 1) {
            Ok(ok) => push("type-a-second-method", ok, format!("n = {}", rank + 1)),
            Err(e) => push("type-a-second-method", false, e.to_string()),
        }
    }

    if rank <= ORACLE_MAX_RANK {
        match oracle_check_edges(&rs, cap) {
            Ok(ok) => push("weyl-oracle", ok, format!("{} edges", d.edges().len())),
            Err(e) => push("weyl-oracle", false, e.to_string()),
        }
    }
    out
}

// ---------------------------------------------------------------- dispatch

/// Executes a request, writing results to `out`.
pub fn run(req: &ComputationRequest, out: &mut dyn Write) -> Result<Status, CliError> {
    match req.command {
        Command::Compute | Command::All => {
            let records: Vec<CohomologyRecord> = req
                .types()
                .par_iter()
                .map(|&(f, n)| CohomologyRecord::compute(f, n))
                .collect();
            match req.format {
                Format::Json if req.command == Command::All => {
                    let values: Vec<CohomologyJson> =
                        records.iter().map(|r| r.to_json_value()).collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&values)?)?;
                }
                Format::Json => writeln!(out, "{}", render_json(&records[0]))?,
                _ => {
                    for (k, r) in records.iter().enumerate() {
                        if k > 0 {
                            writeln!(out)?;
                        }
                        write!(out, "{}", render_text(r))?;
                    }
                }
            }
            Ok(Status::Pass)
        }
        Command::Diagram => {
            let (f, n) = req.target.expect("validated");
            let d = build_level_diagram(&system(f, n));
            match req.format {
                Format::Dot => write!(out, "{}", d.export_dot())?,
                Format::Text => write!(out, "{}", render_diagram_text(&d))?,
                Format::Json => {
                    let value = DiagramJson {
                        family: f.to_string(),
                        rank: n,
                        levels: d
                            .levels()
                            .iter()
                            .map(|l| l.iter().map(|r| r.coeffs().to_vec()).collect())
                            .collect(),
                        edges: d
                            .edges()
                            .iter()
                            .map(|e| EdgeJson {
                                level: e.level,
                                source: e.source,
                                target: e.target,
                                gamma: e.gamma.coeffs().to_vec(),
                                multiplicity: e.multiplicity,
                            })
                            .collect(),
                    };
                    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                }
            }
            Ok(Status::Pass)
        }
        Command::Matrices => {
            let (f, n) = req.target.expect("validated");
            let d = build_level_diagram(&system(f, n));
            let mats: Vec<(usize, IntMatrix)> = (1..d.num_levels())
                .map(|i| (i, d.differential_matrix(i).matrix))
                .collect();
            match req.format {
                Format::Json => {
                    let value = MatricesJson {
                        family: f.to_string(),
                        rank: n,
                        matrices: mats
                            .iter()
                            .map(|(i, m)| MatrixJson {
                                index: *i,
                                rows: m.rows(),
                                cols: m.cols(),
                                entries: m.to_rows(),
                            })
                            .collect(),
                    };
                    writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
                }
                _ => {
                    writeln!(
                        out,
                        "differentials of {} (D_0 and D_{} are empty)",
                        label(f, n),
                        d.num_levels()
                    )?;
                    for (i, m) in &mats {
                        writeln!(out, "  D{i} = {}", matrix_text(m))?;
                    }
                }
            }
            Ok(Status::Pass)
        }
        Command::Verify => {
            let results: Vec<CheckResult> = req
                .types()
                .par_iter()
                .flat_map_iter(|&(f, n)| verify_type(f, n, req.cap))
                .collect();
            let passed = results.iter().all(|c| c.passed);
            match req.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&results)?)?,
                _ => {
                    for c in &results {
                        let tag = if c.passed { "PASS" } else { "FAIL" };
                        writeln!(
                            out,
                            "{tag}  {:<4} {:<22} {}",
                            c.type_label, c.check, c.detail
                        )?;
                    }
                    let failed = results.iter().filter(|c| !c.passed).count();
                    writeln!(out, "{} checks, {failed} failed", results.len())?;
                }
            }
            Ok(if passed {
                Status::Pass
            } else {
                Status::CheckFailed
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(
        command: Command,
        ty: Option<&str>,
        format: Format,
    ) -> Result<ComputationRequest, CliError> {
        ComputationRequest::new(command, ty, None, format, None, None)
    }

    #[test]
    fn request_validation() {
        assert!(req(Command::Compute, Some("E8"), Format::Text).is_ok());
        assert!(req(Command::Compute, Some("G2"), Format::Dot).is_err());
        assert!(req(Command::Compute, None, Format::Text).is_err());
        assert!(req(Command::All, Some("A3"), Format::Text).is_err());
        assert!(req(Command::Compute, Some("E9"), Format::Text).is_err());
        assert!(req(Command::Compute, Some("B"), Format::Text).is_err());
        assert!(ComputationRequest::new(
            Command::Compute,
            Some("B3"),
            Some(4),
            Format::Text,
            None,
            None
        )
        .is_err());
        assert!(ComputationRequest::new(
            Command::Compute,
            Some("B"),
            Some(4),
            Format::Text,
            None,
            None
        )
        .is_ok());
        assert!(
            ComputationRequest::new(Command::All, None, None, Format::Text, None, Some(0)).is_err()
        );
        assert!(ComputationRequest::new(
            Command::Compute,
            Some("A40"),
            None,
            Format::Text,
            None,
            Some(40)
        )
        .is_ok());
        assert!(ComputationRequest::new(
            Command::Compute,
            Some("A40"),
            None,
            Format::Text,
            None,
            None
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        for (f, n) in [(Family::A, 3), (Family::D, 6), (Family::E, 8)] {
            let record = CohomologyRecord::compute(f, n);
            let back = parse_json(&render_json(&record)).unwrap();
            assert_eq!(back, record);
        }
    }

    #[test]
    fn json_rejects_bad_groups() {
        let text = r#"{"type":"A","rank":1,"h_dual":2,"groups":[{"degree":0,"free_rank":0,"torsion":[4,2]}]}"#;
        assert!(parse_json(text).is_err());
        let text = r#"{"type":"A","rank":1,"h_dual":2,"groups":[{"degree":9,"free_rank":1,"torsion":[]}]}"#;
        assert!(parse_json(text).is_err());
    }

    #[test]
    fn text_uses_primary_decomposition() {
        let text = render_text(&CohomologyRecord::compute(Family::D, 4));
        assert!(text.contains("(ℤ/2)²"), "{text}");
        assert!(text.contains("ℤ²"), "{text}");
    }

    #[test]
    fn matrix_rendering() {
        assert_eq!(
            matrix_text(&IntMatrix::from_rows(&[[2], [1]]).unwrap()),
            "(2; 1)"
        );
        assert_eq!(
            matrix_text(&IntMatrix::from_rows(&[[1, 2], [0, 1]]).unwrap()),
            "[[1,2],[0,1]]"
        );
    }
}

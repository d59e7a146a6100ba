//! Parameter sweeps over ring codes, audits of published parameter tables,
//! and the heterogeneous-ring reconstruction-degree harness.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    goodness_arithmetic, goodness_rhs, predicted_k_ring, reconstruction_degree, RingCase,
};
use crate::constructions::{build_ring, build_t_code, RingSpec, TSpec};
use crate::error::{FrcError, Result};
use crate::subsets::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Generated,
    Transcribed,
}

/// One line of a parameter table: `(n, k, d, ρ, θ [, t])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub rho: usize,
    pub theta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub provenance: Provenance,
}

impl TableRow {
    pub fn params(&self) -> (usize, usize, usize, usize, usize) {
        (self.n, self.k, self.d, self.rho, self.theta)
    }

    /// Row identity ignoring provenance.
    pub fn key(&self) -> (usize, usize, usize, usize, usize, Option<usize>) {
        (self.n, self.k, self.d, self.rho, self.theta, self.t)
    }

    /// `kd − C(k,2)`: the strict goodness right-hand side with `α = d`.
    pub fn rhs(&self) -> i64 {
        goodness_rhs(self.k, self.d, false)
    }
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    n: usize,
    k: usize,
    d: usize,
    rho: usize,
    theta: usize,
    #[serde(default)]
    t: Option<usize>,
}

pub fn read_table(text: &str, provenance: Provenance) -> Result<Vec<TableRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    reader
        .deserialize::<CsvRow>()
        .map(|rec| {
            let r = rec.map_err(|e| FrcError::ParseError(e.to_string()))?;
            Ok(TableRow {
                n: r.n,
                k: r.k,
                d: r.d,
                rho: r.rho,
                theta: r.theta,
                t: r.t,
                provenance,
            })
        })
        .collect()
}

/// Header `n,k,d,rho,theta`, plus `,t` when any row carries a shift.
pub fn write_table(rows: &[TableRow]) -> String {
    let with_t = rows.iter().any(|r| r.t.is_some());
    let mut out = String::from(if with_t { "n,k,d,rho,theta,t\n" } else { "n,k,d,rho,theta\n" });
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}", r.n, r.k, r.d, r.rho, r.theta));
        if with_t {
            match r.t {
                Some(t) => out.push_str(&format!(",{t}")),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Builds `ring(n, m·n, ρ)` for every point in the ranges and keeps the
/// codes satisfying `M(k) ≥ kd − C(k,2)` at their brute-force
/// reconstruction degree with `M = θ − 1`.
///
/// Rows are sorted by `ρ` descending, then `(n, θ)`.
pub fn sweep_ring(
    n_range: RangeInclusive<usize>,
    rho_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
    budget: Budget,
) -> Result<Vec<TableRow>> {
    let mut points = Vec::new();
    for n in n_range {
        for rho in rho_range.clone() {
            if rho < 2 || rho >= n {
                continue;
            }
            for m in m_range.clone().filter(|&m| m >= 1) {
                points.push((n, rho, m));
            }
        }
    }
    let evaluated: Vec<Option<TableRow>> = points
        .into_par_iter()
        .map(|(n, rho, m)| sweep_point(n, rho, m, budget))
        .collect::<Result<_>>()?;
    let mut rows: Vec<TableRow> = evaluated.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        b.rho
            .cmp(&a.rho)
            .then(a.n.cmp(&b.n))
            .then(a.theta.cmp(&b.theta))
    });
    Ok(rows)
}

fn sweep_point(n: usize, rho: usize, m: usize, budget: Budget) -> Result<Option<TableRow>> {
    let theta = m * n;
    let code = build_ring(&RingSpec::new(n, theta, rho)?);
    let profile = code.profile();
    assert!(profile.is_uniform_storage, "ring({n},{theta},{rho}) should store uniformly");
    let d = profile.alpha;
    let file_size = theta - 1;
    let k = reconstruction_degree(&code, file_size, budget)?;
    let report = goodness_arithmetic(k, d, theta, false, file_size)?;
    Ok(report.verdict.then_some(TableRow {
        n,
        k,
        d,
        rho,
        theta,
        t: None,
        provenance: Provenance::Generated,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ring,
    T,
}

impl std::str::FromStr for Family {
    type Err = FrcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ring" => Ok(Family::Ring),
            "t" => Ok(Family::T),
            other => Err(FrcError::ParseError(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Ring rows: `n·d = ρ·θ`; t rows: `n = θ` and `d = ρ`.
    Identity,
    /// `θ − 1 ≥ kd − C(k,2)` at the listed `k`.
    GoodnessMargin,
    RhsPositive,
    RhsNonNegative,
    /// Ring rows: closed-form reconstruction degree equals the listed `k`.
    PredictedK,
    /// Brute-force `k` of the built-in circulant t-code equals the listed `k`.
    BuiltinTCode,
    /// No earlier row with the same `(n, k, d, ρ, θ)`.
    Unique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub check: CheckKind,
    pub pass: bool,
    /// Whether the check counts toward the row verdict.
    pub required: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditFinding {
    pub index: usize,
    pub row: TableRow,
    pub rhs: i64,
    pub margin: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duplicate_of: Option<usize>,
    pub checks: Vec<AuditCheck>,
    pub verdict: bool,
}

impl AuditFinding {
    pub fn check(&self, kind: CheckKind) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.check == kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditOptions {
    /// Count `RHS > 0` toward the verdict (the filtered t-tables claim it).
    pub require_rhs_positive: bool,
    /// Count duplicate parameter sets toward the verdict.
    pub require_unique: bool,
    /// Brute-force the built-in t-construction for comparison.
    pub compare_builtin_t: bool,
    pub budget: Budget,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            require_rhs_positive: false,
            require_unique: false,
            compare_builtin_t: true,
            budget: Budget::default(),
        }
    }
}

fn validate_row(index: usize, row: &TableRow, family: Family) -> Result<()> {
    let malformed = |reason: &str| {
        Err(FrcError::MalformedRow {
            index,
            reason: reason.to_string(),
        })
    };
    if row.n == 0 || row.k == 0 || row.d == 0 || row.rho == 0 || row.theta == 0 {
        return malformed("all parameters must be positive");
    }
    if row.k > row.n {
        return malformed("k exceeds n");
    }
    match (family, row.t) {
        (Family::T, None) => malformed("t-family row without a t column"),
        (Family::Ring, Some(_)) => malformed("ring-family row carries a t value"),
        _ => Ok(()),
    }
}

fn check(check: CheckKind, pass: bool, required: bool, detail: String) -> AuditCheck {
    AuditCheck {
        check,
        pass,
        required,
        detail,
    }
}

/// Re-derives every checkable claim of each row.
pub fn audit_table(rows: &[TableRow], family: Family, options: &AuditOptions) -> Result<Vec<AuditFinding>> {
    for (i, row) in rows.iter().enumerate() {
        validate_row(i, row, family)?;
    }
    let mut first_seen: HashMap<(usize, usize, usize, usize, usize), usize> = HashMap::new();
    let duplicates: Vec<Option<usize>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let first = *first_seen.entry(r.params()).or_insert(i);
            (first != i).then_some(first)
        })
        .collect();

    rows.par_iter()
        .zip(duplicates.into_par_iter())
        .enumerate()
        .map(|(index, (row, duplicate_of))| audit_row(index, row, duplicate_of, family, options))
        .collect()
}

fn audit_row(
    index: usize,
    row: &TableRow,
    duplicate_of: Option<usize>,
    family: Family,
    options: &AuditOptions,
) -> Result<AuditFinding> {
    let mut checks = Vec::new();
    match family {
        Family::Ring => {
            let (lhs, rhs) = (row.n * row.d, row.rho * row.theta);
            checks.push(check(CheckKind::Identity, lhs == rhs, true, format!("n*d = {lhs}, rho*theta = {rhs}")));
        }
        Family::T => {
            let pass = row.n == row.theta && row.d == row.rho;
            checks.push(check(
                CheckKind::Identity,
                pass,
                true,
                format!("n = {}, theta = {}, d = {}, rho = {}", row.n, row.theta, row.d, row.rho),
            ));
        }
    }

    let file_size = row.theta - 1;
    let goodness = goodness_arithmetic(row.k, row.d, row.theta, false, file_size)?;
    checks.push(check(
        CheckKind::GoodnessMargin,
        goodness.verdict,
        true,
        format!("M = {file_size}, rhs = {}, margin = {}", goodness.rhs, goodness.margin),
    ));
    checks.push(check(
        CheckKind::RhsPositive,
        goodness.rhs > 0,
        options.require_rhs_positive,
        format!("rhs = {}", goodness.rhs),
    ));
    checks.push(check(CheckKind::RhsNonNegative, goodness.rhs >= 0, false, format!("rhs = {}", goodness.rhs)));

    match family {
        Family::Ring => {
            let (pass, detail) = match predicted_k_ring(row.n, row.theta, row.rho) {
                Ok(p) => (p.k == row.k, format!("predicted k = {} ({:?})", p.k, p.basis)),
                Err(e) => (false, format!("no prediction: {e}")),
            };
            checks.push(check(CheckKind::PredictedK, pass, true, detail));
        }
        Family::T if options.compare_builtin_t => {
            let t = row.t.expect("validated t row");
            let (pass, detail) = match TSpec::new(row.n, row.d, t) {
                Ok(spec) => {
                    let code = build_t_code(&spec);
                    let k = reconstruction_degree(&code, code.theta() - 1, options.budget)?;
                    (k == row.k, format!("built-in circulant k = {k}"))
                }
                Err(e) => (false, format!("built-in construction undefined: {e}")),
            };
            checks.push(check(CheckKind::BuiltinTCode, pass, false, detail));
        }
        Family::T => {}
    }

    checks.push(check(
        CheckKind::Unique,
        duplicate_of.is_none(),
        options.require_unique,
        match duplicate_of {
            Some(j) => format!("same parameters as row {j}"),
            None => "first occurrence".to_string(),
        },
    ));

    let verdict = checks.iter().filter(|c| c.required).all(|c| c.pass);
    Ok(AuditFinding {
        index,
        row: *row,
        rhs: goodness.rhs,
        margin: goodness.margin,
        duplicate_of,
        checks,
        verdict,
    })
}

/// Rows whose strict right-hand side `kd − C(k,2)` is positive.
pub fn filter_rhs_positive(rows: &[TableRow]) -> Vec<TableRow> {
    rows.iter().copied().filter(|r| r.rhs() > 0).collect()
}

pub fn filter_rhs_nonnegative(rows: &[TableRow]) -> Vec<TableRow> {
    rows.iter().copied().filter(|r| r.rhs() >= 0).collect()
}

/// Keeps the first row of each `(n, k, d, ρ, θ)` parameter set.
pub fn dedup_params(rows: &[TableRow]) -> Vec<TableRow> {
    let mut seen = std::collections::HashSet::new();
    rows.iter().copied().filter(|r| seen.insert(r.params())).collect()
}

pub fn restrict_rho(rows: &[TableRow], rho: usize) -> Vec<TableRow> {
    rows.iter().copied().filter(|r| r.rho == rho).collect()
}

/// Multiset difference between two row lists, ignoring provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSetDiff {
    pub expected: usize,
    pub actual: usize,
    /// In `expected` but not `actual`.
    pub missing: Vec<TableRow>,
    /// In `actual` but not `expected`.
    pub extra: Vec<TableRow>,
}

impl RowSetDiff {
    pub fn holds(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn diff_rows(expected: &[TableRow], actual: &[TableRow]) -> RowSetDiff {
    let mut counts: HashMap<_, isize> = HashMap::new();
    for r in actual {
        *counts.entry(r.key()).or_default() += 1;
    }
    let mut missing = Vec::new();
    for r in expected {
        let c = counts.entry(r.key()).or_default();
        if *c > 0 {
            *c -= 1;
        } else {
            missing.push(*r);
        }
    }
    let mut extra = Vec::new();
    for r in actual.iter().rev() {
        let c = counts.get_mut(&r.key()).expect("counted above");
        if *c > 0 {
            *c -= 1;
            extra.push(*r);
        }
    }
    extra.reverse();
    RowSetDiff {
        expected: expected.len(),
        actual: actual.len(),
        missing,
        extra,
    }
}

/// The six t-construction tables, in publication order.
#[derive(Debug, Clone)]
pub struct TTables {
    /// Unfiltered, n ≤ 11.
    pub iv: Vec<TableRow>,
    /// Unfiltered, n ≥ 12.
    pub v: Vec<TableRow>,
    /// RHS > 0.
    pub vi: Vec<TableRow>,
    /// RHS > 0, deduplicated.
    pub vii: Vec<TableRow>,
    /// Deduplicated, ρ = 2.
    pub viii: Vec<TableRow>,
    /// Deduplicated, ρ = 3.
    pub ix: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRelation {
    pub name: String,
    pub diff: RowSetDiff,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TTableReport {
    pub relations: Vec<TableRelation>,
    /// Rows listed under the `RHS > 0` caption whose RHS is not positive.
    pub nonpositive_rhs_in_filtered: Vec<TableRow>,
    /// Rows (any table) whose goodness margin at `M = θ − 1` is negative.
    pub negative_margin: Vec<TableRow>,
    /// Rows violating `n = θ`, `d = ρ`.
    pub identity_violations: Vec<TableRow>,
}

impl TTableReport {
    pub fn discrepancy_count(&self) -> usize {
        self.relations.iter().filter(|r| !r.holds).count()
            + self.nonpositive_rhs_in_filtered.len()
            + self.negative_margin.len()
            + self.identity_violations.len()
    }
}

/// Cross-checks the filter/dedup/restriction chain linking the t-tables.
pub fn audit_t_tables(tables: &TTables) -> TTableReport {
    let relation = |name: &str, expected: Vec<TableRow>, actual: &[TableRow]| {
        let diff = diff_rows(&expected, actual);
        TableRelation {
            name: name.to_string(),
            holds: diff.holds(),
            diff,
        }
    };
    let unfiltered: Vec<TableRow> = tables.iv.iter().chain(&tables.v).copied().collect();
    let relations = vec![
        relation("rhs_positive(IV + V) = VI", filter_rhs_positive(&unfiltered), &tables.vi),
        relation("rhs_nonnegative(IV + V) = VI", filter_rhs_nonnegative(&unfiltered), &tables.vi),
        relation("dedup(VI) = VII", dedup_params(&tables.vi), &tables.vii),
        relation("VII restricted to rho = 2 = VIII", restrict_rho(&tables.vii, 2), &tables.viii),
        relation("VII restricted to rho = 3 = IX", restrict_rho(&tables.vii, 3), &tables.ix),
    ];
    let filtered = tables.vi.iter().chain(&tables.vii).chain(&tables.viii).chain(&tables.ix);
    let nonpositive_rhs_in_filtered = dedup_keys(filtered.filter(|r| r.rhs() <= 0));
    let all = || unfiltered.iter().chain(&tables.vi).chain(&tables.vii).chain(&tables.viii).chain(&tables.ix);
    let negative_margin = dedup_keys(all().filter(|r| (r.theta as i64 - 1) < r.rhs()));
    let identity_violations = dedup_keys(all().filter(|r| r.n != r.theta || r.d != r.rho));
    TTableReport {
        relations,
        nonpositive_rhs_in_filtered,
        negative_margin,
        identity_violations,
    }
}

fn dedup_keys<'a>(rows: impl Iterator<Item = &'a TableRow>) -> Vec<TableRow> {
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<TableRow> = rows.copied().filter(|r| seen.insert(r.key())).collect();
    out.sort_by_key(|r| r.key());
    out
}

/// Which packet counts the conjecture harness visits for each `(n, ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRule {
    pub min_theta: usize,
    /// Upper bound as a multiple of `n` (exclusive: `θ < max_multiple·n`).
    pub max_multiple: usize,
}

impl Default for ThetaRule {
    fn default() -> Self {
        ThetaRule {
            min_theta: 2,
            max_multiple: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureInstance {
    pub n: usize,
    pub theta: usize,
    pub rho: usize,
    pub case: RingCase,
    pub predicted_k: usize,
    pub brute_force_k: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub instances: Vec<ConjectureInstance>,
    pub agreements: usize,
    pub disagreements: usize,
}

/// Compares the closed-form reconstruction degree for heterogeneous ring
/// codes (`θ` not a multiple of `n`) with brute force at `M = θ − 1`.
pub fn conjecture_harness(
    n_range: RangeInclusive<usize>,
    rho_range: RangeInclusive<usize>,
    rule: ThetaRule,
    budget: Budget,
) -> Result<ConjectureReport> {
    let mut points = Vec::new();
    for n in n_range {
        for rho in rho_range.clone().filter(|&r| r >= 2 && r < n) {
            for theta in rule.min_theta.max(2)..rule.max_multiple * n {
                if theta % n != 0 {
                    points.push((n, theta, rho));
                }
            }
        }
    }
    let instances: Vec<ConjectureInstance> = points
        .into_par_iter()
        .map(|(n, theta, rho)| {
            let prediction = predicted_k_ring(n, theta, rho)?;
            let code = build_ring(&RingSpec::new(n, theta, rho)?);
            let brute_force_k = reconstruction_degree(&code, theta - 1, budget)?;
            Ok(ConjectureInstance {
                n,
                theta,
                rho,
                case: prediction.case,
                predicted_k: prediction.k,
                brute_force_k,
                agree: prediction.k == brute_force_k,
            })
        })
        .collect::<Result<_>>()?;
    let agreements = instances.iter().filter(|i| i.agree).count();
    Ok(ConjectureReport {
        disagreements: instances.len() - agreements,
        agreements,
        instances,
    })
}

//! Human-readable renderings of the JSON reports. Node and packet labels
//! are 1-based here.

use std::fmt::Write;

use serde::Serialize;

use frc_core::analysis::{Coverage, GoodnessReport};
use frc_core::sweep::{AuditFinding, ConjectureReport};
use frc_core::{CodeProfile, FrCode, IdentityKind, IdentityReport, NodeId, RepairPlan};

#[derive(Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub theta: usize,
    pub alpha: usize,
    pub rho: usize,
    pub alpha_per_node: Vec<usize>,
}

impl CodeSummary {
    pub fn of(code: &FrCode) -> Self {
        let p = code.profile();
        CodeSummary {
            n: code.n(),
            theta: code.theta(),
            alpha: p.alpha,
            rho: p.rho,
            alpha_per_node: p.alpha_per_node,
        }
    }
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub theta: usize,
    pub profile: CodeProfile,
    pub identities: IdentityReport,
    pub file_size: usize,
    pub reconstruction_degree: usize,
    pub coverage: Vec<Coverage>,
}

#[derive(Serialize)]
pub struct RepairReport {
    pub plan: RepairPlan,
    pub first_replica: RepairPlan,
}

fn labels(nodes: &[NodeId]) -> String {
    nodes.iter().map(NodeId::to_string).collect::<Vec<_>>().join(" ")
}

pub fn code_summary(code: &FrCode) -> String {
    let p = code.profile();
    format!(
        "n = {}, θ = {}, α = {}, ρ = {}\nα per node: {:?}\n",
        code.n(),
        code.theta(),
        p.alpha,
        p.rho,
        p.alpha_per_node
    )
}

pub fn analyze(r: &AnalyzeReport) -> String {
    let mut s = String::new();
    let p = &r.profile;
    writeln!(s, "n = {}, θ = {}", r.n, r.theta).unwrap();
    let storage: Vec<String> = p
        .alpha_per_node
        .iter()
        .enumerate()
        .map(|(i, a)| format!("{}={a}", NodeId(i)))
        .collect();
    writeln!(s, "α = {}  ({})", p.alpha, storage.join(" ")).unwrap();
    writeln!(
        s,
        "ρ = {}  ({})",
        p.rho,
        if p.is_regular_replication { "regular" } else { "irregular" }
    )
    .unwrap();
    let id = &r.identities;
    let identity = match id.kind {
        IdentityKind::Regular => format!("n·α = ρ·θ  ({} = {})", id.n_alpha, id.rho_theta),
        IdentityKind::SingleDeficient => format!("n·α − 1 = ρ·θ  ({} − 1 = {})", id.n_alpha, id.rho_theta),
        IdentityKind::General => format!("general  (Σα = Σρ = {})", id.total_storage),
    };
    writeln!(s, "identity: {identity}").unwrap();
    writeln!(s, "file size M = {}", r.file_size).unwrap();
    writeln!(s, "k = {}", r.reconstruction_degree).unwrap();
    writeln!(s, "coverage:").unwrap();
    for c in &r.coverage {
        writeln!(s, "  M({}) = {:<4} witness {}", c.k, c.min_coverage, labels(&c.witness)).unwrap();
    }
    s
}

pub fn goodness(r: &GoodnessReport) -> String {
    let mut s = String::new();
    let form = if r.weak { "weak" } else { "strict" };
    writeln!(
        s,
        "{form} goodness at k = {}: M = {} vs kα − C(k,2){} = {}",
        r.k_evaluated,
        r.file_size,
        if r.weak { " − 1" } else { "" },
        r.rhs
    )
    .unwrap();
    writeln!(s, "margin {}, {}", r.margin, if r.verdict { "pass" } else { "FAIL" }).unwrap();
    if let Some(st) = &r.structural {
        writeln!(s, "structural (k ≤ α):").unwrap();
        for c in &st.checks {
            writeln!(
                s,
                "  k = {:<3} M(k) = {:<4} rhs = {:<5} margin {:<4} {}",
                c.k,
                c.coverage,
                c.rhs,
                c.margin,
                if c.pass { "pass" } else { "FAIL" }
            )
            .unwrap();
        }
        writeln!(s, "structural {}", if st.verdict { "pass" } else { "FAIL" }).unwrap();
    }
    s
}

pub fn repair(r: &RepairReport) -> String {
    let mut s = String::new();
    let p = &r.plan;
    writeln!(
        s,
        "failed {}: {} lost packets, repair degree {}, bandwidth {}",
        p.failed,
        p.assignments.len(),
        p.repair_degree,
        p.bandwidth
    )
    .unwrap();
    writeln!(s, "helpers: {}", labels(&p.helpers)).unwrap();
    writeln!(s, "{:<8} helper", "packet").unwrap();
    for (packet, helper) in &p.assignments {
        writeln!(s, "{:<8} {}", packet.to_string(), helper).unwrap();
    }
    writeln!(
        s,
        "first-replica plan: repair degree {} ({})",
        r.first_replica.repair_degree,
        labels(&r.first_replica.helpers)
    )
    .unwrap();
    s
}

pub fn audit(findings: &[AuditFinding]) -> String {
    let mut s = String::new();
    writeln!(s, "{:<5} {:<24} {:>6} {:>6}  verdict", "row", "n,k,d,rho,theta[,t]", "rhs", "margin").unwrap();
    for f in findings {
        let r = &f.row;
        let mut params = format!("{},{},{},{},{}", r.n, r.k, r.d, r.rho, r.theta);
        if let Some(t) = r.t {
            write!(params, ",{t}").unwrap();
        }
        let failed: Vec<String> = f
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| {
                let tag = if c.required { "" } else { "~" };
                format!("{tag}{:?}", c.check)
            })
            .collect();
        writeln!(
            s,
            "{:<5} {:<24} {:>6} {:>6}  {}{}",
            f.index + 1,
            params,
            f.rhs,
            f.margin,
            if f.verdict { "ok" } else { "FAIL" },
            if failed.is_empty() { String::new() } else { format!("  [{}]", failed.join(", ")) }
        )
        .unwrap();
    }
    let bad = findings.iter().filter(|f| !f.verdict).count();
    writeln!(s, "{} rows, {} failing (~ marks informational checks)", findings.len(), bad).unwrap();
    s
}

pub fn conjecture(r: &ConjectureReport) -> String {
    let mut s = String::new();
    writeln!(s, "{:>3} {:>5} {:>3}  {:<14} {:>9} {:>11}", "n", "theta", "rho", "case", "predicted", "brute-force").unwrap();
    for i in &r.instances {
        writeln!(
            s,
            "{:>3} {:>5} {:>3}  {:<14} {:>9} {:>11}  {}",
            i.n,
            i.theta,
            i.rho,
            format!("{:?}", i.case),
            i.predicted_k,
            i.brute_force_k,
            if i.agree { "agree" } else { "DISAGREE" }
        )
        .unwrap();
    }
    writeln!(s, "{} agree, {} disagree", r.agreements, r.disagreements).unwrap();
    s
}

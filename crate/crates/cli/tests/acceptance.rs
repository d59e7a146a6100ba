//! Acceptance suite. Each criterion runs in isolation, prints one
//! `ACn PASS|FAIL` line, and the test fails if any criterion failed.
//!
//! Run with `cargo test -p frc-cli --test acceptance -- --nocapture`.

use std::collections::{BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use frc_core::analysis::{coverage_profile, goodness_arithmetic, min_coverage, reconstruction_degree};
use frc_core::fixtures;
use frc_core::sweep::{self, audit_t_tables, AuditOptions, CheckKind, ThetaRule};
use frc_core::*;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:.0?}"))
}

fn ac1_prg_example() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("prg75.json");
    let bin = env!("CARGO_BIN_EXE_frc");
    let generated = Command::new(bin)
        .args(["generate", "prg", "--n", "7", "--d", "5", "-o"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(generated.status.success(), || format!("generate exited {:?}", generated.status))?;
    let analyzed = Command::new(bin)
        .args(["--json", "analyze"])
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(analyzed.status.success(), || format!("analyze exited {:?}", analyzed.status))?;
    let elapsed = start.elapsed();
    let report: Value = serde_json::from_slice(&analyzed.stdout).map_err(|e| e.to_string())?;

    ensure(report["theta"] == 17, || format!("theta {}", report["theta"]))?;
    ensure(report["profile"]["rho"] == 2, || format!("rho {}", report["profile"]["rho"]))?;
    ensure(
        report["profile"]["rho_per_packet"].as_array().is_some_and(|a| a.iter().all(|r| r == 2)),
        || "replication not uniformly 2".into(),
    )?;
    let alpha: Vec<u64> = report["profile"]["alpha_per_node"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_u64).collect())
        .unwrap_or_default();
    ensure(alpha == [5, 5, 5, 5, 5, 5, 4], || format!("alpha profile {alpha:?}"))?;
    ensure(report["file_size"] == 16, || format!("M {}", report["file_size"]))?;
    ensure(report["reconstruction_degree"] == 5, || {
        format!("k {}", report["reconstruction_degree"])
    })?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("θ=17 ρ=2 α={alpha:?} k=5 at M=16 in {elapsed:.2?}"))
}

fn prg_range() -> impl Iterator<Item = (usize, usize)> {
    (5..=13).step_by(2).flat_map(|n| (3..=n - 2).step_by(2).map(move |d| (n, d)))
}

fn ac2_prg_reconstruction() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (n, d) in prg_range() {
        let code = build_prg(&PrgSpec::new(n, d).map_err(|e| e.to_string())?);
        let k = reconstruction_degree(&code, code.theta() - 1, Budget::default()).map_err(|e| e.to_string())?;
        ensure(k == n - 2, || format!("PRG({n},{d}) has k = {k}, expected {}", n - 2))?;
        count += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("{count} (n,d) pairs with k = n−2 in {elapsed:.2?}"))
}

fn ac3_prg_goodness() -> Outcome {
    let mut count = 0;
    let mut min_margin = i64::MAX;
    for (n, d) in prg_range() {
        let spec = PrgSpec::new(n, d).map_err(|e| e.to_string())?;
        let code = build_prg(&spec);
        let theta = code.theta();
        let (p, q) = (spec.p(), spec.q());
        ensure(2 * p * q + p + q == theta, || format!("PRG({n},{d}): 2pq+p+q ≠ θ = {theta}"))?;
        let report = goodness_arithmetic(n - 2, d, theta, true, theta - 1).map_err(|e| e.to_string())?;
        ensure(report.verdict, || format!("PRG({n},{d}) weak goodness fails, margin {}", report.margin))?;
        let closed = prg_margin(n, d).map_err(|e| e.to_string())?;
        ensure(closed.margin >= 0, || format!("PRG({n},{d}) closed-form margin {}", closed.margin))?;
        ensure(closed.theta == theta, || format!("PRG({n},{d}) closed-form θ {}", closed.theta))?;
        min_margin = min_margin.min(closed.margin);
        count += 1;
    }
    Ok(format!("{count} pairs pass weak goodness, smallest closed-form margin {min_margin}"))
}

fn ac4_ring_matrices() -> Outcome {
    let eq5: Vec<Vec<u8>> = vec![
        vec![1, 0, 0, 0, 1],
        vec![1, 1, 0, 0, 0],
        vec![0, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 0],
        vec![0, 0, 0, 1, 1],
    ];
    let eq6: Vec<Vec<u8>> = vec![
        vec![1, 0, 0, 0, 1, 1, 0, 0, 0, 1],
        vec![1, 1, 0, 0, 0, 1, 1, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 0, 0, 0, 1, 1, 0],
        vec![0, 0, 0, 1, 1, 0, 0, 0, 1, 1],
    ];
    for (theta, expected) in [(5, &eq5), (10, &eq6)] {
        let code = build_ring(&RingSpec::new(5, theta, 2).map_err(|e| e.to_string())?);
        let got = code.incidence_matrix();
        ensure(got.as_rows() == expected.as_slice(), || {
            format!("ring(5,{theta},2) matrix differs:\n{}", got.to_csv())
        })?;
    }
    Ok("ring(5,5,2) and ring(5,10,2) match bit for bit".into())
}

fn ac5_ring_tables() -> Outcome {
    let start = Instant::now();
    let generated = sweep_ring(3..=16, 2..=4, 1..=3, Budget::default()).map_err(|e| e.to_string())?;
    let transcribed = fixtures::ring_tables();
    ensure(transcribed.len() == 45, || format!("{} transcribed rows", transcribed.len()))?;
    let produced: HashSet<_> = generated.iter().map(TableRow::params).collect();
    let missing: Vec<_> = transcribed.iter().filter(|r| !produced.contains(&r.params())).collect();
    ensure(missing.is_empty(), || format!("sweep misses {missing:?}"))?;

    let findings = audit_table(&transcribed, Family::Ring, &AuditOptions::default()).map_err(|e| e.to_string())?;
    for f in &findings {
        for kind in [CheckKind::Identity, CheckKind::GoodnessMargin, CheckKind::PredictedK] {
            let passed = f.check(kind).is_some_and(|c| c.pass);
            ensure(passed, || format!("row {:?} fails {kind:?}", f.row.params()))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{} generated rows contain all {} transcribed rows, audit clean, {elapsed:.2?}",
        generated.len(),
        transcribed.len()
    ))
}

fn ac6_case1_boundary() -> Outcome {
    let mut notes = Vec::new();
    for (rho, boundary) in [(2i64, 4i64), (3, 7), (4, 10)] {
        let at = ring_margin_case1(rho, boundary);
        ensure(at == 0, || format!("case1(ρ={rho}, θ={boundary}) = {at}, expected 0"))?;
        for theta in boundary..=2000 {
            let m = ring_margin_case1(rho, theta);
            ensure(m >= 0, || format!("case1(ρ={rho}, θ={theta}) = {m} < 0"))?;
        }
        let below = ring_margin_case1(rho, boundary - 1);
        notes.push(format!("ρ={rho}: 0 at θ={boundary}, {below} at θ={}", boundary - 1));
    }
    Ok(format!("non-negative up to θ=2000; {}", notes.join("; ")))
}

fn random_code(rng: &mut StdRng) -> FrCode {
    let n = rng.random_range(1..=10);
    let theta = rng.random_range(1..=20);
    let mut storage = vec![Vec::new(); n];
    for packet in 0..theta {
        let mask: u32 = rng.random_range(1..(1u32 << n));
        for (i, node) in storage.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                node.push(packet);
            }
        }
    }
    FrCode::new(n, theta, storage).expect("every packet has a holder")
}

/// Every subset of nodes, no pruning; the minimum union size per subset size.
fn unpruned_min_coverage(storage: &[Vec<usize>]) -> Vec<usize> {
    let n = storage.len();
    let mut best = vec![usize::MAX; n + 1];
    for mask in 1u32..(1 << n) {
        let union: BTreeSet<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .flat_map(|i| storage[i].iter().copied())
            .collect();
        let k = mask.count_ones() as usize;
        best[k] = best[k].min(union.len());
    }
    best
}

fn ac7_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_f7c0);
    for trial in 0..100 {
        let code = random_code(&mut rng);
        let oracle = unpruned_min_coverage(&code.storage());
        let profile = coverage_profile(&code, Budget::default()).map_err(|e| e.to_string())?;
        let values = profile.values();
        for k in 1..=code.n() {
            let got = min_coverage(&code, k, Budget::default()).map_err(|e| e.to_string())?;
            ensure(got.min_coverage == oracle[k], || {
                format!("trial {trial}: M({k}) = {} but oracle says {}", got.min_coverage, oracle[k])
            })?;
            ensure(values[k - 1] == oracle[k], || format!("trial {trial}: profile disagrees at k={k}"))?;
        }
        ensure(values.windows(2).all(|w| w[0] <= w[1]), || format!("trial {trial}: not monotone {values:?}"))?;
        ensure(values.last() == Some(&code.theta()), || format!("trial {trial}: M(n) ≠ θ"))?;
    }
    Ok("100 seeded random codes agree with the unpruned oracle".into())
}

/// Fewest helpers covering the failed node's packets, over every helper subset.
fn subset_dp_min_helpers(storage: &[Vec<usize>], failed: usize) -> usize {
    let n = storage.len();
    let lost: u64 = storage[failed].iter().fold(0, |acc, &p| acc | (1 << p));
    let bits: Vec<u64> = storage.iter().map(|s| s.iter().fold(0u64, |acc, &p| acc | (1 << p)) & lost).collect();
    let mut union = vec![0u64; 1 << n];
    let mut best = usize::MAX;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        union[mask] = union[mask & (mask - 1)] | bits[low];
        if mask & (1 << failed) == 0 && union[mask] == lost {
            best = best.min(mask.count_ones() as usize);
        }
    }
    if lost == 0 {
        0
    } else {
        best
    }
}

fn constructed_codes() -> Vec<(String, FrCode)> {
    let mut codes = Vec::new();
    for (n, d) in (5..=11).step_by(2).flat_map(|n| (3..=n - 2).step_by(2).map(move |d| (n, d))) {
        codes.push((format!("PRG({n},{d})"), build_prg(&PrgSpec::new(n, d).unwrap())));
    }
    for n in 3..=12 {
        for rho in 2..=4.min(n - 1) {
            for theta in 2..3 * n {
                if let Ok(spec) = RingSpec::new(n, theta, rho) {
                    codes.push((format!("ring({n},{theta},{rho})"), build_ring(&spec)));
                }
            }
        }
    }
    for n in 2..=12 {
        for d in 2..=4 {
            for t in 0..=4 {
                if let Ok(spec) = TSpec::new(n, d, t) {
                    codes.push((format!("t({n},{d},{t})"), build_t_code(&spec)));
                }
            }
        }
    }
    codes.retain(|(_, c)| c.profile().rho_per_packet.iter().all(|&r| r >= 2));
    codes
}

fn ac8_repair() -> Outcome {
    let codes = constructed_codes();
    let mut plans = 0;
    for (name, code) in &codes {
        let storage = code.storage();
        for failed in 0..code.n() {
            let plan = plan_repair(code, failed, Budget::default()).map_err(|e| format!("{name} node {failed}: {e}"))?;
            ensure(plan.is_valid_for(code), || format!("{name} node {failed}: invalid plan"))?;
            ensure(plan.bandwidth == storage[failed].len(), || {
                format!("{name} node {failed}: bandwidth {} ≠ α", plan.bandwidth)
            })?;
            let best = subset_dp_min_helpers(&storage, failed);
            ensure(plan.repair_degree == best, || {
                format!("{name} node {failed}: {} helpers, minimum is {best}", plan.repair_degree)
            })?;
            plans += 1;
        }
    }
    Ok(format!("{} codes, {plans} plans valid and minimal", codes.len()))
}

fn ac9_t_tables() -> Outcome {
    let start = Instant::now();
    let run = || -> Outcome {
        let tables = fixtures::t_tables();
        let all: Vec<TableRow> = [&tables.iv, &tables.v, &tables.vi, &tables.vii, &tables.viii, &tables.ix]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        let findings = audit_table(&all, Family::T, &AuditOptions::default()).map_err(|e| e.to_string())?;
        let report = audit_t_tables(&tables);
        Ok(format!(
            "{}\n{}",
            serde_json::to_string(&findings).unwrap(),
            serde_json::to_string(&report).unwrap()
        ))
    };
    let first = run()?;
    let second = run()?;
    let elapsed = start.elapsed();
    ensure(first == second, || "audit output differs between runs".into())?;

    let tables = fixtures::t_tables();
    let all: Vec<&TableRow> = [&tables.iv, &tables.v, &tables.vi, &tables.vii, &tables.viii, &tables.ix]
        .into_iter()
        .flatten()
        .collect();
    for r in &all {
        ensure(r.n == r.theta && r.d == r.rho, || format!("row {:?} breaks n=θ, d=ρ", r.key()))?;
    }
    let findings = audit_table(&tables.vi, Family::T, &AuditOptions::default()).map_err(|e| e.to_string())?;
    for f in &findings {
        let margin = (f.row.theta as i64 - 1) - f.rhs;
        ensure(f.margin == margin, || format!("row {:?}: margin {} ≠ {margin}", f.row.key(), f.margin))?;
    }

    let report = audit_t_tables(&tables);
    ensure(report.identity_violations.is_empty(), || "identity violations reported".into())?;
    for name in ["dedup(VI) = VII", "VII restricted to rho = 2 = VIII", "VII restricted to rho = 3 = IX"] {
        let rel = report.relations.iter().find(|r| r.name == name).ok_or(format!("no relation {name}"))?;
        ensure(rel.holds, || format!("{name} fails: {:?}", rel.diff))?;
    }
    let positive = &report.relations[0];
    ensure(positive.diff.missing.is_empty(), || {
        format!("VI lacks RHS > 0 rows of IV/V: {:?}", positive.diff.missing)
    })?;

    let negative: Vec<_> = tables.vi.iter().filter(|r| r.rhs() < 0).collect();
    ensure(!negative.is_empty(), || "expected negative-RHS rows in VI".into())?;
    let flagged: HashSet<_> = report.nonpositive_rhs_in_filtered.iter().map(TableRow::key).collect();
    for r in &negative {
        ensure(flagged.contains(&r.key()), || format!("negative-RHS row {:?} not flagged", r.key()))?;
    }
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "{} rows, {} negative-RHS rows in VI flagged, {} discrepancies, deterministic, {elapsed:.2?} for two runs",
        all.len(),
        negative.len(),
        report.discrepancy_count()
    ))
}

fn ac10_conjecture() -> Outcome {
    let start = Instant::now();
    let a = sweep::conjecture_harness(3..=12, 2..=4, ThetaRule::default(), Budget::default()).map_err(|e| e.to_string())?;
    let b = sweep::conjecture_harness(3..=12, 2..=4, ThetaRule::default(), Budget::default()).map_err(|e| e.to_string())?;
    ensure(a == b, || "harness output differs between runs".into())?;
    ensure(!a.instances.is_empty(), || "no instances visited".into())?;
    ensure(a.agreements + a.disagreements == a.instances.len(), || "counts do not add up".into())?;
    Ok(format!(
        "{} instances, {} agree, {} disagree, {:.2?}",
        a.instances.len(),
        a.agreements,
        a.disagreements,
        start.elapsed()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("AC1", ac1_prg_example),
        ("AC2", ac2_prg_reconstruction),
        ("AC3", ac3_prg_goodness),
        ("AC4", ac4_ring_matrices),
        ("AC5", ac5_ring_tables),
        ("AC6", ac6_case1_boundary),
        ("AC7", ac7_oracle),
        ("AC8", ac8_repair),
        ("AC9", ac9_t_tables),
        ("AC10", ac10_conjecture),
    ];
    let mut failed = Vec::new();
    for (id, criterion) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("{id} PASS  {detail}"),
            Err(reason) => {
                println!("{id} FAIL  {reason}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

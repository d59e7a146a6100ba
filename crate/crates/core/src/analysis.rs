//! Exhaustive coverage, reconstruction degree and the universal-goodness
//! inequalities `M(k) ≥ kα − C(k,2)` (strict) and `… − 1` (weak).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{FrCode, NodeId};
use crate::constructions::{PrgSpec, RingSpec};
use crate::error::{FrcError, Result};
use crate::packet_set::PacketSet;
use crate::subsets::{binomial, Budget};

/// Minimum union size over all k-subsets, with the lexicographically
/// least subset attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub k: usize,
    pub min_coverage: usize,
    pub witness: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageProfile {
    pub theta: usize,
    pub entries: Vec<Coverage>,
}

impl CoverageProfile {
    /// `M(k)`; panics if `k` was not enumerated.
    pub fn value(&self, k: usize) -> usize {
        self.entries[k - 1].min_coverage
    }

    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|c| c.min_coverage).collect()
    }
}

struct Search<'a> {
    nodes: &'a [PacketSet],
    k: usize,
    levels: Vec<PacketSet>,
    chosen: Vec<usize>,
    best: usize,
    witness: Vec<usize>,
}

impl Search<'_> {
    // levels[depth - 1] holds the union of chosen[..depth].
    fn descend(&mut self, depth: usize, start: usize) {
        if depth == self.k {
            let value = self.levels[depth - 1].len();
            if value < self.best {
                self.best = value;
                self.witness.clone_from(&self.chosen);
            }
            return;
        }
        let last = self.nodes.len() - (self.k - depth);
        for i in start..=last {
            let (done, rest) = self.levels.split_at_mut(depth);
            rest[0].assign_union(&done[depth - 1], &self.nodes[i]);
            // unions only grow, so no completion can beat the current best
            if rest[0].len() >= self.best {
                continue;
            }
            self.chosen.push(i);
            self.descend(depth + 1, i + 1);
            self.chosen.pop();
        }
    }
}

fn search_from(code: &FrCode, k: usize, first: usize) -> (usize, Vec<usize>) {
    let theta = code.theta();
    let mut levels = vec![PacketSet::empty(theta); k];
    levels[0] = code.node(first).clone();
    let mut search = Search {
        nodes: code.nodes(),
        k,
        levels,
        chosen: vec![first],
        best: usize::MAX,
        witness: Vec::new(),
    };
    search.descend(1, first + 1);
    (search.best, search.witness)
}

/// `M(k)`: the fewest distinct packets held by any `k` nodes.
///
/// Enumeration is split by the smallest node index across worker threads;
/// the result (value, then lexicographic witness) does not depend on the
/// split.
pub fn min_coverage(code: &FrCode, k: usize, budget: Budget) -> Result<Coverage> {
    let n = code.n();
    if k == 0 || k > n {
        return Err(FrcError::KOutOfRange { k, n });
    }
    budget.check(binomial(n, k))?;
    let partials: Vec<(usize, Vec<usize>)> = (0..=n - k)
        .into_par_iter()
        .map(|first| search_from(code, k, first))
        .collect();
    let (value, witness) = partials
        .into_iter()
        .reduce(|best, cand| if cand.0 < best.0 { cand } else { best })
        .expect("at least one k-subset exists");
    Ok(Coverage {
        k,
        min_coverage: value,
        witness: witness.into_iter().map(NodeId).collect(),
    })
}

/// `M(k)` for every `k` in `1..=n`.
pub fn coverage_profile(code: &FrCode, budget: Budget) -> Result<CoverageProfile> {
    coverage_up_to(code, code.n(), budget)
}

pub fn coverage_up_to(code: &FrCode, k_max: usize, budget: Budget) -> Result<CoverageProfile> {
    let entries = (1..=k_max.min(code.n()))
        .map(|k| min_coverage(code, k, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverageProfile {
        theta: code.theta(),
        entries,
    })
}

/// Least `k` such that every `k` nodes jointly hold at least `file_size`
/// distinct packets.
pub fn reconstruction_degree(code: &FrCode, file_size: usize, budget: Budget) -> Result<usize> {
    let theta = code.theta();
    if file_size == 0 || file_size > theta {
        return Err(FrcError::FileSizeOutOfRange { file_size, theta });
    }
    let alpha = code.profile().alpha;
    for k in 1..=code.n() {
        // k nodes hold at most k·α packets
        if k * alpha < file_size {
            continue;
        }
        if min_coverage(code, k, budget)?.min_coverage >= file_size {
            return Ok(k);
        }
    }
    Err(FrcError::Unreachable { file_size })
}

/// File size carried by an outer `[θ, θ − 1]` MDS code.
pub fn default_file_size(code: &FrCode) -> usize {
    code.theta().saturating_sub(1).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(v: i64) -> Self {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralCheck {
    pub k: usize,
    pub coverage: usize,
    pub rhs: i64,
    pub margin: i64,
    pub pass: bool,
}

/// The inequality checked against brute-force `M(k)` at every `k ≤ α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub weak: bool,
    pub checks: Vec<StructuralCheck>,
    pub first_failure: Option<usize>,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessReport {
    pub alpha: usize,
    pub theta: usize,
    pub k_evaluated: usize,
    pub weak: bool,
    pub rhs: i64,
    pub rhs_sign: Sign,
    pub file_size: usize,
    pub margin: i64,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural: Option<StructuralReport>,
}

/// `kα − C(k,2)`, minus one for the weak form.
pub fn goodness_rhs(k: usize, alpha: usize, weak: bool) -> i64 {
    let k = k as i64;
    k * alpha as i64 - k * (k - 1) / 2 - weak as i64
}

/// Evaluates the goodness inequality at a single `k` for file size `file_size`.
pub fn goodness_arithmetic(
    k: usize,
    alpha: usize,
    theta: usize,
    weak: bool,
    file_size: usize,
) -> Result<GoodnessReport> {
    if k == 0 || alpha == 0 {
        return Err(FrcError::InvalidParameters(format!(
            "goodness needs k >= 1 and alpha >= 1 (got k = {k}, alpha = {alpha})"
        )));
    }
    if file_size > theta {
        return Err(FrcError::FileSizeOutOfRange { file_size, theta });
    }
    let rhs = goodness_rhs(k, alpha, weak);
    let margin = file_size as i64 - rhs;
    Ok(GoodnessReport {
        alpha,
        theta,
        k_evaluated: k,
        weak,
        rhs,
        rhs_sign: Sign::of(rhs),
        file_size,
        margin,
        verdict: margin >= 0,
        structural: None,
    })
}

/// Checks `M(k) ≥ kα − C(k,2) [− 1]` for every `k ≤ min(α, n)` using exact
/// coverage.
pub fn goodness_structural(code: &FrCode, weak: bool, budget: Budget) -> Result<StructuralReport> {
    let alpha = code.profile().alpha;
    let k_max = alpha.min(code.n());
    let profile = coverage_up_to(code, k_max, budget)?;
    let checks: Vec<StructuralCheck> = profile
        .entries
        .iter()
        .map(|c| {
            let rhs = goodness_rhs(c.k, alpha, weak);
            let margin = c.min_coverage as i64 - rhs;
            StructuralCheck {
                k: c.k,
                coverage: c.min_coverage,
                rhs,
                margin,
                pass: margin >= 0,
            }
        })
        .collect();
    let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.k);
    Ok(StructuralReport {
        weak,
        checks,
        first_failure,
        verdict: first_failure.is_none(),
    })
}

/// The weak relaxation only applies to the single-deficient-node shape.
pub fn weak_form_applies(code: &FrCode) -> bool {
    let profile = code.profile();
    profile.is_regular_replication && profile.has_single_deficient_node()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrgMargin {
    pub p: usize,
    pub q: usize,
    pub theta: usize,
    pub margin: i64,
}

/// Closed form for partial-regular-graph codes at `k = n − 2`, `M = θ − 1`:
/// `θ = 2pq + p + q` and margin `2p² − 2pq − 4p + 3q + 2`.
pub fn prg_margin(n: usize, d: usize) -> Result<PrgMargin> {
    let spec = PrgSpec::new(n, d)?;
    let (p, q) = (spec.p(), spec.q());
    let theta = 2 * p * q + p + q;
    assert_eq!(theta, spec.theta(), "closed-form theta disagrees with the construction");
    let (pi, qi) = (p as i64, q as i64);
    let margin = 2 * pi * pi - 2 * pi * qi - 4 * pi + 3 * qi + 2;
    Ok(PrgMargin { p, q, theta, margin })
}

/// `3ρ² + θ² − 4ρθ + θ + ρ − 2`, the goodness margin (doubled) for ring
/// codes with `n = θ`.
pub fn ring_margin_case1(rho: i64, theta: i64) -> i64 {
    3 * rho * rho + theta * theta - 4 * rho * theta + theta + rho - 2
}

/// `m³θ² + (m+2)ρ² − 2m²θρ + m²θ − (m+2)ρ − 2mθρ + 2mθ − 2m`, reported as a
/// diagnostic only.
pub fn ring_margin_case2(m: i64, rho: i64, theta: i64) -> i64 {
    m * m * m * theta * theta + (m + 2) * rho * rho - 2 * m * m * theta * rho + m * m * theta
        - (m + 2) * rho
        - 2 * m * theta * rho
        + 2 * m * theta
        - 2 * m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionBasis {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingCase {
    /// `θ = n`
    Equal,
    /// `θ = m·n`, `m > 1`
    Multiple,
    /// `θ < n`
    FewerPackets,
    /// `θ > n`, not a multiple of `n`
    NonMultiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPrediction {
    pub k: usize,
    pub case: RingCase,
    pub basis: PredictionBasis,
}

/// Closed-form reconstruction degree of a ring code at `M = θ − 1`.
pub fn predicted_k_ring(n: usize, theta: usize, rho: usize) -> Result<RingPrediction> {
    let spec = RingSpec::new(n, theta, rho)?;
    let (case, k, basis) = match spec.div_rem() {
        (1, 0) => (RingCase::Equal, n - rho, PredictionBasis::Theorem),
        (_, 0) => (RingCase::Multiple, n - rho + 1, PredictionBasis::Theorem),
        (0, _) => (RingCase::FewerPackets, n - rho, PredictionBasis::Conjecture),
        _ => (RingCase::NonMultiple, n - rho + 1, PredictionBasis::Conjecture),
    };
    Ok(RingPrediction { k, case, basis })
}

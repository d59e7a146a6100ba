//! Exact uncoded repair of a single failed node.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::{FrCode, NodeId, PacketId, BETA};
use crate::error::{FrcError, Result};
use crate::packet_set::PacketSet;
use crate::subsets::{binomial, Budget, Combinations};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairPlan {
    pub failed: NodeId,
    /// Lost packet → helper it is copied from.
    pub assignments: BTreeMap<PacketId, NodeId>,
    pub helpers: Vec<NodeId>,
    pub repair_degree: usize,
    pub bandwidth: usize,
}

impl RepairPlan {
    fn from_helpers(code: &FrCode, failed: usize, helpers: &[usize]) -> Self {
        let mut assignments = BTreeMap::new();
        for packet in code.node(failed).iter() {
            let helper = helpers
                .iter()
                .copied()
                .find(|&h| code.node(h).contains(packet))
                .expect("helper set covers every lost packet");
            assignments.insert(PacketId(packet), NodeId(helper));
        }
        let mut used: Vec<usize> = assignments.values().map(|h| h.0).collect();
        used.sort_unstable();
        used.dedup();
        RepairPlan {
            failed: NodeId(failed),
            bandwidth: assignments.len() * BETA,
            repair_degree: used.len(),
            helpers: used.into_iter().map(NodeId).collect(),
            assignments,
        }
    }

    /// Checks the plan against `code`: every lost packet assigned to a live
    /// node that holds it, and nothing else.
    pub fn is_valid_for(&self, code: &FrCode) -> bool {
        let failed = self.failed.0;
        let lost = code.node(failed).to_vec();
        let assigned: Vec<usize> = self.assignments.keys().map(|p| p.0).collect();
        lost == assigned
            && self
                .assignments
                .iter()
                .all(|(p, h)| h.0 != failed && h.0 < code.n() && code.node(h.0).contains(p.0))
            && self.bandwidth == lost.len() * BETA
            && self.repair_degree == self.helpers.len()
            && !self.helpers.contains(&self.failed)
    }
}

fn lost_and_candidates(code: &FrCode, failed: usize) -> Result<(PacketSet, Vec<usize>)> {
    let n = code.n();
    if failed >= n {
        return Err(FrcError::NodeOutOfRange { node: failed, n });
    }
    let lost = code.node(failed).clone();
    let mut reachable = PacketSet::empty(code.theta());
    let mut candidates = Vec::new();
    for i in (0..n).filter(|&i| i != failed) {
        let mut shared = code.node(i).clone();
        shared.intersect_with(&lost);
        if !shared.is_empty() {
            reachable.union_with(&shared);
            candidates.push(i);
        }
    }
    if let Some(packet) = lost.iter().find(|&p| !reachable.contains(p)) {
        return Err(FrcError::Unrepairable { node: failed, packet });
    }
    Ok((lost, candidates))
}

/// Repair plan using the fewest distinct helpers.
///
/// Helper sets are enumerated by increasing size in lexicographic order
/// over candidate nodes, so the first cover found is minimum and
/// deterministic. Each lost packet is then fetched from the lowest-indexed
/// helper holding it.
pub fn plan_repair(code: &FrCode, failed: usize, budget: Budget) -> Result<RepairPlan> {
    let (lost, candidates) = lost_and_candidates(code, failed)?;
    if lost.is_empty() {
        return Ok(RepairPlan::from_helpers(code, failed, &[]));
    }
    let mut union = PacketSet::empty(code.theta());
    for size in 1..=candidates.len() {
        budget.check(binomial(candidates.len(), size))?;
        for combo in Combinations::new(candidates.len(), size) {
            union.clear();
            for &c in &combo {
                union.union_with(code.node(candidates[c]));
            }
            if lost.is_subset(&union) {
                let helpers: Vec<usize> = combo.iter().map(|&c| candidates[c]).collect();
                return Ok(RepairPlan::from_helpers(code, failed, &helpers));
            }
        }
    }
    unreachable!("all candidates together cover every lost packet")
}

/// Baseline plan: each packet from its lowest-indexed surviving replica.
pub fn plan_repair_first_replica(code: &FrCode, failed: usize) -> Result<RepairPlan> {
    let (_, candidates) = lost_and_candidates(code, failed)?;
    Ok(RepairPlan::from_helpers(code, failed, &candidates))
}

/// Minimum repair degree of every node.
pub fn repair_degree_profile(code: &FrCode, budget: Budget) -> Result<Vec<usize>> {
    (0..code.n())
        .map(|i| plan_repair(code, i, budget).map(|p| p.repair_degree))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_prg, build_ring, PrgSpec, RingSpec};

    #[test]
    fn ring_5_5_2_node_0() {
        let code = build_ring(&RingSpec::new(5, 5, 2).unwrap());
        let plan = plan_repair(&code, 0, Budget::default()).unwrap();
        assert_eq!(plan.helpers, vec![NodeId(1), NodeId(4)]);
        assert_eq!(plan.bandwidth, 2);
        assert_eq!(plan.assignments[&PacketId(0)], NodeId(1));
        assert_eq!(plan.assignments[&PacketId(4)], NodeId(4));
        assert!(plan.is_valid_for(&code));
    }

    #[test]
    fn prg_deficient_node() {
        let code = build_prg(&PrgSpec::new(7, 5).unwrap());
        let plan = plan_repair(&code, 6, Budget::default()).unwrap();
        assert_eq!(plan.bandwidth, 4);
        // each packet of U_7 is an edge to a distinct neighbour
        assert_eq!(plan.repair_degree, 4);
        assert!(plan.is_valid_for(&code));
    }

    #[test]
    fn unreplicated_packet_is_unrepairable() {
        let code = FrCode::new(2, 2, vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(
            plan_repair(&code, 0, Budget::default()),
            Err(FrcError::Unrepairable { node: 0, packet: 0 })
        ));
        assert!(matches!(
            plan_repair(&code, 2, Budget::default()),
            Err(FrcError::NodeOutOfRange { .. })
        ));
    }

    #[test]
    fn hand_counted_overlap_code() {
        // U_1 = {0,1,2}; 0 only on U_2, 1 on U_2 and U_3, 2 only on U_4
        let code = FrCode::new(4, 3, vec![vec![0, 1, 2], vec![0, 1], vec![1], vec![2]]).unwrap();
        let plan = plan_repair(&code, 0, Budget::default()).unwrap();
        assert_eq!(plan.helpers, vec![NodeId(1), NodeId(3)]);
        let greedy = plan_repair_first_replica(&code, 0).unwrap();
        assert_eq!(greedy.repair_degree, 2);
        assert_eq!(repair_degree_profile(&code, Budget::default()).unwrap(), vec![2, 1, 1, 1]);
    }

    #[test]
    fn empty_node_needs_no_helpers() {
        let code = FrCode::new(3, 1, vec![vec![0], vec![0], vec![]]).unwrap();
        let plan = plan_repair(&code, 2, Budget::default()).unwrap();
        assert_eq!((plan.repair_degree, plan.bandwidth), (0, 0));
    }
}

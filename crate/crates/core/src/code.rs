//! The FR code data model: nodes holding subsets of packets.
//!
//! Indices are 0-based throughout; `Display` impls on [`NodeId`] and
//! [`PacketId`] render the 1-based `U_i` / `P_j` labels used in reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FrcError, Result};
use crate::packet_set::PacketSet;

/// Default upper bound on the packet count accepted by [`FrCode::new`].
pub const DEFAULT_THETA_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PacketId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U_{}", self.0 + 1)
    }
}

impl fmt::Display for PacketId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}", self.0 + 1)
    }
}

/// An incidence structure of `n` node sets over `theta` packets.
///
/// Replication and storage need not be uniform, so the same type carries FR,
/// weak FR and heterogeneous codes. Construction validates every invariant;
/// afterwards the value is immutable.
#[derive(Clone, PartialEq, Eq)]
pub struct FrCode {
    theta: usize,
    nodes: Vec<PacketSet>,
}

impl FrCode {
    /// Validates and builds a code from per-node packet lists.
    pub fn new(n: usize, theta: usize, storage: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_theta_cap(n, theta, storage, DEFAULT_THETA_CAP)
    }

    pub fn with_theta_cap(
        n: usize,
        theta: usize,
        storage: Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<Self> {
        if n == 0 || theta == 0 {
            return Err(FrcError::EmptySystem);
        }
        if theta > cap {
            return Err(FrcError::ThetaTooLarge { theta, cap });
        }
        if storage.len() != n {
            return Err(FrcError::NodeCountMismatch {
                expected: n,
                found: storage.len(),
            });
        }
        let mut nodes = Vec::with_capacity(n);
        let mut seen = PacketSet::empty(theta);
        for (node, packets) in storage.into_iter().enumerate() {
            let mut set = PacketSet::empty(theta);
            for packet in packets {
                if packet >= theta {
                    return Err(FrcError::IndexOutOfRange { node, packet, theta });
                }
                if !set.insert(packet) {
                    return Err(FrcError::DuplicatePacket { node, packet });
                }
            }
            seen.union_with(&set);
            nodes.push(set);
        }
        if let Some(packet) = (0..theta).find(|&p| !seen.contains(p)) {
            return Err(FrcError::OrphanPacket { packet });
        }
        Ok(FrCode { theta, nodes })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn node(&self, i: usize) -> &PacketSet {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[PacketSet] {
        &self.nodes
    }

    /// Node-major packet lists, each sorted ascending (the canonical form).
    pub fn storage(&self) -> Vec<Vec<usize>> {
        self.nodes.iter().map(PacketSet::to_vec).collect()
    }

    /// Nodes holding `packet`, ascending.
    pub fn holders(&self, packet: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.nodes[i].contains(packet)).collect()
    }

    pub fn profile(&self) -> CodeProfile {
        let alpha_per_node: Vec<usize> = self.nodes.iter().map(PacketSet::len).collect();
        let mut rho_per_packet = vec![0usize; self.theta];
        for node in &self.nodes {
            for p in node.iter() {
                rho_per_packet[p] += 1;
            }
        }
        let alpha = alpha_per_node.iter().copied().max().unwrap_or(0);
        let rho = rho_per_packet.iter().copied().max().unwrap_or(0);
        let is_uniform_storage = alpha_per_node.iter().all(|&a| a == alpha);
        let is_regular_replication = rho_per_packet.iter().all(|&r| r == rho);
        CodeProfile {
            alpha_per_node,
            alpha,
            rho_per_packet,
            rho,
            is_regular_replication,
            is_uniform_storage,
        }
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let rows = self
            .nodes
            .iter()
            .map(|set| (0..self.theta).map(|p| set.contains(p) as u8).collect())
            .collect();
        IncidenceMatrix { rows }
    }

    pub fn from_incidence(matrix: &IncidenceMatrix) -> Result<Self> {
        let theta = matrix.cols();
        let storage = matrix
            .rows
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &b)| b != 0).map(|(j, _)| j).collect())
            .collect();
        Self::new(matrix.rows(), theta, storage)
    }

    /// Classifies the code against `n·α = ρ·θ` and its single-deficient-node
    /// variant `n·α − 1 = ρ·θ`.
    pub fn check_identities(&self) -> IdentityReport {
        let profile = self.profile();
        let n = self.n();
        let total_storage: usize = profile.alpha_per_node.iter().sum();
        let total_replication: usize = profile.rho_per_packet.iter().sum();
        assert_eq!(total_storage, total_replication, "double counting broken");

        let lhs = n * profile.alpha;
        let rhs = profile.rho * self.theta;
        let kind = if profile.is_regular_replication && profile.is_uniform_storage && lhs == rhs {
            IdentityKind::Regular
        } else if profile.is_regular_replication && profile.has_single_deficient_node() && lhs == rhs + 1 {
            IdentityKind::SingleDeficient
        } else {
            IdentityKind::General
        };
        IdentityReport {
            kind,
            n_alpha: lhs,
            rho_theta: rhs,
            total_storage,
            total_replication,
        }
    }
}

impl fmt::Debug for FrCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrCode")
            .field("n", &self.n())
            .field("theta", &self.theta)
            .field("nodes", &self.nodes)
            .finish()
    }
}

/// Per-node storage and per-packet replication counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeProfile {
    pub alpha_per_node: Vec<usize>,
    pub alpha: usize,
    pub rho_per_packet: Vec<usize>,
    pub rho: usize,
    pub is_regular_replication: bool,
    pub is_uniform_storage: bool,
}

impl CodeProfile {
    /// True when exactly one node stores `α − 1` packets and every other
    /// node stores `α` (the partial-regular-graph shape).
    pub fn has_single_deficient_node(&self) -> bool {
        if self.alpha == 0 {
            return false;
        }
        let short = self.alpha_per_node.iter().filter(|&&a| a == self.alpha - 1).count();
        let full = self.alpha_per_node.iter().filter(|&&a| a == self.alpha).count();
        short == 1 && full == self.alpha_per_node.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// Uniform storage, regular replication, `n·α = ρ·θ`.
    Regular,
    /// One node short by a packet, `n·α − 1 = ρ·θ`.
    SingleDeficient,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub n_alpha: usize,
    pub rho_theta: usize,
    pub total_storage: usize,
    pub total_replication: usize,
}

/// Parameters of an `(n, k, d)` storage system carrying a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DssParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub file_size: usize,
    pub beta: usize,
}

/// Repair traffic per helper; repair copies whole packets.
pub const BETA: usize = 1;

impl DssParams {
    pub fn new(n: usize, k: usize, d: usize, file_size: usize, theta: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(FrcError::KOutOfRange { k, n });
        }
        if d == 0 || d >= n {
            return Err(FrcError::InvalidParameters(format!("repair degree d = {d} outside 1..{n}")));
        }
        if file_size > theta {
            return Err(FrcError::FileSizeOutOfRange { file_size, theta });
        }
        Ok(DssParams { n, k, d, file_size, beta: BETA })
    }
}

/// Dense `n × θ` 0/1 view of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<u8>>,
}

impl IncidenceMatrix {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(FrcError::ParseError("ragged incidence matrix".into()));
        }
        if rows.iter().flatten().any(|&b| b > 1) {
            return Err(FrcError::ParseError("incidence entries must be 0 or 1".into()));
        }
        Ok(IncidenceMatrix { rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.rows[i][j]
    }

    pub fn as_rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().map(|&b| b as usize).sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.cols())
            .map(|j| self.rows.iter().map(|r| r[j] as usize).sum())
            .collect()
    }

    /// One line per node, comma separated, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|&b| if b == 1 { "1" } else { "0" }).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| match cell.trim() {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => Err(FrcError::ParseError(format!(
                        "line {}: expected 0 or 1, found {other:?}",
                        lineno + 1
                    ))),
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_replicated_code() {
        let code = FrCode::new(2, 1, vec![vec![0], vec![0]]).unwrap();
        let p = code.profile();
        assert_eq!(p.rho, 2);
        assert_eq!(p.alpha, 1);
        assert!(p.is_regular_replication && p.is_uniform_storage);
    }

    #[test]
    fn orphan_packet_rejected() {
        let err = FrCode::new(2, 2, vec![vec![0], vec![0]]).unwrap_err();
        assert!(matches!(err, FrcError::OrphanPacket { packet: 1 }));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FrCode::new(0, 1, vec![]), Err(FrcError::EmptySystem)));
        assert!(matches!(FrCode::new(1, 0, vec![vec![]]), Err(FrcError::EmptySystem)));
        assert!(matches!(
            FrCode::new(1, 2, vec![vec![0, 2]]),
            Err(FrcError::IndexOutOfRange { node: 0, packet: 2, theta: 2 })
        ));
        assert!(matches!(
            FrCode::new(1, 1, vec![vec![0, 0]]),
            Err(FrcError::DuplicatePacket { .. })
        ));
        assert!(matches!(
            FrCode::new(2, 1, vec![vec![0]]),
            Err(FrcError::NodeCountMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(
            FrCode::with_theta_cap(1, 10, vec![(0..10).collect()], 8),
            Err(FrcError::ThetaTooLarge { theta: 10, cap: 8 })
        ));
    }

    #[test]
    fn single_node_holding_everything() {
        let code = FrCode::new(1, 4, vec![vec![3, 1, 0, 2]]).unwrap();
        let p = code.profile();
        assert_eq!((p.alpha, p.rho), (4, 1));
        assert_eq!(code.incidence_matrix().as_rows(), &[vec![1, 1, 1, 1]]);
        assert_eq!(code.storage(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn profile_ignores_input_order() {
        let a = FrCode::new(3, 3, vec![vec![2, 0], vec![1, 0], vec![2]]).unwrap();
        let b = FrCode::new(3, 3, vec![vec![0, 2], vec![0, 1], vec![2]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.profile(), b.profile());
    }

    #[test]
    fn irregular_code_falls_through_to_general() {
        let code = FrCode::new(3, 3, vec![vec![0, 1, 2], vec![0], vec![1]]).unwrap();
        let report = code.check_identities();
        assert_eq!(report.kind, IdentityKind::General);
        assert_eq!(report.total_storage, 5);
        assert_eq!(report.total_replication, 5);
    }

    #[test]
    fn display_labels_are_one_based() {
        assert_eq!(NodeId(6).to_string(), "U_7");
        assert_eq!(PacketId(0).to_string(), "P_1");
    }

    #[test]
    fn dss_params_bounds() {
        assert!(DssParams::new(7, 5, 5, 16, 17).is_ok());
        assert!(DssParams::new(7, 8, 5, 16, 17).is_err());
        assert!(DssParams::new(7, 5, 7, 16, 17).is_err());
        assert!(DssParams::new(7, 5, 5, 18, 17).is_err());
    }

    #[test]
    fn csv_matrix_parse_errors() {
        assert!(IncidenceMatrix::parse_csv("1,0\n1\n").is_err());
        assert!(IncidenceMatrix::parse_csv("1,2\n").is_err());
        let m = IncidenceMatrix::parse_csv("1,0\n0,1\n").unwrap();
        assert_eq!(m.row_sums(), vec![1, 1]);
        assert_eq!(m.col_sums(), vec![1, 1]);
    }
}

//! Code families: partial regular graphs, the ring placement and the
//! circulant t-construction.

use serde::{Deserialize, Serialize};

use crate::code::FrCode;
use crate::error::{FrcError, Result};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Partial regular graph on `n` vertices: `n − 1` vertices of degree `d`,
/// the last one of degree `d − 1`. Both `n` and `d` are odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrgSpec {
    n: usize,
    d: usize,
}

impl PrgSpec {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n.is_multiple_of(2) || d.is_multiple_of(2) {
            return Err(FrcError::ParityError { n, d });
        }
        let max = n.saturating_sub(2);
        if d < 3 || d > max {
            return Err(FrcError::DegreeRange { n, d, max });
        }
        Ok(PrgSpec { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `(n − 1) / 2`
    pub fn p(&self) -> usize {
        (self.n - 1) / 2
    }

    /// `(d − 1) / 2`
    pub fn q(&self) -> usize {
        (self.d - 1) / 2
    }

    pub fn theta(&self) -> usize {
        (self.n * self.d - 1) / 2
    }

    /// Edge list in packet order: circulant edges `(v, v + s)` ordered by
    /// offset `s ∈ 1..=q` then start vertex, followed by the matching edges
    /// `(j, j + p)` for `j ∈ 0..p`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut edges = Vec::with_capacity(self.theta());
        for offset in 1..=self.q() {
            for v in 0..n {
                edges.push((v, (v + offset) % n));
            }
        }
        for j in 0..self.p() {
            edges.push((j, j + self.p()));
        }
        edges
    }
}

/// Each edge becomes a packet stored on both endpoints.
pub fn build_prg(spec: &PrgSpec) -> FrCode {
    let edges = spec.edges();
    let mut storage = vec![Vec::new(); spec.n];
    for (packet, &(u, v)) in edges.iter().enumerate() {
        storage[u].push(packet);
        storage[v].push(packet);
    }
    FrCode::new(spec.n, edges.len(), storage).expect("partial regular graph code is valid")
}

/// Ring placement of `theta` packets on `n` nodes, each packet replicated
/// on `rho` consecutive nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    n: usize,
    theta: usize,
    rho: usize,
}

impl RingSpec {
    pub fn new(n: usize, theta: usize, rho: usize) -> Result<Self> {
        if rho < 2 || rho >= n {
            return Err(FrcError::RhoRange { n, rho });
        }
        if theta == 0 {
            return Err(FrcError::EmptySystem);
        }
        Ok(RingSpec { n, theta, rho })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Quotient and remainder of `theta = quotient·n + remainder`.
    pub fn div_rem(&self) -> (usize, usize) {
        (self.theta / self.n, self.theta % self.n)
    }

    /// Number of full turns around the ring, when `theta` is a multiple of `n`.
    pub fn multiplicity(&self) -> Option<usize> {
        match self.div_rem() {
            (m, 0) => Some(m),
            _ => None,
        }
    }
}

/// Packet `j` lands on nodes `j, j+1, …, j+ρ−1` (mod `n`).
pub fn build_ring(spec: &RingSpec) -> FrCode {
    let mut storage = vec![Vec::new(); spec.n];
    for packet in 0..spec.theta {
        for i in 0..spec.rho {
            storage[(packet + i) % spec.n].push(packet);
        }
    }
    FrCode::new(spec.n, spec.theta, storage).expect("ring code is valid")
}

/// Circulant code with `n = θ` and `α = ρ = d`: node `i` stores
/// `{i + j·(t+1) mod n : 0 ≤ j < d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSpec {
    n: usize,
    d: usize,
    t: usize,
}

impl TSpec {
    pub fn new(n: usize, d: usize, t: usize) -> Result<Self> {
        if n < 2 || d < 2 {
            return Err(FrcError::InvalidParameters(format!(
                "t-construction needs n >= 2 and d >= 2 (got n = {n}, d = {d})"
            )));
        }
        let orbit = n / gcd((t + 1) % n, n);
        if orbit < d {
            return Err(FrcError::DegenerateOffsets { n, d, t });
        }
        Ok(TSpec { n, d, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn offsets(&self) -> Vec<usize> {
        let step = (self.t + 1) % self.n;
        (0..self.d).map(|j| (j * step) % self.n).collect()
    }
}

pub fn build_t_code(spec: &TSpec) -> FrCode {
    let offsets = spec.offsets();
    let storage = (0..spec.n)
        .map(|i| offsets.iter().map(|o| (i + o) % spec.n).collect())
        .collect();
    FrCode::new(spec.n, spec.n, storage).expect("t-construction code is valid")
}

//! k-subset enumeration helpers and the enumeration budget.

use serde::{Deserialize, Serialize};

use crate::error::{FrcError, Result};

/// Default cap on the number of subsets a single enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Upper bound on subsets visited by one exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u128);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget(u128::MAX);

    /// Reads `FRC_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var("FRC_BUDGET") {
            Ok(raw) => raw
                .trim()
                .replace('_', "")
                .parse::<u128>()
                .map(Budget)
                .map_err(|_| FrcError::ParseError(format!("FRC_BUDGET={raw:?} is not an integer"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(FrcError::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic iterator over the `k`-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

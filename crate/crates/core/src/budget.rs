/// Limits on every exhaustive search in the engine.
///
/// A search whose size would exceed its limit returns
/// [`Error::BudgetExceeded`](crate::Error::BudgetExceeded) instead of an
/// approximate answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Upper bound on `|Q_N|^3` for triple quantification over a ring
    /// quotient, and on `|Q_N|^2 * |M|` for element-level submodule checks.
    pub triples: u128,
    /// Maximum number of invariant subspaces an enumeration may produce.
    pub subspaces: u128,
    /// Maximum number of hom-space combinations an isomorphism search may
    /// scan exhaustively.
    pub iso_combinations: u128,
    /// Maximum size of an endomorphism algebra scanned exhaustively when no
    /// cheaper locality certificate applies.
    pub end_exhaustive: u128,
    /// Deterministic pseudo-random probes tried before an exhaustive scan.
    pub samples: usize,
}

/// Number of subspaces of `F_2^8`.
pub const DEFAULT_SUBSPACES: u128 = 417_199;

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            triples: 1 << 24,
            subspaces: DEFAULT_SUBSPACES,
            iso_combinations: 1 << 16,
            end_exhaustive: 1 << 12,
            samples: 256,
        }
    }
}

impl Budgets {
    pub fn with_triples(mut self, triples: u128) -> Self {
        self.triples = triples;
        self
    }

    pub fn with_subspaces(mut self, subspaces: u128) -> Self {
        self.subspaces = subspaces;
        self
    }
}

pub(crate) fn checked_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

//! Enumeration caps. Every exhaustive loop checks its size first and fails
//! loudly with [`crate::Error::CapExceeded`] instead of running forever; the
//! verification suites report such instances as inconclusive rather than
//! failed.

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest subspace family a single Grassmannian call may walk.
    pub subspaces: u128,
    /// Largest point count for Hom/Ext/automorphism space walks.
    pub enumeration: u128,
    /// Largest field cardinality.
    pub field: u64,
    /// Seed for the randomized isomorphism-witness fast path. `None` keeps
    /// every walk purely exhaustive, which is what verification mode uses;
    /// the answer is the same either way, only the search order changes.
    pub rng_seed: Option<u64>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subspaces: 1_000_000,
            enumeration: 1_000_000,
            field: crate::field::DEFAULT_FIELD_CAP,
            rng_seed: None,
        }
    }
}

impl Caps {
    pub fn with_enumeration(mut self, cap: u128) -> Self {
        self.enumeration = cap;
        self
    }

    pub fn with_subspaces(mut self, cap: u128) -> Self {
        self.subspaces = cap;
        self
    }

    pub fn with_rng_seed(mut self, seed: Option<u64>) -> Self {
        self.rng_seed = seed;
        self
    }
}

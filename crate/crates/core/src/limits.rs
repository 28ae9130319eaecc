//! Enumeration caps.
//!
//! Every operation that walks a combinatorial stream checks its size against
//! a configured cap before starting, so an oversized request fails fast with
//! a capacity error instead of running away.

/// Caps for enumeration-backed operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of stream elements (permutations, inversion sequences,
    /// trees, barred placements) a single enumeration may produce.
    pub enumeration_cap: u128,
    /// Maximum value of t * max(r) accepted by brute-force lattice counting.
    pub lattice_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: 100_000_000,
            lattice_bound: 64,
        }
    }
}

impl Limits {
    /// Cap override used by the CLI (`EULERIAN_CAP`).
    pub fn with_enumeration_cap(cap: u128) -> Self {
        Limits {
            enumeration_cap: cap,
            ..Limits::default()
        }
    }

    pub fn check(&self, required: u128) -> crate::Result<()> {
        if required > self.enumeration_cap {
            Err(crate::CmeError::CapacityExceeded {
                required,
                cap: self.enumeration_cap,
            })
        } else {
            Ok(())
        }
    }
}

//! Parity count for a sequence of surgeries on a family of circles.
//!
//! An orientable surgery changes the number of circles by exactly one in
//! either direction. A non-orientable surgery leaves it unchanged.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("circle counts must be at least 1, got {c_in} and {c_out}")]
    BadCount { c_in: u64, c_out: u64 },
    #[error("{n} surgeries cannot change {c_in} circles into {c_out}")]
    Infeasible { c_in: u64, c_out: u64, n: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurgeryParity {
    pub orientable_only_feasible: bool,
    pub min_nonorientable: u64,
}

/// Decides whether `n` surgeries taking `c_in` circles to `c_out` can all be
/// orientable, and the least number that cannot.
pub fn surgery_parity(c_in: u64, c_out: u64, n: u64) -> Result<SurgeryParity, SurgeryError> {
    if c_in == 0 || c_out == 0 {
        return Err(SurgeryError::BadCount { c_in, c_out });
    }
    let gap = c_in.abs_diff(c_out);
    if n < gap {
        return Err(SurgeryError::Infeasible { c_in, c_out, n });
    }
    let feasible = (n - gap).is_multiple_of(2);
    Ok(SurgeryParity {
        orientable_only_feasible: feasible,
        min_nonorientable: u64::from(!feasible),
    })
}

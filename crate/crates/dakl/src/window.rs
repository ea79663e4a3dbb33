//! Truncation windows for scans over infinite root sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `d` bounds the delta-degree of affine roots, `m` the absolute pi-coefficient
/// of double affine roots, `h` the number of steps of any search (peeling,
/// orbit chains, Bruhat closures).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub d: i64,
    pub m: i64,
    pub h: usize,
}

impl Default for Window {
    fn default() -> Self {
        Self { d: 6, m: 6, h: 40 }
    }
}

impl Window {
    pub fn new(d: i64, m: i64, h: usize) -> Result<Self> {
        if d <= 0 || m <= 0 || h == 0 {
            return Err(Error::Config(format!("window values must be positive, got ({d}, {m}, {h})")));
        }
        Ok(Self { d, m, h })
    }

    pub fn doubled(self) -> Self {
        Self {
            d: 2 * self.d,
            m: 2 * self.m,
            h: 2 * self.h,
        }
    }

    /// Runs `f` at this window and at the doubled window and insists on equal results.
    pub fn stable<T, F>(self, what: &str, f: F) -> Result<T>
    where
        T: PartialEq,
        F: Fn(Window) -> Result<T>,
    {
        let a = f(self)?;
        let b = f(self.doubled())?;
        if a == b {
            Ok(a)
        } else {
            Err(Error::StabilizationFailure {
                what: what.to_string(),
                window: self,
            })
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(D={}, M={}, H={})", self.d, self.m, self.h)
    }
}

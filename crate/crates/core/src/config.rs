use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on enumerated words and ball entries.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// Caps and worker count for the exhaustive routines.
///
/// Exhaustive oracles fail with [`Error::CapExceeded`] instead of running
/// unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest word space (q^m) a scan or enumeration may visit.
    pub max_space: u64,
    /// Largest ball a single entropy evaluation may materialize.
    pub max_ball: u64,
    /// Worker threads for exhaustive scans; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_space: DEFAULT_CAP,
            max_ball: DEFAULT_CAP,
            threads: None,
        }
    }
}

impl Config {
    pub(crate) fn check_space(&self, size: u128) -> Result<()> {
        if size > self.max_space as u128 {
            return Err(Error::CapExceeded {
                cap: "max-space",
                size,
                limit: self.max_space,
            });
        }
        Ok(())
    }

    pub(crate) fn check_ball(&self, size: u128) -> Result<()> {
        if size > self.max_ball as u128 {
            return Err(Error::CapExceeded {
                cap: "max-ball",
                size,
                limit: self.max_ball,
            });
        }
        Ok(())
    }
}

/// Execution strategy for the data-parallel loops.
///
/// `Parallel` silently degrades to `Sequential` when the crate is built
/// without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Ordered map over `items`. Output order matches input order for both strategies.
    pub(crate) fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }
}

/// Enumeration limits for the brute-force oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Longest string enumerated in one dimension.
    pub max_len_1d: usize,
    /// Largest number of cells `m * n` searched in two dimensions.
    pub max_cells_2d: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_len_1d: 24,
            max_cells_2d: 36,
        }
    }
}

impl Caps {
    pub const ENV_VAR: &'static str = "RIVIERA_CAP";

    /// Reads `RIVIERA_CAP` as `LEN[,CELLS]`; missing or malformed parts keep the defaults.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .map(|v| Self::parse_override(&v))
            .unwrap_or_default()
    }

    pub fn parse_override(value: &str) -> Self {
        let mut caps = Caps::default();
        let mut parts = value.split(',').map(str::trim);
        if let Some(len) = parts.next().and_then(|p| p.parse().ok()) {
            caps.max_len_1d = len;
        }
        if let Some(cells) = parts.next().and_then(|p| p.parse().ok()) {
            caps.max_cells_2d = cells;
        }
        caps
    }

    pub(crate) fn check_len(&self, n: usize) -> crate::Result<()> {
        // bitmask enumeration stores a string in a u32
        let cap = self.max_len_1d.min(31);
        if n > cap {
            return Err(crate::Error::CapExceeded {
                what: "length",
                requested: n,
                cap,
            });
        }
        Ok(())
    }

    pub(crate) fn check_cells(&self, m: usize, n: usize) -> crate::Result<()> {
        if m * n > self.max_cells_2d || n > 31 {
            return Err(crate::Error::CapExceeded {
                what: "cells",
                requested: m * n,
                cap: self.max_cells_2d,
            });
        }
        Ok(())
    }
}

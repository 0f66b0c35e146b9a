use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Ensemble of one-dimensional configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All jammed configurations.
    Riviera,
    /// Jammed and resistant to predators.
    Predator,
    /// Jammed and resistant to altruists.
    Altruist,
    /// Resistant to both (evolutionary stable).
    Es,
    /// Jammed states of Flory's model: no two adjacent occupied sites.
    Flory,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Riviera,
        Family::Predator,
        Family::Altruist,
        Family::Es,
        Family::Flory,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Riviera => "riviera",
            Family::Predator => "predator",
            Family::Altruist => "altruist",
            Family::Es => "es",
            Family::Flory => "flory",
        }
    }

    /// Longest configuration with `k` occupied lots that can belong to the family.
    pub fn max_length_for_occupancy(self, k: usize) -> usize {
        match self {
            Family::Flory => 3 * k + 1,
            _ => 2 * k + 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

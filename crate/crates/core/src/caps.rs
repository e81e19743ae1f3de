//! Resource caps shared by every construction in the crate.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bounds on the sizes of objects the library is willing to build.
///
/// Every constructor that could blow up combinatorially takes a `&Caps` and
/// fails with [`Error::CapExceeded`] instead of allocating without bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Vertices of a single complex (grid points, Γ vertices, ...).
    pub max_vertices: usize,
    /// Simplices in any single dimension of an enumeration.
    pub max_simplices_per_dim: usize,
    /// Total face-poset size (all dimensions, including the empty simplex).
    pub max_poset: usize,
    /// Maximal cliques returned by one enumeration.
    pub max_maximal: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_vertices: 20_000,
            max_simplices_per_dim: 2_000_000,
            max_poset: 6_000_000,
            max_maximal: 1_000_000,
        }
    }
}

impl Caps {
    pub fn check_vertices(&self, found: usize) -> Result<()> {
        if found > self.max_vertices {
            return Err(Error::cap("vertex count", self.max_vertices, found));
        }
        Ok(())
    }
}

impl FromStr for Caps {
    type Err = Error;

    /// Parses `key=value` pairs separated by commas, e.g.
    /// `vertices=5000,simplices=100000`. Unlisted keys keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut caps = Caps::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("cap `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("cap `{part}` has a non-integer value")))?;
            match key.trim() {
                "vertices" => caps.max_vertices = value,
                "simplices" => caps.max_simplices_per_dim = value,
                "poset" => caps.max_poset = value,
                "maximal" => caps.max_maximal = value,
                other => return Err(Error::invalid(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }
}

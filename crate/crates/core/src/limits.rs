//! Size limits for the enumeration-backed operations.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_elements`].
pub const MAX_ELEMENTS_ENV: &str = "FILTRUM_MAX_ELEMENTS";
/// Environment variable overriding [`Limits::max_opens`].
pub const MAX_OPENS_ENV: &str = "FILTRUM_MAX_OPENS";

/// Bounds on carrier sizes. Validation never consults these; enumeration does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest monoid or ring whose filters, ideals or subsets get enumerated.
    pub max_elements: usize,
    /// Largest monoid whose subsets may be scanned exhaustively.
    pub max_scan_elements: usize,
    /// Largest number of points of a filtrum or finite space.
    pub max_points: usize,
    /// Largest number of open sets materialised for one space.
    pub max_opens: usize,
    /// Largest carrier a product construction may produce.
    pub max_product: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 24,
            max_scan_elements: 24,
            max_points: 64,
            max_opens: 1 << 16,
            max_product: 4096,
        }
    }
}

impl Limits {
    /// Defaults, with the environment overrides applied when they parse.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = read_env(MAX_ELEMENTS_ENV) {
            limits.max_elements = n;
            limits.max_scan_elements = n;
        }
        if let Some(n) = read_env(MAX_OPENS_ENV) {
            limits.max_opens = n;
        }
        limits
    }

    pub fn with_max_elements(mut self, n: usize) -> Self {
        self.max_elements = n;
        self
    }

    pub(crate) fn check_elements(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.max_elements {
            return Err(Error::cap(what, size, self.max_elements));
        }
        Ok(())
    }

    pub(crate) fn check_points(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.max_points {
            return Err(Error::cap(what, size, self.max_points));
        }
        Ok(())
    }

    pub(crate) fn check_opens(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.max_opens {
            return Err(Error::cap(what, size, self.max_opens));
        }
        Ok(())
    }
}

fn read_env(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}

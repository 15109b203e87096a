//! Budget knobs shared by every search.
//!
//! Defaults can be overridden per process with environment variables:
//! `GASCHUTZ_ELEMENT_CAP`, `GASCHUTZ_AUT_CAP`, `GASCHUTZ_LATTICE_CAP`,
//! `GASCHUTZ_TUPLE_CAP` and `GASCHUTZ_TIME_BUDGET_SECS`.

use std::sync::OnceLock;
use std::time::Duration;

/// Largest group the element enumerator will build.
pub const DEFAULT_ELEMENT_CAP: usize = 20_000;
/// Largest group whose automorphism group is computed.
pub const DEFAULT_AUT_CAP: usize = 512;
/// Largest group whose full subgroup lattice is enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 2_000;
/// Largest number of lift tuples a complement search will examine.
pub const DEFAULT_TUPLE_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
    pub aut_cap: usize,
    pub lattice_cap: usize,
    pub tuple_cap: u64,
    pub time_budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: DEFAULT_ELEMENT_CAP,
            aut_cap: DEFAULT_AUT_CAP,
            lattice_cap: DEFAULT_LATTICE_CAP,
            tuple_cap: DEFAULT_TUPLE_CAP,
            time_budget: None,
        }
    }
}

fn env_parse<T: std::str::FromStr>(key: &str) -> Option<T> {
    std::env::var(key).ok().and_then(|v| v.trim().parse().ok())
}

impl Limits {
    /// Defaults, with any environment overrides applied.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = env_parse("GASCHUTZ_ELEMENT_CAP") {
            limits.element_cap = v;
        }
        if let Some(v) = env_parse("GASCHUTZ_AUT_CAP") {
            limits.aut_cap = v;
        }
        if let Some(v) = env_parse("GASCHUTZ_LATTICE_CAP") {
            limits.lattice_cap = v;
        }
        if let Some(v) = env_parse("GASCHUTZ_TUPLE_CAP") {
            limits.tuple_cap = v;
        }
        if let Some(v) = env_parse::<f64>("GASCHUTZ_TIME_BUDGET_SECS") {
            limits.time_budget = Some(Duration::from_secs_f64(v));
        }
        limits
    }

    /// Process-wide limits, read from the environment on first use.
    pub fn current() -> &'static Limits {
        static CURRENT: OnceLock<Limits> = OnceLock::new();
        CURRENT.get_or_init(Limits::from_env)
    }
}

use thiserror::Error;

/// Errors produced by generators, schedules, the complexity engine and
/// certificate constructors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("bounds error: {0}")]
    Bounds(String),

    #[error("schedule depth exceeded: gap index {index} needs depth {required}, schedule has k_max = {k_max}")]
    ScheduleDepthExceeded {
        index: u64,
        required: u32,
        k_max: u32,
    },

    #[error("f grows too slowly for cap: needs f(n) >= {needed} but the table tops out at f = {available}")]
    GrowthTooSlow { needed: u128, available: u64 },

    #[error("materialization budget exceeded: {0}")]
    Budget(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("doubling gate unstable: first disagreement at n = {first_n} (base {base_len} symbols vs doubled {doubled_len})")]
    GateUnstable {
        first_n: usize,
        base_len: usize,
        doubled_len: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

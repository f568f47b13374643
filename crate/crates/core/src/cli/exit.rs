pub const SUCCESS: i32 = 0;
/// Infeasible series, no witness, or no matching index record.
pub const NEGATIVE: i32 = 1;
/// Malformed input, bad flags, I/O failure.
pub const USAGE: i32 = 2;
pub const BUDGET: i32 = 3;

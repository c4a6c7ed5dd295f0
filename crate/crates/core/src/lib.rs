pub mod builder;
pub mod cli;
pub mod coding;
pub mod diagonal;
pub mod kernel;
pub mod scripts;
pub mod syntax;
pub mod systems;

/// Seed for every sampler when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;
pub mod revision;

//! Shared helpers for the criterion benchmarks live in the bench targets
//! themselves; this library exists only to anchor the package.

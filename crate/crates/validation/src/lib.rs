//! Acceptance checks live in `tests/acceptance.rs`; run with `cargo test -p planar-array-validation`.

//! Placeholder; fleshed out once the core API exists.

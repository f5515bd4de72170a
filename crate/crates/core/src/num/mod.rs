//! Low-level exact numerics: dyadics and rigorous intervals.

pub mod dyadic;
pub mod interval;

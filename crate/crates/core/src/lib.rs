//! Kac polynomials, refined DT invariants and characteristic functions of the
//! nilpotent critical CoHA of a tripled quiver, computed exactly from Hua's
//! multipartition formula and cross-checked by brute-force counting over
//! prime fields.

pub mod algebra;
pub mod dimension;
pub mod hua;
pub mod oracle;
pub mod partitions;
pub mod quiver;
pub mod series;

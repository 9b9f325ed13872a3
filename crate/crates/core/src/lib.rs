//! Exact enumeration of quarter-plane lattice walks for two special step
//! sets, reconstruction of their generating functions from kernel-root
//! iterates, and numerical certification of the resulting pole structure.
//!
//! All series and rational-function arithmetic is exact (big integers and
//! big rationals); floating point appears only in the arbitrary-precision
//! root finder and the growth diagnostics, with explicit error control.

pub mod algq;
pub mod asymptotics;
pub mod bigfloat;
pub mod enumerate;
pub mod gauss;
pub mod kernel;
pub mod nu;
pub mod qanalysis;
pub mod qpoly;
pub mod ratq;
pub mod report;
pub mod roots;
pub mod series;
pub mod steps;
pub mod strip;
pub mod verify;
pub mod xlaurent;

//! Numerical analysis on top of the exact layers: root isolation, free
//! energy and surface density, ratio-method singularity estimates, and
//! height scaling.

pub mod fit;
pub mod heights;
pub mod ratio;
pub mod roots;
pub mod thermo;

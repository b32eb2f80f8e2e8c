//! Toolkit for the spin-adapted (Gelfand-Tsetlin) basis of d-orbital fermionic
//! systems: step-vector combinatorics and dimension formulas, symmetric
//! function identities, Jordan-Wigner operator algebra, explicit
//! Clebsch-Gordan state construction, a statevector simulator for the basis
//! transform circuit, application protocols, and fault-tolerant cost
//! estimates.

pub mod applications;
pub mod circuit;
pub mod combinatorics;
pub mod dense;
pub mod gtstates;
pub mod operators;
pub mod resources;
pub mod symfunc;

//! Library surface of the command-line front end: the shipped reference
//! tables, their regeneration from the computation, and the verification
//! harness binding formulas, oracles and tables together.

pub mod fixtures;
pub mod report;
pub mod tables;
pub mod verify;

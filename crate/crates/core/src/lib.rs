mod cache;
pub mod error;
pub mod partition;
pub mod plane;
pub mod rational;
pub mod tinkertoy;
pub mod simplex;
pub mod polytope;
pub mod oracle;
pub mod honeycomb;
pub mod moebius;
pub mod lift;
pub mod breaking;
pub mod svg;
pub mod cli;

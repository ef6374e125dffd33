//! Exact fusion rules for the N=1 Neveu-Schwarz degenerate minimal models at
//! central charge 3/2, and their comparison with the osp(1|2) Grothendieck ring.

pub mod cli;
pub mod density;
pub mod fusion;
pub mod linalg;
pub mod ns;
pub mod osp;
pub mod scalar;
pub mod singvec;
pub mod zhu;

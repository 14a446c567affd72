pub mod cli;
pub mod endo;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod reference;
pub mod report;
pub mod ring;
pub mod sample;
pub mod scalar;
pub mod solver;
pub mod weil;

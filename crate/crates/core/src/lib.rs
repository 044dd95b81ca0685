pub mod blade;
pub mod check;
pub mod cy;
pub mod dsl;
pub mod error;
pub mod form;
pub mod g2;
pub mod golden;
pub mod linalg;
pub mod octonion;
pub mod sampling;
pub mod scalar;
pub mod spin7;
pub mod subspace;
pub mod suite;
pub mod vector;
pub mod vvf;

pub mod cones;
pub mod degree_box;
pub mod error;
pub mod graded;
pub mod lattice;
pub mod lifting;
pub mod linalg;
pub mod matrix;
pub mod derived;
pub mod klyachko;
pub mod fan;
pub mod io;
pub mod reference;
pub mod checks;

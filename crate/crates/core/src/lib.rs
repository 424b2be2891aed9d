pub mod linalg;
pub mod cli;
pub mod moments;
pub mod poly;
pub mod orbitspace;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod schema;
pub mod sosgram;
pub mod symmetry;

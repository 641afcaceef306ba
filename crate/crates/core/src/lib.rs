pub mod colouring;
pub mod connectivity;
pub mod graph;
pub mod dimacs;
pub mod family;
pub mod solver;
pub mod template;
pub mod construct;
pub mod witness;
pub mod extract;
pub mod certificate;
pub mod text;
pub mod oracle;
pub mod suite;

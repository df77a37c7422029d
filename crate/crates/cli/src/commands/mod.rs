pub mod axioms;
pub mod classify;
pub mod derham;
pub mod dual;
pub mod w1;

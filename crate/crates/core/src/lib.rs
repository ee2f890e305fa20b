pub mod cli;
pub mod engine;
pub mod presentation;
pub mod scalar;
pub mod theory;

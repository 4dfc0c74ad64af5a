pub mod cli;
pub mod fixtures;
pub mod free;
pub mod graphs;
pub mod lifting;
pub mod properads;
pub mod selftest;
pub mod ssets;
pub mod substitution;

pub mod cli;
pub mod commute;
pub mod encoder;
pub mod error;
pub mod fixtures;
pub mod pages;
pub mod planar;
pub mod poly;
pub mod random;
pub mod relations;
pub mod safety;
pub mod search;
pub mod surface;
pub mod word;

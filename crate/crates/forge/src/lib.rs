//! Search and verification harness for Kummer covers of the projective line
//! with many rational points.

pub mod parse;
pub mod refdata;
pub mod search;
pub mod verify;

#![allow(dead_code)]

pub mod calculus;
pub mod oracles;

//! Characteristic ideals of polynomial graphs.

pub mod poly;
pub mod groebner;
pub mod graph;
pub mod pairing;
pub mod charideal;
pub mod explorer;

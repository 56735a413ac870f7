pub mod analyze;
pub mod group;
pub mod hopf;
pub mod selftest;
pub mod sweep;
pub mod unfold;

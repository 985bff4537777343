//! Exact-arithmetic construction and analysis of linear codimension-two webs
//! `W(2n, n, 2)` given by a nonsingular `n x n` matrix `A`.

pub mod abelian;
pub mod agw;
pub mod coframe;
pub mod families;
pub mod forms;
pub mod input;
pub mod parallel;
pub mod ratlin;
pub mod reference;
pub mod report;
pub mod web;

pub use ratlin::{RatMatrix, Rational};
pub use web::{build_web, LinearWeb};

//! Periagroups and their Cayley graphs.
//!
//! A periagroup is given by a finite graph whose vertices carry groups and whose edges carry labels.
//! The crate provides normal forms for its elements, hyperplane geometry of the resulting Cayley
//! graphs (mediangle and quasi-median graphs), Coxeter diagram classification, decision procedures
//! for contracting elements and acylindrical hyperbolicity, and conjugacy growth series.

pub mod cayley;
pub mod cli;
pub mod classify;
pub mod coxeter;
pub mod error;
pub mod graphcore;
pub mod growth;
pub mod presentation;
pub mod words;

pub use error::{Error, Result};

//! JSON file formats and the `tridiag` command-line front end over
//! [`tridiag_core`].

#![allow(clippy::result_large_err)]

pub mod cli;
pub mod json;

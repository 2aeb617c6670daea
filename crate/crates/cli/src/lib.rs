//! Command-line front end for `extkoszul`: expression parsing, command
//! dispatch, JSON reports and the `verify-paper` suite.

pub mod commands;
pub mod parse;
pub mod props;
pub mod report;
pub mod verify;

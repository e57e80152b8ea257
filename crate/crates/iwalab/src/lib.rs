//! File formats, expression parsing and report rendering behind the
//! `iwalab` command-line tool. The mathematics lives in `iwalab-core`.

pub mod commands;
pub mod expr;
pub mod files;

pub use files::InputError;

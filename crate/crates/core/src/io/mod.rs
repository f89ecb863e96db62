//! File formats: TOML inputs (groups, body pairs, families) and
//! deterministic CSV/JSON report writers.

pub mod files;
pub mod reports;

pub use files::{load_bodies_file, load_family_file, load_group_file};
pub use reports::{make_stamp, write_csv, write_json, RunStamp};

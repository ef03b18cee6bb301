use std::fs;
use std::path::PathBuf;

use modref::syntax::{parse_system, ParseOptions};
use modref::system::System;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> System {
    parse_system(&fixture_text(name), ParseOptions { strict: true }).unwrap_or_else(|e| panic!("{name}: {e}")).system
}

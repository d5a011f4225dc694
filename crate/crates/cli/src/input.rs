use std::fs;

use anyhow::{Context, Result};
use imprim_core::constructions::catalog;
use imprim_core::group::{parse_group_file, PermutationGroup};

/// A group from a group file, or from the catalog when written `catalog:NAME`.
pub fn load_group(source: &str) -> Result<PermutationGroup> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return Ok(catalog(name)?);
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    parse_group_file(&text).with_context(|| format!("parsing {source}"))
}

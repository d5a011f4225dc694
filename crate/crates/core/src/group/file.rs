use super::{GroupError, PermutationGroup};
use crate::perm::parse_perm;

/// Parses the group file format: a `degree N` line, then one generator per
/// line in 1-based cycle notation. `#` starts a comment; blank lines are
/// ignored.
pub fn parse_group_file(text: &str) -> Result<PermutationGroup, GroupError> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let value = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .and_then(|v| v.parse::<usize>().ok())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| GroupError::File {
                        line: line_no,
                        message: format!("expected `degree N`, found {line:?}"),
                    })?;
                degree = Some(value);
            }
            Some(n) => {
                let g = parse_perm(line, n).map_err(|e| GroupError::File {
                    line: line_no,
                    message: e.to_string(),
                })?;
                gens.push(g);
            }
        }
    }
    let degree = degree.ok_or(GroupError::File {
        line: 0,
        message: "missing `degree N` line".into(),
    })?;
    PermutationGroup::new(degree, gens)
}

/// Writes a group in the format read by [`parse_group_file`], with optional
/// leading comment lines.
pub fn format_group_file(group: &PermutationGroup, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("degree {}\n", group.degree()));
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

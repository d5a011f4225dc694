use std::collections::BTreeSet;

use anyhow::Result;
use imprim_core::cycletype::{
    i_type_set_with_budget, is_special_m_partition, CertificateSource, ITypeSet, Partition,
};
use imprim_core::perm::parse_perm;
use serde_json::{json, Value};

use crate::report::{or_inconclusive, Report, Subject};
use crate::GlobalArgs;

fn source_name(s: CertificateSource) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn pairs_text(set: &ITypeSet) -> String {
    if set.is_empty() {
        return "none".into();
    }
    set.pairs()
        .iter()
        .map(|(k, m)| format!("({k},{m})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// i-type, witnesses and verdict of `p`, as JSON fields and text lines.
pub fn analyze(
    p: &Partition,
    special_m: Option<usize>,
    node_budget: u64,
) -> Result<(Value, Vec<String>)> {
    let set = i_type_set_with_budget(p, node_budget)?;
    let imprimitive = !set.is_empty();
    let shortcuts: BTreeSet<String> = set.witnesses().map(|w| source_name(w.source)).collect();

    let mut lines = vec![format!("partition {p} of n = {}", p.n())];
    lines.push(format!("i-type: {}", pairs_text(&set)));
    for w in set.witnesses() {
        let ks: Vec<String> = w.multipliers.iter().map(ToString::to_string).collect();
        lines.push(format!(
            "  ({},{}) {} k_i = {} [{}]",
            w.k,
            w.m,
            w.clustering,
            ks.join(","),
            source_name(w.source)
        ));
    }

    let mut result = set.to_json();
    let obj = result
        .as_object_mut()
        .expect("i-type serializes to an object");
    obj.insert("partition".into(), json!(p));
    obj.insert("imprimitive".into(), json!(imprimitive));
    obj.insert("shortcuts".into(), json!(shortcuts));
    obj.insert(
        "clusterings_visited".into(),
        json!(set.clusterings_visited()),
    );

    if let Some(m) = special_m {
        let found = is_special_m_partition(p, m);
        match &found {
            Some(c) => lines.push(format!("special {m}-partition: yes {c}")),
            None => lines.push(format!("special {m}-partition: no")),
        }
        obj.insert(
            "special_m".into(),
            json!({ "m": m, "holds": found.is_some(), "clustering": found }),
        );
    }
    lines.push(format!(
        "verdict: {}",
        if imprimitive {
            "imprimitive"
        } else {
            "primitive"
        }
    ));
    Ok((result, lines))
}

pub fn run_partition(text: &str, special_m: Option<usize>, g: &GlobalArgs) -> Result<Report> {
    let p: Partition = text.parse()?;
    let subject = Subject::Partition {
        text: p.to_string(),
        n: p.n(),
    };
    or_inconclusive("partition", subject.clone(), || {
        let (result, lines) = analyze(&p, special_m, g.budget_nodes)?;
        Ok(Report::new("partition", subject, result, lines))
    })
}

pub fn run_perm(text: &str, degree: usize, g: &GlobalArgs) -> Result<Report> {
    let a = parse_perm(text, degree)?;
    let t = a.cycle_type();
    let subject = Subject::Permutation {
        text: a.to_string(),
        degree,
    };
    or_inconclusive("perm", subject.clone(), || {
        let (mut result, mut lines) = analyze(&t, None, g.budget_nodes)?;
        lines.insert(
            0,
            format!(
                "permutation {a} on {degree} points, order {}, fixed points {}",
                a.order(),
                a.fixed_points()
            ),
        );
        result["cycle_type"] = json!(t);
        result["order"] = json!(a.order());
        Ok(Report::new("perm", subject, result, lines))
    })
}

/// One-line verdict used by the repro outputs.
pub fn verdict_line(p: &Partition, node_budget: u64) -> Result<String> {
    let set = i_type_set_with_budget(p, node_budget)?;
    Ok(format!(
        "{p}: {} i-type {}",
        if set.is_empty() {
            "primitive"
        } else {
            "imprimitive"
        },
        pairs_text(&set)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn coprime_pair_is_primitive() {
        let (result, lines) = analyze(&part(&[7, 4]), None, 1000).unwrap();
        assert_eq!(result["imprimitive"], json!(false));
        assert_eq!(lines.last().unwrap(), "verdict: primitive");
        assert!(lines.contains(&"i-type: none".to_string()));
    }

    #[test]
    fn special_m_reports_its_clustering() {
        let (result, lines) = analyze(&part(&[2, 3, 10]), Some(5), 1000).unwrap();
        assert_eq!(result["special_m"]["holds"], json!(true));
        assert_eq!(result["special_m"]["clustering"], json!([[10], [3, 2]]));
        assert!(lines
            .iter()
            .any(|l| l == "special 5-partition: yes ((10),(3,2))"));
    }

    #[test]
    fn witness_sources_are_reported() {
        let (result, _) = analyze(&part(&[4, 2]), None, 1000).unwrap();
        let shortcuts = result["shortcuts"].as_array().unwrap();
        assert!(!shortcuts.is_empty());
        assert!(result["witnesses"]["3,2"]["source"].is_string());
    }
}

use anyhow::{bail, Result};
use imprim_core::constructions::catalog;
use imprim_core::cycletype::{
    disjoint_itype_certificate, i_type_set, is_m_partition, is_special_m_partition, Partition,
};
use imprim_core::group::is_primitive_group;
use imprim_core::Budgets;
use serde_json::json;
use similar::TextDiff;

use crate::partition::verdict_line;
use crate::report::{yes_no, Outcome, Report, Subject};

struct Example {
    id: &'static str,
    about: &'static str,
    golden: &'static str,
    run: fn() -> Result<String>,
}

const EXAMPLES: [Example; 3] = [
    Example {
        id: "deg16-itypes",
        about: "two cycle types with disjoint i-types in a primitive group of degree 16",
        golden: include_str!("../golden/deg16-itypes.txt"),
        run: deg16_itypes,
    },
    Example {
        id: "pgl211-types",
        about: "cycle types of PGL(2,11) on 66 points, with their cubes and fifth powers",
        golden: include_str!("../golden/pgl211-types.txt"),
        run: pgl211_types,
    },
    Example {
        id: "m-partition-examples",
        about: "worked m-partitions and special m-partitions",
        golden: include_str!("../golden/m-partition-examples.txt"),
        run: m_partition_examples,
    },
];

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).expect("non-empty literal")
}

fn deg16_itypes() -> Result<String> {
    let g = catalog("affine_16_3sq_4")?;
    let spectrum = g.spectrum(Budgets::default().elements)?;
    let types = [part(&[8, 8]), part(&[3, 3, 3, 3, 3, 1])];
    let mut out = format!(
        "group affine_16_3sq_4: degree {}, order {}, primitive {}\n",
        g.degree(),
        g.order(),
        yes_no(is_primitive_group(&g))
    );
    let mut sets = Vec::new();
    for t in &types {
        out += &format!("contains {t}: {}\n", yes_no(spectrum.contains(t)));
    }
    for t in &types {
        out += &verdict_line(t, Budgets::default().nodes)?;
        out.push('\n');
        sets.push(i_type_set(t)?.pairs());
    }
    out += &format!(
        "disjoint i-types: {}\n",
        yes_no(disjoint_itype_certificate(&sets))
    );
    Ok(out)
}

fn pgl211_types() -> Result<String> {
    let mut out = String::new();
    for t in [
        part(&[6, 12, 12, 12, 12, 12]),
        part(&[1, 5, 10, 10, 10, 10, 10, 10]),
    ] {
        out += &format!("{}\n", verdict_line(&t, Budgets::default().nodes)?);
        for (name, e) in [("cube", 3), ("fifth power", 5)] {
            out += &format!(
                "  {name} {}\n",
                verdict_line(&t.power(e), Budgets::default().nodes)?
            );
        }
    }
    Ok(out)
}

fn m_partition_examples() -> Result<String> {
    let mut out = String::new();
    let budget = Budgets::default().nodes;
    let p = part(&[2, 3, 5]);
    let c = is_m_partition(&p, 5).map_or("no".into(), |c| format!("yes {c}"));
    out += &format!("{p} 5-partition: {c}\n  {}\n", verdict_line(&p, budget)?);
    for (v, m) in [
        (&[2, 3, 10][..], 5),
        (&[1, 2, 5, 7, 17, 19, 23, 111][..], 37),
    ] {
        let p = part(v);
        let c = is_special_m_partition(&p, m).map_or("no".into(), |c| format!("yes {c}"));
        out += &format!(
            "{p} special {m}-partition: {c}\n  {}\n",
            verdict_line(&p, budget)?
        );
    }
    for n in 4..=9 {
        out += &format!("{}\n", verdict_line(&part(&[1, 1, n - 2]), budget)?);
    }
    Ok(out)
}

pub fn run(id: Option<&str>) -> Result<Report> {
    let Some(id) = id else {
        let lines: Vec<String> = EXAMPLES
            .iter()
            .map(|e| format!("{:<22} {}", e.id, e.about))
            .collect();
        let ids: Vec<&str> = EXAMPLES.iter().map(|e| e.id).collect();
        return Ok(Report::new(
            "repro",
            Subject::Example { id: "list".into() },
            json!({ "ids": ids }),
            lines,
        ));
    };
    let Some(example) = EXAMPLES.iter().find(|e| e.id == id) else {
        let ids: Vec<&str> = EXAMPLES.iter().map(|e| e.id).collect();
        bail!("unknown example {id:?}; known: {}", ids.join(", "));
    };
    let actual = (example.run)()?;
    let matched = actual == example.golden;
    let diff = TextDiff::from_lines(example.golden, actual.as_str())
        .unified_diff()
        .header("golden", "actual")
        .to_string();
    let mut lines = vec![format!("{} {id}", if matched { "PASS" } else { "FAIL" })];
    lines.extend(actual.lines().map(|l| format!("  {l}")));
    if !matched {
        lines.push(diff.trim_end().to_string());
    }
    let mut report = Report::new(
        "repro",
        Subject::Example { id: id.into() },
        json!({ "id": id, "matched": matched, "actual": actual, "diff": if matched { None } else { Some(diff) } }),
        lines,
    );
    if !matched {
        report.outcome = Outcome::Mismatch;
    }
    Ok(report)
}

use anyhow::Result;
use clap::Subcommand;
use imprim_core::group::{
    classify_hierarchy, has_primitive_element, is_primitive_group, is_primitive_set,
    minimal_block_closure, BlockSystem, Decision, HierarchyReport, PermutationGroup,
};
use imprim_core::perm::Permutation;
use imprim_core::Budgets;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::input::load_group;
use crate::report::{or_inconclusive, yes_no, Outcome, Report, Subject};
use crate::GlobalArgs;

#[derive(Subcommand, Debug)]
pub enum Analysis {
    /// Degree, order and orbits.
    Order,
    /// Transitivity, primitivity and a block system when one exists.
    Primitive,
    /// Whether the group has no primitive elements.
    Np1,
    /// The set of cycle types.
    Spectrum {
        /// Another group to compare with.
        #[arg(long, value_name = "OTHER")]
        compare: Option<String>,
    },
    /// EP/AP/NP levels 1..=K of the primitive-set hierarchy.
    Hierarchy {
        k: usize,
        /// Test N random subsets per level instead of searching exhaustively.
        #[arg(long, value_name = "N")]
        sample: Option<u64>,
    },
}

fn subject(source: &str, g: &PermutationGroup) -> Subject {
    Subject::Group {
        source: source.to_string(),
        degree: g.degree(),
        order: g.order().to_string(),
    }
}

fn cycles(gs: &[Permutation]) -> Vec<String> {
    gs.iter().map(ToString::to_string).collect()
}

/// Blocks as 1-based point lists.
fn one_based(sys: &BlockSystem) -> Vec<Vec<usize>> {
    sys.blocks()
        .iter()
        .map(|b| b.iter().map(|x| x + 1).collect())
        .collect()
}

fn blocks_text(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| {
            let pts: Vec<String> = b.iter().map(ToString::to_string).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A nontrivial block system of a transitive group, if it has one.
fn some_block_system(g: &PermutationGroup) -> Result<Option<BlockSystem>> {
    for b in 1..g.degree() {
        let sys = minimal_block_closure(g, 0, b)?;
        if sys.num_blocks() > 1 {
            return Ok(Some(sys));
        }
    }
    Ok(None)
}

pub fn run(source: &str, analysis: &Analysis, args: &GlobalArgs) -> Result<Report> {
    let g = load_group(source)?;
    let subj = subject(source, &g);
    let budgets = args.budgets();
    let command = "group";
    or_inconclusive(command, subj.clone(), || {
        let (result, lines, outcome, exhaustive) = match analysis {
            Analysis::Order => order(&g),
            Analysis::Primitive => primitive(&g)?,
            Analysis::Np1 => np1(&g, &budgets)?,
            Analysis::Spectrum { compare } => spectrum(&g, compare.as_deref(), &budgets)?,
            Analysis::Hierarchy { k, sample: None } => hierarchy(&g, *k, &budgets)?,
            Analysis::Hierarchy { k, sample: Some(n) } => {
                sampled_hierarchy(&g, *k, *n, args.seed, &budgets)?
            }
        };
        let mut report = Report::new(command, subj, result, lines);
        report.outcome = outcome;
        report.exhaustive = exhaustive;
        Ok(report)
    })
}

type Findings = (Value, Vec<String>, Outcome, bool);

fn order(g: &PermutationGroup) -> Findings {
    let orbits = g.orbits();
    let line = format!(
        "degree {}, order {}, {} orbit{}{}",
        g.degree(),
        g.order(),
        orbits.len(),
        if orbits.len() == 1 { "" } else { "s" },
        if g.is_transitive() {
            ", transitive"
        } else {
            ""
        }
    );
    let result = json!({
        "analysis": "order",
        "degree": g.degree(),
        "order": g.order().to_string(),
        "transitive": g.is_transitive(),
        "orbits": orbits.len(),
        "base": g.base().iter().map(|x| x + 1).collect::<Vec<_>>(),
    });
    (result, vec![line], Outcome::Decided, true)
}

fn primitive(g: &PermutationGroup) -> Result<Findings> {
    let transitive = g.is_transitive();
    let primitive = is_primitive_group(g);
    let blocks = if transitive && !primitive {
        some_block_system(g)?.map(|s| one_based(&s))
    } else {
        None
    };
    let mut lines = vec![format!("transitive: {}", yes_no(transitive))];
    lines.push(match &blocks {
        Some(b) => format!("primitive: no (blocks {})", blocks_text(b)),
        None if !transitive => "primitive: no (not transitive)".into(),
        None => format!("primitive: {}", yes_no(primitive)),
    });
    let result = json!({
        "analysis": "primitive",
        "transitive": transitive,
        "primitive": primitive,
        "block_system": blocks,
    });
    Ok((result, lines, Outcome::Decided, true))
}

fn np1(g: &PermutationGroup, budgets: &Budgets) -> Result<Findings> {
    let classes = g.conjugacy_class_reps(budgets.elements)?.len();
    let witness = has_primitive_element(g, budgets)?;
    let primitive = is_primitive_group(g);
    let mut lines = vec![format!("primitive group: {}", yes_no(primitive))];
    lines.push(match &witness {
        None => format!("NP1: yes (no primitive elements among {classes} class reps)"),
        Some(w) => format!(
            "NP1: no (primitive element {w} of type {} among {classes} class reps)",
            w.cycle_type()
        ),
    });
    let result = json!({
        "analysis": "np1",
        "primitive": primitive,
        "classes": classes,
        "np1": witness.is_none(),
        "witness": witness.as_ref().map(ToString::to_string),
        "witness_type": witness.as_ref().map(Permutation::cycle_type),
    });
    Ok((result, lines, Outcome::Decided, true))
}

fn spectrum(g: &PermutationGroup, other: Option<&str>, budgets: &Budgets) -> Result<Findings> {
    let s = g.spectrum(budgets.elements)?;
    let mut lines = vec![format!("spectrum: {} cycle types", s.len())];
    lines.extend(s.types.iter().map(|t| format!("  {t}")));
    let mut result = json!({
        "analysis": "spectrum",
        "types": s.types,
    });
    if let Some(source) = other {
        let h = load_group(source)?;
        let t = h.spectrum(budgets.elements)?;
        let only_here: Vec<_> = s.difference(&t).cloned().collect();
        let only_there: Vec<_> = t.difference(&s).cloned().collect();
        let equal = s == t;
        if equal {
            lines.push(format!("spectra equal (compared with {source})"));
        } else {
            lines.push(format!("spectra differ (compared with {source})"));
            lines.extend(only_here.iter().map(|p| format!("  only here: {p}")));
            lines.extend(only_there.iter().map(|p| format!("  only there: {p}")));
        }
        result["compare"] = json!({
            "source": source,
            "equal": equal,
            "only_here": only_here,
            "only_there": only_there,
        });
    }
    Ok((result, lines, Outcome::Decided, true))
}

fn decision_text(d: &Decision) -> String {
    let verdict = match d.holds {
        Some(b) => yes_no(b).to_string(),
        None => "unknown".into(),
    };
    let scope = if d.exhaustive {
        "exhaustive"
    } else {
        "budget exhausted"
    };
    let witness = d
        .witness
        .as_ref()
        .map(|w| format!(" {{{}}}", cycles(w).join(", ")))
        .unwrap_or_default();
    format!(
        "{verdict}{witness} [{scope}, {} subsets]",
        d.subsets_examined
    )
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".into(), |k| k.to_string())
}

fn hierarchy(g: &PermutationGroup, k: usize, budgets: &Budgets) -> Result<Findings> {
    let r: HierarchyReport = classify_hierarchy(g, k, budgets)?;
    let mut lines = vec![format!(
        "degree {}, order {}, {} classes",
        r.degree, r.order, r.classes
    )];
    for level in &r.levels {
        lines.push(format!("k = {}: EP {}", level.k, decision_text(&level.ep)));
        lines.push(format!("k = {}: AP {}", level.k, decision_text(&level.ap)));
    }
    lines.push(format!(
        "NP max {}, EP min {}, AP min {}, NEP {}",
        opt(r.np_max),
        opt(r.ep_min),
        opt(r.ap_min),
        opt(r.nep)
    ));
    let decided = r
        .levels
        .iter()
        .all(|l| l.ep.holds.is_some() && l.ap.holds.is_some());
    let mut result = serde_json::to_value(&r)?;
    result["analysis"] = json!("hierarchy");
    result["order"] = json!(r.order.to_string());
    if !decided {
        result["reason"] = json!("a hierarchy level exhausted its subset budget");
    }
    let outcome = if decided {
        Outcome::Decided
    } else {
        Outcome::Inconclusive
    };
    Ok((result, lines, outcome, decided))
}

/// Random k-subsets of non-identity elements; finding a primitive one settles
/// EP k, finding none settles nothing.
fn sampled_hierarchy(
    g: &PermutationGroup,
    k_max: usize,
    samples: u64,
    seed: u64,
    budgets: &Budgets,
) -> Result<Findings> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let order = g.order();
    let mut lines = vec![format!(
        "degree {}, order {}, {samples} random subsets per level (seed {seed}, not exhaustive)",
        g.degree(),
        order
    )];
    let mut levels = Vec::new();
    let mut all_found = true;
    for k in 1..=k_max {
        let mut found = None;
        let mut examined = 0;
        while examined < samples && order > 1 {
            let set: Vec<Permutation> = (0..k)
                .map(|_| loop {
                    let x = g
                        .element_at(rng.gen_range(0..order))
                        .expect("index below order");
                    if !x.is_identity() {
                        break x;
                    }
                })
                .collect();
            examined += 1;
            if is_primitive_set(g.degree(), &set, budgets.nodes)? {
                found = Some(set);
                break;
            }
        }
        all_found &= found.is_some();
        lines.push(match &found {
            Some(w) => format!(
                "k = {k}: EP yes {{{}}} after {examined} samples",
                cycles(w).join(", ")
            ),
            None => format!("k = {k}: no primitive set among {examined} samples"),
        });
        levels.push(json!({
            "k": k,
            "samples": examined,
            "ep": found.is_some(),
            "witness": found.as_deref().map(cycles),
        }));
    }
    let mut result = json!({
        "analysis": "hierarchy_sample",
        "seed": seed,
        "levels": levels,
    });
    if !all_found {
        result["reason"] = json!("sampling found no primitive set at some level");
    }
    let outcome = if all_found {
        Outcome::Decided
    } else {
        Outcome::Inconclusive
    };
    Ok((result, lines, outcome, all_found))
}

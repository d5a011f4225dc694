//! Construction commands. Each prints a group file that `group` can read back.

use anyhow::{bail, Context, Result};
use clap::Subcommand;
use imprim_core::constructions::{
    action_on_k_subsets, affine_group, catalog, catalog_names, diagonal_square, wreath_imprimitive,
    wreath_product_action, FpMatrix,
};
use imprim_core::group::{format_group_file, PermutationGroup};
use imprim_core::Budgets;
use serde_json::json;

use crate::input::load_group;
use crate::report::{Report, Subject};

#[derive(Subcommand, Debug)]
pub enum Build {
    /// H wr K on blocks: point `block * deg(H) + i`.
    WreathImp { h: String, k: String },
    /// H wr K in the product action on deg(H)^deg(K) tuples.
    WreathProd { h: String, k: String },
    /// The action of G on its k-subsets.
    Onsets { g: String, k: usize },
    /// Affine group over F_p^k: matrices `a b/c d,...`, then `;t` to add
    /// all translations.
    Affine { p: usize, k: usize, spec: String },
    /// T x T acting on T by left and right multiplication.
    Diag { t: String },
    /// A named example; omit the name to list them.
    Catalog { name: Option<String> },
}

/// Matrices written row by row, rows split by `/`, entries by spaces;
/// matrices split by `,`. A trailing `;t` adds the translations.
fn parse_affine(p: usize, k: usize, spec: &str) -> Result<(Vec<FpMatrix>, bool)> {
    let (mats, trans) = match spec.split_once(';') {
        Some((m, t)) => (m, t.trim()),
        None => (spec, ""),
    };
    let translations = match trans {
        "" => false,
        "t" | "trans" | "translations" => true,
        other => bail!("expected `t` after `;`, found {other:?}"),
    };
    let mut out = Vec::new();
    for text in mats.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let rows = text
            .split('/')
            .map(|row| {
                row.split_whitespace()
                    .map(|x| x.parse::<i64>().with_context(|| format!("entry {x:?}")))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = FpMatrix::new(p, &rows)?;
        if m.dim() != k {
            bail!("matrix {text:?} is {}x{0}, expected {k}x{k}", m.dim());
        }
        out.push(m);
    }
    Ok((out, translations))
}

fn construct(b: &Build) -> Result<(String, PermutationGroup)> {
    Ok(match b {
        Build::WreathImp { h, k } => (
            format!("wreath-imp {h} {k}"),
            wreath_imprimitive(&load_group(h)?, &load_group(k)?)?,
        ),
        Build::WreathProd { h, k } => (
            format!("wreath-prod {h} {k}"),
            wreath_product_action(&load_group(h)?, &load_group(k)?)?,
        ),
        Build::Onsets { g, k } => (
            format!("onsets {g} {k}"),
            action_on_k_subsets(&load_group(g)?, *k)?.group,
        ),
        Build::Affine { p, k, spec } => {
            let (mats, translations) = parse_affine(*p, *k, spec)?;
            (
                format!("affine {p} {k} {spec}"),
                affine_group(*p, *k, &mats, translations)?,
            )
        }
        Build::Diag { t } => (
            format!("diag {t}"),
            diagonal_square(&load_group(t)?, Budgets::default().elements)?.group,
        ),
        Build::Catalog { name: Some(name) } => (format!("catalog {name}"), catalog(name)?),
        Build::Catalog { name: None } => unreachable!("listing handled by run"),
    })
}

pub fn run(b: &Build) -> Result<Report> {
    if let Build::Catalog { name: None } = b {
        let names = catalog_names();
        return Ok(Report::new(
            "build",
            Subject::Construction {
                recipe: "catalog".into(),
            },
            json!({ "names": names }),
            names.iter().map(ToString::to_string).collect(),
        ));
    }
    let (recipe, g) = construct(b)?;
    let comments = vec![recipe.clone(), format!("order {}", g.order())];
    let text = format_group_file(&g, &comments);
    let generators: Vec<String> = g.generators().iter().map(ToString::to_string).collect();
    Ok(Report::new(
        "build",
        Subject::Construction { recipe },
        json!({
            "degree": g.degree(),
            "order": g.order().to_string(),
            "generators": generators,
            "group_file": text,
        }),
        text.lines().map(str::to_owned).collect(),
    ))
}

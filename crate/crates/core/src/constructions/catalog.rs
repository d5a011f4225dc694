use std::collections::{BTreeMap, HashSet};

use super::actions::{action_on_k_subsets, alternating_group, cyclic_group, symmetric_group};
use super::affine::affine_group;
use super::diagonal::diagonal_square;
use super::fp::{general_linear_group, FpMatrix};
use super::wreath::wreath_product_action;
use super::ConstructionError;
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Number of elements of each order.
pub type ElementOrderProfile = BTreeMap<usize, usize>;

fn profile(elements: &[FpMatrix]) -> ElementOrderProfile {
    let mut out = BTreeMap::new();
    for e in elements {
        *out.entry(e.order().expect("invertible")).or_insert(0) += 1;
    }
    out
}

/// Closure of `gens`, or `None` once it exceeds `limit` elements.
fn bounded_closure(gens: &[FpMatrix], limit: usize) -> Option<Vec<FpMatrix>> {
    let id = FpMatrix::identity(gens[0].p(), gens[0].dim()).expect("prime");
    let mut seen = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = out[i].mul_unchecked(g);
            if seen.insert(y.clone()) {
                if out.len() == limit {
                    return None;
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Some(out)
}

/// No line of F_p^2 is fixed by every generator.
fn is_irreducible_plane(gens: &[FpMatrix]) -> bool {
    let p = gens[0].p();
    let lines = std::iter::once(vec![1, 0]).chain((0..p).map(|c| vec![c, 1]));
    lines.into_iter().all(|v| {
        !gens.iter().all(|g| {
            let w = g.apply(&v);
            // w is a multiple of v
            (w[0] * v[1] + p * p - w[1] * v[0]).is_multiple_of(p)
        })
    })
}

/// First pair `(a, b)`, in the entry order of GL(k, p) with `a` before `b`,
/// generating a group of exactly `order` elements that `accept` takes.
pub fn search_matrix_subgroup(
    p: usize,
    k: usize,
    order: usize,
    accept: impl Fn(&[FpMatrix], &[FpMatrix]) -> bool,
) -> Result<Vec<FpMatrix>, ConstructionError> {
    let gl = general_linear_group(p, k)?;
    let candidates: Vec<&FpMatrix> = gl
        .iter()
        .filter(|a| order.is_multiple_of(a.order().expect("invertible")))
        .collect();
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i + 1..] {
            let gens = [(*a).clone(), (*b).clone()];
            if let Some(elements) = bounded_closure(&gens, order) {
                if elements.len() == order && accept(&gens, &elements) {
                    return Ok(gens.to_vec());
                }
            }
        }
    }
    Err(ConstructionError::NotFound)
}

/// First `x` in the entry order of GL(k, p) such that `base` and `x` generate
/// a group of exactly `order` elements that `accept` takes.
fn search_matrix_extension(
    base: &[FpMatrix],
    order: usize,
    accept: impl Fn(&[FpMatrix]) -> bool,
) -> Result<FpMatrix, ConstructionError> {
    for x in general_linear_group(base[0].p(), base[0].dim())? {
        let mut gens = base.to_vec();
        gens.push(x.clone());
        if let Some(elements) = bounded_closure(&gens, order) {
            if elements.len() == order && accept(&elements) {
                return Ok(x);
            }
        }
    }
    Err(ConstructionError::NotFound)
}

fn profile_of(pairs: &[(usize, usize)]) -> ElementOrderProfile {
    pairs.iter().copied().collect()
}

/// Order-8 subgroup of GL(2,3) with a single involution: the quaternion group.
fn search_q8_gl23() -> Result<Vec<FpMatrix>, ConstructionError> {
    let q8 = profile_of(&[(1, 1), (2, 1), (4, 6)]);
    search_matrix_subgroup(3, 2, 8, |_, e| profile(e) == q8)
}

/// Irreducible dihedral subgroup of order 8 in GL(2,5).
fn search_d8_gl25() -> Result<Vec<FpMatrix>, ConstructionError> {
    let d8 = profile_of(&[(1, 1), (2, 5), (4, 2)]);
    search_matrix_subgroup(5, 2, 8, |g, e| profile(e) == d8 && is_irreducible_plane(g))
}

/// The dihedral group above extended to order 16 without elements of order 8.
fn search_d8_ext_gl25(d8: &[FpMatrix]) -> Result<Vec<FpMatrix>, ConstructionError> {
    let x = search_matrix_extension(d8, 16, |e| {
        e.iter().all(|g| 4 % g.order().expect("invertible") == 0)
    })?;
    let mut gens = d8.to_vec();
    gens.push(x);
    Ok(gens)
}

/// Irreducible subgroup of GL(2,5) with the element orders of SL(2,3).
fn search_sl23_gl25() -> Result<Vec<FpMatrix>, ConstructionError> {
    let sl23 = profile_of(&[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]);
    search_matrix_subgroup(5, 2, 24, |g, e| {
        profile(e) == sl23 && is_irreducible_plane(g)
    })
}

/// Irreducible subgroup of GL(2,5) with the element orders of the dicyclic
/// group of order 12.
fn search_q12_gl25() -> Result<Vec<FpMatrix>, ConstructionError> {
    let q12 = profile_of(&[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]);
    search_matrix_subgroup(5, 2, 12, |g, e| {
        profile(e) == q12 && is_irreducible_plane(g)
    })
}

// Results of the searches above, frozen; the tests rerun them.
const Q8_GL23: [[i64; 4]; 2] = [[0, 1, 2, 0], [1, 1, 1, 2]];
const D8_GL25: [[i64; 4]; 2] = [[0, 1, 1, 0], [0, 1, 4, 0]];
const D8_EXT_GL25: [[i64; 4]; 3] = [[0, 1, 1, 0], [0, 1, 4, 0], [0, 2, 2, 0]];
const SL23_GL25: [[i64; 4]; 2] = [[0, 1, 4, 0], [1, 1, 2, 3]];
const Q12_GL25: [[i64; 4]; 2] = [[0, 1, 4, 0], [0, 2, 2, 1]];

/// A frozen generator list next to a fresh run of the search that produced it.
#[derive(Clone, Debug)]
pub struct Regenerated {
    pub name: &'static str,
    pub frozen: Vec<FpMatrix>,
    pub found: Vec<FpMatrix>,
}

impl Regenerated {
    pub fn matches(&self) -> bool {
        self.frozen == self.found
    }
}

/// Reruns every matrix subgroup search behind the catalog.
pub fn regenerate_catalog_matrices() -> Result<Vec<Regenerated>, ConstructionError> {
    let d8 = search_d8_gl25()?;
    Ok(vec![
        Regenerated {
            name: "q8_gl23",
            frozen: frozen(3, &Q8_GL23),
            found: search_q8_gl23()?,
        },
        Regenerated {
            name: "d8_gl25",
            frozen: frozen(5, &D8_GL25),
            found: d8.clone(),
        },
        Regenerated {
            name: "d8_ext_gl25",
            frozen: frozen(5, &D8_EXT_GL25),
            found: search_d8_ext_gl25(&d8)?,
        },
        Regenerated {
            name: "sl23_gl25",
            frozen: frozen(5, &SL23_GL25),
            found: search_sl23_gl25()?,
        },
        Regenerated {
            name: "q12_gl25",
            frozen: frozen(5, &Q12_GL25),
            found: search_q12_gl25()?,
        },
    ])
}

fn frozen(p: usize, rows: &[[i64; 4]]) -> Vec<FpMatrix> {
    rows.iter()
        .map(|e| FpMatrix::new(p, &[vec![e[0], e[1]], vec![e[2], e[3]]]).expect("frozen matrix"))
        .collect()
}

/// `A_4 × A_4` in the product action on 16 points, extended by the coordinate
/// swap composed with a transposition in the first coordinate.
fn affine_16() -> Result<PermutationGroup, ConstructionError> {
    let a4 = alternating_group(4);
    let base = super::wreath::product_action_base_group(&a4, 2)?;
    let swap_t = Permutation::from_images_unchecked(
        (0..16)
            .map(|i| {
                let (x0, x1) = (i / 4, i % 4);
                let x0 = [1, 0, 2, 3][x0];
                x0 * 4 + x1
            })
            .collect(),
    );
    let swap = Permutation::from_images_unchecked((0..16).map(|i| (i % 4) * 4 + i / 4).collect());
    let mut gens = base.generators().to_vec();
    gens.push(&swap_t * &swap);
    Ok(PermutationGroup::new(16, gens)?)
}

const NAMES: [&str; 13] = [
    "a6_on_pairs",
    "s3_wr_c2_product",
    "s3_wr_klein_product",
    "qr_agl15_wr_s2",
    "dp_wr_c4_p3",
    "diag_a5",
    "affine_9_q8",
    "affine_9_c4",
    "affine_16_3sq_4",
    "affine_25_d8",
    "affine_25_d8_ext",
    "affine_25_sl23",
    "affine_25_q12",
];

pub fn catalog_names() -> &'static [&'static str] {
    &NAMES
}

pub fn catalog(name: &str) -> Result<PermutationGroup, ConstructionError> {
    let m = |p: usize, a: i64| FpMatrix::new(p, &[vec![a]]);
    Ok(match name {
        "a6_on_pairs" => action_on_k_subsets(&alternating_group(6), 2)?.group,
        "s3_wr_c2_product" => wreath_product_action(&symmetric_group(3), &cyclic_group(2))?,
        // the Klein four-group acting regularly: transitive, no transitive cyclic subgroup
        "s3_wr_klein_product" => {
            let klein = PermutationGroup::new(
                4,
                vec![
                    Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                    Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
                ],
            )?;
            wreath_product_action(&symmetric_group(3), &klein)?
        }
        // x -> a x + b with a a nonzero square mod 5
        "qr_agl15_wr_s2" => {
            wreath_product_action(&affine_group(5, 1, &[m(5, 4)?], true)?, &symmetric_group(2))?
        }
        // x -> ±x + b, wreathed with a 4-cycle
        "dp_wr_c4_p3" => {
            wreath_product_action(&affine_group(3, 1, &[m(3, 2)?], true)?, &cyclic_group(4))?
        }
        "diag_a5" => {
            let a5 = PermutationGroup::new(
                5,
                vec![
                    Permutation::from_cycles(5, &[vec![0, 1, 2]])?,
                    Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]])?,
                ],
            )?;
            diagonal_square(&a5, 1000)?.group
        }
        "affine_9_q8" => affine_group(3, 2, &frozen(3, &Q8_GL23), true)?,
        "affine_9_c4" => affine_group(3, 2, &frozen(3, &Q8_GL23[..1]), true)?,
        "affine_16_3sq_4" => affine_16()?,
        "affine_25_d8" => affine_group(5, 2, &frozen(5, &D8_GL25), true)?,
        "affine_25_d8_ext" => affine_group(5, 2, &frozen(5, &D8_EXT_GL25), true)?,
        "affine_25_sl23" => affine_group(5, 2, &frozen(5, &SL23_GL25), true)?,
        "affine_25_q12" => affine_group(5, 2, &frozen(5, &Q12_GL25), true)?,
        _ => return Err(ConstructionError::UnknownCatalogEntry(name.to_string())),
    })
}

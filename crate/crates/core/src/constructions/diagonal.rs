use super::{check_degree, ConstructionError};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// `T × T` acting on the elements of `T`.
#[derive(Clone, Debug)]
pub struct DiagonalSquare {
    pub group: PermutationGroup,
    /// Generators of the left copy, `x ↦ t⁻¹ x`.
    pub left: Vec<Permutation>,
    /// Generators of the right copy, `x ↦ x t`.
    pub right: Vec<Permutation>,
    /// `T` is nonabelian and simple.
    pub hypothesis_holds: bool,
}

fn is_nonabelian_simple(
    t: &PermutationGroup,
    element_budget: u64,
) -> Result<bool, ConstructionError> {
    let gens = t.generators();
    let abelian = gens.iter().all(|a| gens.iter().all(|b| a * b == b * a));
    if abelian {
        return Ok(false);
    }
    // every nontrivial class generates the whole group
    let data = t.class_data(element_budget)?;
    let order = t.order();
    for class in data.classes.iter().skip(1) {
        let members: Vec<Permutation> = data
            .class_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == data.class_of[class.rep_index])
            .map(|(i, _)| data.elements[i].clone())
            .collect();
        if t.subgroup(members)?.order() != order {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points are the elements of `T` in enumeration order. The result has order
/// `|T|²` when `T` has trivial center.
pub fn diagonal_square(
    t: &PermutationGroup,
    element_budget: u64,
) -> Result<DiagonalSquare, ConstructionError> {
    let elements: Vec<Permutation> = t.elements(element_budget)?.collect();
    let n = check_degree(Some(elements.len()))?;
    let index = |g: &Permutation| t.element_index(g).expect("product of members") as usize;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for s in t.generators() {
        let s_inv = s.inverse();
        left.push(Permutation::from_images_unchecked(
            elements.iter().map(|x| index(&(&s_inv * x))).collect(),
        ));
        right.push(Permutation::from_images_unchecked(
            elements.iter().map(|x| index(&(x * s))).collect(),
        ));
    }
    let gens = left.iter().chain(&right).cloned().collect();
    Ok(DiagonalSquare {
        group: PermutationGroup::new(n, gens)?,
        left,
        right,
        hypothesis_holds: is_nonabelian_simple(t, element_budget)?,
    })
}

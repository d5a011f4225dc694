use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{GroupError, PermutationGroup};
use crate::cycletype::{is_imprimitive_cycle_type_with_budget, Partition};
use crate::perm::Permutation;
use crate::Budgets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// First member in enumeration order.
    pub rep: Permutation,
    pub rep_index: usize,
    pub size: usize,
}

/// All elements of a group with their conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub elements: Vec<Permutation>,
    /// Class id of each element; ids follow the order of the representatives.
    pub class_of: Vec<usize>,
    pub classes: Vec<ConjugacyClass>,
}

/// The set of cycle types occurring in a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub degree: usize,
    pub types: BTreeSet<Partition>,
}

impl Spectrum {
    pub fn contains(&self, p: &Partition) -> bool {
        self.types.contains(p)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    /// Types in `self` but not in `other`.
    pub fn difference<'a>(&'a self, other: &'a Spectrum) -> impl Iterator<Item = &'a Partition> {
        self.types.difference(&other.types)
    }
}

impl PermutationGroup {
    /// Enumerates the group and splits it into conjugacy classes by closing
    /// each element under conjugation by the generators.
    pub fn class_data(&self, element_budget: u64) -> Result<ClassData, GroupError> {
        let elements: Vec<Permutation> = self.elements(element_budget)?.collect();
        let chain = self.chain();
        let gens: Vec<(Permutation, Permutation)> = self
            .generators()
            .iter()
            .map(|s| (s.inverse(), s.clone()))
            .collect();
        let unassigned = usize::MAX;
        let mut class_of = vec![unassigned; elements.len()];
        let mut classes = Vec::new();
        for i in 0..elements.len() {
            if class_of[i] != unassigned {
                continue;
            }
            let id = classes.len();
            class_of[i] = id;
            let mut queue = vec![i];
            let mut size = 0;
            while let Some(j) = queue.pop() {
                size += 1;
                for (s_inv, s) in &gens {
                    let c = &(s_inv * &elements[j]) * s;
                    let k = chain.rank(&c).expect("conjugate is a member") as usize;
                    if class_of[k] == unassigned {
                        class_of[k] = id;
                        queue.push(k);
                    }
                }
            }
            classes.push(ConjugacyClass {
                rep: elements[i].clone(),
                rep_index: i,
                size,
            });
        }
        Ok(ClassData {
            elements,
            class_of,
            classes,
        })
    }

    /// Class representatives with class sizes.
    pub fn conjugacy_class_reps(
        &self,
        element_budget: u64,
    ) -> Result<Vec<(Permutation, usize)>, GroupError> {
        Ok(self
            .class_data(element_budget)?
            .classes
            .into_iter()
            .map(|c| (c.rep, c.size))
            .collect())
    }

    /// Cycle types of the class representatives.
    pub fn spectrum(&self, element_budget: u64) -> Result<Spectrum, GroupError> {
        let types = self
            .conjugacy_class_reps(element_budget)?
            .iter()
            .map(|(g, _)| g.cycle_type())
            .collect();
        Ok(Spectrum {
            degree: self.degree(),
            types,
        })
    }

    /// Cycle types over every element, without class computation.
    pub fn spectrum_by_elements(&self, element_budget: u64) -> Result<Spectrum, GroupError> {
        let types = self
            .elements(element_budget)?
            .map(|g| g.cycle_type())
            .collect();
        Ok(Spectrum {
            degree: self.degree(),
            types,
        })
    }
}

/// A class representative whose cycle type has empty i-type, if any. `None`
/// means every element is imprimitive.
pub fn has_primitive_element(
    group: &PermutationGroup,
    budgets: &Budgets,
) -> Result<Option<Permutation>, GroupError> {
    let mut verdicts: BTreeMap<Partition, bool> = BTreeMap::new();
    for (rep, _) in group.conjugacy_class_reps(budgets.elements)? {
        let t = rep.cycle_type();
        let imprimitive = match verdicts.get(&t) {
            Some(&v) => v,
            None => {
                let v = is_imprimitive_cycle_type_with_budget(&t, budgets.nodes)?;
                verdicts.insert(t, v);
                v
            }
        };
        if !imprimitive {
            return Ok(Some(rep));
        }
    }
    Ok(None)
}

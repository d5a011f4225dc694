use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::fp::FpMatrix;
use super::{check_degree, ConstructionError};
use crate::group::{has_primitive_element, PermutationGroup};
use crate::perm::Permutation;
use crate::Budgets;

/// Number of the vector `x` of F_p^k: `Σ x_i p^(k-1-i)`.
pub fn point_index(p: usize, x: &[usize]) -> usize {
    x.iter().fold(0, |acc, &c| acc * p + c)
}

pub fn point_vector(p: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut x = vec![0; k];
    for i in (0..k).rev() {
        x[i] = index % p;
        index /= p;
    }
    x
}

/// `x ↦ A x + e`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AffineMap {
    matrix: FpMatrix,
    translation: Vec<usize>,
}

impl AffineMap {
    pub fn new(matrix: FpMatrix, translation: Vec<i64>) -> Result<Self, ConstructionError> {
        if translation.len() != matrix.dim() {
            return Err(ConstructionError::Shape(format!(
                "translation of length {} for dimension {}",
                translation.len(),
                matrix.dim()
            )));
        }
        if !matrix.is_invertible() {
            return Err(ConstructionError::Singular(matrix.to_string()));
        }
        let p = matrix.p() as i64;
        let translation = translation
            .into_iter()
            .map(|c| c.rem_euclid(p) as usize)
            .collect();
        Ok(AffineMap {
            matrix,
            translation,
        })
    }

    pub fn linear(matrix: FpMatrix) -> Result<Self, ConstructionError> {
        let k = matrix.dim();
        AffineMap::new(matrix, vec![0; k])
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[usize] {
        &self.translation
    }

    pub fn is_linear(&self) -> bool {
        self.translation.iter().all(|&c| c == 0)
    }

    pub fn apply(&self, x: &[usize]) -> Vec<usize> {
        let p = self.matrix.p();
        self.matrix
            .apply(x)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| (a + b) % p)
            .collect()
    }

    /// The map as a permutation of the `p^k` points.
    pub fn to_permutation(&self) -> Result<Permutation, ConstructionError> {
        let (p, k) = (self.matrix.p(), self.matrix.dim());
        let n = check_degree(p.checked_pow(k as u32))?;
        let images = (0..n)
            .map(|i| point_index(p, &self.apply(&point_vector(p, k, i))))
            .collect();
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Recovers the affine map realized by a permutation of the `p^k` points.
    pub fn from_permutation(
        p: usize,
        k: usize,
        g: &Permutation,
    ) -> Result<Self, ConstructionError> {
        let n = check_degree(p.checked_pow(k as u32))?;
        if g.degree() != n {
            return Err(ConstructionError::NotAffine { p, k });
        }
        let translation = point_vector(p, k, g.image(0));
        let mut entries = vec![0; k * k];
        for j in 0..k {
            let mut e = vec![0; k];
            e[j] = 1;
            let col = point_vector(p, k, g.image(point_index(p, &e)));
            for i in 0..k {
                entries[i * k + j] = (col[i] + p - translation[i]) % p;
            }
        }
        let matrix = FpMatrix::from_entries(p, k, entries);
        if !matrix.is_invertible() {
            return Err(ConstructionError::NotAffine { p, k });
        }
        let map = AffineMap {
            matrix,
            translation,
        };
        let realized =
            (0..n).all(|i| point_index(p, &map.apply(&point_vector(p, k, i))) == g.image(i));
        if realized {
            Ok(map)
        } else {
            Err(ConstructionError::NotAffine { p, k })
        }
    }

    /// For a monomial linear part, `(Ax)_i = d_i x_{π(i)}`: returns `π` and the
    /// product of the `d_i`.
    fn monomial_pattern(&self) -> Option<(Vec<usize>, usize)> {
        let (p, k) = (self.matrix.p(), self.matrix.dim());
        let mut pattern = Vec::with_capacity(k);
        let mut det = 1;
        for i in 0..k {
            let nonzero: Vec<usize> = (0..k).filter(|&j| self.matrix.get(i, j) != 0).collect();
            if nonzero.len() != 1 {
                return None;
            }
            pattern.push(nonzero[0]);
            det = det * self.matrix.get(i, nonzero[0]) % p;
        }
        Some((pattern, det))
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {:?} x + {:?}", self.matrix, self.translation)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> [{}] x + {:?}", self.matrix, self.translation)
    }
}

/// The group of affine maps of F_p^k generated by `x ↦ Ax` for the given
/// matrices, plus the translations `x ↦ x + e_i` when requested.
pub fn affine_group(
    p: usize,
    k: usize,
    matrices: &[FpMatrix],
    include_translations: bool,
) -> Result<PermutationGroup, ConstructionError> {
    let id = FpMatrix::identity(p, k)?;
    let n = check_degree(p.checked_pow(k as u32))?;
    let mut gens = Vec::new();
    for a in matrices {
        if a.p() != p || a.dim() != k {
            return Err(ConstructionError::Shape(format!(
                "matrix {a} is not {k}x{k} over F_{p}"
            )));
        }
        gens.push(AffineMap::linear(a.clone())?.to_permutation()?);
    }
    if include_translations {
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            gens.push(AffineMap::new(id.clone(), e)?.to_permutation()?);
        }
    }
    Ok(PermutationGroup::new(n, gens)?)
}

/// An affine map is imprimitive iff the characteristic polynomial of its
/// linear part is reducible. Dimensions up to 8.
pub fn affine_element_is_imprimitive(g: &AffineMap) -> Result<bool, ConstructionError> {
    g.matrix.char_poly()?.is_reducible()
}

/// Outcome of checking a subgroup of `AGL(1,p) ≀ C_q` (as affine maps of
/// F_p^q) against the q-th power criterion.
#[derive(Clone, Debug, Serialize)]
pub struct ConverseReport {
    pub p: usize,
    pub q: usize,
    /// Every linear element permuting the coordinates as a q-cycle has the
    /// product of its diagonal entries in the set of nonzero q-th powers.
    pub criterion_holds: bool,
    /// A linear q-cycle element whose diagonal product is not a q-th power.
    pub criterion_witness: Option<String>,
    /// No class representative has a primitive cycle type.
    pub every_element_imprimitive: bool,
    pub primitive_witness: Option<String>,
    /// The equivalence is only established for q = 2 and q = 3.
    pub experimental: bool,
}

impl ConverseReport {
    pub fn agrees(&self) -> bool {
        self.criterion_holds == self.every_element_imprimitive
    }
}

/// Evaluates both sides of the q-th power criterion for a group of affine
/// maps of F_p^q whose linear parts are monomial.
pub fn agl_wreath_converse_check(
    group: &PermutationGroup,
    p: usize,
    q: usize,
    budgets: &Budgets,
) -> Result<ConverseReport, ConstructionError> {
    let powers: BTreeSet<usize> = (1..p)
        .map(|t| (0..q).fold(1, |acc, _| acc * t % p))
        .collect();
    let mut criterion_witness = None;
    for g in group.elements(budgets.elements)? {
        let map = AffineMap::from_permutation(p, q, &g)?;
        let (pattern, det) = map
            .monomial_pattern()
            .ok_or_else(|| ConstructionError::NotMonomial(map.to_string()))?;
        if criterion_witness.is_some() || !map.is_linear() {
            continue;
        }
        if is_single_cycle(&pattern) && !powers.contains(&det) {
            criterion_witness = Some(map.to_string());
        }
    }
    let primitive = has_primitive_element(group, budgets)?;
    Ok(ConverseReport {
        p,
        q,
        criterion_holds: criterion_witness.is_none(),
        criterion_witness,
        every_element_imprimitive: primitive.is_none(),
        primitive_witness: primitive.map(|g| g.to_string()),
        experimental: !(q == 2 || q == 3),
    })
}

fn is_single_cycle(pattern: &[usize]) -> bool {
    let k = pattern.len();
    let mut x = 0;
    for step in 1..=k {
        x = pattern[x];
        if x == 0 {
            return step == k;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycletype::is_imprimitive_cycle_type;

    fn m(p: usize, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::new(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn indexing_round_trip() {
        for i in 0..125 {
            assert_eq!(point_index(5, &point_vector(5, 3, i)), i);
        }
        assert_eq!(point_vector(3, 2, 5), vec![1, 2]);
    }

    #[test]
    fn agl1_orders() {
        assert_eq!(
            affine_group(5, 1, &[m(5, &[&[2]])], true).unwrap().order(),
            20
        );
        assert_eq!(
            affine_group(5, 1, &[m(5, &[&[4]])], true).unwrap().order(),
            10
        );
        assert_eq!(
            affine_group(3, 1, &[m(3, &[&[2]])], true).unwrap().order(),
            6
        );
        assert_eq!(affine_group(3, 2, &[], true).unwrap().order(), 9);
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            affine_group(3, 2, &[m(3, &[&[1, 1], &[1, 1]])], false),
            Err(ConstructionError::Singular(_))
        ));
    }

    #[test]
    fn decode_round_trip() {
        let g = AffineMap::new(m(7, &[&[1, 2], &[3, 5]]), vec![4, 6]).unwrap();
        let perm = g.to_permutation().unwrap();
        assert_eq!(AffineMap::from_permutation(7, 2, &perm).unwrap(), g);
        let not_affine = Permutation::from_cycles(49, &[vec![0, 1]]).unwrap();
        assert!(AffineMap::from_permutation(7, 2, &not_affine).is_err());
    }

    #[test]
    fn translations_are_imprimitive() {
        let t = AffineMap::new(FpMatrix::identity(5, 2).unwrap(), vec![1, 3]).unwrap();
        assert!(affine_element_is_imprimitive(&t).unwrap());
        let ct = t.to_permutation().unwrap().cycle_type();
        assert!(is_imprimitive_cycle_type(&ct).unwrap());
    }

    #[test]
    fn weighted_shift_by_residue_class() {
        // det(D) = 1 * d; squares mod 7 are {1, 2, 4}
        let s = FpMatrix::left_shift(7, 2).unwrap();
        for d in 1..7i64 {
            let a = FpMatrix::diagonal(7, &[1, d]).unwrap().mul(&s).unwrap();
            let g = AffineMap::linear(a).unwrap();
            let residue = [1, 2, 4].contains(&d);
            assert_eq!(
                affine_element_is_imprimitive(&g).unwrap(),
                residue,
                "d = {d}"
            );
            let ct = g.to_permutation().unwrap().cycle_type();
            assert_eq!(
                is_imprimitive_cycle_type(&ct).unwrap(),
                residue,
                "d = {d}, type {ct}"
            );
        }
    }

    #[test]
    fn lemma_agrees_with_cycle_types_on_gl23() {
        for a in super::super::general_linear_group(3, 2).unwrap() {
            for e in 0..9 {
                let g = AffineMap::new(
                    a.clone(),
                    point_vector(3, 2, e).iter().map(|&c| c as i64).collect(),
                )
                .unwrap();
                let ct = g.to_permutation().unwrap().cycle_type();
                assert_eq!(
                    affine_element_is_imprimitive(&g).unwrap(),
                    is_imprimitive_cycle_type(&ct).unwrap(),
                    "{g}"
                );
            }
        }
    }

    #[test]
    fn converse_on_full_wreath() {
        // AGL(1,5) wr C_2 contains x -> (2 x_1, x_0), diagonal product 2, a non-square
        let agl = affine_group(5, 1, &[m(5, &[&[2]])], true).unwrap();
        let c2 =
            PermutationGroup::new(2, vec![Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()])
                .unwrap();
        let g = super::super::wreath_product_action(&agl, &c2).unwrap();
        let r = agl_wreath_converse_check(&g, 5, 2, &Budgets::default()).unwrap();
        assert!(!r.criterion_holds);
        assert!(!r.every_element_imprimitive);
        assert!(r.agrees() && !r.experimental);
    }

    #[test]
    fn single_cycle_patterns() {
        assert!(is_single_cycle(&[1, 2, 0]));
        assert!(!is_single_cycle(&[1, 0, 2]));
        assert!(!is_single_cycle(&[0, 1]));
        assert!(is_single_cycle(&[0]));
    }
}

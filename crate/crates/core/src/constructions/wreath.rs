use super::{check_degree, ConstructionError};
use crate::group::{is_primitive_group, orbits_of, PermutationGroup};
use crate::perm::Permutation;

/// `H ≀ K` acting on `b` blocks of size `a`: point `block * a + i`.
pub fn wreath_imprimitive(
    h: &PermutationGroup,
    k: &PermutationGroup,
) -> Result<PermutationGroup, ConstructionError> {
    let (a, b) = (h.degree(), k.degree());
    let n = check_degree(a.checked_mul(b))?;
    let mut gens = Vec::new();
    for block in 0..b {
        for g in h.generators() {
            let mut images: Vec<usize> = (0..n).collect();
            for i in 0..a {
                images[block * a + i] = block * a + g.image(i);
            }
            gens.push(Permutation::from_images_unchecked(images));
        }
    }
    for s in k.generators() {
        let images = (0..n).map(|x| s.image(x / a) * a + x % a).collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    Ok(PermutationGroup::new(n, gens)?)
}

fn tuple_of(m: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut x = vec![0; k];
    for i in (0..k).rev() {
        x[i] = index % m;
        index /= m;
    }
    x
}

fn index_of(m: usize, x: &[usize]) -> usize {
    x.iter().fold(0, |acc, &c| acc * m + c)
}

/// `H` acting in coordinate `coord` of `m^k` tuples.
fn coordinate_action(m: usize, k: usize, coord: usize, g: &Permutation) -> Permutation {
    let n = m.pow(k as u32);
    let images = (0..n)
        .map(|i| {
            let mut x = tuple_of(m, k, i);
            x[coord] = g.image(x[coord]);
            index_of(m, &x)
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `H ≀ K` in the product action on `m^k` tuples, numbered row-major.
///
/// `H` acts in the first coordinate of each orbit of `K` (just coordinate 0
/// when `K` is transitive); `σ ∈ K` sends `x` to `y` with `y_σ(i) = x_i`.
pub fn wreath_product_action(
    h: &PermutationGroup,
    k: &PermutationGroup,
) -> Result<PermutationGroup, ConstructionError> {
    let (m, kk) = (h.degree(), k.degree());
    let n = check_degree(m.checked_pow(kk as u32))?;
    let mut gens = Vec::new();
    for orbit in orbits_of(kk, k.generators()) {
        for g in h.generators() {
            gens.push(coordinate_action(m, kk, orbit[0], g));
        }
    }
    for s in k.generators() {
        let images = (0..n)
            .map(|i| {
                let x = tuple_of(m, kk, i);
                let mut y = vec![0; kk];
                for (c, &v) in x.iter().enumerate() {
                    y[s.image(c)] = v;
                }
                index_of(m, &y)
            })
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    Ok(PermutationGroup::new(n, gens)?)
}

/// The base group `H^k` inside the product action: `H` in every coordinate.
pub fn product_action_base_group(
    h: &PermutationGroup,
    k: usize,
) -> Result<PermutationGroup, ConstructionError> {
    let m = h.degree();
    let n = check_degree(m.checked_pow(k as u32))?;
    let gens = (0..k)
        .flat_map(|c| {
            h.generators()
                .iter()
                .map(move |g| coordinate_action(m, k, c, g))
        })
        .collect();
    Ok(PermutationGroup::new(n, gens)?)
}

/// Textbook prediction for the product action: primitive iff `H` is
/// primitive and not cyclic of prime order, and `K` is transitive. With a
/// single coordinate the action is `H` itself.
pub fn product_action_predicted_primitive(h: &PermutationGroup, k: &PermutationGroup) -> bool {
    if k.degree() == 1 {
        return is_primitive_group(h);
    }
    let prime_cyclic = crate::arith::is_prime(h.order() as usize);
    is_primitive_group(h) && !prime_cyclic && k.is_transitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, symmetric_group};
    use crate::group::minimal_block_closure;

    #[test]
    fn s3_wr_s2_imprimitive() {
        let s3 = symmetric_group(3);
        let g = wreath_imprimitive(&s3, &symmetric_group(2)).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), 72);
        assert!(!is_primitive_group(&g));
        let blocks = minimal_block_closure(&g, 0, 1).unwrap();
        assert_eq!(blocks.blocks(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn trivial_h_gives_k() {
        let k = cyclic_group(4);
        let g = wreath_imprimitive(&symmetric_group(1), &k).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn product_action_orders() {
        let s3 = symmetric_group(3);
        let g = wreath_product_action(&s3, &cyclic_group(2)).unwrap();
        assert_eq!((g.degree(), g.order()), (9, 72));
        assert!(is_primitive_group(&g));
        assert!(product_action_predicted_primitive(&s3, &cyclic_group(2)));

        let c2 = cyclic_group(2);
        let g = wreath_product_action(&c2, &symmetric_group(1)).unwrap();
        assert_eq!((g.degree(), g.order()), (2, 2));

        // intransitive K still yields the full wreath product
        let k = PermutationGroup::new(3, vec![Permutation::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        let g = wreath_product_action(&s3, &k).unwrap();
        assert_eq!(g.order(), 6u128.pow(3) * 2);
        assert!(!is_primitive_group(&g));
        assert!(!product_action_predicted_primitive(&s3, &k));
    }

    #[test]
    fn prime_cyclic_factor_is_imprimitive() {
        let c3 = cyclic_group(3);
        let g = wreath_product_action(&c3, &cyclic_group(2)).unwrap();
        assert!(!is_primitive_group(&g));
        assert!(!product_action_predicted_primitive(&c3, &cyclic_group(2)));
    }

    #[test]
    fn base_group() {
        let g = product_action_base_group(&symmetric_group(3), 2).unwrap();
        assert_eq!(g.order(), 36);
        assert!(!is_primitive_group(&g));
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            wreath_product_action(&symmetric_group(10), &cyclic_group(6)),
            Err(ConstructionError::DegreeCap { .. })
        ));
    }
}

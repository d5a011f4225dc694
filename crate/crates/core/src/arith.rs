//! Small number-theoretic helpers shared by the partition and group code.

pub use num_integer::{gcd, lcm};

/// All positive divisors of `n` in increasing order. `divisors(0)` is empty.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisors `d` of `n` with `1 < d < n`, increasing.
pub fn proper_divisors(n: usize) -> Vec<usize> {
    divisors(n)
        .into_iter()
        .filter(|&d| d > 1 && d < n)
        .collect()
}

/// Möbius function.
pub fn mobius(mut n: usize) -> i64 {
    assert!(n > 0, "mobius(0) is undefined");
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// gcd of a slice; 0 for an empty slice.
pub fn gcd_all(values: &[usize]) -> usize {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

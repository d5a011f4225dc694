//! Matrices and polynomials over the prime field F_p.

use std::fmt;

use serde::Serialize;

use super::ConstructionError;
use crate::arith::is_prime;

fn check_prime(p: usize) -> Result<(), ConstructionError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ConstructionError::NotPrime(p))
    }
}

fn reduce(x: i64, p: usize) -> usize {
    x.rem_euclid(p as i64) as usize
}

fn inv_mod(a: usize, p: usize) -> usize {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat: a^(p-2)
    let mut result = 1usize;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// A square matrix over F_p, entries reduced into `0..p`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FpMatrix {
    p: usize,
    k: usize,
    entries: Vec<usize>,
}

impl FpMatrix {
    pub fn new(p: usize, rows: &[Vec<i64>]) -> Result<Self, ConstructionError> {
        check_prime(p)?;
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(ConstructionError::Shape(format!(
                "{k} rows of lengths {:?}",
                rows.iter().map(Vec::len).collect::<Vec<_>>()
            )));
        }
        let entries = rows.iter().flatten().map(|&x| reduce(x, p)).collect();
        Ok(FpMatrix { p, k, entries })
    }

    pub(crate) fn from_entries(p: usize, k: usize, entries: Vec<usize>) -> Self {
        debug_assert!(entries.len() == k * k && entries.iter().all(|&x| x < p));
        FpMatrix { p, k, entries }
    }

    pub fn identity(p: usize, k: usize) -> Result<Self, ConstructionError> {
        FpMatrix::diagonal(p, &vec![1; k])
    }

    pub fn diagonal(p: usize, diag: &[i64]) -> Result<Self, ConstructionError> {
        check_prime(p)?;
        let k = diag.len();
        let mut entries = vec![0; k * k];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * k + i] = reduce(d, p);
        }
        Ok(FpMatrix { p, k, entries })
    }

    /// The coordinate shift `S` with `S[i][(i+1) mod k] = 1`: `(Sx)_i = x_{i+1}`.
    pub fn left_shift(p: usize, k: usize) -> Result<Self, ConstructionError> {
        check_prime(p)?;
        let mut entries = vec![0; k * k];
        for i in 0..k {
            entries[i * k + (i + 1) % k] = 1;
        }
        Ok(FpMatrix { p, k, entries })
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal, last
    /// column `-c_0, …, -c_{k-1}`.
    pub fn companion(f: &FpPolynomial) -> Result<Self, ConstructionError> {
        let k = f
            .degree()
            .ok_or(ConstructionError::Shape("zero polynomial".into()))?;
        if k == 0 || !f.is_monic() {
            return Err(ConstructionError::Shape(
                "companion needs a monic polynomial of degree >= 1".into(),
            ));
        }
        let p = f.p;
        let mut entries = vec![0; k * k];
        for i in 0..k {
            if i + 1 < k {
                entries[(i + 1) * k + i] = 1;
            }
            entries[i * k + (k - 1)] = (p - f.coeffs[i]) % p;
        }
        Ok(FpMatrix { p, k, entries })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.k + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries.chunks(self.k).map(<[usize]>::to_vec).collect()
    }

    fn same_shape(&self, other: &FpMatrix) -> Result<(), ConstructionError> {
        if self.p != other.p || self.k != other.k {
            return Err(ConstructionError::Shape(format!(
                "{}x{} over F_{} vs {}x{} over F_{}",
                self.k, self.k, self.p, other.k, other.k, other.p
            )));
        }
        Ok(())
    }

    /// Ordinary matrix product `self · other`.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix, ConstructionError> {
        self.same_shape(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &FpMatrix) -> FpMatrix {
        let (k, p) = (self.k, self.p);
        let mut entries = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut s = 0;
                for l in 0..k {
                    s += self.entries[i * k + l] * other.entries[l * k + j];
                }
                entries[i * k + j] = s % p;
            }
        }
        FpMatrix { p, k, entries }
    }

    /// `A x` for a column vector `x`.
    pub fn apply(&self, x: &[usize]) -> Vec<usize> {
        (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| self.entries[i * self.k + j] * x[j])
                    .sum::<usize>()
                    % self.p
            })
            .collect()
    }

    pub fn det(&self) -> usize {
        let (k, p) = (self.k, self.p);
        let mut a = self.entries.clone();
        let mut det = 1usize;
        for col in 0..k {
            let Some(pivot) = (col..k).find(|&r| a[r * k + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..k {
                    a.swap(pivot * k + j, col * k + j);
                }
                det = (p - det) % p;
            }
            let pv = a[col * k + col];
            det = det * pv % p;
            let inv = inv_mod(pv, p);
            for r in col + 1..k {
                let factor = a[r * k + col] * inv % p;
                if factor != 0 {
                    for j in col..k {
                        a[r * k + j] = (a[r * k + j] + p * p - factor * a[col * k + j] % p) % p;
                    }
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn is_identity(&self) -> bool {
        (0..self.k).all(|i| (0..self.k).all(|j| self.get(i, j) == usize::from(i == j)))
    }

    /// Multiplicative order in GL(k, p); `None` if singular.
    pub fn order(&self) -> Option<usize> {
        if !self.is_invertible() {
            return None;
        }
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul_unchecked(self);
            n += 1;
        }
        Some(n)
    }

    /// Characteristic polynomial `det(xI - A)`, by Laplace expansion along
    /// rows over subsets of columns. Dimensions up to 8.
    pub fn char_poly(&self) -> Result<FpPolynomial, ConstructionError> {
        let (k, p) = (self.k, self.p);
        if k > 8 {
            return Err(ConstructionError::UnsupportedDegree(k));
        }
        // dp[mask]: signed sum over bijections from the first |mask| rows onto
        // the columns in mask, as a polynomial.
        let mut dp: Vec<Vec<usize>> = vec![Vec::new(); 1 << k];
        dp[0] = vec![1];
        for mask in 0usize..(1 << k) {
            if dp[mask].is_empty() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == k {
                continue;
            }
            let current = dp[mask].clone();
            for col in 0..k {
                if mask & (1 << col) != 0 {
                    continue;
                }
                // Sign of placing `col` after the columns already used.
                let inversions = (mask >> (col + 1)).count_ones();
                let sign_neg = inversions % 2 == 1;
                // Entry of xI - A at (row, col): constant -a, plus x on the diagonal.
                let a = self.entries[row * k + col];
                let mut term = vec![0; current.len() + 1];
                for (d, &c) in current.iter().enumerate() {
                    term[d] = (term[d] + c * ((p - a) % p)) % p;
                    if row == col {
                        term[d + 1] = (term[d + 1] + c) % p;
                    }
                }
                let target = &mut dp[mask | (1 << col)];
                if target.len() < term.len() {
                    target.resize(term.len(), 0);
                }
                for (d, t) in term.into_iter().enumerate() {
                    target[d] = if sign_neg {
                        (target[d] + p - t) % p
                    } else {
                        (target[d] + t) % p
                    };
                }
            }
        }
        Ok(FpPolynomial::new(
            p,
            dp[(1 << k) - 1].iter().map(|&c| c as i64).collect(),
        ))
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.rows())
    }
}

/// Rows separated by `/`, entries by spaces: `0 1/2 0`.
impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// A polynomial over F_p, coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FpPolynomial {
    p: usize,
    coeffs: Vec<usize>,
}

impl FpPolynomial {
    /// Coefficients from the constant term up; reduced mod `p` and trimmed.
    pub fn new(p: usize, coeffs: Vec<i64>) -> Self {
        let mut coeffs: Vec<usize> = coeffs.into_iter().map(|c| reduce(c, p)).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPolynomial { p, coeffs }
    }

    /// `x^k - d`.
    pub fn x_pow_minus(p: usize, k: usize, d: i64) -> Self {
        let mut c = vec![0; k + 1];
        c[0] = -d;
        c[k] += 1;
        FpPolynomial::new(p, c)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, x: usize) -> usize {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Remainder of division by a monic polynomial.
    fn rem_monic(&self, divisor: &[usize]) -> Vec<usize> {
        let p = self.p;
        let mut r = self.coeffs.clone();
        let dd = divisor.len() - 1;
        while r.len() > dd {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            for (i, &c) in divisor.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
        }
        r
    }

    /// Whether the polynomial is a product of two polynomials of positive
    /// degree. Roots decide degrees 2 and 3; degrees 4 to 8 use trial division
    /// by every monic polynomial of degree at most half.
    pub fn is_reducible(&self) -> Result<bool, ConstructionError> {
        let deg = self
            .degree()
            .ok_or(ConstructionError::UnsupportedDegree(0))?;
        if deg == 0 {
            return Err(ConstructionError::UnsupportedDegree(0));
        }
        if deg > 8 {
            return Err(ConstructionError::UnsupportedDegree(deg));
        }
        if deg == 1 {
            return Ok(false);
        }
        if (0..self.p).any(|x| self.eval(x) == 0) {
            return Ok(true);
        }
        if deg <= 3 {
            return Ok(false);
        }
        for d in 2..=deg / 2 {
            // monic divisors of degree d: the low coefficients run over F_p^d
            let total = self.p.pow(d as u32);
            for code in 0..total {
                let mut divisor = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    divisor.push(c % self.p);
                    c /= self.p;
                }
                divisor.push(1);
                if self.rem_monic(&divisor).is_empty() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

impl fmt::Debug for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over F_{}", self.p)
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && d > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match d {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{d}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// All invertible k×k matrices over F_p, entries in row-major lexicographic
/// order.
pub fn general_linear_group(p: usize, k: usize) -> Result<Vec<FpMatrix>, ConstructionError> {
    check_prime(p)?;
    let cells = k * k;
    let total = p
        .checked_pow(cells as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(ConstructionError::DegreeCap {
            degree: usize::MAX,
            cap: 1 << 24,
        })?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut entries = vec![0; cells];
        let mut c = code;
        for i in (0..cells).rev() {
            entries[i] = c % p;
            c /= p;
        }
        let m = FpMatrix { p, k, entries };
        if m.is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Elements of the matrix group generated by `gens`, identity first, then in
/// breadth-first order.
pub fn matrix_group_elements(
    p: usize,
    k: usize,
    gens: &[FpMatrix],
) -> Result<Vec<FpMatrix>, ConstructionError> {
    let id = FpMatrix::identity(p, k)?;
    for g in gens {
        g.same_shape(&id)?;
        if !g.is_invertible() {
            return Err(ConstructionError::Singular(g.to_string()));
        }
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = out[i].mul_unchecked(g);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn poly(p: usize, c: &[i64]) -> FpPolynomial {
        FpPolynomial::new(p, c.to_vec())
    }

    #[test]
    fn determinant() {
        let a = FpMatrix::new(7, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(a.det(), (4 + 14 - 6) % 7);
        let s = FpMatrix::left_shift(5, 3).unwrap();
        assert_eq!(s.det(), 1);
        let s = FpMatrix::left_shift(5, 2).unwrap();
        assert_eq!(s.det(), 4);
        assert!(!FpMatrix::new(3, &[vec![1, 2], vec![2, 1]])
            .unwrap()
            .is_invertible());
    }

    #[test]
    fn char_poly_of_identity() {
        let i = FpMatrix::identity(5, 2).unwrap();
        // (x - 1)^2 = x^2 - 2x + 1
        assert_eq!(i.char_poly().unwrap(), poly(5, &[1, -2, 1]));
    }

    #[test]
    fn char_poly_of_companion() {
        let f = poly(2, &[1, 1, 0, 1]);
        let c = FpMatrix::companion(&f).unwrap();
        assert_eq!(c.char_poly().unwrap(), f);
        let g = poly(7, &[3, 0, 5, 1, 1]);
        assert_eq!(FpMatrix::companion(&g).unwrap().char_poly().unwrap(), g);
    }

    #[test]
    fn char_poly_of_weighted_shift() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let diag: Vec<i64> = (0..4).map(|_| rng.gen_range(1..7)).collect();
            let d = FpMatrix::diagonal(7, &diag).unwrap();
            let ds = d.mul(&FpMatrix::left_shift(7, 4).unwrap()).unwrap();
            let prod: i64 = diag.iter().product();
            assert_eq!(
                ds.char_poly().unwrap(),
                FpPolynomial::x_pow_minus(7, 4, prod)
            );
        }
    }

    #[test]
    fn char_poly_matches_trace_and_det() {
        let a = FpMatrix::new(11, &[vec![2, 7, 1], vec![0, 3, 9], vec![4, 4, 5]]).unwrap();
        let f = a.char_poly().unwrap();
        assert_eq!(f.degree(), Some(3));
        assert!(f.is_monic());
        // x^3 - tr x^2 + ... - det
        assert_eq!(f.coeffs()[2], (11 - (2 + 3 + 5)));
        assert_eq!(f.coeffs()[0], (11 - a.det()) % 11);
    }

    #[test]
    fn reducibility() {
        for p in [3, 5, 7, 11, 13] {
            assert!(
                poly(p, &[1, 0, 0, 0, 1]).is_reducible().unwrap(),
                "x^4+1 over F_{p}"
            );
        }
        assert!(!poly(3, &[1, 0, 1]).is_reducible().unwrap());
        assert!(!poly(2, &[1, 1, 0, 1]).is_reducible().unwrap());
        assert!(poly(2, &[1, 0, 0, 1]).is_reducible().unwrap());
        // (x^2+1)^2 over F_3 has no root but factors
        assert!(poly(3, &[1, 0, 2, 0, 1]).is_reducible().unwrap());
        // x^4 + x + 1 is irreducible over F_2
        assert!(!poly(2, &[1, 1, 0, 0, 1]).is_reducible().unwrap());
        assert!(matches!(
            poly(2, &[1; 10]).is_reducible(),
            Err(ConstructionError::UnsupportedDegree(9))
        ));
    }

    #[test]
    fn non_residue_quadratics_are_irreducible() {
        for p in [3usize, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            let squares: std::collections::HashSet<usize> = (1..p).map(|t| t * t % p).collect();
            for r in 1..p {
                let f = FpPolynomial::x_pow_minus(p, 2, r as i64);
                assert_eq!(
                    f.is_reducible().unwrap(),
                    squares.contains(&r),
                    "x^2 - {r} over F_{p}"
                );
            }
        }
    }

    #[test]
    fn gl_sizes() {
        assert_eq!(general_linear_group(2, 2).unwrap().len(), 6);
        assert_eq!(general_linear_group(3, 2).unwrap().len(), 48);
        assert_eq!(general_linear_group(5, 2).unwrap().len(), 480);
    }

    #[test]
    fn matrix_group_closure() {
        let s = FpMatrix::left_shift(3, 2).unwrap();
        let d = FpMatrix::diagonal(3, &[2, 1]).unwrap();
        let g = matrix_group_elements(3, 2, &[s, d]).unwrap();
        // monomial matrices with entries ±1: 2 * 2 * 2
        assert_eq!(g.len(), 8);
        assert!(g[0].is_identity());
    }

    #[test]
    fn display_forms() {
        let a = FpMatrix::new(5, &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(a.to_string(), "0 1/4 0");
        assert_eq!(poly(5, &[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(poly(5, &[3, 2]).to_string(), "2x + 3");
    }
}

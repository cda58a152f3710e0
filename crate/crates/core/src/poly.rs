//! Univariate polynomials over the rationals, just enough to talk about
//! characteristic polynomials, cyclotomic factors and eigenspaces without
//! leaving `Q`.
//!
//! Coefficients are stored lowest degree first.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::{q, Q};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Q> {
        self.0.last()
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => {
                let l = l.clone();
                Poly::new(self.0.iter().map(|c| c / &l).collect())
            }
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![q(0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.0.clone();
        let mut quot = vec![q(0); self.0.len().saturating_sub(d)];
        while rem.len() > d && !rem.is_empty() {
            let k = rem.len() - 1 - d;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in divisor.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::from_i64(&[1]);
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(q(0), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<Q>) -> Matrix<Q> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = &(&acc * m) + &Matrix::scalar(n, c.clone());
        }
        acc
    }

    /// Rational roots, found through the rational root theorem after
    /// clearing denominators. Returns `None` when the cleared coefficients
    /// are too large to factor by trial division.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        let mut roots = Vec::new();
        let mut p = self.clone();
        while p.0.first().is_some_and(Zero::is_zero) {
            if !roots.contains(&q(0)) {
                roots.push(q(0));
            }
            p = Poly::new(p.0[1..].to_vec());
        }
        if p.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let denom_lcm = p.0.iter().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> = p.0.iter().map(|c| (c * Q::from_integer(denom_lcm.clone())).to_integer()).collect();
        let c0 = i64::try_from(ints[0].abs()).ok()?;
        let cn = i64::try_from(ints.last().unwrap().abs()).ok()?;
        if c0 > 1_000_000_000 || cn > 1_000_000_000 {
            return None;
        }
        for num in divisors(c0) {
            for den in divisors(cn) {
                for sign in [1, -1] {
                    let r = Q::new((sign * num).into(), den.into());
                    if !roots.contains(&r) && p.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> Poly {
    assert!(n >= 1);
    // x^n - 1 divided by all Phi_d, d | n, d < n
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = -1;
    coeffs[n] = 1;
    let mut p = Poly::from_i64(&coeffs);
    for d in 1..n {
        if n % d == 0 {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Characteristic polynomial `det(xI - M)` via Faddeev-LeVerrier.
pub fn charpoly(m: &Matrix<Q>) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![q(0); n + 1];
    coeffs[n] = q(1);
    let mut mk = Matrix::<Q>::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &Matrix::scalar(n, coeffs[n - k + 1].clone());
        let am = m * &mk;
        let tr = (0..n).fold(q(0), |acc, i| acc + am.get(i, i).clone());
        coeffs[n - k] = -tr / q(k as i64);
    }
    Poly::new(coeffs)
}

/// Columns spanning the sum of all (non-generalized) eigenspaces of `m`
/// over the algebraic closure. This is `ker s(M)` for the squarefree part
/// `s` of the characteristic polynomial.
pub fn eigenvector_span(m: &Matrix<Q>) -> Matrix<Q> {
    if m.rows() == 0 {
        return Matrix::zeros(0, 0);
    }
    charpoly(m).squarefree_part().eval_matrix(m).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qr;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), Poly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), Poly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).degree(), Some(euler_phi(12)));
    }

    #[test]
    fn charpoly_of_small_matrices() {
        let m = Matrix::<Q>::from_i64(&[&[2, 1], &[0, 3]]);
        assert_eq!(charpoly(&m), Poly::from_i64(&[6, -5, 1]));
        let r = Matrix::<Q>::from_i64(&[&[0, -1], &[1, -1]]);
        assert_eq!(charpoly(&r), cyclotomic(3));
    }

    #[test]
    fn squarefree_and_roots() {
        // (x-1)^2 (x+2)
        let p = Poly::from_i64(&[-1, 1]).mul(&Poly::from_i64(&[-1, 1])).mul(&Poly::from_i64(&[2, 1]));
        assert_eq!(p.squarefree_part(), Poly::from_i64(&[-2, 1, 1]));
        assert_eq!(p.rational_roots().unwrap(), vec![q(-2), q(1)]);
        let h = Poly::new(vec![q(1), qr(-5, 2), q(1)]); // (x-2)(x-1/2)
        assert_eq!(h.rational_roots().unwrap(), vec![qr(1, 2), q(2)]);
    }

    #[test]
    fn eigenvector_span_skips_jordan_blocks() {
        let j = Matrix::<Q>::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(eigenvector_span(&j).cols(), 1);
        let d = Matrix::<Q>::from_i64(&[&[1, 0], &[0, 2]]);
        assert_eq!(eigenvector_span(&d).cols(), 2);
    }
}

//! Finite-type root systems, characters of irreducible highest-weight
//! modules, and branching to a folded subalgebra.
//!
//! Weights are integer vectors in the fundamental-weight basis. Row `j` of
//! the Cartan matrix is `alpha_j` in that basis.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{q, Q};
use crate::lie_fold::{classify_cartan, CartanMatrix, FoldedAlgebraData};
use crate::matrix::Matrix;

pub type Weight = Vec<i64>;

/// Default ceiling on module dimensions handled by the character code.
pub const DEFAULT_DIM_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub cartan: CartanMatrix,
    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub positive: Vec<Vec<i64>>,
}

fn require_finite(c: &CartanMatrix) -> Result<()> {
    if classify_cartan(c).is_finite() || is_finite_product(c) {
        Ok(())
    } else {
        Err(Error::NotFiniteType)
    }
}

/// Positive definiteness of the symmetrized matrix, which also admits
/// products of finite types.
fn is_finite_product(c: &CartanMatrix) -> bool {
    let Some(sym) = c.symmetrized() else {
        return false;
    };
    let n = c.rank();
    (1..=n).all(|k| {
        Matrix::<Q>::from_rows((0..k).map(|i| (0..k).map(|j| q(sym[i][j])).collect()).collect()).determinant() > q(0)
    })
}

/// Closure of the simple roots under simple reflections, keeping the
/// positive ones.
pub fn positive_roots(c: &CartanMatrix) -> Result<RootSystem> {
    require_finite(c)?;
    let n = c.rank();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut r = vec![0; n];
        r[i] = 1;
        seen.insert(r.clone());
        queue.push_back(r);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // <beta, alpha_i^vee> = sum_k beta_k c(k, i)
            let pairing: i64 = (0..n).map(|k| beta[k] * c.get(k, i)).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen.into_iter().collect();
    positive.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    Ok(RootSystem {
        cartan: c.clone(),
        positive,
    })
}

fn check_dominant(c: &CartanMatrix, lambda: &[i64]) -> Result<()> {
    if lambda.len() != c.rank() {
        return Err(Error::IndexMismatch(format!("weight has {} coordinates, rank is {}", lambda.len(), c.rank())));
    }
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant);
    }
    Ok(())
}

/// Weyl dimension formula `prod (lambda + rho, beta^vee) / (rho, beta^vee)`.
pub fn weyl_dim(c: &CartanMatrix, lambda: &[i64]) -> Result<u128> {
    check_dominant(c, lambda)?;
    let rs = positive_roots(c)?;
    let d = c.symmetrizer().ok_or(Error::NotFiniteType)?;
    let mut num = num_bigint::BigInt::from(1);
    let mut den = num_bigint::BigInt::from(1);
    for beta in &rs.positive {
        let top: i64 = (0..c.rank()).map(|j| beta[j] * d[j] * (lambda[j] + 1)).sum();
        let bottom: i64 = (0..c.rank()).map(|j| beta[j] * d[j]).sum();
        num *= top;
        den *= bottom;
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quot.to_u128().ok_or(Error::TooLarge { dim: u128::MAX, cap: u128::MAX })
}

/// Multiplicity function of an irreducible module.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Character {
    pub weights: BTreeMap<Weight, u64>,
}

impl Character {
    pub fn dim(&self) -> u128 {
        self.weights.values().map(|&m| m as u128).sum()
    }

    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.weights.get(mu).copied().unwrap_or(0)
    }
}

/// Scaled bilinear form on the weight lattice and helpers for Freudenthal.
struct WeightGeometry {
    n: usize,
    cartan: Vec<Vec<i64>>,
    /// Integer multiple of the Gram matrix of fundamental weights.
    gram: Vec<Vec<i128>>,
    /// `C^{-T}` for converting a weight difference to root coordinates.
    to_roots: Matrix<Q>,
    positive_w: Vec<Vec<i64>>,
}

impl WeightGeometry {
    fn new(c: &CartanMatrix, rs: &RootSystem) -> Result<Self> {
        let n = c.rank();
        let d = c.symmetrizer().ok_or(Error::NotFiniteType)?;
        let inv = c.to_matrix().inverse().ok_or(Error::NotFiniteType)?;
        // (omega_i, omega_j) = (C^{-1})_{ij} d_j
        let gram_q: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| inv.get(i, j).clone() * q(d[j])).collect())
            .collect();
        let l = gram_q
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let gram = gram_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * Q::from_integer(l.clone())).to_integer().to_i128().expect("small"))
                    .collect()
            })
            .collect();
        let positive_w = rs
            .positive
            .iter()
            .map(|beta| (0..n).map(|i| (0..n).map(|k| beta[k] * c.get(k, i)).sum()).collect())
            .collect();
        Ok(WeightGeometry {
            n,
            cartan: c.entries().to_vec(),
            gram,
            to_roots: inv.transpose(),
            positive_w,
        })
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s = 0i128;
        for i in 0..self.n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += a[i] as i128 * self.gram[i][j] * b[j] as i128;
            }
        }
        s
    }

    fn dominant_conjugate(&self, mu: &[i64]) -> Weight {
        let mut v = mu.to_vec();
        while let Some(i) = (0..self.n).find(|&i| v[i] < 0) {
            let k = v[i];
            for (j, x) in v.iter_mut().enumerate() {
                *x -= k * self.cartan[i][j];
            }
        }
        v
    }

    /// `lambda - mu` is a nonnegative integer combination of simple roots.
    fn below(&self, lambda: &[i64], mu: &[i64]) -> bool {
        let diff: Vec<Q> = (0..self.n).map(|i| q(lambda[i] - mu[i])).collect();
        let coords = &self.to_roots * &Matrix::column_vector(diff);
        coords.entries().iter().all(|x| x.is_integer() && !x.is_negative())
    }

    fn height_below(&self, lambda: &[i64], mu: &[i64]) -> Q {
        let diff: Vec<Q> = (0..self.n).map(|i| q(lambda[i] - mu[i])).collect();
        let coords = &self.to_roots * &Matrix::column_vector(diff);
        coords.entries().iter().fold(q(0), |acc, x| acc + x)
    }
}

/// Full character of `L(lambda)` via Freudenthal's formula, with the
/// default dimension cap.
pub fn freudenthal_character(c: &CartanMatrix, lambda: &[i64]) -> Result<Character> {
    freudenthal_character_capped(c, lambda, DEFAULT_DIM_CAP)
}

pub fn freudenthal_character_capped(c: &CartanMatrix, lambda: &[i64], cap: u128) -> Result<Character> {
    check_dominant(c, lambda)?;
    let dim = weyl_dim(c, lambda)?;
    if dim > cap {
        return Err(Error::TooLarge { dim, cap });
    }
    let rs = positive_roots(c)?;
    let geo = WeightGeometry::new(c, &rs)?;
    let n = c.rank();

    // All weights: close lambda under subtracting simple roots, staying
    // inside { mu : dom(mu) <= lambda }.
    let mut all: HashSet<Weight> = HashSet::new();
    let mut dominant: Vec<Weight> = Vec::new();
    let mut queue = VecDeque::from([lambda.to_vec()]);
    all.insert(lambda.to_vec());
    while let Some(mu) = queue.pop_front() {
        if mu.iter().all(|&x| x >= 0) {
            dominant.push(mu.clone());
        }
        for i in 0..n {
            let nu: Weight = (0..n).map(|j| mu[j] - c.get(i, j)).collect();
            if all.contains(&nu) {
                continue;
            }
            if geo.below(lambda, &geo.dominant_conjugate(&nu)) {
                all.insert(nu.clone());
                queue.push_back(nu);
            }
        }
    }

    dominant.sort_by(|a, b| geo.height_below(lambda, a).cmp(&geo.height_below(lambda, b)));
    let rho = vec![1i64; n];
    let shift = |w: &[i64]| -> Weight { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let top = geo.form(&shift(lambda), &shift(lambda));
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for mu in &dominant {
        if mu.as_slice() == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut acc: i128 = 0;
        for beta in &geo.positive_w {
            let mut nu: Weight = mu.iter().zip(beta).map(|(a, b)| a + b).collect();
            loop {
                if !all.contains(&nu) {
                    break;
                }
                let m = *mult
                    .get(&geo.dominant_conjugate(&nu))
                    .expect("higher dominant weights are processed first");
                acc += m as i128 * geo.form(&nu, beta);
                for (x, b) in nu.iter_mut().zip(beta) {
                    *x += b;
                }
            }
        }
        let denom = top - geo.form(&shift(mu), &shift(mu));
        assert!(denom > 0 && (2 * acc) % denom == 0, "Freudenthal recursion is not integral");
        mult.insert(mu.clone(), (2 * acc / denom) as u64);
    }

    let weights = all
        .into_iter()
        .filter_map(|mu| {
            let m = mult[&geo.dominant_conjugate(&mu)];
            (m > 0).then_some((mu, m))
        })
        .collect();
    Ok(Character { weights })
}

fn check_fold_index(lambda: &[i64], fold: &FoldedAlgebraData) -> Result<()> {
    if lambda.len() != fold.base.rank() {
        return Err(Error::IndexMismatch(format!(
            "weight has {} coordinates, base rank is {}",
            lambda.len(),
            fold.base.rank()
        )));
    }
    Ok(())
}

/// Restriction to the folded Cartan subalgebra: the coordinate at orbit
/// `[i]` is the pairing with `H'_[i] = sum_k H_k`, i.e. the orbit sum.
pub fn restrict_weight(lambda: &[i64], fold: &FoldedAlgebraData) -> Result<Weight> {
    check_fold_index(lambda, fold)?;
    Ok(fold
        .orbits
        .iter()
        .map(|o| o.iter().map(|&k| lambda[k]).sum())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branching {
    /// Folded highest weights with multiplicities, highest first.
    pub components: Vec<(Weight, u64)>,
    pub dim: u128,
    pub folded_dims: Vec<u128>,
}

impl Branching {
    pub fn total(&self) -> u128 {
        self.components
            .iter()
            .zip(&self.folded_dims)
            .map(|((_, m), d)| *m as u128 * d)
            .sum()
    }
}

pub fn branch(c: &CartanMatrix, lambda: &[i64], fold: &FoldedAlgebraData) -> Result<Branching> {
    branch_capped(c, lambda, fold, DEFAULT_DIM_CAP)
}

/// Decomposes the restriction of `L(lambda)` by repeatedly removing the
/// irreducible character of the highest remaining weight.
pub fn branch_capped(c: &CartanMatrix, lambda: &[i64], fold: &FoldedAlgebraData, cap: u128) -> Result<Branching> {
    check_fold_index(lambda, fold)?;
    if fold.orbits.iter().any(|o| o.iter().any(|&k| lambda[k] != lambda[o[0]])) {
        return Err(Error::NotInvariantWeight);
    }
    restrict_and_strip(c, lambda, fold, cap)
}

/// The stripping step of [`branch_capped`] without the invariance check:
/// decomposes the restriction of any dominant `L(lambda)`.
pub fn restrict_and_strip(c: &CartanMatrix, lambda: &[i64], fold: &FoldedAlgebraData, cap: u128) -> Result<Branching> {
    check_fold_index(lambda, fold)?;
    check_dominant(c, lambda)?;
    let small = &fold.folded;
    require_finite(small)?;
    let chr = freudenthal_character_capped(c, lambda, cap)?;
    let mut remaining: BTreeMap<Weight, i64> = BTreeMap::new();
    for (mu, m) in &chr.weights {
        *remaining.entry(restrict_weight(mu, fold)?).or_insert(0) += *m as i64;
    }
    let inv_t = small.to_matrix().inverse().ok_or(Error::NotFiniteType)?.transpose();
    let height = |w: &[i64]| -> Q {
        let v = &inv_t * &Matrix::column_vector(w.iter().map(|&x| q(x)).collect());
        v.entries().iter().fold(q(0), |a, x| a + x)
    };
    let mut components = Vec::new();
    let mut folded_dims = Vec::new();
    loop {
        remaining.retain(|_, m| *m != 0);
        let Some(top) = remaining.keys().max_by(|a, b| height(a).cmp(&height(b))).cloned() else {
            break;
        };
        let m = remaining[&top];
        if m < 0 || top.iter().any(|&x| x < 0) {
            return Err(Error::StrippingFailure(top));
        }
        let sub = freudenthal_character_capped(small, &top, cap)?;
        for (nu, k) in &sub.weights {
            let e = remaining.entry(nu.clone()).or_insert(0);
            *e -= m * *k as i64;
            if *e < 0 {
                return Err(Error::StrippingFailure(nu.clone()));
            }
        }
        folded_dims.push(sub.dim());
        components.push((top, m as u64));
    }
    let out = Branching {
        components,
        dim: chr.dim(),
        folded_dims,
    };
    if out.total() != out.dim {
        return Err(Error::StrippingFailure(lambda.to_vec()));
    }
    Ok(out)
}

/// `sum_i w'_i omega_i`.
pub fn highest_weight_from_framing(w_split: &[u64]) -> Weight {
    w_split.iter().map(|&x| x as i64).collect()
}

/// Simple reflection `s_i` on a weight.
pub fn reflect(c: &CartanMatrix, i: usize, mu: &[i64]) -> Weight {
    let k = mu[i];
    (0..c.rank()).map(|j| mu[j] - k * c.get(i, j)).collect()
}

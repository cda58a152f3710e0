//! Framed modules over the preprojective algebra of a framed double quiver.
//!
//! A module carries `B_h: V_s(h) -> V_t(h)` for every doubled arrow, and
//! `I_i: W_i -> V_i`, `J_i: V_i -> W_i` at every vertex. The relation at `i`
//! is `sum_{s(h) = i} eps(h) B_{h*} B_h + I_i J_i = 0`.

mod embed;
mod eigen;
pub mod json;
pub mod random;
mod theta;

pub use embed::*;
pub use eigen::*;
pub use theta::*;

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::matrix::Matrix;
use crate::quiver::DoubledQuiver;

#[derive(Clone, Debug, PartialEq)]
pub struct FramedModule<F: Field> {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    /// One matrix per doubled arrow, indexed like [`DoubledQuiver::arrows`].
    pub b: Vec<Matrix<F>>,
    pub i: Vec<Matrix<F>>,
    pub j: Vec<Matrix<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RelationMode {
    /// `sum eps(h) B_{h*} B_h + I J = 0`
    #[default]
    Signed,
    /// `sum B_{h*} B_h + I J = 0`
    Unsigned,
}

impl<F: Field> FramedModule<F> {
    pub fn zero(d: &DoubledQuiver, v: Vec<usize>, w: Vec<usize>) -> Self {
        let b = d
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(v[a.tgt], v[a.src]))
            .collect();
        let i = (0..v.len()).map(|k| Matrix::zeros(v[k], w[k])).collect();
        let j = (0..v.len()).map(|k| Matrix::zeros(w[k], v[k])).collect();
        FramedModule { v, w, b, i, j }
    }

    pub fn check_shapes(&self, d: &DoubledQuiver) -> Result<()> {
        let n = d.base().vertex_count();
        if self.v.len() != n || self.w.len() != n {
            return Err(Error::ShapeMismatch(format!("dimension vectors must have {n} entries")));
        }
        if self.b.len() != d.arrow_count() || self.i.len() != n || self.j.len() != n {
            return Err(Error::ShapeMismatch("wrong number of matrices".into()));
        }
        for (k, a) in d.arrows().iter().enumerate() {
            if self.b[k].shape() != (self.v[a.tgt], self.v[a.src]) {
                return Err(Error::ShapeMismatch(format!("B at arrow {}", d.arrow_name(k))));
            }
        }
        for x in 0..n {
            if self.i[x].shape() != (self.v[x], self.w[x]) {
                return Err(Error::ShapeMismatch(format!("I at vertex {}", d.base().vertex_id(x))));
            }
            if self.j[x].shape() != (self.w[x], self.v[x]) {
                return Err(Error::ShapeMismatch(format!("J at vertex {}", d.base().vertex_id(x))));
            }
        }
        Ok(())
    }

    /// The left-hand side of the relation at vertex `x`.
    pub fn relation_at(&self, d: &DoubledQuiver, x: usize, mode: RelationMode) -> Matrix<F> {
        let mut acc = &self.i[x] * &self.j[x];
        for h in d.arrows_from(x) {
            let term = &self.b[d.reverse(h)] * &self.b[h];
            let eps = match mode {
                RelationMode::Signed => d.epsilon(h),
                RelationMode::Unsigned => 1,
            };
            acc = &acc + &term.scale(&F::from_i64(eps));
        }
        acc
    }

    /// Direct sum, with framings added as well.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let zip = |a: &[Matrix<F>], b: &[Matrix<F>]| -> Vec<Matrix<F>> {
            a.iter().zip(b).map(|(x, y)| Matrix::block_diag(&[x, y])).collect()
        };
        FramedModule {
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
            w: self.w.iter().zip(&other.w).map(|(a, b)| a + b).collect(),
            b: zip(&self.b, &other.b),
            i: zip(&self.i, &other.i),
            j: zip(&self.j, &other.j),
        }
    }

    /// `g . M = (g B g^{-1}, g I, J g^{-1})` for invertible `g_x`.
    pub fn act(&self, d: &DoubledQuiver, g: &[Matrix<F>]) -> Result<Self> {
        let inv: Vec<Matrix<F>> = g
            .iter()
            .enumerate()
            .map(|(x, m)| {
                m.inverse()
                    .ok_or_else(|| Error::NotInvertible(d.base().vertex_id(x).into()))
            })
            .collect::<Result<_>>()?;
        check_group_element(d, &self.v, g)?;
        Ok(FramedModule {
            v: self.v.clone(),
            w: self.w.clone(),
            b: d
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, a)| &(&g[a.tgt] * &self.b[k]) * &inv[a.src])
                .collect(),
            i: (0..self.v.len()).map(|x| &g[x] * &self.i[x]).collect(),
            j: (0..self.v.len()).map(|x| &self.j[x] * &inv[x]).collect(),
        })
    }

    pub fn total_dim(&self) -> usize {
        self.v.iter().sum()
    }
}

pub(crate) fn check_group_element<F: Field>(d: &DoubledQuiver, v: &[usize], g: &[Matrix<F>]) -> Result<()> {
    if g.len() != v.len() {
        return Err(Error::IndexMismatch(format!("expected {} matrices, got {}", v.len(), g.len())));
    }
    for (x, m) in g.iter().enumerate() {
        if m.shape() != (v[x], v[x]) {
            return Err(Error::ShapeMismatch(format!("group element at vertex {}", d.base().vertex_id(x))));
        }
    }
    Ok(())
}

/// First vertex where the relation fails, or `None` when it holds
/// everywhere.
pub fn check_relations<F: Field>(d: &DoubledQuiver, m: &FramedModule<F>, mode: RelationMode) -> Result<Option<usize>> {
    m.check_shapes(d)?;
    Ok((0..m.v.len()).find(|&x| !m.relation_at(d, x, mode).is_zero()))
}

/// Largest `B`-invariant graded subspace inside `ker J`, as column bases
/// per vertex, computed by the descending fixpoint starting at `ker J`.
pub fn destabilizing_subspace<F: Field>(d: &DoubledQuiver, m: &FramedModule<F>) -> Vec<Matrix<F>> {
    let n = m.v.len();
    let mut s: Vec<Matrix<F>> = (0..n).map(|x| m.j[x].kernel()).collect();
    loop {
        let ann: Vec<Matrix<F>> = s.iter().map(Matrix::annihilator).collect();
        let mut changed = false;
        let mut next = Vec::with_capacity(n);
        for x in 0..n {
            if s[x].cols() == 0 {
                next.push(s[x].clone());
                continue;
            }
            let mut cons = Matrix::zeros(0, s[x].cols());
            for h in d.arrows_from(x) {
                let t = d.arrows()[h].tgt;
                let rows = &(&ann[t] * &m.b[h]) * &s[x];
                cons = cons.vstack(&rows);
            }
            let k = cons.kernel();
            if k.cols() < s[x].cols() {
                changed = true;
                next.push(&s[x] * &k);
            } else {
                next.push(s[x].clone());
            }
        }
        s = next;
        if !changed {
            return s;
        }
    }
}

/// Stability: no nonzero `B`-invariant graded subspace inside `ker J`.
pub fn is_stable<F: Field>(d: &DoubledQuiver, m: &FramedModule<F>) -> Result<bool> {
    is_stable_with(d, m, RelationMode::Signed)
}

pub fn is_stable_with<F: Field>(d: &DoubledQuiver, m: &FramedModule<F>, mode: RelationMode) -> Result<bool> {
    if let Some(x) = check_relations(d, m, mode)? {
        return Err(Error::RelationViolation(d.base().vertex_id(x).into()));
    }
    Ok(destabilizing_subspace(d, m).iter().all(|s| s.cols() == 0))
}

/// Fields small enough to list.
pub trait FiniteField: Field + Copy {
    fn all() -> Vec<Self>;
}

impl<const P: u64> FiniteField for Fp<P> {
    fn all() -> Vec<Self> {
        Fp::<P>::elements().collect()
    }
}

/// Every subspace of `F^m`, each as a column basis in reduced form.
pub fn all_subspaces<F: FiniteField>(m: usize) -> Vec<Matrix<F>> {
    let elems = F::all();
    let mut out = vec![Matrix::zeros(m, 0)];
    for k in 1..=m {
        // pivot column sets of a k x m row-reduced matrix
        for pivots in combinations(m, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let p = pivots[r];
                    let pivots = pivots.clone();
                    (p + 1..m).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let total = elems.len().pow(free.len() as u32);
            for mut code in 0..total {
                let mut rows = Matrix::zeros(k, m);
                for (r, &p) in pivots.iter().enumerate() {
                    rows.set(r, p, F::one());
                }
                for &(r, c) in &free {
                    rows.set(r, c, elems[code % elems.len()]);
                    code /= elems.len();
                }
                out.push(rows.transpose());
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combinations(n - first - 1, k - 1) {
            let mut c = vec![first];
            c.extend(rest.into_iter().map(|x| x + first + 1));
            out.push(c);
        }
    }
    out
}

/// Largest dimension per vertex accepted by [`brute_stability`].
pub const BRUTE_DIM_BOUND: usize = 4;

/// Stability by exhaustive search over graded subspaces.
pub fn brute_stability<F: FiniteField>(d: &DoubledQuiver, m: &FramedModule<F>) -> Result<bool> {
    m.check_shapes(d)?;
    if let Some(&big) = m.v.iter().find(|&&x| x > BRUTE_DIM_BOUND) {
        return Err(Error::TooLarge {
            dim: big as u128,
            cap: BRUTE_DIM_BOUND as u128,
        });
    }
    let n = m.v.len();
    // candidate subspaces per vertex, already restricted to ker J
    let cands: Vec<Vec<Matrix<F>>> = (0..n)
        .map(|x| {
            all_subspaces::<F>(m.v[x])
                .into_iter()
                .filter(|s| (&m.j[x] * s).is_zero())
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; n];
    loop {
        let nonzero = (0..n).any(|x| cands[x][choice[x]].cols() > 0);
        if nonzero {
            let invariant = d.arrows().iter().enumerate().all(|(k, a)| {
                let src = &cands[a.src][choice[a.src]];
                let tgt = &cands[a.tgt][choice[a.tgt]];
                tgt.spans(&(&m.b[k] * src))
            });
            if invariant {
                return Ok(false);
            }
        }
        // odometer
        let mut x = 0;
        loop {
            if x == n {
                return Ok(true);
            }
            choice[x] += 1;
            if choice[x] < cands[x].len() {
                break;
            }
            choice[x] = 0;
            x += 1;
        }
    }
}

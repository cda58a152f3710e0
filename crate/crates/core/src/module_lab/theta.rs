use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::Matrix;
use crate::quiver::{orbit_data, DiagramAutomorphism, DoubledQuiver, OrbitData};
use crate::split::{check_orbit_constant, check_sigma};

use super::eigen::{eigen_profile, EigenProfile};
use super::{check_group_element, check_relations, is_stable, FramedModule, RelationMode};

fn dims_u64(v: &[usize]) -> Vec<u64> {
    v.iter().map(|&x| x as u64).collect()
}

/// Validates orbit-constant dimensions and the framing twist, returning the
/// orbit data of `a`.
pub fn check_theta_input(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    m: &FramedModule<Q>,
) -> Result<OrbitData> {
    let q = d.base();
    m.check_shapes(d)?;
    let od = orbit_data(q, a)?;
    check_orbit_constant(q, &od, &dims_u64(&m.v))?;
    check_orbit_constant(q, &od, &dims_u64(&m.w))?;
    check_sigma(q, a, &od, &dims_u64(&m.w), sigma)?;
    Ok(od)
}

/// `theta(M)`: `B'_{a(h)} = sign(h) B_h`, `J'_{a(i)} = sigma_i J_i`,
/// `I'_{a(i)} = I_i sigma_i^{-1}`. The signs come from
/// [`DiagramAutomorphism::arrow_lift`] and keep the signed relation intact.
pub fn apply_theta(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    m: &FramedModule<Q>,
) -> Result<FramedModule<Q>> {
    check_theta_input(d, a, sigma, m)?;
    Ok(theta_unchecked(d, a, sigma, m))
}

pub(crate) fn theta_unchecked(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    m: &FramedModule<Q>,
) -> FramedModule<Q> {
    let lift = a.arrow_lift(d);
    let mut out = m.clone();
    for h in 0..d.arrow_count() {
        out.b[lift.image[h]] = m.b[h].scale(&Q::from_i64(lift.sign[h]));
    }
    for x in 0..m.v.len() {
        let y = a.vertex(x);
        out.j[y] = &sigma[x] * &m.j[x];
        out.i[y] = &m.i[x] * &sigma[x].inverse().expect("sigma is invertible");
    }
    out
}

/// `(g*)_i = g_{a(i)}`.
pub fn star<F: Field>(g: &[Matrix<F>], a: &DiagramAutomorphism) -> Result<Vec<Matrix<F>>> {
    if g.len() != a.vertex_perm().len() {
        return Err(Error::IndexMismatch(format!(
            "expected {} matrices, got {}",
            a.vertex_perm().len(),
            g.len()
        )));
    }
    let out: Vec<Matrix<F>> = (0..g.len()).map(|i| g[a.vertex(i)].clone()).collect();
    if out.iter().zip(g).any(|(x, y)| x.shape() != y.shape()) {
        return Err(Error::ShapeMismatch("star needs orbit-constant dimensions".into()));
    }
    Ok(out)
}

/// Solves `theta(M) = g . M` for `g`.
///
/// Stable input is required: there the homogeneous system has only the zero
/// solution (its image would be a `B`-invariant subspace of `ker J`), so a
/// solution is unique when it exists.
pub fn find_transition(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    m: &FramedModule<Q>,
) -> Result<Option<Vec<Matrix<Q>>>> {
    check_theta_input(d, a, sigma, m)?;
    if !is_stable(d, m)? {
        return Err(Error::NotStable);
    }
    let target = theta_unchecked(d, a, sigma, m);
    Ok(solve_intertwiner(d, m, &target))
}

/// The unique-or-absent `g` with `g . source = target`, assuming `source`
/// is stable.
pub(crate) fn solve_intertwiner(
    d: &DoubledQuiver,
    source: &FramedModule<Q>,
    target: &FramedModule<Q>,
) -> Option<Vec<Matrix<Q>>> {
    let v = &source.v;
    let mut offset = vec![0usize; v.len() + 1];
    for x in 0..v.len() {
        offset[x + 1] = offset[x] + v[x] * v[x];
    }
    let unknowns = offset[v.len()];
    let var = |x: usize, r: usize, c: usize| offset[x] + r * v[x] + c;
    let mut rows: Vec<(Vec<(usize, Q)>, Q)> = Vec::new();

    // g_t B_h - B'_h g_s = 0
    for (h, arrow) in d.arrows().iter().enumerate() {
        let (s, t) = (arrow.src, arrow.tgt);
        let (b, bp) = (&source.b[h], &target.b[h]);
        for r in 0..v[t] {
            for c in 0..v[s] {
                let mut eq = Vec::new();
                for k in 0..v[t] {
                    if !b.get(k, c).is_zero() {
                        eq.push((var(t, r, k), b.get(k, c).clone()));
                    }
                }
                for k in 0..v[s] {
                    if !bp.get(r, k).is_zero() {
                        eq.push((var(s, k, c), -bp.get(r, k).clone()));
                    }
                }
                rows.push((eq, Q::zero()));
            }
        }
    }
    for x in 0..v.len() {
        // g I = I'
        let (i, ip) = (&source.i[x], &target.i[x]);
        for r in 0..v[x] {
            for c in 0..i.cols() {
                let eq = (0..v[x])
                    .filter(|&k| !i.get(k, c).is_zero())
                    .map(|k| (var(x, r, k), i.get(k, c).clone()))
                    .collect();
                rows.push((eq, ip.get(r, c).clone()));
            }
        }
        // J' g = J
        let (j, jp) = (&source.j[x], &target.j[x]);
        for r in 0..j.rows() {
            for c in 0..v[x] {
                let eq = (0..v[x])
                    .filter(|&k| !jp.get(r, k).is_zero())
                    .map(|k| (var(x, k, c), jp.get(r, k).clone()))
                    .collect();
                rows.push((eq, j.get(r, c).clone()));
            }
        }
    }
    let mut a = Matrix::<Q>::zeros(rows.len(), unknowns);
    let mut b = Matrix::<Q>::zeros(rows.len(), 1);
    for (k, (eq, rhs)) in rows.into_iter().enumerate() {
        for (col, val) in eq {
            let cur = a.get(k, col).clone();
            a.set(k, col, cur + val);
        }
        b.set(k, 0, rhs);
    }
    let sol = a.solve(&b)?;
    let g: Vec<Matrix<Q>> = (0..v.len())
        .map(|x| {
            Matrix::from_vec(
                v[x],
                v[x],
                (0..v[x] * v[x]).map(|k| sol.get(offset[x] + k, 0).clone()).collect(),
            )
        })
        .collect();
    if !g.iter().all(Matrix::is_invertible) {
        return None;
    }
    match source.act(d, &g) {
        Ok(moved) if &moved == target => Some(g),
        _ => None,
    }
}

/// Whether `theta(M) = g . M` holds exactly.
pub fn verify_transition(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    m: &FramedModule<Q>,
    g: &[Matrix<Q>],
) -> Result<bool> {
    check_theta_input(d, a, sigma, m)?;
    check_group_element(d, &m.v, g)?;
    if !g.iter().all(Matrix::is_invertible) {
        return Ok(false);
    }
    Ok(m.act(d, g)? == theta_unchecked(d, a, sigma, m))
}

/// Spectral data of the transition at an `a`-fixed vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedVertexReport {
    pub vertex: usize,
    pub e: usize,
    pub transition: EigenProfile,
    pub block_diagonal_candidate: EigenProfile,
}

/// Outcome of [`build_theta_witness`].
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaWitness {
    /// `M = M1 (+) g . theta(M1)`.
    pub module: FramedModule<Q>,
    /// Verified transition: per vertex the block matrix
    /// `[[0, g_i^{-1}], [g*_i, 0]]`.
    pub transition: Vec<Matrix<Q>>,
    /// Per vertex `diag(g*_i, g_i^{-1})`.
    pub block_diagonal_candidate: Vec<Matrix<Q>>,
    /// Whether the block-diagonal candidate also satisfies
    /// `theta(M) = candidate . M`.
    pub candidate_verifies: bool,
    /// `Some(true)` when `M1` is stable and has no transition, `None` when
    /// `M1` is not stable and the non-isomorphism was not checked.
    pub m1_not_theta_stable: Option<bool>,
    pub fixed_vertices: Vec<FixedVertexReport>,
}

/// Builds `M = M1 (+) g . theta(M1)` and its transition.
///
/// With `theta^2 = id` one has `theta(M) = theta(M1) (+) g* . M1`, so the
/// transition swaps the two summands. Requires `a` of order at most 2 and
/// `I = J = 0` on `M1`, so that the framing plays no role.
pub fn build_theta_witness(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    m1: &FramedModule<Q>,
    g: &[Matrix<Q>],
) -> Result<ThetaWitness> {
    let od = check_theta_input(d, a, sigma, m1)?;
    if od.n > 2 {
        return Err(Error::PreconditionViolation(format!(
            "automorphism has order {}, the construction needs order at most 2",
            od.n
        )));
    }
    if m1.i.iter().chain(&m1.j).any(|x| !x.is_zero()) {
        return Err(Error::PreconditionViolation("the summand must have I = 0 and J = 0".into()));
    }
    if let Some(x) = check_relations(d, m1, RelationMode::Signed)? {
        return Err(Error::RelationViolation(d.base().vertex_id(x).into()));
    }
    check_group_element(d, &m1.v, g)?;
    let g_inv: Vec<Matrix<Q>> = g
        .iter()
        .enumerate()
        .map(|(x, m)| m.inverse().ok_or_else(|| Error::NotInvertible(d.base().vertex_id(x).into())))
        .collect::<Result<_>>()?;
    let g_star = star(g, a)?;

    let m1_not_theta_stable = if is_stable(d, m1)? {
        Some(find_transition(d, a, sigma, m1)?.is_none())
    } else {
        None
    };

    let m2 = theta_unchecked(d, a, sigma, m1).act(d, g)?;
    let mut module = m1.direct_sum(&m2);
    // framing is not doubled: I and J vanish on both summands
    module.w = m1.w.clone();
    module.i = (0..m1.v.len()).map(|x| Matrix::zeros(module.v[x], m1.w[x])).collect();
    module.j = (0..m1.v.len()).map(|x| Matrix::zeros(m1.w[x], module.v[x])).collect();

    let n = m1.v.len();
    let mut transition = Vec::with_capacity(n);
    let mut candidate = Vec::with_capacity(n);
    for x in 0..n {
        let k = m1.v[x];
        let mut t = Matrix::zeros(2 * k, 2 * k);
        t.set_block(0, k, &g_inv[x]);
        t.set_block(k, 0, &g_star[x]);
        transition.push(t);
        candidate.push(Matrix::block_diag(&[&g_star[x], &g_inv[x]]));
    }
    let target = theta_unchecked(d, a, sigma, &module);
    if module.act(d, &transition)? != target {
        return Err(Error::PreconditionViolation("swap transition failed to verify".into()));
    }
    let candidate_verifies = module.act(d, &candidate)? == target;
    let fixed_vertices = (0..n)
        .filter(|&x| a.vertex(x) == x)
        .map(|x| FixedVertexReport {
            vertex: x,
            e: od.e_vertex[x],
            transition: eigen_profile(&transition[x], od.e_vertex[x]),
            block_diagonal_candidate: eigen_profile(&candidate[x], od.e_vertex[x]),
        })
        .collect();
    Ok(ThetaWitness {
        module,
        transition,
        block_diagonal_candidate: candidate,
        candidate_verifies,
        m1_not_theta_stable,
        fixed_vertices,
    })
}

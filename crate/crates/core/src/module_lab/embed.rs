use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{format_q, Q};
use crate::matrix::Matrix;
use crate::poly::{charpoly, Poly};
use crate::quiver::{orbit_data, DiagramAutomorphism, DoubledQuiver};

use super::theta::verify_transition;
use super::{is_stable, FramedModule};

/// `xi: M' -> M`, one matrix `V'_i -> V_i` per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct FramedEmbedding {
    pub xi: Vec<Matrix<Q>>,
    pub sub: FramedModule<Q>,
    pub module: FramedModule<Q>,
}

fn check_embedding_shapes(
    d: &DoubledQuiver,
    xi: &[Matrix<Q>],
    sub: &FramedModule<Q>,
    m: &FramedModule<Q>,
) -> Result<()> {
    sub.check_shapes(d)?;
    m.check_shapes(d)?;
    if sub.w != m.w {
        return Err(Error::ShapeMismatch("framings differ".into()));
    }
    if xi.len() != m.v.len() {
        return Err(Error::ShapeMismatch(format!("expected {} maps, got {}", m.v.len(), xi.len())));
    }
    for (x, map) in xi.iter().enumerate() {
        if map.shape() != (m.v[x], sub.v[x]) {
            return Err(Error::ShapeMismatch(format!("xi at vertex {}", d.base().vertex_id(x))));
        }
    }
    Ok(())
}

/// Injective at every vertex, `xi B' = B xi`, `xi I' = I` and `J' = J xi`.
pub fn check_framed_embedding(
    d: &DoubledQuiver,
    xi: &[Matrix<Q>],
    sub: &FramedModule<Q>,
    m: &FramedModule<Q>,
) -> Result<bool> {
    check_embedding_shapes(d, xi, sub, m)?;
    if xi.iter().any(|x| x.rank() != x.cols()) {
        return Ok(false);
    }
    let arrows_ok = d
        .arrows()
        .iter()
        .enumerate()
        .all(|(h, a)| &xi[a.tgt] * &sub.b[h] == &m.b[h] * &xi[a.src]);
    let framing_ok =
        (0..m.v.len()).all(|x| &xi[x] * &sub.i[x] == m.i[x] && sub.j[x] == &m.j[x] * &xi[x]);
    Ok(arrows_ok && framing_ok)
}

/// Codimension profile of an embedding for the orbit of `vertex`.
///
/// Exact mode wants codimension 1 at every orbit member and 0 elsewhere;
/// `at_most` relaxes the orbit condition to codimension at most 1 with at
/// least one member of codimension 1.
pub fn hecke_profile(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    xi: &[Matrix<Q>],
    sub: &FramedModule<Q>,
    m: &FramedModule<Q>,
    vertex: usize,
    at_most: bool,
) -> Result<bool> {
    let embedded = check_framed_embedding(d, xi, sub, m)
        .map_err(|e| Error::NotAnEmbedding(e.to_string()))?;
    if !embedded {
        return Err(Error::NotAnEmbedding("maps fail to intertwine or are not injective".into()));
    }
    let od = orbit_data(d.base(), a)?;
    let orbit = &od.vertex_orbits[od.vertex_orbit_of[vertex]];
    let codim: Vec<usize> = (0..m.v.len()).map(|x| m.v[x] - sub.v[x]).collect();
    let off_orbit_zero = (0..m.v.len()).filter(|x| !orbit.contains(x)).all(|x| codim[x] == 0);
    let on_orbit = if at_most {
        orbit.iter().all(|&x| codim[x] <= 1) && orbit.iter().any(|&x| codim[x] == 1)
    } else {
        orbit.iter().all(|&x| codim[x] == 1)
    };
    Ok(off_orbit_zero && on_orbit)
}

/// `Psi_g` on `V_{i_0} (+) ... (+) V_{i_{d-1}}` for one vertex orbit: the
/// block at slot `k` goes to slot `a^{-1}(k)` through `g_k`. For a fixed
/// vertex this is `g_i` itself. The transitions of `M' -> M` satisfy
/// `g_k xi_k = xi_{a^{-1}(k)} g'_k`, so `xi` intertwines the two operators.
pub fn twisted_operator(orbit: &[usize], a: &DiagramAutomorphism, dims: &[usize], g: &[Matrix<Q>]) -> Matrix<Q> {
    let offsets = slot_offsets(orbit, dims);
    let total = offsets.last().copied().unwrap_or(0);
    let mut psi = Matrix::zeros(total, total);
    let inv = a.inverse();
    for (slot, &k) in orbit.iter().enumerate() {
        let target = orbit.iter().position(|&x| x == inv.vertex(k)).expect("orbit is closed");
        psi.set_block(offsets[target], offsets[slot], &g[k]);
    }
    psi
}

fn slot_offsets(orbit: &[usize], dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for &k in orbit {
        out.push(out.last().unwrap() + dims[k]);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub vertex: String,
    /// Coordinates in `V'`, slot by slot along the orbit of `vertex`.
    pub vector: Vec<String>,
    pub eigen_factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenspaceReport {
    pub holds: bool,
    /// Number of eigenvector classes checked, summed over orbits.
    pub checked_classes: usize,
    pub counterexample: Option<Counterexample>,
}

fn poly_label(p: &Poly) -> String {
    let terms: Vec<String> = p.coeffs().iter().map(format_q).collect();
    format!("[{}]", terms.join(", "))
}

/// Checks that `xi` sends every eigenspace of the transition of `M'` into
/// the eigenspace of the transition of `M` with the same eigenvalue.
///
/// Eigenvalues are grouped by the irreducible factors that can be split
/// off over the rationals (linear factors, cyclotomic factors, and one
/// remainder), and in addition `xi Psi' = Psi xi` is tested on the
/// eigenvector span of `Psi'`, which pins each individual eigenvalue.
pub fn verify_eigenspace_embedding(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    sigma: &[Matrix<Q>],
    pair: &FramedEmbedding,
    g_sub: &[Matrix<Q>],
    g: &[Matrix<Q>],
) -> Result<EigenspaceReport> {
    let (sub, m, xi) = (&pair.sub, &pair.module, &pair.xi);
    if !check_framed_embedding(d, xi, sub, m)? {
        return Err(Error::PreconditionViolation("xi is not a framed embedding".into()));
    }
    if !is_stable(d, sub)? || !is_stable(d, m)? {
        return Err(Error::PreconditionViolation("both modules must be stable".into()));
    }
    if !verify_transition(d, a, sigma, sub, g_sub)? || !verify_transition(d, a, sigma, m, g)? {
        return Err(Error::PreconditionViolation("transition witness does not verify".into()));
    }
    let od = orbit_data(d.base(), a)?;
    let mut checked = 0;
    for orbit in &od.vertex_orbits {
        let psi_sub = twisted_operator(orbit, a, &sub.v, g_sub);
        let psi = twisted_operator(orbit, a, &m.v, g);
        let blocks: Vec<&Matrix<Q>> = orbit.iter().map(|&k| &xi[k]).collect();
        let xi_orbit = Matrix::block_diag(&blocks);
        if psi_sub.rows() == 0 {
            continue;
        }
        let sq = charpoly(&psi_sub).squarefree_part();
        for f in split_factors(&sq) {
            checked += 1;
            let kernel = f.eval_matrix(&psi_sub).kernel();
            let image = &f.eval_matrix(&psi) * &(&xi_orbit * &kernel);
            if let Some(c) = (0..image.cols()).find(|&c| image.column(c).iter().any(|x| !num_traits::Zero::is_zero(x))) {
                return Ok(counterexample(d, orbit, &kernel, c, &f, checked));
            }
        }
        let span = sq.eval_matrix(&psi_sub).kernel();
        let lhs = &(&xi_orbit * &psi_sub) * &span;
        let rhs = &(&psi * &xi_orbit) * &span;
        if let Some(c) = (0..span.cols()).find(|&c| lhs.column(c) != rhs.column(c)) {
            return Ok(counterexample(d, orbit, &span, c, &sq, checked));
        }
    }
    Ok(EigenspaceReport {
        holds: true,
        checked_classes: checked,
        counterexample: None,
    })
}

fn counterexample(
    d: &DoubledQuiver,
    orbit: &[usize],
    basis: &Matrix<Q>,
    col: usize,
    f: &Poly,
    checked: usize,
) -> EigenspaceReport {
    EigenspaceReport {
        holds: false,
        checked_classes: checked,
        counterexample: Some(Counterexample {
            vertex: d.base().vertex_id(orbit[0]).to_string(),
            vector: basis.column(col).iter().map(format_q).collect(),
            eigen_factor: poly_label(f),
        }),
    }
}

/// Splits a squarefree polynomial into its rational linear factors, the
/// cyclotomic factors of small order, and whatever remains.
fn split_factors(p: &Poly) -> Vec<Poly> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in p.rational_roots().unwrap_or_default() {
        let f = Poly::new(vec![-r, Q::from_integer(1.into())]);
        rest = rest.div_rem(&f).0;
        out.push(f);
    }
    let deg = rest.degree().unwrap_or(0);
    for o in 3..=4 * deg.max(1) + 2 {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let c = crate::poly::cyclotomic(o);
        let (quot, rem) = rest.div_rem(&c);
        if rem.is_zero() {
            rest = quot;
            out.push(c);
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.monic());
    }
    out
}

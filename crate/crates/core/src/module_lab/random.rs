//! Seeded random generation of modules, framing twists and embedded pairs.
//!
//! Embedded pairs follow a fixed recipe. A module with `theta(M) = D . M`
//! is built for an orbit-constant diagonal `D` with entries `+-1`; the
//! submodule is the closure of `im I` (plus an optional random vector) under
//! `B` and under `D`; both are then moved by random elements of `G_V` and
//! `G_V'`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::Matrix;
use crate::quiver::{orbit_data, DiagramAutomorphism, DoubledQuiver, OrbitData};

use super::embed::FramedEmbedding;
use super::theta::{find_transition, solve_intertwiner, theta_unchecked};
use super::{check_relations, is_stable, FramedModule, RelationMode};

const ATTEMPTS: usize = 64;

pub fn random_matrix<F: Field, R: Rng + ?Sized>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> Matrix<F> {
    let data = (0..rows * cols).map(|_| F::from_i64(rng.gen_range(-bound..=bound))).collect();
    Matrix::from_vec(rows, cols, data)
}

pub fn random_invertible<F: Field, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let m = random_matrix(n, n, 2, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn sparse_matrix<F: Field, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<F> {
    if rng.gen_bool(0.25) {
        Matrix::zeros(rows, cols)
    } else {
        random_matrix(rows, cols, 2, rng)
    }
}

/// `R_i = -sum eps(h) B_{h*} B_h` (or its unsigned variant) at vertex `x`.
fn arrow_part<F: Field>(d: &DoubledQuiver, v: &[usize], b: &[Matrix<F>], x: usize, mode: RelationMode) -> Matrix<F> {
    let mut acc = Matrix::zeros(v[x], v[x]);
    for h in d.arrows_from(x) {
        let eps = match mode {
            RelationMode::Signed => d.epsilon(h),
            RelationMode::Unsigned => 1,
        };
        acc = &acc - &(&b[d.reverse(h)] * &b[h]).scale(&F::from_i64(eps));
    }
    acc
}

/// Factors `r = I J` with `I: W -> V`, padding `J` with random rows.
fn factor_through<F: Field, R: Rng + ?Sized>(r: &Matrix<F>, w: usize, rng: &mut R) -> Option<(Matrix<F>, Matrix<F>)> {
    let (p, qm) = r.rank_factorization();
    let k = p.cols();
    if k > w {
        return None;
    }
    let i = p.hstack(&Matrix::zeros(r.rows(), w - k));
    let j = qm.vstack(&sparse_matrix(w - k, r.cols(), rng));
    Some((i, j))
}

/// A random module satisfying the relation: random `B`, then `I J` is a
/// factorization of the remaining term. Falls back to `B = 0` when the
/// rank never fits the framing.
pub fn random_relation_module<F: Field, R: Rng + ?Sized>(
    d: &DoubledQuiver,
    v: &[usize],
    w: &[usize],
    mode: RelationMode,
    rng: &mut R,
) -> FramedModule<F> {
    let n = v.len();
    for _ in 0..ATTEMPTS {
        let b: Vec<Matrix<F>> = d.arrows().iter().map(|a| sparse_matrix(v[a.tgt], v[a.src], rng)).collect();
        let mut i = Vec::with_capacity(n);
        let mut j = Vec::with_capacity(n);
        let mut ok = true;
        for x in 0..n {
            match factor_through(&arrow_part(d, v, &b, x, mode), w[x], rng) {
                Some((ix, jx)) => {
                    i.push(ix);
                    j.push(jx);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return FramedModule { v: v.to_vec(), w: w.to_vec(), b, i, j };
        }
    }
    let mut m = FramedModule::zero(d, v.to_vec(), w.to_vec());
    for x in 0..n {
        m.j[x] = sparse_matrix(w[x], v[x], rng);
    }
    m
}

/// A random invertible `C` of size `w` with `C^e = 1`, built from blocks of
/// order dividing `e` and conjugated by a random matrix.
pub fn random_finite_order<R: Rng + ?Sized>(w: usize, e: usize, rng: &mut R) -> Matrix<Q> {
    let mut blocks: Vec<Matrix<Q>> = Vec::new();
    let mut left = w;
    while left > 0 {
        let mut options: Vec<Matrix<Q>> = vec![Matrix::from_i64(&[&[1]])];
        if e % 2 == 0 {
            options.push(Matrix::from_i64(&[&[-1]]));
        }
        if left >= 2 && e % 3 == 0 {
            options.push(Matrix::from_i64(&[&[0, -1], &[1, -1]]));
        }
        if left >= 2 && e % 4 == 0 {
            options.push(Matrix::from_i64(&[&[0, -1], &[1, 0]]));
        }
        let pick = options.swap_remove(rng.gen_range(0..options.len()));
        left -= pick.rows();
        blocks.push(pick);
    }
    let refs: Vec<&Matrix<Q>> = blocks.iter().collect();
    let c = Matrix::block_diag(&refs);
    let p: Matrix<Q> = random_invertible(w, rng);
    &(&p * &c) * &p.inverse().unwrap()
}

/// Random `sigma` whose orbit composite at each orbit's first vertex is the
/// given matrix.
pub fn sigma_with_composites<R: Rng + ?Sized>(
    od: &OrbitData,
    w: &[usize],
    composites: &[Matrix<Q>],
    rng: &mut R,
) -> Vec<Matrix<Q>> {
    let mut sigma: Vec<Matrix<Q>> = w.iter().map(|&k| Matrix::identity(k)).collect();
    for (o, orbit) in od.vertex_orbits.iter().enumerate() {
        let k = w[orbit[0]];
        let mut prefix = Matrix::identity(k);
        for &x in &orbit[..orbit.len() - 1] {
            sigma[x] = random_invertible(k, rng);
            prefix = &sigma[x] * &prefix;
        }
        let last = *orbit.last().unwrap();
        sigma[last] = &composites[o] * &prefix.inverse().unwrap();
    }
    sigma
}

/// Random valid framing twist: orbit composites of finite order dividing
/// `e_i`.
pub fn random_sigma<R: Rng + ?Sized>(od: &OrbitData, w: &[usize], rng: &mut R) -> Vec<Matrix<Q>> {
    let composites: Vec<Matrix<Q>> = od
        .vertex_orbits
        .iter()
        .map(|o| random_finite_order(w[o[0]], od.e_vertex[o[0]], rng))
        .collect();
    sigma_with_composites(od, w, &composites, rng)
}

/// A module together with the data that makes it `theta`-stable.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaStableModule {
    pub module: FramedModule<Q>,
    pub sigma: Vec<Matrix<Q>>,
    pub transition: Vec<Matrix<Q>>,
}

fn sign_pattern<R: Rng + ?Sized>(k: usize, allow_negative: bool, rng: &mut R) -> Vec<i64> {
    (0..k).map(|_| if allow_negative && rng.gen_bool(0.5) { -1 } else { 1 }).collect()
}

fn diag_q(signs: &[i64]) -> Matrix<Q> {
    Matrix::diag(&signs.iter().map(|&s| Q::from_i64(s)).collect::<Vec<_>>())
}

/// Stable module with `theta(M) = D . M` for an orbit-constant diagonal `D`
/// with entries `+-1`.
pub fn random_theta_fixed<R: Rng + ?Sized>(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    v: &[usize],
    w: &[usize],
    rng: &mut R,
) -> Result<ThetaStableModule> {
    let q = d.base();
    let od = orbit_data(q, a)?;
    let n = v.len();
    for orbit in &od.vertex_orbits {
        if orbit.iter().any(|&x| v[x] != v[orbit[0]] || w[x] != w[orbit[0]]) {
            return Err(Error::NotOrbitConstant(q.vertex_id(orbit[0]).into()));
        }
    }
    let lift = a.arrow_lift(d);
    for _ in 0..ATTEMPTS {
        // D on V and the orbit composite C on W, both diagonal with +-1.
        // The return map on V_i is D^{d_i}; for odd d_i it equals D, which
        // must then pair with C, so D = 1 there unless e_i is even.
        let mut dsign = vec![Vec::new(); n];
        let mut csign = vec![Vec::new(); od.vertex_orbit_count()];
        for (o, orbit) in od.vertex_orbits.iter().enumerate() {
            let i0 = orbit[0];
            let even_e = od.e_vertex[i0] % 2 == 0;
            let dv = sign_pattern(v[i0], od.d_vertex[i0] % 2 == 0 || even_e, rng);
            // C starts with the signs of the return map on V so that J can
            // be injective on each eigenspace
            let ret = dv.iter().map(|&s| if od.d_vertex[i0] % 2 == 0 { 1 } else { s });
            let rest = sign_pattern(w[i0].saturating_sub(v[i0]), even_e, rng);
            csign[o] = ret.take(w[i0]).chain(rest).collect();
            for &x in orbit {
                dsign[x] = dv.clone();
            }
        }
        let dmat: Vec<Matrix<Q>> = dsign.iter().map(|s| diag_q(s)).collect();

        // B: pick one arrow per cycle of the arrow lift, average over the
        // return map, then transport around the cycle.
        let mut b: Vec<Option<Matrix<Q>>> = vec![None; d.arrow_count()];
        for start in 0..d.arrow_count() {
            if b[start].is_some() {
                continue;
            }
            let arrow = &d.arrows()[start];
            let (s, t) = (arrow.src, arrow.tgt);
            let mut len = 1;
            let mut k = lift.image[start];
            while k != start {
                len += 1;
                k = lift.image[k];
            }
            let x: Matrix<Q> = sparse_matrix(v[t], v[s], rng);
            let mut base = x.clone();
            if len % 2 == 1 {
                let back = &(&dmat[t] * &x) * &dmat[s];
                base = (&x + &back).scale(&Q::new(1.into(), 2.into()));
            }
            let mut h = start;
            let mut cur = base;
            loop {
                b[h] = Some(cur.clone());
                let (hs, ht) = (d.arrows()[h].src, d.arrows()[h].tgt);
                let next = lift.image[h];
                cur = (&(&dmat[ht] * &cur) * &dmat[hs]).scale(&Q::from_i64(lift.sign[h]));
                h = next;
                if h == start {
                    break;
                }
            }
        }
        let b: Vec<Matrix<Q>> = b.into_iter().map(Option::unwrap).collect();

        // I and J at each orbit's first vertex, equivariant for D^{d} on V
        // and C on W, then transported.
        let mut i_maps: Vec<Matrix<Q>> = (0..n).map(|x| Matrix::zeros(v[x], w[x])).collect();
        let mut j_maps: Vec<Matrix<Q>> = (0..n).map(|x| Matrix::zeros(w[x], v[x])).collect();
        let mut ok = true;
        for (o, orbit) in od.vertex_orbits.iter().enumerate() {
            let i0 = orbit[0];
            let dd = od.d_vertex[i0];
            let vret: Vec<i64> = dsign[i0].iter().map(|&s| if dd % 2 == 0 { 1 } else { s }).collect();
            let r = arrow_part(d, v, &b, i0, RelationMode::Signed);
            for sign in [1i64, -1] {
                let vi: Vec<usize> = (0..v[i0]).filter(|&k| vret[k] == sign).collect();
                let wi: Vec<usize> = (0..w[i0]).filter(|&k| csign[o][k] == sign).collect();
                let block = r.select_rows(&vi).select_columns(&vi);
                match factor_through(&block, wi.len(), rng) {
                    Some((ib, jb)) => {
                        for (rr, &vr) in vi.iter().enumerate() {
                            for (cc, &wc) in wi.iter().enumerate() {
                                i_maps[i0].set(vr, wc, ib.get(rr, cc).clone());
                                j_maps[i0].set(wc, vr, jb.get(cc, rr).clone());
                            }
                        }
                    }
                    None => ok = false,
                }
            }
        }
        if !ok {
            continue;
        }
        let composites: Vec<Matrix<Q>> = csign.iter().map(|s| diag_q(s)).collect();
        let sigma = sigma_with_composites(&od, w, &composites, rng);
        for orbit in &od.vertex_orbits {
            for pos in 0..orbit.len() - 1 {
                let (x, y) = (orbit[pos], orbit[pos + 1]);
                j_maps[y] = &(&sigma[x] * &j_maps[x]) * &dmat[x];
                i_maps[y] = &(&dmat[x] * &i_maps[x]) * &sigma[x].inverse().unwrap();
            }
        }
        let module = FramedModule { v: v.to_vec(), w: w.to_vec(), b, i: i_maps, j: j_maps };
        if check_relations(d, &module, RelationMode::Signed)?.is_some() || !is_stable(d, &module)? {
            continue;
        }
        if module.act(d, &dmat)? != theta_unchecked(d, a, &sigma, &module) {
            return Err(Error::PreconditionViolation("generated module is not theta-stable".into()));
        }
        return Ok(ThetaStableModule { module, sigma, transition: dmat });
    }
    Err(Error::PreconditionViolation(
        "no stable theta-stable module found; enlarge the framing".into(),
    ))
}

/// An embedded pair of stable `theta`-stable modules with both transitions.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPair {
    pub embedding: FramedEmbedding,
    pub sigma: Vec<Matrix<Q>>,
    pub sub_transition: Vec<Matrix<Q>>,
    pub transition: Vec<Matrix<Q>>,
}

/// Smallest graded subspace containing `seed` that is closed under `B` and
/// maps into itself under `g_k: V_k -> V_{a^{-1}(k)}`.
fn closure(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    m: &FramedModule<Q>,
    g: &[Matrix<Q>],
    mut s: Vec<Matrix<Q>>,
) -> Vec<Matrix<Q>> {
    let inv = a.inverse();
    loop {
        let mut next = s.clone();
        for (h, arrow) in d.arrows().iter().enumerate() {
            let image = &m.b[h] * &s[arrow.src];
            next[arrow.tgt] = next[arrow.tgt].hstack(&image);
        }
        for k in 0..s.len() {
            let image = &g[k] * &s[k];
            let y = inv.vertex(k);
            next[y] = next[y].hstack(&image);
        }
        let next: Vec<Matrix<Q>> = next.iter().map(Matrix::column_space).collect();
        if next.iter().zip(&s).all(|(x, y)| x.cols() == y.cols()) {
            return next;
        }
        s = next;
    }
}

/// Restriction of `m` to the graded subspace with column bases `xi`.
pub fn restrict(d: &DoubledQuiver, m: &FramedModule<Q>, xi: &[Matrix<Q>]) -> Result<FramedModule<Q>> {
    let n = m.v.len();
    let solve = |basis: &Matrix<Q>, target: &Matrix<Q>| {
        basis
            .solve(target)
            .ok_or_else(|| Error::NotAnEmbedding("subspace is not invariant".into()))
    };
    let b = d
        .arrows()
        .iter()
        .enumerate()
        .map(|(h, arrow)| solve(&xi[arrow.tgt], &(&m.b[h] * &xi[arrow.src])))
        .collect::<Result<Vec<_>>>()?;
    let i = (0..n).map(|x| solve(&xi[x], &m.i[x])).collect::<Result<Vec<_>>>()?;
    let j = (0..n).map(|x| &m.j[x] * &xi[x]).collect();
    Ok(FramedModule {
        v: xi.iter().map(Matrix::cols).collect(),
        w: m.w.clone(),
        b,
        i,
        j,
    })
}

/// A random embedded pair `M' -> M` of stable modules, both `theta`-stable.
pub fn random_theta_pair<R: Rng + ?Sized>(
    d: &DoubledQuiver,
    a: &DiagramAutomorphism,
    v: &[usize],
    w: &[usize],
    rng: &mut R,
) -> Result<ThetaPair> {
    let base = random_theta_fixed(d, a, v, w, rng)?;
    let (m, sigma, g0) = (&base.module, &base.sigma, &base.transition);
    let n = v.len();
    let mut seed: Vec<Matrix<Q>> = (0..n).map(|x| m.i[x].clone()).collect();
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(0..n);
        if v[k] > 0 {
            seed[k] = seed[k].hstack(&random_matrix(v[k], 1, 2, rng));
        }
    }
    let xi0 = closure(d, a, m, g0, seed);
    let sub0 = restrict(d, m, &xi0)?;

    // move both modules by random group elements
    let h: Vec<Matrix<Q>> = v.iter().map(|&k| random_invertible(k, rng)).collect();
    let hp: Vec<Matrix<Q>> = sub0.v.iter().map(|&k| random_invertible(k, rng)).collect();
    let module = m.act(d, &h)?;
    let sub = sub0.act(d, &hp)?;
    let xi: Vec<Matrix<Q>> = (0..n)
        .map(|x| &(&h[x] * &xi0[x]) * &hp[x].inverse().unwrap())
        .collect();
    let transition = find_transition(d, a, sigma, &module)?
        .ok_or_else(|| Error::PreconditionViolation("generated module has no transition".into()))?;
    let target = theta_unchecked(d, a, sigma, &sub);
    let sub_transition = solve_intertwiner(d, &sub, &target)
        .ok_or_else(|| Error::PreconditionViolation("generated submodule has no transition".into()))?;
    Ok(ThetaPair {
        embedding: FramedEmbedding { xi, sub, module },
        sigma: sigma.clone(),
        sub_transition,
        transition,
    })
}

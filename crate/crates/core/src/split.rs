//! Quotient and split-quotient quivers, the projection `p` of dimension
//! vectors and its fibers, and the eigenspace splitting of a framing.
//!
//! Split vertices are pairs `(orbit, j/e)` with `1 <= j <= e`, where `e` is
//! the orbit's `e_i`. For each quotient edge `h` joining orbits with
//! periods `e1`, `e2` and edge period `e_h` (which divides both), the split
//! quiver has one edge `(orbit1, j1) - (orbit2, j2)` for every pair with
//! `j1 = j2 mod e_h`. The induced automorphism shifts every phase by one.
//!
//! Ids: an orbit is labelled by its member ids joined with `|`. A split
//! vertex id is the orbit label when `e = 1` and `label@j/e` otherwise,
//! so the identity automorphism reproduces the original ids. Split edges
//! follow the same rule with suffix `[j1,j2]`.

use num_integer::Integer;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Q;
use crate::iso::find_isomorphism;
use crate::matrix::Matrix;
use crate::poly::{cyclotomic, euler_phi};
use crate::quiver::{
    orbit_data, require_admissible, DiagramAutomorphism, OrbitData, Quiver, QuiverJson,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitVertex {
    pub orbit: usize,
    /// Phase numerator, `1..=e`.
    pub j: usize,
    pub e: usize,
}

impl SplitVertex {
    /// Reduced phase `j/e`.
    pub fn phase(&self) -> (usize, usize) {
        let g = self.j.gcd(&self.e);
        (self.j / g, self.e / g)
    }
}

#[derive(Clone, Debug)]
pub struct SplitData {
    pub source: Quiver,
    pub automorphism: DiagramAutomorphism,
    pub orbits: OrbitData,
    pub quotient: Quiver,
    pub split: Quiver,
    pub induced: DiagramAutomorphism,
    pub split_vertices: Vec<SplitVertex>,
    /// First split-vertex index of each orbit; the orbit's vertices follow
    /// consecutively in phase order.
    pub orbit_offset: Vec<usize>,
}

impl SplitData {
    pub fn orbit_label(&self, orbit: usize) -> String {
        orbit_label(&self.source, &self.orbits.vertex_orbits[orbit])
    }

    pub fn split_index(&self, orbit: usize, j: usize) -> usize {
        self.orbit_offset[orbit] + j - 1
    }

    /// The `labels` table of the JSON output.
    pub fn labels_json(&self) -> serde_json::Map<String, serde_json::Value> {
        self.split_vertices
            .iter()
            .enumerate()
            .map(|(k, sv)| {
                let (num, den) = sv.phase();
                (
                    self.split.vertex_id(k).to_string(),
                    json!({
                        "orbit": self.orbit_label(sv.orbit),
                        "j": sv.j,
                        "e": sv.e,
                        "phase": format!("{num}/{den}"),
                    }),
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> QuiverJson {
        let mut j = QuiverJson::from_quiver(&self.split, Some(&self.induced));
        j.labels = Some(self.labels_json());
        j
    }
}

fn orbit_label(q: &Quiver, members: &[usize]) -> String {
    let mut ids: Vec<usize> = members.to_vec();
    ids.sort_unstable();
    ids.iter().map(|&i| q.vertex_id(i)).collect::<Vec<_>>().join("|")
}

fn edge_orbit_label(q: &Quiver, members: &[usize]) -> String {
    let mut ids: Vec<usize> = members.to_vec();
    ids.sort_unstable();
    ids.iter()
        .map(|&k| q.edges()[k].id.as_str())
        .collect::<Vec<_>>()
        .join("|")
}

/// Quotient quiver: vertex orbits and edge orbits, each edge orbit oriented
/// like its smallest member.
pub fn quotient_quiver(q: &Quiver, a: &DiagramAutomorphism) -> Result<Quiver> {
    require_admissible(q, a)?;
    let od = orbit_data(q, a)?;
    build_quotient(q, &od)
}

fn build_quotient(q: &Quiver, od: &OrbitData) -> Result<Quiver> {
    let vertices: Vec<String> = od
        .vertex_orbits
        .iter()
        .map(|o| orbit_label(q, o))
        .collect();
    let edges = od
        .edge_orbits
        .iter()
        .map(|o| {
            let rep = &q.edges()[*o.iter().min().unwrap()];
            (
                edge_orbit_label(q, o),
                vertices[od.vertex_orbit_of[rep.src]].clone(),
                vertices[od.vertex_orbit_of[rep.tgt]].clone(),
            )
        })
        .collect();
    Quiver::new(vertices, edges)
}

pub fn split_quiver(q: &Quiver, a: &DiagramAutomorphism) -> Result<SplitData> {
    require_admissible(q, a)?;
    let od = orbit_data(q, a)?;
    let quotient = build_quotient(q, &od)?;

    let mut split_vertices = Vec::new();
    let mut orbit_offset = Vec::new();
    let mut vertex_ids = Vec::new();
    for (o, members) in od.vertex_orbits.iter().enumerate() {
        let e = od.e_vertex[members[0]];
        orbit_offset.push(split_vertices.len());
        let label = orbit_label(q, members);
        for j in 1..=e {
            split_vertices.push(SplitVertex { orbit: o, j, e });
            vertex_ids.push(if e == 1 {
                label.clone()
            } else {
                format!("{label}@{j}/{e}")
            });
        }
    }

    // Split edges, with their (quotient edge, j1, j2) tags for building a'.
    let mut edges = Vec::new();
    let mut tags = Vec::new();
    for (h, members) in od.edge_orbits.iter().enumerate() {
        let rep = &q.edges()[*members.iter().min().unwrap()];
        let (o1, o2) = (od.vertex_orbit_of[rep.src], od.vertex_orbit_of[rep.tgt]);
        let (e1, e2) = (od.e_vertex[rep.src], od.e_vertex[rep.tgt]);
        let eh = od.e_edge[members[0]];
        let label = edge_orbit_label(q, members);
        let many = e1 * e2 / eh > 1;
        for j1 in 1..=e1 {
            for j2 in 1..=e2 {
                if (j1 + eh - j2 % eh) % eh != 0 {
                    continue;
                }
                let id = if many {
                    format!("{label}[{j1},{j2}]")
                } else {
                    label.clone()
                };
                edges.push((
                    id,
                    vertex_ids[orbit_offset[o1] + j1 - 1].clone(),
                    vertex_ids[orbit_offset[o2] + j2 - 1].clone(),
                ));
                tags.push((h, j1, j2));
            }
        }
    }
    let split = Quiver::new(vertex_ids, edges)?;

    let shift = |j: usize, e: usize| j % e + 1;
    let vertex_perm: Vec<usize> = split_vertices
        .iter()
        .map(|sv| orbit_offset[sv.orbit] + shift(sv.j, sv.e) - 1)
        .collect();
    let edge_perm: Vec<usize> = tags
        .iter()
        .map(|&(h, j1, j2)| {
            let rep = &q.edges()[*od.edge_orbits[h].iter().min().unwrap()];
            let (e1, e2) = (od.e_vertex[rep.src], od.e_vertex[rep.tgt]);
            let target = (h, shift(j1, e1), shift(j2, e2));
            tags.iter().position(|t| *t == target).expect("shift preserves the congruence")
        })
        .collect();
    let induced = DiagramAutomorphism::new(vertex_perm, edge_perm);

    Ok(SplitData {
        source: q.clone(),
        automorphism: a.clone(),
        orbits: od,
        quotient,
        split,
        induced,
        split_vertices,
        orbit_offset,
    })
}

/// Witness for `s(s(Q)) = Q`: a vertex bijection from the double split to
/// `Q` intertwining the twice-induced automorphism with `a^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionWitness {
    pub vertex_map: Vec<usize>,
    pub power: usize,
}

pub fn split_involution_check(q: &Quiver, a: &DiagramAutomorphism) -> Result<InvolutionWitness> {
    let s1 = split_quiver(q, a)?;
    let s2 = split_quiver(&s1.split, &s1.induced)?;
    let target = s2.split.adjacency();
    let source = q.adjacency();
    let n = a.order();
    let mut powers: Vec<usize> = (1..=n).filter(|k| k.gcd(&n) == 1).collect();
    if n == 1 {
        powers = vec![1];
    }
    let a2 = &s2.induced;
    for k in powers {
        let ak = a.power(k);
        let accept = |phi: &[Option<usize>]| {
            phi.iter().enumerate().all(|(x, y)| match (y, phi[a2.vertex(x)]) {
                (Some(y), Some(z)) => z == ak.vertex(*y),
                _ => true,
            })
        };
        if let Some(map) = find_isomorphism(&target, &source, &accept) {
            return Ok(InvolutionWitness {
                vertex_map: map,
                power: k,
            });
        }
    }
    Err(Error::IsoNotFound)
}

/// `p(v')_i`: the sum of `v'` over the split vertices of the orbit of `i`.
pub fn project_dim(v_split: &[u64], sd: &SplitData) -> Result<Vec<u64>> {
    if v_split.len() != sd.split_vertices.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} split entries, got {}",
            sd.split_vertices.len(),
            v_split.len()
        )));
    }
    let mut per_orbit = vec![0u64; sd.orbits.vertex_orbit_count()];
    for (k, sv) in sd.split_vertices.iter().enumerate() {
        per_orbit[sv.orbit] += v_split[k];
    }
    Ok(sd
        .orbits
        .vertex_orbit_of
        .iter()
        .map(|&o| per_orbit[o])
        .collect())
}

/// Reads a dimension vector given as `(vertex id, value)` pairs; missing
/// vertices are zero.
pub fn dimension_vector(q: &Quiver, entries: &[(String, u64)]) -> Result<Vec<u64>> {
    let mut v = vec![0u64; q.vertex_count()];
    for (id, x) in entries {
        v[q.vertex_index(id)?] = *x;
    }
    Ok(v)
}

pub(crate) fn check_orbit_constant(q: &Quiver, od: &OrbitData, v: &[u64]) -> Result<()> {
    if v.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} entries, got {}",
            q.vertex_count(),
            v.len()
        )));
    }
    for orbit in &od.vertex_orbits {
        if let Some(&bad) = orbit.iter().find(|&&i| v[i] != v[orbit[0]]) {
            return Err(Error::NotOrbitConstant(q.vertex_id(bad).into()));
        }
    }
    Ok(())
}

/// Weak compositions of `total` into `parts` parts, lexicographic order.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `v'` on the split quiver with `p(v') = v`, lexicographically ordered
/// in the canonical split-vertex order.
pub fn fibers_of_p(v: &[u64], sd: &SplitData) -> Result<Vec<Vec<u64>>> {
    check_orbit_constant(&sd.source, &sd.orbits, v)?;
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for orbit in &sd.orbits.vertex_orbits {
        let e = sd.orbits.e_vertex[orbit[0]];
        let pieces = compositions(v[orbit[0]], e);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                pieces.iter().map(move |p| {
                    let mut x = prefix.clone();
                    x.extend_from_slice(p);
                    x
                })
            })
            .collect();
    }
    Ok(acc)
}

/// Closed form for the fiber size: product over orbits of
/// `C(v_i + e_i - 1, e_i - 1)`.
pub fn fiber_count(v: &[u64], sd: &SplitData) -> u128 {
    sd.orbits
        .vertex_orbits
        .iter()
        .map(|o| {
            let e = sd.orbits.e_vertex[o[0]] as u128;
            binomial(v[o[0]] as u128 + e - 1, e - 1)
        })
        .product()
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `sigma_{a^{d-1}(i)} ... sigma_{a(i)} sigma_i`, the return map of `W_i`.
pub fn orbit_composite(
    sigma: &[Matrix<Q>],
    a: &DiagramAutomorphism,
    start: usize,
    d: usize,
) -> Matrix<Q> {
    let n = sigma[start].rows();
    let mut acc = Matrix::identity(n);
    let mut x = start;
    for _ in 0..d {
        acc = &sigma[x] * &acc;
        x = a.vertex(x);
    }
    acc
}

pub(crate) fn check_sigma(
    q: &Quiver,
    a: &DiagramAutomorphism,
    od: &OrbitData,
    w: &[u64],
    sigma: &[Matrix<Q>],
) -> Result<()> {
    if sigma.len() != q.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} sigma matrices, got {}",
            q.vertex_count(),
            sigma.len()
        )));
    }
    for (i, s) in sigma.iter().enumerate() {
        let (wi, wj) = (w[i] as usize, w[a.vertex(i)] as usize);
        if s.shape() != (wj, wi) || s.inverse().is_none() && wi > 0 {
            return Err(Error::SigmaConstraintViolated(q.vertex_id(i).into()));
        }
    }
    for orbit in &od.vertex_orbits {
        let i = orbit[0];
        let c = orbit_composite(sigma, a, i, od.d_vertex[i]);
        if !c.pow(od.e_vertex[i]).is_identity() {
            return Err(Error::SigmaConstraintViolated(q.vertex_id(i).into()));
        }
    }
    Ok(())
}

/// Dimension of the `zeta^j` eigenspace of `g` where `zeta` is a primitive
/// `e`-th root of unity and `g^e = 1`. The eigenspaces of conjugate roots
/// have equal dimension, so this is `dim ker Phi_o(g) / phi(o)` with
/// `o = e / gcd(j, e)` the order of `zeta^j`.
pub fn root_of_unity_eigenspace_dim(g: &Matrix<Q>, e: usize, j: usize) -> usize {
    let o = e / j.gcd(&e);
    let k = cyclotomic(o).eval_matrix(g).nullity();
    k / euler_phi(o)
}

/// `w'` on the split quiver: at `(orbit, j/e)` the dimension of the
/// `zeta^j` eigenspace of the orbit composite at the orbit's smallest
/// vertex.
pub fn split_framing(w: &[u64], sigma: &[Matrix<Q>], sd: &SplitData) -> Result<Vec<u64>> {
    split_framing_at(w, sigma, sd, |orbit| sd.orbits.lift(orbit))
}

/// As [`split_framing`] with a caller-chosen lift per orbit.
pub fn split_framing_at(
    w: &[u64],
    sigma: &[Matrix<Q>],
    sd: &SplitData,
    lift: impl Fn(usize) -> usize,
) -> Result<Vec<u64>> {
    let q = &sd.source;
    check_orbit_constant(q, &sd.orbits, w)?;
    check_sigma(q, &sd.automorphism, &sd.orbits, w, sigma)?;
    let mut out = vec![0u64; sd.split_vertices.len()];
    for (k, sv) in sd.split_vertices.iter().enumerate() {
        let i = lift(sv.orbit);
        let c = orbit_composite(sigma, &sd.automorphism, i, sd.orbits.d_vertex[i]);
        out[k] = root_of_unity_eigenspace_dim(&c, sv.e, sv.j) as u64;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::graph_isomorphic;
    use crate::quiver::{check_automorphism, families::*, is_admissible};

    #[test]
    fn quotient_examples() {
        let q = type_a(3);
        let quo = quotient_quiver(&q, &a_flip(&q).unwrap()).unwrap();
        assert!(graph_isomorphic(&quo, &type_a(2)).is_some());
        let q = type_d(4);
        let quo = quotient_quiver(&q, &d_fork_swap(&q).unwrap()).unwrap();
        assert!(graph_isomorphic(&quo, &type_a(3)).is_some());
        let q = type_d(5);
        assert_eq!(quotient_quiver(&q, &DiagramAutomorphism::identity(&q)).unwrap(), q);
        let q = type_a(4);
        assert!(matches!(
            quotient_quiver(&q, &a_flip(&q).unwrap()),
            Err(Error::NotAdmissible(_, _))
        ));
    }

    #[test]
    fn split_of_d_is_a_and_back() {
        for n in 2..=5 {
            let d = type_d(n + 1);
            let sd = split_quiver(&d, &d_fork_swap(&d).unwrap()).unwrap();
            assert!(graph_isomorphic(&sd.split, &type_a(2 * n - 1)).is_some(), "n={n}");
            assert_eq!(sd.induced.order(), 2);
            check_automorphism(&sd.split, &sd.induced).unwrap();
            assert!(is_admissible(&sd.split, &sd.induced).unwrap());

            let a = type_a(2 * n - 1);
            let sa = split_quiver(&a, &a_flip(&a).unwrap()).unwrap();
            assert!(graph_isomorphic(&sa.split, &type_d(n + 1)).is_some(), "n={n}");
        }
    }

    #[test]
    fn identity_split_is_the_quiver() {
        let q = affine_d(5);
        let sd = split_quiver(&q, &DiagramAutomorphism::identity(&q)).unwrap();
        assert_eq!(sd.split, q);
        assert!(sd.induced.is_identity());
    }

    #[test]
    fn involution_witnesses() {
        let q = type_d(4);
        let w = split_involution_check(&q, &d_fork_swap(&q).unwrap()).unwrap();
        assert_eq!(w.vertex_map.len(), 4);
        let q = type_a(5);
        assert!(split_involution_check(&q, &a_flip(&q).unwrap()).is_ok());
        let q = type_a(4);
        let w = split_involution_check(&q, &DiagramAutomorphism::identity(&q)).unwrap();
        assert_eq!(w.vertex_map, vec![0, 1, 2, 3]);
        let q = type_d(4);
        assert!(split_involution_check(&q, &d4_triality(&q).unwrap()).is_ok());
    }

    #[test]
    fn rotation_by_two_on_affine_a3_has_no_witness() {
        // Orbit periods are all 1 while n = 2, so the split loses the action.
        let q = affine_a(3);
        let rot = affine_a_rotation(&q, 2).unwrap();
        assert!(is_admissible(&q, &rot).unwrap());
        assert_eq!(split_involution_check(&q, &rot), Err(Error::IsoNotFound));
    }

    #[test]
    fn projection_examples() {
        let q = type_d(4);
        let sd = split_quiver(&q, &d_fork_swap(&q).unwrap()).unwrap();
        assert_eq!(sd.split_vertices.len(), 5);
        assert_eq!(project_dim(&[0; 5], &sd).unwrap(), vec![0; 4]);
        assert_eq!(project_dim(&[1; 5], &sd).unwrap(), vec![2, 2, 1, 1]);
        let fork = sd.orbit_offset[sd.orbits.vertex_orbit_of[2]];
        let mut v = vec![0; 5];
        v[fork] = 3;
        assert_eq!(project_dim(&v, &sd).unwrap(), vec![0, 0, 3, 3]);
    }

    #[test]
    fn fiber_examples() {
        let q = type_d(4);
        let sd = split_quiver(&q, &d_fork_swap(&q).unwrap()).unwrap();
        assert_eq!(fibers_of_p(&[1, 1, 1, 1], &sd).unwrap().len(), 4);
        assert_eq!(fibers_of_p(&[0; 4], &sd).unwrap(), vec![vec![0; 5]]);
        assert!(matches!(
            fibers_of_p(&[1, 1, 1, 2], &sd),
            Err(Error::NotOrbitConstant(_))
        ));
        let q = type_a(3);
        let sd = split_quiver(&q, &a_flip(&q).unwrap()).unwrap();
        let f = fibers_of_p(&[1, 2, 1], &sd).unwrap();
        assert_eq!(f, vec![vec![1, 0, 2], vec![1, 1, 1], vec![1, 2, 0]]);
    }

    #[test]
    fn framing_examples() {
        let q = type_a(3);
        let flip = a_flip(&q).unwrap();
        let sd = split_quiver(&q, &flip).unwrap();
        // vertex 2 is fixed with e = 2; orbit {1,3} has e = 1
        let id3 = Matrix::<Q>::identity(3);
        let sigma = vec![id3.clone(), id3.clone(), id3.clone()];
        let w = split_framing(&[3, 3, 3], &sigma, &sd).unwrap();
        let mid = sd.orbit_offset[1];
        assert_eq!((w[mid], w[mid + 1]), (0, 3), "phase 1/2 is -1, phase 2/2 is +1");
        assert_eq!(w[0], 3);

        let one = Matrix::<Q>::identity(1);
        let d = Matrix::<Q>::from_i64(&[&[1, 0], &[0, -1]]);
        let w = split_framing(&[1, 2, 1], &[one.clone(), d, one], &sd).unwrap();
        assert_eq!(w, vec![1, 1, 1]);

        let bad = Matrix::<Q>::from_i64(&[&[2]]);
        let sigma = vec![bad.clone(), bad.clone(), bad];
        assert!(matches!(
            split_framing(&[1, 1, 1], &sigma, &sd),
            Err(Error::SigmaConstraintViolated(_))
        ));
    }

    #[test]
    fn order_three_eigenspaces() {
        let r = Matrix::<Q>::from_i64(&[&[0, -1], &[1, -1]]);
        let dims: Vec<usize> = (1..=3).map(|j| root_of_unity_eigenspace_dim(&r, 3, j)).collect();
        assert_eq!(dims, vec![1, 1, 0]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(0, 0), 1);
    }
}

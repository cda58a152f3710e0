//! Quivers, their doubles and framings, and diagram automorphisms.
//!
//! Vertex and edge ids are opaque strings. The order in which vertices are
//! given is the canonical order used by every downstream computation
//! (dimension vectors, Cartan matrices, orbit numbering).
//!
//! Diagram automorphisms are compared with the incidence of the underlying
//! *undirected* diagram: an edge may be sent to an edge of opposite
//! orientation. The doubled quiver absorbs that asymmetry, see
//! [`DiagramAutomorphism::arrow_lift`].

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(edge id, src id, tgt id)` triples.
    pub fn new<S: Into<String>>(vertices: Vec<S>, edges: Vec<(S, S, S)>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (id, s, t) in edges {
            let (id, s, t): (String, String, String) = (id.into(), s.into(), t.into());
            if seen.insert(id.clone(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate edge {id}")));
            }
            let src = *index.get(&s).ok_or_else(|| Error::UnknownVertex(s.clone()))?;
            let tgt = *index.get(&t).ok_or_else(|| Error::UnknownVertex(t.clone()))?;
            out.push(Edge { id, src, tgt });
        }
        Ok(Quiver {
            vertices,
            edges: out,
            index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn has_self_loop(&self) -> Option<usize> {
        self.edges.iter().find(|e| e.src == e.tgt).map(|e| e.src)
    }

    /// Symmetric matrix of edge counts between vertex pairs, ignoring
    /// orientation. Loops are counted once on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut adj = vec![vec![0u32; n]; n];
        for e in &self.edges {
            adj[e.src][e.tgt] += 1;
            if e.src != e.tgt {
                adj[e.tgt][e.src] += 1;
            }
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.src == v) + usize::from(e.tgt == v))
            .sum()
    }

    pub fn doubled(&self) -> DoubledQuiver {
        build_doubled(self)
    }
}

/// Sign attached to an arrow of the doubled quiver: `+1` on original edges,
/// `-1` on their reversals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reversed,
}

impl Orientation {
    pub fn epsilon(self) -> i64 {
        match self {
            Orientation::Forward => 1,
            Orientation::Reversed => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub edge: usize,
    pub orientation: Orientation,
    pub src: usize,
    pub tgt: usize,
}

/// The doubled quiver. Arrow `2k` is edge `k`, arrow `2k + 1` its reversal,
/// so the reversal pairing is `k ^ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    base: Quiver,
    arrows: Vec<Arrow>,
}

impl DoubledQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn reverse(&self, arrow: usize) -> usize {
        arrow ^ 1
    }

    pub fn epsilon(&self, arrow: usize) -> i64 {
        self.arrows[arrow].orientation.epsilon()
    }

    /// Display name: the edge id, with a trailing `*` on reversed arrows.
    pub fn arrow_name(&self, arrow: usize) -> String {
        let a = &self.arrows[arrow];
        let id = &self.base.edges[a.edge].id;
        match a.orientation {
            Orientation::Forward => id.clone(),
            Orientation::Reversed => format!("{id}*"),
        }
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        (0..self.arrows.len()).find(|&k| self.arrow_name(k) == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&k| self.arrows[k].src == v)
    }
}

pub fn build_doubled(q: &Quiver) -> DoubledQuiver {
    let mut arrows = Vec::with_capacity(2 * q.edge_count());
    for (k, e) in q.edges.iter().enumerate() {
        arrows.push(Arrow {
            edge: k,
            orientation: Orientation::Forward,
            src: e.src,
            tgt: e.tgt,
        });
        arrows.push(Arrow {
            edge: k,
            orientation: Orientation::Reversed,
            src: e.tgt,
            tgt: e.src,
        });
    }
    DoubledQuiver {
        base: q.clone(),
        arrows,
    }
}

/// The framed double: vertex `(i, 0)` carries `V_i`, `(i, 1)` carries `W_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedQuiver {
    doubled: DoubledQuiver,
}

impl FramedQuiver {
    pub fn doubled(&self) -> &DoubledQuiver {
        &self.doubled
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.doubled.base.vertex_count()
    }

    /// One `(W_i -> V_i, V_i -> W_i)` arrow pair per base vertex, given as
    /// `((i, 1), (i, 0))` pairs.
    pub fn framing_pairs(&self) -> Vec<((usize, u8), (usize, u8))> {
        (0..self.doubled.base.vertex_count())
            .map(|i| ((i, 1), (i, 0)))
            .collect()
    }

    pub fn arrow_count(&self) -> usize {
        self.doubled.arrow_count() + 2 * self.doubled.base.vertex_count()
    }
}

pub fn build_framed(q: &Quiver) -> FramedQuiver {
    FramedQuiver {
        doubled: build_doubled(q),
    }
}

/// A pair of permutations of the vertices and edges of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    vertex_perm: Vec<usize>,
    edge_perm: Vec<usize>,
}

impl DiagramAutomorphism {
    /// Unchecked constructor; see [`check_automorphism`].
    pub fn new(vertex_perm: Vec<usize>, edge_perm: Vec<usize>) -> Self {
        DiagramAutomorphism {
            vertex_perm,
            edge_perm,
        }
    }

    pub fn identity(q: &Quiver) -> Self {
        DiagramAutomorphism {
            vertex_perm: (0..q.vertex_count()).collect(),
            edge_perm: (0..q.edge_count()).collect(),
        }
    }

    /// Derives the edge permutation from a vertex permutation. Fails when
    /// some vertex pair carries parallel edges, since the matching between
    /// them is then a genuine choice.
    pub fn from_vertex_perm(q: &Quiver, vertex_perm: Vec<usize>) -> Result<Self> {
        if !is_permutation(&vertex_perm, q.vertex_count()) {
            return Err(Error::NotAPermutation("vertex map".into()));
        }
        let mut edge_perm = Vec::with_capacity(q.edge_count());
        for e in q.edges() {
            let (s, t) = (vertex_perm[e.src], vertex_perm[e.tgt]);
            let candidates: Vec<usize> = q
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, f)| same_ends(f.src, f.tgt, s, t))
                .map(|(k, _)| k)
                .collect();
            match candidates.as_slice() {
                [k] => edge_perm.push(*k),
                [] => {
                    return Err(Error::IncompatibleWithIncidence {
                        edge: e.id.clone(),
                    })
                }
                _ => {
                    return Err(Error::AmbiguousEdgeMap(
                        q.vertex_id(s).into(),
                        q.vertex_id(t).into(),
                    ))
                }
            }
        }
        let a = DiagramAutomorphism {
            vertex_perm,
            edge_perm,
        };
        check_automorphism(q, &a)?;
        Ok(a)
    }

    /// Builds from id-to-id maps, as read from JSON.
    pub fn from_id_maps(
        q: &Quiver,
        vertices: &[(String, String)],
        edges: &[(String, String)],
    ) -> Result<Self> {
        let mut vp = vec![usize::MAX; q.vertex_count()];
        for (a, b) in vertices {
            vp[q.vertex_index(a)?] = q.vertex_index(b)?;
        }
        let mut ep = vec![usize::MAX; q.edge_count()];
        for (a, b) in edges {
            let i = q
                .edge_index(a)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown edge {a}")))?;
            let j = q
                .edge_index(b)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown edge {b}")))?;
            ep[i] = j;
        }
        Ok(DiagramAutomorphism::new(vp, ep))
    }

    pub fn vertex_perm(&self) -> &[usize] {
        &self.vertex_perm
    }

    pub fn edge_perm(&self) -> &[usize] {
        &self.edge_perm
    }

    pub fn vertex(&self, i: usize) -> usize {
        self.vertex_perm[i]
    }

    pub fn edge(&self, e: usize) -> usize {
        self.edge_perm[e]
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_perm.iter().enumerate().all(|(i, &j)| i == j)
            && self.edge_perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Order of the automorphism: lcm of all cycle lengths.
    pub fn order(&self) -> usize {
        cycle_lengths(&self.vertex_perm)
            .into_iter()
            .chain(cycle_lengths(&self.edge_perm))
            .fold(1, |acc, l| acc.lcm(&l))
    }

    pub fn compose(&self, other: &Self) -> Self {
        // (self . other)(x) = self(other(x))
        DiagramAutomorphism {
            vertex_perm: other.vertex_perm.iter().map(|&i| self.vertex_perm[i]).collect(),
            edge_perm: other.edge_perm.iter().map(|&e| self.edge_perm[e]).collect(),
        }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut acc = DiagramAutomorphism {
            vertex_perm: (0..self.vertex_perm.len()).collect(),
            edge_perm: (0..self.edge_perm.len()).collect(),
        };
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn inverse(&self) -> Self {
        let mut vp = vec![0; self.vertex_perm.len()];
        for (i, &j) in self.vertex_perm.iter().enumerate() {
            vp[j] = i;
        }
        let mut ep = vec![0; self.edge_perm.len()];
        for (i, &j) in self.edge_perm.iter().enumerate() {
            ep[j] = i;
        }
        DiagramAutomorphism {
            vertex_perm: vp,
            edge_perm: ep,
        }
    }

    /// Whether the edge `e` is sent to an edge traversed against its own
    /// orientation.
    pub fn reverses(&self, q: &Quiver, e: usize) -> bool {
        let src = &q.edges()[e];
        let img = &q.edges()[self.edge_perm[e]];
        img.src != img.tgt && img.src != self.vertex_perm[src.src]
    }

    /// Lift to the doubled quiver: arrow images and signs keeping the
    /// signed preprojective relation invariant.
    ///
    /// An arrow on an orientation-preserving edge goes to the same kind of
    /// arrow; on an orientation-reversing edge it goes to the other kind.
    /// Signs satisfy `sign(h) * sign(h*) = -1` exactly on reversing edges,
    /// and are chosen so that each cycle of the arrow permutation has sign
    /// product `+1`, which is possible whenever every edge orbit contains
    /// an even number of reversing edges (always the case for admissible
    /// automorphisms). Then the lift has the same order as `a`.
    pub fn arrow_lift(&self, d: &DoubledQuiver) -> ArrowLift {
        let q = d.base();
        let m = d.arrow_count();
        let image: Vec<usize> = (0..m)
            .map(|k| {
                let e = k / 2;
                let flip = usize::from(self.reverses(q, e));
                2 * self.edge_perm[e] + ((k & 1) ^ flip)
            })
            .collect();
        let mut sign = vec![0i64; m];
        for start in 0..m {
            if sign[start] != 0 {
                continue;
            }
            // walk the cycle of `start`, fixing +1 on it; the partner cycle
            // gets the signs forced by the reversal rule
            let mut k = start;
            loop {
                if sign[k] != 0 {
                    break;
                }
                sign[k] = 1;
                let partner = k ^ 1;
                if sign[partner] == 0 {
                    sign[partner] = if self.reverses(q, k / 2) { -1 } else { 1 };
                }
                k = image[k];
            }
        }
        ArrowLift { image, sign }
    }
}

/// Images and signs of doubled-quiver arrows under a diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowLift {
    pub image: Vec<usize>,
    pub sign: Vec<i64>,
}

fn same_ends(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a == c && b == d) || (a == d && b == c)
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
            if x >= p.len() {
                break;
            }
        }
        out.push(len);
    }
    out
}

/// Checks that both maps are bijections and that every edge `e` joins the
/// images of its endpoints, i.e. `{s(a(e)), t(a(e))} = {a(s(e)), a(t(e))}`.
pub fn check_automorphism(q: &Quiver, a: &DiagramAutomorphism) -> Result<()> {
    if !is_permutation(&a.vertex_perm, q.vertex_count()) {
        return Err(Error::NotAPermutation("vertex map".into()));
    }
    if !is_permutation(&a.edge_perm, q.edge_count()) {
        return Err(Error::NotAPermutation("edge map".into()));
    }
    for (k, e) in q.edges().iter().enumerate() {
        let img = &q.edges()[a.edge_perm[k]];
        if !same_ends(img.src, img.tgt, a.vertex_perm[e.src], a.vertex_perm[e.tgt]) {
            return Err(Error::IncompatibleWithIncidence { edge: e.id.clone() });
        }
    }
    Ok(())
}

/// True iff no edge joins two vertices of the same orbit.
pub fn is_admissible(q: &Quiver, a: &DiagramAutomorphism) -> Result<bool> {
    Ok(first_inadmissible_edge(q, a)?.is_none())
}

pub(crate) fn first_inadmissible_edge(
    q: &Quiver,
    a: &DiagramAutomorphism,
) -> Result<Option<(usize, usize)>> {
    let od = orbit_data(q, a)?;
    Ok(q
        .edges()
        .iter()
        .find(|e| od.vertex_orbit_of[e.src] == od.vertex_orbit_of[e.tgt])
        .map(|e| (e.src, e.tgt)))
}

pub(crate) fn require_admissible(q: &Quiver, a: &DiagramAutomorphism) -> Result<()> {
    match first_inadmissible_edge(q, a)? {
        None => Ok(()),
        Some((s, t)) => Err(Error::NotAdmissible(
            q.vertex_id(s).into(),
            q.vertex_id(t).into(),
        )),
    }
}

/// Orbits of `<a>` on vertices and edges with their sizes.
///
/// Orbits are numbered by their smallest member, and each orbit is listed
/// as `i, a(i), a^2(i), ...` starting from that member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub vertex_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<Vec<usize>>,
    pub vertex_orbit_of: Vec<usize>,
    pub edge_orbit_of: Vec<usize>,
    /// Orbit size `d_i` per vertex.
    pub d_vertex: Vec<usize>,
    /// Orbit size `d_h` per edge.
    pub d_edge: Vec<usize>,
    /// lcm of all orbit sizes.
    pub n: usize,
    pub e_vertex: Vec<usize>,
    pub e_edge: Vec<usize>,
}

impl OrbitData {
    pub fn vertex_orbit_count(&self) -> usize {
        self.vertex_orbits.len()
    }

    /// `e_i` for a vertex orbit.
    pub fn orbit_e(&self, orbit: usize) -> usize {
        self.e_vertex[self.vertex_orbits[orbit][0]]
    }

    /// Smallest vertex of the orbit, used as its lift.
    pub fn lift(&self, orbit: usize) -> usize {
        self.vertex_orbits[orbit][0]
    }
}

fn orbits_of(p: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut of = vec![usize::MAX; p.len()];
    let mut orbits = Vec::new();
    for start in 0..p.len() {
        if of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        of[start] = id;
        let mut x = p[start];
        while x != start {
            of[x] = id;
            orbit.push(x);
            x = p[x];
        }
        orbits.push(orbit);
    }
    (orbits, of)
}

pub fn orbit_data(q: &Quiver, a: &DiagramAutomorphism) -> Result<OrbitData> {
    check_automorphism(q, a)?;
    let (vertex_orbits, vertex_orbit_of) = orbits_of(&a.vertex_perm);
    let (edge_orbits, edge_orbit_of) = orbits_of(&a.edge_perm);
    let d_vertex: Vec<usize> = vertex_orbit_of.iter().map(|&o| vertex_orbits[o].len()).collect();
    let d_edge: Vec<usize> = edge_orbit_of.iter().map(|&o| edge_orbits[o].len()).collect();
    let n = d_vertex
        .iter()
        .chain(&d_edge)
        .fold(1usize, |acc, &d| acc.lcm(&d));
    Ok(OrbitData {
        e_vertex: d_vertex.iter().map(|d| n / d).collect(),
        e_edge: d_edge.iter().map(|d| n / d).collect(),
        vertex_orbits,
        edge_orbits,
        vertex_orbit_of,
        edge_orbit_of,
        d_vertex,
        d_edge,
        n,
    })
}

/// Named diagrams with fixed labelings.
///
/// * `A_n`: vertices `1..=n`, edges `e1..e(n-1)` with `ek: k -> k+1`.
/// * `D_n`: a path `1 - ... - (n-2)` with `n-1` and `n` both attached to
///   `n-2`. Edges `ek: k -> k+1` for `k <= n-2`, and `e(n-1): (n-2) -> n`.
/// * affine `A_n`: an `(n+1)`-cycle on `0..=n`, `ek: k -> k+1 mod n+1`;
///   for `n = 1` two parallel edges between `0` and `1`.
/// * affine `D_n`: vertices `0..=n`, `0` and `1` attached to `2`, a path
///   `2 - ... - (n-2)`, and `n-1`, `n` attached to `n-2`.
pub mod families {
    use super::*;

    fn labels(range: impl Iterator<Item = usize>) -> Vec<String> {
        range.map(|i| i.to_string()).collect()
    }

    fn build(vertices: Vec<String>, edges: Vec<(usize, usize)>, one_based: bool) -> Quiver {
        let off = usize::from(one_based);
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(k, (s, t))| {
                (
                    format!("e{}", k + off),
                    vertices[s].clone(),
                    vertices[t].clone(),
                )
            })
            .collect();
        Quiver::new(vertices, edges).expect("named family is well formed")
    }

    pub fn type_a(n: usize) -> Quiver {
        assert!(n >= 1);
        build(labels(1..=n), (0..n - 1).map(|k| (k, k + 1)).collect(), true)
    }

    pub fn type_d(n: usize) -> Quiver {
        assert!(n >= 3, "D_n needs n >= 3");
        let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|k| (k, k + 1)).collect();
        edges.push((n - 3, n - 1));
        build(labels(1..=n), edges, true)
    }

    pub fn affine_a(n: usize) -> Quiver {
        assert!(n >= 1);
        let edges = if n == 1 {
            vec![(0, 1), (1, 0)]
        } else {
            (0..=n).map(|k| (k, (k + 1) % (n + 1))).collect()
        };
        build(labels(0..=n), edges, false)
    }

    pub fn affine_d(n: usize) -> Quiver {
        assert!(n >= 4, "affine D_n needs n >= 4");
        let mut edges = vec![(0, 2), (1, 2)];
        edges.extend((2..n - 2).map(|k| (k, k + 1)));
        edges.push((n - 2, n - 1));
        edges.push((n - 2, n));
        build(labels(0..=n), edges, false)
    }

    pub fn edgeless(n: usize) -> Quiver {
        build(labels(1..=n), Vec::new(), true)
    }

    /// `i -> n + 1 - i` on `A_n`.
    pub fn a_flip(q: &Quiver) -> Result<DiagramAutomorphism> {
        let n = q.vertex_count();
        DiagramAutomorphism::from_vertex_perm(q, (0..n).map(|i| n - 1 - i).collect())
    }

    /// Swap of the two fork vertices `n-1`, `n` of `D_n`.
    pub fn d_fork_swap(q: &Quiver) -> Result<DiagramAutomorphism> {
        let n = q.vertex_count();
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(n - 2, n - 1);
        DiagramAutomorphism::from_vertex_perm(q, p)
    }

    /// The order-three rotation `1 -> 3 -> 4 -> 1` of `D_4`.
    pub fn d4_triality(q: &Quiver) -> Result<DiagramAutomorphism> {
        DiagramAutomorphism::from_vertex_perm(q, vec![2, 1, 3, 0])
    }

    /// `i -> -i mod (n+1)` on affine `A_n`.
    pub fn affine_a_reflection(q: &Quiver) -> Result<DiagramAutomorphism> {
        let m = q.vertex_count();
        DiagramAutomorphism::from_vertex_perm(q, (0..m).map(|i| (m - i) % m).collect())
    }

    /// `i -> i + k mod (n+1)` on affine `A_n`, `n >= 2`.
    pub fn affine_a_rotation(q: &Quiver, k: usize) -> Result<DiagramAutomorphism> {
        let m = q.vertex_count();
        DiagramAutomorphism::from_vertex_perm(q, (0..m).map(|i| (i + k) % m).collect())
    }

    /// Swaps `0 <-> 1` and `n-1 <-> n` on affine `D_n`.
    pub fn affine_d_double_swap(q: &Quiver) -> Result<DiagramAutomorphism> {
        let m = q.vertex_count();
        let mut p: Vec<usize> = (0..m).collect();
        p.swap(0, 1);
        p.swap(m - 2, m - 1);
        DiagramAutomorphism::from_vertex_perm(q, p)
    }
}

/// JSON form of a quiver with an optional automorphism.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<AutomorphismJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<serde_json::Map<String, serde_json::Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub vertices: serde_json::Map<String, serde_json::Value>,
    pub edges: serde_json::Map<String, serde_json::Value>,
}

fn map_pairs(m: &serde_json::Map<String, serde_json::Value>) -> Result<Vec<(String, String)>> {
    m.iter()
        .map(|(k, v)| {
            v.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| Error::Json(format!("automorphism entry {k} is not a string")))
        })
        .collect()
}

impl QuiverJson {
    pub fn from_quiver(q: &Quiver, a: Option<&DiagramAutomorphism>) -> Self {
        QuiverJson {
            vertices: q.vertices().to_vec(),
            edges: q
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: e.id.clone(),
                    src: q.vertex_id(e.src).into(),
                    tgt: q.vertex_id(e.tgt).into(),
                })
                .collect(),
            automorphism: a.map(|a| AutomorphismJson {
                vertices: (0..q.vertex_count())
                    .map(|i| (q.vertex_id(i).to_string(), q.vertex_id(a.vertex(i)).into()))
                    .collect(),
                edges: (0..q.edge_count())
                    .map(|k| {
                        (
                            q.edges()[k].id.clone(),
                            q.edges()[a.edge(k)].id.clone().into(),
                        )
                    })
                    .collect(),
            }),
            labels: None,
        }
    }

    /// Parses into a quiver and an automorphism; a missing automorphism is
    /// read as the identity.
    pub fn to_quiver(&self) -> Result<(Quiver, DiagramAutomorphism)> {
        let q = Quiver::new(
            self.vertices.clone(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.src.clone(), e.tgt.clone()))
                .collect(),
        )?;
        let a = match &self.automorphism {
            None => DiagramAutomorphism::identity(&q),
            Some(aj) => {
                let a = DiagramAutomorphism::from_id_maps(&q, &map_pairs(&aj.vertices)?, &map_pairs(&aj.edges)?)?;
                check_automorphism(&q, &a)?;
                a
            }
        };
        Ok((q, a))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

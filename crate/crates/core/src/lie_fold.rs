//! Cartan matrices, type recognition, folding by a diagram automorphism,
//! and a matrix-level check of Chevalley-Serre relations.
//!
//! Convention: `c(i, j) = <alpha_i, alpha_j^vee>`, so `c * diag(d)` is
//! symmetric for the symmetrizer `d` (half squared root lengths), the
//! generators satisfy `[H_i, E_j] = c(j, i) E_j`, and the Serre relations
//! read `ad(E_i)^(1 - c(j, i)) E_j = 0`. Under this convention
//! `[[2, -1], [-2, 2]]` is `C_2` and `[[2, -2], [-1, 2]]` is `B_2`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{q, Q};
use crate::matrix::Matrix;
use crate::quiver::{families, orbit_data, DiagramAutomorphism, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    labels: Vec<String>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        let n = entries.len();
        if labels.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan("not square or labels mismatch".into()));
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j && (entries[i][j] > 0 || (entries[i][j] == 0) != (entries[j][i] == 0)) {
                    return Err(Error::InvalidCartan(format!("bad off-diagonal pair ({i},{j})")));
                }
            }
        }
        Ok(CartanMatrix { entries, labels })
    }

    /// Labels default to `1..=n`.
    pub fn from_rows(entries: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (1..=entries.len()).map(|i| i.to_string()).collect();
        CartanMatrix::new(entries, labels)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn transpose(&self) -> Self {
        let n = self.rank();
        CartanMatrix {
            entries: (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_matrix(&self) -> Matrix<Q> {
        let n = self.rank();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, q(self.entries[i][j]));
            }
        }
        m
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        // new index k holds old index perm[k]
        let n = self.rank();
        CartanMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| self.entries[perm[i]][perm[j]]).collect())
                .collect(),
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }

    /// Positive integer `d` with `c * diag(d)` symmetric, normalised so the
    /// entries on each connected component are coprime. `None` when the
    /// matrix is not symmetrizable.
    pub fn symmetrizer(&self) -> Option<Vec<i64>> {
        let n = self.rank();
        let mut d: Vec<Option<Q>> = vec![None; n];
        for root in 0..n {
            if d[root].is_some() {
                continue;
            }
            let mut component = vec![root];
            d[root] = Some(q(1));
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    // c(i,j) d_j = c(j,i) d_i
                    let dj = d[i].clone().unwrap() * q(self.entries[j][i]) / q(self.entries[i][j]);
                    match &d[j] {
                        Some(x) if *x != dj => return None,
                        Some(_) => {}
                        None => {
                            d[j] = Some(dj);
                            component.push(j);
                            stack.push(j);
                        }
                    }
                }
            }
            let den = component
                .iter()
                .fold(num_bigint::BigInt::from(1), |acc, &i| acc.lcm(d[i].as_ref().unwrap().denom()));
            let ints: Vec<num_bigint::BigInt> = component
                .iter()
                .map(|&i| (d[i].clone().unwrap() * Q::from_integer(den.clone())).to_integer())
                .collect();
            let g = ints.iter().fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x));
            for (&i, x) in component.iter().zip(ints) {
                d[i] = Some(Q::from_integer(x / &g));
            }
        }
        d.into_iter()
            .map(|x| crate::field::q_to_i64(&x.unwrap()))
            .collect()
    }

    /// `c * diag(d)`.
    pub fn symmetrized(&self) -> Option<Vec<Vec<i64>>> {
        let d = self.symmetrizer()?;
        let n = self.rank();
        Some(
            (0..n)
                .map(|i| (0..n).map(|j| self.entries[i][j] * d[j]).collect())
                .collect(),
        )
    }

    fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&j| j != i && self.entries[i][j] != 0)
            .collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbours(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

impl Serialize for CartanMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// Two times the identity minus the undirected adjacency.
pub fn cartan_from_quiver(q: &Quiver) -> Result<CartanMatrix> {
    if let Some(v) = q.has_self_loop() {
        return Err(Error::SelfLoop(q.vertex_id(v).into()));
    }
    let adj = q.adjacency();
    let n = q.vertex_count();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 } else { -i64::from(adj[i][j]) })
                .collect()
        })
        .collect();
    CartanMatrix::new(entries, q.vertices().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    AffineA,
    AffineD,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Self {
        TypeLabel { family, rank }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.family, Family::AffineA | Family::AffineD | Family::Other)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::AffineA => "affine-A",
            Family::AffineD => "affine-D",
            Family::Other => return write!(f, "other({})", self.rank),
        };
        write!(f, "{name}_{}", self.rank)
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn positive_definite(sym: &[Vec<i64>]) -> bool {
    let n = sym.len();
    (1..=n).all(|k| {
        let m = Matrix::<Q>::from_rows(
            (0..k).map(|i| (0..k).map(|j| q(sym[i][j])).collect()).collect(),
        );
        m.determinant() > q(0)
    })
}

/// Recognises connected finite types (Bourbaki numbering), untwisted affine
/// `A` and `D`, and reports everything else as `Other`.
pub fn classify_cartan(c: &CartanMatrix) -> TypeLabel {
    let n = c.rank();
    let other = TypeLabel::new(Family::Other, n);
    if n == 0 || !c.is_connected() {
        return other;
    }
    let Some(sym) = c.symmetrized() else {
        return other;
    };
    if positive_definite(&sym) {
        return classify_finite(c).unwrap_or(other);
    }
    if c.to_matrix().determinant() == q(0) {
        return classify_affine(c).unwrap_or(other);
    }
    other
}

fn bond(c: &CartanMatrix, i: usize, j: usize) -> i64 {
    c.get(i, j) * c.get(j, i)
}

fn classify_finite(c: &CartanMatrix) -> Option<TypeLabel> {
    let n = c.rank();
    if n == 1 {
        return Some(TypeLabel::new(Family::A, 1));
    }
    let degrees: Vec<usize> = (0..n).map(|i| c.neighbours(i).len()).collect();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| c.get(i, j) != 0)
        .collect();
    if edges.len() != n - 1 {
        return None;
    }
    let heavy: Vec<(usize, usize)> = edges.iter().copied().filter(|&(i, j)| bond(c, i, j) > 1).collect();
    let branch: Vec<usize> = (0..n).filter(|&i| degrees[i] >= 3).collect();
    match (heavy.as_slice(), branch.as_slice()) {
        ([], []) => Some(TypeLabel::new(Family::A, n)),
        ([], [b]) => {
            if degrees[*b] != 3 {
                return None;
            }
            let mut arms: Vec<usize> = c.neighbours(*b).into_iter().map(|s| arm_length(c, *b, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(TypeLabel::new(Family::D, n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(TypeLabel::new(Family::E, n)),
                _ => None,
            }
        }
        ([(i, j)], []) => {
            let (i, j) = (*i, *j);
            match bond(c, i, j) {
                3 if n == 2 => Some(TypeLabel::new(Family::G, 2)),
                2 if n == 2 => {
                    // Bourbaki C_2 has its first root short
                    if c.get(0, 1) == -1 {
                        Some(TypeLabel::new(Family::C, 2))
                    } else {
                        Some(TypeLabel::new(Family::B, 2))
                    }
                }
                2 => {
                    let (end, inner) = if degrees[i] == 1 {
                        (i, j)
                    } else if degrees[j] == 1 {
                        (j, i)
                    } else {
                        return (n == 4).then(|| TypeLabel::new(Family::F, 4));
                    };
                    // c(inner, end) = -2 means the end root is short
                    if c.get(inner, end) == -2 {
                        Some(TypeLabel::new(Family::B, n))
                    } else {
                        Some(TypeLabel::new(Family::C, n))
                    }
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_length(c: &CartanMatrix, from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = c.neighbours(cur).into_iter().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [x] => {
                prev = cur;
                cur = *x;
                len += 1;
            }
            _ => return len,
        }
    }
}

fn classify_affine(c: &CartanMatrix) -> Option<TypeLabel> {
    let n = c.rank();
    let simply_laced = (0..n).all(|i| (0..n).all(|j| i == j || c.get(i, j) == c.get(j, i)));
    if !simply_laced {
        return None;
    }
    if n == 2 && c.get(0, 1) == -2 {
        return Some(TypeLabel::new(Family::AffineA, 1));
    }
    if (0..n).any(|i| (0..n).any(|j| i != j && c.get(i, j) < -1)) {
        return None;
    }
    let degrees: Vec<usize> = (0..n).map(|i| c.neighbours(i).len()).collect();
    let edge_count: usize = degrees.iter().sum::<usize>() / 2;
    if edge_count == n && degrees.iter().all(|&d| d == 2) {
        return Some(TypeLabel::new(Family::AffineA, n - 1));
    }
    if edge_count != n - 1 {
        return None;
    }
    let leaves_around = |b: usize| c.neighbours(b).into_iter().filter(|&x| degrees[x] == 1).count();
    let branch: Vec<usize> = (0..n).filter(|&i| degrees[i] >= 3).collect();
    match branch.as_slice() {
        [b] if n == 5 && degrees[*b] == 4 => Some(TypeLabel::new(Family::AffineD, 4)),
        [b1, b2] if degrees[*b1] == 3 && degrees[*b2] == 3 && leaves_around(*b1) == 2 && leaves_around(*b2) == 2 => {
            Some(TypeLabel::new(Family::AffineD, n - 1))
        }
        _ => None,
    }
}

/// A Cartan matrix folded along the orbits of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedAlgebraData {
    pub base: CartanMatrix,
    /// Orbits ordered by smallest member, each listed from that member.
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    pub folded: CartanMatrix,
    pub symmetrizer: Vec<i64>,
}

/// Folds `c` along the vertex orbits of `a`: entry `([i], [j])` is the sum
/// of `c(i0, k)` over `k` in `[j]`, for any representative `i0`.
pub fn fold_cartan(c: &CartanMatrix, a: &DiagramAutomorphism) -> Result<FoldedAlgebraData> {
    let n = c.rank();
    let p = a.vertex_perm();
    if p.len() != n {
        return Err(Error::DimensionMismatch(format!("automorphism on {} vertices, Cartan rank {n}", p.len())));
    }
    for i in 0..n {
        for j in 0..n {
            if c.get(p[i], p[j]) != c.get(i, j) {
                return Err(Error::InvalidCartan("automorphism does not preserve the matrix".into()));
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let mut o = vec![s];
        orbit_of[s] = orbits.len();
        let mut x = p[s];
        while x != s {
            orbit_of[x] = orbits.len();
            o.push(x);
            x = p[x];
        }
        orbits.push(o);
    }
    for o in &orbits {
        for &x in o {
            for &y in o {
                if x != y && c.get(x, y) != 0 {
                    return Err(Error::NotAdmissible(c.labels[x].clone(), c.labels[y].clone()));
                }
            }
        }
    }
    let m = orbits.len();
    let row = |i0: usize, oj: usize| -> i64 { orbits[oj].iter().map(|&k| c.get(i0, k)).sum() };
    let mut entries = vec![vec![0i64; m]; m];
    for (oi, members) in orbits.iter().enumerate() {
        for oj in 0..m {
            let v = row(members[0], oj);
            if members.iter().any(|&r| row(r, oj) != v) {
                return Err(Error::RepresentativeDependence(oi));
            }
            entries[oi][oj] = v;
        }
    }
    let labels = orbits
        .iter()
        .map(|o| {
            let mut ids: Vec<usize> = o.clone();
            ids.sort_unstable();
            ids.iter().map(|&i| c.labels[i].as_str()).collect::<Vec<_>>().join("|")
        })
        .collect();
    let folded = CartanMatrix::new(entries, labels)?;
    let symmetrizer = folded
        .symmetrizer()
        .ok_or_else(|| Error::InvalidCartan("folded matrix is not symmetrizable".into()))?;
    Ok(FoldedAlgebraData {
        base: c.clone(),
        orbits,
        orbit_of,
        folded,
        symmetrizer,
    })
}

/// Lists of `E`, `F`, `H` matrices indexed by simple roots.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators {
    pub e: Vec<Matrix<Q>>,
    pub f: Vec<Matrix<Q>>,
    pub h: Vec<Matrix<Q>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimplyLaced {
    A,
    D,
}

fn unit(n: usize, r: usize, c: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    m.set(r, c, q(1));
    m
}

/// Chevalley generators in the defining representation: `sl(n+1)` for
/// `A_n`, and `so(2n)` on the basis `1..n, -n..-1` for `D_n`, labelled as
/// [`families::type_d`].
pub fn defining_generators(rank: usize, family: SimplyLaced) -> Result<Generators> {
    let e: Vec<Matrix<Q>> = match family {
        SimplyLaced::A => {
            if rank == 0 {
                return Err(Error::UnsupportedFamily(format!("A_{rank}")));
            }
            (0..rank).map(|i| unit(rank + 1, i, i + 1)).collect()
        }
        SimplyLaced::D => {
            if rank < 3 {
                return Err(Error::UnsupportedFamily(format!("D_{rank}")));
            }
            let dim = 2 * rank;
            // index of basis vector i (1..=n) and -i
            let pos = |i: usize| i - 1;
            let neg = |i: usize| dim - i;
            let mut gens: Vec<Matrix<Q>> = (1..rank)
                .map(|i| &unit(dim, pos(i), pos(i + 1)) - &unit(dim, neg(i + 1), neg(i)))
                .collect();
            gens.push(&unit(dim, pos(rank - 1), neg(rank)) - &unit(dim, pos(rank), neg(rank - 1)));
            gens
        }
    };
    let f: Vec<Matrix<Q>> = e.iter().map(Matrix::transpose).collect();
    let h = e.iter().zip(&f).map(|(x, y)| x.commutator(y)).collect();
    Ok(Generators { e, f, h })
}

pub fn family_quiver(rank: usize, family: SimplyLaced) -> Quiver {
    match family {
        SimplyLaced::A => families::type_a(rank),
        SimplyLaced::D => families::type_d(rank),
    }
}

/// `E'_[i]` is the sum of `E_k` over the orbit `[i]`, likewise for `F'`,
/// and `H' = [E', F']`. Orbits are ordered as in [`fold_cartan`].
pub fn folded_generators(rank: usize, family: SimplyLaced, a: &DiagramAutomorphism) -> Result<Generators> {
    let base = defining_generators(rank, family)?;
    let quiver = family_quiver(rank, family);
    let od = orbit_data(&quiver, a)?;
    let sum = |ms: &[Matrix<Q>], orbit: &[usize]| -> Matrix<Q> {
        orbit.iter().skip(1).fold(ms[orbit[0]].clone(), |acc, &k| &acc + &ms[k])
    };
    let e: Vec<Matrix<Q>> = od.vertex_orbits.iter().map(|o| sum(&base.e, o)).collect();
    let f: Vec<Matrix<Q>> = od.vertex_orbits.iter().map(|o| sum(&base.f, o)).collect();
    let h = e.iter().zip(&f).map(|(x, y)| x.commutator(y)).collect();
    Ok(Generators { e, f, h })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `[H_i, H_j] = 0`
    HH(usize, usize),
    /// `[H_i, E_j] = c(j, i) E_j`
    HE(usize, usize),
    /// `[H_i, F_j] = -c(j, i) F_j`
    HF(usize, usize),
    /// `[E_i, F_j] = delta_ij H_i`
    EF(usize, usize),
    /// `ad(E_i)^(1 - c(j, i)) E_j = 0`
    SerreE(usize, usize),
    /// `ad(F_i)^(1 - c(j, i)) F_j = 0`
    SerreF(usize, usize),
}

impl Relation {
    pub fn is_serre(&self) -> bool {
        matches!(self, Relation::SerreE(..) | Relation::SerreF(..))
    }
}

fn ad_power(x: &Matrix<Q>, y: &Matrix<Q>, k: i64) -> Matrix<Q> {
    (0..k).fold(y.clone(), |acc, _| x.commutator(&acc))
}

/// Every violated relation, in the order listed by [`Relation`].
pub fn serre_violations(c: &CartanMatrix, g: &Generators) -> Result<Vec<Relation>> {
    let n = c.rank();
    if g.e.len() != n || g.f.len() != n || g.h.len() != n {
        return Err(Error::DimensionMismatch(format!("{n} simple roots but generator lists of lengths {}, {}, {}", g.e.len(), g.f.len(), g.h.len())));
    }
    let dim = g.e.first().map_or(0, Matrix::rows);
    if g.e.iter().chain(&g.f).chain(&g.h).any(|m| m.shape() != (dim, dim)) {
        return Err(Error::DimensionMismatch("generator matrices differ in size".into()));
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !g.h[i].commutator(&g.h[j]).is_zero() {
                out.push(Relation::HH(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let s = q(c.get(j, i));
            if g.h[i].commutator(&g.e[j]) != g.e[j].scale(&s) {
                out.push(Relation::HE(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let s = q(-c.get(j, i));
            if g.h[i].commutator(&g.f[j]) != g.f[j].scale(&s) {
                out.push(Relation::HF(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j { g.h[i].clone() } else { Matrix::zeros(dim, dim) };
            if g.e[i].commutator(&g.f[j]) != expect {
                out.push(Relation::EF(i, j));
            }
        }
    }
    for (gens, kind) in [(&g.e, Relation::SerreE as fn(usize, usize) -> Relation), (&g.f, Relation::SerreF)] {
        for i in 0..n {
            for j in 0..n {
                if i != j && !ad_power(&gens[i], &gens[j], 1 - c.get(j, i)).is_zero() {
                    out.push(kind(i, j));
                }
            }
        }
    }
    Ok(out)
}

/// First violated relation, or `None` when all hold.
pub fn serre_check(c: &CartanMatrix, g: &Generators) -> Result<Option<Relation>> {
    Ok(serre_violations(c, g)?.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::families::*;

    fn rows(c: &CartanMatrix) -> Vec<Vec<i64>> {
        c.entries().to_vec()
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(rows(&cartan_from_quiver(&type_a(2)).unwrap()), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(rows(&cartan_from_quiver(&affine_a(1)).unwrap()), vec![vec![2, -2], vec![-2, 2]]);
        let d4 = cartan_from_quiver(&type_d(4)).unwrap();
        assert_eq!(d4.entries()[1], vec![-1, 2, -1, -1]);
        let looped = Quiver::new(vec!["x"], vec![("l", "x", "x")]).unwrap();
        assert!(matches!(cartan_from_quiver(&looped), Err(Error::SelfLoop(_))));
    }

    #[test]
    fn classification_examples() {
        let label = |q: &Quiver| classify_cartan(&cartan_from_quiver(q).unwrap()).to_string();
        assert_eq!(label(&type_a(5)), "A_5");
        assert_eq!(label(&type_d(4)), "D_4");
        assert_eq!(label(&type_d(3)), "A_3");
        assert_eq!(label(&affine_a(1)), "affine-A_1");
        assert_eq!(label(&affine_a(4)), "affine-A_4");
        assert_eq!(label(&affine_d(4)), "affine-D_4");
        assert_eq!(label(&affine_d(6)), "affine-D_6");
        let c2 = CartanMatrix::from_rows(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(classify_cartan(&c2).to_string(), "C_2");
        let b2 = CartanMatrix::from_rows(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(classify_cartan(&b2).to_string(), "B_2");
        let g2 = CartanMatrix::from_rows(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(classify_cartan(&g2).to_string(), "G_2");
        let f4 = CartanMatrix::from_rows(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ])
        .unwrap();
        assert_eq!(classify_cartan(&f4).to_string(), "F_4");
        let hyperbolic = CartanMatrix::from_rows(vec![vec![2, -3], vec![-3, 2]]).unwrap();
        assert_eq!(classify_cartan(&hyperbolic).family, Family::Other);
    }

    #[test]
    fn e_series_by_arm_lengths() {
        for (n, fam) in [(6, Family::E), (7, Family::E), (8, Family::E)] {
            // branch at vertex 3 of a path 1..n-1, extra vertex n attached to 3
            let mut edges: Vec<(String, String, String)> =
                (1..n - 1).map(|k| (format!("e{k}"), k.to_string(), (k + 1).to_string())).collect();
            edges.push(("x".into(), "3".into(), n.to_string()));
            let q = Quiver::new((1..=n).map(|i| i.to_string()).collect(), edges).unwrap();
            assert_eq!(classify_cartan(&cartan_from_quiver(&q).unwrap()), TypeLabel::new(fam, n));
        }
    }

    #[test]
    fn folding_table_low_rank() {
        let q = type_a(3);
        let f = fold_cartan(&cartan_from_quiver(&q).unwrap(), &a_flip(&q).unwrap()).unwrap();
        assert_eq!(rows(&f.folded), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(f.orbits, vec![vec![0, 2], vec![1]]);
        assert_eq!(classify_cartan(&f.folded).to_string(), "C_2");

        let q = type_d(4);
        let f = fold_cartan(&cartan_from_quiver(&q).unwrap(), &d_fork_swap(&q).unwrap()).unwrap();
        assert_eq!(classify_cartan(&f.folded).to_string(), "B_3");

        let q = type_d(3);
        let f = fold_cartan(&cartan_from_quiver(&q).unwrap(), &d_fork_swap(&q).unwrap()).unwrap();
        assert_eq!(rows(&f.folded), vec![vec![2, -2], vec![-1, 2]]);

        let q = type_d(4);
        let f = fold_cartan(&cartan_from_quiver(&q).unwrap(), &d4_triality(&q).unwrap()).unwrap();
        assert_eq!(classify_cartan(&f.folded).to_string(), "G_2");
    }

    #[test]
    fn folding_rejects_inadmissible() {
        let q = type_a(4);
        let c = cartan_from_quiver(&q).unwrap();
        assert!(matches!(fold_cartan(&c, &a_flip(&q).unwrap()), Err(Error::NotAdmissible(_, _))));
    }

    #[test]
    fn a1_triple_passes() {
        let g = defining_generators(1, SimplyLaced::A).unwrap();
        let c = cartan_from_quiver(&type_a(1)).unwrap();
        assert_eq!(serre_check(&c, &g).unwrap(), None);
    }

    #[test]
    fn folded_a3_generators_are_orbit_sums() {
        let q = type_a(3);
        let flip = a_flip(&q).unwrap();
        let g = folded_generators(3, SimplyLaced::A, &flip).unwrap();
        let base = defining_generators(3, SimplyLaced::A).unwrap();
        assert_eq!(g.e[0], &base.e[0] + &base.e[2]);
        assert_eq!(g.e[1], base.e[1]);
        let f = fold_cartan(&cartan_from_quiver(&q).unwrap(), &flip).unwrap();
        assert_eq!(serre_check(&f.folded, &g).unwrap(), None);
        let wrong = serre_violations(&f.folded.transpose(), &g).unwrap();
        assert!(wrong.iter().any(Relation::is_serre));
    }

    #[test]
    fn d_generators_satisfy_their_relations() {
        for n in 3..=5 {
            let g = defining_generators(n, SimplyLaced::D).unwrap();
            let c = cartan_from_quiver(&type_d(n)).unwrap();
            assert_eq!(serre_check(&c, &g).unwrap(), None, "D_{n}");
        }
    }

    #[test]
    fn symmetrizers() {
        let c2 = CartanMatrix::from_rows(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(c2.symmetrizer().unwrap(), vec![1, 2]);
        let g2 = CartanMatrix::from_rows(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(g2.symmetrizer().unwrap(), vec![1, 3]);
    }
}

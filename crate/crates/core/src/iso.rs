//! Backtracking isomorphism search for small undirected multigraphs.

use crate::quiver::Quiver;

/// Searches for a bijection `phi` (as `phi[v1] = v2`) preserving edge
/// multiplicities between vertex pairs, ignoring orientation. The extra
/// predicate is consulted on every partial assignment and may prune it.
pub fn find_isomorphism(
    adj1: &[Vec<u32>],
    adj2: &[Vec<u32>],
    accept: &dyn Fn(&[Option<usize>]) -> bool,
) -> Option<Vec<usize>> {
    let n = adj1.len();
    if adj2.len() != n {
        return None;
    }
    let profile = |adj: &[Vec<u32>], v: usize| -> (u32, u32, Vec<u32>) {
        let mut row: Vec<u32> = adj[v].clone();
        let loops = row[v];
        row.remove(v);
        row.sort_unstable();
        (row.iter().sum(), loops, row)
    };
    let p1: Vec<_> = (0..n).map(|v| profile(adj1, v)).collect();
    let p2: Vec<_> = (0..n).map(|v| profile(adj2, v)).collect();
    let mut s1: Vec<_> = p1.clone();
    let mut s2: Vec<_> = p2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }

    // Assign high-degree vertices first, then their neighbours.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links: u32 = order.iter().map(|&u| adj1[v][u]).sum();
                (links, p1[v].0, std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if search(0, &order, adj1, adj2, &p1, &p2, &mut phi, &mut used, accept) {
        Some(phi.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    depth: usize,
    order: &[usize],
    adj1: &[Vec<u32>],
    adj2: &[Vec<u32>],
    p1: &[(u32, u32, Vec<u32>)],
    p2: &[(u32, u32, Vec<u32>)],
    phi: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    accept: &dyn Fn(&[Option<usize>]) -> bool,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..adj2.len() {
        if used[w] || p1[v] != p2[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| adj1[v][u] == adj2[w][phi[u].unwrap()]);
        if !consistent {
            continue;
        }
        phi[v] = Some(w);
        used[w] = true;
        if accept(phi) && search(depth + 1, order, adj1, adj2, p1, p2, phi, used, accept) {
            return true;
        }
        phi[v] = None;
        used[w] = false;
    }
    false
}

/// Diagram isomorphism `q1 -> q2`, if any.
pub fn graph_isomorphic(q1: &Quiver, q2: &Quiver) -> Option<Vec<usize>> {
    find_isomorphism(&q1.adjacency(), &q2.adjacency(), &|_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::families::*;

    fn check(q1: &Quiver, q2: &Quiver, phi: &[usize]) {
        let (a1, a2) = (q1.adjacency(), q2.adjacency());
        for i in 0..phi.len() {
            for j in 0..phi.len() {
                assert_eq!(a1[i][j], a2[phi[i]][phi[j]]);
            }
        }
    }

    #[test]
    fn relabeled_path() {
        let q = type_a(3);
        let r = Quiver::new(
            vec!["x", "y", "z"],
            vec![("p", "y", "x"), ("r", "z", "y")],
        )
        .unwrap();
        let phi = graph_isomorphic(&q, &r).unwrap();
        check(&q, &r, &phi);
    }

    #[test]
    fn different_shapes() {
        assert!(graph_isomorphic(&type_a(3), &type_d(4)).is_none());
        assert!(graph_isomorphic(&type_a(4), &type_d(4)).is_none());
        assert!(graph_isomorphic(&affine_a(3), &type_a(4)).is_none());
    }

    #[test]
    fn fork_relabeled_d4() {
        let q = type_d(4);
        let r = Quiver::new(
            vec!["c", "l1", "l2", "l3"],
            vec![("x", "l3", "c"), ("y", "c", "l1"), ("z", "l2", "c")],
        )
        .unwrap();
        let phi = graph_isomorphic(&q, &r).unwrap();
        check(&q, &r, &phi);
        assert_eq!(phi[1], 0);
    }

    #[test]
    fn multiplicities_matter() {
        let double = affine_a(1);
        let single = type_a(2);
        assert!(graph_isomorphic(&double, &single).is_none());
        assert!(graph_isomorphic(&double, &double).is_some());
    }
}

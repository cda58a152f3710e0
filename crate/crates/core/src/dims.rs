//! Dimension bookkeeping: quiver varieties, Steinberg varieties, and the
//! components of the fixed locus indexed by fibers of `p`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Q;
use crate::lie_fold::{cartan_from_quiver, CartanMatrix};
use crate::split::{check_orbit_constant, fibers_of_p, SplitData};

fn check_len(c: &CartanMatrix, xs: &[&[u64]]) -> Result<()> {
    for x in xs {
        if x.len() != c.rank() {
            return Err(Error::ShapeMismatch(format!(
                "dimension vector has {} entries, Cartan matrix has rank {}",
                x.len(),
                c.rank()
            )));
        }
    }
    Ok(())
}

/// `2 v.w - v^T C v`.
pub fn dim_quiver_variety(v: &[u64], w: &[u64], c: &CartanMatrix) -> Result<i64> {
    check_len(c, &[v, w])?;
    let n = c.rank();
    let vw: i64 = (0..n).map(|i| v[i] as i64 * w[i] as i64).sum();
    let vcv: i64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| v[i] as i64 * c.get(i, j) * v[j] as i64)
        .sum();
    Ok(2 * vw - vcv)
}

/// Half the sum of the two quiver-variety dimensions.
pub fn dim_steinberg(v1: &[u64], v2: &[u64], w: &[u64], c: &CartanMatrix) -> Result<Q> {
    let a = dim_quiver_variety(v1, w, c)?;
    let b = dim_quiver_variety(v2, w, c)?;
    Ok(Q::new((a + b).into(), 2.into()))
}

/// One component `M(v', w')` of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub v: Vec<u64>,
    pub w: Vec<u64>,
    pub dim: i64,
    /// The formula is negative, so the component is empty.
    pub empty: bool,
}

/// One record per `v'` with `p(v') = v`, dimensions computed on the split
/// quiver. `w_split` must restrict to `w` orbit by orbit: the phases of an
/// orbit add up to `w_i`.
pub fn fixed_components(v: &[u64], w: &[u64], sd: &SplitData, w_split: &[u64]) -> Result<Vec<ComponentRecord>> {
    check_orbit_constant(&sd.source, &sd.orbits, v)?;
    check_orbit_constant(&sd.source, &sd.orbits, w)?;
    if w_split.len() != sd.split.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "split framing needs {} entries, got {}",
            sd.split.vertex_count(),
            w_split.len()
        )));
    }
    for (o, orbit) in sd.orbits.vertex_orbits.iter().enumerate() {
        let e = sd.orbits.e_vertex[orbit[0]];
        let total: u64 = (1..=e).map(|j| w_split[sd.split_index(o, j)]).sum();
        if total != w[orbit[0]] {
            return Err(Error::DimensionMismatch(format!(
                "split framing over orbit {} sums to {total}, expected {}",
                sd.orbit_label(o),
                w[orbit[0]]
            )));
        }
    }
    let c = cartan_from_quiver(&sd.split)?;
    fibers_of_p(v, sd)?
        .into_iter()
        .map(|vp| {
            let dim = dim_quiver_variety(&vp, w_split, &c)?;
            Ok(ComponentRecord {
                v: vp,
                w: w_split.to_vec(),
                dim,
                empty: dim < 0,
            })
        })
        .collect()
}

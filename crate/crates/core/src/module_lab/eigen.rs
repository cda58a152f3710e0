use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{format_q, Q};
use crate::matrix::Matrix;
use crate::poly::charpoly;
use crate::split::root_of_unity_eigenspace_dim;

/// `zeta^j` for a primitive `e`-th root of unity `zeta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    pub j: usize,
    pub e: usize,
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.j.gcd(&self.e);
        let (j, e) = (self.j / g, self.e / g);
        match (j % e, e) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            _ => write!(f, "exp(2pi i {j}/{e})"),
        }
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenGrade {
    pub root: RootOfUnity,
    pub dim: usize,
}

/// Eigenspace dimensions of `g` for `zeta^j`, `j = 0..e`, where
/// `g^e = 1`. Dimensions are over the cyclotomic field and sum to the size
/// of `g`.
pub fn eigen_grade(g: &Matrix<Q>, e: usize) -> Result<Vec<EigenGrade>> {
    if e == 0 || !g.is_square() || !g.pow(e).is_identity() {
        return Err(Error::NotFiniteOrder(e));
    }
    Ok(grades(g, e))
}

fn grades(g: &Matrix<Q>, e: usize) -> Vec<EigenGrade> {
    (0..e)
        .map(|j| EigenGrade {
            root: RootOfUnity { j, e },
            dim: root_of_unity_eigenspace_dim(g, e, j),
        })
        .collect()
}

/// Eigen data of an arbitrary square matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenProfile {
    /// Eigenspace dimensions at the `e`-th roots of unity.
    pub grades: Vec<EigenGrade>,
    /// Rational eigenvalues with their eigenspace dimensions.
    #[serde(serialize_with = "ser_rational")]
    pub rational: Vec<(Q, usize)>,
    /// Size minus the total eigenspace dimension at `e`-th roots of unity:
    /// zero exactly when `g` is diagonalizable with spectrum in those roots.
    pub outside: usize,
}

fn ser_rational<S: serde::Serializer>(v: &[(Q, usize)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (x, d) in v {
        seq.serialize_element(&(format_q(x), d))?;
    }
    seq.end()
}

/// Lenient counterpart of [`eigen_grade`]: no finite-order requirement,
/// with everything not accounted for by `e`-th roots of unity counted in
/// `outside`.
pub fn eigen_profile(g: &Matrix<Q>, e: usize) -> EigenProfile {
    let grades = grades(g, e.max(1));
    let inside: usize = grades.iter().map(|x| x.dim).sum();
    let rational = charpoly(g)
        .rational_roots()
        .unwrap_or_default()
        .into_iter()
        .map(|r| {
            let shifted = g - &Matrix::scalar(g.rows(), r.clone());
            (r, shifted.nullity())
        })
        .collect();
    EigenProfile {
        grades,
        rational,
        outside: g.rows() - inside,
    }
}

//! Homology with canonical cycle representatives.
//!
//! For each degree we keep a canonical basis of the cycles, a canonical
//! basis of the boundaries (column-space basis of `d_{n+1}`), and a set of
//! representative cycles completing the boundaries to a basis of the cycles.
//! Classes are coordinates with respect to the representatives, so two
//! cycles are homologous iff their class coordinate vectors are equal.

use super::{ChainComplex, ChainMap};
use crate::matrix::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct HomologyData {
    complex: ChainComplex,
    /// Per degree: canonical boundary basis (columns).
    boundary_bases: Vec<Matrix>,
    /// Per degree: representative cycles, one column per homology class.
    representatives: Vec<Matrix>,
}

impl HomologyData {
    pub fn new(complex: &ChainComplex) -> HomologyData {
        let top = complex.ranks().len();
        let mut boundary_bases = Vec::with_capacity(top);
        let mut representatives = Vec::with_capacity(top);
        for n in 0..top {
            let cycles = if n == 0 {
                Matrix::identity(complex.field(), complex.rank(0))
            } else {
                complex.boundary(n).kernel_basis()
            };
            let bnd = complex.boundary(n + 1).column_space_basis();
            // pick the cycle columns that extend the boundary basis: rref of
            // [boundaries | cycles], keep cycles whose column is a pivot
            let aug = bnd.hstack(&cycles).expect("same degree");
            let (_, pivots) = aug.rref();
            let chosen: Vec<usize> = pivots
                .iter()
                .filter(|&&p| p >= bnd.cols())
                .map(|&p| p - bnd.cols())
                .collect();
            let mut reps = Matrix::zeros(complex.field(), complex.rank(n), chosen.len());
            for (k, &c) in chosen.iter().enumerate() {
                for i in 0..complex.rank(n) {
                    reps.set(i, k, cycles.get(i, c));
                }
            }
            boundary_bases.push(bnd);
            representatives.push(reps);
        }
        HomologyData {
            complex: complex.clone(),
            boundary_bases,
            representatives,
        }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn dim(&self, n: usize) -> usize {
        self.representatives.get(n).map_or(0, Matrix::cols)
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.representatives.iter().map(Matrix::cols).collect();
        while let Some(0) = out.last() {
            out.pop();
        }
        out
    }

    /// Representative cycle of the class with coordinates `coords`.
    pub fn representative(&self, n: usize, coords: &Matrix) -> Matrix {
        if self.dim(n) == 0 {
            return Matrix::zeros(self.complex.field(), self.complex.rank(n), 1);
        }
        self.representatives[n].mul(coords).expect("shape")
    }

    pub fn representatives(&self, n: usize) -> Matrix {
        self.representatives
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.complex.field(), self.complex.rank(n), 0))
    }

    /// Canonical basis of the boundaries in degree `n`.
    pub fn boundary_basis(&self, n: usize) -> Matrix {
        self.boundary_bases
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.complex.field(), self.complex.rank(n), 0))
    }

    /// Class coordinates of a cycle `v` in degree `n`. Errors when `v` is
    /// not a cycle (or not expressible, which indicates corrupted data).
    pub fn class_coords(&self, n: usize, v: &Matrix) -> Result<Matrix> {
        if n >= self.representatives.len() {
            if v.is_zero() {
                return Ok(Matrix::zeros(self.complex.field(), 0, 1));
            }
            return Err(Error::Invalid("nonzero vector beyond top degree".into()));
        }
        if n >= 1 {
            let img = self.complex.boundary(n).mul(v).expect("shape");
            if !img.is_zero() {
                return Err(Error::Invalid(format!("vector in degree {n} is not a cycle")));
            }
        }
        let basis = self.boundary_bases[n]
            .hstack(&self.representatives[n])
            .expect("same degree");
        let coords = basis
            .solve(v)?
            .ok_or_else(|| Error::Invalid("cycle not in span of boundaries + reps".into()))?;
        Ok(coords.submatrix(self.boundary_bases[n].cols(), self.dim(n), 0, v.cols()))
    }
}

/// Homology dimensions, highest nonzero degree last.
pub fn homology_dims(c: &ChainComplex) -> Vec<usize> {
    HomologyData::new(c).dims()
}

/// The matrices `H_n(f)` expressed in the canonical representative bases.
pub fn induced_on_homology(f: &ChainMap) -> Result<Vec<Matrix>> {
    let src = HomologyData::new(f.source());
    let tgt = HomologyData::new(f.target());
    let top = f.source().ranks().len().max(f.target().ranks().len());
    let mut out = Vec::new();
    for n in 0..top {
        let mut m = Matrix::zeros(f.field(), tgt.dim(n), src.dim(n));
        if src.dim(n) > 0 {
            let image = f.component(n).mul(&src.representatives(n)).expect("shape");
            let coords = tgt.class_coords(n, &image)?;
            m = coords;
        }
        out.push(m);
    }
    Ok(out)
}

/// True iff `f` induces isomorphisms on homology in every degree.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    match induced_on_homology(f) {
        Ok(mats) => mats
            .iter()
            .all(|m| m.rows() == m.cols() && m.rank() == m.rows()),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::tests::interval;
    use crate::chain::{ChainComplex, ChainMap};
    use crate::field::Field;
    use crate::matrix::Matrix;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn homology_of_unit() {
        assert_eq!(homology_dims(&ChainComplex::unit(q())), vec![1]);
    }

    #[test]
    fn homology_of_interval() {
        // H(I[1]) = (1, 0): the cylinder condition
        assert_eq!(homology_dims(&interval(q())), vec![1]);
        let h = HomologyData::new(&interval(q()));
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 0);
    }

    #[test]
    fn disks_are_acyclic() {
        for n in 1..5 {
            assert!(homology_dims(&ChainComplex::disk(q(), n)).is_empty());
        }
    }

    #[test]
    fn spheres_have_one_class() {
        let h = homology_dims(&ChainComplex::sphere(q(), 2));
        assert_eq!(h, vec![0, 0, 1]);
    }

    #[test]
    fn p_is_quasi_iso() {
        let i1 = interval(q());
        let unit = ChainComplex::unit(q());
        let p = ChainMap::new(
            i1,
            unit,
            vec![Matrix::from_rows_i64(q(), &[vec![1, 1]]), Matrix::zeros(q(), 0, 1)],
        )
        .unwrap();
        assert!(is_quasi_iso(&p));
    }

    #[test]
    fn zero_to_unit_not_quasi_iso() {
        let f = ChainMap::zero(&ChainComplex::zero(q()), &ChainComplex::unit(q()));
        assert!(!is_quasi_iso(&f));
    }

    #[test]
    fn identity_quasi_iso() {
        assert!(is_quasi_iso(&ChainMap::identity(&interval(q()))));
    }

    #[test]
    fn class_coords_detect_boundaries() {
        let d1 = ChainComplex::disk(q(), 1);
        let h = HomologyData::new(&d1);
        // the generator of degree 0 is a boundary: class 0 (H_0(D^1) = 0)
        let v = Matrix::col_i64(q(), &[1]);
        let coords = h.class_coords(0, &v).unwrap();
        assert_eq!(coords.rows(), 0);
    }
}

//! Internal hom in the non-negatively graded world, and the hom-tensor
//! adjunction realized as bit-exact index shuffling.
//!
//! For complexes `B`, `X` the graded hom has
//! `Hom_n = (+)_m Hom(B_m, X_{m+n})` with differential
//! `delta(phi) = d_X . phi - (-1)^n phi . d_B`. The internal hom of the
//! truncated category takes the good truncation: degree 0 is the subspace
//! of chain maps (the degree-0 cycles of the graded hom), degrees >= 1 are
//! the full graded pieces. This is the unique choice for which
//! `Hom(A (x) B, X) = Hom(A, X^B)` holds on the nose, which the path-object
//! assembly uses everywhere.
//!
//! Basis conventions: summands ordered by increasing `m`; a matrix
//! `phi_m : B_m -> X_{m+n}` is flattened row-major, `(x, b) -> x * rank(B_m) + b`.
//! Degree 0 carries the canonical kernel basis of the chain-map subspace.

use super::{ChainComplex, ChainMap};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// The internal hom `X^B` together with the data needed to move between
/// truncated degree-0 coordinates and full graded-hom coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    b: ChainComplex,
    x: ChainComplex,
    hom: ChainComplex,
    /// Canonical basis of the chain-map subspace inside the full `Hom_0`.
    z0: Matrix,
}

impl HomSpace {
    pub fn new(b: &ChainComplex, x: &ChainComplex) -> Result<HomSpace> {
        if b.field() != x.field() {
            return Err(Error::FieldMismatch);
        }
        let field = b.field();
        let top = x.ranks().len();
        let delta0 = full_delta(b, x, 0);
        let z0 = delta0.kernel_basis();
        let mut ranks = vec![z0.cols()];
        for n in 1..top {
            ranks.push(full_rank(b, x, n as i64));
        }
        let mut boundaries = Vec::new();
        for n in 1..ranks.len() {
            let full = full_delta(b, x, n as i64);
            if n == 1 {
                // express delta_1 in the chain-map basis
                let coords = z0
                    .solve(&full)?
                    .ok_or_else(|| Error::Invalid("delta_1 image not in cycles".into()))?;
                boundaries.push(coords);
            } else {
                boundaries.push(full);
            }
        }
        let hom = ChainComplex::new(field, ranks, boundaries)?;
        Ok(HomSpace {
            b: b.clone(),
            x: x.clone(),
            hom,
            z0,
        })
    }

    pub fn hom(&self) -> &ChainComplex {
        &self.hom
    }

    pub fn z0_basis(&self) -> &Matrix {
        &self.z0
    }

    /// Expands truncated degree-0 coordinates to full `Hom_0` coordinates.
    pub fn expand0(&self, coords: &Matrix) -> Matrix {
        self.z0.mul(coords).expect("shape")
    }

    /// Expresses a full `Hom_0` vector in the chain-map basis, checking that
    /// it actually is a cycle.
    pub fn restrict0(&self, full: &Matrix) -> Result<Matrix> {
        let delta0 = full_delta(&self.b, &self.x, 0);
        if !delta0.mul(full).expect("shape").is_zero() {
            return Err(Error::NotACycle);
        }
        self.z0
            .solve(full)?
            .ok_or_else(|| Error::Invalid("cycle not in kernel basis span".into()))
    }

    /// Flattens a chain map `B -> X` into a degree-0 element of `X^B`.
    pub fn element(&self, f: &ChainMap) -> Result<Matrix> {
        if f.source() != &self.b || f.target() != &self.x {
            return Err(Error::Shape("element: endpoints differ from hom space".into()));
        }
        let field = self.b.field();
        let mut full = Matrix::zeros(field, full_rank(&self.b, &self.x, 0), 1);
        for (m, off, _rows, _cols) in offsets(&self.b, &self.x, 0) {
            let comp = f.component(m);
            for r in 0..comp.rows() {
                for c in 0..comp.cols() {
                    full.set(off + r * comp.cols() + c, 0, comp.get(r, c));
                }
            }
        }
        self.restrict0(&full)
    }

    /// Reads a degree-0 element back as a chain map `B -> X`.
    pub fn element_as_map(&self, coords: &Matrix) -> Result<ChainMap> {
        let full = self.expand0(coords);
        let field = self.b.field();
        let mut components = Vec::new();
        for n in 0..self.b.ranks().len().max(self.x.ranks().len()) {
            components.push(Matrix::zeros(field, self.x.rank(n), self.b.rank(n)));
        }
        for (m, off, rows, cols) in offsets(&self.b, &self.x, 0) {
            for r in 0..rows {
                for c in 0..cols {
                    components[m].set(r, c, full.get(off + r * cols + c, 0));
                }
            }
        }
        ChainMap::new(self.b.clone(), self.x.clone(), components)
    }
}

/// Summand layout of `Hom_n`: `(m, offset, rank X_{m+n}, rank B_m)`.
fn offsets(b: &ChainComplex, x: &ChainComplex, n: i64) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0usize;
    for m in 0..b.ranks().len() {
        let xd = m as i64 + n;
        let rows = if xd < 0 { 0 } else { x.rank(xd as usize) };
        let cols = b.rank(m);
        out.push((m, off, rows, cols));
        off += rows * cols;
    }
    out
}

fn full_rank(b: &ChainComplex, x: &ChainComplex, n: i64) -> usize {
    offsets(b, x, n).iter().map(|(_, _, r, c)| r * c).sum()
}

/// The graded-hom differential `Hom_n -> Hom_{n-1}` on full coordinates.
fn full_delta(b: &ChainComplex, x: &ChainComplex, n: i64) -> Matrix {
    let field = b.field();
    let src = offsets(b, x, n);
    let tgt = offsets(b, x, n - 1);
    let mut delta = Matrix::zeros(field, full_rank(b, x, n - 1), full_rank(b, x, n));
    for &(m, src_off, rows, cols) in &src {
        if rows * cols == 0 {
            continue;
        }
        // post-composition d_X . phi_m : summand m -> summand m
        let (_, t_off, t_rows, _) = tgt[m];
        if t_rows > 0 {
            let dx = x.boundary((m as i64 + n) as usize);
            let block = dx.kron(&Matrix::identity(field, cols)).expect("field");
            delta.paste(t_off, src_off, &block);
        }
        // pre-composition -(-1)^n phi_m . d_B^{(m+1)} : summand m -> summand m+1
        if m + 1 < b.ranks().len() {
            let (_, t_off, t_rows, t_cols) = tgt[m + 1];
            if t_rows * t_cols > 0 && rows > 0 {
                let db = b.boundary(m + 1);
                let mut block = Matrix::identity(field, rows)
                    .kron(&db.transpose())
                    .expect("field");
                if n.rem_euclid(2) == 0 {
                    block = block.neg();
                }
                delta.paste(t_off, src_off, &block);
            }
        }
    }
    delta
}

/// The internal hom `X^B` with the good truncation.
pub fn internal_hom(b: &ChainComplex, x: &ChainComplex) -> Result<ChainComplex> {
    Ok(HomSpace::new(b, x)?.hom().clone())
}

/// Contravariant-covariant functoriality: `X^B -> X'^{B'}`,
/// `phi -> g . phi . f` for `f : B' -> B`, `g : X -> X'`.
pub fn hom_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let src_space = HomSpace::new(f.target(), g.source())?;
    let tgt_space = HomSpace::new(f.source(), g.target())?;
    let mut components = Vec::new();
    let top = src_space.hom().ranks().len().max(tgt_space.hom().ranks().len());
    for n in 0..top {
        let full = full_level_map(f, g, n as i64);
        if n == 0 {
            let on_cycles = full.mul(src_space.z0_basis()).expect("shape");
            let coords = tgt_space
                .z0_basis()
                .solve(&on_cycles)?
                .ok_or(Error::NotACycle)?;
            components.push(coords);
        } else {
            components.push(full);
        }
    }
    ChainMap::new(src_space.hom().clone(), tgt_space.hom().clone(), components)
}

/// `phi -> g . phi . f` on full graded coordinates at degree `n`.
fn full_level_map(f: &ChainMap, g: &ChainMap, n: i64) -> Matrix {
    let field = f.field();
    let src = offsets(f.target(), g.source(), n);
    let tgt = offsets(f.source(), g.target(), n);
    let mut out = Matrix::zeros(
        field,
        full_rank(f.source(), g.target(), n),
        full_rank(f.target(), g.source(), n),
    );
    for &(m, src_off, rows, cols) in &src {
        if rows * cols == 0 {
            continue;
        }
        if m >= tgt.len() {
            continue;
        }
        let (_, t_off, t_rows, t_cols) = tgt[m];
        if t_rows * t_cols == 0 {
            continue;
        }
        let gx = g.component((m as i64 + n) as usize);
        let fm = f.component(m);
        let block = gx.kron(&fm.transpose()).expect("field");
        out.paste(t_off, src_off, &block);
    }
    out
}

/// Hom-tensor transposition: a chain map `g : A (x) B -> X` becomes
/// `A -> X^B`. Errors when a degree-0 column fails the cycle condition (the
/// witness that `g` was not a chain map).
pub fn adjoint_transpose(
    g: &ChainMap,
    a: &ChainComplex,
    b: &ChainComplex,
) -> Result<ChainMap> {
    let x = g.target().clone();
    let expected = super::tensor(a, b)?;
    if g.source() != &expected {
        return Err(Error::Shape(
            "transpose: source is not the stated tensor product".into(),
        ));
    }
    let space = HomSpace::new(b, &x)?;
    let field = a.field();
    let mut components = Vec::new();
    for i in 0..a.ranks().len() {
        let full_dim = full_rank(b, &x, i as i64);
        let mut full = Matrix::zeros(field, full_dim, a.rank(i));
        let homoff = offsets(b, &x, i as i64);
        for alpha in 0..a.rank(i) {
            for &(j, h_off, rows, cols) in &homoff {
                if rows * cols == 0 {
                    continue;
                }
                let deg = i + j;
                let gcomp = g.component(deg);
                let toff = super::tensor_offsets(a, b, deg);
                let (_, t_off, _) = toff[i];
                for xr in 0..rows {
                    for beta in 0..cols {
                        let v = gcomp.get(xr, t_off + alpha * cols + beta);
                        full.set(h_off + xr * cols + beta, alpha, v);
                    }
                }
            }
        }
        if i == 0 {
            components.push(space.restrict0(&full)?);
        } else {
            components.push(full);
        }
    }
    ChainMap::new(a.clone(), space.hom().clone(), components)
}

/// Inverse transposition: `h : A -> X^B` becomes `A (x) B -> X`.
pub fn adjoint_untranspose(
    h: &ChainMap,
    a: &ChainComplex,
    b: &ChainComplex,
    x: &ChainComplex,
) -> Result<ChainMap> {
    let space = HomSpace::new(b, x)?;
    if h.source() != a || h.target() != space.hom() {
        return Err(Error::Shape("untranspose: endpoints do not match".into()));
    }
    let field = a.field();
    let source = super::tensor(a, b)?;
    let mut components = Vec::new();
    for n in 0..source.ranks().len() {
        let mut comp = Matrix::zeros(field, x.rank(n), source.rank(n));
        let toff = super::tensor_offsets(a, b, n);
        for &(i, t_off, size) in &toff {
            if size == 0 {
                continue;
            }
            let j = n - i;
            let hcol = if i == 0 {
                space.expand0(&h.component(0))
            } else {
                h.component(i)
            };
            let homoff = offsets(b, x, i as i64);
            let (_, h_off, rows, cols) = homoff[j];
            if rows * cols == 0 {
                continue;
            }
            for alpha in 0..a.rank(i) {
                for beta in 0..b.rank(j) {
                    for xr in 0..x.rank(n) {
                        let v = hcol.get(h_off + xr * cols + beta, alpha);
                        comp.set(xr, t_off + alpha * cols + beta, v);
                    }
                }
            }
        }
        components.push(comp);
    }
    ChainMap::new(source, x.clone(), components)
}

/// Evaluation `X^B (x) B -> X`, the untranspose of the identity.
pub fn evaluation_map(b: &ChainComplex, x: &ChainComplex) -> Result<ChainMap> {
    let space = HomSpace::new(b, x)?;
    adjoint_untranspose(&ChainMap::identity(space.hom()), space.hom(), b, x)
}

/// Degree-0 element of `X^B` representing a chain map `B -> X`.
pub fn cotensor_element(f: &ChainMap) -> Result<Matrix> {
    HomSpace::new(f.source(), f.target())?.element(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::tests::interval;
    use crate::chain::{tensor, ChainComplex, ChainMap};
    use crate::field::Field;
    use crate::matrix::Matrix;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn hom_from_unit_is_identity() {
        let c = interval(q());
        let h = internal_hom(&ChainComplex::unit(q()), &c).unwrap();
        assert_eq!(h, c);
    }

    #[test]
    fn hom_interval_to_unit() {
        // chain maps I[1] -> I form a rank-1 space; nothing above
        let h = internal_hom(&interval(q()), &ChainComplex::unit(q())).unwrap();
        assert_eq!(h, ChainComplex::unit(q()));
    }

    #[test]
    fn hom_interval_to_interval_ranks() {
        let i1 = interval(q());
        let h = internal_hom(&i1, &i1).unwrap();
        assert_eq!(h.ranks(), &[3, 2]);
        assert!(h.is_valid());
    }

    #[test]
    fn hom_map_is_chain_map() {
        let i1 = interval(q());
        let unit = ChainComplex::unit(q());
        let d0 = ChainMap::new(
            unit.clone(),
            i1.clone(),
            vec![Matrix::col_i64(q(), &[1, 0])],
        )
        .unwrap();
        let ev0 = hom_map(&d0, &ChainMap::identity(&i1)).unwrap();
        assert!(ev0.is_chain_map());
        // X^I = X on the nose
        assert_eq!(ev0.target(), &i1);
    }

    #[test]
    fn transpose_of_evaluation_is_identity() {
        let b = interval(q());
        let x = ChainComplex::disk(q(), 1);
        let space = HomSpace::new(&b, &x).unwrap();
        let ev = evaluation_map(&b, &x).unwrap();
        assert!(ev.is_chain_map());
        let back = adjoint_transpose(&ev, space.hom(), &b).unwrap();
        assert_eq!(back, ChainMap::identity(space.hom()));
    }

    #[test]
    fn transpose_roundtrip() {
        let a = interval(q());
        let b = ChainComplex::disk(q(), 1);
        let x = tensor(&a, &b).unwrap();
        let g = ChainMap::identity(&x);
        let t = adjoint_transpose(&g, &a, &b).unwrap();
        assert!(t.is_chain_map());
        let back = adjoint_untranspose(&t, &a, &b, &x).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn transpose_rejects_non_cycle() {
        // a degreewise map A (x) B -> X that is not a chain map must fail
        let a = ChainComplex::unit(q());
        let b = interval(q());
        let x = ChainComplex::unit(q());
        let src = tensor(&a, &b).unwrap();
        // degree 0: (a, b) -> a only; degree 1: e -> 0. Not a chain map.
        let g = ChainMap::new(
            src,
            x.clone(),
            vec![
                Matrix::from_rows_i64(q(), &[vec![1, 0]]),
                Matrix::zeros(q(), 0, 1),
            ],
        )
        .unwrap();
        assert!(!g.is_chain_map());
        assert!(matches!(
            adjoint_transpose(&g, &a, &b),
            Err(crate::Error::NotACycle)
        ));
    }

    #[test]
    fn cotensor_element_roundtrip() {
        let b = interval(q());
        let x = interval(q());
        let space = HomSpace::new(&b, &x).unwrap();
        let id = ChainMap::identity(&b);
        let el = space.element(&id).unwrap();
        let back = space.element_as_map(&el).unwrap();
        assert_eq!(back, id);
    }
}

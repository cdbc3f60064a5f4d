//! The Eilenberg-Zilber shuffle map and the Alexander-Whitney map between
//! normalized chains of a pointwise tensor and the tensor of normalized
//! chains.
//!
//! Shuffle: `N(A) (x) N(B) -> N(A (x) B)`,
//! `x (x) y -> sum over (p,q)-shuffles (mu, nu) of
//! sign(mu,nu) (s_nu x) (x) (s_mu y)`, where `x` receives the degeneracies
//! at the `nu` positions. Alexander-Whitney: front face on the first
//! factor, iterated `d_0` on the second, projected back to normalized
//! coordinates along the degenerate complement.

use super::{normalize, SimplicialModule};
use crate::chain::{tensor, tensor_offsets, ChainMap};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Composite degeneracy `s_{list_k} ... s_{list_1}` starting at level
/// `from` (applied in ascending list order).
fn degeneracy_composite(m: &SimplicialModule, from: usize, list: &[usize]) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.rank(from));
    let mut level = from;
    for &i in list {
        acc = m.degeneracy(level, i).mul(&acc).expect("shape");
        level += 1;
    }
    acc
}

/// Front face `d_{p+1} ... d_n : M_n -> M_p`.
fn front_face(m: &SimplicialModule, n: usize, p: usize) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.rank(n));
    for k in ((p + 1)..=n).rev() {
        acc = m.face(k, k).mul(&acc).expect("shape");
    }
    acc
}

/// Back face `d_0^{n-q} : M_n -> M_q`.
fn back_face(m: &SimplicialModule, n: usize, q: usize) -> Matrix {
    let mut acc = Matrix::identity(m.field(), m.rank(n));
    for k in ((q + 1)..=n).rev() {
        acc = m.face(k, 0).mul(&acc).expect("shape");
    }
    acc
}

/// All subsets of `{0..n-1}` of size `p` (as sorted vectors), ascending in
/// bitmask order, paired with their complement.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = p + q;
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        if (mask as u32).count_ones() as usize != p {
            continue;
        }
        let mu: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let nu: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        out.push((mu, nu));
    }
    out
}

fn shuffle_sign(mu: &[usize], nu: &[usize]) -> i64 {
    let inversions = mu
        .iter()
        .map(|&a| nu.iter().filter(|&&b| a > b).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Projection `M_n -> N(M)_n` along the degenerate summand.
fn normalized_projection(m: &SimplicialModule, basis: &Matrix, n: usize) -> Result<Matrix> {
    let field = m.field();
    if n == 0 {
        return Ok(Matrix::identity(field, m.rank(0)));
    }
    let mut deg_img: Option<Matrix> = None;
    for i in 0..n {
        let s = m.degeneracy(n - 1, i).clone();
        deg_img = Some(match deg_img {
            None => s,
            Some(acc) => acc.hstack(&s)?,
        });
    }
    let deg_basis = deg_img
        .map(|d| d.column_space_basis())
        .unwrap_or_else(|| Matrix::zeros(field, m.rank(n), 0));
    let full = basis.hstack(&deg_basis)?;
    let inv = full
        .inverse()
        .ok_or_else(|| Error::Invalid("normalized + degenerate do not span level".into()))?;
    Ok(inv.submatrix(0, basis.cols(), 0, m.rank(n)))
}

/// The shuffle map `N(A) (x) N(B) -> N(A (x) B)` up to the common
/// truncation level (the source is brutally truncated there).
pub fn shuffle(a: &SimplicialModule, b: &SimplicialModule) -> Result<ChainMap> {
    if a.level() != b.level() {
        return Err(Error::Shape("shuffle needs equal truncation".into()));
    }
    let level = a.level();
    let na = normalize(a)?;
    let nb = normalize(b)?;
    let t = a.tensor(b)?;
    let nt = normalize(&t)?;
    let source = tensor(&na.complex, &nb.complex)?.truncate(level);
    let target = nt.complex.clone();
    let field = a.field();
    let mut components = Vec::new();
    for n in 0..=level.min(source.top().max(target.top())) {
        let mut raw = Matrix::zeros(field, t.rank(n), source.rank(n));
        for &(i, off, size) in &tensor_offsets(&na.complex, &nb.complex, n) {
            if size == 0 {
                continue;
            }
            let j = n - i;
            let mut block = Matrix::zeros(field, t.rank(n), size);
            for (mu, nu) in shuffles(i, j) {
                let sx = degeneracy_composite(a, i, &nu)
                    .mul(&na.basis(i))
                    .expect("shape");
                let sy = degeneracy_composite(b, j, &mu)
                    .mul(&nb.basis(j))
                    .expect("shape");
                let term = sx.kron(&sy)?;
                let signed = if shuffle_sign(&mu, &nu) < 0 {
                    term.neg()
                } else {
                    term
                };
                block = block.add(&signed)?;
            }
            raw.paste(0, off, &block);
        }
        // the shuffle of normalized chains is normalized; expressing it in
        // the kernel basis both verifies that and produces the coordinates
        let coords = nt
            .basis(n)
            .solve(&raw)?
            .ok_or_else(|| Error::Invalid("shuffle image is not normalized".into()))?;
        components.push(coords);
    }
    ChainMap::new(source, target, components)
}

/// The Alexander-Whitney map `N(A (x) B) -> N(A) (x) N(B)`.
pub fn alexander_whitney(a: &SimplicialModule, b: &SimplicialModule) -> Result<ChainMap> {
    if a.level() != b.level() {
        return Err(Error::Shape("alexander_whitney needs equal truncation".into()));
    }
    let level = a.level();
    let na = normalize(a)?;
    let nb = normalize(b)?;
    let t = a.tensor(b)?;
    let nt = normalize(&t)?;
    let source = nt.complex.clone();
    let target = tensor(&na.complex, &nb.complex)?.truncate(level);
    let field = a.field();
    let mut components = Vec::new();
    for n in 0..=level.min(source.top().max(target.top())) {
        let mut comp = Matrix::zeros(field, target.rank(n), source.rank(n));
        for &(p, off, size) in &tensor_offsets(&na.complex, &nb.complex, n) {
            if size == 0 {
                continue;
            }
            let q = n - p;
            let pa = normalized_projection(a, &na.basis(p), p)?;
            let pb = normalized_projection(b, &nb.basis(q), q)?;
            let fa = pa.mul(&front_face(a, n, p)).expect("shape");
            let fb = pb.mul(&back_face(b, n, q)).expect("shape");
            let block = fa.kron(&fb)?.mul(&nt.basis(n)).expect("shape");
            comp.paste(off, 0, &block);
        }
        components.push(comp);
    }
    ChainMap::new(source, target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::field::Field;
    use crate::simplicial::{free_module, gamma, FiniteSimplicialSet};

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn both_identities_for_constant_first_factor() {
        let ck = SimplicialModule::constant(f5(), 3);
        let b = free_module(f5(), &FiniteSimplicialSet::delta(1, 3));
        let sh = shuffle(&ck, &b).unwrap();
        let aw = alexander_whitney(&ck, &b).unwrap();
        assert!(sh.is_chain_map());
        assert!(aw.is_chain_map());
        // N(ck) = I, so both sides are N(B) on the nose and the maps are
        // identity matrices
        for n in 0..=3 {
            let c = sh.component(n);
            assert_eq!(c, Matrix::identity(f5(), c.rows()), "shuffle level {n}");
            let c = aw.component(n);
            assert_eq!(c, Matrix::identity(f5(), c.rows()), "aw level {n}");
        }
    }

    #[test]
    fn aw_after_shuffle_is_identity() {
        let a = free_module(f5(), &FiniteSimplicialSet::delta(1, 3));
        let b = gamma(&ChainComplex::disk(f5(), 1), 3).unwrap();
        let sh = shuffle(&a, &b).unwrap();
        let aw = alexander_whitney(&a, &b).unwrap();
        let round = sh.then(&aw).unwrap();
        assert_eq!(round, ChainMap::identity(round.source()));
    }

    #[test]
    fn shuffle_is_chain_map_on_spheres() {
        let a = gamma(&ChainComplex::sphere(f5(), 1), 3).unwrap();
        let b = gamma(&ChainComplex::sphere(f5(), 2), 3).unwrap();
        let sh = shuffle(&a, &b).unwrap();
        assert!(sh.is_chain_map());
        let aw = alexander_whitney(&a, &b).unwrap();
        assert!(aw.is_chain_map());
        let round = sh.then(&aw).unwrap();
        assert_eq!(round, ChainMap::identity(round.source()));
    }
}

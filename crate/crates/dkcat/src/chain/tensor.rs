//! Graded tensor product with the Koszul sign convention.
//!
//! `(C (x) D)_n = (+)_{i+j=n} C_i (x) D_j`, summands ordered by increasing
//! `i`, and within a summand the Kronecker index convention
//! `(a, b) -> a * rank(D_j) + b`. The differential is
//! `d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy`.

use super::{ChainComplex, ChainMap};
use crate::matrix::Matrix;
use crate::Result;

/// Offsets of the summands `C_i (x) D_{n-i}` inside `(C (x) D)_n`,
/// as `(i, offset, size)` triples in increasing `i`.
pub fn tensor_offsets(c: &ChainComplex, d: &ChainComplex, n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for i in 0..=n {
        let size = c.rank(i) * d.rank(n - i);
        out.push((i, offset, size));
        offset += size;
    }
    out
}

fn tensor_rank(c: &ChainComplex, d: &ChainComplex, n: usize) -> usize {
    (0..=n).map(|i| c.rank(i) * d.rank(n - i)).sum()
}

pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.field() != d.field() {
        return Err(crate::Error::FieldMismatch);
    }
    let field = c.field();
    let top = if c.ranks().is_empty() || d.ranks().is_empty() {
        0
    } else {
        c.top() + d.top() + 1
    };
    let ranks: Vec<usize> = (0..top.max(1)).map(|n| tensor_rank(c, d, n)).collect();
    let mut boundaries = Vec::new();
    for n in 1..ranks.len() {
        let mut dn = Matrix::zeros(field, ranks[n - 1], ranks[n]);
        let src = tensor_offsets(c, d, n);
        let tgt = tensor_offsets(c, d, n - 1);
        for &(i, src_off, src_size) in &src {
            if src_size == 0 {
                continue;
            }
            let j = n - i;
            // d_C (x) id : summand (i, j) -> (i-1, j)
            if i >= 1 {
                let block = c
                    .boundary(i)
                    .kron(&Matrix::identity(field, d.rank(j)))
                    .expect("same field");
                let (_, tgt_off, _) = tgt[i - 1];
                dn.paste(tgt_off, src_off, &block);
            }
            // (-1)^i id (x) d_D : summand (i, j) -> (i, j-1)
            if j >= 1 {
                let mut block = Matrix::identity(field, c.rank(i))
                    .kron(&d.boundary(j))
                    .expect("same field");
                if i % 2 == 1 {
                    block = block.neg();
                }
                let (_, tgt_off, _) = tgt[i];
                dn.paste(tgt_off, src_off, &block);
            }
        }
        boundaries.push(dn);
    }
    ChainComplex::new(field, ranks, boundaries)
}

/// `f (x) g` on the tensor complexes, blockwise `kron(f_i, g_j)`.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let source = tensor(f.source(), g.source())?;
    let target = tensor(f.target(), g.target())?;
    let field = f.field();
    let mut components = Vec::new();
    for n in 0..source.ranks().len().max(target.ranks().len()) {
        let mut comp = Matrix::zeros(field, target.rank(n), source.rank(n));
        let src = tensor_offsets(f.source(), g.source(), n);
        let tgt = tensor_offsets(f.target(), g.target(), n);
        for &(i, src_off, src_size) in &src {
            if src_size == 0 {
                continue;
            }
            let (_, tgt_off, tgt_size) = tgt[i];
            if tgt_size == 0 {
                continue;
            }
            let block = f
                .component(i)
                .kron(&g.component(n - i))
                .expect("same field");
            comp.paste(tgt_off, src_off, &block);
        }
        components.push(comp);
    }
    ChainMap::new(source, target, components)
}

/// The canonical isomorphism `I (x) C -> C`. With the fixed summand order it
/// is the identity on ranks.
pub fn unit_left_iso(c: &ChainComplex) -> ChainMap {
    let source = tensor(&ChainComplex::unit(c.field()), c).expect("same field");
    let components = (0..c.ranks().len())
        .map(|n| Matrix::identity(c.field(), c.rank(n)))
        .collect();
    ChainMap::new(source, c.clone(), components).expect("ranks agree")
}

/// The canonical isomorphism `C (x) I -> C`.
pub fn unit_right_iso(c: &ChainComplex) -> ChainMap {
    let source = tensor(c, &ChainComplex::unit(c.field())).expect("same field");
    let components = (0..c.ranks().len())
        .map(|n| Matrix::identity(c.field(), c.rank(n)))
        .collect();
    ChainMap::new(source, c.clone(), components).expect("ranks agree")
}

/// The associator `(A (x) B) (x) C -> A (x) (B (x) C)` as an explicit
/// permutation matrix (no signs arise: the flattened triple index agrees on
/// both sides, only the summand grouping changes).
pub fn associator(
    a: &ChainComplex,
    b: &ChainComplex,
    c: &ChainComplex,
) -> Result<ChainMap> {
    let ab = tensor(a, b)?;
    let bc = tensor(b, c)?;
    let source = tensor(&ab, c)?;
    let target = tensor(a, &bc)?;
    let field = a.field();
    let mut components = Vec::new();
    for n in 0..source.ranks().len().max(target.ranks().len()) {
        let mut comp = Matrix::zeros(field, target.rank(n), source.rank(n));
        // triple (i, j, k), i+j+k = n
        for i in 0..=n {
            for j in 0..=(n - i) {
                let k = n - i - j;
                let (ra, rb, rc) = (a.rank(i), b.rank(j), c.rank(k));
                if ra * rb * rc == 0 {
                    continue;
                }
                // source offset: summand (i+j, k) of (AB)(x)C, then (i, j) inside AB_{i+j}
                let src_outer = tensor_offsets(&ab, c, n);
                let (_, src_off_outer, _) = src_outer[i + j];
                let src_inner = tensor_offsets(a, b, i + j);
                let (_, src_off_inner, _) = src_inner[i];
                // target offset: summand (i, j+k) of A(x)(BC), then (j, k) inside BC_{j+k}
                let tgt_outer = tensor_offsets(a, &bc, n);
                let (_, tgt_off_outer, _) = tgt_outer[i];
                let tgt_inner = tensor_offsets(b, c, j + k);
                let (_, tgt_off_inner, _) = tgt_inner[j];
                for x in 0..ra {
                    for y in 0..rb {
                        for z in 0..rc {
                            let src_idx =
                                src_off_outer + (src_off_inner + x * rb + y) * rc + z;
                            let tgt_idx =
                                tgt_off_outer + x * bc.rank(j + k) + (tgt_off_inner + y * rc + z);
                            comp.set(tgt_idx, src_idx, field.one());
                        }
                    }
                }
            }
        }
        components.push(comp);
    }
    ChainMap::new(source, target, components)
}

/// The symmetry `A (x) B -> B (x) A` with Koszul sign `(-1)^{ij}` on the
/// summand `A_i (x) B_j`.
pub fn symmetry(a: &ChainComplex, b: &ChainComplex) -> Result<ChainMap> {
    let source = tensor(a, b)?;
    let target = tensor(b, a)?;
    let field = a.field();
    let mut components = Vec::new();
    for n in 0..source.ranks().len().max(target.ranks().len()) {
        let mut comp = Matrix::zeros(field, target.rank(n), source.rank(n));
        let src = tensor_offsets(a, b, n);
        let tgt = tensor_offsets(b, a, n);
        for &(i, src_off, src_size) in &src {
            if src_size == 0 {
                continue;
            }
            let j = n - i;
            let (_, tgt_off, _) = tgt[j];
            let sign = if (i * j) % 2 == 1 {
                field.from_i64(-1)
            } else {
                field.one()
            };
            for x in 0..a.rank(i) {
                for y in 0..b.rank(j) {
                    comp.set(
                        tgt_off + y * a.rank(i) + x,
                        src_off + x * b.rank(j) + y,
                        sign.clone(),
                    );
                }
            }
        }
        components.push(comp);
    }
    ChainMap::new(source, target, components)
}

/// The chain map `X -> A (x) X`, `x -> v (x) x`, for a degree-0 cycle `v` in
/// `A_0` (a column vector).
pub fn tensor_insert_left(a: &ChainComplex, v: &Matrix, x: &ChainComplex) -> Result<ChainMap> {
    let target = tensor(a, x)?;
    let field = x.field();
    let mut components = Vec::new();
    for n in 0..x.ranks().len() {
        let mut comp = Matrix::zeros(field, target.rank(n), x.rank(n));
        let (_, off, _) = tensor_offsets(a, x, n)[0];
        let block = v.kron(&Matrix::identity(field, x.rank(n)))?;
        comp.paste(off, 0, &block);
        components.push(comp);
    }
    ChainMap::new(x.clone(), target, components)
}

/// The chain map `X -> X (x) A`, `x -> x (x) v`; no signs since `v` has
/// degree 0.
pub fn tensor_insert_right(x: &ChainComplex, a: &ChainComplex, v: &Matrix) -> Result<ChainMap> {
    let target = tensor(x, a)?;
    let field = x.field();
    let mut components = Vec::new();
    for n in 0..x.ranks().len() {
        let mut comp = Matrix::zeros(field, target.rank(n), x.rank(n));
        let offs = tensor_offsets(x, a, n);
        let (_, off, _) = offs[n];
        let block = Matrix::identity(field, x.rank(n)).kron(v)?;
        comp.paste(off, 0, &block);
        components.push(comp);
    }
    ChainMap::new(x.clone(), target, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::tests::interval;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn interval_square_ranks() {
        let i1 = interval(q());
        let t = tensor(&i1, &i1).unwrap();
        assert_eq!(t.ranks(), &[4, 4, 1]);
        assert!(t.is_valid());
    }

    #[test]
    fn unit_law() {
        let c = interval(q());
        let iso = unit_left_iso(&c);
        assert!(iso.is_chain_map());
        assert_eq!(iso.source().ranks(), c.ranks());
        let iso_r = unit_right_iso(&c);
        assert!(iso_r.is_chain_map());
    }

    #[test]
    fn d_squared_zero_on_products() {
        let i1 = interval(q());
        let d2 = crate::chain::ChainComplex::disk(q(), 2);
        let t = tensor(&i1, &d2).unwrap();
        assert!(t.is_valid());
        let t2 = tensor(&t, &i1).unwrap();
        assert!(t2.is_valid());
    }

    #[test]
    fn associator_is_chain_iso() {
        let i1 = interval(q());
        let d1 = crate::chain::ChainComplex::disk(q(), 1);
        let s1 = crate::chain::ChainComplex::sphere(q(), 1);
        let a = associator(&i1, &d1, &s1).unwrap();
        assert!(a.is_chain_map());
        for n in 0..=a.source().top() {
            assert!(a.component(n).inverse().is_some());
        }
    }

    #[test]
    fn symmetry_squares_to_identity() {
        let i1 = interval(q());
        let s1 = crate::chain::ChainComplex::sphere(q(), 1);
        let sw = symmetry(&i1, &s1).unwrap();
        assert!(sw.is_chain_map());
        let back = symmetry(&s1, &i1).unwrap();
        let round = sw.then(&back).unwrap();
        assert_eq!(round, super::super::ChainMap::identity(round.source()));
    }

    #[test]
    fn tensor_map_functorial() {
        let i1 = interval(q());
        let unit = crate::chain::ChainComplex::unit(q());
        let p = crate::chain::ChainMap::new(
            i1.clone(),
            unit.clone(),
            vec![
                crate::matrix::Matrix::from_rows_i64(q(), &[vec![1, 1]]),
                crate::matrix::Matrix::zeros(q(), 0, 1),
            ],
        )
        .unwrap();
        let pp = tensor_map(&p, &p).unwrap();
        assert!(pp.is_chain_map());
    }

    #[test]
    fn insertions_are_chain_maps() {
        let i1 = interval(q());
        let v = crate::matrix::Matrix::col_i64(q(), &[1, 0]);
        let left = tensor_insert_left(&i1, &v, &i1).unwrap();
        assert!(left.is_chain_map());
        let right = tensor_insert_right(&i1, &i1, &v).unwrap();
        assert!(right.is_chain_map());
    }
}

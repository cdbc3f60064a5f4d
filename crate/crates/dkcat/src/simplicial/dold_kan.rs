//! The Dold-Kan pair: normalized chains and its inverse.
//!
//! `N(M)_n = kernel of d_1, ..., d_n` with boundary induced by `d_0`.
//! `Gamma(C)_n = (+) C_m`, one summand per order-preserving surjection
//! `[n] ->> [m]`; a simplicial operator acts through the epi-mono
//! factorization, contributing the identity when the mono part is trivial,
//! the boundary of `C` when the mono part misses exactly the bottom vertex,
//! and zero otherwise. That orientation is what makes `N(Gamma(C)) = C`
//! hold bit for bit with the kernel-basis conventions of this crate: the
//! summand of the identity surjection consists of zero columns of every
//! stacked face matrix, so the canonical kernel basis is exactly its
//! standard basis.
//!
//! Surjections are encoded by their jump-position bitmask (bit `i-1` set
//! when the value increases at position `i`), enumerated by ascending mask
//! within ascending target degree; this fixes the summand order and the
//! serialization.

use super::{SimplicialMap, SimplicialModule};
use crate::chain::{ChainComplex, ChainMap};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Order-preserving surjection `[n] ->> [m]` encoded by its values.
pub(crate) fn epi_from_mask(n: usize, mask: usize) -> Vec<usize> {
    let mut values = Vec::with_capacity(n + 1);
    let mut v = 0usize;
    values.push(0);
    for i in 1..=n {
        if mask & (1 << (i - 1)) != 0 {
            v += 1;
        }
        values.push(v);
    }
    values
}

pub(crate) fn mask_of_epi(values: &[usize]) -> usize {
    let mut mask = 0usize;
    for i in 1..values.len() {
        if values[i] == values[i - 1] + 1 {
            mask |= 1 << (i - 1);
        }
    }
    mask
}

/// All epis `[n] ->> [m]` for `0 <= m <= n` in summand order: ascending
/// `m`, then ascending jump mask.
pub(crate) fn epis(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=n {
        for mask in 0..(1usize << n) {
            if (mask as u32).count_ones() as usize == m {
                out.push((m, mask));
            }
        }
    }
    out
}

/// Summand layout of `Gamma(C)_n`: `(m, mask, offset, size)`.
fn gamma_offsets(c: &ChainComplex, n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for (m, mask) in epis(n) {
        let size = c.rank(m);
        out.push((m, mask, off, size));
        off += size;
    }
    out
}

fn compose_maps(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&k| outer[k]).collect()
}

/// `delta^i : [n-1] -> [n]`.
fn coface(i: usize, n: usize) -> Vec<usize> {
    (0..n).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// `sigma^i : [n+1] -> [n]`.
fn codegeneracy(i: usize, n: usize) -> Vec<usize> {
    (0..=(n + 1)).map(|j| if j <= i { j } else { j - 1 }).collect()
}

enum MonoPart {
    Identity,
    MissingBottom,
    Other,
}

/// Epi-mono factorization `f = delta . sigma` with `delta` classified.
fn factor(f: &[usize], m: usize) -> (Vec<usize>, MonoPart) {
    let mut image: Vec<usize> = f.to_vec();
    image.sort_unstable();
    image.dedup();
    let epi: Vec<usize> = f
        .iter()
        .map(|v| image.binary_search(v).expect("value in image"))
        .collect();
    let mono = if image.len() == m + 1 {
        MonoPart::Identity
    } else if image.len() == m && image.first() == Some(&1) && *image.last().unwrap() == m {
        MonoPart::MissingBottom
    } else {
        MonoPart::Other
    };
    (epi, mono)
}

/// Applies an operator `[k] -> [n]` of the simplex category to `Gamma(C)`:
/// the block matrix `Gamma(C)_n -> Gamma(C)_k`.
fn gamma_operator(c: &ChainComplex, theta: &[usize], n: usize) -> Matrix {
    let k = theta.len() - 1;
    let field = c.field();
    let src = gamma_offsets(c, n);
    let tgt = gamma_offsets(c, k);
    let find = |m: usize, mask: usize| -> (usize, usize) {
        tgt.iter()
            .find(|&&(tm, tmask, _, _)| tm == m && tmask == mask)
            .map(|&(_, _, off, size)| (off, size))
            .expect("target summand exists")
    };
    let rows: usize = tgt.iter().map(|t| t.3).sum();
    let cols: usize = src.iter().map(|s| s.3).sum();
    let mut out = Matrix::zeros(field, rows, cols);
    for &(m, mask, s_off, s_size) in &src {
        if s_size == 0 {
            continue;
        }
        let sigma = epi_from_mask(n, mask);
        debug_assert_eq!(*sigma.last().unwrap(), m);
        let composed = compose_maps(&sigma, theta);
        let (epi, mono) = factor(&composed, m);
        match mono {
            MonoPart::Identity => {
                let (t_off, t_size) = find(m, mask_of_epi(&epi));
                debug_assert_eq!(t_size, s_size);
                out.paste(t_off, s_off, &Matrix::identity(field, s_size));
            }
            MonoPart::MissingBottom => {
                let (t_off, t_size) = find(m - 1, mask_of_epi(&epi));
                if t_size > 0 {
                    out.paste(t_off, s_off, &c.boundary(m));
                }
            }
            MonoPart::Other => {}
        }
    }
    out
}

/// `Gamma(C)` truncated at `level >= top(C)`.
pub fn gamma(c: &ChainComplex, level: usize) -> Result<SimplicialModule> {
    if !c.ranks().is_empty() && c.top() > level {
        return Err(Error::TruncationTooLow {
            level,
            top: c.top(),
        });
    }
    let ranks: Vec<usize> = (0..=level)
        .map(|n| gamma_offsets(c, n).iter().map(|s| s.3).sum())
        .collect();
    let faces = (1..=level)
        .map(|n| {
            (0..=n)
                .map(|i| gamma_operator(c, &coface(i, n), n))
                .collect()
        })
        .collect();
    let degeneracies = (0..level)
        .map(|n| {
            (0..=n)
                .map(|i| gamma_operator(c, &codegeneracy(i, n), n))
                .collect()
        })
        .collect();
    SimplicialModule::new(c.field(), ranks, faces, degeneracies)
}

/// `Gamma` on maps: block diagonal over summands.
pub fn gamma_map(f: &ChainMap, level: usize) -> Result<SimplicialMap> {
    let source = gamma(f.source(), level)?;
    let target = gamma(f.target(), level)?;
    let field = f.field();
    let mut components = Vec::new();
    for n in 0..=level {
        let src = gamma_offsets(f.source(), n);
        let tgt = gamma_offsets(f.target(), n);
        let mut comp = Matrix::zeros(field, target.rank(n), source.rank(n));
        for (s, t) in src.iter().zip(tgt.iter()) {
            debug_assert_eq!((s.0, s.1), (t.0, t.1));
            if s.3 == 0 || t.3 == 0 {
                continue;
            }
            comp.paste(t.2, s.2, &f.component(s.0));
        }
        components.push(comp);
    }
    SimplicialMap::new(source, target, components)
}

/// The normalized chains of `M`, with the kernel bases retained so elements
/// and maps can be moved between `M` and `N(M)` coordinates.
#[derive(Clone, Debug)]
pub struct NormalizedData {
    pub complex: ChainComplex,
    /// `bases[n]`: inclusion `N(M)_n -> M_n`.
    bases: Vec<Matrix>,
}

impl NormalizedData {
    pub fn basis(&self, n: usize) -> Matrix {
        self.bases
            .get(n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.complex.field(), 0, 0))
    }

    /// Expresses a vector of `M_n` lying in `N(M)_n` in normalized coords.
    pub fn restrict(&self, n: usize, v: &Matrix) -> Result<Matrix> {
        self.bases[n]
            .solve(v)?
            .ok_or_else(|| Error::Invalid("vector is not normalized".into()))
    }
}

/// `N(M)`: levelwise kernel of the positive faces, boundary induced by `d_0`.
pub fn normalize(m: &SimplicialModule) -> Result<NormalizedData> {
    let field = m.field();
    let level = m.level();
    let mut bases = Vec::new();
    for n in 0..=level {
        if n == 0 {
            bases.push(Matrix::identity(field, m.rank(0)));
            continue;
        }
        let mut stacked = m.face(n, 1).clone();
        for i in 2..=n {
            stacked = stacked.vstack(m.face(n, i))?;
        }
        bases.push(stacked.kernel_basis());
    }
    let ranks: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let mut boundaries = Vec::new();
    for n in 1..=level {
        let image = m.face(n, 0).mul(&bases[n])?;
        let coords = bases[n - 1].solve(&image)?.ok_or_else(|| {
            Error::Invalid("d_0 does not preserve normalized chains (invalid module)".into())
        })?;
        boundaries.push(coords);
    }
    let complex = ChainComplex::new(field, ranks, boundaries)?;
    Ok(NormalizedData { complex, bases })
}

/// `N` on maps.
pub fn normalize_map(f: &SimplicialMap) -> Result<ChainMap> {
    let src = normalize(f.source())?;
    let tgt = normalize(f.target())?;
    let mut components = Vec::new();
    for n in 0..=f.source().level() {
        let image = f.component(n).mul(&src.bases[n])?;
        let coords = tgt.bases[n].solve(&image)?.ok_or_else(|| {
            Error::Invalid("map does not preserve normalized chains (not simplicial)".into())
        })?;
        components.push(coords);
    }
    ChainMap::new(src.complex, tgt.complex, components)
}

/// The materialized Dold-Kan isomorphism `Gamma(N(M)) = M`.
#[derive(Clone, Debug)]
pub struct DkIso {
    /// `Gamma(N(M)) -> M`: on the summand of an epi `sigma`, include the
    /// normalized chains and apply the degeneracy operator of `sigma`.
    pub counit: SimplicialMap,
    /// The levelwise exact inverse `M -> Gamma(N(M))`.
    pub unit: SimplicialMap,
}

/// Degeneracy operator `M(sigma) : M_m -> M_n` of an epi `sigma : [n] ->> [m]`.
fn epi_operator(m: &SimplicialModule, sigma: &[usize]) -> Matrix {
    let n = sigma.len() - 1;
    let target = *sigma.last().unwrap();
    if n == target {
        return Matrix::identity(m.field(), m.rank(n));
    }
    let i = (0..n)
        .find(|&i| sigma[i] == sigma[i + 1])
        .expect("non-identity epi repeats a value");
    let mut shorter: Vec<usize> = sigma.to_vec();
    shorter.remove(i + 1);
    let inner = epi_operator(m, &shorter);
    m.degeneracy(n - 1, i).mul(&inner).expect("shape")
}

/// Builds the isomorphism pair; errors when `M` is not a valid simplicial
/// module (the comparison matrix is then singular).
pub fn dk_counit_iso(m: &SimplicialModule) -> Result<DkIso> {
    let nm = normalize(m)?;
    let gnm = gamma(&nm.complex, m.level())?;
    let field = m.field();
    let mut fwd = Vec::new();
    for n in 0..=m.level() {
        let mut comp = Matrix::zeros(field, m.rank(n), gnm.rank(n));
        for &(deg, mask, off, size) in &gamma_offsets(&nm.complex, n) {
            if size == 0 {
                continue;
            }
            let sigma = epi_from_mask(n, mask);
            let op = epi_operator(m, &sigma);
            let block = op.mul(&nm.bases[deg])?;
            comp.paste(0, off, &block);
        }
        fwd.push(comp);
    }
    let mut inv = Vec::new();
    for c in &fwd {
        let i = c
            .inverse()
            .ok_or_else(|| Error::Invalid("Dold-Kan comparison is singular (invalid module)".into()))?;
        inv.push(i);
    }
    let counit = SimplicialMap::new(gnm.clone(), m.clone(), fwd)?;
    let unit = SimplicialMap::new(m.clone(), gnm, inv)?;
    Ok(DkIso { counit, unit })
}

/// The coequalizer of `d_0, d_1 : M_1 => M_0` as a finite set of canonical
/// coset representatives. Requires a prime field.
#[derive(Clone, Debug)]
pub struct Pi0 {
    field: Field,
    /// Quotient projection `M_0 -> k^q` (canonical complement coordinates).
    proj: Matrix,
    /// Section `k^q -> M_0` picking the canonical representative.
    sect: Matrix,
}

impl Pi0 {
    pub fn class_count(&self) -> usize {
        let p = self.field.characteristic() as usize;
        p.pow(self.proj.rows() as u32)
    }

    pub fn quotient_dim(&self) -> usize {
        self.proj.rows()
    }

    /// Canonical representatives in class order (big-endian digit order).
    pub fn representatives(&self) -> Vec<Matrix> {
        (0..self.class_count())
            .map(|ix| self.sect.mul(&self.coords_of_index(ix)).expect("shape"))
            .collect()
    }

    fn coords_of_index(&self, ix: usize) -> Matrix {
        let p = self.field.characteristic() as usize;
        let q = self.proj.rows();
        let mut coords = Matrix::zeros(self.field, q, 1);
        let mut rest = ix;
        for k in (0..q).rev() {
            coords.set(k, 0, self.field.from_i64((rest % p) as i64));
            rest /= p;
        }
        coords
    }

    /// Class index of a vector of `M_0`.
    pub fn class_of(&self, v: &Matrix) -> usize {
        let coords = self.proj.mul(v).expect("shape");
        let p = self.field.characteristic() as usize;
        let mut ix = 0usize;
        for k in 0..coords.rows() {
            let digit = match coords.get(k, 0) {
                crate::field::Scalar::Mod(d) => d as usize,
                _ => unreachable!("pi0 requires a prime field"),
            };
            ix = ix * p + digit;
        }
        ix
    }

    /// Canonical representative of the class of `v`.
    pub fn representative_of(&self, v: &Matrix) -> Matrix {
        self.sect
            .mul(&self.proj.mul(v).expect("shape"))
            .expect("shape")
    }
}

const PI0_LIMIT: usize = 1 << 20;

pub fn pi0(m: &SimplicialModule) -> Result<Pi0> {
    let field = m.field();
    if !field.is_finite() {
        return Err(Error::RequiresFiniteField);
    }
    if m.level() < 1 {
        return Err(Error::Shape("pi0 needs at least level 1".into()));
    }
    let diff = m.face(1, 0).sub(m.face(1, 1))?;
    let total = m.rank(0);
    let (r, pivots) = diff.transpose().rref();
    let free: Vec<usize> = (0..total).filter(|j| !pivots.contains(j)).collect();
    let mut proj = Matrix::zeros(field, free.len(), total);
    for (q, &jq) in free.iter().enumerate() {
        proj.set(q, jq, field.one());
        for (i, &p) in pivots.iter().enumerate() {
            proj.set(q, p, field.neg(&r.get(i, jq)));
        }
    }
    let mut sect = Matrix::zeros(field, total, free.len());
    for (q, &jq) in free.iter().enumerate() {
        sect.set(jq, q, field.one());
    }
    let p = field.characteristic() as usize;
    if free.len() as u32 >= 32 || p.pow(free.len() as u32) > PI0_LIMIT {
        return Err(Error::EnumerationLimit(format!(
            "pi0 would have {p}^{} elements",
            free.len()
        )));
    }
    Ok(Pi0 { field, proj, sect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::free_module;
    use crate::simplicial::FiniteSimplicialSet;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn interval_complex(field: Field) -> ChainComplex {
        ChainComplex::new(
            field,
            vec![2, 1],
            vec![Matrix::from_rows_i64(field, &[vec![-1], vec![1]])],
        )
        .unwrap()
    }

    #[test]
    fn gamma_of_unit_is_constant() {
        let g = gamma(&ChainComplex::unit(f3()), 3).unwrap();
        assert_eq!(g, SimplicialModule::constant(f3(), 3));
    }

    #[test]
    fn gamma_interval_ranks() {
        let g = gamma(&interval_complex(f3()), 4).unwrap();
        assert_eq!(g.ranks(), &[2, 3, 4, 5, 6]);
        assert!(g.is_valid());
    }

    #[test]
    fn gamma_rejects_low_truncation() {
        let c = ChainComplex::sphere(f3(), 3);
        assert!(matches!(
            gamma(&c, 2),
            Err(Error::TruncationTooLow { .. })
        ));
    }

    #[test]
    fn normalize_constant_is_unit() {
        let n = normalize(&SimplicialModule::constant(f3(), 3)).unwrap();
        assert_eq!(n.complex, ChainComplex::unit(f3()));
    }

    #[test]
    fn normalize_gamma_roundtrip_bit_exact() {
        let c = interval_complex(f3());
        let g = gamma(&c, 3).unwrap();
        let n = normalize(&g).unwrap();
        assert_eq!(n.complex, c);
        let d2 = ChainComplex::disk(f3(), 2);
        let g2 = gamma(&d2, 4).unwrap();
        assert!(g2.is_valid());
        assert_eq!(normalize(&g2).unwrap().complex, d2);
    }

    #[test]
    fn normalize_representable_interval() {
        // k[Delta[1]] has homology (1, 0): contractible
        let m = free_module(f3(), &FiniteSimplicialSet::delta(1, 3));
        let n = normalize(&m).unwrap();
        assert!(n.complex.is_valid());
        assert_eq!(crate::chain::homology_dims(&n.complex), vec![1]);
    }

    #[test]
    fn dk_iso_roundtrip() {
        let m = free_module(f3(), &FiniteSimplicialSet::delta(1, 3));
        let iso = dk_counit_iso(&m).unwrap();
        assert!(iso.counit.is_simplicial());
        assert!(iso.unit.is_simplicial());
        let round = iso.unit.then(&iso.counit).unwrap();
        assert_eq!(round, SimplicialMap::identity(&m));
    }

    #[test]
    fn pi0_of_constant() {
        let m = SimplicialModule::constant(f3(), 2);
        let p = pi0(&m).unwrap();
        assert_eq!(p.class_count(), 3);
        let reps = p.representatives();
        assert_eq!(reps.len(), 3);
        for (ix, r) in reps.iter().enumerate() {
            assert_eq!(p.class_of(r), ix);
        }
    }

    #[test]
    fn pi0_matches_h0_of_normalized() {
        let m = free_module(f3(), &FiniteSimplicialSet::delta(1, 2));
        let p = pi0(&m).unwrap();
        let n = normalize(&m).unwrap();
        let h0 = crate::chain::homology_dims(&n.complex)[0];
        assert_eq!(p.class_count(), 3usize.pow(h0 as u32));
    }

    #[test]
    fn pi0_rejects_rationals() {
        let m = SimplicialModule::constant(Field::Rationals, 2);
        assert!(matches!(pi0(&m), Err(Error::RequiresFiniteField)));
    }
}

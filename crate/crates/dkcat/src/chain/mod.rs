//! Non-negatively graded chain complexes of finite-rank free modules.
//!
//! A complex is a list of ranks `C_0, ..., C_top` plus one boundary matrix
//! per degree `n >= 1`, `d_n : C_n -> C_{n-1}`. Ranks beyond `top` are zero
//! and boundary/component accessors synthesize zero matrices there, so maps
//! between complexes of different lengths compare degreewise without fuss.
//!
//! Everything carries an explicit canonical basis: constructions like
//! tensor products, internal homs, pullbacks and pushouts fix their basis
//! conventions in their own submodules, and equality of maps is bit-exact
//! matrix equality.

mod homology;
mod hom;
mod limits;
mod tensor;

pub use homology::{homology_dims, induced_on_homology, is_quasi_iso, HomologyData};
pub use hom::{
    adjoint_transpose, adjoint_untranspose, cotensor_element, evaluation_map, hom_map,
    internal_hom, HomSpace,
};
pub use limits::{
    coproduct, pullback, pushout, wide_pullback, Coproduct, Pullback, Pushout, WidePullback,
};
pub use tensor::{
    associator, symmetry, tensor, tensor_insert_left, tensor_insert_right, tensor_map,
    tensor_offsets, unit_left_iso, unit_right_iso,
};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// A bounded chain complex `C_0 <- C_1 <- ... <- C_top`.
#[derive(Clone, PartialEq, Debug)]
pub struct ChainComplex {
    field: Field,
    ranks: Vec<usize>,
    /// `boundaries[n-1]` is `d_n`, shape `ranks[n-1] x ranks[n]`.
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds a complex after checking boundary shapes. Trailing zero ranks
    /// are trimmed so equal complexes have equal representations. `d^2 = 0`
    /// is *not* enforced here; see [`ChainComplex::validate`].
    pub fn new(field: Field, ranks: Vec<usize>, boundaries: Vec<Matrix>) -> Result<ChainComplex> {
        if boundaries.len() + 1 != ranks.len().max(1) && !(ranks.is_empty() && boundaries.is_empty())
        {
            return Err(Error::Shape(format!(
                "{} ranks need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.field() != field {
                return Err(Error::FieldMismatch);
            }
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::Shape(format!(
                    "boundary d_{} has shape {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        let mut c = ChainComplex {
            field,
            ranks,
            boundaries,
        };
        c.trim();
        Ok(c)
    }

    fn trim(&mut self) {
        while let Some(0) = self.ranks.last() {
            self.ranks.pop();
            self.boundaries.pop();
        }
        if self.ranks.is_empty() {
            self.boundaries.clear();
        }
    }

    /// The zero complex.
    pub fn zero(field: Field) -> ChainComplex {
        ChainComplex {
            field,
            ranks: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    /// The monoidal unit: rank 1 in degree 0.
    pub fn unit(field: Field) -> ChainComplex {
        ChainComplex {
            field,
            ranks: vec![1],
            boundaries: Vec::new(),
        }
    }

    /// Sphere: rank 1 concentrated in degree `n`.
    pub fn sphere(field: Field, n: usize) -> ChainComplex {
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        let boundaries = (1..=n)
            .map(|k| Matrix::zeros(field, ranks[k - 1], ranks[k]))
            .collect();
        ChainComplex {
            field,
            ranks,
            boundaries,
        }
    }

    /// Disk: ranks 1 in degrees `n` and `n-1` with identity boundary; `n >= 1`.
    pub fn disk(field: Field, n: usize) -> ChainComplex {
        assert!(n >= 1, "disk needs n >= 1");
        let mut ranks = vec![0; n + 1];
        ranks[n] = 1;
        ranks[n - 1] = 1;
        let boundaries = (1..=n)
            .map(|k| {
                if k == n {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, ranks[k - 1], ranks[k])
                }
            })
            .collect();
        ChainComplex {
            field,
            ranks,
            boundaries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Index of the top (possibly zero-rank-free) degree; the zero complex
    /// reports 0.
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_n : C_n -> C_{n-1}`; synthesizes a zero matrix outside the stored
    /// range (and for `n = 0`, where the target has no degree `-1`).
    pub fn boundary(&self, n: usize) -> Matrix {
        if n >= 1 {
            if let Some(d) = self.boundaries.get(n - 1) {
                return d.clone();
            }
        }
        let rows = if n >= 1 { self.rank(n - 1) } else { 0 };
        Matrix::zeros(self.field, rows, self.rank(n))
    }

    /// Checks `d_n . d_{n+1} = 0` in every degree and reports the failures.
    pub fn validate(&self) -> ValidationReport {
        let mut failing = Vec::new();
        for n in 1..self.ranks.len() {
            let prod = self
                .boundary(n)
                .mul(&self.boundary(n + 1))
                .expect("boundary shapes validated on construction");
            if !prod.is_zero() {
                failing.push(n);
            }
        }
        ValidationReport { failing_degrees: failing }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Degreewise direct sum with canonical block layout (`self` first).
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let top = self.ranks.len().max(other.ranks.len());
        let ranks: Vec<usize> = (0..top).map(|n| self.rank(n) + other.rank(n)).collect();
        let boundaries = (1..top)
            .map(|n| self.boundary(n).block_diag(&other.boundary(n)))
            .collect();
        ChainComplex::new(self.field, ranks, boundaries)
    }

    /// Brutal truncation: discard all degrees above `level`.
    pub fn truncate(&self, level: usize) -> ChainComplex {
        let keep = (level + 1).min(self.ranks.len());
        ChainComplex {
            field: self.field,
            ranks: self.ranks[..keep].to_vec(),
            boundaries: self.boundaries[..keep.saturating_sub(1)].to_vec(),
        }
    }
}

/// Outcome of a `d^2 = 0` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Degrees `n` where `d_n . d_{n+1} != 0`.
    pub failing_degrees: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failing_degrees.is_empty()
    }
}

/// A degreewise map of chain complexes. Commutation with the boundaries is
/// checked by [`ChainMap::is_chain_map`], not by construction, so that
/// deliberately broken maps (mutation tests, axiom violations) can still be
/// represented and fed to verifiers.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// Shape-checks the components; missing high degrees are synthesized as
    /// zero matrices on access.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<Matrix>,
    ) -> Result<ChainMap> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        for (n, f) in components.iter().enumerate() {
            if f.field() != source.field() {
                return Err(Error::FieldMismatch);
            }
            if f.rows() != target.rank(n) || f.cols() != source.rank(n) {
                return Err(Error::Shape(format!(
                    "component {n} has shape {}x{}, expected {}x{}",
                    f.rows(),
                    f.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components,
        })
    }

    /// Builds and additionally checks the chain-map identity.
    pub fn validated(
        source: ChainComplex,
        target: ChainComplex,
        components: Vec<Matrix>,
    ) -> Result<ChainMap> {
        let f = ChainMap::new(source, target, components)?;
        if !f.is_chain_map() {
            return Err(Error::Invalid(
                "components do not commute with the boundaries".into(),
            ));
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let components = (0..c.ranks.len())
            .map(|n| Matrix::identity(c.field, c.rank(n)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: Vec::new(),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn component(&self, n: usize) -> Matrix {
        self.components.get(n).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.source.field, self.target.rank(n), self.source.rank(n))
        })
    }

    /// `f_{n-1} . d_n = d_n . f_n` in every degree.
    pub fn is_chain_map(&self) -> bool {
        let top = self.source.ranks.len().max(self.target.ranks.len());
        for n in 1..=top {
            let lhs = self
                .component(n - 1)
                .mul(&self.source.boundary(n))
                .expect("shapes checked");
            let rhs = self
                .target
                .boundary(n)
                .mul(&self.component(n))
                .expect("shapes checked");
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Composition in diagram order: `self` first, `then` second.
    pub fn then(&self, then: &ChainMap) -> Result<ChainMap> {
        if self.target != then.source {
            return Err(Error::Shape(
                "composition: target of first differs from source of second".into(),
            ));
        }
        let top = self.source.ranks.len().max(then.target.ranks.len());
        let components = (0..top)
            .map(|n| then.component(n).mul(&self.component(n)).expect("shapes"))
            .collect();
        ChainMap::new(self.source.clone(), then.target.clone(), components)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("sum of maps with different endpoints".into()));
        }
        let top = self.source.ranks.len().max(self.target.ranks.len());
        let components = (0..top)
            .map(|n| self.component(n).add(&other.component(n)).expect("shapes"))
            .collect();
        ChainMap::new(self.source.clone(), self.target.clone(), components)
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(Matrix::neg).collect(),
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// Restricts to the brutal truncations of source and target.
    pub fn truncate(&self, level: usize) -> ChainMap {
        let source = self.source.truncate(level);
        let target = self.target.truncate(level);
        let components = (0..source.ranks().len())
            .map(|n| self.component(n))
            .collect();
        ChainMap {
            source,
            target,
            components,
        }
    }

    /// Surjective in all strictly positive degrees (projective fibration).
    pub fn is_fibration(&self) -> bool {
        let top = self.source.ranks.len().max(self.target.ranks.len());
        (1..=top).all(|n| self.component(n).is_surjective())
    }

    /// Injective in every degree (cofibration over a field).
    pub fn is_cofibration(&self) -> bool {
        let top = self.source.ranks.len().max(self.target.ranks.len());
        (0..=top).all(|n| self.component(n).is_injective())
    }
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &Self) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let top = self
            .components
            .len()
            .max(other.components.len());
        (0..top).all(|n| self.component(n) == other.component(n))
    }
}

/// The generating cofibration `S^{n-1} -> D^n`; for `n = 0` this is
/// `0 -> I`.
pub fn generating_cofibration(field: Field, n: usize) -> ChainMap {
    if n == 0 {
        return ChainMap::zero(&ChainComplex::zero(field), &ChainComplex::unit(field));
    }
    let sphere = ChainComplex::sphere(field, n - 1);
    let disk = ChainComplex::disk(field, n);
    let mut components = vec![Matrix::zeros(field, 0, 0); n];
    for k in 0..n {
        components[k] = Matrix::zeros(field, disk.rank(k), sphere.rank(k));
    }
    // degree n-1: the identity inclusion
    components[n - 1] = Matrix::identity(field, 1);
    ChainMap::new(sphere, disk, components).expect("shapes by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    /// The interval complex `ke -> ka (+) kb`, `de = b - a`.
    pub(crate) fn interval(field: Field) -> ChainComplex {
        ChainComplex::new(
            field,
            vec![2, 1],
            vec![Matrix::from_rows_i64(field, &[vec![-1], vec![1]])],
        )
        .unwrap()
    }

    #[test]
    fn unit_is_valid() {
        assert!(ChainComplex::unit(q()).is_valid());
    }

    #[test]
    fn interval_is_valid() {
        assert!(interval(q()).is_valid());
    }

    #[test]
    fn validate_checks_only_d_squared() {
        // de = b + a still satisfies d^2 = 0 (there is no degree 2)
        let broken = ChainComplex::new(
            q(),
            vec![2, 1],
            vec![Matrix::from_rows_i64(q(), &[vec![1], vec![1]])],
        )
        .unwrap();
        assert!(broken.is_valid());
    }

    #[test]
    fn validate_reports_failing_degree() {
        // d_1 d_2 != 0
        let c = ChainComplex::new(
            q(),
            vec![1, 1, 1],
            vec![
                Matrix::identity(q(), 1),
                Matrix::identity(q(), 1),
            ],
        )
        .unwrap();
        assert_eq!(c.validate().failing_degrees, vec![1]);
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        let r = ChainComplex::new(q(), vec![2, 1], vec![Matrix::zeros(q(), 1, 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn trailing_zero_ranks_trim() {
        let c = ChainComplex::new(
            q(),
            vec![1, 0, 0],
            vec![Matrix::zeros(q(), 1, 0), Matrix::zeros(q(), 0, 0)],
        )
        .unwrap();
        assert_eq!(c, ChainComplex::unit(q()));
        assert_eq!(c.rank(2), 0);
    }

    #[test]
    fn chain_map_commutation() {
        let i1 = interval(q());
        let unit = ChainComplex::unit(q());
        // p: a, b -> 1
        let p = ChainMap::new(
            i1.clone(),
            unit.clone(),
            vec![Matrix::from_rows_i64(q(), &[vec![1, 1]]), Matrix::zeros(q(), 0, 1)],
        )
        .unwrap();
        assert!(p.is_chain_map());
        let bad = ChainMap::new(
            i1,
            unit,
            vec![Matrix::from_rows_i64(q(), &[vec![1, 2]]), Matrix::zeros(q(), 0, 1)],
        )
        .unwrap();
        assert!(!bad.is_chain_map());
    }

    #[test]
    fn generating_cofibrations_are_cofibrations() {
        for n in 0..4 {
            let f = generating_cofibration(q(), n);
            assert!(f.is_chain_map(), "n = {n}");
            assert!(f.is_cofibration(), "n = {n}");
        }
    }

    #[test]
    fn zero_to_disk_not_fibration() {
        let f = ChainMap::zero(&ChainComplex::zero(q()), &ChainComplex::disk(q(), 1));
        assert!(!f.is_fibration());
    }

    #[test]
    fn map_to_zero_complex_is_fibration() {
        let f = ChainMap::zero(&interval(q()), &ChainComplex::zero(q()));
        assert!(f.is_fibration());
        assert!(ChainMap::identity(&interval(q())).is_fibration());
    }

    #[test]
    fn d1_cokernel_of_generating_cofibration() {
        let f = generating_cofibration(q(), 1);
        assert_eq!(f.source(), &ChainComplex::sphere(q(), 0));
        assert_eq!(f.target(), &ChainComplex::disk(q(), 1));
        assert!(f.component(0).is_injective());
    }
}

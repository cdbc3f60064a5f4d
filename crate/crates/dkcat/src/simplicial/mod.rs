//! Truncated simplicial modules over a field.
//!
//! A `SimplicialModule` carries levels `0..=L`, face matrices
//! `d_i : M_n -> M_{n-1}` for `1 <= n <= L`, `0 <= i <= n`, and degeneracy
//! matrices `s_i : M_n -> M_{n+1}` for `0 <= n < L`, `0 <= i <= n`. The
//! simplicial identities are a checkable property
//! ([`SimplicialModule::validate`]), not a construction invariant, so that
//! verifiers can consume deliberately broken data and report on it.

mod dold_kan;
mod ez;

pub use dold_kan::{
    dk_counit_iso, gamma, gamma_map, normalize, normalize_map, pi0, DkIso, NormalizedData, Pi0,
};
pub use ez::{alexander_whitney, shuffle};

use crate::field::Field;
use crate::matrix::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialModule {
    field: Field,
    /// Level ranks `0..=L`.
    ranks: Vec<usize>,
    /// `faces[n-1][i]` is `d_i` at level `n`.
    faces: Vec<Vec<Matrix>>,
    /// `degeneracies[n][i]` is `s_i` at level `n`.
    degeneracies: Vec<Vec<Matrix>>,
}

impl SimplicialModule {
    pub fn new(
        field: Field,
        ranks: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degeneracies: Vec<Vec<Matrix>>,
    ) -> Result<SimplicialModule> {
        if ranks.is_empty() {
            return Err(Error::Shape("simplicial module needs level 0".into()));
        }
        let level = ranks.len() - 1;
        if faces.len() != level || degeneracies.len() != level {
            return Err(Error::Shape(format!(
                "truncation {level} needs {level} face and degeneracy lists"
            )));
        }
        for n in 1..=level {
            if faces[n - 1].len() != n + 1 {
                return Err(Error::Shape(format!("level {n} needs {} faces", n + 1)));
            }
            for (i, d) in faces[n - 1].iter().enumerate() {
                if d.rows() != ranks[n - 1] || d.cols() != ranks[n] || d.field() != field {
                    return Err(Error::Shape(format!("face d_{i} at level {n} has wrong shape")));
                }
            }
        }
        for n in 0..level {
            if degeneracies[n].len() != n + 1 {
                return Err(Error::Shape(format!("level {n} needs {} degeneracies", n + 1)));
            }
            for (i, s) in degeneracies[n].iter().enumerate() {
                if s.rows() != ranks[n + 1] || s.cols() != ranks[n] || s.field() != field {
                    return Err(Error::Shape(format!(
                        "degeneracy s_{i} at level {n} has wrong shape"
                    )));
                }
            }
        }
        Ok(SimplicialModule {
            field,
            ranks,
            faces,
            degeneracies,
        })
    }

    /// The constant module `ck`: every level free of rank 1, all structure
    /// maps the identity.
    pub fn constant(field: Field, level: usize) -> SimplicialModule {
        let ranks = vec![1; level + 1];
        let faces = (1..=level)
            .map(|n| vec![Matrix::identity(field, 1); n + 1])
            .collect();
        let degeneracies = (0..level)
            .map(|n| vec![Matrix::identity(field, 1); n + 1])
            .collect();
        SimplicialModule {
            field,
            ranks,
            faces,
            degeneracies,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn level(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n - 1][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &Matrix {
        &self.degeneracies[n][i]
    }

    /// All simplicial identities up to the truncation level.
    pub fn validate(&self) -> Result<()> {
        let level = self.level();
        // d_i d_j = d_{j-1} d_i  (i < j)
        for n in 2..=level {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.face(n - 1, i).mul(self.face(n, j))?;
                    let rhs = self.face(n - 1, j - 1).mul(self.face(n, i))?;
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "d_{i} d_{j} != d_{} d_{i} at level {n}",
                            j - 1
                        )));
                    }
                }
            }
        }
        // d_i s_j relations
        for n in 0..level {
            for j in 0..=n {
                for i in 0..=(n + 1) {
                    let lhs = self.face(n + 1, i).mul(self.degeneracy(n, j))?;
                    let rhs = if i < j {
                        self.degeneracy(n - 1, j - 1).mul(self.face(n, i))?
                    } else if i == j || i == j + 1 {
                        Matrix::identity(self.field, self.rank(n))
                    } else {
                        // i > j + 1
                        if n == 0 {
                            return Err(Error::Invalid("face index out of range".into()));
                        }
                        self.degeneracy(n - 1, j).mul(self.face(n, i - 1))?
                    };
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "d_{i} s_{j} relation fails at level {n}"
                        )));
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i  (i <= j)
        for n in 0..level.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degeneracy(n + 1, i).mul(self.degeneracy(n, j))?;
                    let rhs = self.degeneracy(n + 1, j + 1).mul(self.degeneracy(n, i))?;
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "s_{i} s_{j} relation fails at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Pointwise tensor product: `(A (x) B)_n = A_n (x) B_n` with structure
    /// maps `d_i (x) d_i`, `s_i (x) s_i`.
    pub fn tensor(&self, other: &SimplicialModule) -> Result<SimplicialModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.level() != other.level() {
            return Err(Error::Shape("pointwise tensor needs equal truncation".into()));
        }
        let level = self.level();
        let ranks = (0..=level)
            .map(|n| self.rank(n) * other.rank(n))
            .collect();
        let mut faces = Vec::new();
        for n in 1..=level {
            faces.push(
                (0..=n)
                    .map(|i| self.face(n, i).kron(other.face(n, i)).expect("field"))
                    .collect(),
            );
        }
        let mut degeneracies = Vec::new();
        for n in 0..level {
            degeneracies.push(
                (0..=n)
                    .map(|i| {
                        self.degeneracy(n, i)
                            .kron(other.degeneracy(n, i))
                            .expect("field")
                    })
                    .collect(),
            );
        }
        SimplicialModule::new(self.field, ranks, faces, degeneracies)
    }

    /// Levelwise direct sum.
    pub fn direct_sum(&self, other: &SimplicialModule) -> Result<SimplicialModule> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.level() != other.level() {
            return Err(Error::Shape("direct sum needs equal truncation".into()));
        }
        let level = self.level();
        let ranks = (0..=level).map(|n| self.rank(n) + other.rank(n)).collect();
        let faces = (1..=level)
            .map(|n| {
                (0..=n)
                    .map(|i| self.face(n, i).block_diag(other.face(n, i)))
                    .collect()
            })
            .collect();
        let degeneracies = (0..level)
            .map(|n| {
                (0..=n)
                    .map(|i| self.degeneracy(n, i).block_diag(other.degeneracy(n, i)))
                    .collect()
            })
            .collect();
        SimplicialModule::new(self.field, ranks, faces, degeneracies)
    }
}

/// A levelwise map of simplicial modules; commutation with the structure
/// maps is a checkable property.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: SimplicialModule,
    target: SimplicialModule,
    components: Vec<Matrix>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialModule,
        target: SimplicialModule,
        components: Vec<Matrix>,
    ) -> Result<SimplicialMap> {
        if source.field != target.field {
            return Err(Error::FieldMismatch);
        }
        if source.level() != target.level() {
            return Err(Error::Shape("map between different truncations".into()));
        }
        if components.len() != source.ranks.len() {
            return Err(Error::Shape("one component per level required".into()));
        }
        for (n, c) in components.iter().enumerate() {
            if c.rows() != target.rank(n) || c.cols() != source.rank(n) {
                return Err(Error::Shape(format!("component {n} has wrong shape")));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(m: &SimplicialModule) -> SimplicialMap {
        let components = (0..=m.level())
            .map(|n| Matrix::identity(m.field, m.rank(n)))
            .collect();
        SimplicialMap {
            source: m.clone(),
            target: m.clone(),
            components,
        }
    }

    pub fn zero(source: &SimplicialModule, target: &SimplicialModule) -> SimplicialMap {
        let components = (0..=source.level())
            .map(|n| Matrix::zeros(source.field, target.rank(n), source.rank(n)))
            .collect();
        SimplicialMap {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    pub fn source(&self) -> &SimplicialModule {
        &self.source
    }

    pub fn target(&self) -> &SimplicialModule {
        &self.target
    }

    pub fn component(&self, n: usize) -> &Matrix {
        &self.components[n]
    }

    pub fn is_simplicial(&self) -> bool {
        let level = self.source.level();
        for n in 1..=level {
            for i in 0..=n {
                let lhs = self.components[n - 1].mul(self.source.face(n, i)).unwrap();
                let rhs = self.target.face(n, i).mul(&self.components[n]).unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
        for n in 0..level {
            for i in 0..=n {
                let lhs = self.components[n + 1]
                    .mul(self.source.degeneracy(n, i))
                    .unwrap();
                let rhs = self.target.degeneracy(n, i).mul(&self.components[n]).unwrap();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != other.source {
            return Err(Error::Shape("composition endpoint mismatch".into()));
        }
        let components = (0..self.components.len())
            .map(|n| other.components[n].mul(&self.components[n]).expect("shape"))
            .collect();
        SimplicialMap::new(self.source.clone(), other.target.clone(), components)
    }

    pub fn is_levelwise_iso(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    /// Pointwise tensor of maps.
    pub fn tensor(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        let source = self.source.tensor(&other.source)?;
        let target = self.target.tensor(&other.target)?;
        let components = (0..self.components.len())
            .map(|n| self.components[n].kron(&other.components[n]).expect("field"))
            .collect();
        SimplicialMap::new(source, target, components)
    }

    /// Weak equivalence in the transferred structure: the normalized map is
    /// a quasi-isomorphism.
    pub fn is_weak_equivalence(&self) -> bool {
        match normalize_map(self) {
            Ok(f) => crate::chain::is_quasi_iso(&f),
            Err(_) => false,
        }
    }

    /// Fibration in the transferred structure: the normalized map is
    /// surjective in positive degrees. Simplicial modules are simplicial
    /// groups, so this agrees with the Kan-lifting definition.
    pub fn is_fibration(&self) -> bool {
        match normalize_map(self) {
            Ok(f) => f.is_fibration(),
            Err(_) => false,
        }
    }

    /// Cofibration over a field: the normalized map is degreewise injective.
    pub fn is_cofibration(&self) -> bool {
        match normalize_map(self) {
            Ok(f) => f.is_cofibration(),
            Err(_) => false,
        }
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.components == other.components
    }
}

/// A finite truncated simplicial set: level sets `0..=L` with face and
/// degeneracy functions given by index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    /// Sizes of the level sets.
    pub sizes: Vec<usize>,
    /// `faces[n-1][i][k]` = index of `d_i(k)`.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][i][k]` = index of `s_i(k)`.
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

impl FiniteSimplicialSet {
    pub fn level(&self) -> usize {
        self.sizes.len() - 1
    }

    /// The standard simplex `Delta[m]` truncated at `level`: level `n` is
    /// the set of monotone maps `[n] -> [m]`, enumerated lexicographically.
    pub fn delta(m: usize, level: usize) -> FiniteSimplicialSet {
        let simplices: Vec<Vec<Vec<usize>>> = (0..=level)
            .map(|n| monotone_maps(n, m))
            .collect();
        let index_of = |n: usize, f: &Vec<usize>| -> usize {
            simplices[n].iter().position(|g| g == f).expect("in range")
        };
        let sizes = simplices.iter().map(Vec::len).collect();
        let mut faces = Vec::new();
        for n in 1..=level {
            let mut per_i = Vec::new();
            for i in 0..=n {
                per_i.push(
                    simplices[n]
                        .iter()
                        .map(|f| {
                            let mut g = f.clone();
                            g.remove(i);
                            index_of(n - 1, &g)
                        })
                        .collect(),
                );
            }
            faces.push(per_i);
        }
        let mut degeneracies = Vec::new();
        for n in 0..level {
            let mut per_i = Vec::new();
            for i in 0..=n {
                per_i.push(
                    simplices[n]
                        .iter()
                        .map(|f| {
                            let mut g = f.clone();
                            g.insert(i, f[i]);
                            index_of(n + 1, &g)
                        })
                        .collect(),
                );
            }
            degeneracies.push(per_i);
        }
        FiniteSimplicialSet {
            sizes,
            faces,
            degeneracies,
        }
    }

    /// The terminal simplicial set.
    pub fn point(level: usize) -> FiniteSimplicialSet {
        FiniteSimplicialSet::delta(0, level)
    }

    /// Levelwise product with index `(x, y) -> x * |Y_n| + y`.
    pub fn product(&self, other: &FiniteSimplicialSet) -> Result<FiniteSimplicialSet> {
        if self.level() != other.level() {
            return Err(Error::Shape("product needs equal truncation".into()));
        }
        let level = self.level();
        let sizes: Vec<usize> = (0..=level)
            .map(|n| self.sizes[n] * other.sizes[n])
            .collect();
        let mut faces = Vec::new();
        for n in 1..=level {
            let mut per_i = Vec::new();
            for i in 0..=n {
                let mut table = Vec::with_capacity(sizes[n]);
                for x in 0..self.sizes[n] {
                    for y in 0..other.sizes[n] {
                        table.push(
                            self.faces[n - 1][i][x] * other.sizes[n - 1]
                                + other.faces[n - 1][i][y],
                        );
                    }
                }
                per_i.push(table);
            }
            faces.push(per_i);
        }
        let mut degeneracies = Vec::new();
        for n in 0..level {
            let mut per_i = Vec::new();
            for i in 0..=n {
                let mut table = Vec::with_capacity(sizes[n]);
                for x in 0..self.sizes[n] {
                    for y in 0..other.sizes[n] {
                        table.push(
                            self.degeneracies[n][i][x] * other.sizes[n + 1]
                                + other.degeneracies[n][i][y],
                        );
                    }
                }
                per_i.push(table);
            }
            degeneracies.push(per_i);
        }
        Ok(FiniteSimplicialSet {
            sizes,
            faces,
            degeneracies,
        })
    }

    /// Simplicial identities as function equations.
    pub fn validate(&self) -> Result<()> {
        free_module(Field::Rationals, self).validate()
    }
}

fn monotone_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    // all monotone f : [n] -> [m] in lexicographic order
    let mut out = Vec::new();
    let mut cur = vec![0usize; n + 1];
    loop {
        out.push(cur.clone());
        // increment
        let mut k = n + 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < m {
                cur[k] += 1;
                for j in k + 1..=n {
                    cur[j] = cur[k];
                }
                break;
            }
        }
    }
}

/// The free simplicial module on a finite simplicial set: level sets become
/// bases, faces and degeneracies become 0/1 matrices.
pub fn free_module(field: Field, x: &FiniteSimplicialSet) -> SimplicialModule {
    let level = x.level();
    let table_to_matrix = |table: &Vec<usize>, rows: usize| -> Matrix {
        let mut m = Matrix::zeros(field, rows, table.len());
        for (k, &img) in table.iter().enumerate() {
            m.set(img, k, field.one());
        }
        m
    };
    let faces = (1..=level)
        .map(|n| {
            (0..=n)
                .map(|i| table_to_matrix(&x.faces[n - 1][i], x.sizes[n - 1]))
                .collect()
        })
        .collect();
    let degeneracies = (0..level)
        .map(|n| {
            (0..=n)
                .map(|i| table_to_matrix(&x.degeneracies[n][i], x.sizes[n + 1]))
                .collect()
        })
        .collect();
    SimplicialModule::new(field, x.sizes.clone(), faces, degeneracies)
        .expect("free module shapes by construction")
}

/// Levelwise pushout with the canonical cokernel bases, structure maps
/// transported through the projections.
pub struct SmodPushout {
    pub object: SimplicialModule,
    pub in1: SimplicialMap,
    pub in2: SimplicialMap,
    sections: Vec<Matrix>,
}

pub fn pushout_smod(f: &SimplicialMap, g: &SimplicialMap) -> Result<SmodPushout> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout: domains differ".into()));
    }
    let a = f.target().clone();
    let b = g.target().clone();
    let field = a.field();
    let level = a.level();
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    let mut ranks = Vec::new();
    for n in 0..=level {
        let v = f.component(n).vstack(&g.component(n).neg())?;
        let total = v.rows();
        let (r, pivots) = v.transpose().rref();
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
        ranks.push(free.len());
        projections.push(proj);
        sections.push(sect);
    }
    let faces = (1..=level)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let d = a.face(n, i).block_diag(b.face(n, i));
                    projections[n - 1]
                        .mul(&d.mul(&sections[n]).expect("shape"))
                        .expect("shape")
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..level)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let s = a.degeneracy(n, i).block_diag(b.degeneracy(n, i));
                    projections[n + 1]
                        .mul(&s.mul(&sections[n]).expect("shape"))
                        .expect("shape")
                })
                .collect()
        })
        .collect();
    let object = SimplicialModule::new(field, ranks.clone(), faces, degeneracies)?;
    let in1c = (0..=level)
        .map(|n| projections[n].submatrix(0, ranks[n], 0, a.rank(n)))
        .collect();
    let in2c = (0..=level)
        .map(|n| projections[n].submatrix(0, ranks[n], a.rank(n), b.rank(n)))
        .collect();
    Ok(SmodPushout {
        in1: SimplicialMap::new(a, object.clone(), in1c)?,
        in2: SimplicialMap::new(b, object.clone(), in2c)?,
        object,
        sections,
    })
}

impl SmodPushout {
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        if u.target() != v.target() {
            return Err(Error::Shape("cocone legs have different targets".into()));
        }
        let comps = (0..self.sections.len())
            .map(|n| {
                u.component(n)
                    .hstack(v.component(n))
                    .and_then(|j| j.mul(&self.sections[n]))
            })
            .collect::<Result<Vec<_>>>()?;
        let w = SimplicialMap::new(self.object.clone(), u.target().clone(), comps)?;
        if self.in1.then(&w)? != *u || self.in2.then(&w)? != *v {
            return Err(Error::Invalid(
                "cocone does not factor through the pushout".into(),
            ));
        }
        Ok(w)
    }
}

/// Levelwise coproduct (direct sum) with injections.
pub struct SmodCoproduct {
    pub object: SimplicialModule,
    pub in1: SimplicialMap,
    pub in2: SimplicialMap,
}

pub fn coproduct_smod(a: &SimplicialModule, b: &SimplicialModule) -> Result<SmodCoproduct> {
    let object = a.direct_sum(b)?;
    let field = a.field();
    let in1c = (0..=a.level())
        .map(|n| {
            let mut m = Matrix::zeros(field, object.rank(n), a.rank(n));
            m.paste(0, 0, &Matrix::identity(field, a.rank(n)));
            m
        })
        .collect();
    let in2c = (0..=a.level())
        .map(|n| {
            let mut m = Matrix::zeros(field, object.rank(n), b.rank(n));
            m.paste(a.rank(n), 0, &Matrix::identity(field, b.rank(n)));
            m
        })
        .collect();
    Ok(SmodCoproduct {
        in1: SimplicialMap::new(a.clone(), object.clone(), in1c)?,
        in2: SimplicialMap::new(b.clone(), object.clone(), in2c)?,
        object,
    })
}

impl SmodCoproduct {
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        if u.target() != v.target() {
            return Err(Error::Shape("cotuple legs have different targets".into()));
        }
        let comps = (0..=self.object.level())
            .map(|n| u.component(n).hstack(v.component(n)))
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(self.object.clone(), u.target().clone(), comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn constant_module_is_valid() {
        for level in 0..4 {
            assert!(SimplicialModule::constant(f3(), level).is_valid());
        }
    }

    #[test]
    fn delta_one_counts() {
        let d1 = FiniteSimplicialSet::delta(1, 2);
        assert_eq!(d1.sizes, vec![2, 3, 4]);
        d1.validate().unwrap();
    }

    #[test]
    fn free_on_point_is_constant() {
        let pt = FiniteSimplicialSet::point(3);
        let m = free_module(f3(), &pt);
        assert_eq!(m, SimplicialModule::constant(f3(), 3));
    }

    #[test]
    fn free_functor_monoidal_on_products() {
        // k[X x Y] = k[X] (x) k[Y] bit-exact, on Delta[1] x Delta[0]
        let x = FiniteSimplicialSet::delta(1, 2);
        let y = FiniteSimplicialSet::delta(0, 2);
        let xy = x.product(&y).unwrap();
        let lhs = free_module(f3(), &xy);
        let rhs = free_module(f3(), &x).tensor(&free_module(f3(), &y)).unwrap();
        assert_eq!(lhs, rhs);
        // and on Delta[1] x Delta[1]
        let xx = x.product(&x).unwrap();
        let lhs2 = free_module(f3(), &xx);
        let rhs2 = free_module(f3(), &x).tensor(&free_module(f3(), &x)).unwrap();
        assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn tensor_of_valid_is_valid() {
        let a = free_module(f3(), &FiniteSimplicialSet::delta(1, 3));
        let b = SimplicialModule::constant(f3(), 3);
        assert!(a.tensor(&b).unwrap().is_valid());
        assert!(a.tensor(&a).unwrap().is_valid());
    }

    #[test]
    fn pushout_of_zero_legs_is_sum() {
        let a = SimplicialModule::constant(f3(), 2);
        let zero = SimplicialModule::new(
            f3(),
            vec![0, 0, 0],
            vec![vec![Matrix::zeros(f3(), 0, 0); 2], vec![Matrix::zeros(f3(), 0, 0); 3]],
            vec![vec![Matrix::zeros(f3(), 0, 0); 1], vec![Matrix::zeros(f3(), 0, 0); 2]],
        )
        .unwrap();
        let f = SimplicialMap::zero(&zero, &a);
        let g = SimplicialMap::zero(&zero, &a);
        let po = pushout_smod(&f, &g).unwrap();
        assert_eq!(po.object.rank(0), 2);
        assert!(po.object.is_valid());
    }
}

//! Pullbacks, pushouts and finite (co)products with canonical bases.
//!
//! A pullback is the degreewise kernel of the difference map with its
//! rref-canonical kernel basis; a pushout is the degreewise cokernel with
//! the basis given by the non-pivot coordinates of the canonical image
//! basis. Both come with universal-property solvers that produce the
//! induced map exactly or report failure.

use super::{ChainComplex, ChainMap};
use crate::matrix::Matrix;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: ChainComplex,
    pub pr1: ChainMap,
    pub pr2: ChainMap,
    /// Kernel basis per degree inside `A_n (+) B_n`.
    bases: Vec<Matrix>,
}

/// Pullback of the cospan `A --f--> C <--g-- B`.
pub fn pullback(f: &ChainMap, g: &ChainMap) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Shape("pullback: codomains differ".into()));
    }
    let a = f.source().clone();
    let b = g.source().clone();
    let field = a.field();
    let top = a.ranks().len().max(b.ranks().len());
    let mut bases = Vec::new();
    let mut ranks = Vec::new();
    for n in 0..top.max(1) {
        let diff = f.component(n).hstack(&g.component(n).neg())?;
        let k = diff.kernel_basis();
        ranks.push(k.cols());
        bases.push(k);
    }
    let mut boundaries = Vec::new();
    for n in 1..ranks.len() {
        let d = a.boundary(n).block_diag(&b.boundary(n));
        let image = d.mul(&bases[n])?;
        let coords = bases[n - 1]
            .solve(&image)?
            .ok_or_else(|| Error::Invalid("pullback differential escapes the kernel".into()))?;
        boundaries.push(coords);
    }
    let object = ChainComplex::new(field, ranks, boundaries)?;
    let pr1_comps: Vec<Matrix> = (0..top.max(1))
        .map(|n| bases[n].submatrix(0, a.rank(n), 0, bases[n].cols()))
        .collect();
    let pr2_comps: Vec<Matrix> = (0..top.max(1))
        .map(|n| bases[n].submatrix(a.rank(n), b.rank(n), 0, bases[n].cols()))
        .collect();
    let pr1 = ChainMap::new(object.clone(), a, pr1_comps)?;
    let pr2 = ChainMap::new(object.clone(), b, pr2_comps)?;
    Ok(Pullback {
        object,
        pr1,
        pr2,
        bases,
    })
}

impl Pullback {
    /// The unique map `T -> P` induced by a cone `u : T -> A`, `v : T -> B`
    /// with `f.u = g.v`. Errors if no exact factorization exists.
    pub fn induced(&self, u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        if u.source() != v.source() {
            return Err(Error::Shape("cone legs have different sources".into()));
        }
        let t = u.source().clone();
        let mut comps = Vec::new();
        for n in 0..t.ranks().len().max(self.object.ranks().len()) {
            let stacked = u.component(n).vstack(&v.component(n))?;
            let basis = self
                .bases
                .get(n)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(t.field(), stacked.rows(), 0));
            let coords = basis
                .solve(&stacked)?
                .ok_or_else(|| Error::Invalid("cone does not factor through the pullback".into()))?;
            comps.push(coords);
        }
        ChainMap::new(t, self.object.clone(), comps)
    }
}

#[derive(Clone, Debug)]
pub struct WidePullback {
    pub object: ChainComplex,
    /// Projections to the three upper objects, in diagram order.
    pub pr: [ChainMap; 3],
    bases: Vec<Matrix>,
}

/// Limit of the zigzag `A1 --u--> Z <--e1-- M --e0--> Z' <--v-- A2`
/// (the two `Z`s may differ): triples `(x, m, y)` with `u(x) = e1(m)` and
/// `e0(m) = v(y)`.
pub fn wide_pullback(
    u: &ChainMap,
    e1: &ChainMap,
    e0: &ChainMap,
    v: &ChainMap,
) -> Result<WidePullback> {
    if u.target() != e1.target() || e0.target() != v.target() {
        return Err(Error::Shape("wide pullback: codomains differ".into()));
    }
    if e1.source() != e0.source() {
        return Err(Error::Shape("wide pullback: middle objects differ".into()));
    }
    let a1 = u.source().clone();
    let mid = e1.source().clone();
    let a2 = v.source().clone();
    let field = a1.field();
    let top = a1
        .ranks()
        .len()
        .max(mid.ranks().len())
        .max(a2.ranks().len());
    let mut bases = Vec::new();
    let mut ranks = Vec::new();
    for n in 0..top.max(1) {
        // rows: first constraint u(x) - e1(m) = 0, second e0(m) - v(y) = 0
        let z1 = u.target().rank(n);
        let z2 = v.target().rank(n);
        let cols = a1.rank(n) + mid.rank(n) + a2.rank(n);
        let mut cm = Matrix::zeros(field, z1 + z2, cols);
        cm.paste(0, 0, &u.component(n));
        cm.paste(0, a1.rank(n), &e1.component(n).neg());
        cm.paste(z1, a1.rank(n), &e0.component(n));
        cm.paste(z1, a1.rank(n) + mid.rank(n), &v.component(n).neg());
        let k = cm.kernel_basis();
        ranks.push(k.cols());
        bases.push(k);
    }
    let mut boundaries = Vec::new();
    for n in 1..ranks.len() {
        let d = a1
            .boundary(n)
            .block_diag(&mid.boundary(n))
            .block_diag(&a2.boundary(n));
        let image = d.mul(&bases[n])?;
        let coords = bases[n - 1]
            .solve(&image)?
            .ok_or_else(|| Error::Invalid("wide pullback differential escapes the kernel".into()))?;
        boundaries.push(coords);
    }
    let object = ChainComplex::new(field, ranks, boundaries)?;
    let take = |row0: &dyn Fn(usize) -> usize, height: &dyn Fn(usize) -> usize| -> Vec<Matrix> {
        (0..top.max(1))
            .map(|n| bases[n].submatrix(row0(n), height(n), 0, bases[n].cols()))
            .collect()
    };
    let pr0 = ChainMap::new(
        object.clone(),
        a1.clone(),
        take(&|_| 0, &|n| a1.rank(n)),
    )?;
    let pr_mid = ChainMap::new(
        object.clone(),
        mid.clone(),
        take(&|n| a1.rank(n), &|n| mid.rank(n)),
    )?;
    let pr2 = ChainMap::new(
        object.clone(),
        a2.clone(),
        take(&|n| a1.rank(n) + mid.rank(n), &|n| a2.rank(n)),
    )?;
    Ok(WidePullback {
        object,
        pr: [pr0, pr_mid, pr2],
        bases,
    })
}

impl WidePullback {
    /// Factors a cone `(u, w, v)` through the limit.
    pub fn induced(&self, u: &ChainMap, w: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        let t = u.source().clone();
        if w.source() != &t || v.source() != &t {
            return Err(Error::Shape("cone legs have different sources".into()));
        }
        let mut comps = Vec::new();
        for n in 0..t.ranks().len().max(self.object.ranks().len()) {
            let stacked = u
                .component(n)
                .vstack(&w.component(n))?
                .vstack(&v.component(n))?;
            let basis = self
                .bases
                .get(n)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(t.field(), stacked.rows(), 0));
            let coords = basis
                .solve(&stacked)?
                .ok_or_else(|| Error::Invalid("cone does not factor through the wide pullback".into()))?;
            comps.push(coords);
        }
        ChainMap::new(t, self.object.clone(), comps)
    }
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: ChainComplex,
    pub in1: ChainMap,
    pub in2: ChainMap,
    /// Per degree: the projection `A_n (+) B_n -> Q_n` and a section of it.
    projections: Vec<Matrix>,
    sections: Vec<Matrix>,
}

/// Pushout of the span `A <--f-- C --g--> B`: degreewise cokernel of
/// `(f, -g)` with its canonical complement basis.
pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout: domains differ".into()));
    }
    let a = f.target().clone();
    let b = g.target().clone();
    let field = a.field();
    let top = a.ranks().len().max(b.ranks().len());
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    let mut ranks = Vec::new();
    for n in 0..top.max(1) {
        let v = f.component(n).vstack(&g.component(n).neg())?;
        let total = v.rows();
        // canonical image basis as row vectors
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
    let mut boundaries = Vec::new();
    for n in 1..ranks.len() {
        let d = a.boundary(n).block_diag(&b.boundary(n));
        let dn = projections[n - 1].mul(&d.mul(&sections[n])?)?;
        boundaries.push(dn);
    }
    let object = ChainComplex::new(field, ranks.clone(), boundaries)?;
    let in1_comps: Vec<Matrix> = (0..top.max(1))
        .map(|n| projections[n].submatrix(0, ranks[n], 0, a.rank(n)))
        .collect();
    let in2_comps: Vec<Matrix> = (0..top.max(1))
        .map(|n| projections[n].submatrix(0, ranks[n], a.rank(n), b.rank(n)))
        .collect();
    let in1 = ChainMap::new(a, object.clone(), in1_comps)?;
    let in2 = ChainMap::new(b, object.clone(), in2_comps)?;
    Ok(Pushout {
        object,
        in1,
        in2,
        projections,
        sections,
    })
}

impl Pushout {
    /// The unique map `Q -> T` induced by a cocone `u : A -> T`, `v : B -> T`
    /// with `u.f = v.g`. Verified after construction.
    pub fn induced(&self, u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        if u.target() != v.target() {
            return Err(Error::Shape("cocone legs have different targets".into()));
        }
        let t = u.target().clone();
        let mut comps = Vec::new();
        for n in 0..self.object.ranks().len() {
            let joint = u.component(n).hstack(&v.component(n))?;
            comps.push(joint.mul(&self.sections[n])?);
        }
        let w = ChainMap::new(self.object.clone(), t, comps)?;
        // the defining equations must hold exactly
        if self.in1.then(&w)? != *u || self.in2.then(&w)? != *v {
            return Err(Error::Invalid(
                "cocone does not factor through the pushout (legs disagree on the glue)".into(),
            ));
        }
        Ok(w)
    }
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: ChainComplex,
    pub in1: ChainMap,
    pub in2: ChainMap,
}

pub fn coproduct(a: &ChainComplex, b: &ChainComplex) -> Result<Coproduct> {
    let object = a.direct_sum(b)?;
    let field = a.field();
    let top = object.ranks().len();
    let mut in1c = Vec::new();
    let mut in2c = Vec::new();
    for n in 0..top {
        let mut m1 = Matrix::zeros(field, object.rank(n), a.rank(n));
        m1.paste(0, 0, &Matrix::identity(field, a.rank(n)));
        in1c.push(m1);
        let mut m2 = Matrix::zeros(field, object.rank(n), b.rank(n));
        m2.paste(a.rank(n), 0, &Matrix::identity(field, b.rank(n)));
        in2c.push(m2);
    }
    Ok(Coproduct {
        in1: ChainMap::new(a.clone(), object.clone(), in1c)?,
        in2: ChainMap::new(b.clone(), object.clone(), in2c)?,
        object,
    })
}

impl Coproduct {
    pub fn induced(&self, u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        if u.target() != v.target() {
            return Err(Error::Shape("cotuple legs have different targets".into()));
        }
        let mut comps = Vec::new();
        for n in 0..self.object.ranks().len() {
            comps.push(u.component(n).hstack(&v.component(n))?);
        }
        ChainMap::new(self.object.clone(), u.target().clone(), comps)
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

    fn d0(field: Field) -> ChainMap {
        ChainMap::new(
            ChainComplex::unit(field),
            interval(field),
            vec![Matrix::col_i64(field, &[1, 0])],
        )
        .unwrap()
    }

    fn d1(field: Field) -> ChainMap {
        ChainMap::new(
            ChainComplex::unit(field),
            interval(field),
            vec![Matrix::col_i64(field, &[0, 1])],
        )
        .unwrap()
    }

    #[test]
    fn pullback_along_identities() {
        let c = interval(q());
        let id = ChainMap::identity(&c);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.object.ranks(), c.ranks());
        assert!(pb.object.is_valid());
        assert_eq!(pb.pr1.then(&id).unwrap(), pb.pr2.then(&id).unwrap());
    }

    #[test]
    fn pullback_of_zero_leg() {
        let unit = ChainComplex::unit(q());
        let id = ChainMap::identity(&unit);
        let z = ChainMap::zero(&ChainComplex::zero(q()), &unit);
        let pb = pullback(&id, &z).unwrap();
        assert_eq!(pb.object, ChainComplex::zero(q()));
    }

    #[test]
    fn pullback_universal_property() {
        let i1 = interval(q());
        let p = ChainMap::new(
            i1.clone(),
            ChainComplex::unit(q()),
            vec![Matrix::from_rows_i64(q(), &[vec![1, 1]]), Matrix::zeros(q(), 0, 1)],
        )
        .unwrap();
        let pb = pullback(&p, &p).unwrap();
        // cone: (id, id)
        let w = pb.induced(&ChainMap::identity(&i1), &ChainMap::identity(&i1)).unwrap();
        assert_eq!(w.then(&pb.pr1).unwrap(), ChainMap::identity(&i1));
        assert_eq!(w.then(&pb.pr2).unwrap(), ChainMap::identity(&i1));
    }

    #[test]
    fn pushout_along_identities() {
        let c = interval(q());
        let id = ChainMap::identity(&c);
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.object.ranks(), c.ranks());
        assert!(po.object.is_valid());
    }

    #[test]
    fn glued_interval_is_i2() {
        // I[1] <-d1- I -d0-> I[1] pushes out to I[2] in canonical form
        let po = pushout(&d1(q()), &d0(q())).unwrap();
        assert_eq!(po.object.ranks(), &[3, 2]);
        let expected = ChainComplex::new(
            q(),
            vec![3, 2],
            vec![Matrix::from_rows_i64(
                q(),
                &[vec![-1, 0], vec![1, -1], vec![0, 1]],
            )],
        )
        .unwrap();
        assert_eq!(po.object, expected);
        assert!(po.object.is_valid());
    }

    #[test]
    fn pushout_with_zero_leg() {
        let c = interval(q());
        let zero = ChainComplex::zero(q());
        let f = ChainMap::zero(&zero, &c);
        let g = ChainMap::zero(&zero, &ChainComplex::unit(q()));
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.object.rank(0), 3);
        assert_eq!(po.object.rank(1), 1);
    }

    #[test]
    fn pushout_universal_property() {
        let po = pushout(&d1(q()), &d0(q())).unwrap();
        // cocone into I[1]: keep the first copy, collapse the second onto b
        let i1 = interval(q());
        let id = ChainMap::identity(&i1);
        let p = ChainMap::new(
            i1.clone(),
            ChainComplex::unit(q()),
            vec![Matrix::from_rows_i64(q(), &[vec![1, 1]]), Matrix::zeros(q(), 0, 1)],
        )
        .unwrap();
        let collapse_to_b = p.then(&d1(q())).unwrap();
        let w = po.induced(&id, &collapse_to_b).unwrap();
        assert_eq!(po.in1.then(&w).unwrap(), id);
        assert_eq!(po.in2.then(&w).unwrap(), collapse_to_b);
        // legs that disagree on the glue must be rejected
        let znot = ChainMap::zero(&i1, &i1);
        assert!(po.induced(&id, &znot).is_err());
    }

    #[test]
    fn coproduct_fold() {
        let unit = ChainComplex::unit(q());
        let cp = coproduct(&unit, &unit).unwrap();
        let fold = cp
            .induced(&ChainMap::identity(&unit), &ChainMap::identity(&unit))
            .unwrap();
        assert_eq!(fold.component(0), Matrix::from_rows_i64(q(), &[vec![1, 1]]));
    }

    #[test]
    fn wide_pullback_shape() {
        let unit = ChainComplex::unit(q());
        let id = ChainMap::identity(&unit);
        let wp = wide_pullback(&id, &id, &id, &id).unwrap();
        assert_eq!(wp.object.ranks(), &[1]);
        for pr in &wp.pr {
            assert!(pr.is_chain_map());
        }
    }
}

use crate::chainalg::ChainMap;
use crate::error::{Error, Result};
use crate::finspan::{cell_check, match_keys, Bijection, OverMap, SpanCell};

use super::morphism::{cc_compose, CCExpr, CCMorphism};

/// A 2-morphism `p : (c, u) ⇒ (d, v)`, given by a map of apexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCCell {
    source: CCMorphism,
    target: CCMorphism,
    graph: OverMap,
}

impl CCCell {
    /// Shape checks only; the compatibility condition is [`cc_cell_check`].
    pub fn new(source: CCMorphism, target: CCMorphism, graph: OverMap) -> Result<Self> {
        if source.source() != target.source() || source.target() != target.target() {
            return Err(Error::BoundaryMismatch(
                "cell between non-parallel morphisms".into(),
            ));
        }
        if graph.source() != source.apex() || graph.target() != target.apex() {
            return Err(Error::BoundaryMismatch(
                "cell graph does not join the apexes".into(),
            ));
        }
        Ok(CCCell {
            source,
            target,
            graph,
        })
    }

    pub fn from_graph(source: &CCMorphism, target: &CCMorphism, graph: Vec<usize>) -> Result<Self> {
        let g = OverMap::new(source.apex().clone(), target.apex().clone(), graph)?;
        Self::new(source.clone(), target.clone(), g)
    }

    pub fn identity(m: &CCMorphism) -> Self {
        CCCell {
            source: m.clone(),
            target: m.clone(),
            graph: OverMap::identity(m.apex()),
        }
    }

    pub fn source(&self) -> &CCMorphism {
        &self.source
    }

    pub fn target(&self) -> &CCMorphism {
        &self.target
    }

    pub fn graph(&self) -> &OverMap {
        &self.graph
    }

    pub fn is_invertible(&self) -> bool {
        self.graph.is_bijective()
    }

    /// Inverse of a bijective cell, itself checked.
    pub fn inverse(&self) -> Result<CCCell> {
        let cell = CCCell::new(
            self.target.clone(),
            self.source.clone(),
            self.graph.inverse()?,
        )?;
        cc_cell_check(&cell)?;
        Ok(cell)
    }

    /// `self` followed by `next`.
    pub fn vcompose(&self, next: &CCCell) -> Result<CCCell> {
        if self.target != next.source {
            return Err(Error::BoundaryMismatch(
                "vertical composition of cells".into(),
            ));
        }
        CCCell::new(
            self.source.clone(),
            next.target.clone(),
            self.graph.then(&next.graph)?,
        )
    }
}

/// Leg equations, then `v_δ = Σ_{p(γ)=δ} u_γ` for every target apex element.
pub fn cc_cell_check(cell: &CCCell) -> Result<()> {
    let span_cell = SpanCell::new(
        cell.source.span().clone(),
        cell.target.span().clone(),
        cell.graph.clone(),
    )?;
    cell_check(&span_cell)?;
    let fibers = cell.graph.fibers();
    for (d, fib) in fibers.iter().enumerate() {
        let v = cell.target.component(d);
        let mut sum = ChainMap::zero(v.source(), v.target())?;
        for &g in fib {
            let u = cell.source.component(g);
            sum = sum.add(&u.with_endpoints(v.source().clone(), v.target().clone())?)?;
        }
        if let Some((n, expected, found)) = first_difference(v, &sum) {
            return Err(Error::CellMismatch {
                element: cell.target.apex().label(d).to_string(),
                degree: n,
                expected,
                found,
            });
        }
    }
    Ok(())
}

fn first_difference(
    v: &ChainMap,
    sum: &ChainMap,
) -> Option<(i32, crate::chainalg::Matrix, crate::chainalg::Matrix)> {
    v.source()
        .degrees()
        .map(|n| (n, v.component(n), sum.component(n)))
        .find(|(_, a, b)| a != b)
}

/// `compose(a, b) ⇒ compose(a, b′)` from `cell : b ⇒ b′`.
pub fn whisker_left(a: &CCMorphism, cell: &CCCell) -> Result<CCCell> {
    let src = cc_compose(a, &cell.source)?;
    let dst = cc_compose(a, &cell.target)?;
    let graph = (0..src.apex().len())
        .map(|k| {
            let (i, j) = src.apex().factors(k).unwrap();
            dst.apex().position(i, cell.graph.apply(j)).unwrap()
        })
        .collect();
    CCCell::from_graph(&src, &dst, graph)
}

/// `compose(a, b) ⇒ compose(a′, b)` from `cell : a ⇒ a′`.
pub fn whisker_right(cell: &CCCell, b: &CCMorphism) -> Result<CCCell> {
    let src = cc_compose(&cell.source, b)?;
    let dst = cc_compose(&cell.target, b)?;
    let graph = (0..src.apex().len())
        .map(|k| {
            let (i, j) = src.apex().factors(k).unwrap();
            dst.apex().position(cell.graph.apply(i), j).unwrap()
        })
        .collect();
    CCCell::from_graph(&src, &dst, graph)
}

/// `compose(compose(a, b), c) ⇒ compose(a, compose(b, c))`.
pub fn assoc_cell(a: &CCMorphism, b: &CCMorphism, c: &CCMorphism) -> Result<CCCell> {
    let ab = cc_compose(a, b)?;
    let bc = cc_compose(b, c)?;
    let src = cc_compose(&ab, c)?;
    let dst = cc_compose(a, &bc)?;
    let graph = (0..src.apex().len())
        .map(|k| {
            let (ij, l) = src.apex().factors(k).unwrap();
            let (i, j) = ab.apex().factors(ij).unwrap();
            dst.apex()
                .position(i, bc.apex().position(j, l).unwrap())
                .unwrap()
        })
        .collect();
    CCCell::from_graph(&src, &dst, graph)
}

/// `compose(a, compose(b, c)) ⇒ compose(compose(a, b), c)`.
pub fn assoc_cell_inv(a: &CCMorphism, b: &CCMorphism, c: &CCMorphism) -> Result<CCCell> {
    let fwd = assoc_cell(a, b, c)?;
    CCCell::new(fwd.target.clone(), fwd.source.clone(), fwd.graph.inverse()?)
}

/// `compose(id, a) ⇒ a`.
pub fn left_unit_cell(a: &CCMorphism) -> Result<CCCell> {
    let src = cc_compose(&CCMorphism::identity(a.source()), a)?;
    let graph = (0..src.apex().len())
        .map(|k| src.apex().factors(k).unwrap().1)
        .collect();
    CCCell::from_graph(&src, a, graph)
}

/// `compose(a, id) ⇒ a`.
pub fn right_unit_cell(a: &CCMorphism) -> Result<CCCell> {
    let src = cc_compose(a, &CCMorphism::identity(a.target()))?;
    let graph = (0..src.apex().len())
        .map(|k| src.apex().factors(k).unwrap().0)
        .collect();
    CCCell::from_graph(&src, a, graph)
}

/// `a ⇒ compose(id, a)`.
pub fn left_unit_cell_inv(a: &CCMorphism) -> Result<CCCell> {
    let c = left_unit_cell(a)?;
    CCCell::new(c.target.clone(), c.source.clone(), c.graph.inverse()?)
}

/// `a ⇒ compose(a, id)`.
pub fn right_unit_cell_inv(a: &CCMorphism) -> Result<CCCell> {
    let c = right_unit_cell(a)?;
    CCCell::new(c.target.clone(), c.source.clone(), c.graph.inverse()?)
}

/// Vertical composite of a chain of cells.
pub fn vchain(cells: &[CCCell]) -> Result<CCCell> {
    let (first, rest) = cells
        .split_first()
        .ok_or_else(|| Error::BoundaryMismatch("empty chain of cells".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, c| acc.vcompose(c))
}

/// An invertible cell `a ⇒ b`, if one exists.
///
/// Candidates for an element are those with the same leg images and an equal
/// component; these classes are equivalence classes, so greedy matching in
/// input order is exhaustive.
pub fn cc_iso_search(a: &CCMorphism, b: &CCMorphism) -> Option<CCCell> {
    if a.source() != b.source() || a.target() != b.target() || a.apex().len() != b.apex().len() {
        return None;
    }
    let n = a.apex().len();
    let (al, ar) = (a.span().left(), a.span().right());
    let (bl, br) = (b.span().left(), b.span().right());
    let mut used = vec![false; n];
    let mut forward = Vec::with_capacity(n);
    for i in 0..n {
        let j = (0..n).find(|&j| {
            !used[j]
                && al.apply(i) == bl.apply(j)
                && ar.apply(i) == br.apply(j)
                && a.component(i).components() == b.component(j).components()
        })?;
        used[j] = true;
        forward.push(j);
    }
    let cell = CCCell::from_graph(a, b, forward).ok()?;
    cc_cell_check(&cell).ok()?;
    Some(cell)
}

/// The canonical invertible cell between two parallel composites, matched by provenance.
pub fn cc_recoord(a: &CCExpr, b: &CCExpr) -> Result<CCCell> {
    let (a, b) = (a.eval()?, b.eval()?);
    recoord_traced(&a.value, &a.keys, &b.value, &b.keys)
}

pub(crate) fn recoord_traced(
    a: &CCMorphism,
    a_keys: &[crate::finspan::Key],
    b: &CCMorphism,
    b_keys: &[crate::finspan::Key],
) -> Result<CCCell> {
    if a.source() != b.source() || a.target() != b.target() {
        return Err(Error::Recoord("composites are not parallel".into()));
    }
    let bij: Bijection = match_keys(a.span(), a_keys, b.span(), b_keys)?;
    let cell = CCCell::from_graph(a, b, bij.forward().to_vec())?;
    cc_cell_check(&cell)?;
    Ok(cell)
}

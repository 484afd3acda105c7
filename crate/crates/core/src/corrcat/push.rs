use std::collections::BTreeMap;

use crate::chainalg::{ChainMap, Matrix};
use crate::error::{Error, Result};
use crate::finspan::{OverMap, Span};
use crate::sheafops::{push, PushLayout, Sheaf};

use super::cell::{
    assoc_cell, assoc_cell_inv, left_unit_cell, left_unit_cell_inv, right_unit_cell,
    right_unit_cell_inv, vchain, whisker_left, whisker_right, CCCell,
};
use super::morphism::{cc_compose, CCMorphism, CCObject};

fn inclusion(
    layout: &PushLayout,
    l: &Sheaf,
    pushed: &Sheaf,
    f: &OverMap,
    x: usize,
) -> Result<ChainMap> {
    let y = f.apply(x);
    let src = l.stalk(x);
    let dst = pushed.stalk(y);
    let mut components = BTreeMap::new();
    for (&n, &r) in src.ranks() {
        let mut m = Matrix::zeros(l.ring(), dst.rank(n), r);
        m.set_block(layout.offset(y, x, n), 0, &Matrix::identity(l.ring(), r));
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(src.clone(), dst.clone(), components)
}

/// `f_♮ : (X, L) -> (X′, f_!L)` on the span `X <- X -> X′`, with inclusion components.
pub fn f_natural(f: &OverMap, l: &Sheaf) -> Result<CCMorphism> {
    let pushed = push(f, l)?;
    let layout = PushLayout::new(f, l);
    let maps = (0..f.source().len())
        .map(|x| inclusion(&layout, l, &pushed, f, x))
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::new(
        CCObject::new(l.clone()),
        CCObject::new(pushed),
        Span::graph(f),
        maps,
    )
}

/// `f^♮ : (X′, f_!L) -> (X, L)` on the span `X′ <- X -> X`, with projection components.
pub fn f_conatural(f: &OverMap, l: &Sheaf) -> Result<CCMorphism> {
    let pushed = push(f, l)?;
    let layout = PushLayout::new(f, l);
    let maps = (0..f.source().len())
        .map(|x| {
            let i = inclusion(&layout, l, &pushed, f, x)?;
            let components = i
                .components()
                .iter()
                .map(|(&n, m)| (n, m.transpose()))
                .collect();
            ChainMap::from_parts_unchecked(i.target().clone(), i.source().clone(), components)
        })
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::new(
        CCObject::new(pushed),
        CCObject::new(l.clone()),
        Span::cograph(f),
        maps,
    )
}

/// Unit and counit of `f_♮ ⊣ f^♮`, with both triangle composites.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub left: CCMorphism,
    pub right: CCMorphism,
    /// `id ⇒ compose(f_♮, f^♮)`, the diagonal.
    pub unit: CCCell,
    /// `compose(f^♮, f_♮) ⇒ id`, given by `f`.
    pub counit: CCCell,
    /// `f_♮ ⇒ f_♮` pasted from unit and counit.
    pub left_triangle: CCCell,
    /// `f^♮ ⇒ f^♮` pasted from unit and counit.
    pub right_triangle: CCCell,
}

pub fn f_adjunction(f: &OverMap, l: &Sheaf) -> Result<Adjunction> {
    let left = f_natural(f, l)?;
    let right = f_conatural(f, l)?;
    let id_x = CCMorphism::identity(left.source());
    let id_xp = CCMorphism::identity(left.target());
    let lr = cc_compose(&left, &right)?;
    let unit = CCCell::from_graph(
        &id_x,
        &lr,
        (0..f.source().len())
            .map(|x| lr.apex().position(x, x).unwrap())
            .collect(),
    )?;
    let rl = cc_compose(&right, &left)?;
    let counit = CCCell::from_graph(
        &rl,
        &id_xp,
        (0..rl.apex().len())
            .map(|k| f.apply(rl.apex().factors(k).unwrap().0))
            .collect(),
    )?;
    let left_triangle = vchain(&[
        left_unit_cell_inv(&left)?,
        whisker_right(&unit, &left)?,
        assoc_cell(&left, &right, &left)?,
        whisker_left(&left, &counit)?,
        right_unit_cell(&left)?,
    ])?;
    let right_triangle = vchain(&[
        right_unit_cell_inv(&right)?,
        whisker_left(&right, &unit)?,
        assoc_cell_inv(&right, &left, &right)?,
        whisker_right(&counit, &right)?,
        left_unit_cell(&right)?,
    ])?;
    Ok(Adjunction {
        left,
        right,
        unit,
        counit,
        left_triangle,
        right_triangle,
    })
}

/// A commuting square of spans: `c` over `(X, Y)` maps to `c′` over `(X′, Y′)`
/// via `f`, `p`, `g`.
#[derive(Clone, Debug)]
pub struct PushDiagram {
    pub f: OverMap,
    pub p: OverMap,
    pub g: OverMap,
    pub upper: Span,
    pub lower: Span,
}

impl PushDiagram {
    pub fn new(f: OverMap, p: OverMap, g: OverMap, upper: Span, lower: Span) -> Result<Self> {
        let d = PushDiagram {
            f,
            p,
            g,
            upper,
            lower,
        };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        if self.p.source() != self.upper.apex() || self.p.target() != self.lower.apex() {
            return Err(Error::NotCommuting("p does not join the apexes".into()));
        }
        if self.f.source() != self.upper.source() || self.f.target() != self.lower.source() {
            return Err(Error::NotCommuting("f does not join the sources".into()));
        }
        if self.g.source() != self.upper.target() || self.g.target() != self.lower.target() {
            return Err(Error::NotCommuting("g does not join the targets".into()));
        }
        for k in 0..self.upper.apex().len() {
            let kp = self.p.apply(k);
            if self.lower.left().apply(kp) != self.f.apply(self.upper.left().apply(k)) {
                return Err(Error::NotCommuting(format!(
                    "left square fails at {}",
                    self.upper.apex().label(k)
                )));
            }
            if self.lower.right().apply(kp) != self.g.apply(self.upper.right().apply(k)) {
                return Err(Error::NotCommuting(format!(
                    "right square fails at {}",
                    self.upper.apex().label(k)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(span: &Span) -> Self {
        PushDiagram {
            f: OverMap::identity(span.source()),
            p: OverMap::identity(span.apex()),
            g: OverMap::identity(span.target()),
            upper: span.clone(),
            lower: span.clone(),
        }
    }
}

/// `p^♯_! u` over the lower span: block `(c⃖γ, c⃗γ)` of the component at `γ′`
/// is the sum of `u_γ` over `p(γ) = γ′`.
pub fn shriek_push(diag: &PushDiagram, u: &CCMorphism) -> Result<CCMorphism> {
    if u.span() != &diag.upper {
        return Err(Error::NotCommuting(
            "morphism is not over the upper span".into(),
        ));
    }
    let l = u.source().sheaf();
    let m = u.target().sheaf();
    let src = push(&diag.f, l)?;
    let dst = push(&diag.g, m)?;
    let ls = PushLayout::new(&diag.f, l);
    let lt = PushLayout::new(&diag.g, m);
    let ring = u.ring();
    let lower = &diag.lower;
    let mut blocks: Vec<BTreeMap<i32, Matrix>> = (0..lower.apex().len())
        .map(|k| {
            let a = src.stalk(lower.left().apply(k));
            let b = dst.stalk(lower.right().apply(k));
            a.ranks()
                .iter()
                .filter(|(n, _)| b.rank(**n) > 0)
                .map(|(&n, &r)| (n, Matrix::zeros(ring, b.rank(n), r)))
                .collect()
        })
        .collect();
    for g in 0..diag.upper.apex().len() {
        let kp = diag.p.apply(g);
        let (x, y) = (diag.upper.left().apply(g), diag.upper.right().apply(g));
        let (xp, yp) = (lower.left().apply(kp), lower.right().apply(kp));
        for (&n, block) in u.component(g).components() {
            if let Some(m) = blocks[kp].get_mut(&n) {
                m.add_block(lt.offset(yp, y, n), ls.offset(xp, x, n), block);
            }
        }
    }
    let maps = blocks
        .into_iter()
        .enumerate()
        .map(|(k, comps)| {
            ChainMap::from_parts_unchecked(
                src.stalk(lower.left().apply(k)).clone(),
                dst.stalk(lower.right().apply(k)).clone(),
                comps,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::new(CCObject::new(src), CCObject::new(dst), lower.clone(), maps)
}

/// The cell `compose(u, g_♮) ⇒ compose(f_♮, u′)`, `(γ, c⃗γ) ↦ (c⃖γ, pγ)`.
pub fn comparison_cell(diag: &PushDiagram, u: &CCMorphism, pushed: &CCMorphism) -> Result<CCCell> {
    let gn = f_natural(&diag.g, u.target().sheaf())?;
    let fnat = f_natural(&diag.f, u.source().sheaf())?;
    let src = cc_compose(u, &gn)?;
    let dst = cc_compose(&fnat, pushed)?;
    let graph = (0..src.apex().len())
        .map(|k| {
            let (g, _) = src.apex().factors(k).unwrap();
            dst.apex()
                .position(diag.upper.left().apply(g), diag.p.apply(g))
                .ok_or_else(|| Error::NotCommuting("comparison target missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    CCCell::from_graph(&src, &dst, graph)
}

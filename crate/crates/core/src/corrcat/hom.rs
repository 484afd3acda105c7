use crate::chainalg::{cx_curry, cx_uncurry};
use crate::error::{Error, Result};
use crate::finspan::{OverMap, Span};
use crate::sheafops::sheaf_hom;

use super::morphism::{CCMorphism, CCObject};

/// `cHom(A, B) = (X ×_S Y, Hom(L, M))`.
pub fn internal_hom(a: &CCObject, b: &CCObject) -> Result<CCObject> {
    Ok(CCObject::new(sheaf_hom(a.sheaf(), b.sheaf())?))
}

/// `w : T ⊗ A -> B` to `T -> cHom(A, B)` on the span `T <- W -> X ×_S Y`.
pub fn curry(w: &CCMorphism, t: &CCObject, a: &CCObject) -> Result<CCMorphism> {
    let ta = t.tensor(a)?;
    if w.source() != &ta {
        return Err(Error::BoundaryMismatch("curry: source is not T ⊗ A".into()));
    }
    let hom = internal_hom(a, w.target())?;
    let apex = w.apex();
    let mut left = Vec::with_capacity(apex.len());
    let mut right = Vec::with_capacity(apex.len());
    let mut maps = Vec::with_capacity(apex.len());
    for k in 0..apex.len() {
        let (ti, xi) = ta.space().factors(w.span().left().apply(k)).unwrap();
        let y = w.span().right().apply(k);
        left.push(ti);
        right.push(hom.space().position(xi, y).unwrap());
        maps.push(cx_curry(w.component(k), t.stalk(ti), a.stalk(xi))?);
    }
    let span = Span::new(
        OverMap::new(apex.clone(), t.space().clone(), left)?,
        OverMap::new(apex.clone(), hom.space().clone(), right)?,
    )?;
    CCMorphism::new(t.clone(), hom, span, maps)
}

/// Inverse of [`curry`]: `T -> cHom(A, B)` back to `T ⊗ A -> B`.
pub fn uncurry(m: &CCMorphism, a: &CCObject, b: &CCObject) -> Result<CCMorphism> {
    let hom = internal_hom(a, b)?;
    if m.target() != &hom {
        return Err(Error::BoundaryMismatch(
            "uncurry: target is not cHom(A, B)".into(),
        ));
    }
    let t = m.source();
    let ta = t.tensor(a)?;
    let apex = m.apex();
    let mut left = Vec::with_capacity(apex.len());
    let mut right = Vec::with_capacity(apex.len());
    let mut maps = Vec::with_capacity(apex.len());
    for k in 0..apex.len() {
        let ti = m.span().left().apply(k);
        let (xi, y) = hom.space().factors(m.span().right().apply(k)).unwrap();
        left.push(ta.space().position(ti, xi).unwrap());
        right.push(y);
        maps.push(cx_uncurry(m.component(k), a.stalk(xi), b.stalk(y))?);
    }
    let span = Span::new(
        OverMap::new(apex.clone(), ta.space().clone(), left)?,
        OverMap::new(apex.clone(), b.space().clone(), right)?,
    )?;
    CCMorphism::new(ta, b.clone(), span, maps)
}

/// The counit `cHom(A, B) ⊗ A -> B`.
pub fn hom_evaluation(a: &CCObject, b: &CCObject) -> Result<CCMorphism> {
    let hom = internal_hom(a, b)?;
    uncurry(&CCMorphism::identity(&hom), a, b)
}

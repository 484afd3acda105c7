use crate::chainalg::cx_bidual;
use crate::corrcat::{
    associator, cc_compose, cc_inverse, cc_iso_search, cc_recoord, cc_tensor, coevaluation,
    curry, evaluation, f_conatural, f_natural, hom_evaluation, internal_hom, left_unitor,
    right_unitor, symmetry, CCCell, CCExpr, CCMorphism, CCObject,
};
use crate::error::{Error, Result};
use crate::finspan::OverMap;
use crate::sheafops::{push, verdier};

/// A dual pair with both triangle composites certified invertible.
#[derive(Clone, Debug)]
pub struct DualityData {
    pub object: CCObject,
    pub dual: CCObject,
    pub ev: CCMorphism,
    pub coev: CCMorphism,
    /// `ρ ∘ (id ⊗ ev) ∘ α ∘ (coev ⊗ id) ∘ λ⁻¹ ⇒ id_X`.
    pub left_triangle: CCCell,
    /// `λ ∘ (ev ⊗ id) ∘ α⁻¹ ∘ (id ⊗ coev) ∘ ρ⁻¹ ⇒ id_{X^∨}`.
    pub right_triangle: CCCell,
}

/// The left triangle composite `X -> X`.
pub fn left_triangle_expr(a: &CCObject, ev: &CCMorphism, coev: &CCMorphism) -> Result<CCExpr> {
    let d = a.dual();
    Ok(CCExpr::chain([
        CCExpr::Fixed(cc_inverse(&left_unitor(a)?)?),
        CCExpr::tensor(CCExpr::Fixed(coev.clone()), CCExpr::Fixed(CCMorphism::identity(a))),
        CCExpr::Fixed(associator(a, &d, a)?),
        CCExpr::tensor(CCExpr::Fixed(CCMorphism::identity(a)), CCExpr::Fixed(ev.clone())),
        CCExpr::Fixed(right_unitor(a)?),
    ]))
}

/// The right triangle composite `X^∨ -> X^∨`.
pub fn right_triangle_expr(a: &CCObject, ev: &CCMorphism, coev: &CCMorphism) -> Result<CCExpr> {
    let d = a.dual();
    Ok(CCExpr::chain([
        CCExpr::Fixed(cc_inverse(&right_unitor(&d)?)?),
        CCExpr::tensor(CCExpr::Fixed(CCMorphism::identity(&d)), CCExpr::Fixed(coev.clone())),
        CCExpr::Fixed(cc_inverse(&associator(&d, a, &d)?)?),
        CCExpr::tensor(CCExpr::Fixed(ev.clone()), CCExpr::Fixed(CCMorphism::identity(&d))),
        CCExpr::Fixed(left_unitor(&d)?),
    ]))
}

fn certify(expr: &CCExpr, target: &CCMorphism, which: &str) -> Result<CCCell> {
    let cell = cc_recoord(expr, &CCExpr::Fixed(target.clone()))
        .map_err(|e| Error::Verification(format!("{which} triangle: {e}")))?;
    cell.inverse()
        .map_err(|e| Error::Verification(format!("{which} triangle inverse: {e}")))?;
    Ok(cell)
}

/// Explicit duality data on `(X, D L)`: `ev` on the diagonal span, `coev` dually.
pub fn make_dual(a: &CCObject) -> Result<DualityData> {
    let ev = evaluation(a)?;
    let coev = coevaluation(a)?;
    let dual = a.dual();
    let left_triangle = certify(
        &left_triangle_expr(a, &ev, &coev)?,
        &CCMorphism::identity(a),
        "left",
    )?;
    let right_triangle = certify(
        &right_triangle_expr(a, &ev, &coev)?,
        &CCMorphism::identity(&dual),
        "right",
    )?;
    Ok(DualityData {
        object: a.clone(),
        dual,
        ev,
        coev,
        left_triangle,
        right_triangle,
    })
}

/// `X -> X^∨∨` built from `coev_{X^∨}`, the symmetry and `ev_X`.
pub fn biduality(d: &DualityData) -> Result<CCMorphism> {
    let a = &d.object;
    let dd = d.dual.dual();
    let coev_dual = coevaluation(&d.dual)?;
    let expr = CCExpr::chain([
        CCExpr::Fixed(cc_inverse(&right_unitor(a)?)?),
        CCExpr::tensor(CCExpr::Fixed(CCMorphism::identity(a)), CCExpr::Fixed(coev_dual)),
        CCExpr::Fixed(cc_inverse(&associator(a, &d.dual, &dd)?)?),
        CCExpr::tensor(
            CCExpr::Fixed(symmetry(a, &d.dual)?),
            CCExpr::Fixed(CCMorphism::identity(&dd)),
        ),
        CCExpr::tensor(CCExpr::Fixed(d.ev.clone()), CCExpr::Fixed(CCMorphism::identity(&dd))),
        CCExpr::Fixed(left_unitor(&dd)?),
    ]);
    Ok(expr.eval()?.value)
}

/// The canonical identification `X -> X^∨∨`: identity span, signed identity stalks.
pub fn canonical_bidual(a: &CCObject) -> Result<CCMorphism> {
    let maps = a
        .sheaf()
        .stalks()
        .iter()
        .map(cx_bidual)
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::graph(&OverMap::identity(a.space()), a, &a.dual().dual(), maps)
}

/// `u^∨ : B^∨ -> A^∨`, the composite through `coev_A` and `ev_B`.
pub fn dual_of_morphism(u: &CCMorphism, da: &DualityData, db: &DualityData) -> Result<CCMorphism> {
    if u.source() != &da.object || u.target() != &db.object {
        return Err(Error::BoundaryMismatch(
            "dual of a morphism: duality data for other objects".into(),
        ));
    }
    Ok(dual_expr(da, db, CCExpr::Fixed(u.clone()))?.eval()?.value)
}

pub(crate) fn dual_expr(
    da: &DualityData,
    db: &DualityData,
    atom: CCExpr,
) -> Result<CCExpr> {
    let a = &da.object;
    let (ad, bd) = (&da.dual, &db.dual);
    Ok(CCExpr::chain([
        CCExpr::Fixed(cc_inverse(&right_unitor(bd)?)?),
        CCExpr::tensor(
            CCExpr::Fixed(CCMorphism::identity(bd)),
            CCExpr::Fixed(da.coev.clone()),
        ),
        CCExpr::Fixed(cc_inverse(&associator(bd, a, ad)?)?),
        CCExpr::tensor(
            CCExpr::tensor(CCExpr::Fixed(CCMorphism::identity(bd)), atom),
            CCExpr::Fixed(CCMorphism::identity(ad)),
        ),
        CCExpr::tensor(CCExpr::Fixed(db.ev.clone()), CCExpr::Fixed(CCMorphism::identity(ad))),
        CCExpr::Fixed(left_unitor(ad)?),
    ]))
}

/// The split epimorphism `m : X ⊗ cHom(X, 1) -> cHom(X, X)` with its section.
#[derive(Clone, Debug)]
pub struct SplitEpi {
    pub m: CCMorphism,
    pub section: CCMorphism,
    /// `section ; m ⇒ id`.
    pub retraction: CCCell,
    /// `(ρ ⊗ id) ; ev_X ⇒ ev_{cHom(X,1)}`, tying `m` to [`make_dual`].
    pub consistency: CCCell,
}

pub fn split_epi_criterion(a: &CCObject) -> Result<SplitEpi> {
    let unit = CCObject::unit(a.base(), a.ring());
    let h = internal_hom(a, &unit)?;
    let ev_h = hom_evaluation(a, &unit)?;
    let t = a.tensor(&h)?;
    let w = CCExpr::chain([
        CCExpr::Fixed(associator(a, &h, a)?),
        CCExpr::tensor(CCExpr::Fixed(CCMorphism::identity(a)), CCExpr::Fixed(ev_h.clone())),
        CCExpr::Fixed(right_unitor(a)?),
    ])
    .eval()?
    .value;
    let m = curry(&w, &t, a)?;
    let section = cc_inverse(&m)
        .map_err(|e| Error::Verification(format!("m has no inverse: {e}")))?;
    let sm = cc_compose(&section, &m)?;
    let retraction = cc_iso_search(&sm, &CCMorphism::identity(m.target()))
        .ok_or_else(|| Error::Verification("section ; m is not the identity".into()))?;
    let d = a.dual();
    if h != d.tensor(&unit)? {
        return Err(Error::Verification("cHom(X, 1) differs from X^∨ ⊗ 1".into()));
    }
    let via_dual = cc_compose(
        &cc_tensor(&right_unitor(&d)?, &CCMorphism::identity(a))?,
        &evaluation(a)?,
    )?;
    let consistency = cc_iso_search(&via_dual, &ev_h)
        .ok_or_else(|| Error::Verification("evaluation disagrees with the dual".into()))?;
    Ok(SplitEpi {
        m,
        section,
        retraction,
        consistency,
    })
}

/// Duality data on `(X′, f_!L)` with cells relating it to the data on `(X, L)`.
#[derive(Clone, Debug)]
pub struct PushedDual {
    pub data: DualityData,
    /// `coev_X ; (f_♮ ⊗ f_♮) ⇒ coev_{X′}`, graph `f`.
    pub coev_route: CCCell,
    /// `(f^♮ ⊗ f^♮) ; ev_X ⇒ ev_{X′}`, graph `f`.
    pub ev_route: CCCell,
}

pub fn push_preserves_dual(f: &OverMap, dx: &DualityData) -> Result<PushedDual> {
    let l = dx.object.sheaf();
    if f.source() != l.carrier() {
        return Err(Error::CarrierMismatch("push_preserves_dual: map source differs".into()));
    }
    let pushed = CCObject::new(push(f, l)?);
    if push(f, &verdier(l))? != verdier(pushed.sheaf()) {
        return Err(Error::Verification("pushforward does not commute with duals".into()));
    }
    let data = make_dual(&pushed)?;
    let up = cc_compose(
        &dx.coev,
        &cc_tensor(&f_natural(f, l)?, &f_natural(f, &verdier(l))?)?,
    )?;
    let coev_graph = (0..up.apex().len())
        .map(|k| f.apply(up.apex().factors(k).unwrap().0))
        .collect();
    let coev_route = CCCell::from_graph(&up, &data.coev, coev_graph)?;
    crate::corrcat::cc_cell_check(&coev_route)?;
    let down = cc_compose(
        &cc_tensor(&f_conatural(f, &verdier(l))?, &f_conatural(f, l)?)?,
        &dx.ev,
    )?;
    let ev_graph = (0..down.apex().len())
        .map(|k| f.apply(down.apex().factors(k).unwrap().1))
        .collect();
    let ev_route = CCCell::from_graph(&down, &data.ev, ev_graph)?;
    crate::corrcat::cc_cell_check(&ev_route)?;
    Ok(PushedDual {
        data,
        coev_route,
        ev_route,
    })
}

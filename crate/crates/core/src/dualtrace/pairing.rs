use crate::chainalg::alt_trace;
use crate::corrcat::{
    cc_compose, shriek_push, symmetry, CCExpr, CCMorphism, PushDiagram,
};
use crate::error::{Error, Result};
use crate::finspan::{
    base_product, diagonal_map, fiber_product, pair_map, FinOver, Key, OverMap, Span,
};
use crate::sheafops::{omega_push, OmegaClass};

use super::duality::DualityData;

/// A class on a fixed-point set, with the set's factor maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingResult {
    pub class: OmegaClass,
}

impl PairingResult {
    pub fn carrier(&self) -> &FinOver {
        self.class.carrier()
    }

    pub fn total(&self) -> i64 {
        self.class.total()
    }
}

/// `X ×_{X ×_S Y} ...`: pairs `(γ, δ)` with `c⃖γ = d⃗δ` and `c⃗γ = d⃖δ`.
pub fn fixed_locus(c: &Span, d: &Span) -> Result<FinOver> {
    if c.source() != d.target() || c.target() != d.source() {
        return Err(Error::BoundaryMismatch(
            "pairing needs spans X -> Y and Y -> X".into(),
        ));
    }
    let xy = base_product(c.source(), c.target())?.set;
    let a = pair_map(c.left(), c.right(), &xy)?;
    let b = pair_map(d.right(), d.left(), &xy)?;
    Ok(fiber_product(&a, &b)?.set)
}

/// `X^e`: pairs `(ε, x)` with `e⃖ε = x = e⃗ε`.
pub fn fixed_points(e: &Span) -> Result<FinOver> {
    if e.source() != e.target() {
        return Err(Error::NotEndomorphism("fixed points of a span X -> Y".into()));
    }
    let x = e.source();
    let xx = base_product(x, x)?.set;
    let a = pair_map(e.left(), e.right(), &xx)?;
    Ok(fiber_product(&a, &diagonal_map(x))?.set)
}

/// `coev ; (e ⊗ id) ; σ ; ev`, with `e` entered as the given expression.
pub fn trace_expr(e: CCExpr, d: &DualityData) -> Result<CCExpr> {
    Ok(CCExpr::chain([
        CCExpr::Fixed(d.coev.clone()),
        CCExpr::tensor(e, CCExpr::Fixed(CCMorphism::identity(&d.dual))),
        CCExpr::Fixed(symmetry(&d.object, &d.dual)?),
        CCExpr::Fixed(d.ev.clone()),
    ]))
}

/// Evaluates an endomorphism of `1` and files each apex value under `place(key)`.
fn collect(
    expr: &CCExpr,
    carrier: &FinOver,
    place: impl Fn(&Key) -> Result<usize>,
) -> Result<OmegaClass> {
    let traced = expr.eval()?;
    let m = traced.value;
    let ring = m.ring();
    let mut values = vec![0; carrier.len()];
    for (k, key) in traced.keys.iter().enumerate() {
        let slot = place(key)?;
        let c = m.component(k).component(0);
        if c.shape() != (1, 1) {
            return Err(Error::ShapeMismatch {
                op: "trace value",
                left: c.shape(),
                right: (1, 1),
            });
        }
        values[slot] = ring.add(values[slot], c.get(0, 0));
    }
    OmegaClass::new(ring, carrier.clone(), values)
}

fn lookup(key: &Key, atom: u32) -> Result<usize> {
    key.iter()
        .find(|(id, _)| *id == atom)
        .map(|&(_, i)| i)
        .ok_or_else(|| Error::Recoord(format!("apex element has no provenance for atom {atom}")))
}

/// The categorical trace `tr(e) ∈ H⁰(X^e, K)`.
pub fn trace(e: &CCMorphism, d: &DualityData) -> Result<PairingResult> {
    if e.source() != &d.object || e.target() != &d.object {
        return Err(Error::NotEndomorphism(
            "trace needs an endomorphism of the dualized object".into(),
        ));
    }
    let carrier = fixed_points(e.span())?;
    let left = e.span().left();
    let expr = trace_expr(CCExpr::Atom(0, e.clone()), d)?;
    let class = collect(&expr, &carrier, |key| {
        let g = lookup(key, 0)?;
        carrier
            .position(g, left.apply(g))
            .ok_or_else(|| Error::Recoord("trace lands off the fixed points".into()))
    })?;
    Ok(PairingResult { class })
}

/// `⟨u, v⟩ ∈ H⁰(F, K)` over the fixed locus of `(c, d)`.
pub fn pairing(u: &CCMorphism, v: &CCMorphism, dx: &DualityData) -> Result<PairingResult> {
    if u.source() != &dx.object || v.target() != &dx.object || u.target() != v.source() {
        return Err(Error::BoundaryMismatch(
            "pairing needs u: X -> Y and v: Y -> X".into(),
        ));
    }
    let carrier = fixed_locus(u.span(), v.span())?;
    let expr = trace_expr(
        CCExpr::compose(CCExpr::Atom(0, u.clone()), CCExpr::Atom(1, v.clone())),
        dx,
    )?;
    let class = collect(&expr, &carrier, |key| {
        let (g, h) = (lookup(key, 0)?, lookup(key, 1)?);
        carrier
            .position(g, h)
            .ok_or_else(|| Error::Recoord("pairing lands off the fixed locus".into()))
    })?;
    Ok(PairingResult { class })
}

/// `cc(L) = tr(id)` on `X^{id} ≅ X`.
pub fn characteristic_class(d: &DualityData) -> Result<PairingResult> {
    trace(&CCMorphism::identity(&d.object), d)
}

/// Pointwise oracle: `alt_trace(v_δ ∘ u_γ)` at each `(γ, δ)`.
pub fn local_terms(u: &CCMorphism, v: &CCMorphism) -> Result<OmegaClass> {
    let carrier = fixed_locus(u.span(), v.span())?;
    let values = (0..carrier.len())
        .map(|k| {
            let (g, h) = carrier.factors(k).unwrap();
            alt_trace(&u.component(g).then(v.component(h))?)
        })
        .collect::<Result<Vec<_>>>()?;
    OmegaClass::new(u.ring(), carrier, values)
}

/// Pointwise oracle for a trace: `alt_trace(e_ε)` at each fixed `ε`.
pub fn local_trace(e: &CCMorphism) -> Result<OmegaClass> {
    let carrier = fixed_points(e.span())?;
    let values = (0..carrier.len())
        .map(|k| alt_trace(e.component(carrier.factors(k).unwrap().0)))
        .collect::<Result<Vec<_>>>()?;
    OmegaClass::new(e.ring(), carrier, values)
}

/// `⟨u, v⟩` and `⟨v, u⟩` with the swap `(γ, δ) ↦ (δ, γ)` between their carriers.
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub forward: PairingResult,
    pub backward: PairingResult,
    pub swap: OverMap,
    pub holds: bool,
}

pub fn pairing_symmetry(
    u: &CCMorphism,
    v: &CCMorphism,
    dx: &DualityData,
    dy: &DualityData,
) -> Result<Symmetry> {
    let forward = pairing(u, v, dx)?;
    let backward = pairing(v, u, dy)?;
    let (f, b) = (forward.carrier(), backward.carrier());
    let graph = (0..f.len())
        .map(|k| {
            let (g, h) = f.factors(k).unwrap();
            b.position(h, g).unwrap()
        })
        .collect();
    let swap = OverMap::new(f.clone(), b.clone(), graph)?;
    let holds = swap.is_bijective() && omega_push(&swap, &forward.class)? == backward.class;
    Ok(Symmetry {
        forward,
        backward,
        swap,
        holds,
    })
}

/// The identification `F ≅ X^{compose(u, v)}`, `(γ, δ) ↦ ((γ, δ), c⃖γ)`.
pub fn locus_to_fixed_points(u: &CCMorphism, v: &CCMorphism) -> Result<OverMap> {
    let f = fixed_locus(u.span(), v.span())?;
    let uv = cc_compose(u, v)?;
    let xe = fixed_points(uv.span())?;
    let graph = (0..f.len())
        .map(|k| {
            let (g, h) = f.factors(k).unwrap();
            let e = uv.apex().position(g, h).unwrap();
            xe.position(e, u.span().left().apply(g)).unwrap()
        })
        .collect();
    OverMap::new(f, xe, graph)
}

/// Both sides of the fixed-point formula over `S`.
#[derive(Clone, Debug)]
pub struct GlobalCheck {
    /// Fixed-point contributions summed per base point.
    pub local: OmegaClass,
    /// Alternating trace of the pushforward to `S`.
    pub global: OmegaClass,
    pub holds: bool,
}

pub fn global_fixed_point(e: &CCMorphism, d: &DualityData) -> Result<GlobalCheck> {
    let tr = trace(e, d)?;
    let x = e.source().space();
    let base = FinOver::base_set(x.base());
    let to_s = OverMap::to_base(tr.carrier());
    let local = omega_push(&to_s, &tr.class)?;
    let diag = PushDiagram::new(
        OverMap::to_base(x),
        OverMap::to_base(e.apex()),
        OverMap::to_base(x),
        e.span().clone(),
        Span::identity(&base),
    )?;
    let pushed = shriek_push(&diag, e)?;
    let values = (0..base.len())
        .map(|s| alt_trace(pushed.component(s)))
        .collect::<Result<Vec<_>>>()?;
    let global = OmegaClass::new(e.ring(), base, values)?;
    let holds = local.values() == global.values();
    Ok(GlobalCheck {
        local,
        global,
        holds,
    })
}

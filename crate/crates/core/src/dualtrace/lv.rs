use crate::corrcat::{
    assoc_cell, assoc_cell_inv, cc_cell_check, cc_compose, comparison_cell, f_natural,
    shriek_push, vchain, whisker_left, whisker_right, CCCell, CCMorphism, PushDiagram,
};
use crate::error::{Error, Result};
use crate::finspan::{OverMap, Span};
use crate::sheafops::{omega_push, OmegaClass};

use super::duality::{make_dual, DualityData};
use super::pairing::{fixed_locus, fixed_points, locus_to_fixed_points, pairing, trace};

/// Two commuting squares: `c` over `(X, Y)` to `c′` via `(f, p, g)`, and `d` over
/// `(Y, X)` to `d′` via `(g, q, f)`, with morphisms `u` over `c` and `v` over `d`.
#[derive(Clone, Debug)]
pub struct LvData {
    pub upper: PushDiagram,
    pub lower: PushDiagram,
    pub u: CCMorphism,
    pub v: CCMorphism,
}

impl LvData {
    pub fn new(upper: PushDiagram, lower: PushDiagram, u: CCMorphism, v: CCMorphism) -> Result<Self> {
        if upper.f != lower.g || upper.g != lower.f {
            return Err(Error::NotCommuting(
                "the two squares do not share f and g".into(),
            ));
        }
        if u.span() != &upper.upper || v.span() != &lower.upper {
            return Err(Error::NotCommuting(
                "u and v must lie over the upper spans".into(),
            ));
        }
        if u.target() != v.source() || v.target() != u.source() {
            return Err(Error::BoundaryMismatch("u and v are not composable both ways".into()));
        }
        Ok(LvData {
            upper,
            lower,
            u,
            v,
        })
    }

    /// `(u′, v′) = (p^♯_! u, q^♯_! v)`.
    pub fn pushed(&self) -> Result<(CCMorphism, CCMorphism)> {
        Ok((
            shriek_push(&self.upper, &self.u)?,
            shriek_push(&self.lower, &self.v)?,
        ))
    }

    /// `(γ, δ) ↦ (pγ, qδ)` from `F` to `F′`.
    pub fn induced_map(&self) -> Result<OverMap> {
        let f = fixed_locus(&self.upper.upper, &self.lower.upper)?;
        let fp = fixed_locus(&self.upper.lower, &self.lower.lower)?;
        let graph = (0..f.len())
            .map(|k| {
                let (g, h) = f.factors(k).unwrap();
                fp.position(self.upper.p.apply(g), self.lower.p.apply(h))
                    .ok_or_else(|| Error::NotCommuting("induced map leaves F′".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        OverMap::new(f, fp, graph)
    }
}

/// Outcome of pushing a pairing through the squares.
#[derive(Clone, Debug)]
pub struct LvReport {
    /// `s_! ⟨u, v⟩`.
    pub lhs: OmegaClass,
    /// `⟨u′, v′⟩`.
    pub rhs: OmegaClass,
    /// `(γ, δ) ↦ (pγ, qδ)`.
    pub induced: OverMap,
    /// The map `F -> F′` read off the pasted 2-cell.
    pub derived: OverMap,
    pub holds: bool,
}

/// Pastes the two comparison cells into `compose(uv, f_♮) ⇒ compose(f_♮, u′v′)`.
pub fn pasted_cell(data: &LvData, u2: &CCMorphism, v2: &CCMorphism) -> Result<CCCell> {
    let (u, v) = (&data.u, &data.v);
    let fnat = f_natural(&data.upper.f, u.source().sheaf())?;
    let gnat = f_natural(&data.upper.g, u.target().sheaf())?;
    let kv = comparison_cell(&data.lower, v, v2)?;
    let ku = comparison_cell(&data.upper, u, u2)?;
    let beta = vchain(&[
        assoc_cell(u, v, &fnat)?,
        whisker_left(u, &kv)?,
        assoc_cell_inv(u, &gnat, v2)?,
        whisker_right(&ku, v2)?,
        assoc_cell(&fnat, u2, v2)?,
    ])?;
    cc_cell_check(&beta)?;
    Ok(beta)
}

/// Pairing functoriality along the pasted comparison cell.
pub fn pairing_functorial(data: &LvData) -> Result<LvReport> {
    let (u2, v2) = data.pushed()?;
    let x = data.u.source();
    let xp = u2.source();
    let lhs_pair = pairing(&data.u, &data.v, &make_dual(x)?)?;
    let rhs_pair = pairing(&u2, &v2, &make_dual(xp)?)?;
    let beta = pasted_cell(data, &u2, &v2)?;
    let e = cc_compose(&data.u, &data.v)?;
    let e2 = cc_compose(&u2, &v2)?;
    let src = beta.source().apex();
    let dst = beta.target().apex();
    let f = lhs_pair.carrier().clone();
    let fp = rhs_pair.carrier().clone();
    let graph = (0..f.len())
        .map(|k| {
            let (g, h) = f.factors(k).unwrap();
            let eps = e.apex().position(g, h).unwrap();
            let at = src
                .position(eps, e.span().right().apply(eps))
                .ok_or_else(|| Error::Verification("fixed point missing from the cell source".into()))?;
            let (_, eps2) = dst.factors(beta.graph().apply(at)).unwrap();
            let (g2, h2) = e2.apex().factors(eps2).unwrap();
            fp.position(g2, h2)
                .ok_or_else(|| Error::Verification("cell image is not a fixed point".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let derived = OverMap::new(f, fp, graph)?;
    let induced = data.induced_map()?;
    let lhs = omega_push(&derived, &lhs_pair.class)?;
    let holds = derived == induced && lhs == rhs_pair.class;
    Ok(LvReport {
        lhs,
        rhs: rhs_pair.class,
        induced,
        derived,
        holds,
    })
}

/// `X^e -> X^{e″}` from a cell `e ⇒ e″`, with the trace pushed along it checked.
pub fn trace_of_cell(rho: &CCCell, d: &DualityData) -> Result<OverMap> {
    let (e, e2) = (rho.source(), rho.target());
    let a = fixed_points(e.span())?;
    let b = fixed_points(e2.span())?;
    let graph = (0..a.len())
        .map(|k| {
            let (eps, x) = a.factors(k).unwrap();
            b.position(rho.graph().apply(eps), x).unwrap()
        })
        .collect();
    let map = OverMap::new(a, b, graph)?;
    check_step(&map, &trace(e, d)?.class, &trace(e2, d)?.class, "cell")?;
    Ok(map)
}

/// `X^{compose(a, b)} -> Y^{compose(b, a)}`, `((α, β), x) ↦ ((β, α), b⃖β)`.
pub fn trace_symmetry(
    a: &CCMorphism,
    b: &CCMorphism,
    da: &DualityData,
    db: &DualityData,
) -> Result<OverMap> {
    let ab = cc_compose(a, b)?;
    let ba = cc_compose(b, a)?;
    let src = fixed_points(ab.span())?;
    let dst = fixed_points(ba.span())?;
    let graph = (0..src.len())
        .map(|k| {
            let (eps, _) = src.factors(k).unwrap();
            let (i, j) = ab.apex().factors(eps).unwrap();
            dst.position(ba.apex().position(j, i).unwrap(), b.span().left().apply(j))
                .unwrap()
        })
        .collect();
    let map = OverMap::new(src, dst, graph)?;
    check_step(&map, &trace(&ab, da)?.class, &trace(&ba, db)?.class, "symmetry")?;
    Ok(map)
}

fn check_step(map: &OverMap, before: &OmegaClass, after: &OmegaClass, what: &str) -> Result<()> {
    if &omega_push(map, before)? != after {
        return Err(Error::Verification(format!(
            "{what} step does not carry the trace"
        )));
    }
    Ok(())
}

/// The route through `w = (f, id, id)_! u` on the span `X′ <- C -> Y`.
#[derive(Clone, Debug)]
pub struct SplitRoute {
    pub w: CCMorphism,
    /// `u ⇒ compose(f_♮, w)`.
    pub upper_cell: CCCell,
    /// `compose(w, g_♮) ⇒ u′`.
    pub lower_cell: CCCell,
    /// Named steps, each carrying one trace to the next.
    pub steps: Vec<(&'static str, OverMap)>,
    /// Composite of the steps, `F -> F′`.
    pub composite: OverMap,
    pub holds: bool,
}

pub fn pairing_functorial_split(data: &LvData) -> Result<SplitRoute> {
    let (u, v) = (&data.u, &data.v);
    let (u2, v2) = data.pushed()?;
    let f = &data.upper.f;
    let c = &data.upper.upper;
    let x = u.source();
    let y = u.target();
    let xp = u2.source();
    let (dx, dy, dxp) = (make_dual(x)?, make_dual(y)?, make_dual(xp)?);

    let e = Span::new(c.left().then(f)?, c.right().clone())?;
    let split = PushDiagram::new(
        f.clone(),
        OverMap::identity(c.apex()),
        OverMap::identity(y.space()),
        c.clone(),
        e,
    )?;
    let w = shriek_push(&split, u)?;
    let fnat = f_natural(f, x.sheaf())?;
    let gnat = f_natural(&data.upper.g, y.sheaf())?;

    let fw = cc_compose(&fnat, &w)?;
    let upper_graph = (0..c.apex().len())
        .map(|g| fw.apex().position(c.left().apply(g), g).unwrap())
        .collect();
    let upper_cell = CCCell::from_graph(u, &fw, upper_graph)?;
    cc_cell_check(&upper_cell)?;

    let wg = cc_compose(&w, &gnat)?;
    let lower_graph = (0..wg.apex().len())
        .map(|k| data.upper.p.apply(wg.apex().factors(k).unwrap().0))
        .collect();
    let lower_cell = CCCell::from_graph(&wg, &u2, lower_graph)?;
    cc_cell_check(&lower_cell)?;

    let vf = cc_compose(v, &fnat)?;
    let kv = comparison_cell(&data.lower, v, &v2)?;
    let rho1 = vchain(&[whisker_left(v, &upper_cell)?, assoc_cell_inv(v, &fnat, &w)?])?;
    let rho2 = vchain(&[
        whisker_left(&w, &kv)?,
        assoc_cell_inv(&w, &gnat, &v2)?,
        whisker_right(&lower_cell, &v2)?,
    ])?;
    cc_cell_check(&rho1)?;
    cc_cell_check(&rho2)?;

    let into = locus_to_fixed_points(u, v)?;
    let out = locus_to_fixed_points(&u2, &v2)?.inverse()?;
    let steps = vec![
        ("locus", into),
        ("swap", trace_symmetry(u, v, &dx, &dy)?),
        ("upper cell", trace_of_cell(&rho1, &dy)?),
        ("swap", trace_symmetry(&vf, &w, &dy, &dxp)?),
        ("lower cell", trace_of_cell(&rho2, &dxp)?),
        ("locus", out),
    ];
    let composite = steps
        .iter()
        .skip(1)
        .try_fold(steps[0].1.clone(), |acc, (_, m)| acc.then(m))?;
    let lhs = omega_push(&composite, &pairing(u, v, &dx)?.class)?;
    let rhs = pairing(&u2, &v2, &dxp)?.class;
    let holds = composite == data.induced_map()? && lhs == rhs;
    Ok(SplitRoute {
        w,
        upper_cell,
        lower_cell,
        steps,
        composite,
        holds,
    })
}

//! Base change `g^*` along a map of bases `g : S -> T`.

use crate::corrcat::{
    cc_compose, cc_iso_search, cc_tensor, shriek_push, CCCell, CCMorphism, CCObject, PushDiagram,
};
use crate::dualtrace::{characteristic_class, fixed_locus, fixed_points, make_dual, pairing, trace};
use crate::error::{Error, Result};
use crate::finspan::{BaseSet, FinOver, OverMap, Span};
use crate::sheafops::{omega_push, verdier, OmegaClass, Sheaf};

/// `g : S -> T` between base sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    source: BaseSet,
    target: BaseSet,
    graph: Vec<usize>,
}

impl BaseChange {
    pub fn new(source: &BaseSet, target: &BaseSet, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "{} images for a base of size {}",
                graph.len(),
                source.len()
            )));
        }
        if let Some(&t) = graph.iter().find(|&&t| t >= target.len()) {
            return Err(Error::InvalidMap(format!("base image {t} out of range")));
        }
        Ok(BaseChange {
            source: source.clone(),
            target: target.clone(),
            graph,
        })
    }

    pub fn identity(base: &BaseSet) -> Self {
        BaseChange {
            source: base.clone(),
            target: base.clone(),
            graph: (0..base.len()).collect(),
        }
    }

    pub fn source(&self) -> &BaseSet {
        &self.source
    }

    pub fn target(&self) -> &BaseSet {
        &self.target
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    fn check_base(&self, x: &FinOver) -> Result<()> {
        if x.base() != &self.target {
            return Err(Error::BaseMismatch(
                "base change applied to a set over another base".into(),
            ));
        }
        Ok(())
    }

    /// `X_S = X ×_T S`: pairs `(x, s)` with `g s` the anchor of `x`, anchored at `s`.
    pub fn pull_set(&self, x: &FinOver) -> Result<FinOver> {
        self.check_base(x)?;
        let mut labels = Vec::new();
        let mut anchor = Vec::new();
        let mut pairs = Vec::new();
        for i in 0..x.len() {
            for (s, &t) in self.graph.iter().enumerate() {
                if t == x.anchor(i) {
                    labels.push(format!("({},{})", x.label(i), self.source.label(s)));
                    anchor.push(s);
                    pairs.push((i, s));
                }
            }
        }
        Ok(FinOver::product(&self.source, labels, anchor, pairs))
    }

    /// `f_S : (x, s) ↦ (f x, s)`.
    pub fn pull_map(&self, f: &OverMap) -> Result<OverMap> {
        let src = self.pull_set(f.source())?;
        let dst = self.pull_set(f.target())?;
        let graph = (0..src.len())
            .map(|k| {
                let (i, s) = src.factors(k).unwrap();
                dst.position(f.apply(i), s).unwrap()
            })
            .collect();
        OverMap::new(src, dst, graph)
    }

    pub fn pull_span(&self, c: &Span) -> Result<Span> {
        Span::new(self.pull_map(c.left())?, self.pull_map(c.right())?)
    }

    pub fn pull_sheaf(&self, l: &Sheaf) -> Result<Sheaf> {
        let carrier = self.pull_set(l.carrier())?;
        let stalks = (0..carrier.len())
            .map(|k| l.stalk(carrier.factors(k).unwrap().0).clone())
            .collect();
        Sheaf::new(l.ring(), carrier, stalks)
    }

    /// `g^*(Y, M) = (Y_S, g_Y^* M)`.
    pub fn pull_object(&self, a: &CCObject) -> Result<CCObject> {
        Ok(CCObject::new(self.pull_sheaf(a.sheaf())?))
    }

    /// `g^*(c, u) = (c_S, u_S)`, components copied along each fiber.
    pub fn pull_morphism(&self, m: &CCMorphism) -> Result<CCMorphism> {
        let span = self.pull_span(m.span())?;
        let maps = (0..span.apex().len())
            .map(|k| m.component(span.apex().factors(k).unwrap().0).clone())
            .collect();
        CCMorphism::new(
            self.pull_object(m.source())?,
            self.pull_object(m.target())?,
            span,
            maps,
        )
    }

    pub fn pull_cell(&self, cell: &CCCell) -> Result<CCCell> {
        let src = self.pull_morphism(cell.source())?;
        let dst = self.pull_morphism(cell.target())?;
        let graph = self.pull_map(cell.graph())?.graph().to_vec();
        CCCell::from_graph(&src, &dst, graph)
    }

    pub fn pull_diagram(&self, d: &PushDiagram) -> Result<PushDiagram> {
        PushDiagram::new(
            self.pull_map(&d.f)?,
            self.pull_map(&d.p)?,
            self.pull_map(&d.g)?,
            self.pull_span(&d.upper)?,
            self.pull_span(&d.lower)?,
        )
    }

    /// A class on `X` pulled to `X_S`: each value repeated along its fiber.
    pub fn pull_class(&self, a: &OmegaClass) -> Result<OmegaClass> {
        let carrier = self.pull_set(a.carrier())?;
        let values = (0..carrier.len())
            .map(|k| a.value(carrier.factors(k).unwrap().0))
            .collect();
        OmegaClass::new(a.ring(), carrier, values)
    }

    /// Lax unit `1_S -> g^* 1_T`, a relabelling `s ↦ (g s, s)`.
    pub fn unit_comparison(&self, ring: crate::chainalg::Ring) -> Result<CCMorphism> {
        let unit_t = CCObject::unit(&self.target, ring);
        let pulled = self.pull_object(&unit_t)?;
        let unit_s = CCObject::unit(&self.source, ring);
        let graph = (0..self.source.len())
            .map(|s| pulled.space().position(self.graph[s], s).unwrap())
            .collect();
        let f = OverMap::new(unit_s.space().clone(), pulled.space().clone(), graph)?;
        CCMorphism::relabel(&f, &unit_s, &pulled)
    }

    /// Lax product `g^*A ⊗ g^*B -> g^*(A ⊗ B)`, `((x, s), (y, s)) ↦ ((x, y), s)`.
    pub fn monoidal_comparison(&self, a: &CCObject, b: &CCObject) -> Result<CCMorphism> {
        let (pa, pb) = (self.pull_object(a)?, self.pull_object(b)?);
        let src = pa.tensor(&pb)?;
        let ab = a.tensor(b)?;
        let dst = self.pull_object(&ab)?;
        let graph = (0..src.space().len())
            .map(|k| {
                let (i, j) = src.space().factors(k).unwrap();
                let (x, s) = pa.space().factors(i).unwrap();
                let (y, _) = pb.space().factors(j).unwrap();
                dst.space()
                    .position(ab.space().position(x, y).unwrap(), s)
                    .unwrap()
            })
            .collect();
        let f = OverMap::new(src.space().clone(), dst.space().clone(), graph)?;
        CCMorphism::relabel(&f, &src, &dst)
    }

    /// `(X^e)_S -> (X_S)^{e_S}`, `((ε, x), s) ↦ ((ε, s), (x, s))`.
    pub fn fixed_point_recoord(&self, e: &Span) -> Result<OverMap> {
        let fx = fixed_points(e)?;
        let src = self.pull_set(&fx)?;
        let es = self.pull_span(e)?;
        let dst = fixed_points(&es)?;
        let graph = (0..src.len())
            .map(|k| {
                let (p, s) = src.factors(k).unwrap();
                let (eps, x) = fx.factors(p).unwrap();
                dst.position(
                    es.apex().position(eps, s).unwrap(),
                    es.source().position(x, s).unwrap(),
                )
                .unwrap()
            })
            .collect();
        OverMap::new(src, dst, graph)
    }

    /// `F_S -> F(c_S, d_S)`, `((γ, δ), s) ↦ ((γ, s), (δ, s))`.
    pub fn locus_recoord(&self, c: &Span, d: &Span) -> Result<OverMap> {
        let f = fixed_locus(c, d)?;
        let src = self.pull_set(&f)?;
        let (cs, ds) = (self.pull_span(c)?, self.pull_span(d)?);
        let dst = fixed_locus(&cs, &ds)?;
        let graph = (0..src.len())
            .map(|k| {
                let (p, s) = src.factors(k).unwrap();
                let (g, h) = f.factors(p).unwrap();
                dst.position(
                    cs.apex().position(g, s).unwrap(),
                    ds.apex().position(h, s).unwrap(),
                )
                .unwrap()
            })
            .collect();
        OverMap::new(src, dst, graph)
    }
}

/// Which structures survive base change, each checked exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preservation {
    /// `g^* D L = D g^* L`, strictly.
    pub dual: bool,
    /// `μ ; g^* ev ≅ ev ; ι`.
    pub evaluation: bool,
    /// `ι ; g^* coev ≅ coev ; μ`.
    pub coevaluation: bool,
    pub characteristic_class: bool,
    pub trace: bool,
    pub pairing: bool,
}

impl Preservation {
    pub fn all(&self) -> bool {
        self.dual
            && self.evaluation
            && self.coevaluation
            && self.characteristic_class
            && self.trace
            && self.pairing
    }
}

fn carried(map: &OverMap, before: &OmegaClass, after: &OmegaClass) -> Result<bool> {
    Ok(map.is_bijective() && &omega_push(map, before)? == after)
}

/// Checks duals, traces and pairings against base change for `u : A -> B`, `v : B -> A`.
pub fn functor_preserves(bc: &BaseChange, u: &CCMorphism, v: &CCMorphism) -> Result<Preservation> {
    let a = u.source();
    let pa = bc.pull_object(a)?;
    let dual = bc.pull_object(&a.dual())? == pa.dual() && bc.pull_sheaf(&verdier(a.sheaf()))? == verdier(pa.sheaf());

    let da = make_dual(a)?;
    let dpa = make_dual(&pa)?;
    let iota = bc.unit_comparison(a.ring())?;
    let mu_ev = bc.monoidal_comparison(&da.dual, a)?;
    let mu_coev = bc.monoidal_comparison(a, &da.dual)?;
    let evaluation = cc_iso_search(
        &cc_compose(&mu_ev, &bc.pull_morphism(&da.ev)?)?,
        &cc_compose(&dpa.ev, &iota)?,
    )
    .is_some();
    let coevaluation = cc_iso_search(
        &cc_compose(&iota, &bc.pull_morphism(&da.coev)?)?,
        &cc_compose(&dpa.coev, &mu_coev)?,
    )
    .is_some();

    let id = CCMorphism::identity(a);
    let cc = characteristic_class(&da)?;
    let cc_s = characteristic_class(&dpa)?;
    let characteristic_class = carried(
        &bc.fixed_point_recoord(id.span())?,
        &bc.pull_class(&cc.class)?,
        &cc_s.class,
    )?;

    let e = cc_compose(u, v)?;
    let es = bc.pull_morphism(&e)?;
    let trace = carried(
        &bc.fixed_point_recoord(e.span())?,
        &bc.pull_class(&self::trace(&e, &da)?.class)?,
        &self::trace(&es, &dpa)?.class,
    )?;

    let (us, vs) = (bc.pull_morphism(u)?, bc.pull_morphism(v)?);
    let pairing = carried(
        &bc.locus_recoord(u.span(), v.span())?,
        &bc.pull_class(&self::pairing(u, v, &da)?.class)?,
        &self::pairing(&us, &vs, &dpa)?.class,
    )?;

    Ok(Preservation {
        dual,
        evaluation,
        coevaluation,
        characteristic_class,
        trace,
        pairing,
    })
}

/// `g^* (p^♯_! u) = (p_S)^♯_! (g^* u)`, compared as values.
pub fn push_square(bc: &BaseChange, diag: &PushDiagram, u: &CCMorphism) -> Result<bool> {
    let lhs = bc.pull_morphism(&shriek_push(diag, u)?)?;
    let rhs = shriek_push(&bc.pull_diagram(diag)?, &bc.pull_morphism(u)?)?;
    Ok(lhs == rhs)
}

/// `g^*` preserves composition and tensor up to invertible cells.
pub fn functor_coherence(bc: &BaseChange, a: &CCMorphism, b: &CCMorphism) -> Result<(bool, bool)> {
    let composed = cc_iso_search(
        &bc.pull_morphism(&cc_compose(a, b)?)?,
        &cc_compose(&bc.pull_morphism(a)?, &bc.pull_morphism(b)?)?,
    )
    .is_some();
    let mu_src = bc.monoidal_comparison(a.source(), b.source())?;
    let mu_dst = bc.monoidal_comparison(a.target(), b.target())?;
    let tensored = cc_iso_search(
        &cc_compose(&mu_src, &bc.pull_morphism(&cc_tensor(a, b)?)?)?,
        &cc_compose(
            &cc_tensor(&bc.pull_morphism(a)?, &bc.pull_morphism(b)?)?,
            &mu_dst,
        )?,
    )
    .is_some();
    Ok((composed, tensored))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::chainalg::{ChainMap, Complex, Matrix, Ring};

    fn z() -> Ring {
        Ring::integers()
    }

    fn q() -> Complex {
        Complex::new(
            z(),
            BTreeMap::from([(0, 1), (1, 1)]),
            BTreeMap::from([(0, Matrix::scalar(z(), 1, 2))]),
        )
        .unwrap()
    }

    fn two_over_one() -> (BaseSet, BaseSet, BaseChange) {
        let t = BaseSet::point();
        let s = BaseSet::new(["s1", "s2"]).unwrap();
        let bc = BaseChange::new(&s, &t, vec![0, 0]).unwrap();
        (s, t, bc)
    }

    fn loop_pair(t: &BaseSet) -> (CCMorphism, CCMorphism) {
        let x = FinOver::from_pairs(t, &[("a", "pt"), ("b", "pt")]).unwrap();
        let a = CCObject::new(
            Sheaf::new(z(), x.clone(), vec![Complex::free(z(), 0, 2), q()]).unwrap(),
        );
        let c = FinOver::from_pairs(t, &[("g", "pt"), ("h", "pt")]).unwrap();
        let span = Span::new(
            OverMap::new(c.clone(), x.clone(), vec![0, 1]).unwrap(),
            OverMap::new(c, x, vec![0, 1]).unwrap(),
        )
        .unwrap();
        let m = Matrix::from_rows(z(), 2, &[vec![1, 2], vec![0, 4]]).unwrap();
        let u = CCMorphism::new(
            a.clone(),
            a.clone(),
            span,
            vec![
                ChainMap::new(a.stalk(0).clone(), a.stalk(0).clone(), BTreeMap::from([(0, m)]))
                    .unwrap(),
                ChainMap::scalar(&q(), 3),
            ],
        )
        .unwrap();
        (u, CCMorphism::identity(&a))
    }

    #[test]
    fn pull_object_examples() {
        let (s, t, bc) = two_over_one();
        let y = FinOver::from_pairs(&t, &[("y", "pt")]).unwrap();
        let a = CCObject::new(Sheaf::constant(&y, &q()));
        let pa = bc.pull_object(&a).unwrap();
        assert_eq!(pa.space().labels(), &["(y,s1)".to_string(), "(y,s2)".to_string()]);
        assert_eq!(pa.stalk(1), &q());
        assert_eq!(pa.base(), &s);

        let id = BaseChange::identity(&t);
        assert_eq!(id.pull_object(&a).unwrap().sheaf().stalks().len(), 1);

        let empty = BaseSet::new(Vec::<String>::new()).unwrap();
        let none = BaseChange::new(&empty, &t, vec![]).unwrap();
        assert!(none.pull_object(&a).unwrap().space().is_empty());
    }

    #[test]
    fn pull_morphism_duplicates_components() {
        let (_, t, bc) = two_over_one();
        let (u, _) = loop_pair(&t);
        let us = bc.pull_morphism(&u).unwrap();
        assert_eq!(us.apex().len(), 4);
        assert_eq!(us.component(0), u.component(0));
        assert_eq!(us.component(1), u.component(0));
        assert_eq!(us.component(3), u.component(1));
    }

    #[test]
    fn preservation_examples() {
        let (_, t, bc) = two_over_one();
        let (u, v) = loop_pair(&t);
        let p = functor_preserves(&bc, &u, &v).unwrap();
        assert!(p.all(), "{p:?}");
        let pa = pairing(
            &bc.pull_morphism(&u).unwrap(),
            &bc.pull_morphism(&v).unwrap(),
            &make_dual(&bc.pull_object(u.source()).unwrap()).unwrap(),
        )
        .unwrap();
        // tr [[1,2],[0,4]] = 5, and χ(Q)·3 = 0, once per fiber point.
        assert_eq!(pa.class.values(), &[5, 5, 0, 0]);

        let id = BaseChange::identity(&t);
        assert!(functor_preserves(&id, &u, &v).unwrap().all());
        let (composed, tensored) = functor_coherence(&bc, &u, &v).unwrap();
        assert!(composed && tensored);
    }

    #[test]
    fn push_square_is_strict() {
        let (_, t, bc) = two_over_one();
        let (u, _) = loop_pair(&t);
        let x = u.source().space().clone();
        let pt = FinOver::from_pairs(&t, &[("p", "pt")]).unwrap();
        let f = OverMap::new(x.clone(), pt.clone(), vec![0, 0]).unwrap();
        let diag = PushDiagram::new(
            f.clone(),
            OverMap::new(u.apex().clone(), pt.clone(), vec![0, 0]).unwrap(),
            f,
            u.span().clone(),
            Span::identity(&pt),
        )
        .unwrap();
        assert!(push_square(&bc, &diag, &u).unwrap());
    }
}

use crate::chainalg::{
    cx_assoc, cx_coev, cx_ev, cx_swap, map_inverse, map_tensor, ChainMap, Complex, Ring,
};
use crate::error::{Error, Result};
use crate::finspan::{
    assoc_map, diagonal_map, left_unit_map, product_keys, right_unit_map, span_compose,
    span_tensor, swap_map, BaseSet, FinOver, Key, OverMap, Span, Traced,
};
use crate::sheafops::{sheaf_box, verdier, Sheaf};

/// `(X, L)`: a set over the base with a sheaf on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCObject {
    sheaf: Sheaf,
}

impl CCObject {
    pub fn new(sheaf: Sheaf) -> Self {
        CCObject { sheaf }
    }

    /// `(S, Λ[0])`.
    pub fn unit(base: &BaseSet, ring: Ring) -> Self {
        CCObject::new(Sheaf::unit(base, ring))
    }

    pub fn space(&self) -> &FinOver {
        self.sheaf.carrier()
    }

    pub fn sheaf(&self) -> &Sheaf {
        &self.sheaf
    }

    pub fn stalk(&self, i: usize) -> &Complex {
        self.sheaf.stalk(i)
    }

    pub fn ring(&self) -> Ring {
        self.sheaf.ring()
    }

    pub fn base(&self) -> &BaseSet {
        self.space().base()
    }

    /// `(X, D L)`.
    pub fn dual(&self) -> CCObject {
        CCObject::new(verdier(&self.sheaf))
    }

    /// `(X ×_S Y, L ⊠ M)`.
    pub fn tensor(&self, other: &CCObject) -> Result<CCObject> {
        Ok(CCObject::new(sheaf_box(&self.sheaf, &other.sheaf)?))
    }
}

/// `(c, u)`: a span with one chain map `L_{c⃖γ} -> M_{c⃗γ}` per apex element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCMorphism {
    source: CCObject,
    target: CCObject,
    span: Span,
    maps: Vec<ChainMap>,
}

impl CCMorphism {
    pub fn new(
        source: CCObject,
        target: CCObject,
        span: Span,
        maps: Vec<ChainMap>,
    ) -> Result<Self> {
        if span.source() != source.space() || span.target() != target.space() {
            return Err(Error::BoundaryMismatch(
                "span does not join the objects' spaces".into(),
            ));
        }
        if maps.len() != span.apex().len() {
            return Err(Error::CarrierMismatch(format!(
                "{} components for an apex of size {}",
                maps.len(),
                span.apex().len()
            )));
        }
        for (g, m) in maps.iter().enumerate() {
            if m.source() != source.stalk(span.left().apply(g))
                || m.target() != target.stalk(span.right().apply(g))
            {
                return Err(Error::BoundaryMismatch(format!(
                    "component at {} has the wrong endpoints",
                    span.apex().label(g)
                )));
            }
        }
        Ok(CCMorphism {
            source,
            target,
            span,
            maps,
        })
    }

    pub fn identity(a: &CCObject) -> Self {
        CCMorphism {
            source: a.clone(),
            target: a.clone(),
            span: Span::identity(a.space()),
            maps: a.sheaf.stalks().iter().map(ChainMap::identity).collect(),
        }
    }

    /// Span `(id, f)` with the given components `L_x -> M_{f x}`.
    pub fn graph(
        f: &OverMap,
        source: &CCObject,
        target: &CCObject,
        maps: Vec<ChainMap>,
    ) -> Result<Self> {
        Self::new(source.clone(), target.clone(), Span::graph(f), maps)
    }

    /// Span `(id, f)` with identity components; requires `L_x = M_{f x}`.
    pub fn relabel(f: &OverMap, source: &CCObject, target: &CCObject) -> Result<Self> {
        let maps = (0..f.source().len())
            .map(|x| ChainMap::identity(source.stalk(x)))
            .collect();
        Self::graph(f, source, target, maps)
    }

    pub fn source(&self) -> &CCObject {
        &self.source
    }

    pub fn target(&self) -> &CCObject {
        &self.target
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn apex(&self) -> &FinOver {
        self.span.apex()
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    pub fn component(&self, g: usize) -> &ChainMap {
        &self.maps[g]
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Same span, replaced components.
    pub fn with_maps(&self, maps: Vec<ChainMap>) -> Result<Self> {
        Self::new(
            self.source.clone(),
            self.target.clone(),
            self.span.clone(),
            maps,
        )
    }
}

/// `a` then `b`; the component at `(γ, δ)` is `v_δ ∘ u_γ`.
pub fn cc_compose(a: &CCMorphism, b: &CCMorphism) -> Result<CCMorphism> {
    if a.target != b.source {
        return Err(Error::BoundaryMismatch(
            "composition: target of the first differs from source of the second".into(),
        ));
    }
    let span = span_compose(&a.span, &b.span)?;
    let maps = (0..span.apex().len())
        .map(|k| {
            let (i, j) = span.apex().factors(k).unwrap();
            a.maps[i].then(&b.maps[j])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CCMorphism {
        source: a.source.clone(),
        target: b.target.clone(),
        span,
        maps,
    })
}

/// Componentwise `u_γ ⊗ u′_γ′` over the tensor span.
pub fn cc_tensor(a: &CCMorphism, b: &CCMorphism) -> Result<CCMorphism> {
    let span = span_tensor(&a.span, &b.span)?;
    let maps = (0..span.apex().len())
        .map(|k| {
            let (i, j) = span.apex().factors(k).unwrap();
            map_tensor(&a.maps[i], &b.maps[j])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CCMorphism {
        source: a.source.tensor(&b.source)?,
        target: a.target.tensor(&b.target)?,
        span,
        maps,
    })
}

/// Inverse of a morphism whose legs are bijections and whose components are invertible.
pub fn cc_inverse(m: &CCMorphism) -> Result<CCMorphism> {
    if !m.span.left().is_bijective() || !m.span.right().is_bijective() {
        return Err(Error::NotInvertible);
    }
    let maps = m.maps.iter().map(map_inverse).collect::<Result<Vec<_>>>()?;
    CCMorphism::new(m.target.clone(), m.source.clone(), m.span.reversed(), maps)
}

/// `1 ⊗ A -> A`.
pub fn left_unitor(a: &CCObject) -> Result<CCMorphism> {
    let src = CCObject::unit(a.base(), a.ring()).tensor(a)?;
    CCMorphism::relabel(&left_unit_map(a.space()), &src, a)
}

/// `A ⊗ 1 -> A`.
pub fn right_unitor(a: &CCObject) -> Result<CCMorphism> {
    let src = a.tensor(&CCObject::unit(a.base(), a.ring()))?;
    CCMorphism::relabel(&right_unit_map(a.space()), &src, a)
}

/// `(A ⊗ B) ⊗ C -> A ⊗ (B ⊗ C)`.
pub fn associator(a: &CCObject, b: &CCObject, c: &CCObject) -> Result<CCMorphism> {
    let ab = a.tensor(b)?;
    let src = ab.tensor(c)?;
    let dst = a.tensor(&b.tensor(c)?)?;
    let f = assoc_map(a.space(), b.space(), c.space())?;
    let maps = (0..src.space().len())
        .map(|k| {
            let (xy, z) = src.space().factors(k).unwrap();
            let (x, y) = ab.space().factors(xy).unwrap();
            cx_assoc(a.stalk(x), b.stalk(y), c.stalk(z))
        })
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::graph(&f, &src, &dst, maps)
}

/// `A ⊗ B -> B ⊗ A` with Koszul signs.
pub fn symmetry(a: &CCObject, b: &CCObject) -> Result<CCMorphism> {
    let src = a.tensor(b)?;
    let dst = b.tensor(a)?;
    let f = swap_map(a.space(), b.space())?;
    let maps = (0..src.space().len())
        .map(|k| {
            let (x, y) = src.space().factors(k).unwrap();
            cx_swap(a.stalk(x), b.stalk(y))
        })
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::graph(&f, &src, &dst, maps)
}

/// `A^∨ ⊗ A -> 1` on the span `X ×_S X <- X -> S`.
pub fn evaluation(a: &CCObject) -> Result<CCMorphism> {
    let src = a.dual().tensor(a)?;
    let unit = CCObject::unit(a.base(), a.ring());
    let span = Span::new(diagonal_map(a.space()), OverMap::to_base(a.space()))?;
    let maps = a
        .sheaf
        .stalks()
        .iter()
        .map(cx_ev)
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::new(src, unit, span, maps)
}

/// `1 -> A ⊗ A^∨` on the span `S <- X -> X ×_S X`.
pub fn coevaluation(a: &CCObject) -> Result<CCMorphism> {
    let dst = a.tensor(&a.dual())?;
    let unit = CCObject::unit(a.base(), a.ring());
    let span = Span::new(OverMap::to_base(a.space()), diagonal_map(a.space()))?;
    let maps = a
        .sheaf
        .stalks()
        .iter()
        .map(cx_coev)
        .collect::<Result<Vec<_>>>()?;
    CCMorphism::new(unit, dst, span, maps)
}

/// A composite of morphisms from named atoms and fixed structural pieces.
#[derive(Clone, Debug)]
pub enum CCExpr {
    Atom(u32, CCMorphism),
    Fixed(CCMorphism),
    Compose(Box<CCExpr>, Box<CCExpr>),
    Tensor(Box<CCExpr>, Box<CCExpr>),
}

impl CCExpr {
    pub fn compose(a: CCExpr, b: CCExpr) -> Self {
        CCExpr::Compose(Box::new(a), Box::new(b))
    }

    /// Left-to-right composite of a chain of expressions.
    pub fn chain<I: IntoIterator<Item = CCExpr>>(parts: I) -> Self {
        let mut it = parts.into_iter();
        let first = it.next().expect("non-empty chain");
        it.fold(first, CCExpr::compose)
    }

    pub fn tensor(a: CCExpr, b: CCExpr) -> Self {
        CCExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn eval(&self) -> Result<Traced<CCMorphism>> {
        match self {
            CCExpr::Atom(id, m) => Ok(Traced {
                keys: (0..m.apex().len()).map(|i| vec![(*id, i)]).collect(),
                value: m.clone(),
            }),
            CCExpr::Fixed(m) => Ok(Traced {
                keys: vec![Key::new(); m.apex().len()],
                value: m.clone(),
            }),
            CCExpr::Compose(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                let value = cc_compose(&a.value, &b.value)?;
                let keys = product_keys(value.apex(), &a.keys, &b.keys);
                Ok(Traced { value, keys })
            }
            CCExpr::Tensor(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                let value = cc_tensor(&a.value, &b.value)?;
                let keys = product_keys(value.apex(), &a.keys, &b.keys);
                Ok(Traced { value, keys })
            }
        }
    }
}

//! Finite sets over a finite base, their maps, chosen fiber products and spans.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The base set `S`. Labels are unique and ordered by input order.
#[derive(Clone)]
pub struct BaseSet(Arc<BaseData>);

struct BaseData {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl BaseSet {
    pub fn new<I, T>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = unique_index(&labels)?;
        Ok(BaseSet(Arc::new(BaseData { labels, index })))
    }

    /// The one-point base `{"pt"}`.
    pub fn point() -> Self {
        Self::new(["pt"]).expect("single label")
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }
}

impl PartialEq for BaseSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for BaseSet {}

impl fmt::Debug for BaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0.labels).finish()
    }
}

fn unique_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::InvalidSet(format!("duplicate label {l:?}")));
        }
    }
    Ok(index)
}

/// A finite set with an anchor map to the base.
#[derive(Clone)]
pub struct FinOver(Arc<FinData>);

struct FinData {
    base: BaseSet,
    labels: Vec<String>,
    anchor: Vec<usize>,
    index: HashMap<String, usize>,
    factors: Option<Factors>,
}

struct Factors {
    pairs: Vec<(usize, usize)>,
    position: HashMap<(usize, usize), usize>,
}

impl FinOver {
    pub fn new(base: &BaseSet, labels: Vec<String>, anchor: Vec<usize>) -> Result<Self> {
        if labels.len() != anchor.len() {
            return Err(Error::InvalidSet(format!(
                "{} labels but {} anchors",
                labels.len(),
                anchor.len()
            )));
        }
        if let Some(&a) = anchor.iter().find(|&&a| a >= base.len()) {
            return Err(Error::InvalidSet(format!(
                "anchor index {a} outside the base"
            )));
        }
        let index = unique_index(&labels)?;
        Ok(FinOver(Arc::new(FinData {
            base: base.clone(),
            labels,
            anchor,
            index,
            factors: None,
        })))
    }

    /// Builds a set from `(label, base label)` pairs.
    pub fn from_pairs(base: &BaseSet, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut labels = Vec::with_capacity(pairs.len());
        let mut anchor = Vec::with_capacity(pairs.len());
        for (l, b) in pairs {
            let a = base
                .index_of(b)
                .ok_or_else(|| Error::InvalidSet(format!("unknown base label {b:?}")))?;
            labels.push(l.to_string());
            anchor.push(a);
        }
        Self::new(base, labels, anchor)
    }

    pub fn empty(base: &BaseSet) -> Self {
        Self::new(base, Vec::new(), Vec::new()).expect("empty set")
    }

    /// The base itself, anchored by the identity.
    pub fn base_set(base: &BaseSet) -> Self {
        Self::new(base, base.labels().to_vec(), (0..base.len()).collect()).expect("base labels")
    }

    pub(crate) fn product(
        base: &BaseSet,
        labels: Vec<String>,
        anchor: Vec<usize>,
        pairs: Vec<(usize, usize)>,
    ) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let position = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        FinOver(Arc::new(FinData {
            base: base.clone(),
            labels,
            anchor,
            index,
            factors: Some(Factors { pairs, position }),
        }))
    }

    pub fn base(&self) -> &BaseSet {
        &self.0.base
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn anchor(&self, i: usize) -> usize {
        self.0.anchor[i]
    }

    pub fn anchors(&self) -> &[usize] {
        &self.0.anchor
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// For a chosen fiber product, the pair of factor indices of element `i`.
    pub fn factors(&self, i: usize) -> Option<(usize, usize)> {
        self.0.factors.as_ref().map(|f| f.pairs[i])
    }

    /// For a chosen fiber product, the element with factor indices `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.0.factors.as_ref()?.position.get(&(i, j)).copied()
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for FinOver {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.0.labels == other.0.labels
                && self.0.anchor == other.0.anchor
                && self.0.base == other.0.base)
    }
}

impl Eq for FinOver {}

impl fmt::Debug for FinOver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.0
                    .labels
                    .iter()
                    .zip(&self.0.anchor)
                    .map(|(l, &a)| (l, self.0.base.label(a))),
            )
            .finish()
    }
}

/// A map of sets over the base. Every such map has finite fibers, so it is proper.
#[derive(Clone, PartialEq, Eq)]
pub struct OverMap {
    source: FinOver,
    target: FinOver,
    graph: Vec<usize>,
}

impl OverMap {
    pub fn new(source: FinOver, target: FinOver, graph: Vec<usize>) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::BaseMismatch(
                "map between sets over different bases".into(),
            ));
        }
        if graph.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "graph has {} entries for a source of size {}",
                graph.len(),
                source.len()
            )));
        }
        for (i, &j) in graph.iter().enumerate() {
            if j >= target.len() {
                return Err(Error::InvalidMap(format!(
                    "{} maps outside the target",
                    source.label(i)
                )));
            }
            if source.anchor(i) != target.anchor(j) {
                return Err(Error::InvalidMap(format!(
                    "{} -> {} does not commute with the anchors",
                    source.label(i),
                    target.label(j)
                )));
            }
        }
        Ok(OverMap {
            source,
            target,
            graph,
        })
    }

    pub fn from_pairs(source: &FinOver, target: &FinOver, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut graph = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            let i = source
                .index_of(a)
                .ok_or_else(|| Error::InvalidMap(format!("unknown source label {a:?}")))?;
            let j = target
                .index_of(b)
                .ok_or_else(|| Error::InvalidMap(format!("unknown target label {b:?}")))?;
            graph[i] = j;
        }
        if let Some(i) = graph.iter().position(|&j| j == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "{} has no image",
                source.label(i)
            )));
        }
        Self::new(source.clone(), target.clone(), graph)
    }

    pub fn identity(x: &FinOver) -> Self {
        OverMap {
            source: x.clone(),
            target: x.clone(),
            graph: (0..x.len()).collect(),
        }
    }

    /// The anchor `X -> S` as a map to the base set.
    pub fn to_base(x: &FinOver) -> Self {
        OverMap {
            source: x.clone(),
            target: FinOver::base_set(x.base()),
            graph: x.anchors().to_vec(),
        }
    }

    pub fn source(&self) -> &FinOver {
        &self.source
    }

    pub fn target(&self) -> &FinOver {
        &self.target
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, i: usize) -> usize {
        self.graph[i]
    }

    /// Preimage of `j`, in source order.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.graph.len())
            .filter(|&i| self.graph[i] == j)
            .collect()
    }

    /// All fibers at once, indexed by target element.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.target.len()];
        for (i, &j) in self.graph.iter().enumerate() {
            out[j].push(i);
        }
        out
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &OverMap) -> Result<OverMap> {
        if self.target != next.source {
            return Err(Error::BoundaryMismatch(
                "map composition: sets differ".into(),
            ));
        }
        Ok(OverMap {
            source: self.source.clone(),
            target: next.target.clone(),
            graph: self.graph.iter().map(|&j| next.graph[j]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.graph.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        self.graph
            .iter()
            .all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    pub fn inverse(&self) -> Result<OverMap> {
        if !self.is_bijective() {
            return Err(Error::InvalidMap("map is not a bijection".into()));
        }
        let mut graph = vec![0; self.graph.len()];
        for (i, &j) in self.graph.iter().enumerate() {
            graph[j] = i;
        }
        Ok(OverMap {
            source: self.target.clone(),
            target: self.source.clone(),
            graph,
        })
    }
}

impl fmt::Debug for OverMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.graph
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (self.source.label(i), self.target.label(j))),
            )
            .finish()
    }
}

/// Chosen fiber product with its projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub set: FinOver,
    pub pr1: OverMap,
    pub pr2: OverMap,
}

/// Pairs `(x, y)` with `f(x) = g(y)`, ordered lexicographically by input order.
pub fn fiber_product(f: &OverMap, g: &OverMap) -> Result<FiberProduct> {
    if f.target != g.target {
        return Err(Error::BoundaryMismatch(
            "fiber product needs a common target".into(),
        ));
    }
    let buckets = g.fibers();
    let x = &f.source;
    let y = &g.source;
    let mut labels = Vec::new();
    let mut anchor = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..x.len() {
        for &j in &buckets[f.graph[i]] {
            labels.push(format!("({},{})", x.label(i), y.label(j)));
            anchor.push(x.anchor(i));
            pairs.push((i, j));
        }
    }
    let (g1, g2) = pairs.iter().copied().unzip();
    let set = FinOver::product(x.base(), labels, anchor, pairs);
    Ok(FiberProduct {
        pr1: OverMap {
            source: set.clone(),
            target: x.clone(),
            graph: g1,
        },
        pr2: OverMap {
            source: set.clone(),
            target: y.clone(),
            graph: g2,
        },
        set,
    })
}

/// `X ×_S Y`.
pub fn base_product(x: &FinOver, y: &FinOver) -> Result<FiberProduct> {
    if x.base() != y.base() {
        return Err(Error::BaseMismatch(
            "product of sets over different bases".into(),
        ));
    }
    fiber_product(&OverMap::to_base(x), &OverMap::to_base(y))
}

/// `f ×_S g : X ×_S Y -> X′ ×_S Y′` between chosen products.
pub fn product_map(f: &OverMap, g: &OverMap, src: &FinOver, dst: &FinOver) -> Result<OverMap> {
    let graph = (0..src.len())
        .map(|k| {
            let (i, j) = src
                .factors(k)
                .ok_or_else(|| Error::InvalidSet("source is not a chosen product".into()))?;
            dst.position(f.apply(i), g.apply(j))
                .ok_or_else(|| Error::InvalidSet("target lacks the image pair".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    OverMap::new(src.clone(), dst.clone(), graph)
}

/// `X ×_S S -> X`.
pub fn right_unit_map(x: &FinOver) -> OverMap {
    let p = base_product(x, &FinOver::base_set(x.base())).expect("same base");
    p.pr1
}

/// `S ×_S X -> X`.
pub fn left_unit_map(x: &FinOver) -> OverMap {
    let p = base_product(&FinOver::base_set(x.base()), x).expect("same base");
    p.pr2
}

/// `(X ×_S Y) ×_S Z -> X ×_S (Y ×_S Z)`.
pub fn assoc_map(x: &FinOver, y: &FinOver, z: &FinOver) -> Result<OverMap> {
    let xy = base_product(x, y)?.set;
    let yz = base_product(y, z)?.set;
    let src = base_product(&xy, z)?.set;
    let dst = base_product(x, &yz)?.set;
    let graph = (0..src.len())
        .map(|k| {
            let (ab, c) = src.factors(k).unwrap();
            let (a, b) = xy.factors(ab).unwrap();
            dst.position(a, yz.position(b, c).unwrap()).unwrap()
        })
        .collect();
    OverMap::new(src, dst, graph)
}

/// `X ×_S Y -> Y ×_S X`.
pub fn swap_map(x: &FinOver, y: &FinOver) -> Result<OverMap> {
    let src = base_product(x, y)?.set;
    let dst = base_product(y, x)?.set;
    let graph = (0..src.len())
        .map(|k| {
            let (a, b) = src.factors(k).unwrap();
            dst.position(b, a).unwrap()
        })
        .collect();
    OverMap::new(src, dst, graph)
}

/// Diagonal `X -> X ×_S X`.
pub fn diagonal_map(x: &FinOver) -> OverMap {
    let xx = base_product(x, x).expect("same base").set;
    let graph = (0..x.len()).map(|i| xx.position(i, i).unwrap()).collect();
    OverMap::new(x.clone(), xx, graph).expect("diagonal commutes with anchors")
}

/// Pairing map `C -> X ×_S Y`, `γ ↦ (f γ, g γ)`, into a chosen product.
pub fn pair_map(f: &OverMap, g: &OverMap, dst: &FinOver) -> Result<OverMap> {
    if f.source != g.source {
        return Err(Error::BoundaryMismatch(
            "pairing needs a common source".into(),
        ));
    }
    let graph = (0..f.source.len())
        .map(|k| {
            dst.position(f.apply(k), g.apply(k))
                .ok_or_else(|| Error::InvalidSet("target lacks the image pair".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    OverMap::new(f.source.clone(), dst.clone(), graph)
}

/// A correspondence `X <- C -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    left: OverMap,
    right: OverMap,
}

impl Span {
    pub fn new(left: OverMap, right: OverMap) -> Result<Self> {
        if left.source != right.source {
            return Err(Error::InvalidMap("span legs have different sources".into()));
        }
        Ok(Span { left, right })
    }

    pub fn identity(x: &FinOver) -> Self {
        Span {
            left: OverMap::identity(x),
            right: OverMap::identity(x),
        }
    }

    /// `X <- X -> Y` with identity left leg.
    pub fn graph(f: &OverMap) -> Self {
        Span {
            left: OverMap::identity(&f.source),
            right: f.clone(),
        }
    }

    /// `Y <- X -> X` with identity right leg.
    pub fn cograph(f: &OverMap) -> Self {
        Span {
            left: f.clone(),
            right: OverMap::identity(&f.source),
        }
    }

    pub fn left(&self) -> &OverMap {
        &self.left
    }

    pub fn right(&self) -> &OverMap {
        &self.right
    }

    pub fn apex(&self) -> &FinOver {
        &self.left.source
    }

    pub fn source(&self) -> &FinOver {
        &self.left.target
    }

    pub fn target(&self) -> &FinOver {
        &self.right.target
    }

    pub fn is_parallel(&self, other: &Span) -> bool {
        self.source() == other.source() && self.target() == other.target()
    }

    pub fn reversed(&self) -> Span {
        Span {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// `c` then `d`; apex `C ×_Y D`.
pub fn span_compose(c: &Span, d: &Span) -> Result<Span> {
    if c.target() != d.source() {
        return Err(Error::BoundaryMismatch(
            "span composition: target of the first differs from source of the second".into(),
        ));
    }
    let fp = fiber_product(&c.right, &d.left)?;
    Span::new(fp.pr1.then(&c.left)?, fp.pr2.then(&d.right)?)
}

/// Apex `C ×_S C′` with legs taken componentwise.
pub fn span_tensor(c: &Span, d: &Span) -> Result<Span> {
    let apex = base_product(c.apex(), d.apex())?.set;
    let src = base_product(c.source(), d.source())?.set;
    let dst = base_product(c.target(), d.target())?.set;
    Span::new(
        product_map(&c.left, &d.left, &apex, &src)?,
        product_map(&c.right, &d.right, &apex, &dst)?,
    )
}

/// A map of apexes between parallel spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCell {
    source: Span,
    target: Span,
    graph: OverMap,
}

impl SpanCell {
    /// Shape checks only; leg equations are verified by [`cell_check`].
    pub fn new(source: Span, target: Span, graph: OverMap) -> Result<Self> {
        if !source.is_parallel(&target) {
            return Err(Error::BoundaryMismatch(
                "cell between non-parallel spans".into(),
            ));
        }
        if graph.source != *source.apex() || graph.target != *target.apex() {
            return Err(Error::BoundaryMismatch(
                "cell graph does not join the apexes".into(),
            ));
        }
        Ok(SpanCell {
            source,
            target,
            graph,
        })
    }

    pub fn identity(s: &Span) -> Self {
        SpanCell {
            source: s.clone(),
            target: s.clone(),
            graph: OverMap::identity(s.apex()),
        }
    }

    pub fn source(&self) -> &Span {
        &self.source
    }

    pub fn target(&self) -> &Span {
        &self.target
    }

    pub fn graph(&self) -> &OverMap {
        &self.graph
    }

    /// `self` followed by `next`.
    pub fn vcompose(&self, next: &SpanCell) -> Result<SpanCell> {
        if self.target != next.source {
            return Err(Error::BoundaryMismatch(
                "vertical composition of cells".into(),
            ));
        }
        SpanCell::new(
            self.source.clone(),
            next.target.clone(),
            self.graph.then(&next.graph)?,
        )
    }
}

pub fn cell_check(p: &SpanCell) -> Result<()> {
    for (leg, s, t) in [
        ("left", &p.source.left, &p.target.left),
        ("right", &p.source.right, &p.target.right),
    ] {
        for i in 0..p.graph.source.len() {
            if t.apply(p.graph.apply(i)) != s.apply(i) {
                return Err(Error::LegMismatch {
                    leg,
                    element: p.graph.source.label(i).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// A bijection between apexes, as an index permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijection {
    forward: Vec<usize>,
}

impl Bijection {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; forward.len()];
        for &j in &forward {
            if j >= forward.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Recoord("not a permutation".into()));
            }
        }
        Ok(Bijection { forward })
    }

    pub fn identity(n: usize) -> Self {
        Bijection {
            forward: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Bijection {
        let mut back = vec![0; self.forward.len()];
        for (i, &j) in self.forward.iter().enumerate() {
            back[j] = i;
        }
        Bijection { forward: back }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The bijection as a cell `a ⇒ b`, leg-checked.
    pub fn as_cell(&self, a: &Span, b: &Span) -> Result<SpanCell> {
        let graph = OverMap::new(a.apex().clone(), b.apex().clone(), self.forward.clone())?;
        let cell = SpanCell::new(a.clone(), b.clone(), graph)?;
        cell_check(&cell)?;
        Ok(cell)
    }
}

/// Provenance of an apex element: the atoms it was built from, with their elements.
pub type Key = Vec<(u32, usize)>;

/// A value whose apex elements carry provenance keys.
#[derive(Clone, Debug)]
pub struct Traced<T> {
    pub value: T,
    pub keys: Vec<Key>,
}

/// Keys on a chosen product apex: the sorted union of the factor keys.
pub fn product_keys(apex: &FinOver, left: &[Key], right: &[Key]) -> Vec<Key> {
    (0..apex.len())
        .map(|k| {
            let (i, j) = apex.factors(k).expect("apex is a chosen product");
            let mut key = left[i].clone();
            key.extend_from_slice(&right[j]);
            key.sort_unstable();
            key
        })
        .collect()
}

/// Matches elements of two parallel spans by `(key, left image, right image)`.
pub fn match_keys(a: &Span, a_keys: &[Key], b: &Span, b_keys: &[Key]) -> Result<Bijection> {
    if !a.is_parallel(b) {
        return Err(Error::Recoord("expressions are not parallel".into()));
    }
    if a.apex().len() != b.apex().len() {
        return Err(Error::Recoord(format!(
            "apex sizes differ: {} vs {}",
            a.apex().len(),
            b.apex().len()
        )));
    }
    let mut table = HashMap::with_capacity(b_keys.len());
    for (j, key) in b_keys.iter().enumerate() {
        let tag = (key.as_slice(), b.left.apply(j), b.right.apply(j));
        if table.insert(tag, j).is_some() {
            return Err(Error::Recoord(
                "apex elements are not determined by their keys".into(),
            ));
        }
    }
    let forward = a_keys
        .iter()
        .enumerate()
        .map(|(i, key)| {
            table
                .get(&(key.as_slice(), a.left.apply(i), a.right.apply(i)))
                .copied()
                .ok_or_else(|| Error::Recoord(format!("no partner for {}", a.apex().label(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Bijection::new(forward)
}

/// A composite of spans built from named atoms and fixed structural spans.
#[derive(Clone, Debug)]
pub enum SpanExpr {
    Atom(u32, Span),
    Fixed(Span),
    Compose(Box<SpanExpr>, Box<SpanExpr>),
    Tensor(Box<SpanExpr>, Box<SpanExpr>),
}

impl SpanExpr {
    pub fn compose(a: SpanExpr, b: SpanExpr) -> Self {
        SpanExpr::Compose(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: SpanExpr, b: SpanExpr) -> Self {
        SpanExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn eval(&self) -> Result<Traced<Span>> {
        match self {
            SpanExpr::Atom(id, s) => Ok(Traced {
                keys: (0..s.apex().len()).map(|i| vec![(*id, i)]).collect(),
                value: s.clone(),
            }),
            SpanExpr::Fixed(s) => Ok(Traced {
                keys: vec![Vec::new(); s.apex().len()],
                value: s.clone(),
            }),
            SpanExpr::Compose(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                let value = span_compose(&a.value, &b.value)?;
                let keys = product_keys(value.apex(), &a.keys, &b.keys);
                Ok(Traced { value, keys })
            }
            SpanExpr::Tensor(a, b) => {
                let (a, b) = (a.eval()?, b.eval()?);
                let value = span_tensor(&a.value, &b.value)?;
                let keys = product_keys(value.apex(), &a.keys, &b.keys);
                Ok(Traced { value, keys })
            }
        }
    }
}

/// The evident bijection between the apexes of two parallel composites.
pub fn canonical_recoord(a: &SpanExpr, b: &SpanExpr) -> Result<Bijection> {
    let (a, b) = (a.eval()?, b.eval()?);
    match_keys(&a.value, &a.keys, &b.value, &b.keys)
}

/// Leg-compatible bijection between parallel spans, if one exists.
///
/// Elements with equal leg images are interchangeable, so matching them in
/// input order is exhaustive.
pub fn span_iso_search(a: &Span, b: &Span) -> Option<Bijection> {
    if !a.is_parallel(b) || a.apex().len() != b.apex().len() {
        return None;
    }
    let mut pools: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for j in (0..b.apex().len()).rev() {
        pools
            .entry((b.left.apply(j), b.right.apply(j)))
            .or_default()
            .push(j);
    }
    let forward = (0..a.apex().len())
        .map(|i| pools.get_mut(&(a.left.apply(i), a.right.apply(i)))?.pop())
        .collect::<Option<Vec<_>>>()?;
    Some(Bijection { forward })
}

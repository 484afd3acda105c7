use std::collections::BTreeMap;

use indexmap::IndexMap;

use crate::basefunc::BaseChange;
use crate::chainalg::{ChainMap, Complex, Matrix, Ring};
use crate::corrcat::{CCMorphism, CCObject, PushDiagram};
use crate::dualtrace::LvData;
use crate::error::{Error, Result};
use crate::finspan::{BaseSet, FinOver, OverMap, Span};
use crate::sheafops::Sheaf;

use super::format::{
    BaseChangeSpec, ComplexSpec, InstanceFile, MapSpec, MorphismSpec, Rows, SetSpec, SheafSpec,
    SpanSpec,
};

/// A fully validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub base: BaseSet,
    pub sets: IndexMap<String, FinOver>,
    pub maps: IndexMap<String, OverMap>,
    pub sheaves: IndexMap<String, Sheaf>,
    pub spans: IndexMap<String, Span>,
    pub morphisms: IndexMap<String, CCMorphism>,
    pub lv: Option<LvData>,
    pub base_change: Option<BaseChange>,
    /// Recorded traces of endomorphisms, by name.
    pub expect: IndexMap<String, IndexMap<String, i64>>,
}

fn err(pointer: String, message: impl Into<String>) -> Error {
    Error::Parse {
        pointer,
        message: message.into(),
    }
}

fn at<T>(r: Result<T>, pointer: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => err(pointer.to_string(), other.to_string()),
    })
}

fn check_label(label: &str, pointer: &str) -> Result<()> {
    if label.is_empty() || label.contains(['(', ')', ',']) {
        return Err(err(
            pointer.to_string(),
            format!("label {label:?} is empty or contains '(', ')' or ','"),
        ));
    }
    Ok(())
}

fn lookup<'a, T>(table: &'a IndexMap<String, T>, name: &str, what: &str, pointer: &str) -> Result<&'a T> {
    table
        .get(name)
        .ok_or_else(|| err(pointer.to_string(), format!("unknown {what} {name:?}")))
}

fn degree(key: &str, pointer: &str) -> Result<i32> {
    key.parse()
        .map_err(|_| err(pointer.to_string(), format!("degree key {key:?} is not an integer")))
}

fn matrix(ring: Ring, rows: usize, cols: usize, data: &Rows, pointer: &str) -> Result<Matrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(err(
            pointer.to_string(),
            format!("expected a {rows}x{cols} matrix"),
        ));
    }
    at(Matrix::from_rows(ring, cols, data), pointer)
}

fn resolve_set(base: &BaseSet, spec: &SetSpec, pointer: &str) -> Result<FinOver> {
    for (i, e) in spec.elements.iter().enumerate() {
        check_label(e, &format!("{pointer}/elements/{i}"))?;
    }
    let anchor = if spec.anchor.is_empty() && (base.len() == 1 || spec.elements.is_empty()) {
        vec![0; spec.elements.len()]
    } else {
        if spec.anchor.len() != spec.elements.len() {
            return Err(err(
                format!("{pointer}/anchor"),
                "one anchor per element is required",
            ));
        }
        spec.anchor
            .iter()
            .enumerate()
            .map(|(i, b)| {
                base.index_of(b)
                    .ok_or_else(|| err(format!("{pointer}/anchor/{i}"), format!("unknown base label {b:?}")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    at(FinOver::new(base, spec.elements.clone(), anchor), pointer)
}

fn resolve_map(sets: &IndexMap<String, FinOver>, spec: &MapSpec, pointer: &str) -> Result<OverMap> {
    let src = lookup(sets, &spec.source, "set", &format!("{pointer}/source"))?;
    let dst = lookup(sets, &spec.target, "set", &format!("{pointer}/target"))?;
    let graph = src
        .labels()
        .iter()
        .map(|l| {
            let p = format!("{pointer}/graph/{l}");
            let image = spec
                .graph
                .get(l)
                .ok_or_else(|| err(p.clone(), format!("no image for {l:?}")))?;
            dst.index_of(image)
                .ok_or_else(|| err(p, format!("unknown target element {image:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if spec.graph.len() != src.len() {
        return Err(err(format!("{pointer}/graph"), "graph lists unknown elements"));
    }
    at(OverMap::new(src.clone(), dst.clone(), graph), pointer)
}

pub(crate) fn resolve_complex(ring: Ring, spec: &ComplexSpec, pointer: &str) -> Result<Complex> {
    let mut ranks = BTreeMap::new();
    for (k, &r) in &spec.ranks {
        ranks.insert(degree(k, &format!("{pointer}/ranks/{k}"))?, r);
    }
    let rank = |n: i32| ranks.get(&n).copied().unwrap_or(0);
    let mut diff = BTreeMap::new();
    for (k, rows) in &spec.diff {
        let p = format!("{pointer}/diff/{k}");
        let n = degree(k, &p)?;
        diff.insert(n, matrix(ring, rank(n + 1), rank(n), rows, &p)?);
    }
    at(Complex::new(ring, ranks.clone(), diff), pointer)
}

fn resolve_sheaf(
    ring: Ring,
    sets: &IndexMap<String, FinOver>,
    spec: &SheafSpec,
    pointer: &str,
) -> Result<Sheaf> {
    let carrier = lookup(sets, &spec.carrier, "set", &format!("{pointer}/carrier"))?;
    let stalks = carrier
        .labels()
        .iter()
        .map(|l| {
            let p = format!("{pointer}/stalks/{l}");
            let c = spec
                .stalks
                .get(l)
                .ok_or_else(|| err(p.clone(), format!("missing stalk for {l:?}")))?;
            resolve_complex(ring, c, &p)
        })
        .collect::<Result<Vec<_>>>()?;
    if spec.stalks.len() != carrier.len() {
        return Err(err(format!("{pointer}/stalks"), "stalks listed for unknown elements"));
    }
    at(Sheaf::new(ring, carrier.clone(), stalks), pointer)
}

fn resolve_span(
    sets: &IndexMap<String, FinOver>,
    maps: &IndexMap<String, OverMap>,
    spec: &SpanSpec,
    pointer: &str,
) -> Result<Span> {
    let left = lookup(maps, &spec.left, "map", &format!("{pointer}/left"))?;
    let right = lookup(maps, &spec.right, "map", &format!("{pointer}/right"))?;
    for (field, name, got) in [
        ("source", &spec.source, left.target()),
        ("target", &spec.target, right.target()),
        ("apex", &spec.apex, left.source()),
    ] {
        let p = format!("{pointer}/{field}");
        if lookup(sets, name, "set", &p)? != got {
            return Err(err(p, format!("set {name:?} does not match the legs")));
        }
    }
    at(Span::new(left.clone(), right.clone()), pointer)
}

fn resolve_morphism(
    sheaves: &IndexMap<String, Sheaf>,
    spans: &IndexMap<String, Span>,
    spec: &MorphismSpec,
    pointer: &str,
) -> Result<CCMorphism> {
    let l = lookup(sheaves, &spec.source, "sheaf", &format!("{pointer}/source"))?;
    let m = lookup(sheaves, &spec.target, "sheaf", &format!("{pointer}/target"))?;
    let span = lookup(spans, &spec.span, "span", &format!("{pointer}/span"))?;
    if let Some(k) = spec.maps.keys().find(|k| span.apex().index_of(k).is_none()) {
        return Err(err(format!("{pointer}/maps/{k}"), "not an apex element"));
    }
    let ring = l.ring();
    let comps = (0..span.apex().len())
        .map(|g| {
            let label = span.apex().label(g);
            let src = l.stalk(span.left().apply(g));
            let dst = m.stalk(span.right().apply(g));
            let mut components = BTreeMap::new();
            if let Some(by_degree) = spec.maps.get(label) {
                for (k, rows) in by_degree {
                    let p = format!("{pointer}/maps/{label}/{k}");
                    let n = degree(k, &p)?;
                    components.insert(n, matrix(ring, dst.rank(n), src.rank(n), rows, &p)?);
                }
            }
            at(
                ChainMap::new(src.clone(), dst.clone(), components),
                &format!("{pointer}/maps/{label}"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    at(
        CCMorphism::new(
            CCObject::new(l.clone()),
            CCObject::new(m.clone()),
            span.clone(),
            comps,
        ),
        pointer,
    )
}

fn resolve_base_change(base: &BaseSet, spec: &BaseChangeSpec) -> Result<BaseChange> {
    for (i, b) in spec.base.iter().enumerate() {
        check_label(b, &format!("/base_change/base/{i}"))?;
    }
    let s = at(BaseSet::new(spec.base.clone()), "/base_change/base")?;
    let graph = spec
        .base
        .iter()
        .map(|l| {
            let p = format!("/base_change/g/{l}");
            let t = spec
                .g
                .get(l)
                .ok_or_else(|| err(p.clone(), format!("no image for {l:?}")))?;
            base.index_of(t)
                .ok_or_else(|| err(p, format!("unknown base label {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    at(BaseChange::new(&s, base, graph), "/base_change")
}

impl Instance {
    pub fn resolve(file: &InstanceFile) -> Result<Instance> {
        let ring = at(Ring::new(file.ring), "/ring")?;
        for (i, b) in file.base.iter().enumerate() {
            check_label(b, &format!("/base/{i}"))?;
        }
        let base = at(BaseSet::new(file.base.clone()), "/base")?;
        let mut sets = IndexMap::new();
        for (name, spec) in &file.sets {
            sets.insert(name.clone(), resolve_set(&base, spec, &format!("/sets/{name}"))?);
        }
        let mut maps = IndexMap::new();
        for (name, spec) in &file.maps {
            maps.insert(name.clone(), resolve_map(&sets, spec, &format!("/maps/{name}"))?);
        }
        let mut sheaves = IndexMap::new();
        for (name, spec) in &file.sheaves {
            sheaves.insert(
                name.clone(),
                resolve_sheaf(ring, &sets, spec, &format!("/sheaves/{name}"))?,
            );
        }
        let mut spans = IndexMap::new();
        for (name, spec) in &file.spans {
            spans.insert(
                name.clone(),
                resolve_span(&sets, &maps, spec, &format!("/spans/{name}"))?,
            );
        }
        let mut morphisms = IndexMap::new();
        for (name, spec) in &file.morphisms {
            morphisms.insert(
                name.clone(),
                resolve_morphism(&sheaves, &spans, spec, &format!("/morphisms/{name}"))?,
            );
        }
        let lv = match &file.lv {
            None => None,
            Some(spec) => {
                let m = |name: &str, field: &str| lookup(&maps, name, "map", &format!("/lv/{field}")).cloned();
                let s = |name: &str, field: &str| lookup(&spans, name, "span", &format!("/lv/{field}")).cloned();
                let mo = |name: &str, field: &str| {
                    lookup(&morphisms, name, "morphism", &format!("/lv/{field}")).cloned()
                };
                let (f, p, g, q) = (m(&spec.f, "f")?, m(&spec.p, "p")?, m(&spec.g, "g")?, m(&spec.q, "q")?);
                let upper = at(
                    PushDiagram::new(f.clone(), p, g.clone(), s(&spec.c, "c")?, s(&spec.c2, "c2")?),
                    "/lv",
                )?;
                let lower = at(
                    PushDiagram::new(g, q, f, s(&spec.d, "d")?, s(&spec.d2, "d2")?),
                    "/lv",
                )?;
                Some(at(
                    LvData::new(upper, lower, mo(&spec.u, "u")?, mo(&spec.v, "v")?),
                    "/lv",
                )?)
            }
        };
        let base_change = file
            .base_change
            .as_ref()
            .map(|spec| resolve_base_change(&base, spec))
            .transpose()?;
        for name in file.expect.keys() {
            let m = lookup(&morphisms, name, "morphism", &format!("/expect/{name}"))?;
            if !m.is_endomorphism() {
                return Err(err(format!("/expect/{name}"), "traces need an endomorphism"));
            }
        }
        Ok(Instance {
            ring,
            base,
            sets,
            maps,
            sheaves,
            spans,
            morphisms,
            lv,
            base_change,
            expect: file.expect.clone(),
        })
    }

    pub fn parse(text: &str) -> Result<Instance> {
        Self::resolve(&InstanceFile::from_json(text)?)
    }

    /// Endomorphisms among the named morphisms.
    pub fn endomorphisms(&self) -> impl Iterator<Item = (&String, &CCMorphism)> {
        self.morphisms.iter().filter(|(_, m)| m.is_endomorphism())
    }
}

/// Writes library values back into the file format.
pub mod emit {
    use super::*;

    pub fn rows(m: &Matrix) -> Rows {
        m.to_rows()
    }

    pub fn set(x: &FinOver) -> SetSpec {
        let one_point = x.base().len() == 1;
        SetSpec {
            elements: x.labels().to_vec(),
            anchor: if one_point {
                Vec::new()
            } else {
                x.anchors().iter().map(|&a| x.base().label(a).to_string()).collect()
            },
        }
    }

    pub fn map(f: &OverMap, source: &str, target: &str) -> MapSpec {
        MapSpec {
            source: source.into(),
            target: target.into(),
            graph: (0..f.source().len())
                .map(|i| {
                    (
                        f.source().label(i).to_string(),
                        f.target().label(f.apply(i)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn complex(c: &Complex) -> ComplexSpec {
        ComplexSpec {
            ranks: c.ranks().iter().map(|(n, r)| (n.to_string(), *r)).collect(),
            diff: c
                .diffs()
                .iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(n, m)| (n.to_string(), rows(m)))
                .collect(),
        }
    }

    pub fn sheaf(l: &Sheaf, carrier: &str) -> SheafSpec {
        SheafSpec {
            carrier: carrier.into(),
            stalks: (0..l.carrier().len())
                .map(|i| (l.carrier().label(i).to_string(), complex(l.stalk(i))))
                .collect(),
        }
    }

    pub fn span(names: [&str; 5]) -> SpanSpec {
        let [source, target, apex, left, right] = names;
        SpanSpec {
            source: source.into(),
            target: target.into(),
            apex: apex.into(),
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn morphism(u: &CCMorphism, source: &str, target: &str, span: &str) -> MorphismSpec {
        MorphismSpec {
            source: source.into(),
            target: target.into(),
            span: span.into(),
            maps: (0..u.apex().len())
                .map(|g| {
                    let by_degree = u
                        .component(g)
                        .components()
                        .iter()
                        .filter(|(_, m)| !m.is_zero())
                        .map(|(n, m)| (n.to_string(), rows(m)))
                        .collect();
                    (u.apex().label(g).to_string(), by_degree)
                })
                .collect(),
        }
    }
}

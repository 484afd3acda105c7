use std::collections::BTreeMap;

use super::*;
use crate::chainalg::{map_dual, ChainMap, Complex, Matrix, Ring};
use crate::corrcat::{cc_compose, cc_iso_search, shriek_push, CCMorphism, CCObject, PushDiagram};
use crate::finspan::{BaseSet, FinOver, OverMap, Span};
use crate::sheafops::{push, Sheaf};

fn z() -> Ring {
    Ring::integers()
}

fn free(n: usize) -> Complex {
    Complex::free(z(), 0, n)
}

fn q() -> Complex {
    Complex::new(
        z(),
        BTreeMap::from([(0, 1), (1, 1)]),
        BTreeMap::from([(0, Matrix::scalar(z(), 1, 2))]),
    )
    .unwrap()
}

fn set(base: &BaseSet, labels: &[&str]) -> FinOver {
    let pairs: Vec<(&str, &str)> = labels.iter().map(|l| (*l, base.label(0))).collect();
    FinOver::from_pairs(base, &pairs).unwrap()
}

fn map(x: &FinOver, y: &FinOver, graph: &[usize]) -> OverMap {
    OverMap::new(x.clone(), y.clone(), graph.to_vec()).unwrap()
}

fn obj(x: &FinOver, stalks: Vec<Complex>) -> CCObject {
    CCObject::new(Sheaf::new(z(), x.clone(), stalks).unwrap())
}

fn deg0(src: &Complex, dst: &Complex, rows: &[Vec<i64>]) -> ChainMap {
    let cols = src.rank(0);
    ChainMap::new(
        src.clone(),
        dst.clone(),
        BTreeMap::from([(0, Matrix::from_rows(z(), cols, rows).unwrap())]),
    )
    .unwrap()
}

/// Span `X <- C -> Y` with apex labelled `c0, c1, ...`.
fn span(x: &FinOver, y: &FinOver, legs: &[(usize, usize)]) -> Span {
    let labels: Vec<String> = (0..legs.len()).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let c = set(x.base(), &refs);
    let l: Vec<usize> = legs.iter().map(|p| p.0).collect();
    let r: Vec<usize> = legs.iter().map(|p| p.1).collect();
    Span::new(map(&c, x, &l), map(&c, y, &r)).unwrap()
}

#[test]
fn make_dual_examples() {
    let b = BaseSet::point();
    let unit = CCObject::unit(&b, z());
    let d = make_dual(&unit).unwrap();
    assert_eq!(d.ev.component(0).component(0), Matrix::identity(z(), 1));
    assert_eq!(d.coev.component(0).component(0), Matrix::identity(z(), 1));

    let p = set(&b, &["p"]);
    let a = obj(&p, vec![free(2)]);
    let d = make_dual(&a).unwrap();
    // ev pairs e_i^* ⊗ e_j to δ_ij; coev is Σ e_i ⊗ e_i^*.
    let ev = d.ev.component(0).component(0);
    assert_eq!(ev.to_rows(), vec![vec![1, 0, 0, 1]]);
    let coev = d.coev.component(0).component(0);
    assert_eq!(coev.to_rows(), vec![vec![1], vec![0], vec![0], vec![1]]);
    assert!(d.left_triangle.is_invertible());

    let x = set(&b, &["a", "b"]);
    let a = obj(&x, vec![free(1), q()]);
    let d = make_dual(&a).unwrap();
    assert_eq!(d.ev.apex().len(), 2);
    assert_eq!(d.ev.span().left().graph(), &[0, 3]);
    assert!(d.right_triangle.is_invertible());
}

#[test]
fn biduality_matches_signed_identification() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let a = obj(&x, vec![free(2), q()]);
    let d = make_dual(&a).unwrap();
    let bd = biduality(&d).unwrap();
    let canon = canonical_bidual(&a).unwrap();
    assert!(cc_iso_search(&bd, &canon).is_some());
}

#[test]
fn dual_of_morphism_examples() {
    let b = BaseSet::point();
    let p = set(&b, &["p"]);
    let a = obj(&p, vec![free(2)]);
    let da = make_dual(&a).unwrap();
    let id = CCMorphism::identity(&a);
    let did = dual_of_morphism(&id, &da, &da).unwrap();
    assert!(cc_iso_search(&did, &CCMorphism::identity(&da.dual)).is_some());

    let m = deg0(&free(2), &free(2), &[vec![1, 2], vec![3, 4]]);
    let u = CCMorphism::new(a.clone(), a.clone(), Span::identity(&p), vec![m.clone()]).unwrap();
    let du = dual_of_morphism(&u, &da, &da).unwrap();
    let oracle = CCMorphism::new(
        da.dual.clone(),
        da.dual.clone(),
        Span::identity(&p),
        vec![map_dual(&m).unwrap()],
    )
    .unwrap();
    assert!(cc_iso_search(&du, &oracle).is_some());
    assert_eq!(du.component(0).component(0).to_rows(), vec![vec![1, 3], vec![2, 4]]);
}

#[test]
fn dual_of_morphism_reverses_spans() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let y = set(&b, &["y"]);
    let ax = obj(&x, vec![free(1), q()]);
    let ay = obj(&y, vec![q()]);
    let s = span(&x, &y, &[(1, 0), (0, 0)]);
    let qq = ChainMap::scalar(&q(), 3);
    let to_q = ChainMap::zero(&free(1), &q()).unwrap();
    let u = CCMorphism::new(ax.clone(), ay.clone(), s.clone(), vec![qq, to_q]).unwrap();
    let (dx, dy) = (make_dual(&ax).unwrap(), make_dual(&ay).unwrap());
    let du = dual_of_morphism(&u, &dx, &dy).unwrap();
    let oracle = CCMorphism::new(
        dy.dual.clone(),
        dx.dual.clone(),
        s.reversed(),
        u.maps().iter().map(|m| map_dual(m).unwrap()).collect(),
    )
    .unwrap();
    assert!(cc_iso_search(&du, &oracle).is_some());
}

#[test]
fn characteristic_class_is_euler_characteristic() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b", "c"]);
    let a = obj(&x, vec![free(1), q(), free(2)]);
    let d = make_dual(&a).unwrap();
    let cc = characteristic_class(&d).unwrap();
    assert_eq!(cc.class.values(), &[1, 0, 2]);
    let id = CCMorphism::identity(&a);
    let pr = pairing(&id, &id, &d).unwrap();
    assert_eq!(pr.class.values(), &[1, 0, 2]);
}

#[test]
fn pairing_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let a = obj(&x, vec![free(1), free(2)]);
    let d = make_dual(&a).unwrap();
    let loop_at_a = span(&x, &x, &[(0, 0)]);
    let u = CCMorphism::new(
        a.clone(),
        a.clone(),
        loop_at_a,
        vec![ChainMap::scalar(&free(1), 3)],
    )
    .unwrap();
    let v = CCMorphism::identity(&a);
    let pr = pairing(&u, &v, &d).unwrap();
    assert_eq!(pr.carrier().labels(), &["(c0,a)".to_string()]);
    assert_eq!(pr.class.values(), &[3]);
    assert_eq!(pr.class, local_terms(&u, &v).unwrap());

    let swap = span(&x, &x, &[(0, 1)]);
    let w = CCMorphism::new(
        a.clone(),
        a.clone(),
        swap,
        vec![deg0(&free(1), &free(2), &[vec![1], vec![1]])],
    )
    .unwrap();
    let empty = pairing(&w, &v, &d).unwrap();
    assert!(empty.carrier().is_empty());
    assert_eq!(empty.total(), 0);
}

#[test]
fn trace_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let a = obj(&x, vec![q(), free(1)]);
    let d = make_dual(&a).unwrap();
    let e = CCMorphism::new(
        a.clone(),
        a.clone(),
        span(&x, &x, &[(0, 0), (1, 0)]),
        vec![
            ChainMap::identity(&q()),
            ChainMap::zero(&free(1), &q()).unwrap(),
        ],
    )
    .unwrap();
    let t = trace(&e, &d).unwrap();
    assert_eq!(t.carrier().len(), 1);
    assert_eq!(t.class.values(), &[0]);
    assert_eq!(t.class, local_trace(&e).unwrap());

    let free_loop = CCMorphism::new(
        a.clone(),
        a.clone(),
        span(&x, &x, &[(1, 0)]),
        vec![ChainMap::zero(&free(1), &q()).unwrap()],
    )
    .unwrap();
    assert!(trace(&free_loop, &d).unwrap().carrier().is_empty());
    assert!(trace(&free_loop, &make_dual(&CCObject::unit(&b, z())).unwrap()).is_err());
}

#[test]
fn symmetry_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let y = set(&b, &["y"]);
    let ax = obj(&x, vec![free(1), free(2)]);
    let ay = obj(&y, vec![free(2)]);
    let u = CCMorphism::new(
        ax.clone(),
        ay.clone(),
        span(&x, &y, &[(0, 0), (1, 0)]),
        vec![
            deg0(&free(1), &free(2), &[vec![1], vec![2]]),
            deg0(&free(2), &free(2), &[vec![0, 1], vec![1, 1]]),
        ],
    )
    .unwrap();
    let v = CCMorphism::new(
        ay.clone(),
        ax.clone(),
        span(&y, &x, &[(0, 0), (0, 1)]),
        vec![
            deg0(&free(2), &free(1), &[vec![3, 1]]),
            deg0(&free(2), &free(2), &[vec![2, 0], vec![1, 1]]),
        ],
    )
    .unwrap();
    let (dx, dy) = (make_dual(&ax).unwrap(), make_dual(&ay).unwrap());
    let s = pairing_symmetry(&u, &v, &dx, &dy).unwrap();
    assert!(s.holds);
    assert_eq!(s.forward.class, local_terms(&u, &v).unwrap());
    // (1,2)·(3,1) = 5; trace of [[0,1],[1,1]]·[[2,0],[1,1]] = 1 + 1 = 2.
    assert_eq!(s.forward.class.values(), &[5, 2]);
    assert_eq!(s.backward.class.values(), &[5, 2]);
}

fn lv_instance() -> LvData {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b", "c"]);
    let y = set(&b, &["y1", "y2"]);
    let xp = set(&b, &["s", "t"]);
    let yp = set(&b, &["y"]);
    let ax = obj(&x, vec![free(1), free(2), q()]);
    let ay = obj(&y, vec![free(2), q()]);
    let c = span(&x, &y, &[(0, 0), (1, 0), (2, 1)]);
    let d = span(&y, &x, &[(0, 0), (0, 1), (1, 2), (1, 0)]);
    let cp = span(&xp, &yp, &[(0, 0), (1, 0)]);
    let dp = span(&yp, &xp, &[(0, 0), (0, 1)]);
    let f = map(&x, &xp, &[0, 0, 1]);
    let g = map(&y, &yp, &[0, 0]);
    let p = map(c.apex(), cp.apex(), &[0, 0, 1]);
    let qm = map(d.apex(), dp.apex(), &[0, 0, 1, 0]);
    let upper = PushDiagram::new(f.clone(), p, g.clone(), c.clone(), cp).unwrap();
    let lower = PushDiagram::new(g, qm, f, d.clone(), dp).unwrap();
    let u = CCMorphism::new(
        ax.clone(),
        ay.clone(),
        c,
        vec![
            deg0(&free(1), &free(2), &[vec![1], vec![2]]),
            deg0(&free(2), &free(2), &[vec![1, 1], vec![0, 3]]),
            ChainMap::scalar(&q(), 2),
        ],
    )
    .unwrap();
    let v = CCMorphism::new(
        ay,
        ax,
        d,
        vec![
            deg0(&free(2), &free(1), &[vec![2, 1]]),
            deg0(&free(2), &free(2), &[vec![1, 0], vec![1, 1]]),
            ChainMap::scalar(&q(), 5),
            deg0(&q(), &free(1), &[vec![7]]),
        ],
    )
    .unwrap();
    LvData::new(upper, lower, u, v).unwrap()
}

#[test]
fn lv_identity_diagram() {
    let data = lv_instance();
    let id_u = PushDiagram::identity(data.u.span());
    let id_v = PushDiagram::identity(data.v.span());
    let trivial = LvData::new(id_u, id_v, data.u.clone(), data.v.clone()).unwrap();
    let r = pairing_functorial(&trivial).unwrap();
    assert!(r.holds);
    assert!(r.induced.is_identity());
    assert_eq!(r.lhs, r.rhs);
}

#[test]
fn lv_three_point_instance() {
    let data = lv_instance();
    let r = pairing_functorial(&data).unwrap();
    assert!(r.holds, "{:?} vs {:?}", r.lhs, r.rhs);
    // Local terms: 1·2 + 2·1 = 4 at (c0,c0); trace [[1,1],[0,3]]·[[1,0],[1,1]] = 2 + 3 = 5.
    assert_eq!(r.lhs.values(), &[9, 0]);
    let (u2, v2) = data.pushed().unwrap();
    assert_eq!(r.rhs, local_terms(&u2, &v2).unwrap());

    let split = pairing_functorial_split(&data).unwrap();
    assert!(split.holds);
    assert_eq!(split.composite, r.derived);
}

#[test]
fn euler_characteristic_is_additive() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let pt = set(&b, &["p"]);
    let a = obj(&x, vec![free(2), q()]);
    let f = map(&x, &pt, &[0, 0]);
    let id = CCMorphism::identity(&a);
    let upper = PushDiagram::new(
        f.clone(),
        f.clone(),
        f.clone(),
        Span::identity(&x),
        Span::identity(&pt),
    )
    .unwrap();
    let data = LvData::new(upper.clone(), upper, id.clone(), id).unwrap();
    let r = pairing_functorial(&data).unwrap();
    assert!(r.holds);
    assert_eq!(r.rhs.values(), &[2]);
    let pushed = CCObject::new(push(&f, a.sheaf()).unwrap());
    let cc = characteristic_class(&make_dual(&pushed).unwrap()).unwrap();
    assert_eq!(cc.class.values(), &[2]);
}

#[test]
fn global_fixed_point_formula() {
    let data = lv_instance();
    let e = cc_compose(&data.u, &data.v).unwrap();
    let g = global_fixed_point(&e, &make_dual(e.source()).unwrap()).unwrap();
    assert!(g.holds);
    assert_eq!(g.global.values(), &[9]);
}

#[test]
fn split_epi_examples() {
    let b = BaseSet::point();
    let unit = CCObject::unit(&b, z());
    let s = split_epi_criterion(&unit).unwrap();
    assert!(s
        .m
        .maps()
        .iter()
        .all(|m| m.components().values().all(|c| c == &Matrix::identity(z(), 1))));

    let p = set(&b, &["p"]);
    let s = split_epi_criterion(&obj(&p, vec![free(2)])).unwrap();
    assert_eq!(s.m.component(0).component(0).shape(), (4, 4));
    assert!(s.retraction.is_invertible());

    let empty = CCObject::new(Sheaf::new(z(), FinOver::empty(&b), vec![]).unwrap());
    split_epi_criterion(&empty).unwrap();
}

#[test]
fn push_preserves_dual_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let a = obj(&x, vec![free(1), free(1)]);
    let d = make_dual(&a).unwrap();
    let same = push_preserves_dual(&OverMap::identity(&x), &d).unwrap();
    assert_eq!(same.data.ev, d.ev);

    let pt = set(&b, &["p"]);
    let pushed = push_preserves_dual(&map(&x, &pt, &[0, 0]), &d).unwrap();
    assert_eq!(
        pushed.data.ev.component(0).component(0).to_rows(),
        vec![vec![1, 0, 0, 1]]
    );
    assert_eq!(pushed.coev_route.graph().graph(), &[0, 0]);

    let e = FinOver::empty(&b);
    let empty = CCObject::new(Sheaf::new(z(), e.clone(), vec![]).unwrap());
    let de = make_dual(&empty).unwrap();
    let r = push_preserves_dual(&map(&e, &pt, &[]), &de).unwrap();
    assert_eq!(r.data.object.stalk(0).total_rank(), 0);
}

#[test]
fn pushed_trace_matches_shriek_push() {
    let data = lv_instance();
    let (u2, _) = data.pushed().unwrap();
    assert_eq!(u2, shriek_push(&data.upper, &data.u).unwrap());
}

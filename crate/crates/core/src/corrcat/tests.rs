use std::collections::BTreeMap;

use super::*;
use crate::chainalg::{cx_dual, ChainMap, Complex, Matrix, Ring};
use crate::error::Error;
use crate::finspan::{BaseSet, FinOver, OverMap, Span};
use crate::sheafops::{push, Sheaf};

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

fn set(base: &BaseSet, labels: &[&str]) -> FinOver {
    let pairs: Vec<(&str, &str)> = labels.iter().map(|l| (*l, base.label(0))).collect();
    FinOver::from_pairs(base, &pairs).unwrap()
}

fn map(x: &FinOver, y: &FinOver, graph: &[usize]) -> OverMap {
    OverMap::new(x.clone(), y.clone(), graph.to_vec()).unwrap()
}

fn unit_obj(x: &FinOver) -> CCObject {
    CCObject::new(Sheaf::constant(x, &Complex::unit(z())))
}

fn scalar_on(x: &FinOver, k: i64) -> CCMorphism {
    let a = unit_obj(x);
    let maps = (0..x.len())
        .map(|i| ChainMap::scalar(a.stalk(i), k))
        .collect();
    CCMorphism::new(a.clone(), a, Span::identity(x), maps).unwrap()
}

#[test]
fn compose_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let u = scalar_on(&x, 2);
    let id = CCMorphism::identity(u.source());
    let c = cc_compose(&id, &u).unwrap();
    let cell = left_unit_cell(&u).unwrap();
    assert_eq!(cell.source(), &c);
    cc_cell_check(&cell).unwrap();
    assert!(cell.is_invertible());

    let a = unit_obj(&x);
    let y = set(&b, &["y"]);
    let ay = unit_obj(&y);
    let e = FinOver::empty(&b);
    let empty_to = CCMorphism::new(
        a.clone(),
        ay.clone(),
        Span::new(map(&e, &x, &[]), map(&e, &y, &[])).unwrap(),
        vec![],
    )
    .unwrap();
    let v = CCMorphism::identity(&ay);
    assert!(cc_compose(&empty_to, &v).unwrap().apex().is_empty());

    let p = set(&b, &["p"]);
    let six = cc_compose(&scalar_on(&p, 2), &scalar_on(&p, 3)).unwrap();
    assert_eq!(six.maps().len(), 1);
    assert_eq!(six.component(0).component(0), Matrix::scalar(z(), 1, 6));
}

#[test]
fn tensor_examples() {
    let b = BaseSet::point();
    let p = set(&b, &["p"]);
    let t = cc_tensor(&scalar_on(&p, 2), &scalar_on(&p, 3)).unwrap();
    assert_eq!(t.component(0).component(0), Matrix::scalar(z(), 1, 6));

    let x = set(&b, &["a", "b"]);
    let u = scalar_on(&x, 5);
    let unit = CCMorphism::identity(&CCObject::unit(&b, z()));
    let tu = cc_tensor(&u, &unit).unwrap();
    // ρ^{-1} ; (u ⊗ 1) ; ρ is canonically u.
    let rho_src = right_unitor(u.source()).unwrap();
    let rho_tgt = right_unitor(u.target()).unwrap();
    let lhs = CCExpr::chain([
        CCExpr::Fixed(cc_inverse(&rho_src).unwrap()),
        CCExpr::tensor(CCExpr::Atom(0, u.clone()), CCExpr::Fixed(unit)),
        CCExpr::Fixed(rho_tgt),
    ]);
    let cell = cc_recoord(&lhs, &CCExpr::Atom(0, u.clone())).unwrap();
    assert!(cell.is_invertible());
    assert_eq!(tu.apex().len(), 2);

    let e = FinOver::empty(&b);
    let empty = CCMorphism::identity(&unit_obj(&e));
    assert!(cc_tensor(&u, &empty).unwrap().apex().is_empty());
}

#[test]
fn cell_check_examples() {
    let b = BaseSet::point();
    let p = set(&b, &["p"]);
    let two = set(&b, &["g1", "g2"]);
    let obj = CCObject::new(Sheaf::constant(&p, &Complex::free(z(), 0, 2)));
    let stalk = obj.stalk(0).clone();
    let a = Matrix::from_rows(z(), 2, &[vec![1, 2], vec![0, 1]]).unwrap();
    let bm = Matrix::from_rows(z(), 2, &[vec![0, 0], vec![3, 1]]).unwrap();
    let cm = |m: &Matrix| {
        ChainMap::new(
            stalk.clone(),
            stalk.clone(),
            BTreeMap::from([(0, m.clone())]),
        )
        .unwrap()
    };
    let to_p = map(&two, &p, &[0, 0]);
    let src = CCMorphism::new(
        obj.clone(),
        obj.clone(),
        Span::new(to_p.clone(), to_p).unwrap(),
        vec![cm(&a), cm(&bm)],
    )
    .unwrap();
    cc_cell_check(&CCCell::identity(&src)).unwrap();
    let good = CCMorphism::new(
        obj.clone(),
        obj.clone(),
        Span::identity(&p),
        vec![cm(&a.add(&bm).unwrap())],
    )
    .unwrap();
    cc_cell_check(&CCCell::from_graph(&src, &good, vec![0, 0]).unwrap()).unwrap();
    let bad = CCMorphism::new(obj.clone(), obj, Span::identity(&p), vec![cm(&a)]).unwrap();
    let err = cc_cell_check(&CCCell::from_graph(&src, &bad, vec![0, 0]).unwrap()).unwrap_err();
    match err {
        Error::CellMismatch {
            element,
            expected,
            found,
            ..
        } => {
            assert_eq!(element, "p");
            assert_eq!(expected, a);
            assert_eq!(found, a.add(&bm).unwrap());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn natural_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let l = Sheaf::new(z(), x.clone(), vec![Complex::unit(z()), q()]).unwrap();
    let id = f_natural(&OverMap::identity(&x), &l).unwrap();
    assert_eq!(id, CCMorphism::identity(&CCObject::new(l.clone())));
    assert_eq!(
        f_conatural(&OverMap::identity(&x), &l).unwrap(),
        CCMorphism::identity(&CCObject::new(l.clone()))
    );

    let pt = set(&b, &["pt"]);
    let f = map(&x, &pt, &[0, 0]);
    let nat = f_natural(&f, &l).unwrap();
    // Layout oracle: stalk a sits at offset 0 of degree 0, stalk b after it.
    assert_eq!(
        nat.component(0).component(0),
        Matrix::from_rows(z(), 1, &[vec![1], vec![0]]).unwrap()
    );
    assert_eq!(
        nat.component(1).component(0),
        Matrix::from_rows(z(), 1, &[vec![0], vec![1]]).unwrap()
    );
    assert_eq!(nat.component(1).component(1), Matrix::identity(z(), 1));
    let co = f_conatural(&f, &l).unwrap();
    assert_eq!(
        co.component(0).component(0),
        Matrix::from_rows(z(), 2, &[vec![1, 0]]).unwrap()
    );
    assert_eq!(
        co.component(1).component(0),
        Matrix::from_rows(z(), 2, &[vec![0, 1]]).unwrap()
    );

    let e = FinOver::empty(&b);
    let le = Sheaf::new(z(), e.clone(), vec![]).unwrap();
    assert!(f_natural(&map(&e, &pt, &[]), &le)
        .unwrap()
        .apex()
        .is_empty());
    assert!(f_conatural(&map(&e, &pt, &[]), &le)
        .unwrap()
        .apex()
        .is_empty());
}

#[test]
fn adjunction_triangles() {
    let b = BaseSet::new(["s", "t"]).unwrap();
    let x = FinOver::from_pairs(&b, &[("a", "s"), ("b", "s"), ("c", "t")]).unwrap();
    let xp = FinOver::from_pairs(&b, &[("u", "s"), ("v", "t"), ("w", "t")]).unwrap();
    let f = map(&x, &xp, &[0, 0, 1]);
    let l = Sheaf::new(z(), x, vec![q(), Complex::free(z(), -1, 2), cx_dual(&q())]).unwrap();
    let adj = f_adjunction(&f, &l).unwrap();
    cc_cell_check(&adj.unit).unwrap();
    cc_cell_check(&adj.counit).unwrap();
    assert_eq!(adj.left_triangle, CCCell::identity(&adj.left));
    assert_eq!(adj.right_triangle, CCCell::identity(&adj.right));
}

#[test]
fn shriek_push_examples() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let u = scalar_on(&x, 1)
        .with_maps(vec![
            ChainMap::scalar(&Complex::unit(z()), 3),
            ChainMap::scalar(&Complex::unit(z()), 5),
        ])
        .unwrap();
    let same = shriek_push(&PushDiagram::identity(u.span()), &u).unwrap();
    assert_eq!(same, u);

    let pt = set(&b, &["pt"]);
    let f = map(&x, &pt, &[0, 0]);
    let diag = PushDiagram::new(
        f.clone(),
        f.clone(),
        f.clone(),
        u.span().clone(),
        Span::identity(&pt),
    )
    .unwrap();
    let pushed = shriek_push(&diag, &u).unwrap();
    assert_eq!(
        pushed.component(0).component(0),
        Matrix::from_rows(z(), 2, &[vec![3, 0], vec![0, 5]]).unwrap()
    );
    let cell = comparison_cell(&diag, &u, &pushed).unwrap();
    cc_cell_check(&cell).unwrap();

    // A lower apex point with an empty fiber gets the zero block.
    let c2 = set(&b, &["k0", "k1"]);
    let lower = Span::new(map(&c2, &pt, &[0, 0]), map(&c2, &pt, &[0, 0])).unwrap();
    let p = map(&x, &c2, &[0, 0]);
    let diag = PushDiagram::new(f.clone(), p, f, u.span().clone(), lower).unwrap();
    let pushed = shriek_push(&diag, &u).unwrap();
    assert!(pushed.component(1).is_zero());
    cc_cell_check(&comparison_cell(&diag, &u, &pushed).unwrap()).unwrap();
}

#[test]
fn non_commuting_diagram_is_rejected() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let sw = map(&x, &x, &[1, 0]);
    let r = PushDiagram::new(
        sw,
        OverMap::identity(&x),
        OverMap::identity(&x),
        Span::identity(&x),
        Span::identity(&x),
    );
    assert!(matches!(r, Err(Error::NotCommuting(_))));
}

#[test]
fn internal_hom_examples() {
    let b = BaseSet::point();
    let unit = CCObject::unit(&b, z());
    let p = set(&b, &["p"]);
    let bq = CCObject::new(Sheaf::constant(&p, &q()));
    assert_eq!(
        internal_hom(&unit, &bq).unwrap().sheaf().stalks(),
        bq.sheaf().stalks()
    );
    assert_eq!(
        internal_hom(&bq, &unit).unwrap().sheaf().stalks(),
        bq.dual().sheaf().stalks()
    );
    let two = CCObject::new(Sheaf::constant(&p, &Complex::free(z(), 0, 2)));
    let h = internal_hom(&two, &unit_obj(&p)).unwrap();
    assert_eq!(h.stalk(0).ranks(), &BTreeMap::from([(0, 2)]));
}

#[test]
fn currying_is_a_bijection() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let a = CCObject::new(Sheaf::new(z(), x.clone(), vec![q(), Complex::unit(z())]).unwrap());
    let ev = evaluation(&a).unwrap();
    let dual = a.dual();
    let w = curry(&ev, &dual, &a).unwrap();
    for m in w.maps() {
        m.check_commutes().unwrap();
    }
    assert_eq!(uncurry(&w, &a, ev.target()).unwrap(), ev);
    let h = hom_evaluation(&a, &CCObject::unit(&b, z())).unwrap();
    let back = curry(&h, &internal_hom(&a, &CCObject::unit(&b, z())).unwrap(), &a).unwrap();
    assert_eq!(back, CCMorphism::identity(back.source()));
}

#[test]
fn associativity_up_to_recoord() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let l = Sheaf::new(z(), x.clone(), vec![q(), Complex::unit(z())]).unwrap();
    let pt = set(&b, &["pt"]);
    let f = map(&x, &pt, &[0, 0]);
    let n = f_natural(&f, &l).unwrap();
    let c = f_conatural(&f, &l).unwrap();
    let lhs = CCExpr::compose(
        CCExpr::compose(CCExpr::Atom(0, n.clone()), CCExpr::Atom(1, c.clone())),
        CCExpr::Atom(2, n.clone()),
    );
    let rhs = CCExpr::compose(
        CCExpr::Atom(0, n.clone()),
        CCExpr::compose(CCExpr::Atom(1, c.clone()), CCExpr::Atom(2, n.clone())),
    );
    let cell = cc_recoord(&lhs, &rhs).unwrap();
    assert_eq!(cell, assoc_cell(&n, &c, &n).unwrap());
    let _ = push(&f, &l).unwrap();
}

#[test]
fn interchange_law() {
    let b = BaseSet::point();
    let x = set(&b, &["a", "b"]);
    let l = Sheaf::new(z(), x.clone(), vec![q(), Complex::unit(z())]).unwrap();
    let pt = set(&b, &["pt"]);
    let f = map(&x, &pt, &[0, 0]);
    let n = f_natural(&f, &l).unwrap();
    let c = f_conatural(&f, &l).unwrap();
    let m = f_natural(&OverMap::identity(&pt), &Sheaf::constant(&pt, &q())).unwrap();
    let lhs = CCExpr::tensor(
        CCExpr::compose(CCExpr::Atom(0, n.clone()), CCExpr::Atom(1, c.clone())),
        CCExpr::compose(CCExpr::Atom(2, m.clone()), CCExpr::Atom(3, m.clone())),
    );
    let rhs = CCExpr::compose(
        CCExpr::tensor(CCExpr::Atom(0, n), CCExpr::Atom(2, m.clone())),
        CCExpr::tensor(CCExpr::Atom(1, c), CCExpr::Atom(3, m)),
    );
    assert!(cc_recoord(&lhs, &rhs).unwrap().is_invertible());
}

#[test]
fn structural_morphisms_are_well_formed() {
    let b = BaseSet::new(["s", "t"]).unwrap();
    let x = FinOver::from_pairs(&b, &[("a", "s"), ("c", "t")]).unwrap();
    let y = FinOver::from_pairs(&b, &[("d", "t"), ("e", "s")]).unwrap();
    let a = CCObject::new(Sheaf::new(z(), x, vec![q(), cx_dual(&q())]).unwrap());
    let bb = CCObject::new(Sheaf::new(z(), y, vec![Complex::free(z(), 1, 2), q()]).unwrap());
    let s1 = symmetry(&a, &bb).unwrap();
    let s2 = symmetry(&bb, &a).unwrap();
    let round = cc_compose(&s1, &s2).unwrap();
    assert!(cc_iso_search(&round, &CCMorphism::identity(&a.tensor(&bb).unwrap())).is_some());
    let assoc = associator(&a, &bb, &a).unwrap();
    let inv = cc_inverse(&assoc).unwrap();
    let round = cc_compose(&assoc, &inv).unwrap();
    assert!(cc_iso_search(&round, &CCMorphism::identity(assoc.source())).is_some());
    left_unitor(&a).unwrap();
    evaluation(&bb).unwrap();
    coevaluation(&bb).unwrap();
}

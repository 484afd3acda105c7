//! Finite sets over a base, spans, composition and canonical recoordination.

use spantrace::finspan::{canonical_recoord, span_compose, BaseSet, FinOver, OverMap, Span, SpanExpr};

fn main() -> spantrace::Result<()> {
    let b = BaseSet::new(["s", "t"])?;
    let x = FinOver::from_pairs(&b, &[("x0", "s"), ("x1", "t")])?;
    let c = FinOver::from_pairs(&b, &[("c0", "s"), ("c1", "t"), ("c2", "t")])?;
    let left = OverMap::from_pairs(&c, &x, &[("c0", "x0"), ("c1", "x1"), ("c2", "x1")])?;
    let right = OverMap::from_pairs(&c, &x, &[("c0", "x0"), ("c1", "x1"), ("c2", "x1")])?;
    let sp = Span::new(left, right)?;

    let sq = span_compose(&sp, &sp)?;
    println!("apex of c∘c: {:?}", sq.apex().labels());

    // Each occurrence of the span is its own atom, so recoordination tracks it.
    let a = |k| SpanExpr::Atom(k, sp.clone());
    let lhs = SpanExpr::compose(SpanExpr::compose(a(0), a(1)), a(2));
    let rhs = SpanExpr::compose(a(0), SpanExpr::compose(a(1), a(2)));
    let bij = canonical_recoord(&lhs, &rhs)?;
    println!("associativity recoordination: {:?}", bij.forward());
    Ok(())
}

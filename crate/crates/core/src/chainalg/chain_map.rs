use std::collections::BTreeMap;

use super::complex::{cx_dual, cx_tensor, Complex, SumLayout, TensorLayout};
use super::matrix::{mat_kron, mat_mul, mat_trace, Matrix};
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

/// Degree-0 chain map; `components[n]` has shape `target.rank(n) x source.rank(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    components: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: Complex,
        target: Complex,
        components: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let f = Self::from_parts_unchecked(source, target, components)?;
        f.check_commutes()?;
        Ok(f)
    }

    /// Shape-checks and normalizes (fills zero blocks) without the chain condition.
    pub fn from_parts_unchecked(
        source: Complex,
        target: Complex,
        components: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        source.ring().check_same(&target.ring())?;
        let ring = source.ring();
        let mut kept = BTreeMap::new();
        for (n, m) in components {
            m.ring().check_same(&ring)?;
            let want = (target.rank(n), source.rank(n));
            if m.shape() != want {
                return Err(Error::NotChainMap {
                    degree: n,
                    reason: format!("component has shape {:?}, expected {:?}", m.shape(), want),
                });
            }
            if want.0 > 0 && want.1 > 0 {
                kept.insert(n, m);
            }
        }
        for n in source.degrees() {
            let rows = target.rank(n);
            if rows > 0 && !kept.contains_key(&n) {
                kept.insert(n, Matrix::zeros(ring, rows, source.rank(n)));
            }
        }
        Ok(ChainMap {
            source,
            target,
            components: kept,
        })
    }

    pub fn identity(c: &Complex) -> Self {
        let components = c
            .ranks()
            .iter()
            .map(|(&n, &r)| (n, Matrix::identity(c.ring(), r)))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: &Complex, target: &Complex) -> Result<Self> {
        Self::from_parts_unchecked(source.clone(), target.clone(), BTreeMap::new())
    }

    /// Multiplication by a scalar on a complex.
    pub fn scalar(c: &Complex, s: Scalar) -> Self {
        let mut f = Self::identity(c);
        for m in f.components.values_mut() {
            *m = m.scale(s);
        }
        f
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn components(&self) -> &BTreeMap<i32, Matrix> {
        &self.components
    }

    pub fn component(&self, n: i32) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring(), self.target.rank(n), self.source.rank(n)))
    }

    pub fn check_commutes(&self) -> Result<()> {
        let mut degrees: Vec<i32> = self.source.degrees().collect();
        degrees.extend(self.source.degrees().map(|n| n - 1));
        degrees.sort();
        degrees.dedup();
        for n in degrees {
            let lhs = mat_mul(&self.target.d(n), &self.component(n))?;
            let rhs = mat_mul(&self.component(n + 1), &self.source.d(n))?;
            if lhs != rhs {
                return Err(Error::NotChainMap {
                    degree: n,
                    reason: "d∘f differs from f∘d".into(),
                });
            }
        }
        Ok(())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> Result<ChainMap> {
        if self.target != next.source {
            return Err(Error::BoundaryMismatch(
                "chain map composition: target of the first differs from source of the second"
                    .into(),
            ));
        }
        let mut components = BTreeMap::new();
        for n in self.source.degrees() {
            if next.target.rank(n) == 0 {
                continue;
            }
            components.insert(n, mat_mul(&next.component(n), &self.component(n))?);
        }
        Ok(ChainMap {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::BoundaryMismatch(
                "chain map sum: endpoints differ".into(),
            ));
        }
        let mut components = BTreeMap::new();
        for (&n, m) in &self.components {
            components.insert(n, m.add(&other.component(n))?);
        }
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }

    /// The same matrices viewed between new (equal-ranked) endpoints.
    pub fn with_endpoints(&self, source: Complex, target: Complex) -> Result<ChainMap> {
        ChainMap::from_parts_unchecked(source, target, self.components.clone())
    }
}

/// Null-homotopy data; `components[n] : source^n -> target^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: Complex,
    target: Complex,
    components: BTreeMap<i32, Matrix>,
}

impl Homotopy {
    pub fn new(
        source: Complex,
        target: Complex,
        components: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        for (&n, m) in &components {
            let want = (target.rank(n - 1), source.rank(n));
            if m.shape() != want {
                return Err(Error::ShapeMismatch {
                    op: "homotopy component",
                    left: m.shape(),
                    right: want,
                });
            }
        }
        Ok(Homotopy {
            source,
            target,
            components,
        })
    }

    pub fn component(&self, n: i32) -> Matrix {
        self.components.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.source.ring(),
                self.target.rank(n - 1),
                self.source.rank(n),
            )
        })
    }
}

/// `Σ_n (-1)^n tr(e^n)`.
pub fn alt_trace(e: &ChainMap) -> Result<Scalar> {
    if e.source != e.target {
        return Err(Error::NotEndomorphism(
            "alternating trace needs equal source and target".into(),
        ));
    }
    let r = e.ring();
    let mut acc = 0;
    for (&n, m) in &e.components {
        acc = r.add(acc, r.mul(r.sign(n as i64), mat_trace(m)?));
    }
    Ok(acc)
}

/// `f ⊗ g` on `cx_tensor` layouts; degree-0 maps carry no Koszul sign.
pub fn map_tensor(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    f.ring().check_same(&g.ring())?;
    let source = cx_tensor(&f.source, &g.source)?;
    let target = cx_tensor(&f.target, &g.target)?;
    let src = TensorLayout::new(&f.source, &g.source);
    let dst = TensorLayout::new(&f.target, &g.target);
    let mut components = BTreeMap::new();
    for n in src.degrees() {
        let rows = dst.rank(n);
        if rows == 0 {
            continue;
        }
        let mut m = Matrix::zeros(f.ring(), rows, src.rank(n));
        for s in src.summands(n) {
            if let Some(t) = dst.summand(s.p, s.q) {
                m.set_block(
                    t.offset,
                    s.offset,
                    &mat_kron(&f.component(s.p), &g.component(s.q))?,
                );
            }
        }
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(source, target, components)
}

/// `e + d∘h + h∘d`.
pub fn homotopy_perturb(e: &ChainMap, h: &Homotopy) -> Result<ChainMap> {
    if h.source != e.source || h.target != e.target {
        return Err(Error::ShapeMismatch {
            op: "homotopy perturbation",
            left: (e.source.total_rank(), e.target.total_rank()),
            right: (h.source.total_rank(), h.target.total_rank()),
        });
    }
    let mut components = BTreeMap::new();
    for n in e.source.degrees() {
        if e.target.rank(n) == 0 {
            continue;
        }
        let dh = mat_mul(&e.target.d(n - 1), &h.component(n))?;
        let hd = mat_mul(&h.component(n + 1), &e.source.d(n))?;
        components.insert(n, e.component(n).add(&dh)?.add(&hd)?);
    }
    ChainMap::from_parts_unchecked(e.source.clone(), e.target.clone(), components)
}

/// Koszul symmetry `a ⊗ b -> b ⊗ a`, `x⊗y ↦ (-1)^{|x||y|} y⊗x`.
pub fn cx_swap(a: &Complex, b: &Complex) -> Result<ChainMap> {
    let ring = a.ring();
    let src = TensorLayout::new(a, b);
    let dst = TensorLayout::new(b, a);
    let mut components = BTreeMap::new();
    for n in src.degrees() {
        let mut m = Matrix::zeros(ring, dst.rank(n), src.rank(n));
        for s in src.summands(n) {
            let sign = ring.sign(s.p as i64 * s.q as i64);
            for i in 0..s.left_rank {
                for j in 0..s.right_rank {
                    let col = s.offset + i * s.right_rank + j;
                    let row = dst.index(s.q, s.p, j, i).expect("swapped summand");
                    m.set(row, col, sign);
                }
            }
        }
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(cx_tensor(a, b)?, cx_tensor(b, a)?, components)
}

/// Reassociation `(a ⊗ b) ⊗ c -> a ⊗ (b ⊗ c)`, a permutation of bases.
pub fn cx_assoc(a: &Complex, b: &Complex, c: &Complex) -> Result<ChainMap> {
    let ring = a.ring();
    let ab = cx_tensor(a, b)?;
    let bc = cx_tensor(b, c)?;
    let l_ab = TensorLayout::new(a, b);
    let l_bc = TensorLayout::new(b, c);
    let l_src = TensorLayout::new(&ab, c);
    let l_dst = TensorLayout::new(a, &bc);
    let mut components = BTreeMap::new();
    for n in l_src.degrees() {
        let mut m = Matrix::zeros(ring, l_dst.rank(n), l_src.rank(n));
        for outer in l_src.summands(n) {
            let (s, r) = (outer.p, outer.q);
            for inner in l_ab.summands(s) {
                let (p, q) = (inner.p, inner.q);
                for i in 0..inner.left_rank {
                    for j in 0..inner.right_rank {
                        for k in 0..c.rank(r) {
                            let ab_idx = inner.offset + i * inner.right_rank + j;
                            let col = l_src.index(s, r, ab_idx, k).unwrap();
                            let bc_idx = l_bc.index(q, r, j, k).unwrap();
                            let row = l_dst.index(p, q + r, i, bc_idx).unwrap();
                            m.set(row, col, 1);
                        }
                    }
                }
            }
        }
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(cx_tensor(&ab, c)?, cx_tensor(a, &bc)?, components)
}

/// Evaluation `a^∨ ⊗ a -> Λ[0]`, `φ ⊗ x ↦ φ(x)`.
pub fn cx_ev(a: &Complex) -> Result<ChainMap> {
    let ring = a.ring();
    let dual = cx_dual(a);
    let layout = TensorLayout::new(&dual, a);
    let mut m = Matrix::zeros(ring, 1, layout.rank(0));
    for k in a.degrees() {
        for i in 0..a.rank(k) {
            m.set(0, layout.index(-k, k, i, i).unwrap(), 1);
        }
    }
    let unit = Complex::unit(ring);
    ChainMap::from_parts_unchecked(cx_tensor(&dual, a)?, unit, BTreeMap::from([(0, m)]))
}

/// Coevaluation `Λ[0] -> a ⊗ a^∨`, `1 ↦ Σ e_i ⊗ e_i^*`.
pub fn cx_coev(a: &Complex) -> Result<ChainMap> {
    let ring = a.ring();
    let dual = cx_dual(a);
    let layout = TensorLayout::new(a, &dual);
    let mut m = Matrix::zeros(ring, layout.rank(0), 1);
    for k in a.degrees() {
        for i in 0..a.rank(k) {
            m.set(layout.index(k, -k, i, i).unwrap(), 0, 1);
        }
    }
    let unit = Complex::unit(ring);
    ChainMap::from_parts_unchecked(unit, cx_tensor(a, &dual)?, BTreeMap::from([(0, m)]))
}

/// Biduality `a -> a^∨∨`, `x ↦ (φ ↦ (-1)^{|x||φ|} φ(x))`: the signed identity `(-1)^n` in degree `n`.
pub fn cx_bidual(a: &Complex) -> Result<ChainMap> {
    let ring = a.ring();
    let components = a
        .ranks()
        .iter()
        .map(|(&n, &r)| (n, Matrix::scalar(ring, r, ring.sign(n as i64))))
        .collect();
    ChainMap::from_parts_unchecked(a.clone(), cx_dual(&cx_dual(a)), components)
}

/// Inclusion of summand `k` into the direct sum of `parts`.
pub fn cx_sum_inclusion(sum: &Complex, parts: &[Complex], k: usize) -> Result<ChainMap> {
    let layout = SumLayout::new(parts);
    let ring = sum.ring();
    let mut components = BTreeMap::new();
    for (&n, &r) in parts[k].ranks() {
        let mut m = Matrix::zeros(ring, sum.rank(n), r);
        m.set_block(layout.offset(k, n), 0, &Matrix::identity(ring, r));
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(parts[k].clone(), sum.clone(), components)
}

/// Projection from the direct sum of `parts` onto summand `k`.
pub fn cx_sum_projection(sum: &Complex, parts: &[Complex], k: usize) -> Result<ChainMap> {
    let layout = SumLayout::new(parts);
    let ring = sum.ring();
    let mut components = BTreeMap::new();
    for (&n, &r) in parts[k].ranks() {
        let mut m = Matrix::zeros(ring, r, sum.rank(n));
        m.set_block(0, layout.offset(k, n), &Matrix::identity(ring, r));
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(sum.clone(), parts[k].clone(), components)
}

/// `u^∨ : b^∨ -> a^∨`, the transpose of `u` degreewise.
pub fn map_dual(u: &ChainMap) -> Result<ChainMap> {
    let components = u
        .components
        .iter()
        .map(|(&n, m)| (-n, m.transpose()))
        .collect();
    ChainMap::from_parts_unchecked(cx_dual(&u.target), cx_dual(&u.source), components)
}

/// Sign in the Hom adjunction for `l ∈ A^a`, `e ∈ B^b`: `(-1)^{(a+1)b}`.
fn curry_sign(ring: Ring, a: i32, b: i32) -> Scalar {
    ring.sign((a as i64 + 1) * b as i64)
}

/// `u : A ⊗ B -> C` to `u′ : A -> B^∨ ⊗ C`, `u′(l) = Σ ± e^* ⊗ u(l ⊗ e)`.
pub fn cx_curry(u: &ChainMap, a: &Complex, b: &Complex) -> Result<ChainMap> {
    if *u.source() != cx_tensor(a, b)? {
        return Err(Error::BoundaryMismatch("curry: source is not A ⊗ B".into()));
    }
    let ring = u.ring();
    let c = u.target();
    let bd = cx_dual(b);
    let src = TensorLayout::new(a, b);
    let dst = TensorLayout::new(&bd, c);
    let target = cx_tensor(&bd, c)?;
    let mut components = BTreeMap::new();
    for (&p, &ra) in a.ranks() {
        let mut m = Matrix::zeros(ring, target.rank(p), ra);
        for (&q, &rb) in b.ranks() {
            let comp = u.component(p + q);
            let s = curry_sign(ring, p, q);
            for i in 0..ra {
                for j in 0..rb {
                    let col = src.index(p, q, i, j).unwrap();
                    for k in 0..c.rank(p + q) {
                        let x = comp.get(k, col);
                        if x != 0 {
                            m.set(dst.index(-q, p + q, j, k).unwrap(), i, ring.mul(s, x));
                        }
                    }
                }
            }
        }
        components.insert(p, m);
    }
    ChainMap::from_parts_unchecked(a.clone(), target, components)
}

/// Inverse of [`cx_curry`]: `w : A -> B^∨ ⊗ C` back to `A ⊗ B -> C`.
pub fn cx_uncurry(w: &ChainMap, b: &Complex, c: &Complex) -> Result<ChainMap> {
    let bd = cx_dual(b);
    if *w.target() != cx_tensor(&bd, c)? {
        return Err(Error::BoundaryMismatch(
            "uncurry: target is not B^∨ ⊗ C".into(),
        ));
    }
    let ring = w.ring();
    let a = w.source();
    let src = TensorLayout::new(a, b);
    let dst = TensorLayout::new(&bd, c);
    let source = cx_tensor(a, b)?;
    let mut components = BTreeMap::new();
    for n in src.degrees() {
        let rc = c.rank(n);
        if rc == 0 {
            continue;
        }
        let mut m = Matrix::zeros(ring, rc, src.rank(n));
        for s in src.summands(n) {
            let comp = w.component(s.p);
            let sign = curry_sign(ring, s.p, s.q);
            for i in 0..s.left_rank {
                for j in 0..s.right_rank {
                    for k in 0..rc {
                        let x = comp.get(dst.index(-s.q, n, j, k).unwrap(), i);
                        if x != 0 {
                            m.set(k, s.offset + i * s.right_rank + j, ring.mul(sign, x));
                        }
                    }
                }
            }
        }
        components.insert(n, m);
    }
    ChainMap::from_parts_unchecked(source, c.clone(), components)
}

/// Componentwise inverse, when every component is invertible.
pub fn map_inverse(f: &ChainMap) -> Result<ChainMap> {
    if f.source.ranks() != f.target.ranks() {
        return Err(Error::NotInvertible);
    }
    let components = f
        .components
        .iter()
        .map(|(&n, m)| Ok((n, m.inverse()?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    ChainMap::from_parts_unchecked(f.target.clone(), f.source.clone(), components)
}

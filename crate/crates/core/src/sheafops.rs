//! Sheaves on finite sets over the base and the six operations.
//!
//! Every map of finite sets behaves like a finite étale map, so `f^! = f^*`
//! and the relative dualizing sheaf is the constant unit.

use crate::chainalg::{cx_direct_sum, cx_dual, cx_tensor, Complex, Ring, Scalar, SumLayout};
use crate::error::{Error, Result};
use crate::finspan::{base_product, FinOver, OverMap};

/// One complex per element of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheaf {
    ring: Ring,
    carrier: FinOver,
    stalks: Vec<Complex>,
}

impl Sheaf {
    pub fn new(ring: Ring, carrier: FinOver, stalks: Vec<Complex>) -> Result<Self> {
        if stalks.len() != carrier.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} stalks for a carrier of size {}",
                stalks.len(),
                carrier.len()
            )));
        }
        for (i, s) in stalks.iter().enumerate() {
            s.ring().check_same(&ring)?;
            s.validate().map_err(|e| {
                Error::CarrierMismatch(format!("stalk at {}: {e}", carrier.label(i)))
            })?;
        }
        Ok(Sheaf {
            ring,
            carrier,
            stalks,
        })
    }

    pub fn constant(carrier: &FinOver, stalk: &Complex) -> Self {
        Sheaf {
            ring: stalk.ring(),
            carrier: carrier.clone(),
            stalks: vec![stalk.clone(); carrier.len()],
        }
    }

    /// `Λ[0]` on the base set.
    pub fn unit(base: &crate::finspan::BaseSet, ring: Ring) -> Self {
        Self::constant(&FinOver::base_set(base), &Complex::unit(ring))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn carrier(&self) -> &FinOver {
        &self.carrier
    }

    pub fn stalk(&self, i: usize) -> &Complex {
        &self.stalks[i]
    }

    pub fn stalks(&self) -> &[Complex] {
        &self.stalks
    }

    fn check_carrier(&self, x: &FinOver, what: &str) -> Result<()> {
        if self.carrier != *x {
            return Err(Error::CarrierMismatch(format!(
                "{what}: sheaf lives on another set"
            )));
        }
        Ok(())
    }
}

/// `f^*M`: the stalk at `x` is `M_{f(x)}`.
pub fn pull(f: &OverMap, m: &Sheaf) -> Result<Sheaf> {
    m.check_carrier(f.target(), "pull")?;
    Ok(Sheaf {
        ring: m.ring,
        carrier: f.source().clone(),
        stalks: f.graph().iter().map(|&j| m.stalks[j].clone()).collect(),
    })
}

/// `f^!M`, equal to `f^*M` here.
pub fn upper_shriek(f: &OverMap, m: &Sheaf) -> Result<Sheaf> {
    pull(f, m)
}

/// `f_!L = f_*L`: the stalk at `y` is the sum over the fiber, in carrier order.
pub fn push(f: &OverMap, l: &Sheaf) -> Result<Sheaf> {
    l.check_carrier(f.source(), "push")?;
    let stalks = f
        .fibers()
        .iter()
        .map(|fib| {
            if fib.len() == 1 {
                Ok(l.stalks[fib[0]].clone())
            } else {
                let parts: Vec<Complex> = fib.iter().map(|&i| l.stalks[i].clone()).collect();
                cx_direct_sum(l.ring, &parts)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sheaf {
        ring: l.ring,
        carrier: f.target().clone(),
        stalks,
    })
}

/// Where each source element sits inside the pushed stalk of its image.
#[derive(Clone, Debug)]
pub struct PushLayout {
    /// `slot[x] = k` when `x` is the `k`-th element of its fiber.
    pub slot: Vec<usize>,
    pub fibers: Vec<Vec<usize>>,
    pub sums: Vec<SumLayout>,
}

impl PushLayout {
    pub fn new(f: &OverMap, l: &Sheaf) -> Self {
        let fibers = f.fibers();
        let mut slot = vec![0; f.source().len()];
        let sums = fibers
            .iter()
            .map(|fib| {
                for (k, &i) in fib.iter().enumerate() {
                    slot[i] = k;
                }
                let parts: Vec<Complex> = fib.iter().map(|&i| l.stalks[i].clone()).collect();
                SumLayout::new(&parts)
            })
            .collect();
        PushLayout { slot, fibers, sums }
    }

    /// Offset of the block of `x` in degree `n` of the pushed stalk at `y`.
    pub fn offset(&self, y: usize, x: usize, n: i32) -> usize {
        self.sums[y].offset(self.slot[x], n)
    }
}

/// `L ⊠_S M` on `X ×_S Y`.
pub fn sheaf_box(l: &Sheaf, m: &Sheaf) -> Result<Sheaf> {
    l.ring.check_same(&m.ring)?;
    let p = base_product(&l.carrier, &m.carrier)?;
    let stalks = (0..p.set.len())
        .map(|k| {
            let (i, j) = p.set.factors(k).unwrap();
            cx_tensor(&l.stalks[i], &m.stalks[j])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sheaf {
        ring: l.ring,
        carrier: p.set,
        stalks,
    })
}

/// Stalkwise dual.
pub fn verdier(l: &Sheaf) -> Sheaf {
    Sheaf {
        ring: l.ring,
        carrier: l.carrier.clone(),
        stalks: l.stalks.iter().map(cx_dual).collect(),
    }
}

/// Stalk at `(x, y)` is `Hom(L_x, M_y) = L_x^∨ ⊗ M_y`.
pub fn sheaf_hom(l: &Sheaf, m: &Sheaf) -> Result<Sheaf> {
    sheaf_box(&verdier(l), m)
}

/// A class in `H⁰(X, K_{X/S})`: one scalar per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaClass {
    ring: Ring,
    carrier: FinOver,
    values: Vec<Scalar>,
}

impl OmegaClass {
    pub fn new(ring: Ring, carrier: FinOver, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != carrier.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} values for a carrier of size {}",
                values.len(),
                carrier.len()
            )));
        }
        let values = values.into_iter().map(|v| ring.normalize(v)).collect();
        Ok(OmegaClass {
            ring,
            carrier,
            values,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn carrier(&self) -> &FinOver {
        &self.carrier
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, i: usize) -> Scalar {
        self.values[i]
    }

    /// Total over all elements.
    pub fn total(&self) -> Scalar {
        self.values.iter().fold(0, |acc, &v| self.ring.add(acc, v))
    }

    /// `(label, value)` pairs in carrier order.
    pub fn entries(&self) -> Vec<(String, Scalar)> {
        self.carrier
            .labels()
            .iter()
            .cloned()
            .zip(self.values.iter().copied())
            .collect()
    }
}

/// Fiberwise sum along `q`.
pub fn omega_push(q: &OverMap, a: &OmegaClass) -> Result<OmegaClass> {
    if a.carrier != *q.source() {
        return Err(Error::CarrierMismatch(
            "omega_push: class lives on another set".into(),
        ));
    }
    let mut values = vec![0; q.target().len()];
    for (i, &j) in q.graph().iter().enumerate() {
        values[j] = a.ring.add(values[j], a.values[i]);
    }
    Ok(OmegaClass {
        ring: a.ring,
        carrier: q.target().clone(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::chainalg::Matrix;
    use crate::finspan::{fiber_product, BaseSet};

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

    #[test]
    fn pull_examples() {
        let b = BaseSet::point();
        let y = set(&b, &["y"]);
        let m = Sheaf::constant(&y, &q());
        assert_eq!(pull(&OverMap::identity(&y), &m).unwrap(), m);
        assert_eq!(upper_shriek(&OverMap::identity(&y), &m).unwrap(), m);
        let e = FinOver::empty(&b);
        let f0 = OverMap::new(e, y.clone(), vec![]).unwrap();
        assert!(pull(&f0, &m).unwrap().stalks().is_empty());
        let x = set(&b, &["a", "b"]);
        let f = OverMap::new(x, y, vec![0, 0]).unwrap();
        let p = pull(&f, &m).unwrap();
        assert_eq!(p.stalks(), &[q(), q()]);
        assert_eq!(upper_shriek(&f, &m).unwrap(), p);
    }

    #[test]
    fn push_examples() {
        let b = BaseSet::point();
        let x = set(&b, &["a", "b"]);
        let l = Sheaf::new(
            z(),
            x.clone(),
            vec![Complex::unit(z()), Complex::free(z(), 0, 2)],
        )
        .unwrap();
        assert_eq!(push(&OverMap::identity(&x), &l).unwrap(), l);
        let y = set(&b, &["y"]);
        let f = OverMap::new(x.clone(), y.clone(), vec![0, 0]).unwrap();
        let p = push(&f, &l).unwrap();
        assert_eq!(p.stalk(0).ranks(), &BTreeMap::from([(0, 3)]));
        let e = FinOver::empty(&b);
        let f0 = OverMap::new(e.clone(), y, vec![]).unwrap();
        let p0 = push(&f0, &Sheaf::new(z(), e, vec![]).unwrap()).unwrap();
        assert!(p0.stalk(0).is_zero());
    }

    #[test]
    fn box_examples() {
        let b = BaseSet::point();
        let a = set(&b, &["a"]);
        let bb = set(&b, &["b"]);
        let l = Sheaf::constant(&a, &Complex::unit(z()));
        let m = Sheaf::constant(&bb, &q());
        assert_eq!(sheaf_box(&l, &m).unwrap().stalk(0), &q());
        let unit = Sheaf::unit(&b, z());
        assert_eq!(sheaf_box(&m, &unit).unwrap().stalks(), m.stalks());
        let e = FinOver::empty(&b);
        assert!(sheaf_box(&m, &Sheaf::new(z(), e, vec![]).unwrap())
            .unwrap()
            .stalks()
            .is_empty());
    }

    #[test]
    fn verdier_and_hom_examples() {
        let b = BaseSet::point();
        let x = set(&b, &["a", "b"]);
        let c = Sheaf::constant(&x, &Complex::unit(z()));
        assert_eq!(verdier(&c), c);
        let e = Sheaf::new(z(), FinOver::empty(&b), vec![]).unwrap();
        assert_eq!(verdier(&e), e);
        let p = Sheaf::constant(&set(&b, &["p"]), &q());
        assert_eq!(verdier(&p).stalk(0), &cx_dual(&q()));
        assert_eq!(verdier(&verdier(&p)).stalk(0).ranks(), q().ranks());

        let unit = Sheaf::unit(&b, z());
        assert_eq!(sheaf_hom(&unit, &p).unwrap().stalks(), p.stalks());
        assert_eq!(sheaf_hom(&p, &unit).unwrap().stalks(), verdier(&p).stalks());
        let two = Sheaf::constant(&set(&b, &["u"]), &Complex::free(z(), 0, 2));
        let one = Sheaf::constant(&set(&b, &["v"]), &Complex::unit(z()));
        let h = sheaf_hom(&two, &one).unwrap();
        assert_eq!(h.stalk(0).ranks(), &BTreeMap::from([(0, 2)]));
        // Empty fiber over the second base point leaves nothing to pair with.
        let b2 = BaseSet::new(["s", "t"]).unwrap();
        let xs = FinOver::from_pairs(&b2, &[("a", "s")]).unwrap();
        let yt = FinOver::from_pairs(&b2, &[("c", "t")]).unwrap();
        let hs = sheaf_hom(&Sheaf::constant(&xs, &q()), &Sheaf::constant(&yt, &q())).unwrap();
        assert!(hs.stalks().is_empty());
    }

    #[test]
    fn omega_push_examples() {
        let b = BaseSet::point();
        let x = set(&b, &["a", "b", "c"]);
        let a = OmegaClass::new(z(), x.clone(), vec![1, 2, 3]).unwrap();
        assert_eq!(omega_push(&OverMap::identity(&x), &a).unwrap(), a);
        let y = set(&b, &["y", "w"]);
        let f = OverMap::new(x, y, vec![0, 0, 0]).unwrap();
        let p = omega_push(&f, &a).unwrap();
        assert_eq!(p.values(), &[6, 0]);
    }

    #[test]
    fn base_change_is_strict() {
        let b = BaseSet::point();
        let x = set(&b, &["a", "b", "c"]);
        let y = set(&b, &["y0", "y1"]);
        let yp = set(&b, &["w0", "w1", "w2"]);
        let f = OverMap::new(x.clone(), y.clone(), vec![0, 1, 0]).unwrap();
        let g = OverMap::new(yp, y, vec![0, 0, 1]).unwrap();
        let l = Sheaf::new(z(), x, vec![q(), Complex::unit(z()), cx_dual(&q())]).unwrap();
        let fp = fiber_product(&f, &g).unwrap();
        let lhs = pull(&g, &push(&f, &l).unwrap()).unwrap();
        let rhs = push(&fp.pr2, &pull(&fp.pr1, &l).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

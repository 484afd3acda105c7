use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::matrix::{mat_mul, Matrix};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Bounded cochain complex of finite free modules, `d^n : C^n -> C^{n+1}`.
///
/// Only degrees of positive rank are stored; a differential is stored exactly
/// when both its source and target have positive rank.
#[derive(Clone)]
pub struct Complex(Arc<ComplexData>);

#[derive(Clone, PartialEq, Eq, Hash)]
struct ComplexData {
    ring: Ring,
    ranks: BTreeMap<i32, usize>,
    diff: BTreeMap<i32, Matrix>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("ring", &self.0.ring)
            .field("ranks", &self.0.ranks)
            .field("diff", &self.0.diff)
            .finish()
    }
}

impl Complex {
    /// Builds and validates a complex. Zero ranks and differentials touching
    /// zero-rank degrees are dropped; missing differentials are zero.
    pub fn new(
        ring: Ring,
        ranks: BTreeMap<i32, usize>,
        diff: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let c = Self::from_parts_unchecked(ring, ranks, diff)?;
        c.validate()?;
        Ok(c)
    }

    /// Normalizes the representation and checks shapes but not `d∘d = 0`.
    pub fn from_parts_unchecked(
        ring: Ring,
        ranks: BTreeMap<i32, usize>,
        diff: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        let ranks: BTreeMap<i32, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank = |n: i32| ranks.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, m) in diff {
            m.ring().check_same(&ring)?;
            if m.shape() != (rank(n + 1), rank(n)) {
                return Err(Error::InvalidComplex {
                    degree: n,
                    reason: format!(
                        "differential has shape {:?}, expected {:?}",
                        m.shape(),
                        (rank(n + 1), rank(n))
                    ),
                });
            }
            if rank(n) > 0 && rank(n + 1) > 0 {
                kept.insert(n, m);
            }
        }
        for (&n, &r) in &ranks {
            let r1 = rank(n + 1);
            if r1 > 0 && !kept.contains_key(&n) {
                kept.insert(n, Matrix::zeros(ring, r1, r));
            }
        }
        Ok(Complex(Arc::new(ComplexData {
            ring,
            ranks,
            diff: kept,
        })))
    }

    pub fn zero(ring: Ring) -> Self {
        Complex(Arc::new(ComplexData {
            ring,
            ranks: BTreeMap::new(),
            diff: BTreeMap::new(),
        }))
    }

    /// `Λ^rank` concentrated in one degree.
    pub fn free(ring: Ring, degree: i32, rank: usize) -> Self {
        Self::from_parts_unchecked(ring, BTreeMap::from([(degree, rank)]), BTreeMap::new())
            .expect("concentrated complex")
    }

    /// The unit `Λ[0]`.
    pub fn unit(ring: Ring) -> Self {
        Self::free(ring, 0, 1)
    }

    pub fn ring(&self) -> Ring {
        self.0.ring
    }

    pub fn rank(&self, n: i32) -> usize {
        self.0.ranks.get(&n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<i32, usize> {
        &self.0.ranks
    }

    pub fn diffs(&self) -> &BTreeMap<i32, Matrix> {
        &self.0.diff
    }

    /// Degrees of positive rank, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.ranks.keys().copied()
    }

    pub fn total_rank(&self) -> usize {
        self.0.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.ranks.is_empty()
    }

    /// `d^n`, materialized as a zero matrix when not stored.
    pub fn d(&self, n: i32) -> Matrix {
        self.0
            .diff
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring(), self.rank(n + 1), self.rank(n)))
    }

    /// Checks `d^{n+1} ∘ d^n = 0`, reporting the first failing degree.
    pub fn validate(&self) -> Result<()> {
        for (&n, d) in &self.0.diff {
            if let Some(d1) = self.0.diff.get(&(n + 1)) {
                if !mat_mul(d1, d)?.is_zero() {
                    return Err(Error::InvalidComplex {
                        degree: n,
                        reason: "d∘d is nonzero".into(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let r = self.ring();
        self.0.ranks.iter().fold(0, |acc, (&n, &k)| {
            r.add(acc, r.mul(r.sign(n as i64), k as i64))
        })
    }
}

pub fn cx_validate(c: &Complex) -> Result<()> {
    c.validate()
}

/// Block bookkeeping for `a ⊗ b`: per total degree, the summands
/// `a^p ⊗ b^q` with `p` ascending, each basis ordered row-major `(i, j)`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    degrees: BTreeMap<i32, Vec<Summand>>,
}

#[derive(Clone, Copy, Debug)]
pub struct Summand {
    pub p: i32,
    pub q: i32,
    pub offset: usize,
    pub left_rank: usize,
    pub right_rank: usize,
}

impl TensorLayout {
    pub fn new(a: &Complex, b: &Complex) -> Self {
        let mut degrees: BTreeMap<i32, Vec<Summand>> = BTreeMap::new();
        for p in a.degrees() {
            for q in b.degrees() {
                degrees.entry(p + q).or_default();
            }
        }
        for (&n, list) in degrees.iter_mut() {
            let mut offset = 0;
            for p in a.degrees() {
                let q = n - p;
                let rb = b.rank(q);
                if rb == 0 {
                    continue;
                }
                let ra = a.rank(p);
                list.push(Summand {
                    p,
                    q,
                    offset,
                    left_rank: ra,
                    right_rank: rb,
                });
                offset += ra * rb;
            }
        }
        TensorLayout { degrees }
    }

    pub fn summands(&self, n: i32) -> &[Summand] {
        self.degrees.get(&n).map_or(&[], |v| v.as_slice())
    }

    pub fn rank(&self, n: i32) -> usize {
        self.summands(n)
            .last()
            .map_or(0, |s| s.offset + s.left_rank * s.right_rank)
    }

    pub fn summand(&self, p: i32, q: i32) -> Option<&Summand> {
        self.summands(p + q).iter().find(|s| s.p == p)
    }

    /// Position of `e_i ⊗ f_j` with `e_i ∈ a^p`, `f_j ∈ b^q`.
    pub fn index(&self, p: i32, q: i32, i: usize, j: usize) -> Option<usize> {
        self.summand(p, q).map(|s| s.offset + i * s.right_rank + j)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.degrees.keys().copied()
    }
}

/// `a ⊗ b` with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
pub fn cx_tensor(a: &Complex, b: &Complex) -> Result<Complex> {
    a.ring().check_same(&b.ring())?;
    let ring = a.ring();
    let layout = TensorLayout::new(a, b);
    let mut ranks = BTreeMap::new();
    let mut diff = BTreeMap::new();
    for n in layout.degrees() {
        ranks.insert(n, layout.rank(n));
    }
    for n in layout.degrees() {
        let rows = layout.rank(n + 1);
        if rows == 0 {
            continue;
        }
        let mut d = Matrix::zeros(ring, rows, layout.rank(n));
        for s in layout.summands(n) {
            if let Some(t) = layout.summand(s.p + 1, s.q) {
                let block =
                    super::matrix::mat_kron(&a.d(s.p), &Matrix::identity(ring, s.right_rank))?;
                d.set_block(t.offset, s.offset, &block);
            }
            if let Some(t) = layout.summand(s.p, s.q + 1) {
                let block =
                    super::matrix::mat_kron(&Matrix::identity(ring, s.left_rank), &b.d(s.q))?
                        .scale(ring.sign(s.p as i64));
                d.set_block(t.offset, s.offset, &block);
            }
        }
        diff.insert(n, d);
    }
    Complex::from_parts_unchecked(ring, ranks, diff)
}

/// Linear dual: `(a^∨)^n = (a^{-n})^*` with `(d^∨)^n = -(-1)^n (d^{-n-1})^T`,
/// the sign making `ev(φ ⊗ x) = φ(x)` a chain map `a^∨ ⊗ a -> Λ[0]`.
pub fn cx_dual(a: &Complex) -> Complex {
    let ring = a.ring();
    let ranks: BTreeMap<i32, usize> = a.ranks().iter().map(|(&n, &r)| (-n, r)).collect();
    let diff: BTreeMap<i32, Matrix> = a
        .diffs()
        .iter()
        .map(|(&m, d)| {
            // d^m : a^m -> a^{m+1} dualizes to degree n = -m-1.
            let n = -m - 1;
            (n, d.transpose().scale(-ring.sign(n as i64)))
        })
        .collect();
    Complex::from_parts_unchecked(ring, ranks, diff).expect("dual of a valid complex")
}

/// Block-diagonal direct sum in the given order.
pub fn cx_direct_sum(ring: Ring, parts: &[Complex]) -> Result<Complex> {
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for c in parts {
        c.ring().check_same(&ring)?;
        for (&n, &r) in c.ranks() {
            *ranks.entry(n).or_default() += r;
        }
    }
    let layout = SumLayout::new(parts);
    let mut diff = BTreeMap::new();
    for &n in ranks.keys() {
        let rows = ranks.get(&(n + 1)).copied().unwrap_or(0);
        if rows == 0 {
            continue;
        }
        let mut d = Matrix::zeros(ring, rows, ranks[&n]);
        for (k, c) in parts.iter().enumerate() {
            if let Some(dk) = c.diffs().get(&n) {
                d.set_block(layout.offset(k, n + 1), layout.offset(k, n), dk);
            }
        }
        diff.insert(n, d);
    }
    Complex::from_parts_unchecked(ring, ranks, diff)
}

/// Offsets of summand `k` in degree `n` of a direct sum.
#[derive(Clone, Debug)]
pub struct SumLayout {
    offsets: Vec<BTreeMap<i32, usize>>,
    ranks: Vec<BTreeMap<i32, usize>>,
}

impl SumLayout {
    pub fn new(parts: &[Complex]) -> Self {
        let mut running: BTreeMap<i32, usize> = BTreeMap::new();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut ranks = Vec::with_capacity(parts.len());
        for c in parts {
            let mut off = BTreeMap::new();
            for (&n, &r) in c.ranks() {
                let slot = running.entry(n).or_default();
                off.insert(n, *slot);
                *slot += r;
            }
            offsets.push(off);
            ranks.push(c.ranks().clone());
        }
        SumLayout { offsets, ranks }
    }

    pub fn offset(&self, k: usize, n: i32) -> usize {
        self.offsets[k].get(&n).copied().unwrap_or(0)
    }

    pub fn rank(&self, k: usize, n: i32) -> usize {
        self.ranks[k].get(&n).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    /// Λ --2--> Λ in degrees 0, 1.
    pub(crate) fn q_complex(ring: Ring) -> Complex {
        Complex::new(
            ring,
            BTreeMap::from([(0, 1), (1, 1)]),
            BTreeMap::from([(0, Matrix::scalar(ring, 1, 2))]),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(cx_validate(&Complex::zero(z())).is_ok());
        assert!(cx_validate(&q_complex(z())).is_ok());
        let bad = Complex::from_parts_unchecked(
            z(),
            BTreeMap::from([(0, 1), (1, 1), (2, 1)]),
            BTreeMap::from([(0, Matrix::identity(z(), 1)), (1, Matrix::identity(z(), 1))]),
        )
        .unwrap();
        assert_eq!(
            cx_validate(&bad),
            Err(Error::InvalidComplex {
                degree: 0,
                reason: "d∘d is nonzero".into()
            })
        );
    }

    #[test]
    fn representation_is_canonical() {
        let a = Complex::new(
            z(),
            BTreeMap::from([(0, 1), (1, 0), (3, 2)]),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(
            a,
            Complex::new(z(), BTreeMap::from([(0, 1), (3, 2)]), BTreeMap::new()).unwrap()
        );
        assert_eq!(a.rank(1), 0);
        assert_eq!(a.d(0).shape(), (0, 1));
    }

    #[test]
    fn bad_shape_is_rejected() {
        let err = Complex::new(
            z(),
            BTreeMap::from([(0, 1), (1, 2)]),
            BTreeMap::from([(0, Matrix::identity(z(), 1))]),
        );
        assert!(matches!(err, Err(Error::InvalidComplex { degree: 0, .. })));
    }

    #[test]
    fn tensor_units() {
        let unit = Complex::unit(z());
        assert_eq!(cx_tensor(&unit, &unit).unwrap(), unit);
        let q = q_complex(z());
        assert_eq!(cx_tensor(&q, &unit).unwrap(), q);
        assert_eq!(cx_tensor(&unit, &q).unwrap(), q);
    }

    /// Independent oracle: enumerate basis tensors `(p, i, q, j)`, apply the
    /// Koszul rule symbolically, and read off matrices in the documented order.
    fn tensor_oracle(a: &Complex, b: &Complex) -> BTreeMap<i32, Vec<Vec<i64>>> {
        let basis = |n: i32| -> Vec<(i32, usize, i32, usize)> {
            let mut out = Vec::new();
            for p in a.degrees() {
                let q = n - p;
                for i in 0..a.rank(p) {
                    for j in 0..b.rank(q) {
                        out.push((p, i, q, j));
                    }
                }
            }
            out
        };
        let mut degrees: Vec<i32> = Vec::new();
        for p in a.degrees() {
            for q in b.degrees() {
                degrees.push(p + q);
            }
        }
        degrees.sort();
        degrees.dedup();
        let mut out = BTreeMap::new();
        for &n in &degrees {
            let src = basis(n);
            let dst = basis(n + 1);
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let mut mat = vec![vec![0i64; src.len()]; dst.len()];
            for (col, &(p, i, q, j)) in src.iter().enumerate() {
                let da = a.d(p);
                for k in 0..a.rank(p + 1) {
                    let c = da.get(k, i);
                    if c != 0 {
                        let row = dst.iter().position(|&t| t == (p + 1, k, q, j)).unwrap();
                        mat[row][col] += c;
                    }
                }
                let db = b.d(q);
                let sign = if p % 2 == 0 { 1 } else { -1 };
                for k in 0..b.rank(q + 1) {
                    let c = db.get(k, j);
                    if c != 0 {
                        let row = dst.iter().position(|&t| t == (p, i, q + 1, k)).unwrap();
                        mat[row][col] += sign * c;
                    }
                }
            }
            out.insert(n, mat);
        }
        out
    }

    #[test]
    fn tensor_of_q_with_itself() {
        let q = q_complex(z());
        let qq = cx_tensor(&q, &q).unwrap();
        assert_eq!(qq.ranks(), &BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        let oracle = tensor_oracle(&q, &q);
        for (n, m) in qq.diffs() {
            assert_eq!(&m.to_rows(), &oracle[n]);
        }
        // Frozen from the oracle; summands ordered p ascending: (0,1) then (1,0).
        assert_eq!(qq.d(0).to_rows(), vec![vec![2], vec![2]]);
        assert_eq!(qq.d(1).to_rows(), vec![vec![2, -2]]);
        assert!(qq.validate().is_ok());
    }

    #[test]
    fn dual_examples() {
        let unit = Complex::unit(z());
        assert_eq!(cx_dual(&unit), unit);
        assert_eq!(
            cx_dual(&Complex::free(z(), 1, 1)),
            Complex::free(z(), -1, 1)
        );
        let qd = cx_dual(&q_complex(z()));
        assert_eq!(qd.ranks(), &BTreeMap::from([(-1, 1), (0, 1)]));
        assert_eq!(qd.d(-1).to_rows(), vec![vec![2]]);
    }

    #[test]
    fn dual_sign_is_forced_by_evaluation() {
        // Oracle: of the two candidate differentials ±2 on Q^∨, exactly one
        // makes φ⊗x ↦ φ(x) vanish on boundaries of Q^∨ ⊗ Q in degree -1.
        let q = q_complex(z());
        let mut admissible = Vec::new();
        for s in [2i64, -2] {
            let qd = Complex::new(
                z(),
                BTreeMap::from([(-1, 1), (0, 1)]),
                BTreeMap::from([(-1, Matrix::scalar(z(), 1, s))]),
            )
            .unwrap();
            let t = cx_tensor(&qd, &q).unwrap();
            // ev in degree 0 pairs (Q^∨)^{-k} with Q^k; summands (p=-1,q=1), (p=0,q=0).
            let layout = TensorLayout::new(&qd, &q);
            let mut ev = vec![0i64; t.rank(0)];
            ev[layout.index(-1, 1, 0, 0).unwrap()] = 1;
            ev[layout.index(0, 0, 0, 0).unwrap()] = 1;
            let d = t.d(-1);
            let ok =
                (0..d.cols()).all(|c| (0..d.rows()).map(|r| ev[r] * d.get(r, c)).sum::<i64>() == 0);
            if ok {
                admissible.push(s);
            }
        }
        assert_eq!(admissible, vec![cx_dual(&q).d(-1).get(0, 0)]);
    }

    #[test]
    fn direct_sum_blocks() {
        let q = q_complex(z());
        let s = cx_direct_sum(z(), &[q.clone(), Complex::unit(z()), q.clone()]).unwrap();
        assert_eq!(s.rank(0), 3);
        assert_eq!(s.rank(1), 2);
        assert_eq!(s.d(0).to_rows(), vec![vec![2, 0, 0], vec![0, 0, 2]]);
        assert!(s.validate().is_ok());
        assert_eq!(s.euler_characteristic(), 1);
    }
}

use std::collections::BTreeMap;

use indexmap::IndexMap;
use num_integer::Integer;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::format::{
    BaseChangeSpec, ComplexSpec, InstanceFile, LvSpec, MapSpec, MorphismSpec, Rows, SetSpec,
    SheafSpec, SpanSpec,
};

/// Size envelope for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub max_set: usize,
    pub max_rank: usize,
    pub deg_min: i32,
    pub deg_max: i32,
    /// `None` alternates between `ℤ` and `ℤ/7` by instance index.
    pub modulus: Option<u64>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_set: 4,
            max_rank: 3,
            deg_min: -2,
            deg_max: 2,
            modulus: None,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.max_set == 0 {
            return Err(Error::Param("max-set must be at least 1".into()));
        }
        if self.max_set > 16 || self.max_rank > 8 {
            return Err(Error::Param("max-set ≤ 16 and max-rank ≤ 8".into()));
        }
        if self.deg_min > self.deg_max {
            return Err(Error::Param("deg-min exceeds deg-max".into()));
        }
        if self.deg_max - self.deg_min > 16 {
            return Err(Error::Param("degree window wider than 16".into()));
        }
        if self.modulus == Some(1) {
            return Err(Error::Param("modulus 1 is not a ring".into()));
        }
        Ok(())
    }

    /// The modulus used for instance `index`.
    pub fn modulus_for(&self, index: u64) -> u64 {
        self.modulus.unwrap_or(if index % 2 == 0 { 0 } else { 7 })
    }
}

/// Integer data of a complex, kept unreduced so chain maps can be solved over `ℚ`.
#[derive(Clone, Debug)]
struct IntComplex {
    ranks: BTreeMap<i32, usize>,
    d: BTreeMap<i32, Rows>,
}

impl IntComplex {
    fn rank(&self, n: i32) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    fn d(&self, n: i32) -> Rows {
        self.d
            .get(&n)
            .cloned()
            .unwrap_or_else(|| vec![vec![0; self.rank(n)]; self.rank(n + 1)])
    }

    fn spec(&self, m: u64) -> ComplexSpec {
        ComplexSpec {
            ranks: self
                .ranks
                .iter()
                .filter(|(_, &r)| r > 0)
                .map(|(n, r)| (n.to_string(), *r))
                .collect(),
            diff: self
                .d
                .iter()
                .map(|(n, rows)| (n.to_string(), reduce(rows, m)))
                .filter(|(_, rows)| rows.iter().flatten().any(|&x| x != 0))
                .collect(),
        }
    }
}

fn reduce(rows: &Rows, m: u64) -> Rows {
    if m == 0 {
        return rows.clone();
    }
    let m = m as i64;
    rows.iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(m)).collect())
        .collect()
}

fn mul(a: &Rows, b: &Rows, inner: usize, cols: usize) -> Rows {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Random unit upper-triangular matrix and its integer inverse.
fn unit_upper(rng: &mut ChaCha8Rng, n: usize) -> (Rows, Rows) {
    let mut p = vec![vec![0i64; n]; n];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = 1;
        for x in row.iter_mut().skip(i + 1) {
            *x = rng.gen_range(-1..=1);
        }
    }
    let mut inv = vec![vec![0i64; n]; n];
    for j in 0..n {
        for i in (0..=j).rev() {
            let s: i64 = (i + 1..=j).map(|k| p[i][k] * inv[k][j]).sum();
            inv[i][j] = if i == j { 1 } else { -s };
        }
    }
    (p, inv)
}

/// One or two degrees shared by all stalks of an instance, so that chain maps
/// between stalks are rarely forced to vanish.
fn degree_palette(rng: &mut ChaCha8Rng, p: &GenParams) -> Vec<i32> {
    let mut out: Vec<i32> = (0..rng.gen_range(1..=2))
        .map(|_| rng.gen_range(p.deg_min..=p.deg_max))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn random_complex(rng: &mut ChaCha8Rng, p: &GenParams, palette: &[i32]) -> IntComplex {
    let total = if p.max_rank > 0 && rng.gen_bool(0.85) {
        rng.gen_range(1..=p.max_rank)
    } else {
        0
    };
    let mut singles: Vec<i32> = Vec::new();
    let mut pairs: Vec<(i32, i64)> = Vec::new();
    let mut left = total;
    while left > 0 {
        let n = *palette.choose(rng).unwrap();
        if left >= 2 && p.deg_max > p.deg_min && rng.gen_bool(0.3) {
            let n = if n < p.deg_max { n } else { n - 1 };
            let k = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
            pairs.push((n, k));
            left -= 2;
        } else {
            singles.push(n);
            left -= 1;
        }
    }
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    let mut slots: Vec<(i32, usize, usize, i64)> = Vec::new();
    for &n in &singles {
        *ranks.entry(n).or_default() += 1;
    }
    for &(n, k) in &pairs {
        let lo = *ranks.entry(n).or_default();
        let hi = *ranks.entry(n + 1).or_default();
        ranks.insert(n, lo + 1);
        ranks.insert(n + 1, hi + 1);
        slots.push((n, lo, hi, k));
    }
    let rank = |n: i32| ranks.get(&n).copied().unwrap_or(0);
    let mut d: BTreeMap<i32, Rows> = BTreeMap::new();
    for &(n, lo, hi, k) in &slots {
        d.entry(n)
            .or_insert_with(|| vec![vec![0; rank(n)]; rank(n + 1)])[hi][lo] = k;
    }
    let conj: BTreeMap<i32, (Rows, Rows)> =
        ranks.iter().map(|(&n, &r)| (n, unit_upper(rng, r))).collect();
    let d = d
        .into_iter()
        .map(|(n, m)| {
            let (p1, _) = &conj[&(n + 1)];
            let (_, inv) = &conj[&n];
            let t = mul(p1, &m, rank(n + 1), rank(n));
            (n, mul(&t, inv, rank(n), rank(n)))
        })
        .collect();
    IntComplex { ranks, d }
}

type Q = Ratio<i128>;

/// Integer basis of the nullspace of an integer matrix with `cols` columns.
fn integer_nullspace(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c];
        for x in m[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != Q::from_integer(0) {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::from_integer(0); cols];
            v[fc] = Q::from_integer(1);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][fc];
            }
            let l = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
            let ints: Vec<i128> = v.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
            let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x)).max(1);
            ints.iter().map(|x| (x / g) as i64).collect()
        })
        .collect()
}

/// A random integer chain map `a -> b`: a small combination of a nullspace basis.
fn random_chain_map(rng: &mut ChaCha8Rng, a: &IntComplex, b: &IntComplex) -> BTreeMap<i32, Rows> {
    let degrees: Vec<i32> = a
        .ranks
        .keys()
        .copied()
        .filter(|&n| a.rank(n) > 0 && b.rank(n) > 0)
        .collect();
    let mut offset = BTreeMap::new();
    let mut cols = 0;
    for &n in &degrees {
        offset.insert(n, cols);
        cols += b.rank(n) * a.rank(n);
    }
    if cols == 0 {
        return BTreeMap::new();
    }
    let var = |n: i32, i: usize, j: usize| offset[&n] + i * a.rank(n) + j;
    // d_B^n f^n - f^{n+1} d_A^n = 0, entry (i, j) for i < rank_B(n+1), j < rank_A(n).
    let mut eqs = Vec::new();
    let mut check: Vec<i32> = a.ranks.keys().copied().collect();
    check.extend(a.ranks.keys().map(|n| n - 1));
    check.sort_unstable();
    check.dedup();
    for n in check {
        let (db, da) = (b.d(n), a.d(n));
        for i in 0..b.rank(n + 1) {
            for j in 0..a.rank(n) {
                let mut row = vec![0i64; cols];
                if offset.contains_key(&n) {
                    for k in 0..b.rank(n) {
                        row[var(n, k, j)] += db[i][k];
                    }
                }
                if offset.contains_key(&(n + 1)) {
                    for k in 0..a.rank(n + 1) {
                        row[var(n + 1, i, k)] -= da[k][j];
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let basis = integer_nullspace(&eqs, cols);
    let mut x = vec![0i64; cols];
    for v in &basis {
        let c: i64 = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += c * vi;
        }
    }
    degrees
        .iter()
        .map(|&n| {
            let rows = (0..b.rank(n))
                .map(|i| (0..a.rank(n)).map(|j| x[var(n, i, j)]).collect())
                .collect();
            (n, rows)
        })
        .collect()
}

/// Elements and anchors of a generated set.
#[derive(Clone, Debug)]
struct GenSet {
    labels: Vec<String>,
    anchor: Vec<usize>,
}

impl GenSet {
    fn len(&self) -> usize {
        self.labels.len()
    }
}

struct Builder {
    file: InstanceFile,
    modulus: u64,
    base: Vec<String>,
}

impl Builder {
    fn new(modulus: u64, base: Vec<String>) -> Self {
        Builder {
            file: InstanceFile {
                ring: modulus,
                base: base.clone(),
                sets: IndexMap::new(),
                maps: IndexMap::new(),
                sheaves: IndexMap::new(),
                spans: IndexMap::new(),
                morphisms: IndexMap::new(),
                lv: None,
                base_change: None,
                expect: IndexMap::new(),
            },
            modulus,
            base,
        }
    }

    fn set(&mut self, name: &str, s: &GenSet) {
        let anchor = if self.base.len() == 1 {
            Vec::new()
        } else {
            s.anchor.iter().map(|&a| self.base[a].clone()).collect()
        };
        self.file.sets.insert(
            name.into(),
            SetSpec {
                elements: s.labels.clone(),
                anchor,
            },
        );
    }

    fn map(&mut self, name: &str, (src, sname): (&GenSet, &str), (dst, dname): (&GenSet, &str), graph: &[usize]) {
        self.file.maps.insert(
            name.into(),
            MapSpec {
                source: sname.into(),
                target: dname.into(),
                graph: graph
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (src.labels[i].clone(), dst.labels[j].clone()))
                    .collect(),
            },
        );
    }

    fn sheaf(&mut self, name: &str, carrier: (&GenSet, &str), stalks: &[IntComplex]) {
        self.file.sheaves.insert(
            name.into(),
            SheafSpec {
                carrier: carrier.1.into(),
                stalks: carrier
                    .0
                    .labels
                    .iter()
                    .zip(stalks)
                    .map(|(l, c)| (l.clone(), c.spec(self.modulus)))
                    .collect(),
            },
        );
    }

    fn span(&mut self, name: &str, names: [&str; 5]) {
        let [source, target, apex, left, right] = names;
        self.file.spans.insert(
            name.into(),
            SpanSpec {
                source: source.into(),
                target: target.into(),
                apex: apex.into(),
                left: left.into(),
                right: right.into(),
            },
        );
    }

    fn morphism(&mut self, name: &str, ends: (&str, &str, &str), apex: &GenSet, comps: Vec<BTreeMap<i32, Rows>>) {
        let maps = apex
            .labels
            .iter()
            .zip(comps)
            .map(|(l, c)| {
                let by_degree = c
                    .into_iter()
                    .map(|(n, rows)| (n.to_string(), reduce(&rows, self.modulus)))
                    .filter(|(_, rows)| rows.iter().flatten().any(|&x| x != 0))
                    .collect();
                (l.clone(), by_degree)
            })
            .collect();
        self.file.morphisms.insert(
            name.into(),
            MorphismSpec {
                source: ends.0.into(),
                target: ends.1.into(),
                span: ends.2.into(),
                maps,
            },
        );
    }
}

fn random_base(rng: &mut ChaCha8Rng, p: &GenParams, point: bool) -> Vec<String> {
    let n = if point { 1 } else { rng.gen_range(1..=p.max_set.min(2)) };
    (0..n).map(|i| format!("s{i}")).collect()
}

fn random_set(rng: &mut ChaCha8Rng, prefix: &str, max: usize, nbase: usize) -> GenSet {
    let n = rng.gen_range(1..=max);
    GenSet {
        labels: (0..n).map(|i| format!("{prefix}{i}")).collect(),
        anchor: (0..n).map(|_| rng.gen_range(0..nbase)).collect(),
    }
}

/// Random apex over `x × y`: pairs with equal anchors. With `mirror` set to the
/// legs of an apex over `y × x`, most elements reverse one of its elements.
fn random_apex(
    rng: &mut ChaCha8Rng,
    prefix: &str,
    max: usize,
    (x, y): (&GenSet, &GenSet),
    mirror: Option<(&[usize], &[usize])>,
) -> (GenSet, Vec<usize>, Vec<usize>) {
    let n = rng.gen_range(max.min(1)..=max);
    let (mut l, mut r, mut anchor) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        if let Some((ml, mr)) = mirror.filter(|(ml, _)| !ml.is_empty() && rng.gen_bool(0.6)) {
            let k = rng.gen_range(0..ml.len());
            l.push(mr[k]);
            r.push(ml[k]);
            anchor.push(x.anchor[mr[k]]);
            continue;
        }
        let i = rng.gen_range(0..x.len());
        let ys: Vec<usize> = (0..y.len()).filter(|&j| y.anchor[j] == x.anchor[i]).collect();
        if let Some(&j) = ys.choose(rng) {
            l.push(i);
            r.push(j);
            anchor.push(x.anchor[i]);
        }
    }
    let labels = (0..l.len()).map(|i| format!("{prefix}{i}")).collect();
    (GenSet { labels, anchor }, l, r)
}

/// Lifts a set along a random map into `target`.
fn random_lift(rng: &mut ChaCha8Rng, prefix: &str, max: usize, target: &GenSet) -> (GenSet, Vec<usize>) {
    let n = rng.gen_range(1..=max);
    let graph: Vec<usize> = (0..n).map(|_| rng.gen_range(0..target.len())).collect();
    let labels = (0..n).map(|i| format!("{prefix}{i}")).collect();
    let anchor = graph.iter().map(|&j| target.anchor[j]).collect();
    (GenSet { labels, anchor }, graph)
}

/// Lifts an apex of the lower row through `f` and `g`. With `mirror` set to an
/// upper apex over `Y × X` (legs and projection), most elements reverse one of its
/// elements whenever the lower row allows it.
fn lift_apex(
    rng: &mut ChaCha8Rng,
    prefix: &str,
    max: usize,
    lower: (&GenSet, &[usize], &[usize]),
    (f, g): (&[usize], &[usize]),
    mirror: Option<(&[usize], &[usize])>,
) -> (GenSet, Vec<usize>, Vec<usize>, Vec<usize>) {
    let (c2, l2, r2) = lower;
    let (mut l, mut r, mut p, mut anchor) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    if c2.len() > 0 {
        for _ in 0..rng.gen_range(max.min(1)..=max) {
            if let Some((ml, mr)) = mirror.filter(|(ml, _)| !ml.is_empty() && rng.gen_bool(0.6)) {
                let k = rng.gen_range(0..ml.len());
                let (i, j) = (mr[k], ml[k]);
                let over: Vec<usize> = (0..c2.len())
                    .filter(|&t| l2[t] == f[i] && r2[t] == g[j])
                    .collect();
                if let Some(&t) = over.choose(rng) {
                    l.push(i);
                    r.push(j);
                    p.push(t);
                    anchor.push(c2.anchor[t]);
                    continue;
                }
            }
            let k = rng.gen_range(0..c2.len());
            let xs: Vec<usize> = (0..f.len()).filter(|&i| f[i] == l2[k]).collect();
            let ys: Vec<usize> = (0..g.len()).filter(|&j| g[j] == r2[k]).collect();
            if let (Some(&i), Some(&j)) = (xs.choose(rng), ys.choose(rng)) {
                l.push(i);
                r.push(j);
                p.push(k);
                anchor.push(c2.anchor[k]);
            }
        }
    }
    let labels = (0..l.len()).map(|i| format!("{prefix}{i}")).collect();
    (GenSet { labels, anchor }, l, r, p)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random pair of commuting squares with morphisms `u`, `v` on the upper row.
///
/// Names: sets `X Y X2 Y2 C D C2 D2`, maps `f g p q` and span legs, sheaves `L M`,
/// spans `c d c2 d2`, morphisms `u v`.
pub fn generate(seed: u64, p: &GenParams, modulus: u64, with_base_change: bool) -> Result<InstanceFile> {
    p.validate()?;
    let mut rng = rng_for(seed);
    let base = random_base(&mut rng, p, false);
    let nb = base.len();
    let m = p.max_set;
    let x2 = random_set(&mut rng, "xp", m, nb);
    let y2 = random_set(&mut rng, "yp", m, nb);
    let (c2, cl2, cr2) = random_apex(&mut rng, "cp", m, (&x2, &y2), None);
    let (d2, dl2, dr2) = random_apex(&mut rng, "dp", m, (&y2, &x2), Some((&cl2, &cr2)));
    let (x, f) = random_lift(&mut rng, "x", m, &x2);
    let (y, g) = random_lift(&mut rng, "y", m, &y2);
    let (c, cl, cr, pm) = lift_apex(&mut rng, "c", m, (&c2, &cl2, &cr2), (&f, &g), None);
    let (d, dl, dr, qm) = lift_apex(&mut rng, "d", m, (&d2, &dl2, &dr2), (&g, &f), Some((&cl, &cr)));
    let palette = degree_palette(&mut rng, p);
    let lx: Vec<IntComplex> = (0..x.len()).map(|_| random_complex(&mut rng, p, &palette)).collect();
    let my: Vec<IntComplex> = (0..y.len()).map(|_| random_complex(&mut rng, p, &palette)).collect();
    let u: Vec<_> = (0..c.len())
        .map(|k| random_chain_map(&mut rng, &lx[cl[k]], &my[cr[k]]))
        .collect();
    let v: Vec<_> = (0..d.len())
        .map(|k| random_chain_map(&mut rng, &my[dl[k]], &lx[dr[k]]))
        .collect();

    let mut b = Builder::new(modulus, base.clone());
    for (name, s) in [("X", &x), ("Y", &y), ("X2", &x2), ("Y2", &y2), ("C", &c), ("D", &d), ("C2", &c2), ("D2", &d2)] {
        b.set(name, s);
    }
    b.map("f", (&x, "X"), (&x2, "X2"), &f);
    b.map("g", (&y, "Y"), (&y2, "Y2"), &g);
    b.map("p", (&c, "C"), (&c2, "C2"), &pm);
    b.map("q", (&d, "D"), (&d2, "D2"), &qm);
    b.map("cl", (&c, "C"), (&x, "X"), &cl);
    b.map("cr", (&c, "C"), (&y, "Y"), &cr);
    b.map("dl", (&d, "D"), (&y, "Y"), &dl);
    b.map("dr", (&d, "D"), (&x, "X"), &dr);
    b.map("cl2", (&c2, "C2"), (&x2, "X2"), &cl2);
    b.map("cr2", (&c2, "C2"), (&y2, "Y2"), &cr2);
    b.map("dl2", (&d2, "D2"), (&y2, "Y2"), &dl2);
    b.map("dr2", (&d2, "D2"), (&x2, "X2"), &dr2);
    b.sheaf("L", (&x, "X"), &lx);
    b.sheaf("M", (&y, "Y"), &my);
    b.span("c", ["X", "Y", "C", "cl", "cr"]);
    b.span("d", ["Y", "X", "D", "dl", "dr"]);
    b.span("c2", ["X2", "Y2", "C2", "cl2", "cr2"]);
    b.span("d2", ["Y2", "X2", "D2", "dl2", "dr2"]);
    b.morphism("u", ("L", "M", "c"), &c, u);
    b.morphism("v", ("M", "L", "d"), &d, v);
    b.file.lv = Some(LvSpec {
        f: "f".into(),
        p: "p".into(),
        g: "g".into(),
        q: "q".into(),
        c: "c".into(),
        c2: "c2".into(),
        d: "d".into(),
        d2: "d2".into(),
        u: "u".into(),
        v: "v".into(),
    });
    if with_base_change {
        let n = rng.gen_range(0..=m.min(3));
        let labels: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        b.file.base_change = Some(BaseChangeSpec {
            g: labels
                .iter()
                .map(|l| (l.clone(), base.choose(&mut rng).unwrap().clone()))
                .collect(),
            base: labels,
        });
    }
    Ok(b.file)
}

/// A random endomorphism `e` of `(X, L)` over a one-point base.
///
/// Names: set `X`, apex `E`, legs `el er`, sheaf `L`, span `e`, morphism `e`.
pub fn generate_endo(seed: u64, p: &GenParams, modulus: u64) -> Result<InstanceFile> {
    p.validate()?;
    let mut rng = rng_for(seed);
    let base = random_base(&mut rng, p, true);
    let x = random_set(&mut rng, "x", p.max_set, 1);
    let (e, el, er) = random_apex(&mut rng, "e", p.max_set, (&x, &x), None);
    let palette = degree_palette(&mut rng, p);
    let lx: Vec<IntComplex> = (0..x.len()).map(|_| random_complex(&mut rng, p, &palette)).collect();
    let comps = (0..e.len())
        .map(|k| random_chain_map(&mut rng, &lx[el[k]], &lx[er[k]]))
        .collect();
    let mut b = Builder::new(modulus, base);
    b.set("X", &x);
    b.set("E", &e);
    b.map("el", (&e, "E"), (&x, "X"), &el);
    b.map("er", (&e, "E"), (&x, "X"), &er);
    b.sheaf("L", (&x, "X"), &lx);
    b.span("e", ["X", "X", "E", "el", "er"]);
    b.morphism("e", ("L", "L", "e"), &e, comps);
    Ok(b.file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_commutation() {
        // Chain maps Q -> Q with Q = Λ --2--> Λ are the scalars.
        let q = IntComplex {
            ranks: BTreeMap::from([(0, 1), (1, 1)]),
            d: BTreeMap::from([(0, vec![vec![2]])]),
        };
        let mut rng = rng_for(3);
        for _ in 0..10 {
            let f = random_chain_map(&mut rng, &q, &q);
            assert_eq!(f[&0], f[&1]);
        }
    }

    #[test]
    fn unit_upper_inverse() {
        let mut rng = rng_for(9);
        let (p, inv) = unit_upper(&mut rng, 3);
        let id = mul(&p, &inv, 3, 3);
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn generation_is_deterministic() {
        let p = GenParams::default();
        assert_eq!(
            generate(42, &p, 0, true).unwrap(),
            generate(42, &p, 0, true).unwrap()
        );
    }
}

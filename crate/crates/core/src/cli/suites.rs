use std::collections::BTreeMap;
use std::time::Instant;

use indexmap::IndexMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basefunc::{functor_coherence, functor_preserves, push_square, BaseChange};
use crate::chainalg::{homotopy_perturb, ChainMap, Complex, Homotopy, Matrix, Ring};
use crate::corrcat::{
    cc_cell_check, cc_compose, cc_iso_search, comparison_cell, f_natural, shriek_push, CCCell,
    CCMorphism, CCObject,
};
use crate::dualtrace::{
    biduality, canonical_bidual, characteristic_class, global_fixed_point, local_terms, make_dual,
    pairing, pairing_functorial, pairing_functorial_split, pairing_symmetry, trace,
    trace_symmetry, LvData,
};
use crate::error::{Error, Result};
use crate::finspan::OverMap;
use crate::sheafops::{omega_push, push, OmegaClass, Sheaf};

use super::generate::{generate, generate_endo, GenParams};
use super::report::{Check, Report};
use super::resolve::Instance;

/// Suite names accepted by [`run_suite`], besides `all`.
pub const SUITES: &[&str] = &[
    "lv",
    "global",
    "triangle",
    "symmetry",
    "basechange",
    "oracle",
    "cc",
    "homotopy",
    "uniqueness",
];

/// Largest chain-map space searched per component by the uniqueness suite.
const MAX_LIFT_DIM: usize = 12;

fn run(i: u64, name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    Check::from_result(i, name, f())
}

/// Ordered pairs `(u, v)` with `u : A -> B` and `v : B -> A`, in name order.
fn pairs(inst: &Instance) -> Vec<(&CCMorphism, &CCMorphism)> {
    if let Some(lv) = &inst.lv {
        return vec![(&lv.u, &lv.v)];
    }
    let ms: Vec<&CCMorphism> = inst.morphisms.values().collect();
    let mut out = Vec::new();
    for (k, u) in ms.iter().enumerate() {
        for v in &ms[k + 1..] {
            if u.source() == v.target() && u.target() == v.source() {
                out.push((*u, *v));
            }
        }
    }
    out
}

pub fn check_lv(i: u64, lv: &LvData) -> Vec<Check> {
    vec![
        run(i, "lv", || {
            let r = pairing_functorial(lv)?;
            Ok(Check::classes(i, "lv", r.holds, &r.lhs, &r.rhs))
        }),
        run(i, "lv-split", || {
            let r = pairing_functorial_split(lv)?;
            Ok(Check::from_bool(i, "lv-split", r.holds, "split route disagrees"))
        }),
    ]
}

pub fn check_global(i: u64, inst: &Instance) -> Vec<Check> {
    inst.endomorphisms()
        .map(|(_, e)| {
            run(i, "global", || {
                let g = global_fixed_point(e, &make_dual(e.source())?)?;
                Ok(Check::classes(i, "global", g.holds, &g.local, &g.global))
            })
        })
        .collect()
}

pub fn check_duality(i: u64, inst: &Instance) -> Vec<Check> {
    let mut out = Vec::new();
    for l in inst.sheaves.values() {
        let a = CCObject::new(l.clone());
        out.push(run(i, "triangle", || {
            let d = make_dual(&a)?;
            for cell in [&d.left_triangle, &d.right_triangle] {
                cc_cell_check(cell)?;
                if !cell.is_invertible() {
                    return Ok(Check::fail(i, "triangle", "triangle cell is not invertible"));
                }
            }
            Ok(Check::pass(i, "triangle"))
        }));
        out.push(run(i, "bidual", || {
            let bd = biduality(&make_dual(&a)?)?;
            let ok = cc_iso_search(&bd, &canonical_bidual(&a)?).is_some();
            Ok(Check::from_bool(i, "bidual", ok, "biduality differs from the identification"))
        }));
    }
    out
}

pub fn check_symmetry(i: u64, inst: &Instance) -> Vec<Check> {
    let mut out = Vec::new();
    for (u, v) in pairs(inst) {
        out.push(run(i, "symmetry", || {
            let s = pairing_symmetry(u, v, &make_dual(u.source())?, &make_dual(v.source())?)?;
            Ok(Check::classes(i, "symmetry", s.holds, &s.forward.class, &s.backward.class))
        }));
        out.push(run(i, "trace-symmetry", || {
            trace_symmetry(u, v, &make_dual(u.source())?, &make_dual(v.source())?)?;
            Ok(Check::pass(i, "trace-symmetry"))
        }));
    }
    out
}

pub fn check_oracle(i: u64, inst: &Instance) -> Vec<Check> {
    pairs(inst)
        .into_iter()
        .map(|(u, v)| {
            run(i, "oracle", || {
                let p = pairing(u, v, &make_dual(u.source())?)?.class;
                let o = local_terms(u, v)?;
                Ok(Check::classes(i, "oracle", p == o, &p, &o))
            })
        })
        .collect()
}

fn euler_class(l: &Sheaf, cc: &OmegaClass) -> Result<OmegaClass> {
    let values = (0..cc.carrier().len())
        .map(|k| l.stalk(cc.carrier().factors(k).unwrap().1).euler_characteristic())
        .collect();
    OmegaClass::new(l.ring(), cc.carrier().clone(), values)
}

fn cc_of(l: &Sheaf) -> Result<OmegaClass> {
    Ok(characteristic_class(&make_dual(&CCObject::new(l.clone()))?)?.class)
}

pub fn check_cc(i: u64, inst: &Instance) -> Vec<Check> {
    let mut out = Vec::new();
    for l in inst.sheaves.values() {
        out.push(run(i, "cc", || {
            let cc = cc_of(l)?;
            let chi = euler_class(l, &cc)?;
            Ok(Check::classes(i, "cc", cc == chi, &cc, &chi))
        }));
        for f in inst.maps.values().filter(|f| f.source() == l.carrier()) {
            out.push(run(i, "cc-push", || {
                let cc = cc_of(l)?;
                let pushed = cc_of(&push(f, l)?)?;
                let graph = (0..cc.carrier().len())
                    .map(|k| {
                        let y = f.apply(cc.carrier().factors(k).unwrap().1);
                        pushed.carrier().position(y, y).unwrap()
                    })
                    .collect();
                let map = OverMap::new(cc.carrier().clone(), pushed.carrier().clone(), graph)?;
                let lhs = omega_push(&map, &cc)?;
                Ok(Check::classes(i, "cc-push", lhs == pushed, &lhs, &pushed))
            }));
        }
    }
    out
}

pub fn check_base_change(i: u64, inst: &Instance, bc: &BaseChange) -> Vec<Check> {
    let mut out = Vec::new();
    for (u, v) in pairs(inst) {
        out.push(run(i, "basechange", || {
            let p = functor_preserves(bc, u, v)?;
            Ok(Check::from_bool(i, "basechange", p.all(), &format!("{p:?}")))
        }));
        out.push(run(i, "coherence", || {
            let (c, t) = functor_coherence(bc, u, v)?;
            Ok(Check::from_bool(i, "coherence", c && t, "composition or tensor not preserved"))
        }));
    }
    if let Some(lv) = &inst.lv {
        out.push(run(i, "push-square", || {
            let ok = push_square(bc, &lv.upper, &lv.u)? && push_square(bc, &lv.lower, &lv.v)?;
            Ok(Check::from_bool(i, "push-square", ok, "pull and push do not commute"))
        }));
    }
    out
}

fn random_homotopy(rng: &mut ChaCha8Rng, e: &ChainMap) -> Result<Homotopy> {
    let (a, b) = (e.source(), e.target());
    let ring = a.ring();
    let components = a
        .degrees()
        .filter(|&n| b.rank(n - 1) > 0)
        .map(|n| {
            let (r, c) = (b.rank(n - 1), a.rank(n));
            let data = (0..r * c).map(|_| rng.gen_range(-3..=3)).collect();
            Ok((n, Matrix::new(ring, r, c, data)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Homotopy::new(a.clone(), b.clone(), components)
}

pub fn check_homotopy(i: u64, inst: &Instance, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_4077);
    inst.endomorphisms()
        .map(|(_, e)| {
            let mut one = || -> Result<Check> {
                let d = make_dual(e.source())?;
                let maps = e
                    .maps()
                    .iter()
                    .map(|m| homotopy_perturb(m, &random_homotopy(&mut rng, m)?))
                    .collect::<Result<Vec<_>>>()?;
                let before = trace(e, &d)?.class;
                let after = trace(&e.with_maps(maps)?, &d)?.class;
                Ok(Check::classes(i, "homotopy", before == after, &before, &after))
            };
            Check::from_result(i, "homotopy", one())
        })
        .collect()
}

/// Basis over `ℤ/2` of the chain maps `a -> b`.
fn chain_maps_mod2(a: &Complex, b: &Complex) -> Vec<BTreeMap<i32, Vec<u8>>> {
    let degrees: Vec<i32> = a.degrees().filter(|&n| b.rank(n) > 0).collect();
    let mut offset = BTreeMap::new();
    let mut cols = 0;
    for &n in &degrees {
        offset.insert(n, cols);
        cols += b.rank(n) * a.rank(n);
    }
    let var = |n: i32, r: usize, c: usize| offset[&n] + r * a.rank(n) + c;
    let mut eqs: Vec<Vec<u8>> = Vec::new();
    let mut check: Vec<i32> = a.degrees().flat_map(|n| [n - 1, n]).collect();
    check.sort_unstable();
    check.dedup();
    for n in check {
        let (db, da) = (b.d(n), a.d(n));
        for r in 0..b.rank(n + 1) {
            for c in 0..a.rank(n) {
                let mut row = vec![0u8; cols];
                if offset.contains_key(&n) {
                    for k in 0..b.rank(n) {
                        row[var(n, k, c)] ^= (db.get(r, k) & 1) as u8;
                    }
                }
                if offset.contains_key(&(n + 1)) {
                    for k in 0..a.rank(n + 1) {
                        row[var(n + 1, r, k)] ^= (da.get(k, c) & 1) as u8;
                    }
                }
                eqs.push(row);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(p) = (top..eqs.len()).find(|&r| eqs[r][c] == 1) else {
            continue;
        };
        eqs.swap(top, p);
        for r in 0..eqs.len() {
            if r != top && eqs[r][c] == 1 {
                let pivot = eqs[top].clone();
                for (x, y) in eqs[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0u8; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = eqs[r][fc];
            }
            degrees
                .iter()
                .map(|&n| (n, v[offset[&n]..offset[&n] + b.rank(n) * a.rank(n)].to_vec()))
                .collect()
        })
        .collect()
}

fn combination(a: &Complex, b: &Complex, basis: &[BTreeMap<i32, Vec<u8>>], mask: u64) -> Result<ChainMap> {
    let ring = Ring::new(2)?;
    let mut comps = BTreeMap::new();
    for n in a.degrees().filter(|&n| b.rank(n) > 0) {
        let mut data = vec![0i64; b.rank(n) * a.rank(n)];
        for (k, v) in basis.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (x, y) in data.iter_mut().zip(&v[&n]) {
                    *x ^= *y as i64;
                }
            }
        }
        comps.insert(n, Matrix::new(ring, b.rank(n), a.rank(n), data)?);
    }
    ChainMap::new(a.clone(), b.clone(), comps)
}

/// Largest per-component lift space of the instance, as a dimension over `ℤ/2`.
pub fn lift_dim(lv: &LvData) -> Result<usize> {
    let pushed = shriek_push(&lv.upper, &lv.u)?;
    Ok(pushed
        .maps()
        .iter()
        .map(|m| chain_maps_mod2(m.source(), m.target()).len())
        .max()
        .unwrap_or(0))
}

/// Searches every chain map at every component of the lift and counts the ones
/// whose comparison cell passes `cc_cell_check`.
pub fn check_uniqueness(i: u64, lv: &LvData) -> Check {
    let name = "uniqueness";
    run(i, name, || {
        let diag = &lv.upper;
        let pushed = shriek_push(diag, &lv.u)?;
        let graph = comparison_cell(diag, &lv.u, &pushed)?.graph().graph().to_vec();
        let src = cc_compose(&lv.u, &f_natural(&diag.g, lv.u.target().sheaf())?)?;
        let fnat = f_natural(&diag.f, lv.u.source().sheaf())?;
        let passes = |cand: &CCMorphism| -> Result<bool> {
            let dst = cc_compose(&fnat, cand)?;
            Ok(cc_cell_check(&CCCell::from_graph(&src, &dst, graph.clone())?).is_ok())
        };
        if !passes(&pushed)? {
            return Ok(Check::fail(i, name, "the pushed morphism fails the cell check"));
        }
        for (k, m) in pushed.maps().iter().enumerate() {
            let basis = chain_maps_mod2(m.source(), m.target());
            if basis.len() > MAX_LIFT_DIM {
                return Err(Error::Param(format!("lift space of dimension {}", basis.len())));
            }
            let mut found = Vec::new();
            for mask in 0..1u64 << basis.len() {
                let cand = combination(m.source(), m.target(), &basis, mask)?;
                let mut maps = pushed.maps().to_vec();
                maps[k] = cand.clone();
                if passes(&pushed.with_maps(maps)?)? {
                    found.push(cand);
                }
            }
            if found.len() != 1 || &found[0] != m {
                return Ok(Check::fail(
                    i,
                    name,
                    format!(
                        "{} passing lifts at {}",
                        found.len(),
                        pushed.apex().label(k)
                    ),
                ));
            }
        }
        Ok(Check::pass(i, name))
    })
}

/// Compares traces with the values recorded in the instance file.
pub fn check_expect(i: u64, inst: &Instance) -> Vec<Check> {
    inst.expect
        .iter()
        .map(|(name, want)| {
            run(i, "expect", || {
                let e = &inst.morphisms[name];
                let got = trace(e, &make_dual(e.source())?)?.class;
                let values: IndexMap<String, i64> = got.entries().into_iter().collect();
                let want: IndexMap<String, i64> = want
                    .iter()
                    .map(|(k, v)| (k.clone(), e.ring().normalize(*v)))
                    .collect();
                let ok = values.len() == want.len()
                    && values.iter().all(|(k, v)| want.get(k) == Some(v));
                Ok(Check {
                    lhs: Some(values),
                    rhs: Some(want),
                    ..Check::from_bool(i, "expect", ok, &format!("trace of {name} differs from the record"))
                })
            })
        })
        .collect()
}

/// Every check that applies to a resolved instance.
pub fn check_instance(inst: &Instance, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    if let Some(lv) = &inst.lv {
        out.extend(check_lv(0, lv));
    }
    out.extend(check_oracle(0, inst));
    out.extend(check_symmetry(0, inst));
    out.extend(check_duality(0, inst));
    out.extend(check_cc(0, inst));
    if inst.base.len() == 1 {
        out.extend(check_global(0, inst));
    }
    out.extend(check_homotopy(0, inst, seed));
    if let Some(bc) = &inst.base_change {
        out.extend(check_base_change(0, inst, bc));
    }
    out.extend(check_expect(0, inst));
    out
}

pub fn uniqueness_params(p: &GenParams) -> GenParams {
    GenParams {
        max_set: p.max_set.min(3),
        max_rank: p.max_rank.min(2),
        modulus: Some(2),
        ..*p
    }
}

/// Draws the uniqueness instance for `seed`, redrawing while the lift space is
/// trivial or too large to search.
pub fn uniqueness_instance(seed: u64, p: &GenParams) -> Result<Instance> {
    let mut fallback = None;
    for attempt in 0u64..64 {
        let s = seed ^ attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let inst = Instance::resolve(&generate(s, p, 2, false)?)?;
        match lift_dim(inst.lv.as_ref().unwrap())? {
            0 => {
                fallback.get_or_insert(inst);
            }
            d if d <= MAX_LIFT_DIM => return Ok(inst),
            _ => {}
        }
    }
    fallback.ok_or_else(|| Error::Param("no instance with a searchable lift space".into()))
}

fn suite_checks(suite: &str, i: u64, seed: u64, p: &GenParams) -> Result<Vec<Check>> {
    let m = p.modulus_for(i);
    let lv_inst = || Instance::resolve(&generate(seed, p, m, false)?);
    let endo_inst = || Instance::resolve(&generate_endo(seed, p, m)?);
    Ok(match suite {
        "lv" => check_lv(i, lv_inst()?.lv.as_ref().unwrap()),
        "global" => check_global(i, &endo_inst()?),
        "triangle" => check_duality(i, &lv_inst()?),
        "symmetry" => check_symmetry(i, &lv_inst()?),
        "oracle" => check_oracle(i, &lv_inst()?),
        "cc" => check_cc(i, &lv_inst()?),
        "homotopy" => check_homotopy(i, &endo_inst()?, seed),
        "basechange" => {
            let inst = Instance::resolve(&generate(seed, p, m, true)?)?;
            check_base_change(i, &inst, inst.base_change.as_ref().unwrap())
        }
        "uniqueness" => {
            let up = uniqueness_params(p);
            vec![check_uniqueness(i, uniqueness_instance(seed, &up)?.lv.as_ref().unwrap())]
        }
        other => return Err(Error::Param(format!("unknown suite {other:?}"))),
    })
}

/// Runs `count` seeded instances of a suite; instance `i` uses seed `seed + i`.
pub fn run_suite(name: &str, seed: u64, count: u64, p: &GenParams) -> Result<Report> {
    p.validate()?;
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(Error::Param(format!("unknown suite {other:?}"))),
    };
    let start = Instant::now();
    let mut checks = Vec::new();
    for i in 0..count {
        let s = seed.wrapping_add(i);
        for suite in &names {
            match suite_checks(suite, i, s, p) {
                Ok(c) => checks.extend(c),
                Err(e) => checks.push(Check::error(i, suite, &e)),
            }
        }
    }
    let mut report = Report::new(name, Some(seed), count, Some(*p), checks);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

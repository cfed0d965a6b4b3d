//! Acceptance suite: one line per criterion, then a single assertion.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use arkit::arq::{knit, Category, DEFAULT_MAX_OBJECTS};
use arkit::artrans::{ar_sequence, ar_sequence_f, ar_sequence_s, tau_s, TauMethod};
use arkit::cli::{verify, Property, RunConfig};
use arkit::exactlin::rng;
use arkit::morcat::{in_mono, mimo};
use arkit::repmod::{decompose, factor_through, is_iso, is_projective, omega, omega_inv, tau, ModMap, Rep};
use arkit::stable::{check_tau_period, predicted_orders, random_chain, serre_period, tau_s_period};
use common::*;

type Outcome = Result<String, String>;

fn ok_if(pass: bool, detail: String) -> Outcome {
    if pass {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run_verify(p: Property, algebra: &str, n: usize, tweak: impl FnOnce(&mut RunConfig)) -> Result<(usize, usize), String> {
    let mut cfg = RunConfig::new(algebra, n);
    tweak(&mut cfg);
    let rep = verify(p, &cfg).map_err(|e| format!("{} {algebra} n={n}: {e}", p.name()))?;
    let passed = rep.instances.iter().filter(|i| i.pass).count();
    if rep.all_pass && !rep.instances.is_empty() {
        Ok((passed, rep.instances.len()))
    } else {
        let bad: Vec<_> = rep.instances.iter().filter(|i| !i.pass).take(3).map(|i| format!("{} {}!={}", i.object, i.lhs, i.rhs)).collect();
        Err(format!("{} {algebra} n={n}: {passed}/{} pass; {bad:?}", p.name(), rep.instances.len()))
    }
}

fn tau_table() -> Outcome {
    let a = alg("nakayama:1,2");
    let table = [("AS0", "S00"), ("S00", "SSS"), ("SSS", "AAS"), ("AAS", "AS0"), ("SS0", "ASS"), ("ASS", "SS0")];
    for (src, dst) in table {
        let x = load_chain(&a, &format!("s3-kx2/{src}.json"));
        let want = load_chain(&a, &format!("s3-kx2/{dst}.json"));
        for m in [TauMethod::MimoTauCok, TauMethod::KerTaumCok] {
            if !is_iso(&tau_s(&x, m, 0), &want, 0) {
                return Err(format!("tau_S {src} != {dst} via {m:?}"));
            }
        }
    }
    Ok("6/6 rows, both methods".into())
}

fn same_summands(x: &Rep, want: &[Rep]) -> bool {
    let mut got: Vec<Rep> = decompose(x, 0).unwrap().into_iter().map(|s| s.rep).collect();
    if got.len() != want.len() {
        return false;
    }
    for w in want {
        match got.iter().position(|g| is_iso(g, w, 0)) {
            Some(k) => {
                got.swap_remove(k);
            }
            None => return false,
        }
    }
    true
}

fn ar_sequences() -> Outcome {
    let a = alg("nakayama:1,2");
    let l = |p: &str| load_chain(&a, p);
    let cases = [
        ("Mor", ar_sequence(&l("mor3-kx2/SSA.json"), 0), l("mor3-kx2/0AS.json"), vec![l("mor3-kx2/00S.json"), l("mor3-kx2/S-SA-A.json")]),
        ("F", ar_sequence_f(&l("f3-kx2/SSA.json"), 0), l("f3-kx2/0SS.json"), vec![l("f3-kx2/00S.json"), l("f3-kx2/SAA.json")]),
        ("S", ar_sequence_s(&l("s3-kx2/ASS.json"), 0), l("s3-kx2/SS0.json"), vec![l("s3-kx2/SSS.json"), l("s3-kx2/AS0.json")]),
    ];
    for (name, seq, left, middle) in cases {
        let seq = seq.map_err(|e| format!("{name}: {e}"))?;
        let exact = seq.f.is_mono() && seq.g.is_epi() && seq.g.after(&seq.f).is_zero()
            && seq.left.total_dim() + seq.right.total_dim() == seq.middle.total_dim();
        let split = factor_through(&ModMap::identity(&seq.right), &seq.g).is_some();
        if !exact || split || !is_iso(&seq.left, &left, 0) || !same_summands(&seq.middle, &middle) {
            return Err(format!("{name} sequence differs"));
        }
    }
    Ok("Mor3, F3, S3 sequences with displayed middle terms".into())
}

fn counts() -> Outcome {
    let cases = [
        ("nakayama:1,2", 2, (2, 3)),
        ("nakayama:1,2", 3, (3, 6)),
        ("nakayama:1,2", 4, (4, 10)),
        ("nakayama:1,3", 3, (3, 24)),
        ("nakayama:1,3", 4, (4, 80)),
        ("nakayama:2,2", 2, (4, 6)),
        ("nakayama:2,2", 3, (6, 12)),
    ];
    let mut seen = Vec::new();
    for (name, n, want) in cases {
        let q = knit(&alg(name), n, Category::S, DEFAULT_MAX_OBJECTS, 0).map_err(|e| e.to_string())?;
        let got = (q.projective_count(), q.nonprojective_count());
        if got != want || !q.mesh_consistent() {
            return Err(format!("{name} n={n}: got {got:?}, want {want:?}"));
        }
        seen.push(format!("{got:?}"));
    }
    Ok(seen.join(" "))
}

type Edges = BTreeSet<(String, String)>;

fn pairs(v: &serde_json::Value) -> Edges {
    v.as_array().unwrap().iter().map(|p| (p[0].as_str().unwrap().to_string(), p[1].as_str().unwrap().to_string())).collect()
}

fn quiver_shapes() -> Outcome {
    let names = ["s3-kx2", "s4-kx2", "s3-kx3", "s2-lambda22", "s3-lambda22", "mod-selfinj3"];
    for name in names {
        let text = std::fs::read_to_string(fixture(&format!("quivers/{name}.json"))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let a = alg(v["algebra"].as_str().unwrap());
        let (n, cat) = match v["n"].as_u64() {
            Some(n) => (n as usize, Category::S),
            None => (1, Category::Mod),
        };
        let q = knit(&a, n, cat, DEFAULT_MAX_OBJECTS, 0).map_err(|e| e.to_string())?;
        let lab = |i: usize| q.nodes[i].label.clone();
        let nodes: BTreeSet<String> = q.nodes.iter().map(|n| n.label.clone()).collect();
        let fig_nodes: BTreeSet<String> = v["nodes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
        let arrows: Edges = q.arrows.iter().map(|&(s, t, _)| (lab(s), lab(t))).collect();
        let taus: Edges = q.tau.iter().map(|&(s, t)| (lab(s), lab(t))).collect();
        let simple = q.arrows.iter().all(|a| a.2 == 1) && nodes.len() == q.nodes.len();
        if nodes != fig_nodes || arrows != pairs(&v["arrows"]) || taus != pairs(&v["tau"]) || !simple {
            return Err(format!("{name} differs from its figure"));
        }
    }
    Ok(format!("{} figures match", names.len()))
}

fn orders_check() -> Outcome {
    let mut n = 0;
    for m in 1..=3 {
        for t in 2..=4 {
            let name = format!("nakayama:{m},{t}");
            let a = alg(&name);
            let q = knit(&a, 1, Category::Mod, DEFAULT_MAX_OBJECTS, 0).map_err(|e| e.to_string())?;
            let mods: Vec<Rep> = q.nodes.into_iter().filter(|x| !x.projective).map(|x| x.object).collect();
            let got = arkit::stable::orders(&mods, 0).map_err(|e| e.to_string())?;
            let want = if t == 2 { (m, m) } else { (m, 2 * m / num_integer::gcd(m, t)) };
            if got != want || predicted_orders(m, t) != want {
                return Err(format!("{name}: orders {got:?}, want {want:?}"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} algebras"))
}

/// Non-projective indecomposables met along τ_S-orbits of random chains.
fn orbit_samples(name: &str, n: usize, count: usize, seed: u64) -> Vec<Rep> {
    let a = alg(name);
    let cat = modules(&a);
    let mut r = rng(seed);
    let mut out: Vec<Rep> = Vec::new();
    while out.len() < count {
        let x = mimo(&random_chain(&a, n, &cat, &mut r), seed);
        let Some(start) = decompose(&x, seed).unwrap().into_iter().map(|s| s.rep).find(|s| !is_projective(s)) else {
            continue;
        };
        let mut y = start;
        for _ in 0..count {
            if !out.iter().any(|o| is_iso(o, &y, seed)) {
                out.push(y.clone());
            }
            if out.len() == count {
                break;
            }
            y = tau_s(&y, TauMethod::MimoTauCok, seed);
        }
    }
    out
}

fn tau_periods() -> Outcome {
    let mut lines = Vec::new();
    for (m, t, n) in [(1, 2, 2), (1, 2, 3), (1, 3, 2), (2, 2, 2), (2, 2, 3)] {
        let (ok, total) = run_verify(Property::TauPeriod, &format!("nakayama:{m},{t}"), n, |_| {})?;
        lines.push(format!("({m},{t},{n}):{ok}/{total}@{}", tau_s_period(m, n)));
    }
    for t in [3, 4] {
        let name = format!("nakayama:1,{t}");
        let k = tau_s_period(1, 2);
        for x in orbit_samples(&name, 2, 5, 0) {
            let c = check_tau_period(&x, k, TauMethod::MimoTauCok, 0).map_err(|e| e.to_string())?;
            if !c.pass || !in_mono(&x) {
                return Err(format!("{name}: tau_S^{k} moves a sample"));
            }
        }
        lines.push(format!("(1,{t},2):5 orbit samples@{k}"));
    }
    Ok(lines.join(" "))
}

fn rotation_suite() -> Outcome {
    let mut total = 0;
    for name in ["nakayama:1,3", "nakayama:2,2"] {
        for n in [2, 3] {
            for p in [Property::Rotation, Property::RotationPeriod] {
                let (ok, _) = run_verify(p, name, n, |c| c.samples = 50)?;
                total += ok;
            }
        }
    }
    Ok(format!("{total} random chains"))
}

fn closed_formulas() -> Outcome {
    let mut total = 0;
    for (name, n) in [("nakayama:1,3", 2), ("nakayama:2,2", 3)] {
        for p in [Property::TauRotation, Property::ClosedFormula, Property::SerreFormula] {
            total += run_verify(p, name, n, |_| {})?.0;
        }
    }
    let (a, _) = run_verify(Property::SerrePeriod, "nakayama:2,2", 3, |_| {})?;
    let (b, _) = run_verify(Property::SerrePeriod, "nakayama:2,2", 2, |_| {})?;
    ok_if(serre_period(2, 2, 3) == 4, format!("{total} formula instances; Serre periods 4 ({a}) and {} ({b})", serre_period(2, 2, 2)))
}

fn three_vertex_example() -> Outcome {
    let a = alg("selfinj:3");
    let q = knit(&a, 1, Category::Mod, DEFAULT_MAX_OBJECTS, 0).map_err(|e| e.to_string())?;
    let mods: Vec<Rep> = q.nodes.into_iter().filter(|x| !x.projective).map(|x| x.object).collect();
    for m in &mods {
        if !is_iso(&tau(m), &omega_inv(m), 0) {
            return Err("tau M differs from the cosyzygy".into());
        }
        let mut y = m.clone();
        for _ in 0..6 {
            y = omega(&y);
        }
        if !is_iso(&y, m, 0) {
            return Err("sixth syzygy differs".into());
        }
    }
    for x in orbit_samples("selfinj:3", 3, 5, 0) {
        if !check_tau_period(&x, 4, TauMethod::MimoTauCok, 0).map_err(|e| e.to_string())?.pass {
            return Err("tau_S^4 moves an S_3 sample".into());
        }
    }
    ok_if(mods.len() == 9, format!("{} distinct classes (12 drawn positions); 5 S_3 samples", mods.len()))
}

fn foundations() -> Outcome {
    let algs = ["nakayama:1,2", "nakayama:1,3", "nakayama:2,2"];
    for seed in SEEDS {
        exactlin_invariants(seed)?;
        for name in algs {
            let a = alg(name);
            for n in 2..=4 {
                functor_identities(&a, n, seed).map_err(|e| format!("{name} n={n} seed={seed}: {e}"))?;
                classification(&a, n, seed).map_err(|e| format!("{name} n={n}: {e}"))?;
            }
            for n in 2..=3 {
                let tag = |e: String| format!("{name} n={n} seed={seed}: {e}");
                mimo_seed_independence(&a, n, seed).map_err(tag)?;
                mimo_fixed_points(&a, n, seed).map_err(tag)?;
                padding_split(&a, n, seed).map_err(tag)?;
            }
        }
    }
    Ok(format!("{} seeds x {} algebras", SEEDS.len(), algs.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("tau_S table", tau_table, 1),
        ("AR sequences", ar_sequences, 5),
        ("indecomposable counts", counts, 180),
        ("quiver shapes", quiver_shapes, 180),
        ("tau and syzygy orders", orders_check, 10),
        ("tau_S periods", tau_periods, 60),
        ("rotation suite", rotation_suite, 60),
        ("closed formulas and Serre periods", closed_formulas, 60),
        ("three-vertex selfinjective algebra", three_vertex_example, 30),
        ("foundations", foundations, 60),
    ];
    let mut failed = Vec::new();
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let el = t.elapsed();
        let over = el > Duration::from_secs(*budget);
        let (tag, detail) = match (&r, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget}s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        // straight to the stderr handle so the lines survive output capture
        let _ = writeln!(std::io::stderr(), "criterion {:>2} {tag}: {name} ({:.2}s) {detail}", k + 1, el.as_secs_f64());
        if tag == "FAIL" {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

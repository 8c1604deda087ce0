//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spreadlab::planar::{
    is_planar_2to1, is_planar_direct, planar_to_presemifield, psi_image_check, q_from_component,
    q_from_pair, rtcs_build, rtcs_check, FieldMap, RtcsSpec,
};
use spreadlab::quadform::{is_permutation_brute, is_permutation_via_rank, FormType};
use spreadlab::spread::{
    build_even_n3, build_typec, build_typeh, check_key_lemma, check_key_lemma_pair,
    even3_delta_admissible, kernel_of_spread, symplectic_check, OrbitKind,
};
use spreadlab::verify::{
    hermite_coefficient, outside_mid, run_experiment, ExperimentSpec, Verdict, VerdictReport,
};
use spreadlab::{Elt, QPoly};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn confirmed(r: &VerdictReport) -> Result<(), String> {
    ensure(
        r.verdict == Verdict::Confirmed && r.scanned == r.candidates,
        format!("verdict {:?}, scanned {}/{}", r.verdict, r.scanned, r.candidates),
    )
}

fn experiment(name: &str, jobs: usize, f: impl FnOnce(&mut ExperimentSpec)) -> Result<VerdictReport, String> {
    let mut s = ExperimentSpec::new(name);
    s.jobs = jobs;
    f(&mut s);
    run_experiment(&s).map_err(err)
}

fn ac1() -> Check {
    let start = Instant::now();
    let c = ctx(3, 1, 3);
    let d = c.find_deltas().map_err(err)?[0];
    let s = build_typec(&c, 1, d).map_err(err)?;
    ensure(s.components().len() == 28, "expected 28 components")?;
    for w in s.components() {
        ensure(w.dim_p() == 3 && w.elements(&c).len() == 27, "component is not 3-dimensional")?;
    }
    ensure(s.is_verified(), "coverage check failed")?;
    ensure(kernel_of_spread(&s).map_err(err)? == 3, "kernel is not 3")?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("28 components partition the 728 nonzero vectors, kernel 3 ({:.2?})", start.elapsed()))
}

fn ac2() -> Check {
    let start = Instant::now();
    let c = ctx(3, 1, 3);
    let deltas = c.find_deltas().map_err(err)?;
    let etas = c.find_etas(1).map_err(err)?;
    let mut built = 0;
    for &d in &deltas {
        for &eta in &etas {
            let s = build_typeh(&c, 1, d, eta).map_err(err)?;
            let w = &s.components()[0];
            let o1 = spreadlab::spread::orbit(&c, w, OrbitKind::Beta2);
            ensure(o1.len() == 14 && s.components().len() == 28, "orbit sizes differ from 14 + 14")?;
            ensure(spreadlab::spread::is_transitive(&c, &s, eta), "group is not transitive")?;
            built += 1;
        }
    }
    ensure(built > 0, "no admissible (delta, eta)")?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{built} admissible (delta, eta) pairs, all verified and transitive ({:.2?})", start.elapsed()))
}

fn ac3() -> Check {
    let start = Instant::now();
    let c = ctx(2, 1, 3);
    let (tr, id) = (QPoly::trace(&c), QPoly::identity(&c));
    let (mut good, mut bad) = (0, 0);
    for d in outside_mid(&c) {
        if even3_delta_admissible(&c, d) {
            let s = build_even_n3(&c, d).map_err(err)?;
            ensure(s.components().len() == 9, "expected 9 components")?;
            ensure(symplectic_check(&s, d).map_err(err)?, "symplectic check failed")?;
            good += 1;
        } else {
            ensure(build_even_n3(&c, d).is_err(), "inadmissible delta accepted")?;
            let q = q_from_pair(&tr, &id, d).map_err(err)?;
            ensure(!is_permutation_brute(&q), "inadmissible delta gives a permutation")?;
            bad += 1;
        }
    }
    ensure(good > 0, "no admissible delta")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{good} admissible, {bad} rejected ({:.2?})", start.elapsed()))
}

fn ac4() -> Check {
    let start = Instant::now();
    let r = experiment("no-typec-odd", 1, |s| {
        s.q = Some(3);
        s.n = Some(2);
    })?;
    confirmed(&r)?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} candidates, no counterexample ({:.2?})", r.scanned, start.elapsed()))
}

fn ac5() -> Check {
    let start = Instant::now();
    let r = experiment("no-typec-even8", 1, |s| s.q = Some(2))?;
    confirmed(&r)?;
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{} candidates, {} permuting all with kernel > F_q, single worker ({:.2?})",
        r.scanned,
        r.counters.get("permutations"),
        start.elapsed()
    ))
}

fn ac6() -> Check {
    let start = Instant::now();
    let r = experiment("even-n3-classification", 1, |s| s.q = Some(2))?;
    confirmed(&r)?;
    ensure(r.counters.get("permutation_pairs") > 0, "no permutation witnesses")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} pairs agree, {} permutations ({:.2?})",
        r.scanned,
        r.counters.get("permutation_pairs"),
        start.elapsed()
    ))
}

fn ac7() -> Check {
    let start = Instant::now();
    let c = ctx(2, 1, 3);
    let deltas = outside_mid(&c);
    ensure(deltas.len() == 56, "expected 56 deltas")?;
    for &d in &deltas {
        let (brute, closed) = hermite_coefficient(&c, d).map_err(err)?;
        ensure(brute == closed, format!("mismatch at delta {d}"))?;
        ensure(!brute.is_zero(), format!("zero coefficient at delta {d}"))?;
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("56 deltas, closed form = brute coefficient != 0 ({:.2?})", start.elapsed()))
}

fn ac8() -> Check {
    let start = Instant::now();
    let r = experiment("planar-dichotomy", 1, |s| {
        s.q = Some(3);
        s.m = Some(3);
        s.k = Some(1);
        s.sample = Some(10_000);
    })?;
    confirmed(&r)?;
    ensure(r.counters.get("planar") == 1457, "boundary pairs are not all planar")?;
    within(start, Duration::from_secs(600))?;
    Ok(format!("1457 boundary pairs planar, 10000 sampled pairs not ({:.2?})", start.elapsed()))
}

fn ac9() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let c333 = ctx(3, 1, 3);
    let c214 = ctx(2, 1, 4);
    let c213 = ctx(2, 1, 3);

    let mut planar = 0;
    for _ in 0..1000 {
        let f = FieldMap::Do(rand_do(&c333, &mut rng));
        let d = is_planar_direct(&f).map_err(err)?;
        ensure(d == is_planar_2to1(&f).map_err(err)?, "(a) planarity tests disagree")?;
        planar += d as u32;
    }
    let mut perms = 0;
    for _ in 0..1000 {
        let q = rand_do(&c214, &mut rng);
        let b = is_permutation_brute(&q);
        ensure(b == is_permutation_via_rank(&q).map_err(err)?, "(b) permutation tests disagree")?;
        perms += b as u32;
    }
    for c in [&c333, &c214] {
        for _ in 0..1000 {
            let l = rand_poly(c, &mut rng);
            ensure(l.kernel_dim() == brute_kernel_dim(&l), "(c) kernel_dim differs from brute force")?;
        }
    }
    let (f2, f4) = (ctx(2, 1, 1), ctx(2, 2, 1));
    for i in 0..1000 {
        let c = if i % 2 == 0 { &f2 } else { &f4 };
        let dim = 1 + i % 5;
        let f = rand_form(c, dim, &mut rng);
        let cl = f.classify_char2().map_err(err)?;
        let eps = match cl.form_type {
            FormType::Hyperbolic => 1,
            FormType::Elliptic => -1,
            _ => 0,
        };
        ensure(f.count_zeros() == n0_formula(c.q(), dim, cl.r, cl.s, eps), "(d) zero count differs from N0")?;
    }
    for _ in 0..100 {
        let l = rand_poly(&c333, &mut rng);
        let d = rand_outside_mid(&c333, &mut rng);
        let r = check_key_lemma(&l, d).map_err(|e| format!("(e) {e}"))?;
        ensure(r.agrees(), "(e) key lemma disagreement at (3,3)")?;
        let l = rand_poly(&c213, &mut rng);
        let d = rand_outside_mid(&c213, &mut rng);
        let r = check_key_lemma_pair(&l, &QPoly::identity(&c213), d).map_err(|e| format!("(e) {e}"))?;
        ensure(r.agrees(), "(e) key lemma disagreement at (2,3)")?;
    }
    ensure(psi_image_check(&ctx(3, 1, 2)).map_err(err)?, "(f) psi image check failed")?;
    Ok(format!(
        "(a)-(f) agree; {planar} planar and {perms} permutation samples ({:.2?})",
        start.elapsed()
    ))
}

fn ac10() -> Check {
    let start = Instant::now();
    let c = ctx(3, 1, 1);
    let m = c.least_nonsquare(c.base_field()).map_err(err)?;
    let spec = RtcsSpec {
        ctx: c.clone(),
        t: c.gamma(),
        g: vec![],
        f: vec![m],
    };
    ensure(rtcs_check(&spec).map_err(err)?, "rtcs_check rejected the Dickson pair")?;
    let s = rtcs_build(&spec).map_err(err)?;
    ensure(s.middle_nucleus().map_err(err)? >= 3, "middle nucleus smaller than q")?;

    let c = ctx(3, 1, 3);
    let (q, qn) = (c.q(), c.qn());
    let mut seen = [0u32; 2];
    for d in c.find_deltas().map_err(err)? {
        for u in c.elements(c.mid_field()).skip(1) {
            for i in 0..3 {
                let l = QPoly::monomial(&c, i, u).map_err(err)?;
                let f = q_from_component(&l, d).map_err(err)?;
                if !is_planar_2to1(&FieldMap::Do(f.clone())).map_err(err)? {
                    continue;
                }
                let s = planar_to_presemifield(&f).map_err(err)?.normalize(Elt::ONE).map_err(err)?;
                let nu = s.nucleus().map_err(err)?;
                ensure(nu == q || nu == qn, format!("nucleus {nu} not in {{q, q^n}}"))?;
                seen[(nu == qn) as usize] += 1;
            }
        }
    }
    Ok(format!(
        "Dickson pair verified; nuclei of {} planar instances: {} of size q, {} of size q^n ({:.2?})",
        seen[0] + seen[1],
        seen[0],
        seen[1],
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(msg) => println!("{name} PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

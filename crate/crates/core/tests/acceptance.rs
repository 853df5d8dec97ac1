//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use derham_core::derham::auto_pole_cap;
use derham_core::jacobian::{complete_intersection_series, milnor_profile};
use derham_core::koszul::{build_derham_differential, build_jacobian_differential};
use derham_core::report::TheoremStatus;
use derham_core::ring::rat;
use derham_core::{
    derham_homology, explicit_kernel_cycle, filtration, theta, verify_main_theorem, Hypersurface,
    LocalizedVector, PoleCap, PoleOrder, Rational, Sampler, VerificationReport, VerifyOptions,
};

use oracle::{jacobian_series, monomial_count, PoleOracle, FIXTURES};

/// Every dimension and rank is exact; the only tolerances are wall-clock limits.
const RUNTIME_LIMITS: [Duration; 4] = [
    Duration::from_secs(1),
    Duration::from_secs(5),
    Duration::from_secs(120),
    Duration::from_secs(5),
];
const SEED: u64 = 20_240_917;
const BOUNDARIES_PER_SLICE: usize = 100;
const RANDOM_CYCLES: usize = 100;
const POLE_ORDER_INSTANCES: usize = 500;
const COMPLEX_SLICES: usize = 50;
const NORMAL_FORM_VECTORS: usize = 200;
const HILBERT_ORACLE_BOUND: i64 = 30;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn derham_dim(r: &VerificationReport, p: usize) -> Option<usize> {
    r.derham.iter().find(|b| b.p == p).and_then(|b| b.dim)
}

fn timed_verify(k: usize) -> Result<(VerificationReport, Duration), String> {
    let f = FIXTURES[k].polynomial();
    let start = Instant::now();
    let r = verify_main_theorem(&f, VerifyOptions::default()).map_err(|e| e.to_string())?;
    Ok((r, start.elapsed()))
}

fn main_theorem(
    k: usize,
    expected: &[(usize, usize)],
) -> Result<(VerificationReport, String), String> {
    let (r, elapsed) = timed_verify(k)?;
    ensure(r.theorem.status == TheoremStatus::Verified, || {
        format!(
            "status {} ({:?})",
            r.theorem.status.as_str(),
            r.theorem.reason
        )
    })?;
    for &(p, dim) in expected {
        ensure(derham_dim(&r, p) == Some(dim), || {
            format!("dim H_{p} = {:?}, expected {dim}", derham_dim(&r, p))
        })?;
        let row = r
            .theorem
            .translation
            .iter()
            .find(|t| t.homological_index == p);
        ensure(
            row.is_some_and(|t| t.cohomological_index == r.input.n - p && t.dim == Some(dim)),
            || format!("translation row for H_{p} missing or wrong"),
        )?;
    }
    ensure(elapsed < RUNTIME_LIMITS[k], || {
        format!("runtime {elapsed:?} exceeds {:?}", RUNTIME_LIMITS[k])
    })?;
    let dims: Vec<String> = expected.iter().map(|(p, d)| format!("H_{p}={d}")).collect();
    Ok((
        r,
        format!(
            "{} verified, {}, {elapsed:.2?}",
            FIXTURES[k].name,
            dims.join(" ")
        ),
    ))
}

fn criterion_1() -> Outcome {
    let (r, msg) = main_theorem(0, &[(2, 1)])?;
    let h1 = r
        .theorem
        .translation
        .iter()
        .find(|t| t.cohomological_index == 1);
    ensure(h1.is_some_and(|t| t.dim == Some(1)), || {
        "H^1 is not one-dimensional".into()
    })?;
    Ok(msg)
}

fn criterion_2() -> Outcome {
    let (r, msg) = main_theorem(1, &[(2, 1)])?;
    let hilbert = &r.milnor.as_ref().ok_or("no Milnor block")?.hilbert;
    let nonzero: Vec<usize> = hilbert.iter().copied().take_while(|&d| d > 0).collect();
    ensure(
        nonzero == [1, 3, 3, 1] && hilbert[4..].iter().all(|&d| d == 0),
        || format!("Milnor Hilbert function {hilbert:?}"),
    )?;
    Ok(format!("{msg}, Milnor (1,3,3,1)"))
}

fn criterion_3() -> Outcome {
    Ok(main_theorem(2, &[(2, 0), (3, 1)])?.1)
}

fn criterion_4() -> Outcome {
    let (r, msg) = main_theorem(3, &[(2, 1)])?;
    let h = FIXTURES[3].hypersurface();
    let socle = h.n() as i64 * h.degree() - 2 * h.omega();
    let top = r.milnor.as_ref().and_then(|m| m.top_degree);
    ensure(socle == 6 && top == Some(socle), || {
        format!("top degree {top:?}, n·d − 2ω = {socle}")
    })?;
    Ok(format!("{msg}, Milnor top degree 6"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for fx in &FIXTURES {
        let h = fx.hypersurface();
        let n = h.n();
        for p in 1..n {
            let hom = derham_homology(&h, p, -h.omega(), PoleCap::Auto, None)
                .map_err(|e| e.to_string())?;
            let r = filtration(&h, &hom, None).map_err(|e| format!("{} p={p}: {e}", fx.name))?;
            let tag = format!("{} p={p}", fx.name);
            ensure(r.f0_is_zero && r.monotone, || {
                format!("{tag}: F_0 ≠ 0 or not monotone")
            })?;
            let sum: usize = r.levels.iter().map(|l| l.quotient_dim).sum();
            ensure(r.sum_matches_dim && sum == hom.dim, || {
                format!("{tag}: Σ dim F_ν/F_ν−1 = {sum} ≠ {}", hom.dim)
            })?;
            for l in &r.levels {
                let must_inject = l.nu >= 2 || (l.nu == 1 && p != n - 1);
                ensure(!must_inject || l.eta_rank == l.quotient_dim, || {
                    format!(
                        "{tag}: η_{} has rank {} on a {}-dimensional piece",
                        l.nu, l.eta_rank, l.quotient_dim
                    )
                })?;
            }
            ensure(r.injective, || format!("{tag}: injectivity flag false"))?;
            for (i, rep) in hom.class_basis().iter().enumerate() {
                let mut coords = vec![rat(0); hom.dim];
                coords[i] = rat(1);
                let by_basis = hom.class_pole_order(&coords);
                let by_membership = hom
                    .class_pole_order_by_membership(&h, &coords)
                    .map_err(|e| e.to_string())?;
                ensure(
                    by_basis == by_membership
                        && by_basis == PoleOrder::Finite(rep.level)
                        && rep.level >= 1,
                    || format!("{tag}: class {i} pole order {by_basis} vs {by_membership}"),
                )?;
            }
            if p == n - 1 {
                let level1 = &r.levels[1];
                ensure(
                    r.eta1_kernel_dim == Some(1) && level1.quotient_dim - level1.eta_rank == 1,
                    || format!("{tag}: dim ker η_1 = {:?}", r.eta1_kernel_dim),
                )?;
                let xi = explicit_kernel_cycle(&h).map_err(|e| e.to_string())?;
                let coords = hom.class_coordinates(&h, &xi).map_err(|e| e.to_string())?;
                let img = theta(&h, &xi).map_err(|e| e.to_string())?;
                ensure(
                    img.is_zero()
                        && hom.class_pole_order(&coords) == PoleOrder::Finite(1)
                        && r.explicit_cycle_generates_kernel == Some(true),
                    || format!("{tag}: explicit cycle does not generate ker η_1"),
                )?;
            }
            ensure(r.holds(), || format!("{tag}: report does not hold"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (fixture, p) filtrations, exact"))
}

fn criterion_6() -> Outcome {
    let mut s = Sampler::new(SEED);
    let mut total = 0;
    for fx in &FIXTURES {
        let h = fx.hypersurface();
        for p in 1..h.n() {
            let cap = auto_pole_cap(&h, p, None).map_err(|e| e.to_string())?;
            let mut found = 0;
            let mut attempts = 0;
            while found < BOUNDARIES_PER_SLICE {
                attempts += 1;
                ensure(attempts < 20 * BOUNDARIES_PER_SLICE, || {
                    format!("{} p={p}: could not sample boundaries", fx.name)
                })?;
                let pole = s.rng().gen_range(1..=cap);
                let Some(b) = s.boundary(&h, p, -h.omega(), pole) else {
                    continue;
                };
                let img = theta(&h, &b).map_err(|e| format!("{} p={p}: {e}", fx.name))?;
                ensure(img.is_zero(), || {
                    format!("{} p={p}: θ of a boundary is nonzero", fx.name)
                })?;
                found += 1;
            }
            total += found;
        }
    }
    Ok(format!("{total}/{total} boundaries have θ = 0"))
}

fn criterion_7() -> Outcome {
    let mut s = Sampler::new(SEED + 7);
    let hs: Vec<Hypersurface> = FIXTURES.iter().map(|f| f.hypersurface()).collect();
    let mut slices = Vec::new();
    for (k, h) in hs.iter().enumerate() {
        for p in 1..h.n() {
            let hom = derham_homology(h, p, -h.omega(), PoleCap::Auto, None)
                .map_err(|e| e.to_string())?;
            if (0..hom.pole_cap).any(|c| !hom.cycle_basis(c).is_empty()) {
                slices.push((k, p, hom));
            }
        }
    }
    let mut done = 0;
    let mut attempts = 0;
    while done < RANDOM_CYCLES {
        attempts += 1;
        ensure(attempts < 10 * RANDOM_CYCLES, || {
            "could not sample cycles".into()
        })?;
        let (k, p, hom) = &slices[s.rng().gen_range(0..slices.len())];
        let (h, name) = (&hs[*k], FIXTURES[*k].name);
        let Some(z) = s.cycle(h, hom) else { continue };
        let c = PoleOracle::new(h)
            .pole_order(&z)
            .ok_or("sampled the zero cycle")?;
        ensure(c >= 1, || format!("{name} p={p}: nonzero cycle with L = 0"))?;
        let img = theta(h, &z).map_err(|e| e.to_string())?;
        let want = (c as i64 + *p as i64) * h.degree() - h.omega();
        ensure(img.t == want && img.pole == c, || {
            format!(
                "{name} p={p}: θ landed in degree {} for L = {c}, expected {want}",
                img.t
            )
        })?;
        done += 1;
    }
    Ok(format!("{done}/{done} cycles land in degree (L+p)d−ω"))
}

fn pole(o: Option<u32>) -> PoleOrder {
    o.map_or(PoleOrder::NegInfinity, PoleOrder::Finite)
}

fn criterion_8() -> Outcome {
    let mut s = Sampler::new(SEED + 8);
    let hs: Vec<Hypersurface> = FIXTURES.iter().map(|f| f.hypersurface()).collect();
    let mut oracles: Vec<PoleOracle> = hs.iter().map(PoleOracle::new).collect();
    let mut clause_hits = [0usize; 7];
    for i in 0..POLE_ORDER_INSTANCES {
        let k = s.rng().gen_range(0..hs.len());
        let h = &hs[k];
        let o = &mut oracles[k];
        let p = s.rng().gen_range(0..=h.n());
        let max_pole = if h.n() == 4 { 2 } else { 3 };
        let r = s.rng().gen_range(2..=4);
        let xs: Vec<LocalizedVector> = (0..r)
            .map(|_| s.localized(h, p, -h.omega(), max_pole))
            .collect();
        let ls: Vec<PoleOrder> = xs.iter().map(|x| pole(o.pole_order(x))).collect();
        let fail = |clause: usize| format!("instance {i}: clause ({clause}) fails");
        for (x, l) in xs.iter().zip(&ls) {
            ensure(x.pole_order(h) == *l, || {
                format!("instance {i}: library L disagrees with the oracle")
            })?;
        }
        let sum = pole(o.pole_order(&xs[0].add(h, &xs[1]).unwrap()));
        let max = ls[0].max(ls[1]);
        if ls[0] < ls[1] || ls[1] < ls[0] {
            ensure(sum == max, || fail(1))?;
            clause_hits[0] += 1;
        } else {
            ensure(sum <= ls[1], || fail(2))?;
            clause_hits[1] += 1;
        }
        ensure(sum <= max, || fail(3))?;
        clause_hits[2] += 1;
        let alpha = s.coefficient();
        ensure(pole(o.pole_order(&xs[0].scale(&alpha))) == ls[0], || {
            fail(4)
        })?;
        clause_hits[3] += 1;
        let any_alpha = if s.rng().gen_bool(0.3) {
            rat(0)
        } else {
            s.coefficient()
        };
        ensure(
            pole(o.pole_order(&xs[0].scale(&any_alpha))) <= ls[0],
            || fail(5),
        )?;
        clause_hits[4] += 1;
        let (a1, a2) = (
            s.coefficient(),
            if s.rng().gen_bool(0.2) {
                rat(0)
            } else {
                s.coefficient()
            },
        );
        let two = xs[0].combine(h, &a1, &xs[1], &a2).unwrap();
        ensure(pole(o.pole_order(&two)) <= max, || fail(6))?;
        clause_hits[5] += 1;
        let alphas: Vec<Rational> = (0..r).map(|_| s.coefficient()).collect();
        let terms: Vec<(Rational, &LocalizedVector)> = alphas.into_iter().zip(&xs).collect();
        let all = LocalizedVector::linear_combination(h, &terms).unwrap();
        let max_all = ls.iter().copied().max().unwrap();
        ensure(pole(o.pole_order(&all)) <= max_all, || fail(7))?;
        clause_hits[6] += 1;
    }
    ensure(clause_hits[0] > 0 && clause_hits[1] > 0, || {
        "strict and equal cases were not both sampled".into()
    })?;
    Ok(format!(
        "{POLE_ORDER_INSTANCES}/{POLE_ORDER_INSTANCES} instances, clause (1)/(2) split {}/{}",
        clause_hits[0], clause_hits[1]
    ))
}

fn criterion_9() -> Outcome {
    let mut s = Sampler::new(SEED + 9);
    let hs: Vec<Hypersurface> = FIXTURES.iter().map(|f| f.hypersurface()).collect();

    let mut nonzero_pairs = 0;
    for i in 0..COMPLEX_SLICES {
        let h = &hs[s.rng().gen_range(0..hs.len())];
        let n = h.n();
        let p = s.rng().gen_range(2..=n);
        let c = s.rng().gen_range(0..=2);
        let j = s.rng().gen_range(-h.omega() - 2..=2);
        let d1 = build_derham_differential(h, p, c, j).matrix;
        let d0 = build_derham_differential(h, p - 1, c + 1, j).matrix;
        ensure(d0.mul(&d1).is_zero(), || format!("slice {i}: φ∘φ ≠ 0"))?;
        let t = s.rng().gen_range(0..=(n as i64 + 1) * h.degree());
        let e1 = build_jacobian_differential(h, p, t).matrix;
        let e0 = build_jacobian_differential(h, p - 1, t).matrix;
        ensure(e0.mul(&e1).is_zero(), || format!("slice {i}: ψ∘ψ ≠ 0"))?;
        nonzero_pairs += (!d1.is_zero() && !d0.is_zero()) as usize;
    }
    ensure(nonzero_pairs > COMPLEX_SLICES / 4, || {
        "too few nontrivial slices sampled".into()
    })?;

    for i in 0..NORMAL_FORM_VECTORS {
        let h = &hs[s.rng().gen_range(0..hs.len())];
        let mut o = PoleOracle::new(h);
        let p = s.rng().gen_range(0..=h.n());
        let v = s.localized(h, p, -h.omega(), 2);
        let nf = v.normal_form(h);
        let other = v.with_pole(h, v.pole() + s.rng().gen_range(1..=2)).unwrap();
        ensure(nf.normal_form(h) == nf && nf.is_normal_form(h), || {
            format!("vector {i}: not idempotent")
        })?;
        ensure(other.normal_form(h) == nf, || {
            format!("vector {i}: two representations differ")
        })?;
        let expected_pole = o.pole_order(&v).unwrap_or(0);
        ensure(nf.pole() == expected_pole, || {
            format!("vector {i}: pole {} vs oracle {expected_pole}", nf.pole())
        })?;
    }

    for (fx, h) in FIXTURES.iter().zip(&hs) {
        let m = h.milnor();
        let bound = m.scan_bound as usize;
        let want = jacobian_series(h.degree(), fx.weights, bound);
        let got: Vec<i64> = m.hilbert.iter().map(|&d| d as i64).collect();
        ensure(got == want, || {
            format!("{}: Milnor {got:?} vs product series {want:?}", fx.name)
        })?;
        ensure(
            complete_intersection_series(h.degree(), fx.weights, bound as i64) == want,
            || format!("{}: library series disagrees", fx.name),
        )?;
        for t in 0..=HILBERT_ORACLE_BOUND {
            let dim = h.ctx().monomial_basis(t).len();
            ensure(dim == monomial_count(fx.weights, t), || {
                format!("{}: dim R_{t} = {dim}", fx.name)
            })?;
        }
        if h.n() == 3 {
            let long = milnor_profile(h, HILBERT_ORACLE_BOUND).map_err(|e| e.to_string())?;
            let want = jacobian_series(h.degree(), fx.weights, HILBERT_ORACLE_BOUND as usize);
            let got: Vec<i64> = long.hilbert.iter().map(|&d| d as i64).collect();
            ensure(got == want, || {
                format!(
                    "{}: Milnor function up to {HILBERT_ORACLE_BOUND} differs",
                    fx.name
                )
            })?;
        }
    }
    Ok(format!(
        "{COMPLEX_SLICES} slices φ∘φ = ψ∘ψ = 0, {NORMAL_FORM_VECTORS} normal forms, Hilbert functions match to t = {HILBERT_ORACLE_BOUND}"
    ))
}

fn criterion_10() -> Outcome {
    let mut checked = Vec::new();
    for fx in &FIXTURES[..2] {
        let h = fx.hypersurface();
        let omega = h.omega();
        for p in 1..h.n() {
            let cap = auto_pole_cap(&h, p, None).map_err(|e| e.to_string())?;
            for j in [-omega - 1, -omega + 1, 0] {
                let hom = derham_homology(&h, p, j, PoleCap::Fixed(cap), None)
                    .map_err(|e| format!("{} p={p} j={j}: {e}", fx.name))?;
                ensure(hom.dim == 0, || {
                    format!("{} p={p} j={j}: dim {}", fx.name, hom.dim)
                })?;
                checked.push(j);
            }
        }
    }
    Ok(format!(
        "{} slices at j ∈ {{−ω−1, −ω+1, 0}} vanish",
        checked.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("main theorem, quadric", criterion_1),
        ("main theorem, Fermat cubic", criterion_2),
        ("main theorem, Fermat quartic", criterion_3),
        ("main theorem, weighted", criterion_4),
        ("filtration theorem", criterion_5),
        ("θ kills boundaries", criterion_6),
        ("θ degree", criterion_7),
        ("pole-order calculus", criterion_8),
        ("structural suite", criterion_9),
        ("concentration spot check", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS  {name}: {detail} [{elapsed:.2?}]",
                i + 1
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {}: FAIL  {name}: {detail} [{elapsed:.2?}]",
                    i + 1
                );
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, with timings.
//! Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use p2walls::error::CliResult;
use p2walls::tables::{small_rank_slopes, TableReport, table3_row, verify_table1, verify_table2, verify_table3};
use p2walls_core::ample::u1;
use p2walls_core::chern::{disc_lattice, euler_pair, hilbert_p, sym_pair};
use p2walls_core::exactmath::{farey_pred, int, rat, Int, QuadVal, Rat};
use p2walls_core::exceptional::delta;
use p2walls_core::extremal::{curve_decomposition, extremal_triple, minimal_triple, CurveKind};
use p2walls_core::walls::{exclusion_search, gieseker_wall, potential_wall, rank_bound_radius_sq, Wall};
use p2walls_core::{ample_cone, primary_ray, ChernChar};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn table(report: CliResult<TableReport>, expected_rows: usize, limit: Duration) -> Outcome {
    let report = report.map_err(|e| e.to_string())?;
    ensure(report.passed(), || report.render())?;
    ensure(report.matched() == expected_rows, || {
        format!("{} of {expected_rows} rows matched", report.matched())
    })?;
    within(report.elapsed, limit)?;
    Ok(format!("{}/{} checks match", report.matched(), report.checked()))
}

fn criterion_1() -> Outcome {
    table(verify_table1(), 15, Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let out = table(verify_table2(), 15, Duration::from_secs(1))?;
    let chi = |r: i64, mu: Rat| p2walls_core::chi_chain(&Int::from(r), &mu).map(|(_, c)| c);
    ensure(chi(6, rat(1, 2)) == Ok(Int::from(-2)), || "chi(6,1/2) != -2".into())?;
    ensure(chi(6, rat(2, 3)) == Ok(Int::from(-4)), || "chi(6,2/3) != -4".into())?;
    Ok(out)
}

fn criterion_3() -> Outcome {
    // 21 Δ₀/x⁺ rows, 6 integer-slope Δ₁ rows and the Δ₁(6, 1/3) row.
    table(verify_table3(), 28, Duration::from_secs(2))
}

fn inv(r: i64, mu: Rat, disc: Rat) -> ChernChar {
    ChernChar::from_invariants(r, mu, disc).expect("valid character")
}

fn special() -> ChernChar {
    inv(6, rat(1, 3), rat(13, 18))
}

fn sporadic(r: i64) -> ChernChar {
    let mu = rat(1, r);
    inv(r, mu.clone(), hilbert_p(&-mu.clone()) + mu)
}

fn criterion_4() -> Outcome {
    let err = |e: p2walls_core::Error| e.to_string();
    let wall = potential_wall(&inv(5, int(0), int(0)), &special()).map_err(err)?;
    ensure(wall.center() == Some(&int(-2)) && wall.radius_sq() == Some(&int(4)), || {
        format!("special wall {wall:?}")
    })?;
    let bound = rank_bound_radius_sq(&special()).map_err(err)?;
    ensure(bound == rat(13, 7), || format!("rank bound {bound}"))?;
    for r in 2..=6 {
        let w = potential_wall(&inv(2, int(0), int(0)), &sporadic(r)).map_err(err)?;
        let half = rat(2 * r - 1, 2);
        ensure(w.radius_sq() == Some(&(&half * &half)), || format!("r={r}: {w:?}"))?;
        ensure(w.x_plus() == Some(QuadVal::from(int(0))), || format!("r={r}: x+ {:?}", w.x_plus()))?;
    }
    let extremal = extremal_triple(&special()).map_err(err)?;
    let w = potential_wall(extremal.sub(), &special()).map_err(err)?;
    ensure(
        matches!(&w, Wall::Empty { radius_sq, .. } if *radius_sq == rat(-3, 4)),
        || format!("extremal wall of the special character: {w:?}"),
    )?;
    Ok("special wall, rank bound 13/7, 5 sporadic radii, empty extremal wall".into())
}

/// Table 3 characters `(r, μ, Δ₀)`.
fn table3_characters() -> Result<Vec<ChernChar>, String> {
    small_rank_slopes()
        .iter()
        .map(|(r, mu)| {
            let row = table3_row(r, mu).map_err(|e| e.to_string())?;
            ChernChar::from_invariants(r.clone(), mu.clone(), row.delta_zero).map_err(|e| e.to_string())
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for base in table3_characters()? {
        for k in 0..=3u64 {
            let xi = base.elem_mod(k).map_err(|e| e.to_string())?;
            let u = u1(&xi).map_err(|e| e.to_string())?;
            let ray = primary_ray(&xi).map_err(|e| e.to_string())?;
            let destabilizer = gieseker_wall(&xi).map_err(|e| e.to_string())?.destabilizer;
            let label = xi.to_invariant_string();
            ensure(sym_pair(&xi, &u).is_zero(), || format!("{label}: (ξ, u₁) ≠ 0"))?;
            ensure(sym_pair(&xi, &ray).is_zero(), || format!("{label}: (ξ, ray) ≠ 0"))?;
            ensure(sym_pair(&destabilizer, &ray).is_zero(), || format!("{label}: (ξ′, ray) ≠ 0"))?;
            ensure(ray.rank().is_negative(), || format!("{label}: ray rank {}", ray.rank()))?;
            // u₁ has rank zero and the ray does not, so they are independent.
            ensure(u.rank().is_zero(), || format!("{label}: u₁ rank {}", u.rank()))?;
            count += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{count} characters"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let floor = int(0);
    let mut cases = Vec::new();
    for xi in table3_characters()? {
        let wall = gieseker_wall(&xi).map_err(|e| e.to_string())?.wall;
        cases.push((xi, wall));
    }
    let wall = potential_wall(&inv(5, int(0), int(0)), &special()).map_err(|e| e.to_string())?;
    cases.push((special(), wall));
    for (xi, wall) in &cases {
        let found = exclusion_search(xi, wall, &floor).map_err(|e| e.to_string())?;
        ensure(found.is_empty(), || {
            format!("{}: {} larger walls, first {}", xi.to_invariant_string(), found.len(), found[0].to_invariant_string())
        })?;
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{} cases empty", cases.len()))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn positive_height(r: i64, c1: i64, k: i64) -> ChernChar {
    let mu = rat(c1, r);
    let lattice = disc_lattice(&Int::from(r), &Int::from(c1)).unwrap();
    let disc = lattice.offset(&lattice.first_above(&delta(&mu).unwrap()), k);
    ChernChar::from_invariants(r, mu, disc).unwrap()
}

fn small_rank_char() -> impl Strategy<Value = ChernChar> {
    (1i64..=6, -12i64..=12, 0i64..6).prop_map(|(r, c1, k)| positive_height(r, c1, k))
}

/// Compact reruns of the randomized suites; the full versions with their
/// oracles live in the core crate's property tests.
fn criterion_7() -> Outcome {
    run_property("delta", (-500i64..500, 1i64..60, -5i64..5), |(n, d, s)| {
        let mu = rat(n, d);
        let base = delta(&mu).unwrap();
        prop_assert_eq!(delta(&(&mu + int(s))).unwrap(), base.clone());
        prop_assert_eq!(delta(&-mu).unwrap(), base);
        Ok(())
    })?;
    run_property("euler", (small_rank_char(), small_rank_char()), |(f, e)| {
        let (mf, df) = f.invariants().unwrap();
        let (me, de) = e.invariants().unwrap();
        let rr = Rat::from_integer(f.rank() * e.rank());
        prop_assert_eq!(euler_pair(&f, &e), rr * (hilbert_p(&(me - mf)) - df - de));
        Ok(())
    })?;
    run_property("farey", (-200i64..200, 1i64..40, 1i64..40), |(p, q, n)| {
        let mu = rat(p, q);
        let pred = farey_pred(&mu, &Int::from(n));
        let brute = (1..=n)
            .map(|b| (&mu * int(b)).ceil() / int(b) - rat(1, b))
            .max()
            .unwrap();
        prop_assert_eq!(pred.clone(), brute);
        if mu.denom() <= &Int::from(n) {
            prop_assert_eq!(mu.numer() * pred.denom() - mu.denom() * pred.numer(), Int::from(1));
        }
        Ok(())
    })?;
    run_property("wall", (small_rank_char(), small_rank_char()), |(x, y)| {
        let (m1, d1) = x.invariants().unwrap();
        let (m2, d2) = y.invariants().unwrap();
        prop_assume!(m1 != m2);
        let s = (&m1 + &m2) * rat(1, 2) - (&d1 - &d2) / (&m1 - &m2);
        let rho_sq = (&s - &m1) * (&s - &m1) - rat(2, 1) * d1;
        let wall = potential_wall(&x, &y).unwrap();
        prop_assert_eq!(wall.center(), Some(&s));
        prop_assert_eq!(wall.radius_sq(), Some(&rho_sq));
        Ok(())
    })?;
    run_property("twist", (small_rank_char(), -6i64..6), |(xi, n)| {
        let moved = xi.twist(n);
        let shift = Int::from(n);
        prop_assert_eq!(extremal_triple(&moved).unwrap(), extremal_triple(&xi).unwrap().twist(&shift).unwrap());
        let (a, b) = (gieseker_wall(&xi).unwrap(), gieseker_wall(&moved).unwrap());
        prop_assert_eq!(b.wall, a.wall.shifted(&int(n)));
        let (a, b) = (ample_cone(&xi).unwrap(), ample_cone(&moved).unwrap());
        prop_assert_eq!(b.curve_kind, a.curve_kind);
        prop_assert_eq!(b.moduli_dim, a.moduli_dim);
        Ok(())
    })?;
    run_property("elem_mod", (1i64..=9, -12i64..12, -20i64..20, 0u64..50), |(r, c1, n, k)| {
        let xi = ChernChar::new(r, c1, int(n) + rat(c1 * c1, 2)).unwrap();
        let drop = xi.euler_char() - xi.elem_mod(k).unwrap().euler_char();
        prop_assert_eq!(drop, Rat::from_integer(Int::from(k)));
        Ok(())
    })?;
    let rows: Vec<(Int, Rat)> = small_rank_slopes()
        .into_iter()
        .filter(|(r, mu)| !minimal_triple(r, mu).unwrap().is_torsion())
        .collect();
    run_property("table 1 negativity", (0..rows.len(), -20i64..20), |(i, n)| {
        let (r, mu) = &rows[i];
        let d = minimal_triple(r, mu).unwrap().twist(&Int::from(n)).unwrap();
        prop_assert!(euler_pair(d.quotient(), d.sub()).is_negative());
        Ok(())
    })?;
    run_property("x+ monotone", (1i64..=6, -6i64..=6, 0i64..8), |(r, c1, k)| {
        let lower = gieseker_wall(&positive_height(r, c1, k)).unwrap();
        let upper = gieseker_wall(&positive_height(r, c1, k + 1)).unwrap();
        prop_assume!(lower.destabilizer == upper.destabilizer);
        let (mu_sub, disc_sub) = lower.destabilizer.invariants().unwrap();
        if disc_sub.is_zero() {
            // Line-bundle destabilizer: the right end stays at its slope.
            prop_assert_eq!(upper.x_plus(), QuadVal::from(mu_sub));
        } else {
            prop_assert!(upper.x_plus() > lower.x_plus());
        }
        Ok(())
    })?;
    Ok("8 suites x 1000 cases".into())
}

fn criterion_8() -> Outcome {
    let err = |e: p2walls_core::Error| e.to_string();
    let line = inv(1, int(0), int(0));
    let rank_two = inv(2, int(0), int(0));
    for r in 2..=6 {
        for n in -1..=1 {
            let xi = sporadic(r).twist(n);
            let label = xi.to_invariant_string();
            let (d, kind) = curve_decomposition(&xi).map_err(err)?;
            ensure(kind == CurveKind::Sporadic2, || format!("{label}: {kind:?}"))?;
            ensure(d.sub() == &rank_two.twist(n), || format!("{label}: sub {}", d.sub().to_invariant_string()))?;
            let w = potential_wall(d.sub(), &xi).map_err(err)?;
            let reference = potential_wall(&line.twist(n), &xi).map_err(err)?;
            ensure(w == reference, || format!("{label}: {w:?} vs {reference:?}"))?;
            ensure(gieseker_wall(&xi).map_err(err)?.wall == reference, || format!("{label}: Gieseker wall moved"))?;
        }
    }
    let quotient = inv(1, int(2), int(6));
    for n in -3..=3 {
        let xi = special().twist(n);
        let (d, kind) = curve_decomposition(&xi).map_err(err)?;
        ensure(kind == CurveKind::Special5, || format!("twist {n}: {kind:?}"))?;
        ensure(d.quotient() == &quotient.twist(n), || {
            format!("twist {n}: quotient {}", d.quotient().to_invariant_string())
        })?;
    }
    Ok("15 sporadic characters, 7 special twists".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("table 1 reproduction", criterion_1),
        ("table 2 reproduction", criterion_2),
        ("table 3 reproduction", criterion_3),
        ("exact anchors", criterion_4),
        ("ray orthogonality", criterion_5),
        ("exclusion oracle", criterion_6),
        ("property suites", criterion_7),
        ("sporadic routing", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.3}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.3}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

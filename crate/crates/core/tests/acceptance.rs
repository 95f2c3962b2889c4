//! Acceptance criteria, one line per criterion.

use std::time::{Duration, Instant};

use modsym::harness::{instance_infrastructure, lattice_lemmas, random_complex_check};
use modsym::report::CheckReport;
use modsym::snf;
use modsym::steinberg::{
    connecting_map_check, gp_comparison_check, lee_szczarba_resolution, presentation_from_relations,
    solomon_tits_check, verify_relations, zigzag_iso, SteinbergContext,
};
use modsym::BigInt;
use num_traits::Signed;

const SMALL: [(usize, i64); 3] = [(2, 2), (2, 3), (3, 2)];
const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &CheckReport) -> Result<(), String> {
    ensure(r.passed(), || {
        format!(
            "{} ({}, {}): {:?}",
            r.check,
            r.n,
            r.q,
            r.failures.iter().take(3).collect::<Vec<_>>()
        )
    })
}

fn ctx(n: usize, q: i64) -> Result<SteinbergContext, String> {
    SteinbergContext::new(n, q).map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

// (n, q, rank of St, rank of the reduced module)
const RANKS: [(usize, i64, usize, usize); 5] =
    [(2, 2, 3, 2), (2, 3, 4, 3), (3, 2, 8, 8), (3, 3, 27, 27), (4, 2, 64, 64)];

fn solomon_tits() -> Outcome {
    let mut start = Instant::now();
    let mut parts = Vec::new();
    for (n, q, full, reduced) in RANKS {
        if (n, q) == (4, 2) {
            within(start, Duration::from_secs(60), "instances up to (3,3)")?;
            start = Instant::now();
        }
        let c = ctx(n, q)?;
        let r = solomon_tits_check(&c);
        passed(&r)?;
        let st = c.steinberg();
        ensure(
            st.full_rank == full && st.rank == reduced && st.torsion.is_empty(),
            || format!("({n},{q}): ranks {}/{} torsion {:?}", st.full_rank, st.rank, st.torsion),
        )?;
        // Euler characteristic of the f-vector alone
        let chi = c.building.complex.euler_characteristic();
        let from_chi = if n == 2 {
            chi
        } else {
            (chi - 1) * if n % 2 == 0 { 1 } else { -1 }
        };
        ensure(from_chi == full as i64, || {
            format!("({n},{q}): Euler characteristic {chi} disagrees")
        })?;
        parts.push(format!("({n},{q}) {full}/{reduced}"));
    }
    within(start, Duration::from_secs(600), "instance (4,2)")?;
    Ok(parts.join(", "))
}

fn relations() -> Outcome {
    let mut total = 0;
    for (n, q) in SMALL {
        let r = verify_relations(&ctx(n, q)?, 100, SEED).map_err(|e| e.to_string())?;
        passed(&r)?;
        for rel in ["a", "b", "c", "d", "e"] {
            let trials = r.details["relations"][rel]["trials"].as_u64().unwrap_or(0);
            ensure(trials == 100, || {
                format!("({n},{q}) relation ({rel}) ran {trials} trials")
            })?;
        }
        total += r.total;
    }
    Ok(format!("{total} checks, 0 failures"))
}

fn connecting_map() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for ((n, q), expected) in SMALL.into_iter().zip([6, 48, 168]) {
        let c = ctx(n, q)?;
        let zz = zigzag_iso(&c).map_err(|e| e.to_string())?;
        let r = connecting_map_check(&c, &zz).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure(r.total == expected, || {
            format!("({n},{q}): {} generators, expected {expected}", r.total)
        })?;
        parts.push(format!(
            "({n},{q}) {}/{} sign {}",
            r.total, expected, r.details["global_sign"]
        ));
    }
    within(start, Duration::from_secs(120), "connecting map check")?;
    Ok(parts.join(", "))
}

fn resolution() -> Outcome {
    let mut parts = Vec::new();
    for (n, q) in SMALL {
        let c = ctx(n, q)?;
        let res = lee_szczarba_resolution(&c, None, n == 2).map_err(|e| e.to_string())?;
        let st = c.steinberg();
        ensure(
            res.cokernel_rank == st.rank && res.cokernel_torsion.is_empty() && res.ar_exact,
            || {
                format!(
                    "({n},{q}): coker rank {} torsion {:?}, reduced rank {}",
                    res.cokernel_rank, res.cokernel_torsion, st.rank
                )
            },
        )?;
        if n == 2 {
            let h = res.top_homology.as_ref().ok_or("H_n not computed")?;
            ensure(h.is_zero(), || {
                format!("({n},{q}): H_n betti {} torsion {:?}", h.betti, h.torsion)
            })?;
        }
        parts.push(format!("({n},{q}) coker {}", res.cokernel_rank));
    }
    Ok(parts.join(", "))
}

fn presentation() -> Outcome {
    let mut parts = Vec::new();
    for (n, q) in [(2, 2), (2, 3)] {
        let st = ctx(n, q)?.steinberg();
        let p = presentation_from_relations(n, q, 50, SEED, None).map_err(|e| e.to_string())?;
        ensure(p.rank == st.rank && p.torsion.is_empty(), || {
            format!(
                "({n},{q}): presented rank {} torsion {:?}, expected {}",
                p.rank, p.torsion, st.rank
            )
        })?;
        let bad = p.antisymmetry.iter().filter(|(_, ok)| !ok).count();
        ensure(p.antisymmetry.len() == 50 && bad == 0, || {
            format!("({n},{q}): {bad} antisymmetry failures")
        })?;
        parts.push(format!("({n},{q}) rank {}", p.rank));
    }
    Ok(parts.join(", "))
}

fn homotopy_equivalence() -> Outcome {
    let mut parts = Vec::new();
    for (n, q) in SMALL {
        let c = ctx(n, q)?;
        let zz = zigzag_iso(&c).map_err(|e| e.to_string())?;
        ensure(zz.is_isomorphism(), || format!("({n},{q}): not an isomorphism"))?;
        let dets = zz.determinants();
        for (p, d) in &dets {
            let one = d.as_ref().is_some_and(|d| d.abs() == BigInt::from(1));
            ensure(one, || format!("({n},{q}) degree {p}: determinant {d:?}"))?;
        }
        parts.push(format!("({n},{q}) {} degrees", dets.len()));
    }
    Ok(parts.join(", "))
}

fn general_position() -> Outcome {
    let mut parts = Vec::new();
    for (n, q) in SMALL {
        let r = gp_comparison_check(n, q).map_err(|e| e.to_string())?;
        passed(&r)?;
        let m = &r.details["map"];
        ensure(m["surjective"] == true, || {
            format!("({n},{q}): map not surjective: {m}")
        })?;
        if (n, q) == (2, 3) {
            ensure(
                m["source_rank"] == 8 && m["target_rank"] == 4 && m["injective"] == false,
                || format!("(2,3): expected non-injective Z^8 -> Z^4, got {m}"),
            )?;
        }
        parts.push(format!("({n},{q}) Z^{} -> Z^{}", m["source_rank"], m["target_rank"]));
    }
    Ok(parts.join(", "))
}

fn lattice() -> Outcome {
    let r = lattice_lemmas(250, SEED);
    passed(&r)?;
    Ok(format!("{} checks on 250 submodules", r.total))
}

fn infrastructure() -> Outcome {
    let before = snf::certificate_counts();
    let r = random_complex_check(20, SEED).map_err(|e| e.to_string())?;
    passed(&r)?;
    let mut total = r.total;
    for (n, q) in SMALL {
        let i = instance_infrastructure(&ctx(n, q)?, None).map_err(|e| e.to_string())?;
        passed(&i)?;
        total += i.total;
    }
    let after = snf::certificate_counts();
    let (red, cert) = (after.0 - before.0, after.1 - before.1);
    ensure(red == cert && red > 0, || {
        format!("{cert} of {red} reductions certified")
    })?;
    Ok(format!("{total} checks, {cert}/{red} reductions certified"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("building homology", solomon_tits),
        ("symbol relations", relations),
        ("connecting map gives symbols", connecting_map),
        ("tuple resolution", resolution),
        ("presentation by relations", presentation),
        ("AR homology isomorphism", homotopy_equivalence),
        ("general position comparison", general_position),
        ("lattice lemmas", lattice),
        ("infrastructure", infrastructure),
    ];
    // criteria are independent; run them concurrently, report in order
    let handles: Vec<_> = criteria
        .iter()
        .map(|&(name, f)| {
            std::thread::Builder::new()
                .stack_size(64 << 20)
                .spawn(move || {
                    let start = Instant::now();
                    (name, f(), start.elapsed())
                })
                .expect("spawn")
        })
        .collect();
    let mut failed = 0;
    for (i, h) in handles.into_iter().enumerate() {
        let (name, outcome, t) = h
            .join()
            .unwrap_or_else(|_| (criteria[i].0, Err("panicked".into()), Duration::ZERO));
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} [{:.1}s] {msg}", i + 1, t.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{:.1}s] {msg}", i + 1, t.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

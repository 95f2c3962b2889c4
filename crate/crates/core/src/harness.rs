//! Reproducible verification suites.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::building::{estar_complex, gp_and_frame_complex};
use crate::chain::oriented_chains;
use crate::error::{Error, Result};
use crate::fq;
use crate::homology::{full_homology, homology_degree};
use crate::report::CheckReport;
use crate::simplicial::{int_labels, skeleton, subdivision, SimplicialComplex};
use crate::snf;
use crate::steinberg::{
    connecting_map_check, gp_comparison_check, lee_szczarba_resolution, presentation_from_relations,
    presentation_report, resolution_report, solomon_tits_check, verify_relations, zigzag_iso, zigzag_report,
    SteinbergContext,
};
use crate::zlattice::{content, unimodular_in_pure, ZSubmodule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    SolomonTits,
    Relations,
    LeeSzczarba,
    ConnectingMap,
    Presentation,
    ArEquivalence,
    Gp,
    LatticeLemmas,
    Infrastructure,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "solomon-tits",
        "relations",
        "lee-szczarba",
        "p3",
        "c2",
        "ar-equivalence",
        "gp",
        "lattice-lemmas",
        "infrastructure",
        "all",
    ];

    const ORDER: [Suite; 9] = [
        Suite::SolomonTits,
        Suite::Relations,
        Suite::LeeSzczarba,
        Suite::ConnectingMap,
        Suite::Presentation,
        Suite::ArEquivalence,
        Suite::Gp,
        Suite::LatticeLemmas,
        Suite::Infrastructure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SolomonTits => "solomon-tits",
            Suite::Relations => "relations",
            Suite::LeeSzczarba => "lee-szczarba",
            Suite::ConnectingMap => "p3",
            Suite::Presentation => "c2",
            Suite::ArEquivalence => "ar-equivalence",
            Suite::Gp => "gp",
            Suite::LatticeLemmas => "lattice-lemmas",
            Suite::Infrastructure => "infrastructure",
            Suite::All => "all",
        }
    }

    fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Self::ORDER.to_vec()
        } else {
            vec![self]
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ORDER
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Self::NAMES.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub instances: Vec<(usize, i64)>,
    pub trials: usize,
    pub seed: u64,
    /// Largest basis any single chain group may have.
    pub budget: usize,
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            instances: vec![(2, 2), (2, 3), (3, 2)],
            trials: 100,
            seed: 42,
            budget: 100_000,
            out: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub json: Value,
}

impl SuiteOutcome {
    pub fn failures(&self) -> usize {
        self.reports.iter().map(|r| r.failures.len()).sum()
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        i32::from(self.failures() > 0)
    }
}

fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num = num.saturating_mul(q.pow((n - i) as u32) - 1);
        den = den.saturating_mul(q.pow((i + 1) as u32) - 1);
    }
    num / den
}

/// Largest chain group of `T(F_q^n)`: the vertex count or the number of
/// complete flags.
pub fn building_size(n: usize, q: i64) -> u128 {
    let q = q as u128;
    let vertices: u128 = (1..n).map(|k| gaussian_binomial(n, k, q)).sum();
    let flags: u128 = (1..=n).map(|k| gaussian_binomial(k, 1, q)).product();
    vertices.max(flags)
}

/// Number of top simplices of `sd E*(F_q^n)`.
fn subdivided_estar_size(n: usize, q: i64) -> u128 {
    let per = (q as u128).pow(n as u32 - 1) - 1;
    let factorial = (1..=per).fold(1u128, |a, b| a.saturating_mul(b));
    gaussian_binomial(n, 1, q as u128).saturating_mul(factorial)
}

fn check_budget(required: u128, budget: usize) -> Result<()> {
    if required > budget as u128 {
        return Err(Error::InstanceTooLarge {
            required: usize::try_from(required).unwrap_or(usize::MAX),
            budget,
        });
    }
    Ok(())
}

fn instance_reports(
    suite: Suite,
    n: usize,
    q: i64,
    cfg: &SuiteConfig,
    ctx: &mut Option<SteinbergContext>,
) -> Result<Vec<CheckReport>> {
    if n < 2 {
        return Err(Error::invalid(format!("suite {suite} needs n >= 2, got n = {n}")));
    }
    fq::check_prime(q)?;
    check_budget(building_size(n, q), cfg.budget)?;
    let budget = Some(cfg.budget);
    if ctx.is_none() {
        *ctx = Some(SteinbergContext::new(n, q)?);
    }
    let ctx = ctx.as_ref().expect("context built");
    Ok(match suite {
        Suite::SolomonTits => vec![solomon_tits_check(ctx)],
        Suite::Relations => vec![verify_relations(ctx, cfg.trials, cfg.seed)?],
        Suite::LeeSzczarba => {
            let res = lee_szczarba_resolution(ctx, budget, n == 2)?;
            vec![resolution_report(ctx, &res)?]
        }
        Suite::ConnectingMap => {
            check_budget(subdivided_estar_size(n, q), cfg.budget)?;
            let zz = zigzag_iso(ctx)?;
            vec![connecting_map_check(ctx, &zz)?]
        }
        Suite::ArEquivalence => {
            check_budget(subdivided_estar_size(n, q), cfg.budget)?;
            let zz = zigzag_iso(ctx)?;
            vec![zigzag_report(ctx, &zz)]
        }
        Suite::Presentation => {
            let p = presentation_from_relations(n, q, cfg.trials.clamp(1, 50), cfg.seed, budget)?;
            let mut r = presentation_report(&ctx.steinberg(), &p);
            r.seed = Some(cfg.seed);
            vec![r]
        }
        Suite::Gp => vec![gp_comparison_check(n, q)?],
        Suite::Infrastructure => vec![instance_infrastructure(ctx, budget)?],
        Suite::LatticeLemmas | Suite::All => unreachable!("not an instance suite"),
    })
}

/// `∂∂ = 0` on every complex built for the instance, and SNF certificates.
pub fn instance_infrastructure(ctx: &SteinbergContext, budget: Option<usize>) -> Result<CheckReport> {
    let (n, q) = (ctx.n, ctx.q);
    let mut report = CheckReport::new("infrastructure", n, q);
    let before = snf::certificate_counts();
    let estar = estar_complex(n, q)?;
    let gp = gp_and_frame_complex(n, q)?;
    let complexes: [(&str, &SimplicialComplex); 4] = [
        ("tits", &ctx.building.complex),
        ("estar", &estar.complex),
        ("gp", &gp.gp),
        ("frame", &gp.frame),
    ];
    for (name, c) in complexes {
        let chains = oriented_chains::<BigInt>(c);
        report.record(chains.boundary_squared_vanishes(), || format!("dd != 0 on {name}"));
        full_homology(&chains)?;
    }
    let res = lee_szczarba_resolution(ctx, budget, false)?;
    report.record(res.complex.boundary_squared_vanishes(), || {
        "dd != 0 on the tuple complex".into()
    });
    let after = snf::certificate_counts();
    let (reductions, certified) = (after.0 - before.0, after.1 - before.1);
    report.record(reductions == certified, || {
        format!("{certified} of {reductions} reductions certified")
    });
    report.detail("snf", json!({"reductions": reductions, "certified": certified}));
    Ok(report)
}

/// A seeded random complex on at most `max_vertices` vertices.
pub fn random_complex<R: Rng>(rng: &mut R, max_vertices: usize) -> SimplicialComplex {
    let v = rng.gen_range(1..=max_vertices);
    let facets: Vec<Vec<crate::label::Label>> = (0..rng.gen_range(1..=6))
        .map(|_| {
            let size = rng.gen_range(1..=v.min(4));
            let mut f: Vec<i64> = Vec::with_capacity(size);
            while f.len() < size {
                let x = rng.gen_range(0..v as i64);
                if !f.contains(&x) {
                    f.push(x);
                }
            }
            f.into_iter().map(crate::label::Label::Int).collect()
        })
        .collect();
    SimplicialComplex::new(int_labels(0..v as i64), facets).expect("valid random complex")
}

/// Subdivision invariance of homology and the truncation identity on
/// `count` seeded random complexes.
pub fn random_complex_check(count: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("random-complexes", 0, 0);
    report.seed = Some(seed);
    let before = snf::certificate_counts();
    for k in 0..count {
        let c = random_complex(&mut rng, 8);
        let chains = oriented_chains::<BigInt>(&c);
        let sd_chains = oriented_chains::<BigInt>(&subdivision(&c));
        report.record(
            chains.boundary_squared_vanishes() && sd_chains.boundary_squared_vanishes(),
            || format!("complex {k}: dd != 0"),
        );
        let h = full_homology(&chains)?;
        let hs = full_homology(&sd_chains)?;
        let strip = |r: &crate::homology::HomologyResult<BigInt>| {
            r.degrees
                .iter()
                .map(|(p, d)| (*p, d.betti, d.torsion.clone()))
                .collect::<Vec<_>>()
        };
        report.record(strip(&h) == strip(&hs), || {
            format!("complex {k}: subdivision changed homology")
        });
        for r in 0..=c.dim() {
            let truncated = homology_degree(&chains.truncate_above(r), r)?;
            let sk = homology_degree(&oriented_chains::<BigInt>(&skeleton(&c, r)), r)?;
            report.record(truncated.betti == sk.betti && truncated.torsion == sk.torsion, || {
                format!("complex {k}: truncation identity fails in degree {r}")
            });
        }
    }
    let after = snf::certificate_counts();
    let (reductions, certified) = (after.0 - before.0, after.1 - before.1);
    report.record(reductions == certified, || {
        format!("{certified} of {reductions} reductions certified")
    });
    report.detail("complexes", json!(count));
    report.detail("snf", json!({"reductions": reductions, "certified": certified}));
    Ok(report)
}

/// Saturation, purity and unimodular-vector checks on `count` seeded
/// random submodules of `Z^n`, `n <= 5`, entries in `[-9, 9]`.
pub fn lattice_lemmas(count: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("lattice-lemmas", 0, 0);
    report.seed = Some(seed);
    let mut impure = 0;
    for k in 0..count {
        let n = rng.gen_range(1..=5);
        let gens: Vec<Vec<i64>> = (0..rng.gen_range(1..=n + 1))
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = ZSubmodule::new(&gens, n).expect("generators of length n");
        let sat = m.saturation();
        report.record(sat.saturation() == sat, || {
            format!("case {k}: saturation not idempotent")
        });
        report.record(sat.contains_module(&m) && sat.rank() == m.rank(), || {
            format!("case {k}: saturation does not contain N with equal rank")
        });
        report.record(m.is_pure() == m.quotient_is_torsion_free(), || {
            format!("case {k}: purity tests disagree")
        });
        report.record(sat.quotient_is_torsion_free(), || {
            format!("case {k}: saturation not pure")
        });
        if !m.is_pure() {
            impure += 1;
            report.record(unimodular_in_pure(&m) == Err(Error::ImpureInput), || {
                format!("case {k}: impure input accepted")
            });
        }

        // P ⊆ N with N pure implies P_sat ⊆ N
        let p_gens: Vec<Vec<BigInt>> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let mut v = vec![BigInt::from(0); n];
                for row in &sat.basis {
                    let c = BigInt::from(rng.gen_range(-4i64..=4));
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += &c * y;
                    }
                }
                v
            })
            .collect();
        let p = ZSubmodule::from_big(&p_gens, n);
        report.record(sat.contains_module(&p.saturation()), || {
            format!("case {k}: P_sat not inside N")
        });

        if !sat.is_zero() {
            match unimodular_in_pure(&sat) {
                Ok(v) => report.record(content(&v).is_one() && sat.contains(&v), || {
                    format!("case {k}: vector {v:?} is not a unimodular element of N")
                }),
                Err(e) => report.record(false, || format!("case {k}: {e}")),
            }
        }
    }
    report.detail("submodules", json!(count));
    report.detail("impure", json!(impure));
    report
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    if cfg.budget == 0 {
        return Err(Error::invalid("budget must be positive"));
    }
    let mut reports = Vec::new();
    let mut contexts: Vec<Option<SteinbergContext>> = vec![None; cfg.instances.len()];
    for suite in cfg.suite.expand() {
        match suite {
            Suite::LatticeLemmas => reports.push(lattice_lemmas(cfg.trials.max(200), cfg.seed)),
            Suite::Infrastructure => {
                reports.push(random_complex_check(20, cfg.seed)?);
                for (i, &(n, q)) in cfg.instances.iter().enumerate() {
                    reports.extend(instance_reports(suite, n, q, cfg, &mut contexts[i])?);
                }
            }
            _ => {
                for (i, &(n, q)) in cfg.instances.iter().enumerate() {
                    reports.extend(instance_reports(suite, n, q, cfg, &mut contexts[i])?);
                }
            }
        }
    }
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let json = json!({
        "suite": cfg.suite.name(),
        "seed": cfg.seed,
        "trials": cfg.trials,
        "budget": cfg.budget,
        "instances": cfg.instances.iter().map(|(n, q)| json!({"n": n, "q": q})).collect::<Vec<_>>(),
        "total": reports.iter().map(|r| r.total).sum::<usize>(),
        "failures": failures,
        "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
    });
    if let Some(path) = &cfg.out {
        let text = serde_json::to_string_pretty(&json).expect("serializable") + "\n";
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(SuiteOutcome { reports, json })
}

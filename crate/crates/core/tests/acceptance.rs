//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use asq2::checks::{self, CheckReport};
use asq2::gf2k::Fq;
use asq2::oracle::{random_quaternion, InstanceCase};
use asq2::quadroots::{LocusStatus, RootSet, Solver};
use asq2::quat::{QuatAlgebra, Quaternion};
use asq2::ratfun::RatFun;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn from_reports(reports: &[CheckReport]) -> Verdict {
    let samples: usize = reports.iter().map(|r| r.samples).sum();
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    let mut detail = format!("{samples} samples, {failures} failures");
    for r in reports.iter().filter(|r| !r.passed()) {
        detail += &format!("\n    {r}");
    }
    Verdict { passed: failures == 0, detail }
}

fn default_algebra() -> QuatAlgebra {
    QuatAlgebra::standard(Fq::gf2(), 3).expect("default algebra passes preflight")
}

fn roundtrip_completeness() -> Verdict {
    let start = Instant::now();
    let mut reports = Vec::new();
    for k in [1, 2] {
        let h = QuatAlgebra::standard(Fq::with_degree(k).unwrap(), 3).unwrap();
        let s = Solver::new(&h);
        for (i, case) in InstanceCase::ALL.into_iter().enumerate() {
            let seed = 1_000_000 * k as u64 + 10_000 * i as u64;
            reports.push(checks::roundtrip_completeness(&s, case, seed, 200, 2));
        }
    }
    let elapsed = start.elapsed();
    let mut v = from_reports(&reports);
    v.passed &= elapsed < Duration::from_secs(60);
    v.detail += &format!(", {:.2?} (limit 60s)", elapsed);
    v
}

fn oracle_agreement() -> Verdict {
    let h = default_algebra();
    from_reports(&[checks::oracle_agreement(&Solver::new(&h), 2, 500, 1)])
}

fn mu_one_locus() -> Verdict {
    let h = default_algebra();
    let s = Solver::new(&h);
    let t = Quaternion::central(RatFun::t(h.field()));
    let sol = match s.solve(&h.one(), &t) {
        Ok(sol) => sol,
        Err(e) => return Verdict { passed: false, detail: e.to_string() },
    };
    match sol.roots {
        RootSet::CentralPlusLocus { locus, .. } => match locus.status {
            LocusStatus::Witness(w) => {
                let ok = s.substitute_check(&h.one(), &t, &w) && !w.is_central();
                Verdict {
                    passed: ok,
                    detail: format!("witness {w}, substitution {}", if ok { "holds" } else { "fails" }),
                }
            }
            other => Verdict { passed: false, detail: format!("locus status {other}, expected a witness") },
        },
        other => Verdict { passed: false, detail: format!("returned {other:?}, expected a locus") },
    }
}

fn candidate_bounds() -> Verdict {
    let h = default_algebra();
    from_reports(&[checks::candidate_bounds(&Solver::new(&h), 4, 1000, 2)])
}

fn algebra_axioms() -> Verdict {
    let h = default_algebra();
    let mut v = from_reports(&[checks::algebra_axioms(&h, 5, 100_000, 2), checks::norm_closed_form(&h, 6, 10_000, 2)]);
    if h.split_detected() {
        v.passed = false;
        v.detail += ", zero divisor observed";
    }
    v
}

fn complement() -> Verdict {
    let h = default_algebra();
    from_reports(&[checks::complement(&h, 7, 500, 2)])
}

fn field_solver() -> Verdict {
    from_reports(&[
        checks::field_solver_exhaustive(Fq::gf2(), 2),
        checks::field_solver_planted(Fq::gf2(), 9, 300, 2),
    ])
}

fn performance() -> Verdict {
    let h = default_algebra();
    let s = Solver::new(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let inputs: Vec<_> = (0..10_000)
        .map(|_| (random_quaternion(&mut rng, h.field(), 2), random_quaternion(&mut rng, h.field(), 2)))
        .collect();
    let start = Instant::now();
    let mut errors = Vec::new();
    for (mu, nu) in &inputs {
        if let Err(e) = s.solve(mu, nu) {
            errors.push(format!("mu = {mu}, nu = {nu}: {e}"));
        }
    }
    let elapsed = start.elapsed();
    let mut detail = format!("10000 solves in {:.2?} (limit 10s), {} errors", elapsed, errors.len());
    for e in errors.iter().take(3) {
        detail += &format!("\n    {e}");
    }
    Verdict { passed: errors.is_empty() && elapsed < Duration::from_secs(10), detail }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("round-trip completeness, all coefficient cases, k in {1, 2}", roundtrip_completeness),
        ("differential agreement with exhaustive search, box degree 1", oracle_agreement),
        ("solve(1, T) returns a locus with a verified witness", mu_one_locus),
        ("candidates <= 6 and roots <= 2 over 1000 explicit runs", candidate_bounds),
        ("algebra axioms on 1e5 triples, closed-form norm on 1e4", algebra_axioms),
        ("square-central complement on 500 elements", complement),
        ("as_solve_F equals exhaustive search: every c plus 300 planted, degrees <= 2", field_solver),
        ("10000 random solves under 10 s without budget errors", performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!("criterion {} [{}] {name}: {}", i + 1, if v.passed { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

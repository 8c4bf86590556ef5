//! Seeded invariant suites over random samples. Each returns a [`CheckReport`]
//! instead of panicking so callers can print one verdict per suite.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::expr::parse_element;
use crate::fieldsolve::as_solve_f;
use crate::gf2k::Fq;
use crate::oracle::{
    brute_roots, random_nonzero_poly, random_of_case, random_poly, random_quaternion,
    roundtrip_instance, InstanceCase,
};
use crate::poly::Poly;
use crate::quadroots::{Solution, Solver, MAX_CANDIDATES, MAX_FINITE_ROOTS};
use crate::quat::{QuatAlgebra, Quaternion};
use crate::ratfun::RatFun;

const KEPT_EXAMPLES: usize = 5;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// The first few failure descriptions.
    pub examples: Vec<String>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), samples: 0, failures: 0, examples: Vec::new() }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.failures += 1;
        if self.examples.len() < KEPT_EXAMPLES {
            self.examples.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {verdict} ({} samples, {} failures)", self.name, self.samples, self.failures)?;
        for e in &self.examples {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// Random rational function with numerator and denominator of degree <= `degree`.
pub fn random_ratfun(rng: &mut impl Rng, field: Fq, degree: u32) -> RatFun {
    let num = random_poly(rng, field, degree);
    let den = random_nonzero_poly(rng, field, degree);
    RatFun::new(num, den).expect("nonzero denominator")
}

/// Associativity, sigma anti-automorphism, norm multiplicativity, the
/// characteristic identity, and no nonzero element of norm zero.
pub fn algebra_axioms(alg: &QuatAlgebra, seed: u64, triples: usize, degree: u32) -> CheckReport {
    let mut rep = CheckReport::new("algebra axioms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = alg.field();
    for _ in 0..triples {
        let p = random_quaternion(&mut rng, field, degree);
        let q = random_quaternion(&mut rng, field, degree);
        let r = random_quaternion(&mut rng, field, degree);
        rep.samples += 1;
        let pq = alg.mul(&p, &q);
        if alg.mul(&pq, &r) != alg.mul(&p, &alg.mul(&q, &r)) {
            rep.fail(|| format!("associativity: ({p})({q})({r})"));
        }
        if alg.conjugate(&pq) != alg.mul(&alg.conjugate(&q), &alg.conjugate(&p)) {
            rep.fail(|| format!("sigma(pq) != sigma(q)sigma(p): p = {p}, q = {q}"));
        }
        let np = alg.norm(&p);
        if alg.norm(&pq) != &np * &alg.norm(&q) {
            rep.fail(|| format!("norm not multiplicative: p = {p}, q = {q}"));
        }
        let ident = &(&alg.square(&p) + &p.scale(&alg.trace(&p))) + &Quaternion::central(np.clone());
        if !ident.is_zero() {
            rep.fail(|| format!("p^2 + tr(p)p + N(p) != 0 for p = {p}"));
        }
        if !p.is_zero() && np.is_zero() {
            alg.flag_split();
            rep.fail(|| format!("zero divisor {p}"));
        }
    }
    rep
}

/// The closed-form norm against the literal product `q sigma(q)`.
pub fn norm_closed_form(alg: &QuatAlgebra, seed: u64, samples: usize, degree: u32) -> CheckReport {
    let mut rep = CheckReport::new("closed-form norm");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let q = random_quaternion(&mut rng, alg.field(), degree);
        rep.samples += 1;
        let literal = alg.mul(&q, &alg.conjugate(&q));
        if literal != Quaternion::central(alg.norm(&q)) {
            rep.fail(|| format!("norm({q}) = {} but q sigma(q) = {literal}", alg.norm(&q)));
        }
    }
    rep
}

/// `parse(print(q)) = q` and printing is a fixed point, on rational coordinates.
pub fn parser_roundtrip(alg: &QuatAlgebra, seed: u64, samples: usize, degree: u32) -> CheckReport {
    let mut rep = CheckReport::new("parser round trip");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = alg.field();
    for _ in 0..samples {
        let q = Quaternion::new(std::array::from_fn(|_| {
            if rng.gen_bool(0.3) {
                RatFun::zero(field)
            } else {
                random_ratfun(&mut rng, field, degree)
            }
        }));
        rep.samples += 1;
        let printed = q.to_string();
        match parse_element(alg, &printed) {
            Ok(back) if back == q && back.to_string() == printed => {}
            Ok(back) => rep.fail(|| format!("`{printed}` reparsed as `{back}`")),
            Err(e) => rep.fail(|| format!("`{printed}`: {e}")),
        }
    }
    rep
}

/// Planted roots of the given coefficient class are recovered; returned
/// finite roots pass substitution.
pub fn roundtrip_completeness(
    solver: &Solver,
    case: InstanceCase,
    seed: u64,
    samples: usize,
    degree: u32,
) -> CheckReport {
    let alg = solver.algebra();
    let mut rep = CheckReport::new(format!("round trip {case:?}"));
    for i in 0..samples {
        let (mu, nu, z0) = roundtrip_instance(alg, case, seed.wrapping_add(i as u64), degree);
        rep.samples += 1;
        match solver.solve(&mu, &nu) {
            Ok(sol) => {
                if !sol.roots.contains(alg, &z0) {
                    rep.fail(|| format!("mu = {mu}, nu = {nu}: planted root {z0} missing"));
                }
                for z in sol.roots.finite_roots().unwrap_or(&[]) {
                    if !solver.substitute_check(&mu, &nu, z) {
                        rep.fail(|| format!("mu = {mu}, nu = {nu}: {z} is not a root"));
                    }
                }
            }
            Err(e) => rep.fail(|| format!("mu = {mu}, nu = {nu}: {e}")),
        }
    }
    rep
}

/// Disagreements between a solution and the exhaustive roots of the same equation.
pub fn disagreements(
    solver: &Solver,
    mu: &Quaternion,
    nu: &Quaternion,
    brute: &[Quaternion],
    sol: &Solution,
) -> Vec<String> {
    let alg = solver.algebra();
    let mut out = Vec::new();
    for z in brute {
        if !sol.roots.contains(alg, z) {
            out.push(format!("exhaustive root {z} is not in the returned set"));
        }
    }
    for z in sol.roots.finite_roots().unwrap_or(&[]) {
        if !solver.substitute_check(mu, nu, z) {
            out.push(format!("returned root {z} fails substitution"));
        }
    }
    out
}

fn oracle_disagreements(solver: &Solver, mu: &Quaternion, nu: &Quaternion, bound: u32) -> Result<Vec<String>, Error> {
    let brute = brute_roots(solver.algebra(), mu, nu, bound)?;
    let sol = solver.solve(mu, nu)?;
    Ok(disagreements(solver, mu, nu, &brute, &sol))
}

/// Pairs with polynomial coordinates of degree <= `bound`, each coefficient
/// class in turn; every other `nu` is planted from a constant root so that
/// the box contains solutions.
pub fn oracle_agreement(solver: &Solver, seed: u64, samples: usize, bound: u32) -> CheckReport {
    let alg = solver.algebra();
    let field = alg.field();
    let mut rep = CheckReport::new("oracle agreement");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let mu = random_of_case(&mut rng, field, InstanceCase::ALL[i % 5], bound);
        let nu = if i % 2 == 0 {
            random_quaternion(&mut rng, field, bound)
        } else {
            let z0 = random_quaternion(&mut rng, field, 0);
            &alg.square(&z0) + &alg.mul(&mu, &z0)
        };
        rep.samples += 1;
        match oracle_disagreements(solver, &mu, &nu, bound) {
            Ok(d) => {
                for msg in d {
                    rep.fail(|| format!("mu = {mu}, nu = {nu}: {msg}"));
                }
            }
            Err(e) => rep.fail(|| format!("mu = {mu}, nu = {nu}: {e}")),
        }
    }
    rep
}

/// Explicit-algorithm runs (Artin-Schreier and square-central `mu`, alternating)
/// stay within the candidate and root bounds.
pub fn candidate_bounds(solver: &Solver, seed: u64, samples: usize, degree: u32) -> CheckReport {
    let alg = solver.algebra();
    let field = alg.field();
    let mut rep = CheckReport::new("candidate bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let case = if i % 2 == 0 { InstanceCase::ArtinSchreier } else { InstanceCase::SquareCentral };
        let mu = random_of_case(&mut rng, field, case, degree);
        let nu = if i % 4 < 2 {
            random_quaternion(&mut rng, field, degree)
        } else {
            let z0 = random_quaternion(&mut rng, field, degree);
            &alg.square(&z0) + &alg.mul(&mu, &z0)
        };
        rep.samples += 1;
        match solver.solve(&mu, &nu) {
            Ok(sol) => {
                let roots = sol.roots.finite_roots().map_or(0, |r| r.len());
                if sol.candidates.len() > MAX_CANDIDATES || roots > MAX_FINITE_ROOTS {
                    rep.fail(|| {
                        format!("mu = {mu}, nu = {nu}: {} candidates, {roots} roots", sol.candidates.len())
                    });
                }
            }
            Err(e) => rep.fail(|| format!("mu = {mu}, nu = {nu}: {e}")),
        }
    }
    rep
}

/// `as_complement` on random square-central elements satisfies its relations.
pub fn complement(alg: &QuatAlgebra, seed: u64, samples: usize, degree: u32) -> CheckReport {
    let mut rep = CheckReport::new("square-central complement");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let y = random_of_case(&mut rng, alg.field(), InstanceCase::SquareCentral, degree);
        rep.samples += 1;
        match alg.as_complement(&y) {
            Ok(x) => {
                let anti = &alg.mul(&x, &y) + &alg.mul(&y, &x);
                if anti != y || !(&alg.square(&x) + &x).is_central() {
                    rep.fail(|| format!("complement {x} of {y} fails its relations"));
                }
            }
            Err(e) => rep.fail(|| format!("{y}: {e}")),
        }
    }
    rep
}

/// All polynomials over `field` of degree <= `degree`.
fn all_polys(field: Fq, degree: u32) -> Vec<Poly> {
    let q = field.order() as u64;
    (0..q.pow(degree + 1))
        .map(|mut idx| {
            let coeffs: Vec<_> = (0..=degree)
                .map(|_| {
                    let c = field.elem((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect();
            Poly::from_coeffs(field, &coeffs)
        })
        .collect()
}

/// Every `p/q` with `deg p, deg q <= degree`, in canonical form.
fn all_ratfuns(field: Fq, degree: u32) -> BTreeSet<RatFun> {
    let polys = all_polys(field, degree);
    let mut out = BTreeSet::new();
    for p in &polys {
        for q in polys.iter().filter(|q| !q.is_zero()) {
            out.insert(RatFun::new(p.clone(), q.clone()).expect("nonzero denominator"));
        }
    }
    out
}

fn compare_with_search(rep: &mut CheckReport, ys: &BTreeSet<RatFun>, c: &RatFun) {
    rep.samples += 1;
    let brute: BTreeSet<RatFun> = ys.iter().filter(|y| &(&y.square() + *y) == c).cloned().collect();
    let solved: BTreeSet<RatFun> = as_solve_f(c).into_iter().collect();
    if brute != solved {
        rep.fail(|| format!("c = {c}: solver {solved:?}, exhaustive {brute:?}"));
    }
}

/// `as_solve_f(c)` against exhaustive search over `y = u/v` with
/// `deg u, deg v <= degree`, for every `c = p/q` with `deg p, deg q <= degree`.
/// The search is complete: a solution `u/v` in lowest terms gives `c = u(u+v)/v^2`.
pub fn field_solver_exhaustive(field: Fq, degree: u32) -> CheckReport {
    let mut rep = CheckReport::new("field solver");
    let ys = all_ratfuns(field, degree);
    for c in &ys {
        compare_with_search(&mut rep, &ys, c);
    }
    rep
}

/// As [`field_solver_exhaustive`], on sampled `c = y0^2 + y0` with `y0` in the
/// search range, so that every sample is solvable.
pub fn field_solver_planted(field: Fq, seed: u64, samples: usize, degree: u32) -> CheckReport {
    let mut rep = CheckReport::new("field solver, planted");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ys = all_ratfuns(field, degree);
    for _ in 0..samples {
        let y0 = random_ratfun(&mut rng, field, degree);
        compare_with_search(&mut rep, &ys, &(&y0.square() + &y0));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let h = QuatAlgebra::standard(Fq::gf2(), 3).unwrap();
        let s = Solver::new(&h);
        for rep in [
            algebra_axioms(&h, 1, 50, 2),
            norm_closed_form(&h, 2, 50, 2),
            parser_roundtrip(&h, 3, 50, 2),
            roundtrip_completeness(&s, InstanceCase::General, 4, 20, 2),
            oracle_agreement(&s, 5, 10, 1),
            candidate_bounds(&s, 6, 20, 2),
            complement(&h, 7, 20, 2),
            field_solver_exhaustive(Fq::gf2(), 1),
            field_solver_planted(Fq::gf2(), 8, 20, 1),
        ] {
            assert!(rep.passed(), "{rep}");
            assert!(rep.samples > 0);
        }
    }

    #[test]
    fn report_display() {
        let mut rep = CheckReport::new("demo");
        rep.samples = 3;
        rep.fail(|| "broken".into());
        assert_eq!(rep.to_string(), "demo: FAIL (3 samples, 1 failures)\n  broken");
    }
}

//! Roots of `z^2 + mu z + nu = 0` in a quaternion division algebra.
//!
//! [`Solver::solve`] classifies `mu` and reduces to one of four normal cases:
//! `mu` Artin-Schreier, `mu` square-central, `mu = 1`, `mu = 0`. The two
//! non-central cases split the equation against an Artin-Schreier element,
//! reduce it to scalar equations over F, assemble a short list of candidates
//! and keep exactly those that pass substitution.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldsolve::{
    as_solve_f, bounded_form_witness, quad_solve_f, rational_roots, KElem, Monomial, QuadExt,
    QuadForm, WitnessSearch, DEFAULT_WITNESS_BOUND,
};
use crate::poly::DEFAULT_DIVISOR_BUDGET;
use crate::quat::{ElementClass, QuatAlgebra, Quaternion};
use crate::ratfun::RatFun;

/// Upper bound on candidates assembled by either explicit algorithm.
pub const MAX_CANDIDATES: usize = 6;

/// A finite root set of a quadratic with non-central data has at most two elements.
pub const MAX_FINITE_ROOTS: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocusStatus {
    Witness(Quaternion),
    NoneWithinBound(u32),
}

/// The non-central roots of a quadratic with central coefficients: all
/// `z` outside F with `tr(z) = trace` and `norm(z) = norm`, a set closed under
/// conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNormLocus {
    pub trace: RatFun,
    pub norm: RatFun,
    pub status: LocusStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSet {
    /// Every root, sorted.
    Finite(Vec<Quaternion>),
    /// Central roots plus the trace/norm locus of non-central ones.
    CentralPlusLocus { central_roots: Vec<RatFun>, locus: TraceNormLocus },
}

/// A candidate assembled from scalar solutions before the substitution filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRoot {
    pub b: RatFun,
    pub c: Option<RatFun>,
    pub d: Option<RatFun>,
    pub a: RatFun,
    pub assembled: Quaternion,
}

/// Which normal form the equation was reduced to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveCase {
    MuZero,
    MuOne,
    MuSquareCentral,
    MuArtinSchreier,
}

/// A scaling `z = factor * w` applied before solving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// `mu` central and nonzero: solve for `w = mu^-1 z` with `mu = 1`.
    DivideByCentralMu(RatFun),
    /// `mu` general with trace `eta`: solve for `w = eta^-1 z` with Artin-Schreier `mu / eta`.
    DivideByTrace(RatFun),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub roots: RootSet,
    pub case: SolveCase,
    pub reductions: Vec<Reduction>,
    /// Candidates assembled by an explicit algorithm, before filtering.
    pub candidates: Vec<CandidateRoot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub witness_bound: u32,
    pub divisor_budget: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { witness_bound: DEFAULT_WITNESS_BOUND, divisor_budget: DEFAULT_DIVISOR_BUDGET }
    }
}

pub struct Solver<'a> {
    alg: &'a QuatAlgebra,
    opts: SolveOptions,
}

/// Polynomials in one scalar unknown, lowest degree first.
fn spoly_mul(p: &[RatFun], q: &[RatFun]) -> Vec<RatFun> {
    let field = p[0].field();
    let mut out = vec![RatFun::zero(field); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

fn spoly_add(p: &[RatFun], q: &[RatFun]) -> Vec<RatFun> {
    let field = p[0].field();
    (0..p.len().max(q.len()))
        .map(|i| {
            let zero = RatFun::zero(field);
            p.get(i).unwrap_or(&zero) + q.get(i).unwrap_or(&zero)
        })
        .collect()
}

impl RootSet {
    /// Membership: listed, or central and among the central roots, or
    /// non-central with the locus trace and norm.
    pub fn contains(&self, alg: &QuatAlgebra, z: &Quaternion) -> bool {
        match self {
            RootSet::Finite(v) => v.contains(z),
            RootSet::CentralPlusLocus { central_roots, locus } => match z.as_central() {
                Some(c) => central_roots.contains(c),
                None => alg.trace(z) == locus.trace && alg.norm(z) == locus.norm,
            },
        }
    }

    pub fn finite_roots(&self) -> Option<&[Quaternion]> {
        match self {
            RootSet::Finite(v) => Some(v),
            _ => None,
        }
    }

    fn scaled(self, factor: &RatFun) -> RootSet {
        match self {
            RootSet::Finite(v) => {
                let mut v: Vec<Quaternion> = v.iter().map(|z| z.scale(factor)).collect();
                v.sort();
                RootSet::Finite(v)
            }
            RootSet::CentralPlusLocus { central_roots, locus } => {
                let mut central_roots: Vec<RatFun> = central_roots.iter().map(|r| r * factor).collect();
                central_roots.sort();
                let status = match locus.status {
                    LocusStatus::Witness(w) => LocusStatus::Witness(w.scale(factor)),
                    other => other,
                };
                RootSet::CentralPlusLocus {
                    central_roots,
                    locus: TraceNormLocus {
                        trace: &locus.trace * factor,
                        norm: &locus.norm * &factor.square(),
                        status,
                    },
                }
            }
        }
    }
}

impl<'a> Solver<'a> {
    pub fn new(alg: &'a QuatAlgebra) -> Self {
        Solver { alg, opts: SolveOptions::default() }
    }

    pub fn with_options(alg: &'a QuatAlgebra, opts: SolveOptions) -> Self {
        Solver { alg, opts }
    }

    pub fn algebra(&self) -> &QuatAlgebra {
        self.alg
    }

    /// Whether `z^2 + mu z + nu = 0` exactly.
    pub fn substitute_check(&self, mu: &Quaternion, nu: &Quaternion, z: &Quaternion) -> bool {
        let h = self.alg;
        (&(&h.square(z) + &h.mul(mu, z)) + nu).is_zero()
    }

    pub fn solve(&self, mu: &Quaternion, nu: &Quaternion) -> Result<Solution> {
        let h = self.alg;
        let sol = match h.classify(mu) {
            ElementClass::Zero => self.solve_mu_zero(nu)?,
            ElementClass::SquareCentral => self.solve_mu_sc(mu, nu)?,
            ElementClass::CentralNonzero => {
                let m = mu.as_central().expect("central").clone();
                if m.is_one() {
                    self.solve_mu_one(nu)?
                } else {
                    let nu_scaled = nu.scale(&m.square().inv()?);
                    let mut sol = self.solve_mu_one(&nu_scaled)?;
                    sol.roots = sol.roots.scaled(&m);
                    sol.reductions.insert(0, Reduction::DivideByCentralMu(m));
                    sol
                }
            }
            ElementClass::General { eta } => {
                if eta.is_one() {
                    self.solve_mu_as(mu, nu)?
                } else {
                    let inv = eta.inv()?;
                    let mu_as = mu.scale(&inv);
                    let nu_scaled = nu.scale(&inv.square());
                    let mut sol = self.solve_mu_as(&mu_as, &nu_scaled)?;
                    sol.roots = sol.roots.scaled(&eta);
                    for c in sol.candidates.iter_mut() {
                        c.assembled = c.assembled.scale(&eta);
                    }
                    sol.reductions.insert(0, Reduction::DivideByTrace(eta));
                    sol
                }
            }
        };
        self.check_sound(mu, nu, &sol.roots)?;
        Ok(sol)
    }

    fn check_sound(&self, mu: &Quaternion, nu: &Quaternion, roots: &RootSet) -> Result<()> {
        let bad = |z: &Quaternion| Error::Internal(format!("emitted {z}, which is not a root"));
        match roots {
            RootSet::Finite(v) => {
                if v.len() > MAX_FINITE_ROOTS {
                    return Err(Error::Internal(format!("{} isolated roots", v.len())));
                }
                if let Some(z) = v.iter().find(|z| !self.substitute_check(mu, nu, z)) {
                    return Err(bad(z));
                }
            }
            RootSet::CentralPlusLocus { central_roots, locus } => {
                for r in central_roots {
                    let z = Quaternion::central(r.clone());
                    if !self.substitute_check(mu, nu, &z) {
                        return Err(bad(&z));
                    }
                }
                if let LocusStatus::Witness(w) = &locus.status {
                    let h = self.alg;
                    if w.is_central()
                        || h.trace(w) != locus.trace
                        || h.norm(w) != locus.norm
                        || !self.substitute_check(mu, nu, w)
                    {
                        return Err(bad(w));
                    }
                }
            }
        }
        Ok(())
    }

    fn finite(
        &self,
        mu: &Quaternion,
        nu: &Quaternion,
        case: SolveCase,
        candidates: Vec<CandidateRoot>,
    ) -> Result<Solution> {
        if candidates.len() > MAX_CANDIDATES {
            return Err(Error::Internal(format!("{} candidates assembled", candidates.len())));
        }
        let mut roots: Vec<Quaternion> = candidates
            .iter()
            .map(|c| c.assembled.clone())
            .filter(|z| self.substitute_check(mu, nu, z))
            .collect();
        roots.sort();
        roots.dedup();
        Ok(Solution { roots: RootSet::Finite(roots), case, reductions: Vec::new(), candidates })
    }

    /// Roots lying in the commutative subfield F[e], e Artin-Schreier.
    fn solve_in_subfield(
        &self,
        e: &Quaternion,
        mu: (RatFun, RatFun),
        nu: (RatFun, RatFun),
    ) -> Result<Vec<Quaternion>> {
        let h = self.alg;
        let alpha_e = (&h.square(e) + e)
            .as_central()
            .cloned()
            .ok_or(Error::NotArtinSchreier)?;
        let k = QuadExt::new(alpha_e).inspect_err(|_| h.flag_split())?;
        let roots = k.solve_quadratic(&KElem::new(mu.0, mu.1), &KElem::new(nu.0, nu.1))?;
        let mut out: Vec<Quaternion> =
            roots.iter().map(|r| &Quaternion::central(r.c0.clone()) + &e.scale(&r.c1)).collect();
        out.sort();
        Ok(out)
    }

    /// `mu` Artin-Schreier (`mu^2 + mu = alpha` central).
    ///
    /// With `nu = nu0 + nu1` split against `mu` and `nu0 = nu00 + nu01 mu`: if
    /// `nu1 = 0` every root lies in F[mu]. Otherwise each root has the shape
    /// `b^2 + b + nu01 + b mu + (b + mu)^-1 nu1` where `s = b^2 + b` is a root of
    /// `(s + nu01)^2 (s + alpha) + s alpha (s + alpha) + nu1^2 + nu00 (s + alpha)`.
    pub fn solve_mu_as(&self, mu: &Quaternion, nu: &Quaternion) -> Result<Solution> {
        let h = self.alg;
        let field = h.field();
        let alpha = (&h.square(mu) + mu).as_central().cloned().ok_or(Error::NotArtinSchreier)?;
        if !h.is_artin_schreier(mu) {
            return Err(Error::NotArtinSchreier);
        }
        let sc = h.split_coords(nu, mu, None)?;
        let case = SolveCase::MuArtinSchreier;
        if sc.nu1.is_zero() {
            let one = RatFun::one(field);
            let roots = self.solve_in_subfield(mu, (RatFun::zero(field), one), (sc.nu00, sc.nu01))?;
            return Ok(Solution { roots: RootSet::Finite(roots), case, reductions: Vec::new(), candidates: Vec::new() });
        }
        let nu1_sq = h
            .square(&sc.nu1)
            .as_central()
            .cloned()
            .ok_or_else(|| Error::Internal("square of the anticommuting part is not central".into()))?;

        let s_plus_alpha = [alpha.clone(), RatFun::one(field)];
        let s_plus_nu01 = [sc.nu01.clone(), RatFun::one(field)];
        let mut poly = spoly_mul(&spoly_mul(&s_plus_nu01, &s_plus_nu01), &s_plus_alpha);
        poly = spoly_add(&poly, &spoly_mul(&[RatFun::zero(field), alpha.clone()], &s_plus_alpha));
        poly = spoly_add(&poly, &[nu1_sq]);
        poly = spoly_add(&poly, &spoly_mul(std::slice::from_ref(&sc.nu00), &s_plus_alpha));

        let mut candidates = Vec::new();
        for s in rational_roots(&poly, self.opts.divisor_budget)? {
            if s == alpha {
                continue;
            }
            for b in as_solve_f(&s) {
                let b_plus_mu = &Quaternion::central(b.clone()) + mu;
                let inv = h.inverse(&b_plus_mu)?;
                let a = &(&b.square() + &b) + &sc.nu01;
                let assembled =
                    &(&Quaternion::central(a.clone()) + &mu.scale(&b)) + &h.mul(&inv, &sc.nu1);
                candidates.push(CandidateRoot { b, c: None, d: None, a, assembled });
            }
        }
        self.finite(mu, nu, case, candidates)
    }

    /// `mu` square-central (`mu^2 = beta` central).
    ///
    /// With an Artin-Schreier `theta` satisfying `theta mu + mu theta = mu` and
    /// `nu = nu00 + nu01 theta + nu10 mu + nu11 mu theta`, each root is
    /// `bc + nu10 + b theta + c mu + d mu theta` with `d = (b^2 + nu01) / beta`,
    /// `b` a root of `b^3 + (nu01 + beta) b + beta nu11` and `c` a root of a
    /// quadratic over F determined by `b`.
    pub fn solve_mu_sc(&self, mu: &Quaternion, nu: &Quaternion) -> Result<Solution> {
        let h = self.alg;
        let field = h.field();
        if h.classify(mu) != ElementClass::SquareCentral {
            return Err(Error::NotSquareCentral);
        }
        let beta = h.square(mu).as_central().cloned().expect("trace zero squares are central");
        let theta = h.as_complement(mu)?;
        let alpha = (&h.square(&theta) + &theta).as_central().cloned().expect("complement is Artin-Schreier");
        let sc = h.split_coords(nu, &theta, Some(mu))?;
        let (nu00, nu01) = (sc.nu00, sc.nu01);
        let nu10 = sc.nu10.expect("partner supplied");
        let nu11 = sc.nu11.expect("partner supplied");
        let theta_mu = h.mul(mu, &theta);

        let cubic = [
            &beta * &nu11,
            &nu01 + &beta,
            RatFun::zero(field),
            RatFun::one(field),
        ];
        let beta_inv = beta.inv()?;
        let mut candidates = Vec::new();
        for b in rational_roots(&cubic, self.opts.divisor_budget)? {
            let d = &(&b.square() + &nu01) * &beta_inv;
            let qa = &b.square() + &beta;
            if qa.is_zero() {
                h.flag_split();
                return Err(Error::NotDivision(format!("({mu} + {b})^2 = 0")));
            }
            let qb = &beta * &(&d + &RatFun::one(field));
            let qc = &(&(&nu10.square() + &(&b.square() * &alpha)) + &(&(&alpha * &beta) * &d.square())) + &nu00;
            for c in quad_solve_f(&qa, &qb, &qc)? {
                let a = &(&b * &c) + &nu10;
                let assembled = [
                    Quaternion::central(a.clone()),
                    theta.scale(&b),
                    mu.scale(&c),
                    theta_mu.scale(&d),
                ]
                .into_iter()
                .fold(h.zero(), |acc, t| &acc + &t);
                candidates.push(CandidateRoot { b: b.clone(), c: Some(c), d: Some(d.clone()), a, assembled });
            }
        }
        self.finite(mu, nu, SolveCase::MuSquareCentral, candidates)
    }

    /// `mu = 1`, by the class of `nu`.
    pub fn solve_mu_one(&self, nu: &Quaternion) -> Result<Solution> {
        let h = self.alg;
        let field = h.field();
        let case = SolveCase::MuOne;
        let roots = match h.classify(nu) {
            ElementClass::Zero | ElementClass::CentralNonzero => {
                let n = nu.coord(0).clone();
                let central_roots = as_solve_f(&n);
                // non-central roots: tr z = 1 and norm z = nu, i.e.
                // z = a + x + c y + d xy with a^2 + a + alpha + beta (c^2 + cd + alpha d^2) = nu
                let (alpha, beta) = (h.alpha().clone(), h.beta().clone());
                let form = QuadForm {
                    nvars: 3,
                    cross: Some((1, 2)),
                    terms: vec![
                        (RatFun::one(field), Monomial::Square(0)),
                        (RatFun::one(field), Monomial::Linear(0)),
                        (alpha.clone(), Monomial::Constant),
                        (beta.clone(), Monomial::Square(1)),
                        (beta.clone(), Monomial::Cross),
                        (&alpha * &beta, Monomial::Square(2)),
                    ],
                };
                let status = match bounded_form_witness(&form, &n, self.opts.witness_bound, &[])? {
                    WitnessSearch::Witness(v) => LocusStatus::Witness(Quaternion::new([
                        v[0].clone(),
                        RatFun::one(field),
                        v[1].clone(),
                        v[2].clone(),
                    ])),
                    WitnessSearch::NoneWithinBound(d) => LocusStatus::NoneWithinBound(d),
                };
                RootSet::CentralPlusLocus {
                    central_roots,
                    locus: TraceNormLocus { trace: RatFun::one(field), norm: n, status },
                }
            }
            ElementClass::SquareCentral => {
                h.as_complement(nu)?;
                let nu_sq = h.square(nu).as_central().cloned().expect("square-central");
                let mut roots: Vec<Quaternion> = as_solve_f(&nu_sq)
                    .into_iter()
                    .map(|a| &Quaternion::central(a) + nu)
                    .collect();
                roots.sort();
                RootSet::Finite(roots)
            }
            ElementClass::General { eta } => {
                // nu = eta x with x Artin-Schreier; every root lies in F[x]
                let x = nu.scale(&eta.inv()?);
                let z = RatFun::zero(field);
                RootSet::Finite(self.solve_in_subfield(&x, (RatFun::one(field), z.clone()), (z, eta))?)
            }
        };
        Ok(Solution { roots, case, reductions: Vec::new(), candidates: Vec::new() })
    }

    /// `mu = 0`, by the class of `nu`.
    pub fn solve_mu_zero(&self, nu: &Quaternion) -> Result<Solution> {
        let h = self.alg;
        let field = h.field();
        let case = SolveCase::MuZero;
        let roots = match h.classify(nu) {
            // no nonzero nilpotents in a division ring
            ElementClass::Zero => RootSet::Finite(vec![h.zero()]),
            ElementClass::CentralNonzero => {
                let n = nu.coord(0).clone();
                let central_roots: Vec<RatFun> = n.sqrt().into_iter().collect();
                // (a xy + b y + c)^2 = (a^2 alpha + ab + b^2) beta + c^2, with (a, b) != 0
                let (alpha, beta) = (h.alpha().clone(), h.beta().clone());
                let form = QuadForm {
                    nvars: 3,
                    cross: Some((0, 1)),
                    terms: vec![
                        (&alpha * &beta, Monomial::Square(0)),
                        (beta.clone(), Monomial::Cross),
                        (beta.clone(), Monomial::Square(1)),
                        (RatFun::one(field), Monomial::Square(2)),
                    ],
                };
                let status = match bounded_form_witness(&form, &n, self.opts.witness_bound, &[0, 1])? {
                    WitnessSearch::Witness(v) => LocusStatus::Witness(Quaternion::new([
                        v[2].clone(),
                        RatFun::zero(field),
                        v[1].clone(),
                        v[0].clone(),
                    ])),
                    WitnessSearch::NoneWithinBound(d) => LocusStatus::NoneWithinBound(d),
                };
                RootSet::CentralPlusLocus {
                    central_roots,
                    locus: TraceNormLocus { trace: RatFun::zero(field), norm: n, status },
                }
            }
            // a root commutes with nu, so lies in F[nu] where squares are central
            ElementClass::SquareCentral => RootSet::Finite(Vec::new()),
            ElementClass::General { eta } => {
                // nu = eta x, z = p + q x with q^2 = eta, p^2 = eta (x^2 + x)
                let x = nu.scale(&eta.inv()?);
                let alpha_x = (&h.square(&x) + &x).as_central().cloned().expect("Artin-Schreier");
                let root = (&eta * &alpha_x).sqrt().zip(eta.sqrt());
                RootSet::Finite(
                    root.map(|(p, q)| &Quaternion::central(p) + &x.scale(&q)).into_iter().collect(),
                )
            }
        };
        Ok(Solution { roots, case, reductions: Vec::new(), candidates: Vec::new() })
    }
}

impl fmt::Display for SolveCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveCase::MuZero => "mu-zero",
            SolveCase::MuOne => "mu-one",
            SolveCase::MuSquareCentral => "mu-square-central",
            SolveCase::MuArtinSchreier => "mu-artin-schreier",
        })
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::DivideByCentralMu(m) => write!(f, "z = ({m})*w, mu -> 1"),
            Reduction::DivideByTrace(e) => write!(f, "z = ({e})*w, mu -> mu/({e})"),
        }
    }
}

impl fmt::Display for LocusStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusStatus::Witness(_) => f.write_str("witness"),
            LocusStatus::NoneWithinBound(_) => f.write_str("none-within-bound"),
        }
    }
}

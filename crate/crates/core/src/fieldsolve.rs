//! Scalar equation solving over F = GF(2^k)(T) and over quadratic
//! extensions F[x'] with x'^2 + x' = alpha.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2k::Fq;
use crate::gf2lin::{solve_columns, AffineSolution, BitVec};
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// Default degree bound for [`bounded_form_witness`].
pub const DEFAULT_WITNESS_BOUND: u32 = 3;

/// Largest kernel enumerated exhaustively when choosing a canonical solution.
const MAX_KERNEL_ENUM: usize = 10;

fn poly_to_bits(p: &Poly, nrows: usize) -> BitVec {
    let k = p.field().degree() as usize;
    let mut v = BitVec::zeros(nrows);
    for (i, &c) in p.raw().iter().enumerate() {
        for j in 0..k {
            if c >> j & 1 == 1 {
                v.set(i * k + j, true);
            }
        }
    }
    v
}

/// Reads `nvars` consecutive polynomials of degree <= `max_deg` from a bit vector
/// laid out as `(degree, var, bit)`.
fn bits_to_polys(v: &BitVec, field: Fq, nvars: usize, max_deg: usize) -> Vec<Poly> {
    let k = field.degree() as usize;
    (0..nvars)
        .map(|var| {
            let coeffs: Vec<u8> = (0..=max_deg)
                .map(|d| {
                    (0..k).fold(0u8, |acc, j| {
                        acc | (v.get((d * nvars + var) * k + j) as u8) << j
                    })
                })
                .collect();
            Poly::from_coeffs(field, &coeffs.iter().map(|&b| field.elem(b as u32)).collect::<Vec<_>>())
        })
        .collect()
}

fn basis_poly(field: Fq, degree: usize, bit: usize) -> Poly {
    Poly::monomial(field.elem(1 << bit), degree)
}

/// All y in F with y^2 + y = c.
///
/// For c = p/q reduced, a solution u/v (reduced) forces q = v^2 and
/// u^2 + uv = p with deg u <= deg p; that last equation is GF(2)-linear in
/// the coefficient bits of u.
pub fn as_solve_f(c: &RatFun) -> Vec<RatFun> {
    let field = c.field();
    if c.is_zero() {
        return vec![RatFun::zero(field), RatFun::one(field)];
    }
    let Some(v) = c.den().sqrt() else {
        return Vec::new();
    };
    let p = c.num();
    let m = p.degree().expect("nonzero");
    let k = field.degree() as usize;
    let dv = v.degree().expect("nonzero");
    let nrows = (2 * m).max(m + dv).max(m) + 1;
    let nrows = nrows * k;
    let columns: Vec<BitVec> = (0..=m)
        .flat_map(|d| (0..k).map(move |j| (d, j)))
        .map(|(d, j)| {
            let e = basis_poly(field, d, j);
            poly_to_bits(&(&e.square() + &(&e * &v)), nrows)
        })
        .collect();
    let Some(sol) = solve_columns(&columns, &poly_to_bits(p, nrows)) else {
        return Vec::new();
    };
    let mut out: Vec<RatFun> = sol
        .enumerate(MAX_KERNEL_ENUM)
        .unwrap_or_else(|| vec![sol.particular.clone()])
        .iter()
        .map(|bits| {
            let u = bits_to_polys(bits, field, 1, m).remove(0);
            RatFun::new(u, v.clone()).expect("nonzero denominator")
        })
        .filter(|y| &(&y.square() + y) == c)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All s in F with A s^2 + B s + C = 0.
pub fn quad_solve_f(a: &RatFun, b: &RatFun, c: &RatFun) -> Result<Vec<RatFun>> {
    let mut out = match (a.is_zero(), b.is_zero()) {
        (true, true) if c.is_zero() => return Err(Error::IdentityEquation),
        (true, true) => Vec::new(),
        (true, false) => vec![c.div(b)?],
        (false, true) => c.div(a)?.sqrt().into_iter().collect(),
        (false, false) => {
            // s = (B/A) w turns the equation into w^2 + w = AC/B^2
            let scale = b.div(a)?;
            let rhs = (a * c).div(&b.square())?;
            as_solve_f(&rhs).iter().map(|w| &scale * w).collect()
        }
    };
    out.sort();
    Ok(out)
}

/// Statistics from one [`rational_roots`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootSearchStats {
    /// Valuation patterns surviving the Newton polygon filters.
    pub patterns: usize,
    /// Exact evaluations performed.
    pub evaluations: usize,
}

fn newton_slopes(vals: &[Option<i64>], lo: i64, hi: i64, maximize: bool) -> Vec<i64> {
    // a root's valuation must make the extremum of vals[i] + i*s attained twice
    (lo..=hi)
        .filter(|&s| {
            let terms: Vec<i64> = vals
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.map(|v| v + i as i64 * s))
                .collect();
            let ext = if maximize {
                *terms.iter().max().unwrap()
            } else {
                *terms.iter().min().unwrap()
            };
            terms.iter().filter(|&&t| t == ext).count() >= 2
        })
        .collect()
}

/// All roots in F of `sum coeffs[i] * s^i`.
///
/// After clearing denominators to a primitive polynomial over GF(2^k)[T], a
/// root lambda*u/v (u, v monic and coprime, lambda a unit) has v dividing the
/// leading and u dividing the trailing coefficient. Candidates are enumerated
/// over those divisors (as valuation patterns over their irreducible factors),
/// pruned by Newton polygons at each factor and at infinity, and confirmed by
/// exact evaluation.
pub fn rational_roots(coeffs: &[RatFun], budget: usize) -> Result<Vec<RatFun>> {
    rational_roots_with_stats(coeffs, budget).map(|(r, _)| r)
}

pub fn rational_roots_with_stats(
    coeffs: &[RatFun],
    budget: usize,
) -> Result<(Vec<RatFun>, RootSearchStats)> {
    let mut stats = RootSearchStats::default();
    let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Err(Error::ZeroPolynomial);
    };
    let field = coeffs[0].field();
    let coeffs = &coeffs[..=top];

    // common denominator, then remove content
    let lcm = coeffs.iter().fold(Poly::one(field), |l, c| {
        let g = l.gcd(c.den());
        &l * &c.den().div_exact(&g).unwrap()
    });
    let mut cs: Vec<Poly> = coeffs
        .iter()
        .map(|c| c.num() * &lcm.div_exact(c.den()).unwrap())
        .collect();
    let content = cs.iter().fold(Poly::zero(field), |g, c| g.gcd(c));
    for c in cs.iter_mut() {
        *c = c.div_exact(&content)?;
    }

    let mut roots = Vec::new();
    let lead_zeros = cs.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(RatFun::zero(field));
        cs.drain(..lead_zeros);
    }
    let n = cs.len() - 1;
    if n == 0 {
        return Ok((roots, stats));
    }

    let trail = &cs[0];
    let lead = &cs[n];
    let ft = trail.factor()?;
    let fl = lead.factor()?;
    for fac in [&ft, &fl] {
        let needed: u128 = fac.factors.iter().map(|(_, e)| *e as u128 + 1).product();
        if needed > budget as u128 {
            return Err(Error::DivisorBudgetExceeded { needed, budget });
        }
    }
    let mut primes: Vec<Poly> = ft
        .factors
        .iter()
        .chain(&fl.factors)
        .map(|(p, _)| p.clone())
        .collect();
    primes.sort();
    primes.dedup();

    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(primes.len());
    for pi in &primes {
        let vals: Vec<Option<i64>> = cs
            .iter()
            .map(|c| (!c.is_zero()).then(|| c.valuation(pi) as i64))
            .collect();
        let slopes = newton_slopes(&vals, -vals[n].unwrap(), vals[0].unwrap(), false);
        // valuation of a root is minus the slope of the lower polygon
        let allowed: Vec<i64> = slopes.into_iter().collect();
        if allowed.is_empty() {
            return Ok((roots, stats));
        }
        choices.push(allowed);
    }
    let degs: Vec<Option<i64>> = cs.iter().map(|c| c.degree().map(|d| d as i64)).collect();
    let deg_ok = newton_slopes(
        &degs,
        -(lead.degree().unwrap() as i64),
        trail.degree().unwrap() as i64,
        true,
    );

    let mut pattern = vec![0usize; primes.len()];
    loop {
        let degree: i64 = pattern
            .iter()
            .zip(&choices)
            .zip(&primes)
            .map(|((&i, ch), p)| ch[i] * p.degree().unwrap() as i64)
            .sum();
        if deg_ok.contains(&degree) {
            stats.patterns += 1;
            let mut num = Poly::one(field);
            let mut den = Poly::one(field);
            for ((&i, ch), p) in pattern.iter().zip(&choices).zip(&primes) {
                let e = ch[i];
                if e > 0 {
                    num = &num * &p.pow(e as u32);
                } else if e < 0 {
                    den = &den * &p.pow((-e) as u32);
                }
            }
            let vpow: Vec<Poly> = std::iter::successors(Some(Poly::one(field)), |p| Some(p * &den))
                .take(n + 1)
                .collect();
            for unit in field.nonzero_elements() {
                stats.evaluations += 1;
                let u = num.scale(unit);
                let mut acc = cs[n].clone();
                for i in (0..n).rev() {
                    acc = &(&acc * &u) + &(&cs[i] * &vpow[n - i]);
                }
                if acc.is_zero() {
                    roots.push(RatFun::new(u, den.clone())?);
                }
            }
        }
        // next pattern (odometer)
        let mut idx = 0;
        loop {
            if idx == pattern.len() {
                roots.sort();
                roots.dedup();
                return Ok((roots, stats));
            }
            pattern[idx] += 1;
            if pattern[idx] < choices[idx].len() {
                break;
            }
            pattern[idx] = 0;
            idx += 1;
        }
    }
}

/// The quadratic extension K = F[x'] with x'^2 + x' = alpha, required to be a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    alpha: RatFun,
}

/// `c0 + c1 * x'` in a [`QuadExt`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KElem {
    pub c0: RatFun,
    pub c1: RatFun,
}

impl KElem {
    pub fn new(c0: RatFun, c1: RatFun) -> Self {
        KElem { c0, c1 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn add(&self, other: &KElem) -> KElem {
        KElem { c0: &self.c0 + &other.c0, c1: &self.c1 + &other.c1 }
    }
}

impl QuadExt {
    pub fn new(alpha: RatFun) -> Result<Self> {
        if !as_solve_f(&alpha).is_empty() {
            return Err(Error::NotDivision(format!(
                "x'^2 + x' = {alpha} has a root in F, so F[x'] is not a field"
            )));
        }
        Ok(QuadExt { alpha })
    }

    pub fn alpha(&self) -> &RatFun {
        &self.alpha
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let hi = &a.c1 * &b.c1;
        KElem {
            c0: &(&a.c0 * &b.c0) + &(&self.alpha * &hi),
            c1: &(&(&a.c0 * &b.c1) + &(&a.c1 * &b.c0)) + &hi,
        }
    }

    /// u0^2 + u0 u1 + alpha u1^2.
    pub fn norm(&self, a: &KElem) -> RatFun {
        &(&a.c0.square() + &(&a.c0 * &a.c1)) + &(&self.alpha * &a.c1.square())
    }

    pub fn inv(&self, a: &KElem) -> Result<KElem> {
        let n = self.norm(a).inv()?;
        Ok(KElem { c0: &(&a.c0 + &a.c1) * &n, c1: &a.c1 * &n })
    }

    /// All roots in K of z^2 + mu z + nu = 0.
    pub fn solve_quadratic(&self, mu: &KElem, nu: &KElem) -> Result<Vec<KElem>> {
        let mut out = Vec::new();
        if mu.is_zero() {
            // (p + q x')^2 = (p^2 + q^2 alpha) + q^2 x'
            if let Some(q) = nu.c1.sqrt() {
                let rest = &nu.c0 + &(&nu.c1 * &self.alpha);
                if let Some(p) = rest.sqrt() {
                    out.push(KElem::new(p, q));
                }
            }
        } else {
            // z = mu w reduces to w^2 + w = nu / mu^2
            let mu_inv = self.inv(mu)?;
            let c = self.mul(nu, &self.mul(&mu_inv, &mu_inv));
            for y1 in as_solve_f(&c.c1) {
                let rhs = &c.c0 + &(&y1.square() * &self.alpha);
                for y0 in as_solve_f(&rhs) {
                    out.push(self.mul(mu, &KElem::new(y0, y1.clone())));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// A monomial in the variables of a [`QuadForm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monomial {
    Square(usize),
    /// Product of the form's designated cross pair.
    Cross,
    Linear(usize),
    Constant,
}

/// `sum coeff * monomial` over at most three F-variables with at most one cross pair.
#[derive(Clone, Debug)]
pub struct QuadForm {
    pub nvars: usize,
    pub cross: Option<(usize, usize)>,
    pub terms: Vec<(RatFun, Monomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Witness(Vec<RatFun>),
    NoneWithinBound(u32),
}

impl QuadForm {
    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::UnsupportedFormShape(m));
        if self.nvars == 0 || self.nvars > 3 {
            return bad(format!("{} variables (1..=3 supported)", self.nvars));
        }
        if let Some((p, r)) = self.cross {
            if p == r || p >= self.nvars || r >= self.nvars {
                return bad("invalid cross pair".into());
            }
        }
        for (_, m) in &self.terms {
            match *m {
                Monomial::Square(i) | Monomial::Linear(i) if i >= self.nvars => {
                    return bad(format!("variable {i} out of range"));
                }
                Monomial::Cross if self.cross.is_none() => {
                    return bad("cross term without a designated pair".into());
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn eval(&self, vars: &[RatFun]) -> RatFun {
        let field = vars[0].field();
        self.terms.iter().fold(RatFun::zero(field), |acc, (c, m)| {
            let v = match *m {
                Monomial::Square(i) => vars[i].square(),
                Monomial::Cross => {
                    let (p, r) = self.cross.unwrap();
                    &vars[p] * &vars[r]
                }
                Monomial::Linear(i) => vars[i].clone(),
                Monomial::Constant => RatFun::one(field),
            };
            &acc + &(c * &v)
        })
    }
}

impl fmt::Display for WitnessSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSearch::Witness(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "witness ({})", parts.join(", "))
            }
            WitnessSearch::NoneWithinBound(d) => write!(f, "none within bound {d}"),
        }
    }
}

/// All polynomials of degree <= `bound` over the constant field, in canonical order.
fn polys_up_to(field: Fq, bound: u32, monic_only: bool) -> Vec<Poly> {
    let q = field.order();
    let mut out = vec![Poly::zero(field)];
    for d in 0..=bound as usize {
        let count = q.pow(d as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                coeffs.push(field.elem((rest % q) as u32));
                rest /= q;
            }
            if monic_only {
                coeffs.push(field.one());
                out.push(Poly::from_coeffs(field, &coeffs));
            } else {
                for lead in field.nonzero_elements() {
                    let mut c = coeffs.clone();
                    c.push(lead);
                    out.push(Poly::from_coeffs(field, &c));
                }
            }
        }
    }
    if monic_only {
        out.remove(0);
    }
    out.sort();
    out
}

/// Searches for an assignment of the form's variables making it equal `target`.
///
/// Variables range over `u_i / w` with numerators of degree <= `bound` and a
/// common monic denominator `w` of degree <= `bound`. The second variable of the
/// cross pair is enumerated; for each fixed value the remaining equation is
/// GF(2)-affine in the coefficient bits of the other numerators. `nonzero` lists
/// variables of which at least one must be nonzero in the witness.
///
/// A returned witness always re-evaluates to `target` exactly; absence is only a
/// statement about the bound.
pub fn bounded_form_witness(
    form: &QuadForm,
    target: &RatFun,
    bound: u32,
    nonzero: &[usize],
) -> Result<WitnessSearch> {
    form.validate()?;
    let field = target.field();
    let k = field.degree() as usize;
    let enumerated = form.cross.map(|(_, r)| r);
    let solved: Vec<usize> = (0..form.nvars).filter(|&i| Some(i) != enumerated).collect();
    let nsolved = solved.len();
    let deg_bound = bound as usize;

    // clear every denominator in the coefficients and the target
    let lcm = form
        .terms
        .iter()
        .map(|(c, _)| c.den())
        .chain(std::iter::once(target.den()))
        .fold(Poly::one(field), |l, d| {
            let g = l.gcd(d);
            &l * &d.div_exact(&g).unwrap()
        });
    let clear = |c: &RatFun| c.num() * &lcm.div_exact(c.den()).unwrap();
    let target_p = clear(target);
    let terms: Vec<(Poly, Monomial)> = form.terms.iter().map(|(c, m)| (clear(c), *m)).collect();

    let enum_values = if enumerated.is_some() {
        polys_up_to(field, bound, false)
    } else {
        vec![Poly::zero(field)]
    };

    for w in polys_up_to(field, bound, true) {
        let w2 = w.square();
        for r in &enum_values {
            // constant part moved to the right-hand side
            let mut rhs = &target_p * &w2;
            for (c, m) in &terms {
                let t = match *m {
                    Monomial::Constant => c * &w2,
                    Monomial::Square(i) if Some(i) == enumerated => c * &r.square(),
                    Monomial::Linear(i) if Some(i) == enumerated => &(c * r) * &w,
                    _ => continue,
                };
                rhs = &rhs + &t;
            }
            // images of basis vectors, column order (degree, var, bit)
            let mut images = Vec::with_capacity((deg_bound + 1) * nsolved * k);
            for d in 0..=deg_bound {
                for &var in &solved {
                    for j in 0..k {
                        let e = basis_poly(field, d, j);
                        let mut img = Poly::zero(field);
                        for (c, m) in &terms {
                            let t = match *m {
                                Monomial::Square(i) if i == var => c * &e.square(),
                                Monomial::Linear(i) if i == var => &(c * &e) * &w,
                                Monomial::Cross if form.cross.unwrap().0 == var => &(c * &e) * r,
                                _ => continue,
                            };
                            img = &img + &t;
                        }
                        images.push(img);
                    }
                }
            }
            let top = images
                .iter()
                .chain(std::iter::once(&rhs))
                .filter_map(|p| p.degree())
                .max()
                .unwrap_or(0);
            let nrows = (top + 1) * k;
            let columns: Vec<BitVec> = images.iter().map(|p| poly_to_bits(p, nrows)).collect();
            let Some(sol) = solve_columns(&columns, &poly_to_bits(&rhs, nrows)) else {
                continue;
            };
            if let Some(nums) = pick_solution(&sol, field, nsolved, deg_bound, r, enumerated, &solved, form.nvars, nonzero) {
                let vars: Vec<RatFun> = nums
                    .into_iter()
                    .map(|u| RatFun::new(u, w.clone()).expect("monic denominator"))
                    .collect();
                if &form.eval(&vars) == target {
                    return Ok(WitnessSearch::Witness(vars));
                }
                return Err(Error::Internal("form witness failed re-evaluation".into()));
            }
        }
    }
    Ok(WitnessSearch::NoneWithinBound(bound))
}

/// Picks the canonical member of an affine solution set: smallest maximal
/// degree, then smallest per-variable degrees, subject to the nonzero constraint.
#[allow(clippy::too_many_arguments)]
fn pick_solution(
    sol: &AffineSolution,
    field: Fq,
    nsolved: usize,
    deg_bound: usize,
    r: &Poly,
    enumerated: Option<usize>,
    solved: &[usize],
    nvars: usize,
    nonzero: &[usize],
) -> Option<Vec<Poly>> {
    let candidates = sol.enumerate(MAX_KERNEL_ENUM).unwrap_or_else(|| {
        let mut v = vec![sol.particular.clone()];
        for kv in &sol.kernel {
            let mut c = sol.particular.clone();
            c.xor_with(kv);
            v.push(c);
        }
        v
    });
    candidates
        .iter()
        .map(|bits| {
            let polys = bits_to_polys(bits, field, nsolved, deg_bound);
            let mut all = vec![Poly::zero(field); nvars];
            for (p, &var) in polys.into_iter().zip(solved) {
                all[var] = p;
            }
            if let Some(e) = enumerated {
                all[e] = r.clone();
            }
            all
        })
        .filter(|all| nonzero.is_empty() || nonzero.iter().any(|&i| !all[i].is_zero()))
        .min_by(|a, b| {
            let key = |v: &Vec<Poly>| {
                let degs: Vec<i64> = v.iter().map(|p| p.degree().map_or(-1, |d| d as i64)).collect();
                (degs.iter().copied().max().unwrap_or(-1), degs)
            };
            key(a).cmp(&key(b)).then_with(|| a.cmp(b))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Fq {
        Fq::gf2()
    }

    fn p(mask: u64) -> Poly {
        Poly::from_gf2_mask(f2(), mask)
    }

    fn r(n: u64, d: u64) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    fn rp(n: u64) -> RatFun {
        r(n, 1)
    }

    #[test]
    fn artin_schreier_examples() {
        assert_eq!(as_solve_f(&rp(0b110)), vec![rp(0b10), rp(0b11)]);
        assert!(as_solve_f(&rp(0b10)).is_empty());
        assert_eq!(as_solve_f(&rp(0)), vec![rp(0), rp(1)]);
        // 1/T has no Artin-Schreier root: T is not a square
        assert!(as_solve_f(&r(1, 0b10)).is_empty());
        // y = 1/T: y^2 + y = (1 + T)/T^2
        assert_eq!(as_solve_f(&r(0b11, 0b100)), vec![r(1, 0b10), r(0b11, 0b10)]);
    }

    #[test]
    fn quadratic_examples() {
        let t2 = rp(0b100);
        assert_eq!(quad_solve_f(&rp(1), &rp(0), &t2).unwrap(), vec![rp(0b10)]);
        assert_eq!(quad_solve_f(&rp(1), &rp(1), &rp(0b110)).unwrap(), vec![rp(0b10), rp(0b11)]);
        let t = rp(0b10);
        assert_eq!(quad_solve_f(&t, &t, &rp(0b1100)).unwrap(), vec![rp(0b10), rp(0b11)]);
        assert_eq!(quad_solve_f(&rp(0), &t, &t).unwrap(), vec![rp(1)]);
        assert!(quad_solve_f(&rp(0), &rp(0), &t).unwrap().is_empty());
        assert!(matches!(
            quad_solve_f(&rp(0), &rp(0), &rp(0)),
            Err(Error::IdentityEquation)
        ));
    }

    #[test]
    fn rational_root_examples() {
        let b = DEFAULT_DIVISOR_BUDGET_TEST;
        let roots = rational_roots(&[rp(0b110), rp(1), rp(1)], b).unwrap();
        assert_eq!(roots, vec![rp(0b10), rp(0b11)]);
        let roots = rational_roots(&[rp(0), rp(0), rp(0), rp(1)], b).unwrap();
        assert_eq!(roots, vec![rp(0)]);
        assert!(matches!(rational_roots(&[rp(0), rp(0)], b), Err(Error::ZeroPolynomial)));
    }

    const DEFAULT_DIVISOR_BUDGET_TEST: usize = crate::poly::DEFAULT_DIVISOR_BUDGET;

    #[test]
    fn planted_roots_with_denominator() {
        // (s + 1/T)(s + T)(s + T + 1), expanded by hand from elementary symmetric sums
        let r1 = r(1, 0b10);
        let r2 = rp(0b10);
        let r3 = rp(0b11);
        let e1 = &(&r1 + &r2) + &r3;
        let e2 = &(&(&r1 * &r2) + &(&r1 * &r3)) + &(&r2 * &r3);
        let e3 = &(&r1 * &r2) * &r3;
        let roots = rational_roots(&[e3, e2, e1, rp(1)], DEFAULT_DIVISOR_BUDGET_TEST).unwrap();
        let mut expected = vec![r1, r2, r3];
        expected.sort();
        assert_eq!(roots, expected);
    }

    #[test]
    fn extension_examples() {
        let t = rp(0b10);
        let k = QuadExt::new(t.clone()).unwrap();
        let zero = KElem::new(rp(0), rp(0));
        let one = KElem::new(rp(1), rp(0));
        let x = KElem::new(rp(0), rp(1));
        let alpha = KElem::new(t.clone(), rp(0));
        // z^2 + z = alpha
        let sols = k.solve_quadratic(&one, &alpha).unwrap();
        assert_eq!(sols, vec![x.clone(), KElem::new(rp(1), rp(1))]);
        // z^2 = alpha + x
        let sols = k.solve_quadratic(&zero, &KElem::new(t.clone(), rp(1))).unwrap();
        assert_eq!(sols, vec![x]);
        // z^2 + z + T^2 + T: both roots central
        let sols = k.solve_quadratic(&one, &KElem::new(rp(0b110), rp(0))).unwrap();
        assert_eq!(sols, vec![KElem::new(rp(0b10), rp(0)), KElem::new(rp(0b11), rp(0))]);
        assert!(QuadExt::new(rp(0b110)).is_err());
    }

    fn norm_form_split() -> QuadForm {
        // (a^2 alpha + ab + b^2) beta + c^2 with alpha = beta = T
        let t = rp(0b10);
        QuadForm {
            nvars: 3,
            cross: Some((0, 1)),
            terms: vec![
                (rp(0b100), Monomial::Square(0)),
                (t.clone(), Monomial::Cross),
                (t, Monomial::Square(1)),
                (rp(1), Monomial::Square(2)),
            ],
        }
    }

    #[test]
    fn form_witness_examples() {
        let form = norm_form_split();
        let w = bounded_form_witness(&form, &rp(0b100), 3, &[]).unwrap();
        assert_eq!(w, WitnessSearch::Witness(vec![rp(1), rp(0), rp(0)]));
        let w = bounded_form_witness(&form, &rp(0b10), 3, &[]).unwrap();
        assert_eq!(w, WitnessSearch::Witness(vec![rp(0), rp(1), rp(0)]));
        let w = bounded_form_witness(&form, &rp(1), 3, &[]).unwrap();
        assert_eq!(w, WitnessSearch::Witness(vec![rp(0), rp(0), rp(1)]));
    }

    #[test]
    fn form_shape_validation() {
        let bad = QuadForm { nvars: 4, cross: None, terms: vec![] };
        assert!(matches!(
            bounded_form_witness(&bad, &rp(1), 1, &[]),
            Err(Error::UnsupportedFormShape(_))
        ));
        let bad = QuadForm { nvars: 2, cross: None, terms: vec![(rp(1), Monomial::Cross)] };
        assert!(matches!(
            bounded_form_witness(&bad, &rp(1), 1, &[]),
            Err(Error::UnsupportedFormShape(_))
        ));
    }

    #[test]
    fn witness_bound_is_reported() {
        // T is not a square, and a single-variable square form cannot reach it
        let form = QuadForm { nvars: 1, cross: None, terms: vec![(rp(1), Monomial::Square(0))] };
        assert_eq!(
            bounded_form_witness(&form, &rp(0b10), 2, &[]).unwrap(),
            WitnessSearch::NoneWithinBound(2)
        );
    }
}

//! The quaternion algebra [alpha, beta) over F = GF(2^k)(T):
//! `F + Fx + Fy + Fxy` with `x^2 + x = alpha`, `y^2 = beta`, `xy + yx = y`.

use std::fmt;
use std::ops::Add;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::fieldsolve::{as_solve_f, bounded_form_witness, Monomial, QuadForm, WitnessSearch};
use crate::gf2k::Fq;
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// Basis index of `1`, `x`, `y`, `xy`.
pub const ONE: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const XY: usize = 3;

/// `a + b x + c y + d xy`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion {
    coords: [RatFun; 4],
}

/// The partition of Q into zero, nonzero central, square-central and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementClass {
    Zero,
    CentralNonzero,
    SquareCentral,
    /// Neither central nor square-central; `eta = tr(q)` and `q / eta` is Artin-Schreier.
    General { eta: RatFun },
}

/// Decomposition of an element against an Artin-Schreier `e` and optionally a
/// square-central partner `f` with `ef + fe = f`:
/// `nu0 = nu00 + nu01 e`, `nu1 = nu10 f + nu11 f e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCoords {
    pub nu0: Quaternion,
    pub nu1: Quaternion,
    pub nu00: RatFun,
    pub nu01: RatFun,
    pub nu10: Option<RatFun>,
    pub nu11: Option<RatFun>,
}

type TableEntry = Vec<(usize, RatFun)>;

/// Algebra context. Immutable apart from a one-way latch recording that a zero
/// divisor was observed.
#[derive(Debug)]
pub struct QuatAlgebra {
    field: Fq,
    alpha: RatFun,
    beta: RatFun,
    table: [[TableEntry; 4]; 4],
    preflight_bound: Option<u32>,
    split_detected: AtomicBool,
}

impl Clone for QuatAlgebra {
    fn clone(&self) -> Self {
        QuatAlgebra {
            field: self.field,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            table: self.table.clone(),
            preflight_bound: self.preflight_bound,
            split_detected: AtomicBool::new(self.split_detected.load(Ordering::SeqCst)),
        }
    }
}

/// Rewrites words in `x`, `y` to the normal forms `1, x, y, xy` using
/// `xx -> x + alpha`, `yy -> beta`, `yx -> xy + y`.
fn normalize_word(word: Vec<u8>, alpha: &RatFun, beta: &RatFun) -> [RatFun; 4] {
    let field = alpha.field();
    let mut out: [RatFun; 4] = std::array::from_fn(|_| RatFun::zero(field));
    let mut pending = vec![(word, RatFun::one(field))];
    while let Some((w, c)) = pending.pop() {
        let redex = w.windows(2).position(|p| p == b"xx" || p == b"yy" || p == b"yx");
        let Some(i) = redex else {
            let idx = match w.as_slice() {
                b"" => ONE,
                b"x" => X,
                b"y" => Y,
                b"xy" => XY,
                other => unreachable!("irreducible word {:?}", other),
            };
            out[idx] = &out[idx] + &c;
            continue;
        };
        let (head, tail) = (&w[..i], &w[i + 2..]);
        let splice = |mid: &[u8]| [head, mid, tail].concat();
        match &w[i..i + 2] {
            b"xx" => {
                pending.push((splice(b"x"), c.clone()));
                pending.push((splice(b""), &c * alpha));
            }
            b"yy" => pending.push((splice(b""), &c * beta)),
            _ => {
                pending.push((splice(b"xy"), c.clone()));
                pending.push((splice(b"y"), c));
            }
        }
    }
    out
}

fn basis_word(i: usize) -> &'static [u8] {
    [b"" as &[u8], b"x", b"y", b"xy"][i]
}

impl QuatAlgebra {
    /// Builds [alpha, beta) and runs the division preflight: `x^2 + x = alpha`
    /// must have no root in F, and `p^2 + pq + alpha q^2 = beta` no witness
    /// within `witness_bound`. Passing is necessary, not sufficient, for division.
    pub fn new(alpha: RatFun, beta: RatFun, witness_bound: u32) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::SplitAlgebra("beta must be nonzero".into()));
        }
        if let Some(r) = as_solve_f(&alpha).first() {
            return Err(Error::SplitAlgebra(format!(
                "x^2 + x = {alpha} has the root {r} in F"
            )));
        }
        let field = alpha.field();
        let norm_form = QuadForm {
            nvars: 2,
            cross: Some((0, 1)),
            terms: vec![
                (RatFun::one(field), Monomial::Square(0)),
                (RatFun::one(field), Monomial::Cross),
                (alpha.clone(), Monomial::Square(1)),
            ],
        };
        if let WitnessSearch::Witness(w) = bounded_form_witness(&norm_form, &beta, witness_bound, &[])? {
            let [p, q]: [RatFun; 2] = w.try_into().expect("two variables");
            let z = Quaternion::new([p, q, RatFun::zero(field), RatFun::zero(field)]);
            return Err(Error::SplitAlgebra(format!("beta = {beta} is the norm of {z} from F[x]")));
        }
        let mut alg = Self::unchecked(alpha, beta);
        alg.preflight_bound = Some(witness_bound);
        Ok(alg)
    }

    /// Builds the algebra without the division preflight. Arithmetic, the
    /// involution and the decompositions are valid in any such algebra.
    pub fn unchecked(alpha: RatFun, beta: RatFun) -> Self {
        let field = alpha.field();
        let table = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let word = [basis_word(i), basis_word(j)].concat();
                normalize_word(word, &alpha, &beta)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
        });
        QuatAlgebra {
            field,
            alpha,
            beta,
            table,
            preflight_bound: None,
            split_detected: AtomicBool::new(false),
        }
    }

    /// The standard division instance over GF(2^k)(T): alpha = T and
    /// beta = T + c with c the first constant of absolute trace 1. Then F[x] is
    /// inert at T + c, where beta has odd valuation, so the algebra ramifies there.
    pub fn standard(field: Fq, witness_bound: u32) -> Result<Self> {
        let (alpha, beta) = Self::standard_parameters(field);
        Self::new(alpha, beta, witness_bound)
    }

    /// `(alpha, beta)` of [`QuatAlgebra::standard`].
    pub fn standard_parameters(field: Fq) -> (RatFun, RatFun) {
        let c = field
            .elements()
            .find(|e| e.trace())
            .expect("GF(2^k) has elements of trace 1");
        (RatFun::t(field), RatFun::from_poly(&Poly::t(field) + &Poly::constant(c)))
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn alpha(&self) -> &RatFun {
        &self.alpha
    }

    pub fn beta(&self) -> &RatFun {
        &self.beta
    }

    pub fn preflight_bound(&self) -> Option<u32> {
        self.preflight_bound
    }

    /// Whether a nonzero element of norm zero has been observed.
    pub fn split_detected(&self) -> bool {
        self.split_detected.load(Ordering::SeqCst)
    }

    pub(crate) fn flag_split(&self) {
        self.split_detected.store(true, Ordering::SeqCst);
    }

    /// Product of two basis elements, as `(basis index, coefficient)` pairs.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, RatFun)] {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Quaternion {
        Quaternion::central(RatFun::zero(self.field))
    }

    pub fn one(&self) -> Quaternion {
        Quaternion::central(RatFun::one(self.field))
    }

    pub fn basis(&self, i: usize) -> Quaternion {
        let mut c: [RatFun; 4] = std::array::from_fn(|_| RatFun::zero(self.field));
        c[i] = RatFun::one(self.field);
        Quaternion::new(c)
    }

    pub fn x(&self) -> Quaternion {
        self.basis(X)
    }

    pub fn y(&self) -> Quaternion {
        self.basis(Y)
    }

    pub fn xy(&self) -> Quaternion {
        self.basis(XY)
    }

    pub fn mul(&self, p: &Quaternion, q: &Quaternion) -> Quaternion {
        let mut out: [RatFun; 4] = std::array::from_fn(|_| RatFun::zero(self.field));
        for (i, pi) in p.coords.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            for (j, qj) in q.coords.iter().enumerate() {
                if qj.is_zero() {
                    continue;
                }
                let pq = pi * qj;
                for (idx, c) in &self.table[i][j] {
                    out[*idx] = &out[*idx] + &(&pq * c);
                }
            }
        }
        Quaternion::new(out)
    }

    pub fn square(&self, q: &Quaternion) -> Quaternion {
        self.mul(q, q)
    }

    /// `sigma(a + bx + cy + dxy) = (a + b) + bx + cy + dxy`.
    pub fn conjugate(&self, q: &Quaternion) -> Quaternion {
        let [a, b, c, d] = &q.coords;
        Quaternion::new([a + b, b.clone(), c.clone(), d.clone()])
    }

    pub fn trace(&self, q: &Quaternion) -> RatFun {
        q.coords[X].clone()
    }

    /// `a^2 + ab + alpha b^2 + beta (c^2 + cd + alpha d^2)`.
    pub fn norm(&self, q: &Quaternion) -> RatFun {
        let [a, b, c, d] = &q.coords;
        let left = &(&a.square() + &(a * b)) + &(&self.alpha * &b.square());
        let right = &(&c.square() + &(c * d)) + &(&self.alpha * &d.square());
        &left + &(&self.beta * &right)
    }

    /// Returns `(sigma(q), tr(q), norm(q))`.
    pub fn involution_norm_trace(&self, q: &Quaternion) -> (Quaternion, RatFun, RatFun) {
        (self.conjugate(q), self.trace(q), self.norm(q))
    }

    /// `sigma(q) / norm(q)`; a nonzero element of norm zero latches the split flag.
    pub fn inverse(&self, q: &Quaternion) -> Result<Quaternion> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm(q);
        if n.is_zero() {
            self.flag_split();
            return Err(Error::NotDivision(format!("{q} is a zero divisor")));
        }
        Ok(self.conjugate(q).scale(&n.inv()?))
    }

    pub fn is_artin_schreier(&self, e: &Quaternion) -> bool {
        self.trace(e).is_one()
    }

    pub fn classify(&self, q: &Quaternion) -> ElementClass {
        if q.is_zero() {
            ElementClass::Zero
        } else if q.is_central() {
            ElementClass::CentralNonzero
        } else if self.trace(q).is_zero() {
            ElementClass::SquareCentral
        } else {
            ElementClass::General { eta: self.trace(q) }
        }
    }

    /// `(q0, q1)` with `q1 = qe + eq` commuting-anticommuting against `e`:
    /// `q0 e = e q0`, `q1 e + e q1 = q1`.
    pub fn v_split(&self, q: &Quaternion, e: &Quaternion) -> Result<(Quaternion, Quaternion)> {
        if !self.is_artin_schreier(e) {
            return Err(Error::NotArtinSchreier);
        }
        let q1 = &self.mul(q, e) + &self.mul(e, q);
        let q0 = q + &q1;
        Ok((q0, q1))
    }

    pub fn split_coords(
        &self,
        q: &Quaternion,
        e: &Quaternion,
        f: Option<&Quaternion>,
    ) -> Result<SplitCoords> {
        let (nu0, nu1) = self.v_split(q, e)?;
        let Some(f) = f else {
            // tr(e) = 1, so the x-coordinate of nu0 = nu00 + nu01 e is nu01
            let nu01 = nu0.coords[X].clone();
            let rest = &nu0 + &e.scale(&nu01);
            if !rest.is_central() {
                return Err(Error::Internal("commuting part left F[e]".into()));
            }
            let nu00 = rest.coords[ONE].clone();
            return Ok(SplitCoords { nu0, nu1, nu00, nu01, nu10: None, nu11: None });
        };
        if self.classify(f) != ElementClass::SquareCentral {
            return Err(Error::NotSquareCentral);
        }
        let fe = self.mul(f, e);
        if &(&self.mul(e, f) + &fe) != f {
            return Err(Error::DegenerateBasis);
        }
        let basis = [self.one(), e.clone(), f.clone(), fe];
        let sol = solve_4x4(&basis, q)?;
        let [nu00, nu01, nu10, nu11] = sol;
        let rebuilt = basis
            .iter()
            .zip([&nu00, &nu01, &nu10, &nu11])
            .fold(self.zero(), |acc, (b, c)| &acc + &b.scale(c));
        if &rebuilt != q || &basis[0].scale(&nu00) + &basis[1].scale(&nu01) != nu0 {
            return Err(Error::Internal("split coordinates do not reconstruct".into()));
        }
        Ok(SplitCoords { nu0, nu1, nu00, nu01, nu10: Some(nu10), nu11: Some(nu11) })
    }

    /// For square-central `y'`, an Artin-Schreier `x'` with `x'y' + y'x' = y'`:
    /// the first `z` among `x, y, xy` with `w = zy' + y'z != 0` gives `x' = y' w^-1 z`.
    pub fn as_complement(&self, y_sc: &Quaternion) -> Result<Quaternion> {
        if self.classify(y_sc) != ElementClass::SquareCentral {
            return Err(Error::NotSquareCentral);
        }
        for z in [self.x(), self.y(), self.xy()] {
            let w = &self.mul(&z, y_sc) + &self.mul(y_sc, &z);
            if w.is_zero() {
                continue;
            }
            let xp = self.mul(&self.mul(y_sc, &self.inverse(&w)?), &z);
            let anti = &self.mul(&xp, y_sc) + &self.mul(y_sc, &xp);
            let as_val = &self.square(&xp) + &xp;
            if &anti != y_sc || !as_val.is_central() {
                return Err(Error::Internal(format!("complement {xp} of {y_sc} fails its relations")));
            }
            return Ok(xp);
        }
        Err(Error::CentralElement)
    }
}

/// Solves `sum coeffs[i] * basis[i] = target` over F by Gaussian elimination.
fn solve_4x4(basis: &[Quaternion; 4], target: &Quaternion) -> Result<[RatFun; 4]> {
    // rows are coordinates, columns are basis elements
    let mut m: Vec<Vec<RatFun>> = (0..4)
        .map(|r| {
            let mut row: Vec<RatFun> = basis.iter().map(|b| b.coords[r].clone()).collect();
            row.push(target.coords[r].clone());
            row
        })
        .collect();
    for col in 0..4 {
        let p = (col..4).find(|&r| !m[r][col].is_zero()).ok_or(Error::DegenerateBasis)?;
        m.swap(col, p);
        let inv = m[col][col].inv()?;
        m[col] = m[col].iter().map(|v| v * &inv).collect();
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(&pivot) {
                    *v = &*v + &(&factor * pv);
                }
            }
        }
    }
    Ok(std::array::from_fn(|i| m[i][4].clone()))
}

impl Quaternion {
    pub fn new(coords: [RatFun; 4]) -> Self {
        Quaternion { coords }
    }

    pub fn central(a: RatFun) -> Self {
        let field = a.field();
        Quaternion::new([a, RatFun::zero(field), RatFun::zero(field), RatFun::zero(field)])
    }

    pub fn coords(&self) -> &[RatFun; 4] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &RatFun {
        &self.coords[i]
    }

    pub fn field(&self) -> Fq {
        self.coords[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RatFun::is_zero)
    }

    pub fn is_central(&self) -> bool {
        self.coords[1..].iter().all(RatFun::is_zero)
    }

    /// The central value, if the element lies in F.
    pub fn as_central(&self) -> Option<&RatFun> {
        self.is_central().then(|| &self.coords[ONE])
    }

    pub fn scale(&self, s: &RatFun) -> Quaternion {
        Quaternion::new(std::array::from_fn(|i| &self.coords[i] * s))
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        &self + &rhs
    }
}

/// Renders a coefficient of a basis element so that `coeff*x` re-parses.
fn coeff_prefix(c: &RatFun) -> String {
    if c.is_one() {
        return String::new();
    }
    let s = c.to_string();
    if s.contains('+') {
        format!("({s})*")
    } else {
        format!("{s}*")
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let [a, b, c, d] = &self.coords;
        if !a.is_zero() {
            parts.push(a.to_string());
        }
        for (v, name) in [(b, "x"), (c, "y"), (d, "x*y")] {
            if !v.is_zero() {
                parts.push(format!("{}{name}", coeff_prefix(v)));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quaternion({self})")
    }
}

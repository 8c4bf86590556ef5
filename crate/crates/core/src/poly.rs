//! Dense univariate polynomials over GF(2^k) in the variable `T`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2k::{Fq, FqElem};

/// Default cap on the number of monic divisors a single enumeration may produce.
pub const DEFAULT_DIVISOR_BUDGET: usize = 4096;

const SPLIT_SEED: u64 = 0x5eed_0fa5_7000;

/// A polynomial with coefficients in GF(2^k), lowest degree first.
///
/// Always normalized: no trailing zero coefficients, so the zero polynomial
/// has an empty coefficient vector and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Fq,
    coeffs: Vec<u8>,
}

/// Complete factorization `unit * prod(f_i ^ e_i)` into monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Poly {
    pub fn zero(field: Fq) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Fq) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    /// The transcendental `T`.
    pub fn t(field: Fq) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::from_raw(c.field(), vec![c.bits()])
    }

    /// `c * T^n`.
    pub fn monomial(c: FqElem, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c.bits();
        Self::from_raw(c.field(), coeffs)
    }

    pub fn from_coeffs(field: Fq, coeffs: &[FqElem]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|c| c.bits()).collect())
    }

    /// Polynomial over GF(2) whose coefficient bits are the bits of `mask`.
    pub fn from_gf2_mask(field: Fq, mask: u64) -> Self {
        let coeffs = (0..64).map(|i| (mask >> i & 1) as u8).collect();
        Self::from_raw(field, coeffs)
    }

    pub(crate) fn from_raw(field: Fq, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0) as u32)
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn lead(&self) -> FqElem {
        self.coeff(self.coeffs.len().saturating_sub(1))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn scale(&self, c: FqElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        Poly {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul_bits(a, c.bits())).collect(),
        }
    }

    /// Divides out the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.lead().inv().expect("nonzero lead"))
    }

    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    pub fn square(&self) -> Poly {
        // Frobenius: squares spread coefficients to even positions
        let f = self.field;
        let mut coeffs = vec![0; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = f.mul_bits(c, c);
        }
        Poly::from_raw(f, coeffs)
    }

    /// The square root, when one exists in GF(2^k)[T].
    pub fn sqrt(&self) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        let f = self.field;
        let coeffs = self.coeffs.iter().step_by(2).map(|&c| f.sqrt_bits(c)).collect();
        Some(Poly::from_raw(f, coeffs))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Formal derivative; in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        Poly::from_raw(self.field, coeffs)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = self.field;
        let mut acc = 0u8;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul_bits(acc, x.bits()) ^ c;
        }
        f.elem(acc as u32)
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let Some(dn) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if dn < dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv_bits(d.coeffs[dd]).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let c = rem[i + dd];
            if c == 0 {
                continue;
            }
            let q = f.mul_bits(c, inv_lead);
            quot[i] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] ^= f.mul_bits(q, dc);
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_raw(f, quot), Poly::from_raw(f, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, p: &Poly) -> bool {
        !self.is_zero() && p.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `p` (non-constant) as a factor of `self` (nonzero).
    pub fn valuation(&self, p: &Poly) -> u32 {
        debug_assert!(!self.is_zero() && !p.is_constant());
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(p).expect("nonzero");
            if !r.is_zero() {
                return n;
            }
            n += 1;
            cur = q;
        }
    }

    /// `self^(2^k) mod m`, i.e. the q-power Frobenius modulo `m`.
    fn frobenius_mod(&self, m: &Poly) -> Poly {
        let mut h = self.clone();
        for _ in 0..self.field.degree() {
            h = h.square().rem(m).expect("nonzero modulus");
        }
        h
    }

    /// Square-free decomposition of the monic part: pairwise coprime square-free
    /// monic parts with multiplicities, ordered by multiplicity.
    pub fn squarefree(&self) -> Result<Vec<(Poly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = squarefree_monic(&self.monic());
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Factorization into monic irreducibles: square-free decomposition, then
    /// distinct-degree, then equal-degree splitting with a fixed seed.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut factors = Vec::new();
        for (part, mult) in squarefree_monic(&self.monic()) {
            for (block, d) in distinct_degree(&part) {
                for irr in equal_degree(&block, d, &mut rng) {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort();
        Ok(Factorization { unit: self.lead(), factors })
    }

    /// Whether the polynomial is irreducible over GF(2^k).
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let fac = self.factor().expect("nonzero");
                fac.factors.len() == 1 && fac.factors[0].1 == 1
            }
        }
    }

    /// All monic divisors, sorted by degree then coefficients.
    pub fn monic_divisors(&self, budget: usize) -> Result<Vec<Poly>> {
        let fac = self.factor()?;
        let needed: u128 = fac.factors.iter().map(|(_, e)| *e as u128 + 1).product();
        if needed > budget as u128 {
            return Err(Error::DivisorBudgetExceeded { needed, budget });
        }
        let mut divs = vec![Poly::one(self.field)];
        for (p, e) in &fac.factors {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut cur = d.clone();
                next.push(cur.clone());
                for _ in 0..*e {
                    cur = &cur * p;
                    next.push(cur.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        Ok(divs)
    }
}

fn squarefree_monic(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let one = Poly::one(field);
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac != one {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if c != one {
        // c is a polynomial in T^2
        let root = c.sqrt().expect("zero derivative means perfect square");
        for (p, m) in squarefree_monic(&root) {
            out.push((p, 2 * m));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field;
    let t = Poly::t(field);
    let one = Poly::one(field);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = t.rem(&f).unwrap();
    let mut d = 0;
    while f.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.frobenius_mod(&f);
        let g = f.gcd(&(&h + &t));
        if g != one {
            f = f.div_exact(&g).unwrap();
            h = h.rem(&f).unwrap();
            out.push((g, d));
        }
    }
    if !f.is_constant() {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

/// Splits a product of distinct irreducibles of equal degree `d` using the
/// absolute trace map a + a^2 + ... + a^(2^(kd-1)).
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field;
    let steps = field.degree() as usize * d;
    loop {
        let coeffs: Vec<u8> = (0..n).map(|_| rng.gen_range(0..field.order()) as u8).collect();
        let a = Poly::from_raw(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let mut acc = a.clone();
        let mut p = a;
        for _ in 1..steps {
            p = p.square().rem(f).unwrap();
            acc = &acc + &p;
        }
        let g = f.gcd(&acc);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

impl Ord for Poly {
    /// Canonical order: by degree (zero first), then coefficients from the top.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c ^= s;
        }
        Poly::from_raw(self.field, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![0u8; self.coeffs.len() + rhs.coeffs.len() - 1];
        if f.degree() == 1 {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a != 0 {
                    for (c, &b) in coeffs[i..].iter_mut().zip(&rhs.coeffs) {
                        *c ^= b;
                    }
                }
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    coeffs[i + j] ^= f.mul_bits(a, b);
                }
            }
        }
        Poly { field: f, coeffs }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Number of top-level `+`-separated terms when printed.
pub(crate) fn term_count(p: &Poly) -> usize {
    p.coeffs.iter().filter(|&&c| c != 0).count()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let many = term_count(self) > 1;
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = c.to_string();
            let compound = cs.contains('+');
            match i {
                0 if compound && many => write!(f, "({cs})")?,
                0 => f.write_str(&cs)?,
                _ => {
                    if compound {
                        write!(f, "({cs})*")?;
                    } else if !c.is_one() {
                        write!(f, "{cs}*")?;
                    }
                    if i == 1 {
                        f.write_str("T")?;
                    } else {
                        write!(f, "T^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
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

    #[test]
    fn freshman_dream() {
        assert_eq!(p(0b11).square(), p(0b101));
        assert_eq!(&p(0b11) * &p(0b11), p(0b101));
    }

    #[test]
    fn gcd_and_divmod() {
        assert_eq!(p(0b110).gcd(&p(0b101)), p(0b11));
        assert_eq!(p(0b101).div_rem(&p(0b11)).unwrap(), (p(0b11), p(0)));
        assert!(matches!(p(0b101).div_rem(&p(0)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(p(0).degree(), None);
        assert_eq!(p(1).degree(), Some(0));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(p(0b101).squarefree().unwrap(), vec![(p(0b11), 2)]);
        assert_eq!(p(0b1100).squarefree().unwrap(), vec![(p(0b11), 1), (p(0b10), 2)]);
        assert_eq!(p(0b10101).squarefree().unwrap(), vec![(p(0b111), 2)]);
        assert!(matches!(p(0).squarefree(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn factor_examples() {
        assert!(p(0b111).is_irreducible());
        let fac = p(0b10010).factor().unwrap();
        assert_eq!(fac.factors, vec![(p(0b10), 1), (p(0b11), 1), (p(0b111), 1)]);
        assert_eq!(p(0b101).factor().unwrap().factors, vec![(p(0b11), 2)]);
        assert!(matches!(p(0).factor(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn factor_over_gf4() {
        let f4 = Fq::new(0b111).unwrap();
        // T^2 + T + 1 splits over GF(4) as (T + g)(T + g + 1)
        let q = Poly::from_gf2_mask(f4, 0b111);
        let fac = q.factor().unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), q);
        for (irr, _) in &fac.factors {
            assert_eq!(irr.degree(), Some(1));
        }
    }

    #[test]
    fn divisor_counts() {
        let q = p(0b1100); // T^2 (T+1)
        assert_eq!(q.monic_divisors(64).unwrap().len(), 6);
        assert_eq!(p(1).monic_divisors(64).unwrap(), vec![p(1)]);
        assert_eq!(p(0b1011).monic_divisors(64).unwrap(), vec![p(1), p(0b1011)]);
        let err = p(0b1100).monic_divisors(5).unwrap_err();
        assert!(matches!(err, Error::DivisorBudgetExceeded { needed: 6, budget: 5 }));
    }

    #[test]
    fn divisors_are_sorted_and_divide() {
        let q = p(0b1011_0110_1100);
        let divs = q.monic_divisors(DEFAULT_DIVISOR_BUDGET).unwrap();
        assert!(divs.windows(2).all(|w| w[0] < w[1]));
        assert!(divs.iter().all(|d| d.divides(&q)));
    }

    #[test]
    fn sqrt_and_display() {
        assert_eq!(p(0b101).sqrt(), Some(p(0b11)));
        assert_eq!(p(0b10).sqrt(), None);
        let f4 = Fq::new(0b111).unwrap();
        let q = &Poly::monomial(f4.one(), 3) + &Poly::monomial(f4.gen(), 1);
        let q = &q + &Poly::one(f4);
        assert_eq!(q.to_string(), "T^3 + g*T + 1");
        let r = &Poly::t(f4) + &Poly::constant(f4.elem(0b11));
        assert_eq!(r.to_string(), "T + (g+1)");
    }
}

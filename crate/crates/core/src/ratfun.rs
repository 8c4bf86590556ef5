//! The rational function field F = GF(2^k)(T), kept in reduced form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::gf2k::{Fq, FqElem};
use crate::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic; zero is `0 / 1`.
///
/// Because the form is canonical, derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let field = den.field();
        if num.is_zero() {
            return RatFun { num, den: Poly::one(field) };
        }
        if den.is_one() {
            return RatFun { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if den.is_monic() {
            RatFun { num, den }
        } else {
            let inv = den.lead().inv().unwrap();
            RatFun { num: num.scale(inv), den: den.scale(inv) }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RatFun { num: p, den: Poly::one(field) }
    }

    pub fn zero(field: Fq) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: Fq) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn t(field: Fq) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn constant(c: FqElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn field(&self) -> Fq {
        self.den.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> RatFun {
        // squares of coprime polynomials stay coprime
        RatFun { num: self.num.square(), den: self.den.square() }
    }

    /// The square root in F if it exists. A reduced fraction is a square
    /// exactly when numerator and denominator are both squares in GF(2^k)[T].
    pub fn sqrt(&self) -> Option<RatFun> {
        Some(RatFun { num: self.num.sqrt()?, den: self.den.sqrt()? })
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: FqElem) -> RatFun {
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::reduce(num, &self.den * &rhs.den)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.field());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep operands small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = den.lead().inv().unwrap();
        RatFun { num: num.scale(inv), den: den.scale(inv) }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Ord for RatFun {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl PartialOrd for RatFun {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        if num.contains('+') {
            write!(f, "({num})")?;
        } else {
            f.write_str(&num)?;
        }
        if den == "T" {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(mask: u64) -> Poly {
        Poly::from_gf2_mask(Fq::gf2(), mask)
    }

    fn r(n: u64, d: u64) -> RatFun {
        RatFun::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn characteristic_two_cancellation() {
        let inv_t = r(1, 0b10);
        assert!((&inv_t + &inv_t).is_zero());
    }

    #[test]
    fn products_and_cancellation() {
        assert!((&r(0b10, 0b11) * &r(0b11, 0b10)).is_one());
        assert_eq!(r(0b101, 0b11), r(0b11, 1));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(RatFun::new(p(1), p(0)), Err(Error::DivisionByZero)));
        assert!(matches!(r(1, 1).div(&r(0, 1)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn square_roots() {
        assert_eq!(r(0b100, 1).sqrt(), Some(r(0b10, 1)));
        assert_eq!(r(0b10, 1).sqrt(), None);
        assert_eq!(r(0b101, 0b10000).sqrt(), Some(r(0b11, 0b100)));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f4 = Fq::new(0b111).unwrap();
        let num = Poly::t(f4);
        let den = Poly::constant(f4.gen()).shift(1) ; // g*T
        let q = RatFun::new(num, den).unwrap();
        assert!(q.den().is_monic());
        assert_eq!(q, RatFun::constant(f4.elem(0b11)));
    }

    #[test]
    fn display() {
        assert_eq!(r(0b100, 0b11).to_string(), "T^2/(T + 1)");
        assert_eq!(r(0b11, 0b10).to_string(), "(T + 1)/T");
        assert_eq!(r(1, 0b100).to_string(), "1/(T^2)");
    }
}

//! Arithmetic in GF(2^k) for small k, with elements packed as bit vectors
//! over the power basis 1, g, ..., g^(k-1).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// The field GF(2)[g] / (modulus). Small and `Copy`; every element carries it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    degree: u32,
    modulus: u16,
}

/// An element of GF(2^k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: Fq,
    bits: u8,
}

fn gf2_degree(p: u32) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(31 - p.leading_zeros())
    }
}

fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = gf2_degree(b).expect("division by zero polynomial over GF(2)");
    while let Some(da) = gf2_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2.
fn gf2_is_irreducible(p: u32) -> bool {
    let Some(d) = gf2_degree(p) else { return false };
    if d == 0 {
        return false;
    }
    for cand in 2u32..(1 << (d / 2 + 1)) {
        if gf2_rem(p, cand) == 0 {
            return false;
        }
    }
    true
}

impl Fq {
    /// Builds GF(2^k) from a modulus given as a bit pattern (bit i = coefficient of g^i).
    pub fn new(modulus: u16) -> Result<Self> {
        let degree = gf2_degree(modulus as u32).unwrap_or(0);
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!(
                "modulus must have degree 1..={MAX_DEGREE}"
            )));
        }
        if !gf2_is_irreducible(modulus as u32) {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over GF(2)",
                print_gf2_poly(modulus as u32)
            )));
        }
        Ok(Fq { degree, modulus })
    }

    /// GF(2^k) with the lexicographically smallest irreducible modulus of degree k.
    pub fn with_degree(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!("degree {k} out of range")));
        }
        (1u32 << k..1u32 << (k + 1))
            .find(|&m| gf2_is_irreducible(m))
            .map(|m| Fq { degree: k, modulus: m as u16 })
            .ok_or_else(|| Error::InvalidModulus(format!("no irreducible of degree {k}")))
    }

    /// GF(2), presented with modulus `g`.
    pub fn gf2() -> Self {
        Fq { degree: 1, modulus: 0b10 }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        1 << self.degree
    }

    pub fn zero(&self) -> FqElem {
        FqElem { field: *self, bits: 0 }
    }

    pub fn one(&self) -> FqElem {
        FqElem { field: *self, bits: 1 }
    }

    /// The generator `g`, reduced (in GF(2) with modulus `g` this is zero).
    pub fn gen(&self) -> FqElem {
        self.elem(0b10)
    }

    /// Reduces an arbitrary bit pattern into the field.
    pub fn elem(&self, bits: u32) -> FqElem {
        FqElem { field: *self, bits: gf2_rem(bits, self.modulus as u32) as u8 }
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order() as u32).map(move |b| FqElem { field: *self, bits: b as u8 })
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        self.elements().skip(1)
    }

    // Raw operations on packed bits, used by the polynomial layer.

    #[inline]
    pub(crate) fn mul_bits(&self, a: u8, b: u8) -> u8 {
        if self.degree == 1 {
            return a & b;
        }
        let top = 1u16 << self.degree;
        let mut acc = 0u16;
        let mut a = a as u16;
        let mut b = b;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc as u8
    }

    /// Inverse via extended Euclid over GF(2)[g].
    pub(crate) fn inv_bits(&self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        if self.degree == 1 {
            return Some(1);
        }
        let (mut r0, mut r1) = (self.modulus as u32, a as u32);
        let (mut s0, mut s1) = (0u32, 1u32);
        while r1 != 0 {
            let (mut q, mut r) = (0u32, r0);
            let d1 = gf2_degree(r1).unwrap();
            while let Some(dr) = gf2_degree(r) {
                if dr < d1 {
                    break;
                }
                q ^= 1 << (dr - d1);
                r ^= r1 << (dr - d1);
            }
            let s = s0 ^ clmul(q, s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        debug_assert_eq!(r0, 1);
        Some(gf2_rem(s0, self.modulus as u32) as u8)
    }

    /// a^(2^(k-1)), the inverse of Frobenius.
    pub(crate) fn sqrt_bits(&self, a: u8) -> u8 {
        let mut r = a;
        for _ in 1..self.degree {
            r = self.mul_bits(r, r);
        }
        r
    }
}

fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    let mut b = b;
    let mut a = a;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

impl FqElem {
    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    pub fn add(self, other: FqElem) -> FqElem {
        debug_assert_eq!(self.field, other.field);
        FqElem { field: self.field, bits: self.bits ^ other.bits }
    }

    pub fn mul(self, other: FqElem) -> FqElem {
        debug_assert_eq!(self.field, other.field);
        FqElem { field: self.field, bits: self.field.mul_bits(self.bits, other.bits) }
    }

    pub fn inv(self) -> Result<FqElem> {
        self.field
            .inv_bits(self.bits)
            .map(|bits| FqElem { field: self.field, bits })
            .ok_or(Error::DivisionByZero)
    }

    pub fn div(self, other: FqElem) -> Result<FqElem> {
        Ok(self.mul(other.inv()?))
    }

    pub fn square(self) -> FqElem {
        self.mul(self)
    }

    /// The unique square root (Frobenius is bijective on a finite field).
    pub fn sqrt(self) -> FqElem {
        FqElem { field: self.field, bits: self.field.sqrt_bits(self.bits) }
    }

    /// Absolute trace to GF(2): a + a^2 + ... + a^(2^(k-1)).
    pub fn trace(self) -> bool {
        let mut acc = self;
        let mut p = self;
        for _ in 1..self.field.degree {
            p = p.square();
            acc = acc.add(p);
        }
        debug_assert!(acc.bits <= 1);
        acc.bits == 1
    }

    /// All e with e^2 + e = self: either empty or a pair {e, e+1}.
    pub fn as_solve(self) -> Vec<FqElem> {
        self.field
            .elements()
            .filter(|e| e.square().add(*e) == self)
            .collect()
    }
}

pub(crate) fn print_gf2_poly(bits: u32) -> String {
    if bits == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..32).rev() {
        if bits >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            });
        }
    }
    terms.join("+")
}

/// Parses `g^2+g+1` style GF(2) polynomials (also accepts `-` and blanks).
pub fn parse_gf2_poly(text: &str) -> Result<u32> {
    let mut bits = 0u32;
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty polynomial".into() });
    }
    let mut pos = 0;
    for term in cleaned.split(['+', '-']) {
        let exp = match term {
            "" => return Err(Error::Syntax { pos, msg: "empty term".into() }),
            "0" => None,
            "1" => Some(0),
            "g" => Some(1),
            t if t.starts_with("g^") => Some(t[2..].parse::<u32>().map_err(|_| Error::Syntax {
                pos: pos + 2,
                msg: format!("bad exponent in `{t}`"),
            })?),
            t => {
                return Err(Error::Syntax { pos, msg: format!("unexpected term `{t}`") });
            }
        };
        if let Some(e) = exp {
            if e >= 31 {
                return Err(Error::Syntax { pos, msg: "exponent too large".into() });
            }
            bits ^= 1 << e;
        }
        pos += term.len() + 1;
    }
    Ok(bits)
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_gf2_poly(self.bits as u32))
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.degree, print_gf2_poly(self.modulus as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Fq {
        Fq::new(0b111).unwrap()
    }

    #[test]
    fn gf4_products() {
        let f = gf4();
        let g = f.gen();
        assert_eq!(g.mul(g.add(f.one())), f.one());
        assert_eq!(g.square(), g.add(f.one()));
    }

    #[test]
    fn gf4_division_matches_table() {
        let f = gf4();
        // brute-force the inverse of g from the full multiplication table
        let g = f.gen();
        let inv = f.elements().find(|e| e.mul(g) == f.one()).unwrap();
        assert_eq!(inv, f.elem(0b11));
        assert_eq!(f.one().div(g).unwrap(), inv);
    }

    #[test]
    fn self_inverse_addition() {
        for k in 1..=4 {
            let f = Fq::with_degree(k).unwrap();
            for a in f.elements() {
                assert!(a.add(a).is_zero());
            }
        }
    }

    #[test]
    fn division_by_zero() {
        let f = gf4();
        assert!(matches!(f.one().div(f.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn square_roots() {
        let f = gf4();
        assert_eq!(f.zero().sqrt(), f.zero());
        assert_eq!(f.one().sqrt(), f.one());
        assert_eq!(f.gen().sqrt(), f.elem(0b11));
        assert_eq!(Fq::gf2().one().sqrt(), Fq::gf2().one());
    }

    #[test]
    fn artin_schreier_small_fields() {
        let f2 = Fq::gf2();
        assert_eq!(f2.zero().as_solve(), vec![f2.zero(), f2.one()]);
        assert!(f2.one().as_solve().is_empty());
        let f = gf4();
        assert_eq!(f.one().as_solve(), vec![f.gen(), f.elem(0b11)]);
    }

    #[test]
    fn exhaustive_invariants_up_to_degree_four() {
        for k in 1..=4 {
            let f = Fq::with_degree(k).unwrap();
            for a in f.elements() {
                assert_eq!(a.sqrt().square(), a);
                assert_eq!(a.square().sqrt(), a);
                if !a.is_zero() {
                    assert_eq!(a.mul(f.one().div(a).unwrap()), f.one());
                }
                let sols = a.as_solve();
                assert!(sols.is_empty() || sols.len() == 2);
                if sols.len() == 2 {
                    assert_eq!(sols[0].add(sols[1]), f.one());
                }
                for e in &sols {
                    assert_eq!(e.square().add(*e), a);
                }
                // solvable exactly when the absolute trace vanishes
                assert_eq!(sols.is_empty(), a.trace());
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
                        assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(Fq::new(0b101).is_err()); // g^2+1 = (g+1)^2
        assert!(Fq::new(0b1011).is_ok());
        assert_eq!(Fq::with_degree(1).unwrap(), Fq::gf2());
    }

    #[test]
    fn text_round_trip() {
        for bits in 0..64u32 {
            let s = print_gf2_poly(bits);
            assert_eq!(parse_gf2_poly(&s).unwrap(), bits);
        }
        assert_eq!(parse_gf2_poly("g^2+g+1").unwrap(), 0b111);
        assert_eq!(print_gf2_poly(0b111), "g^2+g+1");
    }
}

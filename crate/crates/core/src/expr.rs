//! Text syntax for scalars and quaternions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' uint]
//! atom   := 'x' | 'y' | 'T' | 'g' | uint | '(' expr ')'
//! ```
//!
//! `-` means `+`, integers are read mod 2, and `a/b` is `a * b^-1`.
//! The `Display` output of [`Quaternion`] and [`RatFun`] parses back to the same value.

use crate::error::{Error, Result};
use crate::gf2k::Fq;
use crate::quat::{QuatAlgebra, Quaternion};
use crate::ratfun::RatFun;

/// Exponents above this are rejected rather than expanded.
pub const MAX_EXPONENT: u32 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Sym(char),
    Num(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some((pos, c)) = it.next() {
        match c {
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let mut digits = c.to_string();
                while let Some(&(_, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    it.next();
                }
                out.push((pos, Tok::Num(digits)));
            }
            'x' | 'y' | 'T' | 'g' => out.push((pos, Tok::Sym(c))),
            '+' | '-' | '*' | '/' | '^' => out.push((pos, Tok::Op(c))),
            '(' => out.push((pos, Tok::LParen)),
            ')' => out.push((pos, Tok::RParen)),
            c if c.is_alphanumeric() || c == '_' => {
                let mut name = c.to_string();
                while let Some(&(_, d)) = it.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    it.next();
                }
                return Err(Error::UnknownSymbol(name));
            }
            c => {
                return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
            }
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// The arithmetic a parsed expression is evaluated in.
trait Target {
    type V: Clone;
    fn symbol(&self, c: char, pos: usize) -> Result<Self::V>;
    fn int(&self, odd: bool) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V>;
    fn one(&self) -> Self::V;
}

struct Scalars(Fq);

impl Target for Scalars {
    type V = RatFun;

    fn symbol(&self, c: char, pos: usize) -> Result<RatFun> {
        match c {
            'T' => Ok(RatFun::t(self.0)),
            'g' => Ok(RatFun::constant(self.0.gen())),
            _ => Err(Error::Syntax { pos, msg: format!("`{c}` is not allowed in a scalar") }),
        }
    }

    fn int(&self, odd: bool) -> RatFun {
        if odd {
            RatFun::one(self.0)
        } else {
            RatFun::zero(self.0)
        }
    }

    fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a + b
    }

    fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        a * b
    }

    fn div(&self, a: &RatFun, b: &RatFun) -> Result<RatFun> {
        a.div(b)
    }

    fn one(&self) -> RatFun {
        RatFun::one(self.0)
    }
}

struct Quats<'a>(&'a QuatAlgebra);

impl Target for Quats<'_> {
    type V = Quaternion;

    fn symbol(&self, c: char, pos: usize) -> Result<Quaternion> {
        match c {
            'x' => Ok(self.0.x()),
            'y' => Ok(self.0.y()),
            _ => Scalars(self.0.field()).symbol(c, pos).map(Quaternion::central),
        }
    }

    fn int(&self, odd: bool) -> Quaternion {
        Quaternion::central(Scalars(self.0.field()).int(odd))
    }

    fn add(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a + b
    }

    fn mul(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        self.0.mul(a, b)
    }

    fn div(&self, a: &Quaternion, b: &Quaternion) -> Result<Quaternion> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.mul(a, &self.0.inverse(b)?))
    }

    fn one(&self) -> Quaternion {
        self.0.one()
    }
}

struct Parser<'t, T: Target> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    target: &'t T,
}

impl<T: Target> Parser<'_, T> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Sym(c) | Tok::Op(c) => format!("`{c}`"),
            Tok::Num(_) => "a number".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn fail<V>(&self, expected: &str) -> Result<V> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: format!("expected {expected}, found {}", Self::describe(self.peek())),
        })
    }

    fn expr(&mut self) -> Result<T::V> {
        let mut acc = self.term()?;
        while let Tok::Op('+' | '-') = self.peek() {
            self.at += 1;
            let rhs = self.term()?;
            acc = self.target.add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T::V> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.at += 1;
                    let rhs = self.factor()?;
                    acc = self.target.mul(&acc, &rhs);
                }
                Tok::Op('/') => {
                    self.at += 1;
                    let pos = self.pos();
                    let rhs = self.factor()?;
                    acc = self.target.div(&acc, &rhs).map_err(|e| match e {
                        Error::DivisionByZero => {
                            Error::Syntax { pos, msg: "division by zero".into() }
                        }
                        other => other,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<T::V> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.at += 1;
        let pos = self.pos();
        let Tok::Num(digits) = self.peek().clone() else {
            return self.fail("an exponent");
        };
        self.at += 1;
        let exp = digits.parse::<u32>().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
            Error::Syntax { pos, msg: format!("exponent exceeds {MAX_EXPONENT}") }
        })?;
        Ok(self.pow(&base, exp))
    }

    fn pow(&self, base: &T::V, mut e: u32) -> T::V {
        let mut acc = self.target.one();
        let mut sq = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.target.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.target.mul(&sq, &sq);
            }
        }
        acc
    }

    fn atom(&mut self) -> Result<T::V> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Sym(c) => {
                self.at += 1;
                self.target.symbol(c, pos)
            }
            Tok::Num(digits) => {
                self.at += 1;
                let odd = (digits.as_bytes()[digits.len() - 1] - b'0') % 2 == 1;
                Ok(self.target.int(odd))
            }
            Tok::LParen => {
                self.at += 1;
                let v = self.expr()?;
                if self.peek() != &Tok::RParen {
                    return self.fail("`)`");
                }
                self.at += 1;
                Ok(v)
            }
            _ => self.fail("`x`, `y`, `T`, `g`, a number or `(`"),
        }
    }
}

fn parse_with<T: Target>(target: &T, text: &str) -> Result<T::V> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, target };
    let v = p.expr()?;
    if p.peek() != &Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(v)
}

/// Parses an element of the algebra.
pub fn parse_element(alg: &QuatAlgebra, text: &str) -> Result<Quaternion> {
    parse_with(&Quats(alg), text)
}

/// Parses an element of F = GF(2^k)(T); `x` and `y` are rejected.
pub fn parse_scalar(field: Fq, text: &str) -> Result<RatFun> {
    parse_with(&Scalars(field), text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn h() -> QuatAlgebra {
        QuatAlgebra::standard(Fq::gf2(), 3).unwrap()
    }

    fn rp(mask: u64) -> RatFun {
        RatFun::from_poly(Poly::from_gf2_mask(Fq::gf2(), mask))
    }

    #[test]
    fn grammar_examples() {
        let h = h();
        let q = parse_element(&h, "x*y + T^2/(T+1)").unwrap();
        let t2 = RatFun::new(Poly::from_gf2_mask(h.field(), 0b100), Poly::from_gf2_mask(h.field(), 0b11)).unwrap();
        assert_eq!(q, Quaternion::new([t2, rp(0), rp(0), rp(1)]));
        assert_eq!(parse_element(&h, "0").unwrap(), h.zero());
        assert_eq!(parse_element(&h, "y*x").unwrap(), Quaternion::new([rp(0), rp(0), rp(1), rp(1)]));
        assert_eq!(parse_element(&h, "3 - T").unwrap(), Quaternion::central(rp(0b11)));
        assert_eq!(parse_element(&h, "x^2").unwrap(), parse_element(&h, "x + T").unwrap());
        assert_eq!(parse_element(&h, "x^0").unwrap(), h.one());
    }

    #[test]
    fn division_is_right_inverse() {
        let h = h();
        let q = parse_element(&h, "(x + y)/(T + x*y)").unwrap();
        let back = h.mul(&q, &parse_element(&h, "T + x*y").unwrap());
        assert_eq!(back, parse_element(&h, "x + y").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let h = h();
        assert_eq!(
            parse_element(&h, "x + * y"),
            Err(Error::Syntax { pos: 4, msg: "expected `x`, `y`, `T`, `g`, a number or `(`, found `*`".into() })
        );
        assert!(matches!(parse_element(&h, "(x + y"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_element(&h, "x y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_element(&h, "T/0"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_element(&h, "T^99999"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_element(&h, "x $ y"), Err(Error::Syntax { pos: 2, .. })));
        assert_eq!(parse_element(&h, "z + 1"), Err(Error::UnknownSymbol("z".into())));
        assert!(matches!(parse_scalar(h.field(), "T + x"), Err(Error::Syntax { pos: 4, .. })));
    }

    #[test]
    fn printed_forms_reparse() {
        let f4 = Fq::with_degree(2).unwrap();
        let h4 = QuatAlgebra::standard(f4, 2).unwrap();
        for text in ["g*T^2 + (g+1)*x + (T + g)/(T^2 + g)*x*y", "1/(T^2) + y", "T^2/(T + 1)*x"] {
            let q = parse_element(&h4, text).unwrap();
            let printed = q.to_string();
            assert_eq!(parse_element(&h4, &printed).unwrap(), q, "{printed}");
            assert_eq!(parse_element(&h4, &printed).unwrap().to_string(), printed);
        }
    }
}

//! Textual ring specifications such as `M(2,GF(2)) x Z4`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{is_prime, order_cap, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(u32),
    Gf { p: u32, k: u32 },
    Matrix(usize, Box<RingSpec>),
    Dual(Box<RingSpec>),
    Product(Vec<RingSpec>),
}

impl RingSpec {
    /// Ring order, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            RingSpec::Zmod(n) => Some(*n as usize),
            RingSpec::Gf { p, k } => (*p as usize).checked_pow(*k),
            RingSpec::Matrix(n, base) => base.order()?.checked_pow(u32::try_from(n.checked_mul(*n)?).ok()?),
            RingSpec::Dual(base) => base.order()?.checked_pow(2),
            RingSpec::Product(fs) => fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.order()?)),
        }
    }

    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            RingSpec::Zmod(n) => FiniteRing::zmod(*n),
            RingSpec::Gf { p, k } => FiniteRing::gf(*p, *k),
            RingSpec::Matrix(n, base) => FiniteRing::matrix(*n, &base.build()?),
            RingSpec::Dual(base) => FiniteRing::dual_numbers(&base.build()?),
            RingSpec::Product(fs) => FiniteRing::product(&fs.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Z{n}"),
            RingSpec::Gf { p, k: 1 } => write!(f, "GF({p})"),
            RingSpec::Gf { p, k } => write!(f, "GF({p}^{k})"),
            RingSpec::Matrix(n, base) => write!(f, "M({n},{base})"),
            RingSpec::Dual(base) => write!(f, "dual({base})"),
            RingSpec::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring_spec(s)
    }
}

/// Parses `expr := atom { "x" atom }` with
/// `atom := "Z" n | "GF(" p ["^" k] ")" | "M(" n "," field ")" | "dual(" field ")"`,
/// where `field` is `GF(..)` or `Z p`, ignoring whitespace; checks parameters and the order cap.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut factors = vec![p.atom()?];
    loop {
        p.skip_ws();
        if p.pos == p.src.len() {
            break;
        }
        p.expect(b'x')?;
        factors.push(p.atom()?);
    }
    let spec = if factors.len() == 1 { factors.pop().unwrap() } else { RingSpec::Product(factors) };
    let cap = order_cap();
    match spec.order() {
        Some(order) if order <= cap => Ok(spec),
        Some(order) => Err(Error::OrderCap { order, cap }),
        None => Err(Error::OrderCap { order: usize::MAX, cap }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: at, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(self.pos, format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<(u32, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse() {
            Ok(n) => Ok((n, start)),
            Err(_) => self.err(start, "number too large"),
        }
    }

    fn field_atom(&mut self) -> Result<RingSpec> {
        self.skip_ws();
        let at = self.pos;
        let base = self.atom()?;
        match base {
            RingSpec::Gf { .. } => Ok(base),
            RingSpec::Zmod(n) if is_prime(n) => Ok(base),
            _ => self.err(at, "base ring must be a field"),
        }
    }

    fn atom(&mut self) -> Result<RingSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.keyword("GF") {
            self.expect(b'(')?;
            let (p, at) = self.number()?;
            if !is_prime(p) {
                return self.err(at, format!("{p} is not prime"));
            }
            let k = if self.peek() == Some(b'^') {
                self.pos += 1;
                let (k, at) = self.number()?;
                if k == 0 {
                    return self.err(at, "extension degree must be positive");
                }
                k
            } else {
                1
            };
            self.expect(b')')?;
            Ok(RingSpec::Gf { p, k })
        } else if self.keyword("Z") {
            let (n, at) = self.number()?;
            if n < 2 {
                return self.err(at, "modulus must be at least 2");
            }
            Ok(RingSpec::Zmod(n))
        } else if self.keyword("M") {
            self.expect(b'(')?;
            let (n, at) = self.number()?;
            if n == 0 {
                return self.err(at, "matrix size must be positive");
            }
            self.expect(b',')?;
            let base = self.field_atom()?;
            self.expect(b')')?;
            Ok(RingSpec::Matrix(n as usize, Box::new(base)))
        } else if self.keyword("dual") {
            self.expect(b'(')?;
            let base = self.field_atom()?;
            self.expect(b')')?;
            Ok(RingSpec::Dual(Box::new(base)))
        } else if start == self.src.len() {
            self.err(start, "expected a ring, found end of input")
        } else {
            self.err(start, "expected one of 'Z', 'GF(', 'M(', 'dual('")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::StructureTag;

    #[test]
    fn examples() {
        assert_eq!(parse_ring_spec("Z4").unwrap(), RingSpec::Zmod(4));
        assert_eq!(parse_ring_spec(" Z 4 ").unwrap(), RingSpec::Zmod(4));
        let p = parse_ring_spec("M(2,GF(2)) x Z4").unwrap();
        assert_eq!(
            p,
            RingSpec::Product(vec![RingSpec::Matrix(2, Box::new(RingSpec::Gf { p: 2, k: 1 })), RingSpec::Zmod(4)])
        );
        assert_eq!(p.to_string(), "M(2,GF(2)) x Z4");
        let gf4 = parse_ring_spec("GF(2^2)").unwrap().build().unwrap();
        assert_eq!(gf4.order(), 4);
        assert!(matches!(gf4.tag(), StructureTag::Gf { .. }));
        assert_eq!(parse_ring_spec("dual(GF(2))").unwrap().build().unwrap().order(), 4);
    }

    #[test]
    fn errors_carry_offsets() {
        let offset = |s: &str| match parse_ring_spec(s) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(offset("GF(4)"), 3);
        assert_eq!(offset("Z4 x"), 4);
        assert_eq!(offset("Z4 y Z2"), 3);
        assert_eq!(offset("M(2 GF(2))"), 4);
        assert_eq!(offset("Q5"), 0);
        assert_eq!(offset(""), 0);
        assert_eq!(offset("M(2, Z4)"), 5);
        assert_eq!(offset("dual(M(2,GF(2)))"), 5);
        assert!(parse_ring_spec("dual(Z3)").is_ok());
        assert!(matches!(parse_ring_spec("M(4,GF(2))"), Err(Error::OrderCap { .. })));
        assert!(matches!(parse_ring_spec("Z99999999999"), Err(Error::Parse { offset: 1, .. })));
    }
}

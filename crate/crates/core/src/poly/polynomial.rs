use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational};
use crate::error::{invalid, Error, Result};
use crate::roots::{RegularIdeal, Root};

/// A point of the dual space: a value for each root variable.
pub type Point = BTreeMap<Root, Rational>;

/// Sparse polynomial with exact rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(r: Root) -> Self {
        Self::term(Rational::one(), Monomial::var(r))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the greatest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, r: &Root) -> u32 {
        self.terms.keys().map(|m| m.exponent(r)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Root> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self, r: &Root) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(r);
            if e > 0 {
                let q = m.divide_var(r).expect("exponent is positive");
                out.add_term(q, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Sets every variable of `M` to zero.
    pub fn reduce_mod(&self, ideal: &RegularIdeal) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.variables().any(|r| ideal.contains(&r)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits `self = var * q + r` with `r` free of `var`.
    pub fn collect_linear(&self, var: &Root) -> (Polynomial, Polynomial) {
        let mut q = Polynomial::zero();
        let mut r = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.divide_var(var) {
                Some(rest) => q.add_term(rest, c.clone()),
                None => r.add_term(m.clone(), c.clone()),
            }
        }
        (q, r)
    }

    /// Coefficient of the greatest monomial.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// `self` or `-self`, whichever has a positive leading coefficient.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational> {
        evaluate(self, point)
    }
}

/// Exact value of `p` at `point`.
pub fn evaluate(p: &Polynomial, point: &Point) -> Result<Rational> {
    let mut total = Rational::zero();
    for (m, c) in &p.terms {
        let mut v = c.clone();
        for &(r, e) in m.factors() {
            let x = point
                .get(&r)
                .ok_or_else(|| invalid(format!("no value assigned to y[{},{}]", r.row, r.col)))?;
            for _ in 0..e {
                v *= x;
            }
        }
        total += v;
    }
    Ok(total)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Canonical form: terms from the greatest monomial down, e.g.
/// `y[7,4]*y[4,1] + y[7,3]*y[3,1] - 1/2*y[2,1]`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str("*")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        invalid(format!(
            "polynomial parse error at byte {}: {msg}",
            self.pos
        ))
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn integer<T: FromStr>(&mut self) -> Result<T> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("integer out of range"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num: BigInt = self.integer()?;
        if self.eat(b'/') {
            let den: BigInt = self.integer()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn variable(&mut self) -> Result<Root> {
        self.expect(b'y')?;
        self.expect(b'[')?;
        let row: usize = self.integer()?;
        self.expect(b',')?;
        let col: usize = self.integer()?;
        self.expect(b']')?;
        if col < 1 || row <= col {
            return Err(self.error(&format!("y[{row},{col}] is not a positive root")));
        }
        Ok(Root::new(row, col))
    }

    fn factor(&mut self, m: &mut Monomial, c: &mut Rational) -> Result<()> {
        match self.peek() {
            Some(b'y') => {
                let r = self.variable()?;
                let e: u32 = if self.eat(b'^') { self.integer()? } else { 1 };
                *m = m.mul(&Monomial::from_factors([(r, e)]));
            }
            Some(b) if b.is_ascii_digit() => {
                *c *= self.rational()?;
            }
            _ => return Err(self.error("expected a coefficient or y[i,j]")),
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Accepts the canonical output plus `^` exponents and free whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer {
            s: s.as_bytes(),
            pos: 0,
        };
        let mut out = Polynomial::zero();
        if lx.peek().is_none() {
            return Err(lx.error("empty input"));
        }
        let mut first = true;
        while lx.peek().is_some() {
            let mut sign = Rational::one();
            if lx.eat(b'-') {
                sign = -sign;
            } else if !lx.eat(b'+') && !first {
                return Err(lx.error("expected '+' or '-'"));
            }
            first = false;
            let mut m = Monomial::one();
            let mut c = sign;
            lx.factor(&mut m, &mut c)?;
            while lx.eat(b'*') {
                lx.factor(&mut m, &mut c)?;
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

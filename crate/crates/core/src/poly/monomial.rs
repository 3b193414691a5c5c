use std::cmp::Ordering;
use std::fmt;

use crate::roots::Root;

/// A product of root variables with positive exponents.
///
/// Factors are kept greatest root first. Monomials are ordered by total
/// degree, then lexicographically on their expanded variable sequences.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Root, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(r: Root) -> Self {
        Monomial {
            factors: vec![(r, 1)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Root, u32)>) -> Self {
        let mut m = Monomial::one();
        for (r, e) in factors {
            m.mul_var(r, e);
        }
        m
    }

    fn mul_var(&mut self, r: Root, e: u32) {
        if e == 0 {
            return;
        }
        // factors are sorted greatest first
        match self.factors.binary_search_by(|(x, _)| r.cmp(x)) {
            Ok(pos) => self.factors[pos].1 += e,
            Err(pos) => self.factors.insert(pos, (r, e)),
        }
    }

    pub fn factors(&self) -> &[(Root, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, r: &Root) -> u32 {
        self.factors
            .iter()
            .find(|(x, _)| x == r)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for &(r, e) in &other.factors {
            out.mul_var(r, e);
        }
        out
    }

    /// Lowers the exponent of `r` by one; `None` if `r` does not divide.
    pub fn divide_var(&self, r: &Root) -> Option<Monomial> {
        let pos = self.factors.iter().position(|(x, _)| x == r)?;
        let mut out = self.clone();
        if out.factors[pos].1 == 1 {
            out.factors.remove(pos);
        } else {
            out.factors[pos].1 -= 1;
        }
        Some(out)
    }

    /// Removes `r` entirely, returning the exponent it had.
    pub fn strip_var(&self, r: &Root) -> (u32, Monomial) {
        let mut out = self.clone();
        match out.factors.iter().position(|(x, _)| x == r) {
            Some(pos) => {
                let (_, e) = out.factors.remove(pos);
                (e, out)
            }
            None => (0, out),
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = Root> + '_ {
        self.factors.iter().map(|(r, _)| *r)
    }

    fn expanded(&self) -> impl Iterator<Item = Root> + '_ {
        self.factors
            .iter()
            .flat_map(|&(r, e)| std::iter::repeat_n(r, e as usize))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .expanded()
            .map(|r| format!("y[{},{}]", r.row, r.col))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Polynomial};

/// A polynomial in `lambda` whose coefficients are polynomials in the root
/// variables: `coeffs[k]` multiplies `lambda^k`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LambdaPolynomial {
    coeffs: Vec<Polynomial>,
}

impl LambdaPolynomial {
    pub fn zero() -> Self {
        LambdaPolynomial::default()
    }

    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Self {
        let mut p = LambdaPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Polynomial) -> Self {
        Self::from_coeffs(vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Polynomial::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `lambda`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of the top power of `lambda`.
    pub fn leading(&self) -> Option<&Polynomial> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn add_assign(&mut self, other: &LambdaPolynomial) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Polynomial::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = &*a + b;
        }
        self.trim();
    }

    pub fn negate(&self) -> LambdaPolynomial {
        LambdaPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LambdaPolynomial {
        LambdaPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.mul_monomial(m)).collect(),
        }
    }

    /// Multiplies by `-lambda`.
    pub fn mul_minus_lambda(&self) -> LambdaPolynomial {
        if self.is_zero() {
            return LambdaPolynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Polynomial::zero());
        coeffs.extend(self.coeffs.iter().map(|c| -c));
        LambdaPolynomial { coeffs }
    }

    pub fn mul(&self, other: &LambdaPolynomial) -> LambdaPolynomial {
        if self.is_zero() || other.is_zero() {
            return LambdaPolynomial::zero();
        }
        let mut coeffs = vec![Polynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LambdaPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for LambdaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "lambda*({c})")?,
                _ => write!(f, "lambda^{k}*({c})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `{"degree": d, "coefficients": [M_0, ..., M_d]}` with each
/// coefficient in canonical string form; zero has `degree: null`.
impl Serialize for LambdaPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LambdaPolynomial", 2)?;
        st.serialize_field("degree", &self.degree())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LambdaPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: Option<usize>,
            coefficients: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        let coeffs = raw
            .coefficients
            .iter()
            .map(|c| c.parse::<Polynomial>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        let p = LambdaPolynomial::from_coeffs(coeffs);
        if p.degree() != raw.degree {
            return Err(serde::de::Error::custom(format!(
                "declared degree {:?} does not match coefficients (degree {:?})",
                raw.degree,
                p.degree()
            )));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Root;

    #[test]
    fn degree_and_trim() {
        let z = LambdaPolynomial::from_coeffs(vec![Polynomial::zero(), Polynomial::zero()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        let one = LambdaPolynomial::constant(Polynomial::one());
        let l = one.mul_minus_lambda();
        assert_eq!(l.degree(), Some(1));
        assert_eq!(l.leading(), Some(&-&Polynomial::one()));
        assert_eq!(l.mul(&l).degree(), Some(2));
    }

    #[test]
    fn json_round_trip() {
        let y = Polynomial::var(Root::new(2, 1));
        let p = LambdaPolynomial::from_coeffs(vec![y.clone(), -&y]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":1,"coefficients":["y[2,1]","-y[2,1]"]}"#);
        assert_eq!(serde_json::from_str::<LambdaPolynomial>(&s).unwrap(), p);
        assert!(
            serde_json::from_str::<LambdaPolynomial>(r#"{"degree":3,"coefficients":["1"]}"#)
                .is_err()
        );
    }
}

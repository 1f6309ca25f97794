//! Rationals extended by the symbols `c = cos θ₀` and `s = sin θ₀` subject to
//! `c² + s² = 1`.
//!
//! Elements are kept in the canonical basis `{ sᵇ, c·sᵇ }`: every occurrence of
//! `c²` is rewritten as `1 − s²`, so two elements are equal iff their
//! representations are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Monomial `c^cos · s^sin` with `cos ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Monomial {
    cos: u8,
    sin: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeadingPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl HeadingPoly {
    fn monomial(cos: u8, sin: u32, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial { cos, sin }, coeff);
        }
        Self { terms }
    }

    pub fn constant(q: BigRational) -> Self {
        Self::monomial(0, 0, q)
    }

    /// The symbol `cos θ₀`.
    pub fn cos() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    /// The symbol `sin θ₀`.
    pub fn sin() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    fn accumulate(&mut self, m: Monomial, q: BigRational) {
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The rational value, if no heading symbol survives.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial { cos: 0, sin: 0 }).cloned(),
            _ => None,
        }
    }

    pub fn is_heading_free(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Numerical value at a concrete heading.
    pub fn eval(&self, theta0: f64) -> f64 {
        use num_traits::ToPrimitive;
        let (s, c) = theta0.sin_cos();
        self.terms
            .iter()
            .map(|(m, q)| {
                q.to_f64().unwrap_or(f64::NAN) * c.powi(m.cos as i32) * s.powi(m.sin as i32)
            })
            .sum()
    }
}

impl From<BigRational> for HeadingPoly {
    fn from(q: BigRational) -> Self {
        Self::constant(q)
    }
}

impl Zero for HeadingPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for HeadingPoly {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Add for HeadingPoly {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (m, q) in rhs.terms {
            self.accumulate(m, q);
        }
        self
    }
}

impl Neg for HeadingPoly {
    type Output = Self;

    fn neg(mut self) -> Self {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl Sub for HeadingPoly {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for HeadingPoly {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = HeadingPoly::default();
        for (ma, qa) in &self.terms {
            for (mb, qb) in &rhs.terms {
                let q = qa * qb;
                let sin = ma.sin + mb.sin;
                if ma.cos + mb.cos == 2 {
                    // c² sᵇ = sᵇ − s^(b+2)
                    out.accumulate(Monomial { cos: 0, sin }, q.clone());
                    out.accumulate(
                        Monomial {
                            cos: 0,
                            sin: sin + 2,
                        },
                        -q,
                    );
                } else {
                    out.accumulate(
                        Monomial {
                            cos: ma.cos + mb.cos,
                            sin,
                        },
                        q,
                    );
                }
            }
        }
        out
    }
}

impl fmt::Display for HeadingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({q})")?;
            if m.cos == 1 {
                write!(f, "·cos")?;
            }
            match m.sin {
                0 => {}
                1 => write!(f, "·sin")?,
                b => write!(f, "·sin^{b}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pythagorean_identity_cancels() {
        let c = HeadingPoly::cos();
        let s = HeadingPoly::sin();
        let sum = c.clone() * c.clone() + s.clone() * s.clone();
        assert_eq!(sum, HeadingPoly::one());
        assert_eq!(sum.to_rational(), Some(q(1, 1)));
        assert!(!c.is_heading_free());
    }

    #[test]
    fn canonical_form_matches_numerics() {
        let c = HeadingPoly::cos();
        let s = HeadingPoly::sin();
        let a = (c.clone() * q(3, 2).into() + s.clone())
            * (c.clone() - s.clone() * q(1, 3).into())
            * c.clone();
        for th in [0.1, 1.3, -2.2] {
            let (sn, cs) = f64::sin_cos(th);
            let expect = (1.5 * cs + sn) * (cs - sn / 3.0) * cs;
            assert!((a.eval(th) - expect).abs() < 1e-14);
        }
        assert!((c.clone() * c.clone()).terms.keys().all(|m| m.cos == 0));
    }
}

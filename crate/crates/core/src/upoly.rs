//! Dense univariate polynomials over exact rings, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

pub trait Coeff: Num + Clone + Neg<Output = Self> + fmt::Display {}
impl<T: Num + Clone + Neg<Output = T> + fmt::Display> Coeff for T {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

/// Polynomial with integer coefficients.
pub type IntPoly = UniPoly<BigInt>;
/// Polynomial with rational coefficients.
pub type UniPolyQ = UniPoly<BigRational>;

impl<T: Coeff> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c t^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `a + b t`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in &self.coeffs {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    /// `t^deg p(1/t)`, the polynomial with reversed coefficients.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Division with remainder. Fails (returns `None`) when a leading
    /// coefficient quotient is not exact in `T`, or when dividing by zero.
    pub fn checked_div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            let f = c.clone() / lead.clone();
            if f.clone() * lead.clone() != c {
                return None;
            }
            for (t, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + t;
                rem[idx] = rem[idx].clone() - f.clone() * dc.clone();
            }
            quot[k - dd] = f;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.checked_div_rem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Renders with variable name `var`, lowest degree first, e.g. `1 - t + t^2`.
    pub fn format_with(&self, var: &str) -> String
    where
        T: Signed,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&mag.to_string());
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        out
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> UniPolyQ {
        UniPolyQ::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

impl UniPolyQ {
    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.checked_div_rem(d).expect("nonzero divisor over a field").1
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<T: Coeff> Add for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn add(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn sub(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn mul(self, rhs: Self) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Coeff> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff + Signed> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("t"))
    }
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde adapters: integers as JSON numbers when they fit in `i64` (strings
/// otherwise), rationals as `num/den` strings.
pub(crate) mod serde_helpers {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;
    use serde::{Serialize, Serializer};

    use super::{format_rational, IntPoly};

    pub struct IntJson<'a>(pub &'a BigInt);

    impl Serialize for IntJson<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match self.0.to_i64() {
                Some(v) => s.serialize_i64(v),
                None => s.serialize_str(&self.0.to_string()),
            }
        }
    }

    pub fn int_poly<S: Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(p.coeffs().iter().map(IntJson))
    }

    pub fn ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(IntJson))
    }

    pub fn rational<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[1, -1]);
        assert_eq!(&a * &b, IntPoly::from_i64(&[1, 0, -1]));
        assert_eq!(&a + &b, IntPoly::from_i64(&[2]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(IntPoly::from_i64(&[1, 2, 3]).derivative(), IntPoly::from_i64(&[2, 6]));
        assert_eq!(IntPoly::from_i64(&[1, 0, -1]).exact_div(&a), Some(b.clone()));
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).exact_div(&a), None);
        // 2t + 1 does not divide t^2 + 1 over Z
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).checked_div_rem(&IntPoly::from_i64(&[1, 2])), None);
        assert_eq!(IntPoly::from_i64(&[1, 2, 3]).reversed(), IntPoly::from_i64(&[3, 2, 1]));
    }

    #[test]
    fn rational_gcd() {
        let u3 = IntPoly::from_i64(&[1, 1, 1, 1]).to_rational();
        let u2 = IntPoly::from_i64(&[1, 1, 1]).to_rational();
        assert_eq!(u3.gcd(&u2), UniPolyQ::one());
        let a = IntPoly::from_i64(&[-1, 0, 1]).to_rational();
        let b = IntPoly::from_i64(&[1, 2, 1]).to_rational();
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[1, 1]).to_rational());
        let half = UniPolyQ::new(vec![q(1, 2), q(1, 1)]);
        assert_eq!(half.monic(), half);
    }

    #[test]
    fn formatting() {
        assert_eq!(IntPoly::from_i64(&[1, -1, 1]).to_string(), "1 - t + t^2");
        assert_eq!(IntPoly::from_i64(&[-1, 0, 3]).format_with("z"), "-1 + 3*z^2");
        assert_eq!(format_rational(&q(-3, 6)), "-1/2");
        assert_eq!(format_rational(&q(4, 1)), "4/1");
    }
}

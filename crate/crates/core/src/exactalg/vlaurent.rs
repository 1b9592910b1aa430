use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::Rational;
use crate::error::{domain, Error, Result};

/// Laurent polynomial in `v` over the rationals, with `q = v^2`.
///
/// Every half-integral power of `q` that shows up in the Whittaker and
/// L-factor formulas is an integral power of `v`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VLaurent {
    terms: BTreeMap<i32, Rational>,
}

impl VLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn monomial(c: Rational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `q^exp = v^(2 exp)`.
    pub fn q_pow(exp: i32) -> Self {
        Self::v_pow(2 * exp)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, exp: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The single `(coefficient, exponent)` pair when this is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// The constant value when no power of `v` occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplication by `v^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// Integer power; negative exponents are allowed for monomials only.
    pub fn powi(&self, exp: i32) -> Result<Self> {
        if exp >= 0 {
            return Ok(Coeff::pow(self, exp as u32));
        }
        let (c, e) = self
            .as_monomial()
            .ok_or_else(|| domain("negative power of a non-monomial v-Laurent polynomial"))?;
        let inv = Rational::one() / c;
        Ok(Coeff::pow(&Self::monomial(inv, -e), exp.unsigned_abs()))
    }

    /// Substitutes a nonzero rational for `v`.
    pub fn eval(&self, v: &Rational) -> Result<Rational> {
        if v.is_zero() && self.terms.keys().any(|e| *e < 0) {
            return Err(domain("v = 0 substituted into a negative power"));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * rational_powi(v, *e);
        }
        Ok(acc)
    }

    /// Exact quotient in `Q[v, v^-1]`, or `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &VLaurent) -> Option<VLaurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (num_shift, num) = self.to_poly();
        let (den_shift, den) = divisor.to_poly();
        if num.len() < den.len() {
            return None;
        }
        let mut rem = num;
        let lead = den.last().cloned().expect("nonzero divisor");
        let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + den.len() - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i32 + num_shift - den_shift, c)),
        ))
    }

    /// Dense coefficients after clearing the lowest power of `v`.
    fn to_poly(&self) -> (i32, Vec<Rational>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut dense = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }
}

/// Integer power of a rational; negative exponents need a nonzero base.
pub fn rational_powi(x: &Rational, exp: i32) -> Rational {
    if exp >= 0 {
        num_traits::pow(x.clone(), exp as usize)
    } else {
        num_traits::pow(x.recip(), exp.unsigned_abs() as usize)
    }
}

impl Coeff for VLaurent {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                Coeff::$imp(self, rhs)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                Coeff::$imp(&self, &rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                Coeff::$imp(&self, rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                Coeff::$imp(self, &rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

forward_binop!(VLaurent, Add, add, add_ref);
forward_binop!(VLaurent, Sub, sub, sub_ref);
forward_binop!(VLaurent, Mul, mul, mul_ref);

impl Neg for VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        self.neg_ref()
    }
}

impl Neg for &VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        self.neg_ref()
    }
}

impl From<Rational> for VLaurent {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for VLaurent {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl fmt::Display for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending powers of v
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}*v", abs)?,
                (e, true) => write!(f, "v^{}", e)?,
                (e, false) => write!(f, "{}*v^{}", abs, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VLaurent({})", self)
    }
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical `"num/den"` rendering used by the JSON formats.
pub fn format_rational(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn q_is_v_squared() {
        assert_eq!(VLaurent::q(), VLaurent::v_pow(1) * VLaurent::v_pow(1));
        assert_eq!(VLaurent::v_pow(2).eval(&r(3, 1)).unwrap(), r(9, 1));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = VLaurent::from_terms([(1, r(1, 1)), (-1, r(2, 3))]);
        let b = a.clone() - a;
        assert!(b.is_zero());
        assert_eq!(b.len(), 0);
    }

    #[test]
    fn exact_division() {
        // (v - 1)(v^-1 + 2) = 1 + 2v - v^-1 - 2
        let a = VLaurent::from_terms([(1, r(1, 1)), (0, r(-1, 1))]);
        let b = VLaurent::from_terms([(-1, r(1, 1)), (0, r(2, 1))]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), a);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(VLaurent::from_terms([(1, r(1, 1)), (0, r(1, 1))])
            .div_exact(&VLaurent::from_terms([(1, r(1, 1)), (0, r(-1, 1))]))
            .is_none());
        assert_eq!(
            VLaurent::v_pow(3).div_exact(&VLaurent::v_pow(5)).unwrap(),
            VLaurent::v_pow(-2)
        );
    }

    #[test]
    fn negative_power_of_monomial() {
        let m = VLaurent::monomial(r(2, 1), 3);
        assert_eq!(m.powi(-2).unwrap(), VLaurent::monomial(r(1, 4), -6));
        assert!(VLaurent::from_terms([(0, r(1, 1)), (1, r(1, 1))])
            .powi(-1)
            .is_err());
    }

    #[test]
    fn display_and_parse() {
        let a = VLaurent::from_terms([(2, r(1, 1)), (0, r(-3, 2)), (-1, r(1, 1))]);
        assert_eq!(a.to_string(), "v^2 - 3/2 + v^-1");
        assert_eq!(parse_rational(" -4/6 ").unwrap(), r(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), r(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&r(5, 1)), "5/1");
    }

    #[test]
    fn zero_substitution_is_rejected() {
        let a = VLaurent::v_pow(-1);
        assert!(a.eval(&Rational::zero()).is_err());
    }
}

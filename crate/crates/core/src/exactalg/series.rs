use std::fmt;

use super::coeff::Coeff;
use crate::error::{domain, Result};

/// Truncated Laurent series in `Y`.
///
/// Coefficients are stored densely from Y-degree `low`. `order` is the last
/// degree whose coefficient is known; `None` marks an exact polynomial, which
/// is how the local factor polynomials are held. Every operation propagates
/// the order pessimistically.
#[derive(Clone)]
pub struct TruncSeries<C: Coeff> {
    zero: C,
    low: i32,
    coeffs: Vec<C>,
    order: Option<i32>,
}

fn min_order(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Coeff> TruncSeries<C> {
    /// Builds a series from coefficients starting at Y-degree `low`. Anything
    /// above `order` is discarded.
    pub fn new(zero: C, low: i32, coeffs: Vec<C>, order: Option<i32>) -> Self {
        let mut s = Self {
            zero: zero.zero_like(),
            low,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    /// The exact polynomial `Σ coeffs[ℓ] Y^ℓ`.
    pub fn polynomial(zero: C, coeffs: Vec<C>) -> Self {
        Self::new(zero, 0, coeffs, None)
    }

    pub fn zero(zero: C, order: Option<i32>) -> Self {
        Self::new(zero, 0, Vec::new(), order)
    }

    pub fn one(zero: C) -> Self {
        let one = zero.one_like();
        Self::polynomial(zero, vec![one])
    }

    fn normalize(&mut self) {
        if let Some(t) = self.order {
            let keep = (t - self.low + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(Coeff::vanishes) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.vanishes()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Lowest Y-degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Highest Y-degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.coeffs.is_empty()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    /// Whether the coefficient of `Y^deg` is determined.
    pub fn is_known(&self, deg: i32) -> bool {
        self.order.is_none_or(|t| deg <= t)
    }

    /// Coefficient of `Y^deg`. Degrees beyond the order read as zero; check
    /// [`Self::is_known`] when that matters.
    pub fn coeff(&self, deg: i32) -> C {
        let i = deg - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            self.zero.clone()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops everything above `Y^order`.
    pub fn truncate(&self, order: i32) -> Self {
        Self::new(
            self.zero.clone(),
            self.low,
            self.coeffs.clone(),
            min_order(self.order, Some(order)),
        )
    }

    /// Multiplication by `Y^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            zero: self.zero.clone(),
            low: if self.coeffs.is_empty() {
                0
            } else {
                self.low + k
            },
            coeffs: self.coeffs.clone(),
            order: self.order.map(|t| t + k),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(
            self.zero.clone(),
            self.low,
            self.coeffs.iter().map(|x| x.mul_ref(c)).collect(),
            self.order,
        )
    }

    pub fn map_coeffs<D: Coeff>(&self, zero: D, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries::new(
            zero,
            self.low,
            self.coeffs.iter().map(f).collect(),
            self.order,
        )
    }

    fn combine(&self, other: &Self, sign_neg: bool) -> Self {
        let order = min_order(self.order, other.order);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Self::zero(self.zero.clone(), order);
        }
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => 0,
        };
        let hi = self
            .degree()
            .unwrap_or(lo)
            .max(other.degree().unwrap_or(lo));
        let hi = order.map_or(hi, |t| hi.min(t));
        let coeffs = (lo..=hi)
            .map(|d| {
                let b = other.coeff(d);
                let a = self.coeff(d);
                if sign_neg {
                    a.sub_ref(&b)
                } else {
                    a.add_ref(&b)
                }
            })
            .collect();
        Self::new(self.zero.clone(), lo, coeffs, order)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Product; the result is known through `min(T_a + low_b, T_b + low_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let (la, lb) = (self.low, other.low);
        let order = match (self.order, other.order) {
            (None, None) => None,
            (Some(ta), None) => Some(ta + if other.coeffs.is_empty() { 0 } else { lb }),
            (None, Some(tb)) => Some(tb + if self.coeffs.is_empty() { 0 } else { la }),
            (Some(ta), Some(tb)) => Some((ta + lb).min(tb + la)),
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(self.zero.clone(), order);
        }
        let lo = la + lb;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match order {
            Some(t) => ((t - lo + 1).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.vanishes() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.vanishes() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::new(self.zero.clone(), lo, out, order)
    }

    /// Multiplicative inverse through `Y^order` for a series with constant term one.
    pub fn invert_to(&self, order: i32) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < 0) || !self.coeff(0).is_unity() {
            return Err(domain(
                "series inversion needs constant term 1 and no negative powers",
            ));
        }
        let order = self.order.map_or(order, |t| t.min(order));
        if order < 0 {
            return Ok(Self::zero(self.zero.clone(), Some(order)));
        }
        let n = order as usize + 1;
        let mut inv: Vec<C> = Vec::with_capacity(n);
        inv.push(self.zero.one_like());
        for k in 1..n {
            // constant term is one, so b_k = -Σ_{j=1..k} a_j b_{k-j}
            let mut acc = self.zero.clone();
            for j in 1..=k {
                let a = self.coeff(j as i32);
                if !a.vanishes() {
                    acc = acc.add_ref(&a.mul_ref(&inv[k - j]));
                }
            }
            inv.push(acc.neg_ref());
        }
        Ok(Self::new(self.zero.clone(), 0, inv, Some(order)))
    }

    /// Sum of all stored coefficients, the value at `Y = 1` of a polynomial.
    pub fn sum_coeffs(&self) -> C {
        self.coeffs
            .iter()
            .fold(self.zero.clone(), |acc, c| acc.add_ref(c))
    }

    /// Whether every coefficient in `from..=to` vanishes.
    pub fn vanishes_on(&self, from: i32, to: i32) -> bool {
        (from..=to).all(|d| self.coeff(d).vanishes())
    }

    /// First degree through `through` where the two series differ, with both values.
    pub fn first_difference(&self, other: &Self, through: i32) -> Option<(i32, C, C)> {
        let lo = self
            .valuation()
            .unwrap_or(0)
            .min(other.valuation().unwrap_or(0));
        (lo..=through).find_map(|d| {
            let (a, b) = (self.coeff(d), other.coeff(d));
            (a != b).then_some((d, a, b))
        })
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.low + i as i32, c))
    }
}

impl<C: Coeff> PartialEq for TruncSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.low == other.low && self.coeffs == other.coeffs
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs() {
            if c.vanishes() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]*Y")?,
                _ => write!(f, "[{c}]*Y^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(t) = self.order {
            write!(f, " + O(Y^{})", t + 1)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries")
            .field("low", &self.low)
            .field("coeffs", &self.coeffs)
            .field("order", &self.order)
            .finish()
    }
}

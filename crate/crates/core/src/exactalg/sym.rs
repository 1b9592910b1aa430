use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::vlaurent::{forward_binop, rational_powi};
use super::{Rational, VLaurent};
use crate::error::{domain, Error, Result};

/// Laurent polynomial in `X_1..X_r` with [`VLaurent`] coefficients.
///
/// Terms are keyed by exponent vectors in lexicographic order and zero
/// coefficients are never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymLaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, VLaurent>,
}

impl SymLaurent {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, VLaurent::one())
    }

    pub fn constant(nvars: usize, c: VLaurent) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// `c * X^exps`.
    pub fn monomial(exps: Vec<i32>, c: VLaurent) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// The variable `X_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(
            index < nvars,
            "variable index {index} out of range for {nvars} variables"
        );
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, VLaurent::one())
    }

    /// Elementary symmetric polynomial `e_k(X_1..X_r)`.
    pub fn elementary(nvars: usize, k: usize) -> Self {
        let mut out = Self::zero(nvars);
        if k > nvars {
            return out;
        }
        for mask in 0u32..(1 << nvars) {
            if mask.count_ones() as usize == k {
                let e = (0..nvars).map(|i| ((mask >> i) & 1) as i32).collect();
                out.add_term(e, &VLaurent::one());
            }
        }
        out
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i32>, VLaurent)>,
    ) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, exps: Vec<i32>, c: &VLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                *slot = slot.add_ref(c);
                if slot.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &VLaurent)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i32]) -> VLaurent {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &c.neg_ref());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    /// Multiplication by the monomial `X^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars, "shift length");
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Renames variables: `X_i` becomes `X_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation length");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, x) in e.iter().enumerate() {
                f[perm[i]] = *x;
            }
            out.add_term(f, c);
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// Substitutes `X_i -> X_i^{-1}` for each listed index.
    pub fn invert_vars(&self, indices: &[usize]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    for &i in indices {
                        f[i] = -f[i];
                    }
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `X_i -> X_i^{-1}` for every variable.
    pub fn invert_all(&self) -> Self {
        let all: Vec<usize> = (0..self.nvars).collect();
        self.invert_vars(&all)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| self.swap_vars(i, i + 1) == *self)
    }

    /// Membership in the subalgebra fixed by permutations and by inverting
    /// pairs of variables. With fewer than two variables there is no pair
    /// to invert and every element qualifies.
    pub fn is_in_s0(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        match self.nvars {
            0 | 1 => true,
            r => self.invert_vars(&[r - 2, r - 1]) == *self,
        }
    }

    pub fn total_degree_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// True when every term has total `X`-degree `deg`. Zero is homogeneous of any degree.
    pub fn is_homogeneous_of(&self, deg: i32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<i32>() == deg)
    }

    /// Smallest exponent of any variable in any term.
    ///
    /// For a symmetric element this is the lowest power of `X_1..X_r` that
    /// divides it, so a non-negative value means it is an honest polynomial.
    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().flat_map(|e| e.iter().copied()).min()
    }

    pub fn exponent_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Substitutes `X_i -> c X_i` for all `i` with a `v`-Laurent scalar `c`.
    pub fn scale_vars(&self, c: &VLaurent) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            let d = e.iter().sum::<i32>();
            out.add_term(e.clone(), &x.mul_ref(&c.powi(d)?));
        }
        Ok(out)
    }

    /// Substitutes `X_i = point[i]` and `v = v_value`.
    pub fn evaluate(&self, point: &[Rational], v_value: &Rational) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.eval(v_value)?;
            if term.is_zero() {
                continue;
            }
            for (x, k) in point.iter().zip(e) {
                if x.is_zero() {
                    if *k < 0 {
                        return Err(domain("zero substituted into a negative exponent"));
                    }
                    if *k > 0 {
                        term = Rational::zero();
                        break;
                    }
                    continue;
                }
                term *= rational_powi(x, *k);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes numerical values for the variables, keeping `v` symbolic.
    pub fn evaluate_vars(&self, point: &[Rational]) -> Result<VLaurent> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = VLaurent::zero();
        for (e, c) in &self.terms {
            let mut s = Rational::one();
            for (x, k) in point.iter().zip(e) {
                if x.is_zero() && *k < 0 {
                    return Err(domain("zero substituted into a negative exponent"));
                }
                s *= rational_powi(x, *k);
            }
            acc = acc.add_ref(&c.scale(&s));
        }
        Ok(acc)
    }

    /// Substitutes `X_r = 0`, dropping the last variable.
    pub fn specialize_last_zero(&self) -> Result<Self> {
        if self.nvars == 0 {
            return Err(domain("no variable to specialize"));
        }
        let last = self.nvars - 1;
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| e[last] < 0) {
            return Err(domain(format!(
                "negative exponent {} of the last variable in term {:?}",
                e[last], e
            )));
        }
        let mut out = Self::zero(last);
        for (e, c) in &self.terms {
            if e[last] == 0 {
                out.add_term(e[..last].to_vec(), c);
            }
        }
        Ok(out)
    }

    /// Exact quotient by `divisor`.
    ///
    /// Lex leading-term division; every quotient exponent must stay inside the
    /// box forced by the exponent ranges of the operands, otherwise the
    /// division cannot be exact and [`Error::InexactDivision`] is returned.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let mut quot = Self::zero(self.nvars);
        if self.is_zero() {
            return Ok(quot);
        }
        let bounds: Vec<(i32, i32)> = (0..self.nvars)
            .map(|i| {
                let (nlo, nhi) = self.exponent_range(i).expect("nonzero");
                let (dlo, dhi) = divisor.exponent_range(i).expect("nonzero");
                (nlo - dlo, nhi - dhi)
            })
            .collect();
        let (lead_exp, lead_c) = divisor.terms.iter().next_back().expect("nonzero");
        let mut rem = self.clone();
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let q_exp: Vec<i32> = e.iter().zip(lead_exp).map(|(a, b)| a - b).collect();
            if q_exp
                .iter()
                .zip(&bounds)
                .any(|(x, (lo, hi))| x < lo || x > hi)
            {
                return Err(Error::InexactDivision(format!(
                    "quotient exponent {q_exp:?} escapes the admissible box"
                )));
            }
            let q_c = c.div_exact(lead_c).ok_or_else(|| {
                Error::InexactDivision(format!("coefficient {c} not divisible by {lead_c}"))
            })?;
            let step = Self::monomial(q_exp, q_c);
            rem = rem.try_sub(&step.try_mul(divisor)?)?;
            quot = quot.try_add(&step)?;
        }
        Ok(quot)
    }
}

impl Coeff for SymLaurent {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("SymLaurent addition")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.try_sub(other).expect("SymLaurent subtraction")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("SymLaurent multiplication")
    }
    fn neg_ref(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

forward_binop!(SymLaurent, Add, add, add_ref);
forward_binop!(SymLaurent, Sub, sub, sub_ref);
forward_binop!(SymLaurent, Mul, mul, mul_ref);

impl Neg for SymLaurent {
    type Output = SymLaurent;
    fn neg(self) -> SymLaurent {
        self.neg_ref()
    }
}

impl Neg for &SymLaurent {
    type Output = SymLaurent;
    fn neg(self) -> SymLaurent {
        self.neg_ref()
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, e: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, k) in e.iter().enumerate() {
        if *k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if *k == 1 {
            write!(f, "X{}", i + 1)?;
        } else {
            write!(f, "X{}^{}", i + 1, k)?;
        }
    }
    Ok(())
}

impl fmt::Display for SymLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest terms first
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let constant = e.iter().all(|k| *k == 0);
            if constant {
                write!(f, "({c})")?;
            } else if c.is_one() {
                fmt_monomial(f, e)?;
            } else {
                write!(f, "({c})*")?;
                fmt_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymLaurent[{}]({})", self.nvars, self)
    }
}

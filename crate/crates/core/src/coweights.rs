//! Integer coweights, the three dominant cones, and the counting behind the
//! oldform dimension formula.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// An integer tuple `(λ_1, ..., λ_n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(Vec<i32>);

/// Dominant cones, from largest to smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeTag {
    /// `λ_1 ≥ ... ≥ λ_n`
    GlDominant,
    /// `λ_1 ≥ ... ≥ λ_n ≥ 0`
    GDominant,
    /// `λ_1 ≥ ... ≥ λ_{n-1} ≥ |λ_n|`
    HDominant,
}

impl Coweight {
    pub fn new(entries: Vec<i32>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The standard basis vector with a one in slot `i` (zero-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    /// `(1, ..., 1, 0, ..., 0)` with `r` ones.
    pub fn ones(n: usize, r: usize) -> Self {
        Self((0..n).map(|i| i32::from(i < r)).collect())
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sup_norm(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn trace(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Negates the last entry.
    pub fn tilde(&self) -> Self {
        let mut e = self.0.clone();
        if let Some(last) = e.last_mut() {
            *last = -*last;
        }
        Self(e)
    }

    pub fn is_gl_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_g_dominant(&self) -> bool {
        self.is_gl_dominant() && self.0.last().is_none_or(|x| *x >= 0)
    }

    pub fn is_h_dominant(&self) -> bool {
        let n = self.0.len();
        if n < 2 {
            return true;
        }
        self.0[..n - 1].windows(2).all(|w| w[0] >= w[1]) && self.0[n - 2] >= self.0[n - 1].abs()
    }

    pub fn is_dominant(&self, tag: ConeTag) -> bool {
        match tag {
            ConeTag::GlDominant => self.is_gl_dominant(),
            ConeTag::GDominant => self.is_g_dominant(),
            ConeTag::HDominant => self.is_h_dominant(),
        }
    }

    /// First `r` entries.
    pub fn truncate(&self, r: usize) -> Self {
        Self(self.0[..r].to_vec())
    }

    /// Pads with zeros up to length `n`.
    pub fn pad(&self, n: usize) -> Self {
        let mut e = self.0.clone();
        e.resize(n, 0);
        Self(e)
    }
}

impl From<Vec<i32>> for Coweight {
    fn from(v: Vec<i32>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i32; N]> for Coweight {
    fn from(v: [i32; N]) -> Self {
        Self(v.to_vec())
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        assert_eq!(self.len(), rhs.len(), "coweight length mismatch");
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        assert_eq!(self.len(), rhs.len(), "coweight length mismatch");
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dominant coweights of the given cone with sup-norm at most `bound`,
/// in increasing lexicographic order.
pub fn enumerate_cone(tag: ConeTag, n: usize, bound: u32) -> Vec<Coweight> {
    let b = bound as i32;
    let mut out = Vec::new();
    let mut cur = vec![-b; n];
    loop {
        let c = Coweight(cur.clone());
        if c.is_dominant(tag) {
            out.push(c);
        }
        // odometer with the first slot most significant
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < b {
                cur[i] += 1;
                break;
            }
            cur[i] = -b;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Conjectured dimension of the level-`m` fixed space for conductor exponent `a`.
pub fn dim_formula(n: usize, m: u32, a: u32) -> u64 {
    if m < a {
        return 0;
    }
    let d = u64::from(m - a);
    let n = n as u64;
    binomial(n + d / 2, n)
        + (n + d.div_ceil(2))
            .checked_sub(1)
            .map_or(0, |top| binomial(top, n))
}

/// Size of the oldform basis at level `m`, by enumeration.
pub fn basis_cardinality(n: usize, m: u32, a: u32) -> u64 {
    if m < a {
        return 0;
    }
    let d = m - a;
    if d.is_multiple_of(2) {
        enumerate_cone(ConeTag::HDominant, n, d / 2).len() as u64
    } else {
        2 * enumerate_cone(ConeTag::GDominant, n, (d - 1) / 2).len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(v: &[i32]) -> Coweight {
        Coweight::new(v.to_vec())
    }

    #[test]
    fn norms_and_traces() {
        assert_eq!(cw(&[0, 0, 0]).sup_norm(), 0);
        assert_eq!(cw(&[2, 1, -1]).sup_norm(), 2);
        assert_eq!(cw(&[1, 1]).sup_norm(), 1);
        assert_eq!(Coweight::ones(4, 4).trace(), 4);
        assert_eq!(cw(&[2, 1, -1]).trace(), 2);
    }

    #[test]
    fn tilde_is_an_involution() {
        assert_eq!(cw(&[1, 1]).tilde(), cw(&[1, -1]));
        assert_eq!(cw(&[3, 0]).tilde(), cw(&[3, 0]));
        assert_eq!(cw(&[2, 1, -1]).tilde().tilde(), cw(&[2, 1, -1]));
    }

    #[test]
    fn small_cones() {
        let h = enumerate_cone(ConeTag::HDominant, 2, 1);
        assert_eq!(h, vec![cw(&[0, 0]), cw(&[1, -1]), cw(&[1, 0]), cw(&[1, 1])]);
        let g = enumerate_cone(ConeTag::GDominant, 2, 1);
        assert_eq!(g, vec![cw(&[0, 0]), cw(&[1, 0]), cw(&[1, 1])]);
        for tag in [ConeTag::GlDominant, ConeTag::GDominant, ConeTag::HDominant] {
            assert_eq!(enumerate_cone(tag, 3, 0), vec![cw(&[0, 0, 0])]);
        }
    }

    #[test]
    fn dimension_formula_values() {
        assert_eq!(dim_formula(2, 5, 5), 1);
        assert_eq!(dim_formula(2, 2, 0), 4);
        assert_eq!(dim_formula(1, 1, 0), 2);
        assert_eq!(dim_formula(3, 1, 2), 0);
    }

    #[test]
    fn cardinalities() {
        assert_eq!(basis_cardinality(2, 2, 0), 4);
        assert_eq!(basis_cardinality(2, 1, 0), 2);
        assert_eq!(basis_cardinality(3, 0, 0), 1);
        assert_eq!(basis_cardinality(3, 0, 1), 0);
    }
}

//! Torus values of Whittaker functions: the spherical `GL_r` and `SO(2n+1)`
//! values, and finitely supported data standing in for a paramodular vector
//! together with the level-raising operators acting on it.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::characters::{schur, sp_character_at};
use crate::coweights::{enumerate_cone, ConeTag, Coweight};
use crate::error::{domain, Error, Result};
use crate::exactalg::{Coeff, Rational, SymLaurent, VLaurent};

/// `Σ λ_i (r + 1 - 2i)`, the pairing of `λ` with `2ρ` for `GL_r`.
pub fn gl_rho_pairing(lambda: &Coweight) -> i32 {
    let r = lambda.len() as i32;
    lambda
        .entries()
        .iter()
        .enumerate()
        .map(|(i, x)| x * (r + 1 - 2 * (i as i32 + 1)))
        .sum()
}

/// `Σ λ_i (2n - 2i + 1)`, the pairing of `λ` with `2ρ` for `SO(2n+1)`.
pub fn so_rho_pairing(lambda: &Coweight) -> i32 {
    let n = lambda.len() as i32;
    lambda
        .entries()
        .iter()
        .enumerate()
        .map(|(i, x)| x * (2 * n - 2 * (i as i32 + 1) + 1))
        .sum()
}

/// Spherical `GL_r` Whittaker value `v^{-<2ρ,λ>} χ_λ(X)`, zero off the dominant cone.
pub fn gl_whittaker(lambda: &Coweight) -> SymLaurent {
    match schur(lambda) {
        Ok(s) => s.scale(&VLaurent::v_pow(-gl_rho_pairing(lambda))),
        Err(_) => SymLaurent::zero(lambda.len()),
    }
}

/// Closed form for `GL_2`: `v^{-(λ1-λ2)} (X1^{λ1+1} X2^{λ2} - X1^{λ2} X2^{λ1+1}) / (X1 - X2)`.
pub fn gl2_closed_form(lambda: &Coweight) -> Result<SymLaurent> {
    let [a, b] = lambda.entries() else {
        return Err(Error::VariableMismatch {
            left: 2,
            right: lambda.len(),
        });
    };
    if a < b {
        return Ok(SymLaurent::zero(2));
    }
    let one = VLaurent::one();
    let num = SymLaurent::monomial(vec![a + 1, *b], one.clone())
        - SymLaurent::monomial(vec![*b, a + 1], one.clone());
    let den = SymLaurent::monomial(vec![1, 0], one.clone()) - SymLaurent::monomial(vec![0, 1], one);
    Ok(num.div_exact(&den)?.scale(&VLaurent::v_pow(b - a)))
}

/// Checks that `X_i -> c X_i` scales the Whittaker value by `c^{tr λ}`.
///
/// The scalar is the formal variable `v`, so the check is symbolic.
pub fn homogeneity_check(lambda: &Coweight) -> Result<bool> {
    if !lambda.is_gl_dominant() {
        return Err(domain(format!("{lambda} is not weakly decreasing")));
    }
    let w = gl_whittaker(lambda);
    let c = VLaurent::v_pow(1);
    Ok(w.scale_vars(&c)? == w.scale(&c.powi(lambda.trace())?))
}

/// Satake parameters of an unramified representation of `SO(2n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeParamsSO {
    #[serde(with = "crate::exactalg::rational_vec")]
    beta: Vec<Rational>,
}

impl SatakeParamsSO {
    pub fn new(beta: Vec<Rational>) -> Result<Self> {
        if beta.iter().any(Zero::is_zero) {
            return Err(domain("Satake parameters must be nonzero"));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    /// The `2n` eigenvalues `β_i^{±1}` of the standard `GL_{2n}` parameter.
    pub fn gl_parameter(&self) -> Vec<Rational> {
        self.beta
            .iter()
            .flat_map(|b| [b.clone(), b.recip()])
            .collect()
    }
}

/// Satake parameters of an unramified representation of `GL_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeParamsGL {
    #[serde(with = "crate::exactalg::rational_vec")]
    alpha: Vec<Rational>,
}

impl SatakeParamsGL {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.iter().any(Zero::is_zero) {
            return Err(domain("Satake parameters must be nonzero"));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }
}

/// Torus values `λ ↦ W(ϖ^λ)` on the `SO(2n+1)` dominant cone.
///
/// `horizon`, when set, is the sup-norm through which every value is known;
/// beyond it the stored map is incomplete and consumers must not read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhittakerData {
    n: usize,
    values: BTreeMap<Coweight, VLaurent>,
    horizon: Option<u32>,
}

impl WhittakerData {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            values: BTreeMap::new(),
            horizon: None,
        }
    }

    /// Value one at the origin and zero elsewhere.
    pub fn delta(n: usize) -> Self {
        let mut d = Self::zero(n);
        d.values.insert(Coweight::zero(n), VLaurent::one());
        d
    }

    pub fn with_horizon(mut self, horizon: Option<u32>) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn horizon(&self) -> Option<u32> {
        self.horizon
    }

    /// Adds `value` at `lambda`, which must be dominant for `SO(2n+1)`.
    pub fn insert(&mut self, lambda: Coweight, value: VLaurent) -> Result<()> {
        if lambda.len() != self.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: lambda.len(),
            });
        }
        if !lambda.is_g_dominant() {
            return Err(domain(format!("{lambda} is outside the support cone")));
        }
        self.accumulate(lambda, &value);
        Ok(())
    }

    fn accumulate(&mut self, lambda: Coweight, value: &VLaurent) {
        if value.is_zero() {
            return;
        }
        let slot = self.values.entry(lambda.clone()).or_default();
        *slot = slot.add_ref(value);
        if slot.is_zero() {
            self.values.remove(&lambda);
        }
    }

    /// The value at `lambda`; zero off the support and off the cone.
    pub fn get(&self, lambda: &Coweight) -> VLaurent {
        self.values.get(lambda).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coweight, &VLaurent)> + '_ {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_norm(&self) -> u32 {
        self.values
            .keys()
            .map(Coweight::sup_norm)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &VLaurent) -> Self {
        let mut out = Self::zero(self.n).with_horizon(self.horizon);
        for (k, v) in &self.values {
            out.accumulate(k.clone(), &v.mul_ref(c));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let horizon = match (self.horizon, other.horizon) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let mut out = self.clone().with_horizon(horizon);
        for (k, v) in &other.values {
            out.accumulate(k.clone(), v);
        }
        Ok(out)
    }

    /// Restriction to keys whose last `n - r` entries vanish.
    pub fn slice(&self, r: usize) -> impl Iterator<Item = (&Coweight, &VLaurent)> + '_ {
        self.values
            .iter()
            .filter(move |(k, _)| k.entries()[r..].iter().all(|x| *x == 0))
    }

    fn shifted(&self, terms: &[(Coweight, VLaurent)]) -> Self {
        let mut out = Self::zero(self.n).with_horizon(self.horizon);
        for (k, v) in &self.values {
            for (shift, c) in terms {
                let target = k + shift;
                if target.is_g_dominant() {
                    out.accumulate(target, &v.mul_ref(c));
                }
            }
        }
        out
    }
}

/// Spherical data of an unramified representation,
/// `λ ↦ v^{-<2ρ,λ>} χ^{Sp_{2n}}_λ(β)`, populated through sup-norm `cutoff`.
pub fn spherical_so_data(beta: &SatakeParamsSO, cutoff: u32) -> Result<WhittakerData> {
    let n = beta.n();
    let mut d = WhittakerData::zero(n).with_horizon(Some(cutoff));
    for lambda in enumerate_cone(ConeTag::GDominant, n, cutoff) {
        let chi = sp_character_at(&lambda, beta.beta())?;
        let value = VLaurent::monomial(chi, -so_rho_pairing(&lambda));
        d.insert(lambda, value)?;
    }
    Ok(d)
}

/// `λ ↦ d(λ - μ_n)`.
pub fn eta_data(d: &WhittakerData) -> WhittakerData {
    d.shifted(&[(Coweight::ones(d.n, d.n), VLaurent::one())])
}

fn require_rank_two(d: &WhittakerData) -> Result<()> {
    if d.n == 2 {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "theta operators are only available for n = 2, got n = {}",
            d.n
        )))
    }
}

/// `λ ↦ d(λ - ε_1) + q d(λ - ε_2)`.
pub fn theta_data(d: &WhittakerData) -> Result<WhittakerData> {
    require_rank_two(d)?;
    Ok(d.shifted(&[
        (Coweight::from([1, 0]), VLaurent::one()),
        (Coweight::from([0, 1]), VLaurent::q()),
    ]))
}

/// `λ ↦ d(λ - ε_1 - ε_2) + q d(λ)`.
pub fn theta_prime_data(d: &WhittakerData) -> Result<WhittakerData> {
    require_rank_two(d)?;
    Ok(d.shifted(&[
        (Coweight::from([1, 1]), VLaurent::one()),
        (Coweight::from([0, 0]), VLaurent::q()),
    ]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerEntryJson {
    pub lambda: Vec<i32>,
    pub value: VLaurent,
}

/// File format for user-supplied data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerDataJson {
    pub n: usize,
    pub entries: Vec<WhittakerEntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u32>,
}

impl From<&WhittakerData> for WhittakerDataJson {
    fn from(d: &WhittakerData) -> Self {
        Self {
            n: d.n,
            entries: d
                .values
                .iter()
                .map(|(k, v)| WhittakerEntryJson {
                    lambda: k.entries().to_vec(),
                    value: v.clone(),
                })
                .collect(),
            horizon: d.horizon,
        }
    }
}

impl TryFrom<WhittakerDataJson> for WhittakerData {
    type Error = Error;

    fn try_from(j: WhittakerDataJson) -> Result<Self> {
        let mut d = WhittakerData::zero(j.n).with_horizon(j.horizon);
        for e in j.entries {
            d.insert(Coweight::new(e.lambda), e.value)?;
        }
        Ok(d)
    }
}

impl Serialize for WhittakerData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WhittakerDataJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WhittakerData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = WhittakerDataJson::deserialize(d)?;
        WhittakerData::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn cw(v: &[i32]) -> Coweight {
        Coweight::new(v.to_vec())
    }

    #[test]
    fn gl_values() {
        assert_eq!(gl_whittaker(&cw(&[0, 0])), SymLaurent::one(2));
        let x = SymLaurent::var(2, 0) + SymLaurent::var(2, 1);
        assert_eq!(gl_whittaker(&cw(&[1, 0])), x.scale(&VLaurent::v_pow(-1)));
        assert!(gl_whittaker(&cw(&[0, 1])).is_zero());
    }

    #[test]
    fn homogeneity() {
        assert!(homogeneity_check(&cw(&[1, 0])).unwrap());
        assert!(homogeneity_check(&cw(&[0, 0])).unwrap());
        assert!(homogeneity_check(&cw(&[2, 1, 1])).unwrap());
    }

    #[test]
    fn spherical_values() {
        let b1 = SatakeParamsSO::new(vec![rat(2, 1)]).unwrap();
        let d = spherical_so_data(&b1, 2).unwrap();
        assert_eq!(d.get(&cw(&[0])), VLaurent::one());
        assert_eq!(d.get(&cw(&[1])), VLaurent::monomial(rat(5, 2), -1));
        let b2 = SatakeParamsSO::new(vec![rat(2, 1), rat(3, 1)]).unwrap();
        let d2 = spherical_so_data(&b2, 1).unwrap();
        assert_eq!(d2.get(&cw(&[1, 0])), VLaurent::monomial(rat(35, 6), -3));
    }

    #[test]
    fn weyl_invariance_of_spherical_values() {
        let a = SatakeParamsSO::new(vec![rat(2, 3), rat(5, 7)]).unwrap();
        let b = SatakeParamsSO::new(vec![rat(7, 5), rat(3, 2)]).unwrap();
        assert_eq!(
            spherical_so_data(&a, 3).unwrap(),
            spherical_so_data(&b, 3).unwrap()
        );
    }

    #[test]
    fn eta_shifts_support() {
        let d = WhittakerData::delta(3);
        let e = eta_data(&d);
        assert_eq!(e.get(&cw(&[1, 1, 1])), VLaurent::one());
        assert_eq!(e.len(), 1);
        assert_eq!(eta_data(&e).get(&cw(&[2, 2, 2])), VLaurent::one());
    }

    #[test]
    fn theta_rules() {
        let d = WhittakerData::delta(2);
        let t = theta_data(&d).unwrap();
        assert_eq!(t.get(&cw(&[1, 0])), VLaurent::one());
        assert!(t.get(&cw(&[1, 1])).is_zero());
        assert_eq!(t.len(), 1);
        let tp = theta_prime_data(&d).unwrap();
        assert_eq!(tp.get(&cw(&[1, 1])), VLaurent::one());
        assert_eq!(tp.get(&cw(&[0, 0])), VLaurent::q());
        assert!(theta_data(&WhittakerData::zero(2)).unwrap().is_empty());
        assert!(matches!(
            theta_data(&WhittakerData::delta(3)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn inserting_off_cone_fails() {
        let mut d = WhittakerData::zero(2);
        assert!(d.insert(cw(&[0, 1]), VLaurent::one()).is_err());
        assert!(d.insert(cw(&[1, -1]), VLaurent::one()).is_err());
        assert!(d.get(&cw(&[0, 1])).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let b = SatakeParamsSO::new(vec![rat(2, 3), rat(5, 7)]).unwrap();
        let d = spherical_so_data(&b, 2).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        let back: WhittakerData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"n":2,"entries":[{"lambda":[0,1],"value":{"0":"1/1"}}]}"#;
        assert!(serde_json::from_str::<WhittakerData>(bad).is_err());
    }
}

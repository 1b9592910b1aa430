//! Formal Rankin–Selberg machinery: the `Ψ` series of Whittaker data, the
//! local factor polynomials, the normalized map `Ξ`, and the functional
//! equation, Hecke action and `r = 1` zeta specializations.
//!
//! Everything is generic over a [`Backend`], which either keeps `X_1..X_r`
//! symbolic or binds them (and `v`) to exact rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{schur, schur_at};
use crate::coweights::Coweight;
use crate::error::{domain, Error, Result};
use crate::exactalg::{rational_pow, Coeff, Rational, SymLaurent, TruncSeries, VLaurent};
use crate::whittaker::{gl_rho_pairing, gl_whittaker, SatakeParamsSO, WhittakerData};

/// Coefficient ring for the `Y`-series.
pub trait Backend: Send + Sync {
    type C: Coeff;

    /// Number of `GL_r` variables.
    fn r(&self) -> usize;

    fn zero(&self) -> Self::C;

    fn one(&self) -> Self::C {
        self.zero().one_like()
    }

    /// Image of a symbolic polynomial in `X_1..X_r`.
    fn lift(&self, s: &SymLaurent) -> Result<Self::C>;

    /// Image of a scalar.
    fn scalar(&self, c: &VLaurent) -> Result<Self::C>;

    /// `GL_r` character of a weakly decreasing weight.
    fn character(&self, lambda: &Coweight) -> Result<Self::C>;

    fn var(&self, i: usize) -> Result<Self::C> {
        self.lift(&SymLaurent::var(self.r(), i))
    }
}

/// Keeps `X_1..X_r` and `v` as formal variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symbolic {
    pub r: usize,
}

impl Backend for Symbolic {
    type C = SymLaurent;

    fn r(&self) -> usize {
        self.r
    }

    fn zero(&self) -> SymLaurent {
        SymLaurent::zero(self.r)
    }

    fn lift(&self, s: &SymLaurent) -> Result<SymLaurent> {
        if s.nvars() != self.r {
            return Err(Error::VariableMismatch {
                left: self.r,
                right: s.nvars(),
            });
        }
        Ok(s.clone())
    }

    fn scalar(&self, c: &VLaurent) -> Result<SymLaurent> {
        Ok(SymLaurent::constant(self.r, c.clone()))
    }

    fn character(&self, lambda: &Coweight) -> Result<SymLaurent> {
        schur(lambda)
    }
}

/// Binds `X_i` to `point[i]` and `v` to a nonzero rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluated {
    point: Vec<Rational>,
    v: Rational,
}

impl Evaluated {
    pub fn new(point: Vec<Rational>, v: Rational) -> Result<Self> {
        if v.is_zero() {
            return Err(domain("v must be nonzero"));
        }
        Ok(Self { point, v })
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }
}

impl Backend for Evaluated {
    type C = Rational;

    fn r(&self) -> usize {
        self.point.len()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn lift(&self, s: &SymLaurent) -> Result<Rational> {
        s.evaluate(&self.point, &self.v)
    }

    fn scalar(&self, c: &VLaurent) -> Result<Rational> {
        c.eval(&self.v)
    }

    fn character(&self, lambda: &Coweight) -> Result<Rational> {
        schur_at(lambda, &self.point)
    }
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        Err(domain(format!("need 1 <= r <= n, got r = {r}, n = {n}")))
    } else {
        Ok(())
    }
}

/// Exponent of `v` multiplying the `GL_r` character in the term of `λ`:
/// the Whittaker normalization `-<2ρ,λ>`, the inverse modulus character
/// `+2<2ρ,λ>`, and the twist `ℓ(2n - r - 1)`.
fn psi_v_exponent(lambda_r: &Coweight, n: usize) -> i32 {
    let r = lambda_r.len() as i32;
    gl_rho_pairing(lambda_r) + lambda_r.trace() * (2 * n as i32 - r - 1)
}

/// Data supported on the first `r` slots, grouped by trace.
fn slices_by_trace(d: &WhittakerData, r: usize) -> BTreeMap<i32, Vec<(Coweight, VLaurent)>> {
    let mut out: BTreeMap<i32, Vec<(Coweight, VLaurent)>> = BTreeMap::new();
    for (k, v) in d.slice(r) {
        out.entry(k.trace())
            .or_default()
            .push((k.truncate(r), v.clone()));
    }
    out
}

fn psi_term<B: Backend>(b: &B, n: usize, lambda_r: &Coweight, value: &VLaurent) -> Result<B::C> {
    let scalar = value.shift(psi_v_exponent(lambda_r, n));
    Ok(b.character(lambda_r)?.mul_ref(&b.scalar(&scalar)?))
}

/// Coefficient of `Y^ℓ` in the `Ψ` series.
pub fn psi_component<B: Backend>(b: &B, d: &WhittakerData, n: usize, ell: i32) -> Result<B::C> {
    let r = b.r();
    check_rank(n, r)?;
    if d.n() != n {
        return Err(Error::VariableMismatch {
            left: n,
            right: d.n(),
        });
    }
    if let Some(h) = d.horizon() {
        if ell > h as i32 {
            return Err(domain(format!(
                "degree {ell} lies beyond the data horizon {h}"
            )));
        }
    }
    let mut acc = b.zero();
    for (k, v) in d.slice(r) {
        if k.trace() == ell {
            acc = acc.add_ref(&psi_term(b, n, &k.truncate(r), v)?);
        }
    }
    Ok(acc)
}

/// Symbolic `Ψ` component, written directly through the Whittaker values.
pub fn psi_component_symbolic(
    d: &WhittakerData,
    n: usize,
    r: usize,
    ell: i32,
) -> Result<SymLaurent> {
    check_rank(n, r)?;
    let mut acc = SymLaurent::zero(r);
    for (k, v) in d.slice(r) {
        if k.trace() != ell {
            continue;
        }
        let lam = k.truncate(r);
        let w = gl_whittaker(&lam);
        let inverse_modulus = VLaurent::v_pow(2 * gl_rho_pairing(&lam));
        let twist = VLaurent::v_pow(ell * (2 * n as i32 - r as i32 - 1));
        acc = acc + w.scale(&(v * &inverse_modulus * twist));
    }
    Ok(acc)
}

/// `Ψ` through `Y^t`, clamped to the data horizon.
pub fn psi_series<B: Backend>(
    b: &B,
    d: &WhittakerData,
    n: usize,
    t: i32,
) -> Result<TruncSeries<B::C>> {
    let r = b.r();
    check_rank(n, r)?;
    if d.n() != n {
        return Err(Error::VariableMismatch {
            left: n,
            right: d.n(),
        });
    }
    let t = d.horizon().map_or(t, |h| t.min(h as i32));
    let mut coeffs = vec![b.zero(); (t.max(-1) + 1) as usize];
    for (ell, terms) in slices_by_trace(d, r) {
        if ell < 0 || ell > t {
            continue;
        }
        let mut acc = b.zero();
        for (lam, v) in &terms {
            acc = acc.add_ref(&psi_term(b, n, lam, v)?);
        }
        coeffs[ell as usize] = acc;
    }
    Ok(TruncSeries::new(b.zero(), 0, coeffs, Some(t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    PhiPi,
    Wedge2,
}

/// An inverse local L-factor, held as an exact polynomial in `Y`.
#[derive(Debug, Clone)]
pub struct LocalFactorPoly<C: Coeff> {
    pub kind: FactorKind,
    pub r: usize,
    pub poly: TruncSeries<C>,
}

fn linear_factor<B: Backend>(b: &B, c: B::C) -> TruncSeries<B::C> {
    TruncSeries::polynomial(b.zero(), vec![b.one(), c.neg_ref()])
}

/// `Π_j Π_{β̂ ∈ β^{±1}} (1 - β̂ v^{-1} X_j Y)`.
pub fn p_phi_pi<B: Backend>(b: &B, beta: &SatakeParamsSO) -> Result<LocalFactorPoly<B::C>> {
    let r = b.r();
    let mut poly = TruncSeries::one(b.zero());
    for j in 0..r {
        let x = b.var(j)?;
        for bh in beta.gl_parameter() {
            let c = x.mul_ref(&b.scalar(&VLaurent::monomial(bh, -1))?);
            poly = poly.mul(&linear_factor(b, c));
        }
    }
    Ok(LocalFactorPoly {
        kind: FactorKind::PhiPi,
        r,
        poly,
    })
}

/// `Π_{i<j} (1 - v^{-2} X_i X_j Y^2)`.
pub fn p_wedge2<B: Backend>(b: &B) -> Result<LocalFactorPoly<B::C>> {
    let r = b.r();
    let mut poly = TruncSeries::one(b.zero());
    let q_inv = b.scalar(&VLaurent::q_pow(-1))?;
    for i in 0..r {
        for j in i + 1..r {
            let c = b.var(i)?.mul_ref(&b.var(j)?).mul_ref(&q_inv);
            let f = TruncSeries::polynomial(b.zero(), vec![b.one(), b.zero(), c.neg_ref()]);
            poly = poly.mul(&f);
        }
    }
    Ok(LocalFactorPoly {
        kind: FactorKind::Wedge2,
        r,
        poly,
    })
}

/// The tensor-product factor of `β`, or the constant `1` for data with no
/// attached representation.
pub fn phi_factor<B: Backend>(b: &B, beta: Option<&SatakeParamsSO>) -> Result<TruncSeries<B::C>> {
    match beta {
        Some(beta) => Ok(p_phi_pi(b, beta)?.poly),
        None => Ok(TruncSeries::one(b.zero())),
    }
}

/// Outcome of a `Ξ` computation.
#[derive(Debug, Clone)]
pub struct XiResult<C: Coeff> {
    pub n: usize,
    pub r: usize,
    pub level: Option<u32>,
    /// The full series `P_φ Ψ / P_∧²` through `series.order()`.
    pub series: TruncSeries<C>,
    /// Value at `Y = 1`: the sum of the coefficients through `detected_degree`.
    pub poly: C,
    /// Highest degree with a nonzero coefficient below the window; `None` for zero.
    pub detected_degree: Option<i32>,
    /// Whether the last `window` coefficients vanish.
    pub stabilized: bool,
    pub window: u32,
}

impl<C: Coeff> XiResult<C> {
    pub fn with_level(mut self, level: u32) -> Self {
        self.level = Some(level);
        self
    }

    pub fn order(&self) -> i32 {
        self.series.order().unwrap_or(0)
    }
}

fn summarize<C: Coeff>(n: usize, r: usize, series: TruncSeries<C>, window: u32) -> XiResult<C> {
    let t = series.order().expect("truncated series");
    let w = window as i32;
    let stabilized = t + 1 >= w && series.vanishes_on(t - w + 1, t);
    let detected_degree = series.degree().filter(|deg| *deg <= t);
    let poly = series.sum_coeffs();
    XiResult {
        n,
        r,
        level: None,
        series,
        poly,
        detected_degree,
        stabilized,
        window,
    }
}

/// `Ξ = P_φ Ψ / P_∧²` through `Y^t`, summed at `Y = 1`.
///
/// The sum is meaningful once the series has stabilized: coefficient `ℓ` is
/// homogeneous of degree `ℓ` in the `X`'s, so substituting `Y = 1` loses
/// nothing.
pub fn xi<B: Backend>(
    b: &B,
    d: &WhittakerData,
    n: usize,
    p_phi: &TruncSeries<B::C>,
    t: i32,
    window: u32,
) -> Result<XiResult<B::C>> {
    if window == 0 {
        return Err(domain("stabilization window must be positive"));
    }
    let psi = psi_series(b, d, n, t)?;
    let t_eff = psi.order().expect("truncated series");
    let wedge_inv = p_wedge2(b)?.poly.invert_to(t_eff)?;
    let series = p_phi.mul(&psi).mul(&wedge_inv).truncate(t_eff);
    Ok(summarize(n, b.r(), series, window))
}

/// Truncation that leaves room for the support of `d`, both local factors
/// and the stabilization window.
pub fn default_truncation(d: &WhittakerData, n: usize, r: usize, window: u32) -> i32 {
    let diameter = d.iter().map(|(k, _)| k.trace()).max().unwrap_or(0);
    diameter + (2 * n * r + r * (r.saturating_sub(1))) as i32 + window as i32
}

/// `ε^r (X_1⋯X_r)^{a-m} Y^{(a-m) r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonMonomial {
    pub sign: i8,
    pub x_power: i32,
    pub y_power: i32,
    pub r: usize,
}

impl EpsilonMonomial {
    /// The `X` part; the `Y` power is `y_power`.
    pub fn to_sym(&self) -> SymLaurent {
        SymLaurent::monomial(
            vec![self.x_power; self.r],
            VLaurent::from_int(i64::from(self.sign)),
        )
    }
}

/// Conductor exponent and root number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonData {
    pub a_pi: u32,
    pub eps_pi: i8,
}

impl EpsilonData {
    pub fn new(a_pi: u32, eps_pi: i8) -> Result<Self> {
        if eps_pi != 1 && eps_pi != -1 {
            return Err(domain("root number must be +1 or -1"));
        }
        Ok(Self { a_pi, eps_pi })
    }

    pub fn unramified() -> Self {
        Self { a_pi: 0, eps_pi: 1 }
    }
}

pub fn epsilon_poly(e: EpsilonData, m: u32, r: usize) -> EpsilonMonomial {
    let k = e.a_pi as i32 - m as i32;
    let sign = if e.eps_pi < 0 && r % 2 == 1 { -1 } else { 1 };
    EpsilonMonomial {
        sign,
        x_power: k,
        y_power: k * r as i32,
        r,
    }
}

/// Checks `Ξ(u v; X^{-1}) = ε^r (X_1⋯X_r)^{a-m} Ξ(v; X)`.
pub fn fe_check(xi_v: &SymLaurent, xi_uv: &SymLaurent, e: EpsilonData, m: u32) -> Result<bool> {
    if xi_v.nvars() != xi_uv.nvars() {
        return Err(Error::VariableMismatch {
            left: xi_v.nvars(),
            right: xi_uv.nvars(),
        });
    }
    let eps = epsilon_poly(e, m, xi_v.nvars());
    Ok(xi_uv.invert_all() == eps.to_sym().try_mul(xi_v)?)
}

/// Substitutes `X_r = 0` into a symbolic `Ξ`.
pub fn specialize_last(x: &XiResult<SymLaurent>) -> Result<XiResult<SymLaurent>> {
    if x.r < 2 {
        return Err(domain("specialization needs at least two variables"));
    }
    let zero = SymLaurent::zero(x.r - 1);
    let mut coeffs = Vec::new();
    let low = x.series.valuation().unwrap_or(0);
    for (_, c) in x.series.coeffs() {
        coeffs.push(c.specialize_last_zero()?);
    }
    let series = TruncSeries::new(zero, low, coeffs, x.series.order());
    let mut out = summarize(x.n, x.r - 1, series, x.window);
    out.level = x.level;
    Ok(out)
}

/// Multiplies `Ξ` by the image of a Hecke operator, which must lie in the
/// invariant subalgebra. The series is lifted homogeneously: a degree-`k`
/// part of the image also carries `Y^k`.
pub fn hecke_act(
    x: &XiResult<SymLaurent>,
    satake_image: &SymLaurent,
) -> Result<XiResult<SymLaurent>> {
    if x.r != x.n {
        return Err(domain("the Hecke action is defined for r = n"));
    }
    if satake_image.nvars() != x.r {
        return Err(Error::VariableMismatch {
            left: x.r,
            right: satake_image.nvars(),
        });
    }
    if !satake_image.is_in_s0() {
        return Err(domain("Satake image is not in the invariant subalgebra"));
    }
    let mut by_degree: BTreeMap<i32, SymLaurent> = BTreeMap::new();
    for (e, c) in satake_image.terms() {
        let slot = by_degree
            .entry(e.iter().sum())
            .or_insert_with(|| SymLaurent::zero(x.r));
        *slot = slot.add_ref(&SymLaurent::monomial(e.to_vec(), c.clone()));
    }
    let mut series = TruncSeries::zero(SymLaurent::zero(x.r), x.series.order());
    for (k, part) in by_degree {
        series = series.add(&x.series.scale(&part).shift(k));
    }
    let poly = x.poly.try_mul(satake_image)?;
    let detected_degree = series.degree();
    Ok(XiResult {
        n: x.n,
        r: x.r,
        level: x.level,
        stabilized: x.stabilized,
        window: x.window,
        series,
        poly,
        detected_degree,
    })
}

/// The `r = 1` series at `X_1 = 1`: `Σ_ℓ v^{ℓ(2n-2)} d(ℓ ε_1) Y^ℓ`.
pub fn zeta_series(d: &WhittakerData, n: usize, t: i32) -> Result<TruncSeries<VLaurent>> {
    let psi = psi_series(&Symbolic { r: 1 }, d, n, t)?;
    let one = [Rational::one()];
    let mut coeffs = Vec::new();
    for ell in 0..=psi.order().unwrap_or(-1) {
        coeffs.push(psi.coeff(ell).evaluate_vars(&one)?);
    }
    Ok(TruncSeries::new(VLaurent::zero(), 0, coeffs, psi.order()))
}

/// `Ξ` vanishes through `Y^t` exactly when the data vanishes on the `r`-slice
/// of traces up to `t`.
pub fn kernel_check<B: Backend>(b: &B, d: &WhittakerData, n: usize, t: i32) -> Result<bool> {
    let x = xi(b, d, n, &TruncSeries::one(b.zero()), t, 1)?;
    let t_eff = x.order();
    let slice_zero = d
        .slice(b.r())
        .all(|(k, v)| k.trace() > t_eff || v.is_zero());
    Ok(x.series.is_zero() == slice_zero)
}

/// Coefficients `b_0..b_r` when `f = Σ b_j e_j(X)` with `e_j` elementary
/// symmetric; `None` when `f` is not of that form.
pub fn elementary_linear_coefficients(f: &SymLaurent) -> Option<Vec<VLaurent>> {
    let r = f.nvars();
    let coeffs: Vec<VLaurent> = (0..=r)
        .map(|j| {
            let e: Vec<i32> = (0..r).map(|i| i32::from(i < j)).collect();
            f.coeff(&e)
        })
        .collect();
    let mut rebuilt = SymLaurent::zero(r);
    for (j, c) in coeffs.iter().enumerate() {
        rebuilt = rebuilt + SymLaurent::elementary(r, j).scale(c);
    }
    (rebuilt == *f).then_some(coeffs)
}

/// Whether `b_j = b_0 s^j` for every `j`, with `s = ±1`.
pub fn is_sign_palindromic(coeffs: &[VLaurent], s: i8) -> bool {
    let Some(b0) = coeffs.first() else {
        return true;
    };
    coeffs.iter().enumerate().all(|(j, c)| {
        let sign = if s < 0 && j % 2 == 1 { -1 } else { 1 };
        *c == b0.scale(&Rational::from_integer(sign.into()))
    })
}

/// `q^{n(n-1)/2} X_1⋯X_n`, the factor contributed by one shift by `μ_n`.
pub fn eta_multiplier(n: usize) -> SymLaurent {
    SymLaurent::monomial(vec![1; n], VLaurent::q_pow((n * (n - 1) / 2) as i32))
}

/// Evaluates the product `Π (1 - c_i u)^{-1}` through `u^t`, the reference
/// expansion of an unramified L-factor.
pub fn euler_product_expansion(roots: &[Rational], t: usize) -> Vec<Rational> {
    // complete homogeneous sums h_k(roots)
    let mut h = vec![Rational::zero(); t + 1];
    h[0] = Rational::one();
    for c in roots {
        for k in 1..=t {
            let step = c * &h[k - 1];
            h[k] += step;
        }
    }
    h
}

/// `v^k` as a rational at `v`.
pub fn v_power_at(v: &Rational, k: i32) -> Rational {
    rational_pow(v, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::whittaker::{eta_data, spherical_so_data, theta_data, theta_prime_data};

    fn cw(v: &[i32]) -> Coweight {
        Coweight::new(v.to_vec())
    }

    fn m(e: &[i32], c: VLaurent) -> SymLaurent {
        SymLaurent::monomial(e.to_vec(), c)
    }

    fn beta2() -> SatakeParamsSO {
        SatakeParamsSO::new(vec![rat(2, 3), rat(5, 7)]).unwrap()
    }

    #[test]
    fn psi_of_delta() {
        let d = WhittakerData::delta(2);
        let b = Symbolic { r: 2 };
        assert_eq!(psi_component(&b, &d, 2, 0).unwrap(), SymLaurent::one(2));
        assert!(psi_component(&b, &d, 2, 1).unwrap().is_zero());
        assert!(psi_component(&Symbolic { r: 3 }, &d, 2, 0).is_err());
    }

    #[test]
    fn psi_rank_one_single_term() {
        let beta = SatakeParamsSO::new(vec![rat(3, 1)]).unwrap();
        let d = spherical_so_data(&beta, 3).unwrap();
        let c = psi_component(&Symbolic { r: 1 }, &d, 1, 1).unwrap();
        assert_eq!(c, m(&[1], VLaurent::monomial(rat(10, 3), -1)));
    }

    #[test]
    fn psi_matches_direct_formula() {
        let d = spherical_so_data(&beta2(), 4).unwrap();
        for r in 1..=2 {
            for ell in 0..=4 {
                assert_eq!(
                    psi_component(&Symbolic { r }, &d, 2, ell).unwrap(),
                    psi_component_symbolic(&d, 2, r, ell).unwrap()
                );
            }
        }
    }

    #[test]
    fn local_factor_shapes() {
        let beta = SatakeParamsSO::new(vec![rat(3, 1)]).unwrap();
        let p = p_phi_pi(&Symbolic { r: 1 }, &beta).unwrap().poly;
        assert_eq!(p.coeff(0), SymLaurent::one(1));
        assert_eq!(p.coeff(1), m(&[1], VLaurent::monomial(rat(-10, 3), -1)));
        assert_eq!(p.coeff(2), m(&[2], VLaurent::v_pow(-2)));
        assert_eq!(p.degree(), Some(2));

        assert_eq!(
            p_wedge2(&Symbolic { r: 1 }).unwrap().poly,
            TruncSeries::one(SymLaurent::zero(1))
        );
        let w2 = p_wedge2(&Symbolic { r: 2 }).unwrap().poly;
        assert_eq!(w2.coeff(2), m(&[1, 1], VLaurent::v_pow(-2)).neg_ref());
        let w3 = p_wedge2(&Symbolic { r: 3 }).unwrap().poly;
        assert_eq!(w3.degree(), Some(6));
        assert_eq!(w3.coeff(6), m(&[2, 2, 2], VLaurent::v_pow(-6)).neg_ref());
    }

    #[test]
    fn spherical_xi_is_one() {
        let beta = beta2();
        let d = spherical_so_data(&beta, 12).unwrap();
        for r in 1..=2 {
            let b = Symbolic { r };
            let p = phi_factor(&b, Some(&beta)).unwrap();
            let x = xi(&b, &d, 2, &p, 12, 4).unwrap();
            assert!(x.stabilized);
            assert_eq!(x.poly, SymLaurent::one(r));
            assert_eq!(x.detected_degree, Some(0));
        }
    }

    #[test]
    fn raising_images_at_level_one() {
        let beta = beta2();
        let d = spherical_so_data(&beta, 12).unwrap();
        let b = Symbolic { r: 2 };
        let p = phi_factor(&b, Some(&beta)).unwrap();
        let q = VLaurent::q();
        let t = xi(&b, &theta_data(&d).unwrap(), 2, &p, 12, 4).unwrap();
        assert_eq!(t.poly, (m(&[1, 0], q.clone()) + m(&[0, 1], q.clone())));
        let tp = xi(&b, &theta_prime_data(&d).unwrap(), 2, &p, 12, 4).unwrap();
        assert_eq!(tp.poly, (m(&[0, 0], q.clone()) + m(&[1, 1], q.clone())));
        let e = xi(&b, &eta_data(&d), 2, &p, 12, 4).unwrap();
        assert_eq!(e.poly, m(&[1, 1], q));
    }

    #[test]
    fn epsilon_monomials() {
        let e = EpsilonData::new(3, 1).unwrap();
        assert_eq!(epsilon_poly(e, 3, 2).to_sym(), SymLaurent::one(2));
        let k = epsilon_poly(EpsilonData::new(0, 1).unwrap(), 1, 2);
        assert_eq!((k.x_power, k.y_power), (-1, -2));
        let s = epsilon_poly(EpsilonData::new(0, -1).unwrap(), 0, 3);
        assert_eq!(s.to_sym(), SymLaurent::constant(3, VLaurent::from_int(-1)));
        assert!(EpsilonData::new(0, 0).is_err());
    }

    #[test]
    fn functional_equation_cases() {
        let one = SymLaurent::one(2);
        assert!(fe_check(&one, &one, EpsilonData::unramified(), 0).unwrap());
        let q = VLaurent::q();
        let plus = m(&[0, 0], q.clone())
            + m(&[1, 0], q.clone())
            + m(&[0, 1], q.clone())
            + m(&[1, 1], q.clone());
        assert!(fe_check(&plus, &plus, EpsilonData::unramified(), 1).unwrap());
        let t = m(&[1, 0], q.clone()) + m(&[0, 1], q.clone());
        assert!(!fe_check(&t, &plus, EpsilonData::unramified(), 1).unwrap());
    }

    #[test]
    fn specialization_examples() {
        let beta = beta2();
        let d = spherical_so_data(&beta, 12).unwrap();
        let b = Symbolic { r: 2 };
        let p = phi_factor(&b, Some(&beta)).unwrap();
        let t = xi(&b, &theta_data(&d).unwrap(), 2, &p, 12, 4).unwrap();
        let s = specialize_last(&t).unwrap();
        assert_eq!(s.poly, m(&[1], VLaurent::q()));
        let e = xi(&b, &eta_data(&d), 2, &p, 12, 4).unwrap();
        assert!(specialize_last(&e).unwrap().poly.is_zero());
    }

    #[test]
    fn hecke_action() {
        let beta = beta2();
        let d = spherical_so_data(&beta, 12).unwrap();
        let b = Symbolic { r: 2 };
        let p = phi_factor(&b, Some(&beta)).unwrap();
        let x = xi(&b, &d, 2, &p, 12, 4).unwrap();
        let same = hecke_act(&x, &SymLaurent::one(2)).unwrap();
        assert_eq!(same.poly, x.poly);
        let q = VLaurent::q();
        let s = m(&[1, 0], q.clone())
            + m(&[0, 1], q.clone())
            + m(&[-1, 0], q.clone())
            + m(&[0, -1], q.clone());
        let h = hecke_act(&x, &s).unwrap();
        assert_eq!(h.poly, s);
        assert_eq!(h.series.sum_coeffs(), s);
        let bad = m(&[1, 0], q.clone()) + m(&[0, 1], q);
        assert!(hecke_act(&x, &bad).is_err());
    }

    #[test]
    fn zeta_of_rank_one_spherical() {
        let beta = SatakeParamsSO::new(vec![rat(3, 2)]).unwrap();
        let d = spherical_so_data(&beta, 8).unwrap();
        let z = zeta_series(&d, 1, 8).unwrap();
        // L(s) = Π (1 - β̂ v^{-1} Y)^{-1}, so the Y^ℓ coefficient is v^{-ℓ} h_ℓ(β^{±1})
        let h = euler_product_expansion(&beta.gl_parameter(), 8);
        for (ell, hl) in h.iter().enumerate() {
            assert_eq!(
                z.coeff(ell as i32),
                VLaurent::monomial(hl.clone(), -(ell as i32))
            );
        }
    }

    #[test]
    fn kernel_examples() {
        let b = Symbolic { r: 2 };
        assert!(kernel_check(&b, &WhittakerData::zero(2), 2, 6).unwrap());
        assert!(kernel_check(&b, &WhittakerData::delta(2), 2, 6).unwrap());
        let mut d = WhittakerData::zero(3);
        d.insert(cw(&[1, 1, 1]), VLaurent::one()).unwrap();
        // off the 2-slice: zero on both sides
        assert!(kernel_check(&b, &d, 3, 6).unwrap());
        assert!(xi(&b, &d, 3, &TruncSeries::one(b.zero()), 6, 2)
            .unwrap()
            .series
            .is_zero());
    }

    #[test]
    fn elementary_decomposition() {
        let q = VLaurent::q();
        let f = SymLaurent::elementary(2, 0).scale(&q) + SymLaurent::elementary(2, 2).scale(&q);
        let c = elementary_linear_coefficients(&f).unwrap();
        assert_eq!(c, vec![q.clone(), VLaurent::zero(), q.clone()]);
        assert!(elementary_linear_coefficients(&m(&[2, 0], q.clone())).is_none());
        assert!(is_sign_palindromic(&[q.clone(), q.clone(), q.clone()], 1));
        assert!(is_sign_palindromic(
            &[q.neg_ref(), q.clone(), q.neg_ref()],
            -1
        ));
        assert!(!is_sign_palindromic(
            &[q.clone(), q.clone(), q.neg_ref()],
            1
        ));
    }

    #[test]
    fn evaluated_backend_agrees_with_symbolic() {
        let beta = beta2();
        let d = theta_data(&spherical_so_data(&beta, 8).unwrap()).unwrap();
        let pt = vec![rat(3, 5), rat(-7, 2)];
        let v = rat(5, 3);
        let s = psi_series(&Symbolic { r: 2 }, &d, 2, 8).unwrap();
        let e = psi_series(&Evaluated::new(pt.clone(), v.clone()).unwrap(), &d, 2, 8).unwrap();
        for ell in 0..=8 {
            assert_eq!(s.coeff(ell).evaluate(&pt, &v).unwrap(), e.coeff(ell));
        }
    }
}

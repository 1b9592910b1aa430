//! Images under `Ξ` of the oldform bases built from the newform by the
//! level-raising operators, exact rank computations over `Q(v)`, and the
//! comparison between the operator-monomial basis and the Hecke-built basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characters::{orbit_sum, so4_minuscule_character};
use crate::coweights::{enumerate_cone, ConeTag, Coweight};
use crate::error::{domain, Error, Result};
use crate::exactalg::{rank_over_fraction_field, Coeff, SymLaurent, VLaurent};
use crate::rankin::eta_multiplier;

/// Which raising operator bridges the newform to the opposite parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bridge {
    Theta,
    ThetaPrime,
}

/// One member of an oldform basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisKind {
    /// Hecke operator `λ` followed by level shifts, same parity as the newform.
    EtaLambda { lambda: Coweight },
    /// Symmetrized Hecke operator applied after a bridge, opposite parity.
    EtaSquare { lambda: Coweight, bridge: Bridge },
    /// Unsymmetrized variant of [`BasisKind::EtaSquare`].
    EtaSingle { lambda: Coweight, bridge: Bridge },
    /// `θ'^i θ^j η^k` applied to the newform.
    RsMonomial { i: u32, j: u32, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisElementSpec {
    pub kind: BasisKind,
    /// Level above the conductor exponent.
    pub m_minus_a: u32,
}

impl BasisElementSpec {
    /// Checks the norm bound and parity rules.
    pub fn validate(&self) -> Result<()> {
        let d = self.m_minus_a;
        let ok = match &self.kind {
            BasisKind::EtaLambda { lambda } => {
                d.is_multiple_of(2) && lambda.is_h_dominant() && 2 * lambda.sup_norm() <= d
            }
            BasisKind::EtaSquare { lambda, .. } | BasisKind::EtaSingle { lambda, .. } => {
                d % 2 == 1 && lambda.is_g_dominant() && 2 * lambda.sup_norm() < d
            }
            BasisKind::RsMonomial { i, j, k } => i + j + 2 * k == d,
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!(
                "invalid basis element {self} at level offset {d}"
            )))
        }
    }
}

impl fmt::Display for BasisElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bridge = |b: &Bridge| match b {
            Bridge::Theta => "theta",
            Bridge::ThetaPrime => "theta'",
        };
        match &self.kind {
            BasisKind::EtaLambda { lambda } => write!(f, "eta{lambda}"),
            BasisKind::EtaSquare { lambda, bridge: b } => write!(f, "eta_sq{lambda}.{}", bridge(b)),
            BasisKind::EtaSingle { lambda, bridge: b } => write!(f, "eta{lambda}.{}", bridge(b)),
            BasisKind::RsMonomial { i, j, k } => write!(f, "theta'^{i} theta^{j} eta^{k}"),
        }
    }
}

/// A `Ξ` image. `stand_in` marks values that use Weyl-orbit sums in place
/// of Satake transforms, or level-one constants not known beyond `n = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiImage {
    pub label: String,
    pub poly: SymLaurent,
    pub stand_in: bool,
}

/// Satake transform of the minuscule operators for `SO_4`.
pub fn satake_table() -> BTreeMap<Coweight, SymLaurent> {
    let q = VLaurent::q();
    [[1, 0], [1, 1], [1, -1]]
        .into_iter()
        .map(|e| {
            let lam = Coweight::from(e);
            let chi = so4_minuscule_character(&lam).expect("minuscule weight");
            (lam, chi.scale(&q))
        })
        .collect()
}

/// Satake image of the operator attached to `λ`, with a stand-in flag.
pub fn satake_value(lambda: &Coweight) -> Result<(SymLaurent, bool)> {
    let n = lambda.len();
    if !lambda.is_h_dominant() {
        return Err(domain(format!(
            "{lambda} is not dominant for the even orthogonal group"
        )));
    }
    if lambda.sup_norm() == 0 {
        return Ok((SymLaurent::one(n), false));
    }
    if n == 2 {
        if let Some(s) = satake_table().get(lambda) {
            return Ok((s.clone(), false));
        }
    }
    let lead = VLaurent::q_pow(lambda.sup_norm() as i32);
    Ok((orbit_sum(lambda)?.scale(&lead), true))
}

/// `Ξ` at level `a + 1` of the two bridges applied to the newform:
/// `q Σ_{j odd} e_j` for `θ` and `q Σ_{j even} e_j` for `θ'`.
/// Exact for `n = 2`; for larger `n` the constants are conditional.
pub fn level_one_image(n: usize, bridge: Bridge) -> (SymLaurent, bool) {
    let parity = match bridge {
        Bridge::Theta => 1,
        Bridge::ThetaPrime => 0,
    };
    let mut out = SymLaurent::zero(n);
    for j in (0..=n).filter(|j| j % 2 == parity) {
        out = out + SymLaurent::elementary(n, j);
    }
    (out.scale(&VLaurent::q()), n != 2)
}

fn power(base: &SymLaurent, k: u32) -> SymLaurent {
    Coeff::pow(base, k)
}

/// `Ξ` image of a basis element for `SO(2n+1)`.
pub fn xi_image(spec: &BasisElementSpec, n: usize) -> Result<XiImage> {
    spec.validate()?;
    let label = spec.to_string();
    let shift = eta_multiplier(n);
    let d = spec.m_minus_a;
    let (poly, stand_in) = match &spec.kind {
        BasisKind::EtaLambda { lambda } => {
            check_len(lambda, n)?;
            let (s, flag) = satake_value(lambda)?;
            (power(&shift, d / 2).try_mul(&s)?, flag)
        }
        BasisKind::EtaSquare { lambda, bridge } | BasisKind::EtaSingle { lambda, bridge } => {
            check_len(lambda, n)?;
            let (mut s, mut flag) = satake_value(lambda)?;
            let symmetrize =
                matches!(spec.kind, BasisKind::EtaSquare { .. }) && lambda.entries()[n - 1] > 0;
            if symmetrize {
                let (t, tflag) = satake_value(&lambda.tilde())?;
                s = s + t;
                flag |= tflag;
            }
            let (base, bflag) = level_one_image(n, *bridge);
            (
                power(&shift, (d - 1) / 2).try_mul(&s)?.try_mul(&base)?,
                flag || bflag,
            )
        }
        BasisKind::RsMonomial { i, j, k } => {
            if n != 2 {
                return Err(Error::Unsupported(
                    "operator monomials are defined for n = 2".into(),
                ));
            }
            let (tp, _) = level_one_image(2, Bridge::ThetaPrime);
            let (t, _) = level_one_image(2, Bridge::Theta);
            (power(&tp, *i) * power(&t, *j) * power(&shift, *k), false)
        }
    };
    Ok(XiImage {
        label,
        poly,
        stand_in,
    })
}

fn check_len(lambda: &Coweight, n: usize) -> Result<()> {
    if lambda.len() == n {
        Ok(())
    } else {
        Err(Error::VariableMismatch {
            left: n,
            right: lambda.len(),
        })
    }
}

/// Which family of oldforms to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisFamily {
    /// Symmetrized operators at opposite parity.
    Hecke,
    /// Unsymmetrized operators at opposite parity; may be dependent.
    HeckeUnsymmetrized,
    /// Operator monomials `θ'^i θ^j η^k` (rank two only).
    Monomial,
}

pub fn basis_specs(n: usize, m_minus_a: u32, family: BasisFamily) -> Vec<BasisElementSpec> {
    let d = m_minus_a;
    let mk = |kind| BasisElementSpec { kind, m_minus_a: d };
    match family {
        BasisFamily::Monomial => {
            let mut out = Vec::new();
            for k in 0..=d / 2 {
                for j in 0..=d - 2 * k {
                    let i = d - 2 * k - j;
                    out.push(mk(BasisKind::RsMonomial { i, j, k }));
                }
            }
            out
        }
        _ if d.is_multiple_of(2) => enumerate_cone(ConeTag::HDominant, n, d / 2)
            .into_iter()
            .map(|lambda| mk(BasisKind::EtaLambda { lambda }))
            .collect(),
        _ => {
            let mut out = Vec::new();
            for lambda in enumerate_cone(ConeTag::GDominant, n, (d - 1) / 2) {
                for bridge in [Bridge::Theta, Bridge::ThetaPrime] {
                    let lambda = lambda.clone();
                    out.push(mk(if family == BasisFamily::Hecke {
                        BasisKind::EtaSquare { lambda, bridge }
                    } else {
                        BasisKind::EtaSingle { lambda, bridge }
                    }));
                }
            }
            out
        }
    }
}

pub fn basis_images(n: usize, m_minus_a: u32, family: BasisFamily) -> Result<Vec<XiImage>> {
    basis_specs(n, m_minus_a, family)
        .iter()
        .map(|s| xi_image(s, n))
        .collect()
}

/// Rank over `Q(v)` of a list of polynomials, and whether they are independent.
pub fn rank_check(images: &[SymLaurent]) -> Result<(usize, bool)> {
    let Some(first) = images.first() else {
        return Ok((0, true));
    };
    let nvars = first.nvars();
    if let Some(bad) = images.iter().find(|p| p.nvars() != nvars) {
        return Err(Error::VariableMismatch {
            left: nvars,
            right: bad.nvars(),
        });
    }
    let monomials: BTreeSet<Vec<i32>> = images
        .iter()
        .flat_map(|p| p.terms().map(|(e, _)| e.to_vec()))
        .collect();
    let rows: Vec<Vec<VLaurent>> = images
        .iter()
        .map(|p| monomials.iter().map(|e| p.coeff(e)).collect())
        .collect();
    let rank = rank_over_fraction_field(&rows)?;
    Ok((rank, rank == images.len()))
}

/// Both sides of the level `a + 3` relation among unsymmetrized elements:
/// `η_{ε_1}∘θ' = q η_0∘θ + η_{ε_1+ε_2}∘θ`.
pub fn dependence_sides() -> Result<(SymLaurent, SymLaurent)> {
    let elem = |lambda: [i32; 2], bridge| BasisElementSpec {
        kind: BasisKind::EtaSingle {
            lambda: Coweight::from(lambda),
            bridge,
        },
        m_minus_a: 3,
    };
    let lhs = xi_image(&elem([1, 0], Bridge::ThetaPrime), 2)?.poly;
    let zero = xi_image(&elem([0, 0], Bridge::Theta), 2)?.poly;
    let top = xi_image(&elem([1, 1], Bridge::Theta), 2)?.poly;
    let rhs = zero.scale(&VLaurent::q()) + top;
    Ok((lhs, rhs))
}

pub fn dependence_check_a3() -> Result<bool> {
    let (lhs, rhs) = dependence_sides()?;
    Ok(lhs == rhs)
}

/// Side-by-side comparison of the monomial and Hecke bases at rank two.
#[derive(Debug, Clone, Serialize)]
pub struct BasisComparison {
    pub m_minus_a: u32,
    pub monomial: Vec<XiImage>,
    pub hecke: Vec<XiImage>,
    pub monomial_rank: usize,
    pub hecke_rank: usize,
    pub joint_rank: usize,
    pub only_monomial: Vec<SymLaurent>,
    pub only_hecke: Vec<SymLaurent>,
    pub sets_equal: bool,
    pub spans_equal: bool,
    pub stand_in: bool,
}

pub fn compare_bases(m_minus_a: u32) -> Result<BasisComparison> {
    if m_minus_a > 4 {
        return Err(domain(
            "basis comparison is limited to level offsets up to 4",
        ));
    }
    let monomial = basis_images(2, m_minus_a, BasisFamily::Monomial)?;
    let hecke = basis_images(2, m_minus_a, BasisFamily::Hecke)?;
    let polys = |v: &[XiImage]| v.iter().map(|x| x.poly.clone()).collect::<Vec<_>>();
    let (mp, hp) = (polys(&monomial), polys(&hecke));
    let (monomial_rank, _) = rank_check(&mp)?;
    let (hecke_rank, _) = rank_check(&hp)?;
    let joint: Vec<SymLaurent> = mp.iter().chain(&hp).cloned().collect();
    let (joint_rank, _) = rank_check(&joint)?;
    let only_monomial: Vec<SymLaurent> = mp.iter().filter(|p| !hp.contains(p)).cloned().collect();
    let only_hecke: Vec<SymLaurent> = hp.iter().filter(|p| !mp.contains(p)).cloned().collect();
    Ok(BasisComparison {
        m_minus_a,
        sets_equal: only_monomial.is_empty() && only_hecke.is_empty(),
        spans_equal: joint_rank == monomial_rank && joint_rank == hecke_rank,
        stand_in: hecke.iter().any(|x| x.stand_in),
        monomial,
        hecke,
        monomial_rank,
        hecke_rank,
        joint_rank,
        only_monomial,
        only_hecke,
    })
}

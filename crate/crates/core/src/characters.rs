//! Weyl characters: Schur polynomials for `GL_r` (with a determinant twist
//! for negative weights), symplectic characters, the three minuscule `SO_4`
//! characters, and Weyl-orbit sums for the even orthogonal group.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coweights::Coweight;
use crate::error::{domain, Error, Result};
use crate::exactalg::{det, det_rational, Coeff, Rational, SymLaurent, VLaurent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    Gl,
    Sp,
    SoEven,
}

/// A highest weight tagged with the group whose character it names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeight {
    lambda: Coweight,
    group: Group,
}

impl HighestWeight {
    pub fn new(lambda: Coweight, group: Group) -> Result<Self> {
        let ok = match group {
            Group::Gl => lambda.is_gl_dominant(),
            Group::Sp => lambda.is_g_dominant(),
            Group::SoEven => lambda.is_h_dominant(),
        };
        if !ok {
            return Err(domain(format!("{lambda} is not dominant for {group:?}")));
        }
        Ok(Self { lambda, group })
    }

    pub fn lambda(&self) -> &Coweight {
        &self.lambda
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// The character. Even orthogonal weights outside the minuscule table
    /// fall back to the Weyl-orbit sum.
    pub fn character(&self) -> Result<SymLaurent> {
        match self.group {
            Group::Gl => schur(&self.lambda),
            Group::Sp => sp_character(&self.lambda),
            Group::SoEven => match so4_minuscule_character(&self.lambda) {
                Ok(c) => Ok(c),
                Err(Error::Unsupported(_)) => orbit_sum(&self.lambda),
                Err(e) => Err(e),
            },
        }
    }
}

/// Complete homogeneous symmetric polynomial `h_k` in `r` variables.
pub fn complete_homogeneous(r: usize, k: i32) -> SymLaurent {
    let mut out = SymLaurent::zero(r);
    if k < 0 {
        return out;
    }
    if r == 0 {
        return if k == 0 { SymLaurent::one(0) } else { out };
    }
    let mut exps = vec![0i32; r];
    fill_compositions(&mut exps, 0, k, &mut |e| {
        out = out.add_ref(&SymLaurent::monomial(e.to_vec(), VLaurent::one()));
    });
    out
}

fn fill_compositions(exps: &mut Vec<i32>, slot: usize, left: i32, f: &mut impl FnMut(&[i32])) {
    if slot + 1 == exps.len() {
        exps[slot] = left;
        f(exps);
        return;
    }
    for x in 0..=left {
        exps[slot] = x;
        fill_compositions(exps, slot + 1, left - x, f);
    }
}

/// `GL_r` character of a weakly decreasing weight: `(X_1⋯X_r)^{λ_r} s_{λ - λ_r}`,
/// with the Schur polynomial from the Jacobi–Trudi determinant.
pub fn schur(lambda: &Coweight) -> Result<SymLaurent> {
    if !lambda.is_gl_dominant() {
        return Err(domain(format!("{lambda} is not weakly decreasing")));
    }
    let r = lambda.len();
    if r == 0 {
        return Ok(SymLaurent::one(0));
    }
    let twist = *lambda.entries().last().expect("nonempty");
    let parts: Vec<i32> = lambda
        .entries()
        .iter()
        .map(|x| x - twist)
        .filter(|x| *x > 0)
        .collect();
    let base = if parts.is_empty() {
        SymLaurent::one(r)
    } else {
        let len = parts.len();
        let matrix: Vec<Vec<SymLaurent>> = (0..len)
            .map(|i| {
                (0..len)
                    .map(|j| complete_homogeneous(r, parts[i] - i as i32 + j as i32))
                    .collect()
            })
            .collect();
        det(&matrix)
    };
    Ok(base.shift(&vec![twist; r]))
}

/// Schur polynomial by enumerating semistandard tableaux; needs `λ_r ≥ 0`.
pub fn schur_oracle(lambda: &Coweight) -> Result<SymLaurent> {
    if !lambda.is_g_dominant() {
        return Err(domain(format!("{lambda} is not a partition")));
    }
    let r = lambda.len();
    let shape: Vec<usize> = lambda.entries().iter().map(|x| *x as usize).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, len)| (0..*len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|len| vec![0; *len]).collect();
    let mut out = SymLaurent::zero(r);
    fill_tableau(&cells, 0, &mut grid, r, &mut |g| {
        let mut e = vec![0i32; r];
        for row in g {
            for x in row {
                e[*x] += 1;
            }
        }
        out = out.add_ref(&SymLaurent::monomial(e, VLaurent::one()));
    });
    Ok(out)
}

fn fill_tableau(
    cells: &[(usize, usize)],
    k: usize,
    grid: &mut Vec<Vec<usize>>,
    r: usize,
    f: &mut impl FnMut(&[Vec<usize>]),
) {
    if k == cells.len() {
        f(grid);
        return;
    }
    let (i, j) = cells[k];
    let lo_row = if j > 0 { grid[i][j - 1] } else { 0 };
    let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 0 };
    for x in lo_row.max(lo_col)..r {
        grid[i][j] = x;
        fill_tableau(cells, k + 1, grid, r, f);
    }
}

/// `h_0..=h_k` at a rational point.
fn complete_homogeneous_at(point: &[Rational], k: usize) -> Vec<Rational> {
    // h_j(x_1..x_m) = h_j(x_1..x_{m-1}) + x_m h_{j-1}(x_1..x_m)
    let mut h = vec![Rational::zero(); k + 1];
    h[0] = Rational::one();
    for x in point {
        for j in 1..=k {
            let step = x * &h[j - 1];
            h[j] += step;
        }
    }
    h
}

/// The `GL_r` character at a rational point. Zero coordinates are allowed
/// unless the weight has a negative entry.
pub fn schur_at(lambda: &Coweight, point: &[Rational]) -> Result<Rational> {
    if !lambda.is_gl_dominant() {
        return Err(domain(format!("{lambda} is not weakly decreasing")));
    }
    if point.len() != lambda.len() {
        return Err(Error::VariableMismatch {
            left: lambda.len(),
            right: point.len(),
        });
    }
    let Some(&twist) = lambda.entries().last() else {
        return Ok(Rational::one());
    };
    if twist < 0 && point.iter().any(Zero::is_zero) {
        return Err(domain("negative weight evaluated at a zero coordinate"));
    }
    let parts: Vec<i32> = lambda
        .entries()
        .iter()
        .map(|x| x - twist)
        .filter(|x| *x > 0)
        .collect();
    let len = parts.len();
    let top = parts.first().copied().unwrap_or(0) as usize + len;
    let h = complete_homogeneous_at(point, top);
    let hk = |k: i32| {
        if k < 0 {
            Rational::zero()
        } else {
            h[k as usize].clone()
        }
    };
    let value = if len == 0 {
        Rational::one()
    } else {
        det_rational(
            (0..len)
                .map(|i| {
                    (0..len)
                        .map(|j| hk(parts[i] - i as i32 + j as i32))
                        .collect()
                })
                .collect(),
        )
    };
    let det_point: Rational = point.iter().product();
    Ok(value * crate::exactalg::rational_pow(&det_point, twist))
}

fn sp_matrix_sym(n: usize, lambda: &[i32]) -> Vec<Vec<SymLaurent>> {
    (0..n)
        .map(|i| {
            let a = lambda[i] + (n - i) as i32;
            (0..n)
                .map(|j| {
                    let mut up = vec![0; n];
                    up[j] = a;
                    let mut down = vec![0; n];
                    down[j] = -a;
                    SymLaurent::monomial(up, VLaurent::one())
                        - SymLaurent::monomial(down, VLaurent::one())
                })
                .collect()
        })
        .collect()
}

/// `Sp_{2n}` character by the Weyl determinant ratio, divided exactly.
pub fn sp_character(lambda: &Coweight) -> Result<SymLaurent> {
    if !lambda.is_g_dominant() {
        return Err(domain(format!("{lambda} is not a dominant weight for Sp")));
    }
    let n = lambda.len();
    if n == 0 {
        return Ok(SymLaurent::one(0));
    }
    let num = det(&sp_matrix_sym(n, lambda.entries()));
    let den = det(&sp_matrix_sym(n, &vec![0; n]));
    num.div_exact(&den)
}

/// `Sp_{2n}` character at a rational point. The point must be regular:
/// no coordinate equal to `±1` and no two coordinates equal or reciprocal.
pub fn sp_character_at(lambda: &Coweight, beta: &[Rational]) -> Result<Rational> {
    if !lambda.is_g_dominant() {
        return Err(domain(format!("{lambda} is not a dominant weight for Sp")));
    }
    let n = lambda.len();
    if beta.len() != n {
        return Err(Error::VariableMismatch {
            left: n,
            right: beta.len(),
        });
    }
    if beta.iter().any(Zero::is_zero) {
        return Err(domain("Satake parameters must be nonzero"));
    }
    let matrix = |shift: &dyn Fn(usize) -> i32| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                let a = shift(i) + (n - i) as i32;
                beta.iter()
                    .map(|b| {
                        crate::exactalg::rational_pow(b, a) - crate::exactalg::rational_pow(b, -a)
                    })
                    .collect()
            })
            .collect()
    };
    let den = det_rational(matrix(&|_| 0));
    if den.is_zero() {
        return Err(domain("singular point for the Weyl denominator"));
    }
    let num = det_rational(matrix(&|i| lambda.entries()[i]));
    Ok(num / den)
}

/// Weyl dimension formula for `Sp_{2n}`.
pub fn sp_dimension(lambda: &Coweight) -> Result<u64> {
    if !lambda.is_g_dominant() {
        return Err(domain(format!("{lambda} is not a dominant weight for Sp")));
    }
    let n = lambda.len();
    let rho: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
    let l: Vec<i64> = lambda
        .entries()
        .iter()
        .zip(&rho)
        .map(|(x, p)| i64::from(*x) + p)
        .collect();
    let mut num = Rational::one();
    for i in 0..n {
        num *= Rational::new(l[i].into(), rho[i].into());
        for j in i + 1..n {
            num *= Rational::new(
                ((l[i] - l[j]) * (l[i] + l[j])).into(),
                ((rho[i] - rho[j]) * (rho[i] + rho[j])).into(),
            );
        }
    }
    let dim = num.to_integer();
    u64::try_from(dim).map_err(|_| domain("dimension out of range"))
}

/// The three minuscule `SO_4` characters: weights `ε_1`, `ε_1+ε_2`, `ε_1-ε_2`.
pub fn so4_minuscule_character(lambda: &Coweight) -> Result<SymLaurent> {
    let m = |e: [i32; 2]| SymLaurent::monomial(e.to_vec(), VLaurent::one());
    match lambda.entries() {
        [1, 0] => Ok(m([1, 0]) + m([0, 1]) + m([-1, 0]) + m([0, -1])),
        [1, 1] => Ok(m([1, 1]) + m([0, 0]) + m([-1, -1])),
        [1, -1] => Ok(m([1, -1]) + m([0, 0]) + m([-1, 1])),
        _ => Err(Error::Unsupported(format!(
            "{lambda} is not a minuscule SO4 weight"
        ))),
    }
}

/// Substitutes `X_r = 0` into a character, the branching rule from `GL_r`
/// to `GL_{r-1}` used for the Whittaker specialization.
pub fn ginzburg_specialize(a: &SymLaurent) -> Result<SymLaurent> {
    a.specialize_last_zero()
}

/// The `W(D_n)`-orbit of a weight: permutations together with an even
/// number of sign changes.
pub fn h_orbit(lambda: &Coweight) -> BTreeSet<Vec<i32>> {
    let n = lambda.len();
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let e: Vec<i32> = (0..n)
                .map(|i| {
                    let x = lambda.entries()[p[i]];
                    if (mask >> i) & 1 == 1 {
                        -x
                    } else {
                        x
                    }
                })
                .collect();
            out.insert(e);
        }
    });
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Sum of `X^μ` over the distinct weights `μ` in the orbit of `λ`.
pub fn orbit_sum(lambda: &Coweight) -> Result<SymLaurent> {
    if !lambda.is_h_dominant() {
        return Err(domain(format!(
            "{lambda} is not dominant for the even orthogonal group"
        )));
    }
    let mut out = SymLaurent::zero(lambda.len());
    for e in h_orbit(lambda) {
        out = out.add_ref(&SymLaurent::monomial(e, VLaurent::one()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn cw(v: &[i32]) -> Coweight {
        Coweight::new(v.to_vec())
    }

    fn m(e: &[i32]) -> SymLaurent {
        SymLaurent::monomial(e.to_vec(), VLaurent::one())
    }

    #[test]
    fn schur_basics() {
        assert_eq!(schur(&cw(&[0, 0, 0])).unwrap(), SymLaurent::one(3));
        assert_eq!(schur(&cw(&[1, 0])).unwrap(), m(&[1, 0]) + m(&[0, 1]));
        assert_eq!(schur(&cw(&[1, 1, 1])).unwrap(), m(&[1, 1, 1]));
        assert_eq!(schur(&cw(&[2, 1])).unwrap(), m(&[2, 1]) + m(&[1, 2]));
        assert_eq!(schur(&cw(&[0, -1])).unwrap(), m(&[-1, 0]) + m(&[0, -1]));
        assert!(schur(&cw(&[0, 1])).is_err());
    }

    #[test]
    fn tableau_oracle_examples() {
        assert_eq!(schur_oracle(&cw(&[2, 1])).unwrap(), m(&[2, 1]) + m(&[1, 2]));
        assert_eq!(
            schur_oracle(&cw(&[2, 0])).unwrap(),
            m(&[2, 0]) + m(&[1, 1]) + m(&[0, 2])
        );
        assert_eq!(
            schur_oracle(&cw(&[2, 1, 0])).unwrap(),
            schur(&cw(&[2, 1, 0])).unwrap()
        );
    }

    #[test]
    fn numeric_schur_matches_symbolic() {
        let pt = [rat(2, 3), rat(-5, 2), rat(7, 1)];
        for lam in [[0, 0, 0], [2, 1, 0], [3, 3, 1], [1, 0, -2], [-1, -1, -3]] {
            let sym = schur(&cw(&lam)).unwrap().evaluate(&pt, &rat(1, 1)).unwrap();
            assert_eq!(schur_at(&cw(&lam), &pt).unwrap(), sym, "{lam:?}");
        }
    }

    #[test]
    fn symplectic_examples() {
        assert_eq!(sp_character(&cw(&[0, 0])).unwrap(), SymLaurent::one(2));
        assert_eq!(sp_character(&cw(&[1])).unwrap(), m(&[1]) + m(&[-1]));
        let std4 = sp_character(&cw(&[1, 0])).unwrap();
        assert_eq!(std4, m(&[1, 0]) + m(&[0, 1]) + m(&[-1, 0]) + m(&[0, -1]));
        assert_eq!(
            std4.evaluate(&[rat(1, 1), rat(1, 1)], &rat(1, 1)).unwrap(),
            rat(4, 1)
        );
        assert_eq!(
            sp_character_at(&cw(&[1, 0]), &[rat(2, 1), rat(3, 1)]).unwrap(),
            rat(35, 6)
        );
        assert!(sp_character_at(&cw(&[1, 0]), &[rat(1, 1), rat(3, 1)]).is_err());
        assert!(sp_character_at(&cw(&[1, 0]), &[rat(1, 3), rat(3, 1)]).is_err());
    }

    #[test]
    fn symplectic_dimensions() {
        assert_eq!(sp_dimension(&cw(&[1, 0])).unwrap(), 4);
        assert_eq!(sp_dimension(&cw(&[1, 1])).unwrap(), 5);
        assert_eq!(sp_dimension(&cw(&[2, 0])).unwrap(), 10);
        assert_eq!(sp_dimension(&cw(&[1, 0, 0])).unwrap(), 6);
        assert_eq!(sp_dimension(&cw(&[1, 1, 1])).unwrap(), 14);
    }

    #[test]
    fn minuscule_table() {
        let a = so4_minuscule_character(&cw(&[1, 0])).unwrap();
        let b = so4_minuscule_character(&cw(&[1, 1])).unwrap();
        let c = so4_minuscule_character(&cw(&[1, -1])).unwrap();
        assert!(a.is_in_s0() && b.is_in_s0() && c.is_in_s0());
        assert!(matches!(
            so4_minuscule_character(&cw(&[2, 0])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn specialization_examples() {
        let s = schur(&cw(&[1, 0, 0])).unwrap();
        assert_eq!(
            ginzburg_specialize(&s).unwrap(),
            schur(&cw(&[1, 0])).unwrap()
        );
        assert!(ginzburg_specialize(&schur(&cw(&[1, 1, 1])).unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(
            ginzburg_specialize(&SymLaurent::one(3)).unwrap(),
            SymLaurent::one(2)
        );
    }

    #[test]
    fn orbit_sums() {
        assert_eq!(orbit_sum(&cw(&[0, 0])).unwrap(), SymLaurent::one(2));
        assert_eq!(
            orbit_sum(&cw(&[1, 0])).unwrap(),
            m(&[1, 0]) + m(&[0, 1]) + m(&[-1, 0]) + m(&[0, -1])
        );
        // even sign changes only: (1,1) and (-1,-1)
        assert_eq!(orbit_sum(&cw(&[1, 1])).unwrap(), m(&[1, 1]) + m(&[-1, -1]));
        assert_eq!(orbit_sum(&cw(&[2, 1, 1])).unwrap().len(), 12);
        assert!(orbit_sum(&cw(&[2, 1, 1])).unwrap().is_in_s0());
    }
}

use super::coeff::Coeff;
use super::{Rational, VLaurent};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Determinant by cofactor expansion along the first row.
///
/// Division-free, so it works over any commutative ring. Matrices here are
/// at most 4x4, where expansion is cheaper than anything clever.
pub fn det<C: Coeff>(m: &[Vec<C>]) -> C {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(
        m.iter().all(|row| row.len() == n),
        "determinant of a non-square matrix"
    );
    let cols: Vec<usize> = (0..n).collect();
    det_minor(m, 0, &cols)
}

fn det_minor<C: Coeff>(m: &[Vec<C>], row: usize, cols: &[usize]) -> C {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = m[row][cols[0]].zero_like();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.vanishes() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|x| *x != c).collect();
        let term = entry.mul_ref(&det_minor(m, row + 1, &rest));
        acc = if k % 2 == 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    }
    acc
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut sign = false;
    let mut acc = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            sign = !sign;
        }
        let pivot = m[col][col].clone();
        acc *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    if sign {
        -acc
    } else {
        acc
    }
}

/// Rank of a matrix over the fraction field of `Q[v, v^-1]`.
///
/// Fraction-free Bareiss elimination: after each pivot step the working
/// entries are minors of the input, so every division by the previous pivot
/// is exact in the Laurent ring.
pub fn rank_over_fraction_field(rows: &[Vec<VLaurent>]) -> Result<usize> {
    let mut a: Vec<Vec<VLaurent>> = rows.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return Ok(0);
    }
    let ncols = a[0].len();
    if a.iter().any(|r| r.len() != ncols) {
        return Err(crate::error::domain("ragged coefficient matrix"));
    }
    let mut prev = VLaurent::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let pivot = a[rank][col].clone();
        for r in rank + 1..nrows {
            let (top, bottom) = a.split_at_mut(r);
            let (pivot_row, row) = (&top[rank], &mut bottom[0]);
            let lead = row[col].clone();
            for (x, y) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                let num = pivot.mul_ref(x).sub_ref(&lead.mul_ref(y));
                *x = num.div_exact(&prev).ok_or_else(|| {
                    Error::InexactDivision(format!("Bareiss step at column {col} did not divide"))
                })?;
            }
            row[col] = VLaurent::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn vl(c: i64, e: i32) -> VLaurent {
        VLaurent::monomial(rat(c, 1), e)
    }

    #[test]
    fn det_small_matrices() {
        let m = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]];
        assert_eq!(det(&m), rat(-2, 1));
        assert_eq!(det_rational(m), rat(-2, 1));
        let m3 = vec![
            vec![rat(2, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(3, 1), rat(2, 1)],
            vec![rat(1, 1), rat(1, 1), rat(2, 1)],
        ];
        assert_eq!(det(&m3), det_rational(m3.clone()));
        assert_eq!(det(&m3), rat(6, 1));
    }

    #[test]
    fn rank_with_v_dependence() {
        // rows (1, v), (v, v^2) are dependent; (1, v^-1) is not
        let rows = vec![
            vec![vl(1, 0), vl(1, 1)],
            vec![vl(1, 1), vl(1, 2)],
            vec![vl(1, 0), vl(1, -1)],
        ];
        assert_eq!(rank_over_fraction_field(&rows).unwrap(), 2);
        assert_eq!(rank_over_fraction_field(&rows[..2]).unwrap(), 1);
        assert_eq!(rank_over_fraction_field(&[]).unwrap(), 0);
    }

    #[test]
    fn rank_skips_zero_columns() {
        let z = VLaurent::zero();
        let rows = vec![
            vec![z.clone(), vl(1, 0), vl(2, 1)],
            vec![z.clone(), vl(3, 0), vl(1, 0)],
            vec![z.clone(), z.clone(), z.clone()],
        ];
        assert_eq!(rank_over_fraction_field(&rows).unwrap(), 2);
    }
}

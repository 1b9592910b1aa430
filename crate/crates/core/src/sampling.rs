//! Seeded random inputs for exact identity testing: small rationals,
//! Satake parameters, evaluation points and finitely supported data.

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coweights::{enumerate_cone, ConeTag};
use crate::error::Result;
use crate::exactalg::{Rational, VLaurent};
use crate::whittaker::{SatakeParamsSO, WhittakerData};

/// Largest numerator or denominator drawn.
pub const MAX_HEIGHT: i64 = 7;

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for case `index` under `seed`, so parallel runs
    /// draw the same values regardless of scheduling.
    pub fn for_case(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng }
    }

    /// Nonzero rational with numerator and denominator at most [`MAX_HEIGHT`].
    pub fn rational(&mut self) -> Rational {
        loop {
            let num = self.rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT);
            let den = self.rng.gen_range(1..=MAX_HEIGHT);
            if num != 0 {
                return Rational::new(num.into(), den.into());
            }
        }
    }

    /// Nonzero rational other than `±1`.
    pub fn generic_rational(&mut self) -> Rational {
        loop {
            let x = self.rational();
            if !x.abs().is_one() {
                return x;
            }
        }
    }

    /// Pairwise distinct nonzero rationals.
    pub fn point(&mut self, r: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(r);
        while out.len() < r {
            let x = self.rational();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    /// Parameters with `β_i ≠ ±1` and `β_i ≠ β_j^{±1}` for `i ≠ j`, so the
    /// symplectic Weyl denominator does not vanish.
    pub fn satake_params(&mut self, n: usize) -> Result<SatakeParamsSO> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        while out.len() < n {
            let x = self.generic_rational();
            let inv = x.recip();
            if !out.iter().any(|b| *b == x || *b == inv) {
                out.push(x);
            }
        }
        SatakeParamsSO::new(out)
    }

    /// Value for `v` in evaluation mode: positive, not 1.
    pub fn v_value(&mut self) -> Rational {
        self.generic_rational().abs()
    }

    /// Random nonzero element of `Q[v^{±1}]` with at most two terms.
    pub fn vlaurent(&mut self) -> VLaurent {
        loop {
            let mut out = VLaurent::zero();
            for _ in 0..self.rng.gen_range(1..=2) {
                let c = self.rng.gen_range(-5i64..=5);
                let k = self.rng.gen_range(-2..=2);
                out = out + VLaurent::monomial(Rational::from_integer(c.into()), k);
            }
            if !out.is_zero() {
                return out;
            }
        }
    }

    /// Data with up to `terms` nonzero values on dominant coweights of
    /// sup-norm at most `max_norm`. The result is exact (no horizon).
    pub fn whittaker_data(
        &mut self,
        n: usize,
        max_norm: u32,
        terms: usize,
    ) -> Result<WhittakerData> {
        let cone = enumerate_cone(ConeTag::GDominant, n, max_norm);
        let mut d = WhittakerData::zero(n);
        for _ in 0..terms {
            let lambda = cone[self.rng.gen_range(0..cone.len())].clone();
            d.insert(lambda, self.vlaurent())?;
        }
        Ok(d)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;

    #[test]
    fn reproducible() {
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        assert_eq!(a.point(5), b.point(5));
        let mut x = Sampler::for_case(7, 3);
        let mut y = Sampler::for_case(7, 3);
        assert_eq!(x.point(4), y.point(4));
        assert_ne!(
            Sampler::for_case(7, 3).point(4),
            Sampler::for_case(7, 4).point(4)
        );
    }

    #[test]
    fn params_avoid_collisions() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let p = s.satake_params(3).unwrap();
            let b = p.beta();
            for i in 0..3 {
                assert!(!b[i].is_zero() && !b[i].abs().is_one());
                for j in 0..i {
                    assert_ne!(b[i], b[j]);
                    assert_ne!(b[i], b[j].recip());
                }
            }
        }
    }

    #[test]
    fn heights_bounded() {
        let mut s = Sampler::new(9);
        for _ in 0..200 {
            let x = s.rational();
            assert!(x.numer().abs() <= MAX_HEIGHT.into());
            assert!(*x.denom() <= MAX_HEIGHT.into());
        }
    }

    #[test]
    fn data_is_dominant() {
        let mut s = Sampler::new(5);
        let d = s.whittaker_data(3, 2, 6).unwrap();
        assert!(d
            .iter()
            .all(|(k, _)| k.is_g_dominant() && k.sup_norm() <= 2));
        assert!(d.horizon().is_none());
    }
}

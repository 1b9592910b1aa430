//! Shared fixtures for the benchmarks.

use paramodular::sampling::Sampler;
use paramodular::whittaker::{spherical_so_data, SatakeParamsSO, WhittakerData};

/// Seeded spherical data of rank `n` through sup-norm `cutoff`.
pub fn spherical(n: usize, cutoff: u32, seed: u64) -> (SatakeParamsSO, WhittakerData) {
    let beta = Sampler::new(seed)
        .satake_params(n)
        .expect("sampled parameters are regular");
    let d = spherical_so_data(&beta, cutoff).expect("regular parameters");
    (beta, d)
}

/// Seeded finitely supported data.
pub fn random_data(n: usize, seed: u64) -> WhittakerData {
    Sampler::new(seed)
        .whittaker_data(n, 3, 6)
        .expect("dominant support")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let (beta, d) = spherical(2, 4, 1);
        assert_eq!(beta.n(), 2);
        assert_eq!(d.horizon(), Some(4));
        assert!(!random_data(3, 1).is_empty());
    }
}

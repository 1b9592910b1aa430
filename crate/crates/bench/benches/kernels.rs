use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use paramodular::characters::{schur, sp_character};
use paramodular::coweights::Coweight;
use paramodular::oldforms::{basis_images, rank_check, BasisFamily};
use paramodular::rankin::{phi_factor, psi_series, xi, Evaluated, Symbolic};
use paramodular::sampling::Sampler;
use paramodular_bench::{random_data, spherical};

fn characters(c: &mut Criterion) {
    let lam = Coweight::new(vec![3, 2, 1, 0]);
    c.bench_function("schur (3,2,1,0)", |b| {
        b.iter(|| schur(black_box(&lam)).unwrap())
    });
    let lam = Coweight::new(vec![2, 1, 1]);
    c.bench_function("sp_character (2,1,1)", |b| {
        b.iter(|| sp_character(black_box(&lam)).unwrap())
    });
}

fn series(c: &mut Criterion) {
    let d = random_data(3, 7);
    c.bench_function("psi_series n=3 r=3 T=8 symbolic", |b| {
        b.iter(|| psi_series(&Symbolic { r: 3 }, black_box(&d), 3, 8).unwrap())
    });
    let (beta, d) = spherical(3, 8, 7);
    let mut s = Sampler::new(7);
    let ev = Evaluated::new(s.point(3), s.v_value()).unwrap();
    let p = phi_factor(&ev, Some(&beta)).unwrap();
    c.bench_function("xi spherical n=3 r=3 T=8 evaluated", |b| {
        b.iter(|| xi(&ev, black_box(&d), 3, &p, 8, 2).unwrap())
    });
    let (beta, d) = spherical(2, 8, 7);
    let sym = Symbolic { r: 2 };
    let p = phi_factor(&sym, Some(&beta)).unwrap();
    c.bench_function("xi spherical n=2 r=2 T=8 symbolic", |b| {
        b.iter(|| xi(&sym, black_box(&d), 2, &p, 8, 2).unwrap())
    });
}

fn ranks(c: &mut Criterion) {
    let polys: Vec<_> = basis_images(2, 4, BasisFamily::Hecke)
        .unwrap()
        .into_iter()
        .map(|x| x.poly)
        .collect();
    c.bench_function("rank of oldform images n=2 m-a=4", |b| {
        b.iter(|| rank_check(black_box(&polys)).unwrap())
    });
}

criterion_group!(benches, characters, series, ranks);
criterion_main!(benches);

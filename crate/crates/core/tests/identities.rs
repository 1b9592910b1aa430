//! End-to-end identities across modules, each paired with a negative control.

use num_traits::Zero;
use paramodular::coweights::{basis_cardinality, dim_formula, enumerate_cone, ConeTag, Coweight};
use paramodular::oldforms::{
    basis_images, compare_bases, dependence_sides, rank_check, BasisFamily,
};
use paramodular::rankin::{
    fe_check, phi_factor, specialize_last, xi, zeta_series, EpsilonData, Evaluated, Symbolic,
};
use paramodular::sampling::Sampler;
use paramodular::verify::{displayed_quadruples, plan, run_case, Mode, Suite, VerifyConfig};
use paramodular::whittaker::{spherical_so_data, theta_data};
use paramodular::{Rational, SymLaurent, TruncSeries, VLaurent};

#[test]
fn unramified_identity_needs_matching_parameters() {
    let mut s = Sampler::new(3);
    let beta = s.satake_params(2).unwrap();
    let wrong = s.satake_params(2).unwrap();
    let b = Evaluated::new(s.point(2), s.v_value()).unwrap();
    let d = spherical_so_data(&beta, 8).unwrap();
    let one = TruncSeries::one(Rational::zero());
    let good = xi(&b, &d, 2, &phi_factor(&b, Some(&beta)).unwrap(), 8, 2).unwrap();
    assert!(good.series.first_difference(&one, 8).is_none());
    let bad = xi(&b, &d, 2, &phi_factor(&b, Some(&wrong)).unwrap(), 8, 2).unwrap();
    assert!(bad.series.first_difference(&one, 8).is_some());
}

#[test]
fn symbolic_and_evaluated_xi_agree() {
    let mut s = Sampler::new(11);
    let beta = s.satake_params(2).unwrap();
    let d = theta_data(&spherical_so_data(&beta, 8).unwrap()).unwrap();
    let sym = Symbolic { r: 2 };
    let x = xi(&sym, &d, 2, &phi_factor(&sym, Some(&beta)).unwrap(), 8, 2).unwrap();
    let point = s.point(2);
    let v = s.v_value();
    let ev = Evaluated::new(point.clone(), v.clone()).unwrap();
    let y = xi(&ev, &d, 2, &phi_factor(&ev, Some(&beta)).unwrap(), 8, 2).unwrap();
    assert_eq!(x.poly.evaluate(&point, &v).unwrap(), y.poly);
}

#[test]
fn theta_image_specializes_to_rank_one_zeta() {
    let mut s = Sampler::new(5);
    let beta = s.satake_params(2).unwrap();
    let d = spherical_so_data(&beta, 10).unwrap();
    let b = Symbolic { r: 2 };
    let x = xi(
        &b,
        &theta_data(&d).unwrap(),
        2,
        &phi_factor(&b, Some(&beta)).unwrap(),
        10,
        3,
    )
    .unwrap();
    let one = specialize_last(&x).unwrap();
    assert_eq!(one.poly, SymLaurent::monomial(vec![1], VLaurent::q()));
    let z = zeta_series(&d, 2, 6).unwrap();
    let zt = zeta_series(&theta_data(&d).unwrap(), 2, 6).unwrap();
    assert!(zt
        .first_difference(&z.scale(&VLaurent::q()).shift(1), 6)
        .is_none());
}

#[test]
fn functional_equation_rejects_wrong_level() {
    let q = VLaurent::q();
    let plus = (SymLaurent::one(2) + SymLaurent::elementary(2, 1) + SymLaurent::elementary(2, 2))
        .scale(&q);
    let e = EpsilonData::unramified();
    assert!(fe_check(&plus, &plus, e, 1).unwrap());
    assert!(!fe_check(&plus, &plus, e, 2).unwrap());
}

#[test]
fn dimension_counts() {
    for n in 1..=4 {
        for d in 0..=8 {
            assert_eq!(
                basis_cardinality(n, d, 0),
                dim_formula(n, d, 0),
                "n={n} d={d}"
            );
        }
    }
    assert_eq!(dim_formula(2, 2, 0), 4);
    assert_eq!(dim_formula(2, 3, 0), 6);
}

#[test]
fn cone_inclusions() {
    for n in 1..=3 {
        let g = enumerate_cone(ConeTag::GDominant, n, 2);
        let h = enumerate_cone(ConeTag::HDominant, n, 2);
        let gl = enumerate_cone(ConeTag::GlDominant, n, 2);
        assert!(g.iter().all(|x| h.contains(x)));
        assert!(h.iter().all(|x| gl.contains(x)));
        assert!(h.iter().all(|x| h.contains(&x.tilde())));
        assert!(!g.iter().all(|x| g.contains(&x.tilde())));
    }
}

#[test]
fn oldform_ranks() {
    for d in 0..=4 {
        let polys: Vec<_> = basis_images(2, d, BasisFamily::Hecke)
            .unwrap()
            .into_iter()
            .map(|x| x.poly)
            .collect();
        assert!(rank_check(&polys).unwrap().1, "n=2 d={d}");
    }
    for d in [0, 2, 4] {
        let polys: Vec<_> = basis_images(3, d, BasisFamily::Hecke)
            .unwrap()
            .into_iter()
            .map(|x| x.poly)
            .collect();
        assert!(rank_check(&polys).unwrap().1, "n=3 d={d}");
    }
    let polys: Vec<_> = basis_images(2, 3, BasisFamily::HeckeUnsymmetrized)
        .unwrap()
        .into_iter()
        .map(|x| x.poly)
        .collect();
    let (rank, independent) = rank_check(&polys).unwrap();
    assert!(!independent && rank + 1 == polys.len());
}

#[test]
fn dependence_relation_and_perturbation() {
    let (lhs, rhs) = dependence_sides().unwrap();
    assert_eq!(lhs, rhs);
    let bumped = lhs + SymLaurent::monomial(vec![1, 1], VLaurent::one());
    assert_ne!(bumped, rhs);
}

#[test]
fn displayed_lists_match() {
    let c = compare_bases(2).unwrap();
    let (monomial, hecke) = displayed_quadruples();
    let sorted = |v: Vec<SymLaurent>| {
        let mut s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        s.sort();
        s
    };
    assert_eq!(
        sorted(c.monomial.iter().map(|x| x.poly.clone()).collect()),
        sorted(monomial)
    );
    assert_eq!(
        sorted(c.hecke.iter().map(|x| x.poly.clone()).collect()),
        sorted(hecke)
    );
    assert!(!c.sets_equal && c.spans_equal);
    assert_eq!(c.only_monomial.len(), 2);
}

#[test]
fn lambda_with_wrong_rank_is_rejected() {
    let spec = paramodular::oldforms::BasisElementSpec {
        kind: paramodular::oldforms::BasisKind::EtaLambda {
            lambda: Coweight::from([0, 0, 0]),
        },
        m_minus_a: 0,
    };
    assert!(paramodular::oldforms::xi_image(&spec, 2).is_err());
}

#[test]
fn suites_are_deterministic() {
    let mut cfg = VerifyConfig::for_suite(Suite::Unramified);
    cfg.n = Some(2);
    cfg.trials = 3;
    cfg.mode = Mode::Evaluation;
    let run = || {
        plan(&cfg)
            .unwrap()
            .iter()
            .map(|c| run_case(&cfg, c))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
    assert!(run().iter().all(|o| o.passed));
}

#[test]
fn config_validation() {
    let mut cfg = VerifyConfig::for_suite(Suite::Kernel);
    cfg.window = 1;
    assert!(plan(&cfg).is_err());
    cfg.window = 2;
    cfg.trunc = 1;
    assert!(plan(&cfg).is_err());
    cfg.trunc = 8;
    cfg.trials = 0;
    assert!(plan(&cfg).is_err());
    assert!("nope".parse::<Suite>().is_err());
    assert_eq!("gsp4-raising".parse::<Suite>().unwrap(), Suite::Gsp4Raising);
}

use std::sync::Arc;

use gf2nbasis_core::gauss::{build_params, GnbParams};
use gf2nbasis_core::towers::{build, build_kummer3, build_witt4, OracleTower, WittConstant};
use gf2nbasis_core::{Error, GnbElement, TowerElement, TowerForm, TowerParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_block(params: &Arc<GnbParams>, rng: &mut ChaCha8Rng) -> GnbElement {
    let words = (0..params.n().div_ceil(64)).map(|_| rng.gen()).collect();
    GnbElement::from_words(params, words)
}

fn random(t: &TowerParams, rng: &mut ChaCha8Rng) -> TowerElement {
    let blocks = (0..t.form().blocks()).map(|_| random_block(t.base(), rng)).collect();
    t.element(blocks).unwrap()
}

fn cases() -> Vec<(TowerForm, (usize, usize))> {
    vec![
        (TowerForm::As2, (5, 2)),
        (TowerForm::As2, (6, 3)),
        (TowerForm::Witt4, (5, 2)),
        (TowerForm::Witt4, (6, 3)),
        (TowerForm::Kummer3, (6, 3)),
        (TowerForm::Kummer3, (12, 5)),
    ]
}

#[test]
fn fast_path_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for (form, (d, k)) in cases() {
        let t = build(&build_params(d, k).unwrap(), form).unwrap();
        let oracle = OracleTower::new(&t).unwrap();
        for _ in 0..1000 {
            let (x, y) = (random(&t, &mut rng), random(&t, &mut rng));
            let (fast, counts) = t.mul(&x, &y).unwrap();
            assert_eq!(fast, oracle.mul(&x, &y).unwrap(), "{form} over ({d}, {k})");
            match form {
                TowerForm::As2 => {
                    assert_eq!((counts.mults, counts.table_apps, counts.additions), (3, 1, 4))
                }
                TowerForm::Witt4 => {
                    assert!(counts.mults <= 9 && counts.table_apps <= 9 && counts.additions <= 33)
                }
                TowerForm::Kummer3 => {
                    assert_eq!((counts.mults, counts.table_apps, counts.additions), (6, 2, 15))
                }
            }
        }
    }
}

#[test]
fn ring_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (form, (d, k)) in cases() {
        let t = build(&build_params(d, k).unwrap(), form).unwrap();
        for _ in 0..100 {
            let (x, y, z) = (random(&t, &mut rng), random(&t, &mut rng), random(&t, &mut rng));
            let mul = |a: &TowerElement, b: &TowerElement| t.mul(a, b).unwrap().0;
            assert_eq!(mul(&x, &y), mul(&y, &x));
            assert_eq!(mul(&x, &y.add(&z)), mul(&x, &y).add(&mul(&x, &z)));
            assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
            assert_eq!(mul(&t.one(), &x), x);
        }
    }
}

#[test]
fn defining_relations() {
    for (form, (d, k)) in cases() {
        let t = build(&build_params(d, k).unwrap(), form).unwrap();
        let g = t.generator();
        let alpha = t.monomial(0, t.alpha());
        let gg = t.mul(&g, &g).unwrap().0;
        match form {
            TowerForm::As2 => assert_eq!(gg, g.add(&alpha)),
            TowerForm::Witt4 => {
                assert_eq!(gg, g.add(&t.witt_c2().unwrap()));
                let a = t.witt_a();
                assert_eq!(t.mul(&a, &a).unwrap().0, a.add(&alpha));
            }
            TowerForm::Kummer3 => assert_eq!(t.mul(&gg, &g).unwrap().0, alpha),
        }
    }
}

#[test]
fn as2_squaring_two_ways() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let t = build(&build_params(5, 2).unwrap(), TowerForm::As2).unwrap();
    for _ in 0..200 {
        let x = random(&t, &mut rng);
        let [x0, x1] = [&x.blocks()[0], &x.blocks()[1]];
        let s1 = x1.frobenius(1);
        let direct = t
            .element(vec![x0.frobenius(1).add(&t.table().apply(&s1)), s1])
            .unwrap();
        assert_eq!(t.mul(&x, &x).unwrap().0, direct);
    }
}

#[test]
fn witt_constants_by_parity() {
    for (d, k, expect) in [
        (5, 2, WittConstant::A),
        (7, 4, WittConstant::A),
        (6, 3, WittConstant::AlphaA),
        (250, 9, WittConstant::AlphaA),
        (254, 2, WittConstant::AlphaA),
    ] {
        let t = build_witt4(&build_params(d, k).unwrap()).unwrap();
        assert_eq!(t.witt_constant(), Some(expect), "({d}, {k})");
    }
}

#[test]
fn kummer_eligibility() {
    assert_eq!(
        build_kummer3(&build_params(5, 2).unwrap()).unwrap_err(),
        Error::KummerUnavailable { d: 5 }
    );
    assert!(build_kummer3(&build_params(364, 3).unwrap()).is_ok());
    // 3 | 2^358 - 1, yet the type-10 period is a cube there
    assert_eq!(
        build_kummer3(&build_params(358, 10).unwrap()).unwrap_err(),
        Error::CubeElement
    );
}

#[test]
fn oracle_conversion_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for (d, k) in [(5, 2), (6, 3), (12, 5), (30, 2)] {
        let base = build_params(d, k).unwrap();
        let t = build(&base, TowerForm::As2).unwrap();
        let o = OracleTower::new(&t).unwrap();
        assert!(o.modulus().is_irreducible().unwrap());
        // alpha maps to z
        assert_eq!(o.to_poly(&t.alpha()), gf2nbasis_core::Poly::x());
        for _ in 0..100 {
            let x = random_block(&base, &mut rng);
            assert_eq!(o.to_gnb(&o.to_poly(&x)).unwrap(), x);
        }
    }
}

#[test]
fn larger_bases_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for (form, (d, k)) in [
        (TowerForm::As2, (254, 2)),
        (TowerForm::Witt4, (250, 9)),
        (TowerForm::Kummer3, (364, 3)),
    ] {
        let t = build(&build_params(d, k).unwrap(), form).unwrap();
        let oracle = OracleTower::new(&t).unwrap();
        for _ in 0..5 {
            let (x, y) = (random(&t, &mut rng), random(&t, &mut rng));
            assert_eq!(t.mul(&x, &y).unwrap().0, oracle.mul(&x, &y).unwrap(), "{form} ({d}, {k})");
        }
    }
}

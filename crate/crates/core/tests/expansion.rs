use heisenberg_core::curves::{integrate_curve, verify_radial_identities, ThetaProfile};
use heisenberg_core::group::Point;
use heisenberg_core::series::{
    curve_series, distance_sq_series, integer, rational, xy_sq_series, PowerSeries,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-12i64..=12)),
        BigInt::from(rng.random_range(1i64..=7)),
    )
}

/// Polynomial heading coefficients from the derivative jet `θ⁽ⁱ⁾(0)`.
fn from_jet(jet: &[BigRational]) -> Vec<BigRational> {
    let mut fact = BigInt::from(1);
    jet.iter()
        .enumerate()
        .map(|(i, d)| {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            d / BigRational::from_integer(fact.clone())
        })
        .collect()
}

#[test]
fn sixth_order_coefficient_on_random_jets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let jet: Vec<BigRational> = (0..5).map(|_| random_rational(&mut rng)).collect();
        let d2 = distance_sq_series(&from_jet(&jet), 8).unwrap();
        assert_eq!(d2.coeff(2), &integer(1));
        for i in [0, 1, 3, 4, 5] {
            assert!(d2.coeff(i).is_zero(), "t^{i} for jet {jet:?}");
        }
        let b = &jet[2];
        assert_eq!(d2.coeff(6), &(-(b * b) / integer(720)));
    }
}

#[test]
fn coordinate_series_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let jet: Vec<BigRational> = (0..4).map(|_| random_rational(&mut rng)).collect();
        let (d1, d2, d3) = (&jet[1], &jet[2], &jet[3]);
        let cs = curve_series(&from_jet(&jet), 7).unwrap();
        assert!(cs.z.coeff(2).is_zero());
        assert_eq!(cs.z.coeff(3), &(d1 / integer(12)));
        assert_eq!(cs.z.coeff(4), &(d2 / integer(24)));
        assert_eq!(
            cs.z.coeff(5),
            &(d3 / integer(80) - d1 * d1 * d1 / integer(240))
        );

        let r2 = xy_sq_series(&from_jet(&jet), 7).unwrap();
        assert_eq!(r2.coeff(2), &integer(1));
        assert!(r2.coeff(3).is_zero());
        assert_eq!(r2.coeff(4), &(-(d1 * d1) / integer(12)));
        assert_eq!(r2.coeff(5), &(-(d1 * d2) / integer(12)));
        let six = (integer(-18) * d1 * d3 - integer(16) * d2 * d2 + integer(2) * d1 * d1 * d1 * d1)
            / integer(720);
        assert_eq!(r2.coeff(6), &six);
    }
}

#[test]
fn geodesic_jets_give_exact_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t2 = PowerSeries::<BigRational>::variable(8).pow(2);
    for _ in 0..10 {
        let theta = vec![random_rational(&mut rng), random_rational(&mut rng)];
        assert_eq!(distance_sq_series(&theta, 8).unwrap(), t2);
    }
}

#[test]
fn series_agree_with_integrated_curve() {
    let theta = [
        rational(1, 3),
        rational(1, 2),
        rational(-1, 4),
        rational(1, 5),
    ];
    let cs = curve_series(&theta, 14).unwrap();
    let profile = ThetaProfile::new(vec![1.0 / 3.0, 0.5, -0.25, 0.2]);
    let t = 0.2;
    let end = integrate_curve(&profile, t, 1e-3, Point::origin())
        .unwrap()
        .end()
        .point;
    let eval = |c: &[f64]| c.iter().rev().fold(0.0, |acc, v| acc * t + v);
    let theta0 = 1.0 / 3.0;
    let x: Vec<f64> = cs.x.coeffs().iter().map(|c| c.eval(theta0)).collect();
    let y: Vec<f64> = cs.y.coeffs().iter().map(|c| c.eval(theta0)).collect();
    // truncated after t¹⁴
    assert!((eval(&x) - end.x).abs() < 1e-12);
    assert!((eval(&y) - end.y).abs() < 1e-12);
    assert!((eval(&cs.z.to_f64()) - end.z).abs() < 1e-12);
}

#[test]
fn radial_identities_hold_on_integrated_curves() {
    for coeffs in [vec![0.0, 1.0, 0.5], vec![0.3, -0.8, 0.2, 0.4]] {
        let profile = ThetaProfile::new(coeffs);
        let traj = integrate_curve(&profile, 1.0, 1e-3, Point::origin()).unwrap();
        let report = verify_radial_identities(&traj, &profile, (0.1, 1.0), 1e-8).unwrap();
        assert!(report.pass, "{report:?}");
    }
}

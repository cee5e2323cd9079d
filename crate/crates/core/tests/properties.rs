use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sig_core::arrangements::{
    certify_impossible, composition_word, count_adjacencies, enumerate_compositions,
    evaluate_witness, min_sum_general, min_sum_two_class, PointClass,
};
use sig_core::bounds::{
    capacity_bound, pair_angle_bound, phi, radial_project, Annulus, Params, PolarPoint, Weight,
    CERT_EPSILON, FULL_TURN,
};

const P: f64 = 1.409;

fn params() -> Params {
    Params::new(P).unwrap()
}

/// A valid `(d, r, R)` triple: `0 <= R - d <= r <= R`.
fn valid_triple() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.2f64..4.0, 0.01f64..1.0, 0.0f64..1.0).prop_map(|(big_r, dfrac, rfrac)| {
        let d = dfrac * big_r;
        let r = (big_r - d) + rfrac * d;
        (d, r.max(1e-3), big_r)
    })
}

#[test]
fn phi_branches_agree_on_a_circle() {
    for i in 1..=200 {
        let big_r = 0.05 * i as f64;
        for j in 1..=20 {
            let d = big_r * j as f64 / 20.0;
            let cos_branch = ((2.0 * big_r * big_r - d * d) / (2.0 * big_r * big_r))
                .acos()
                .to_degrees();
            let chord_branch = (2.0 * (d / (2.0 * big_r)).asin()).to_degrees();
            assert!((cos_branch - chord_branch).abs() < 1e-9, "R={big_r} d={d}");
            let v = phi(d, big_r, big_r).unwrap().0;
            assert!((v - chord_branch).abs() < 1e-9);
        }
    }
}

#[test]
fn phi_monotone_on_grid() {
    let n = 40;
    let mut checked = 0;
    for i in 1..=n {
        let big_r = 0.5 + 3.0 * i as f64 / n as f64;
        for j in 1..=n {
            let d = big_r * j as f64 / n as f64;
            for k in 0..=n {
                let r = (big_r - d) + d * k as f64 / n as f64;
                if r <= 0.0 {
                    continue;
                }
                let base = phi(d, r, big_r).unwrap().0;
                // stay clear of the collinear edge R = r + d, where phi has infinite slope
                let big_r2 = (big_r + 0.05).min(r + d - 1e-6);
                if big_r2 > big_r {
                    assert!(
                        phi(d, r, big_r2).unwrap().0 <= base + 1e-9,
                        "R: {d} {r} {big_r}"
                    );
                }
                let d2 = (d + 0.05).min(big_r);
                assert!(
                    phi(d2, r, big_r).unwrap().0 >= base - 1e-9,
                    "d: {d} {r} {big_r}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
}

proptest! {
    #[test]
    fn phi_nonincreasing_in_outer_radius((d, r, big_r) in valid_triple(), t in 0.0f64..1.0) {
        let big_r2 = big_r + t * (r + d - big_r).max(0.0);
        prop_assert!(phi(d, r, big_r2).unwrap().0 <= phi(d, r, big_r).unwrap().0 + 1e-9);
    }

    #[test]
    fn phi_nondecreasing_in_distance((d, r, big_r) in valid_triple(), t in 0.0f64..1.0) {
        let d2 = d + t * (big_r - d);
        prop_assert!(phi(d2, r, big_r).unwrap().0 >= phi(d, r, big_r).unwrap().0 - 1e-9);
    }

    #[test]
    fn phi_nondecreasing_in_inner_radius((d, r, big_r) in valid_triple(), t in 0.0f64..1.0) {
        let r2 = r + t * (big_r - r);
        prop_assert!(phi(d, r2, big_r).unwrap().0 >= phi(d, r, big_r).unwrap().0 - 1e-9);
    }

    #[test]
    fn phi_bounds_actual_angles(
        (d, r, big_r) in valid_triple(),
        a in 0.0f64..1.0,
        b in 0.0f64..1.0,
        theta in 0.0f64..180.0,
    ) {
        let ra = r + a * (big_r - r);
        let rb = r + b * (big_r - r);
        let x = PolarPoint::new(ra, 0.0);
        let y = PolarPoint::new(rb, theta);
        if x.distance(&y) >= d {
            prop_assert!(theta >= phi(d, r, big_r).unwrap().0 - 1e-7);
        }
    }

    #[test]
    fn projection_keeps_angle(rho in 0.0f64..10.0, theta in -3.0f64..3.0, radius in 1.0001f64..5.0) {
        let x = PolarPoint::new(rho, theta);
        let y = radial_project(x, radius).unwrap();
        prop_assert_eq!(y.theta(), x.theta());
        prop_assert!(y.rho() <= x.rho());
        prop_assert!(y.rho() <= radius.max(x.rho()));
    }
}

/// Centers and radii of two circles meeting `rho = 1` that do not contain
/// each other's centers, with `X` outside `rho <= R` (part a) or in
/// `1 <= rho <= R` (part b) and `Y` outside.
fn projection_sample(rng: &mut ChaCha8Rng, part_b: bool) -> (f64, PolarPoint, PolarPoint) {
    loop {
        let big_r = rng.gen_range(1.001..3.0);
        let x = if part_b {
            rng.gen_range(1.0..=big_r)
        } else {
            rng.gen_range(big_r..big_r + 4.0)
        };
        let y = rng.gen_range(big_r..big_r + 4.0);
        let rx = rng.gen_range(x - 1.0..=x + 1.0);
        let ry = rng.gen_range(y - 1.0..=y + 1.0);
        let px = PolarPoint::new(x, rng.gen_range(0.0..360.0));
        let py = PolarPoint::new(y, rng.gen_range(0.0..360.0));
        if px.distance(&py) >= rx.max(ry) {
            return (big_r, px, py);
        }
    }
}

#[test]
fn radial_projection_lemma_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100_000 {
        let part_b = i % 2 == 1;
        let (big_r, x, y) = projection_sample(&mut rng, part_b);
        let a = if part_b {
            x
        } else {
            radial_project(x, big_r).unwrap()
        };
        let b = radial_project(y, big_r).unwrap();
        assert!(
            a.distance(&b) >= big_r - 1.0 - 1e-9,
            "sample {i}: R={big_r} {x:?} {y:?}"
        );
    }
}

#[test]
fn capacity_brackets_full_turn() {
    let p = params();
    for (w, lo, hi) in [
        (Weight::One, P, 1.0 + P),
        (Weight::Half, 1.23, 1.0 + P),
        (Weight::One, P, 1.88),
        (Weight::Half, 1.0, 1.0 + P),
        (Weight::Half, 1.2, 1.0 + P),
        (Weight::Half, 1.0, 1.25),
    ] {
        let key = (w, Annulus::new(lo, hi).unwrap());
        let bound = pair_angle_bound(key, key, &p).unwrap().0;
        let k = capacity_bound(key, &p).unwrap() as f64;
        assert!(k * bound <= FULL_TURN + CERT_EPSILON, "{w:?} [{lo},{hi}]");
        assert!(
            (k + 1.0) * bound > FULL_TURN + CERT_EPSILON,
            "{w:?} [{lo},{hi}]"
        );
    }
}

fn two_classes(m: u32, h: u32, one_lo: f64, half_lo: f64) -> (PointClass, PointClass) {
    (
        PointClass::new(
            "one",
            Weight::One,
            Annulus::new(one_lo, 1.0 + P).unwrap(),
            m,
        ),
        PointClass::new(
            "half",
            Weight::Half,
            Annulus::new(half_lo, 1.0 + P).unwrap(),
            h,
        ),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_exhaustive(
        m in 0u32..=6,
        h in 0u32..=8,
        one_lo in P..1.8,
        half_lo in 1.0f64..1.6,
    ) {
        prop_assume!(m + h >= 2);
        let (ones, halves) = two_classes(m, h, one_lo, half_lo);
        let p = params();
        let closed = min_sum_two_class(&ones, &halves, &p).unwrap();
        let general = min_sum_general(&[ones.clone(), halves.clone()], &p).unwrap();
        prop_assert!((closed.min_sum.0 - general.min_sum.0).abs() < 1e-9);
        let classes = [ones, halves];
        prop_assert!((evaluate_witness(&closed.witness, &classes, &p).unwrap().0 - closed.min_sum.0).abs() < 1e-9);
        prop_assert!((evaluate_witness(&general.witness, &classes, &p).unwrap().0 - general.min_sum.0).abs() < 1e-9);
    }

    #[test]
    fn minimizing_block_count_is_extreme(m in 1u32..=10, h in 1u32..=16, one_lo in P..1.8, half_lo in 1.0f64..1.6) {
        let (ones, halves) = two_classes(m, h, one_lo, half_lo);
        let cert = min_sum_two_class(&ones, &halves, &params()).unwrap();
        let c = cert.composition.unwrap();
        let k = c.blocks();
        let sums: Vec<f64> = enumerate_compositions(m, h).unwrap().iter().map(|c| {
            let w = composition_word(c).unwrap();
            let labels: Vec<String> = w.iter().map(|w| match w {
                Weight::One => "one".to_string(),
                Weight::Half => "half".to_string(),
            }).collect();
            evaluate_witness(&labels, &[ones.clone(), halves.clone()], &params()).unwrap().0
        }).collect();
        // affine in k: consecutive differences are constant
        for w in sums.windows(3) {
            prop_assert!(((w[1] - w[0]) - (w[2] - w[1])).abs() < 1e-9);
        }
        prop_assert!(k == 0 || k == 1 || k == m.min(h), "k = {}", k);
    }

    #[test]
    fn compositions_are_realizable(m in 0u32..=14, h in 0u32..=20) {
        prop_assume!(m + h >= 2);
        for c in enumerate_compositions(m, h).unwrap() {
            let word = composition_word(&c).unwrap();
            prop_assert_eq!(word.iter().filter(|w| **w == Weight::One).count() as u32, m);
            prop_assert_eq!(word.len() as u32, m + h);
            prop_assert_eq!(count_adjacencies(&word), c);
        }
    }
}

fn multi_class() -> impl Strategy<Value = Vec<PointClass>> {
    prop::collection::vec((any::<bool>(), 0.0f64..1.0, 1u32..=3), 2..=4).prop_map(|specs| {
        specs
            .into_iter()
            .enumerate()
            .map(|(i, (one, t, n))| {
                let (w, lo) = if one {
                    (Weight::One, P + t * 0.4)
                } else {
                    (Weight::Half, 1.0 + t * 0.6)
                };
                PointClass::new(format!("c{i}"), w, Annulus::new(lo, 1.0 + P).unwrap(), n)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn general_minimum_invariant_under_reordering(classes in multi_class(), shift in 0usize..4) {
        let p = params();
        let base = min_sum_general(&classes, &p).unwrap();

        let mut rotated = classes.clone();
        let len = rotated.len();
        rotated.rotate_left(shift % len);
        prop_assert!((min_sum_general(&rotated, &p).unwrap().min_sum.0 - base.min_sum.0).abs() < 1e-9);

        let mut reflected = classes.clone();
        reflected.reverse();
        prop_assert!((min_sum_general(&reflected, &p).unwrap().min_sum.0 - base.min_sum.0).abs() < 1e-9);

        let relabeled: Vec<PointClass> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| PointClass::new(format!("z{}", len - i), c.weight, c.annulus, c.count))
            .collect();
        prop_assert!((min_sum_general(&relabeled, &p).unwrap().min_sum.0 - base.min_sum.0).abs() < 1e-9);

        prop_assert!((evaluate_witness(&base.witness, &classes, &p).unwrap().0 - base.min_sum.0).abs() < 1e-9);

        // the reversed witness is the same necklace read backwards
        let mut back = base.witness.clone();
        back.reverse();
        prop_assert!((evaluate_witness(&back, &classes, &p).unwrap().0 - base.min_sum.0).abs() < 1e-9);
    }

    #[test]
    fn adding_a_point_keeps_impossibility_under_triangle_inequality(classes in multi_class(), which in 0usize..4) {
        let p = params();
        prop_assume!(pair_bounds_are_metric(&classes, &p));
        let before = certify_impossible(&classes, &p).unwrap();
        let mut more = classes.clone();
        let i = which % more.len();
        more[i].count += 1;
        let after = certify_impossible(&more, &p).unwrap();
        prop_assert!(after.certificate().min_sum.0 >= before.certificate().min_sum.0 - 1e-9);
        if before.is_verified() {
            prop_assert!(after.is_verified());
        }
    }
}

/// `B(a, c) <= B(a, b) + B(b, c)` for all classes, so dropping a point from
/// an optimal arrangement never raises the sum.
fn pair_bounds_are_metric(classes: &[PointClass], p: &Params) -> bool {
    let b = |x: &PointClass, y: &PointClass| {
        pair_angle_bound((x.weight, x.annulus), (y.weight, y.annulus), p)
            .unwrap()
            .0
    };
    classes.iter().all(|a| {
        classes
            .iter()
            .all(|m| classes.iter().all(|c| b(a, c) <= b(a, m) + b(m, c) + 1e-9))
    })
}

#[test]
fn adding_a_point_can_lower_the_relaxed_minimum() {
    // Phi_p(1, 1 + p) vanishes, so a weight-1 point wedged between two
    // half-weight points in [1, 1 + p] costs nothing and hides their q-gap.
    let p = params();
    let (o0, h0) = two_classes(0, 2, P, 1.0);
    let (o1, h1) = two_classes(1, 2, P, 1.0);
    let without = min_sum_general(&[o0, h0], &p).unwrap().min_sum.0;
    let with = min_sum_general(&[o1, h1], &p).unwrap().min_sum.0;
    assert!(with < without, "{with} vs {without}");
}

#[test]
fn adding_a_point_to_one_class_never_lowers_the_minimum() {
    let p = params();
    for (w, lo, hi) in [
        (Weight::One, P, 1.0 + P),
        (Weight::Half, 1.0, 1.0 + P),
        (Weight::Half, 1.2, 1.0 + P),
    ] {
        let a = Annulus::new(lo, hi).unwrap();
        let mut prev = 0.0;
        for n in 2..=20u32 {
            let cls = [PointClass::new("c", w, a, n)];
            let s = min_sum_general(&cls, &p).unwrap().min_sum.0;
            assert!(s >= prev - 1e-9);
            prev = s;
        }
    }
}

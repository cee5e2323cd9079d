//! Brute-force oracle: every distinct permutation of the point multiset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sig_core::arrangements::{certify_impossible, min_sum_general, PointClass};
use sig_core::bounds::{pair_angle_bound, Annulus, Params, Weight};

const P: f64 = 1.409;

fn params() -> Params {
    Params::new(P).unwrap()
}

/// Lexicographic successor; `false` once `v` is the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Minimum circular sum and the number of permutations visited.
fn brute_force(classes: &[PointClass], params: &Params) -> (f64, usize) {
    let k = classes.len();
    let mut bound = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let a = (classes[i].weight, classes[i].annulus);
            let b = (classes[j].weight, classes[j].annulus);
            bound[i][j] = pair_angle_bound(a, b, params).unwrap().0;
        }
    }
    let mut word: Vec<usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat(i).take(c.count as usize))
        .collect();
    let n = word.len();
    let mut best = f64::INFINITY;
    let mut visited = 0;
    loop {
        visited += 1;
        let s: f64 = (0..n).map(|i| bound[word[i]][word[(i + 1) % n]]).sum();
        best = best.min(s);
        if !next_permutation(&mut word) {
            break;
        }
    }
    (best, visited)
}

fn half(label: &str, hi: f64, n: u32) -> PointClass {
    PointClass::new(label, Weight::Half, Annulus::new(1.0, hi).unwrap(), n)
}

#[test]
fn colored_ten_halves_match_brute_force() {
    let classes = [
        half("red", 1.1072, 6),
        half("blue-1.1138", 1.1138, 1),
        half("blue-1.1254", 1.1254, 1),
        half("blue-1.1513", 1.1513, 1),
        half("blue-1.2571", 1.2571, 1),
    ];
    let p = params();
    let (oracle, visited) = brute_force(&classes, &p);
    assert_eq!(visited, 5040);
    let cert = min_sum_general(&classes, &p).unwrap();
    assert!(
        (cert.min_sum.0 - oracle).abs() < 1e-9,
        "{} vs {oracle}",
        cert.min_sum
    );
    assert!((cert.min_sum.0 - 360.0047).abs() < 0.02);
    assert!(certify_impossible(&classes, &p).unwrap().is_verified());
}

#[test]
fn random_multi_class_instances_match_brute_force() {
    let p = params();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..150 {
        let k = rng.gen_range(1..=4);
        let mut classes = Vec::new();
        let mut total = 0;
        for i in 0..k {
            let n = rng.gen_range(1..=3);
            total += n;
            let cls = if rng.gen_bool(0.5) {
                let lo = rng.gen_range(P..1.9);
                PointClass::new(
                    format!("o{i}"),
                    Weight::One,
                    Annulus::new(lo, 1.0 + P).unwrap(),
                    n,
                )
            } else {
                let lo = rng.gen_range(1.0..1.5);
                let hi = rng.gen_range(lo..=1.0 + P);
                PointClass::new(
                    format!("h{i}"),
                    Weight::Half,
                    Annulus::new(lo, hi).unwrap(),
                    n,
                )
            };
            classes.push(cls);
        }
        if total < 2 {
            continue;
        }
        let (oracle, _) = brute_force(&classes, &p);
        let cert = min_sum_general(&classes, &p).unwrap();
        assert!(
            (cert.min_sum.0 - oracle).abs() < 1e-9,
            "case {case}: {} vs {oracle}",
            cert.min_sum
        );
    }
}

#[test]
fn permutation_count_matches_multinomial() {
    let classes = [half("a", 1.2, 2), half("b", 1.3, 2), half("c", 1.4, 3)];
    let (_, visited) = brute_force(&classes, &params());
    assert_eq!(visited, 210);
}

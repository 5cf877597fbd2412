#![allow(dead_code)]

use gentime::geometry::{general_blowup, hirzebruch_toric, torus_fixed_b3, ProjectiveBundleSpace, Space, WeightedProjectiveSpace};
use gentime::lattice::DivisorClass;
use gentime::presets;
use gentime::tilting::Collection;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Monomials of weighted degree `k` by enumerating exponent vectors.
pub fn weighted_monomials(weights: &[u32], k: i64) -> u64 {
    fn go(w: &[u32], k: i64) -> u64 {
        match w.split_first() {
            None => u64::from(k == 0),
            Some((&a, rest)) => (0..=k.max(-1) / i64::from(a)).map(|e| go(rest, k - e * i64::from(a))).sum(),
        }
    }
    if k < 0 {
        0
    } else {
        go(weights, k)
    }
}

/// `h^i(P^n, O(d))` from the binomial formulas.
pub fn h_pn(n: i64, d: i64, i: i64) -> i64 {
    if i == 0 {
        binom(d + n, n)
    } else if i == n {
        binom(-d - 1, n)
    } else {
        0
    }
}

/// `h^i` of `aS + bH` on `P(O + O(m))` over `P^n` for `a >= -1`, as a sum over
/// the symmetric power decomposition of the pushforward.
pub fn h_bundle_pushforward(m: i64, n: i64, a: i64, b: i64, i: i64) -> i64 {
    (0..=a).map(|j| h_pn(n, b - j * m, i)).sum()
}

/// Intersection number on the blow-up of `P^2` in the `H, E_1, ...` basis.
pub fn blowup_dot(x: &[i64], y: &[i64]) -> i64 {
    x[0] * y[0] - x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<i64>()
}

pub fn blowup_canonical(t: usize) -> Vec<i64> {
    let mut k = vec![1; t + 1];
    k[0] = -3;
    k
}

pub fn rr_blowup(d: &[i64]) -> i64 {
    let k = blowup_canonical(d.len() - 1);
    1 + (blowup_dot(d, d) - blowup_dot(d, &k)) / 2
}

/// A random space small enough for exhaustive Ext tables.
pub fn random_space(r: &mut ChaCha8Rng) -> Space {
    match r.gen_range(0..5) {
        0 => Space::Blowup(general_blowup(r.gen_range(0..=6))),
        1 => Space::ProjBundle(ProjectiveBundleSpace::new(r.gen_range(0..=5), r.gen_range(1..=2)).unwrap()),
        2 => {
            let weights = [vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 3], vec![1, 1, 4], vec![1, 1, 1, 2], vec![2, 3]];
            Space::Weighted(WeightedProjectiveSpace::new(weights.choose(r).unwrap().clone()).unwrap())
        }
        3 => Space::Toric(hirzebruch_toric(r.gen_range(0..=4))),
        _ => Space::Toric(torus_fixed_b3()),
    }
}

pub fn random_class(r: &mut ChaCha8Rng, space: &Space, span: i64) -> DivisorClass {
    DivisorClass((0..space.class_rank()).map(|_| r.gen_range(-span..=span)).collect())
}

pub fn random_line_bundles(r: &mut ChaCha8Rng) -> Collection {
    let space = random_space(r);
    let len = r.gen_range(1..=5);
    let classes = (0..len)
        .map(|_| {
            let mut d = random_class(r, &space, 2);
            // Projective-bundle collections keep S-degrees in {0, 1}.
            if let Space::ProjBundle(_) = space {
                d.0[0] = d.0[0].rem_euclid(2);
            }
            d
        })
        .collect();
    Collection::line_bundles(space, classes).unwrap()
}

/// A strong exceptional collection drawn from the built-in families, twisted by
/// a random line bundle.
pub fn random_strong_exceptional(r: &mut ChaCha8Rng) -> Collection {
    let base = match r.gen_range(0..6) {
        0 => presets::t1(presets::blowup_for(r.gen_range(0..=5), false)).unwrap(),
        1 => presets::t2(presets::blowup_for(r.gen_range(1..=5), false)).unwrap(),
        2 => presets::hirzebruch(r.gen_range(0..=6), r.gen_range(1..=3)).unwrap(),
        3 => {
            let weights = [vec![1, 1, 4], vec![1, 2, 3], vec![1, 1, 1, 5], vec![1, 1, 1]];
            presets::weighted_full(weights.choose(r).unwrap()).unwrap()
        }
        4 => presets::del_pezzo().unwrap(),
        _ => presets::rank7_toric().unwrap(),
    };
    let twist = random_class(r, base.space(), 3);
    base.twisted(&twist).unwrap()
}

pub fn random_permutation(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    p
}

mod common;

use common::Rng;
use ryde_core::field::{BaseField, Field, Gf256m};
use ryde_core::shamir::{eval_share, expand, point_of, reconstruct, share_vec, Point};
use std::collections::HashSet;

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

#[test]
fn reconstruct_and_expand_every_subset_n8_l3() {
    let f = Gf256m::new(11).unwrap();
    let mut rng = Rng::new(10);
    let secret = f.sample_vec(3, &mut rng);
    let shares = share_vec(&f, &secret, 3, 8, &mut rng).unwrap();
    let all_pts: Vec<Point> = (1..=8).map(|i| point_of(BaseField::Gf256, i).unwrap()).collect();
    let sets = subsets(8, 4);
    assert_eq!(sets.len(), 70);
    for set in sets {
        let pts: Vec<Point> = set.iter().map(|&i| all_pts[i - 1]).collect();
        for (c, s) in secret.iter().enumerate() {
            let sh: Vec<_> = set.iter().map(|&i| shares[i - 1][c]).collect();
            assert_eq!(reconstruct(&f, 3, &pts, &sh).unwrap(), *s);
            let full = expand(&f, 3, &pts, &sh, &all_pts).unwrap();
            assert_eq!(full, shares.iter().map(|p| p[c]).collect::<Vec<_>>());
        }
    }
}

#[test]
fn party_at_infinity_takes_part_in_reconstruction() {
    let f = Gf256m::new(11).unwrap();
    let mut rng = Rng::new(11);
    let secret = f.sample_vec(2, &mut rng);
    let shares = share_vec(&f, &secret, 3, 256, &mut rng).unwrap();
    for set in [[1, 2, 3, 256], [17, 100, 255, 256], [5, 6, 7, 8]] {
        let pts: Vec<Point> = set.iter().map(|&i| point_of(BaseField::Gf256, i).unwrap()).collect();
        for (c, s) in secret.iter().enumerate() {
            let sh: Vec<_> = set.iter().map(|&i| shares[i - 1][c]).collect();
            assert_eq!(reconstruct(&f, 3, &pts, &sh).unwrap(), *s);
        }
    }
}

#[test]
fn frobenius_commutes_with_reconstruction() {
    let f = Gf256m::new(13).unwrap();
    let mut rng = Rng::new(12);
    for _ in 0..50 {
        let secret = f.sample_vec(1, &mut rng);
        let shares = share_vec(&f, &secret, 3, 256, &mut rng).unwrap();
        let set: Vec<usize> = {
            let mut s: Vec<usize> = (0..4).map(|_| 1 + rng.below(256)).collect();
            s.sort();
            s.dedup();
            s
        };
        if set.len() != 4 {
            continue;
        }
        let pts: Vec<Point> = set.iter().map(|&i| point_of(BaseField::Gf256, i).unwrap()).collect();
        let frob: Vec<_> = set.iter().map(|&i| f.frobenius(&shares[i - 1][0], 1)).collect();
        assert_eq!(reconstruct(&f, 3, &pts, &frob).unwrap(), f.frobenius(&secret[0], 1));
    }
}

#[test]
fn wrong_share_counts_and_duplicates_are_rejected() {
    let f = Gf256m::new(11).unwrap();
    let s = [f.one(), f.one(), f.one()];
    let pts = [Point::Finite(1), Point::Finite(2), Point::Finite(3)];
    assert!(reconstruct(&f, 3, &pts, &s).is_err());
    assert!(reconstruct(&f, 2, &[Point::Finite(1), Point::Finite(1), Point::Finite(3)], &s).is_err());
    assert!(point_of(BaseField::Gf256, 257).is_err());
}

/// Perfect privacy at toy scale over F_256: for a fixed secret, the map from
/// the sharing randomness to any ℓ shares is a bijection.
#[test]
fn any_ell_shares_are_uniform() {
    let f = Gf256m::new(1).unwrap();
    let el = |v: u8| f.from_coeffs(&[v]);
    let all_points: Vec<Point> = (1..=255u8).map(Point::Finite).chain([Point::Infinity]).collect();
    // ℓ = 1: every secret and every point.
    for s in 0..=255u8 {
        for &t in &all_points {
            let image: HashSet<_> = (0..=255u8).map(|r| eval_share(&f, &el(s), &[el(r)], t)).collect();
            assert_eq!(image.len(), 256, "secret {s} point {t:?}");
        }
    }
    // ℓ = 2: selected secrets and point pairs, all 2^16 random tapes.
    for s in [0u8, 1, 0x53] {
        for pair in [
            [Point::Finite(1), Point::Finite(2)],
            [Point::Finite(3), Point::Finite(255)],
            [Point::Finite(7), Point::Infinity],
        ] {
            let mut image = HashSet::new();
            for r1 in 0..=255u8 {
                for r2 in 0..=255u8 {
                    let coeffs = [el(r1), el(r2)];
                    image.insert((eval_share(&f, &el(s), &coeffs, pair[0]), eval_share(&f, &el(s), &coeffs, pair[1])));
                }
            }
            assert_eq!(image.len(), 1 << 16);
        }
    }
}

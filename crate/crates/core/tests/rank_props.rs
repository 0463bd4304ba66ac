use num_bigint::BigUint;
use proptest::prelude::*;
use ryde_core::estimator::binomial;
use ryde_core::field::{Field, Gf256m, Gf2m};
use ryde_core::rank::{annihilator, gaussian_binomial, in_span, matrix_of, rank_weight, support_basis};
use std::collections::BTreeSet;

/// Every element of the F_2-span of `basis`, as integers.
fn span_set(basis: &[u64]) -> BTreeSet<u64> {
    let mut set = BTreeSet::from([0u64]);
    for &b in basis {
        let add: Vec<u64> = set.iter().map(|&v| v ^ b).collect();
        set.extend(add);
    }
    set
}

#[test]
fn annihilator_exhaustive_small_binary_fields() {
    for m in 1..=8usize {
        let f = Gf2m::new(m).unwrap();
        let el = |v: u64| f.from_coeffs(&(0..m).map(|i| (v >> i & 1) as u8).collect::<Vec<_>>());
        for r in 1..=m.min(3) {
            // All r-dimensional subspaces containing 1, each visited once.
            let mut seen = BTreeSet::new();
            let rest: Vec<Vec<u64>> = match r {
                1 => vec![vec![]],
                2 => (2..1u64 << m).map(|u| vec![u]).collect(),
                _ => (2..1u64 << m).flat_map(|u| (u + 1..1u64 << m).map(move |w| vec![u, w])).collect(),
            };
            for extra in rest {
                let mut basis = vec![1u64];
                basis.extend(&extra);
                let span = span_set(&basis);
                if span.len() != 1 << r || !seen.insert(span.clone()) {
                    continue;
                }
                let elems: Vec<_> = basis.iter().map(|&v| el(v)).collect();
                let l = annihilator(&f, &elems).unwrap();
                assert_eq!(l.r, r);
                for v in 0..1u64 << m {
                    let image = l.eval(&f, &el(v));
                    assert_eq!(f.is_zero(&image), span.contains(&v), "m={m} r={r} basis={basis:?} v={v}");
                }
            }
            if r == 3 && m == 8 {
                // [7 choose 2]_2 subspaces of dimension 3 contain 1.
                assert_eq!(seen.len(), 2667);
            }
        }
    }
}

#[test]
fn annihilator_rejects_bad_bases() {
    let f = Gf2m::new(5).unwrap();
    let el = |v: u64| f.from_coeffs(&(0..5).map(|i| (v >> i & 1) as u8).collect::<Vec<_>>());
    assert!(annihilator(&f, &[el(1), el(3), el(2)]).is_err());
    assert!(annihilator(&f, &[el(2), el(4)]).is_err());
}

fn gf2_31_vec(raw: &[u32]) -> Vec<u64> {
    raw.iter().map(|&v| (v & 0x7fff_ffff) as u64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn annihilator_is_linear(seed in prop::collection::vec(any::<u32>(), 6), a in any::<u32>(), b in any::<u32>(), ca in 0u8..2, cb in 0u8..2) {
        let f = Gf2m::new(31).unwrap();
        let el = |v: u64| f.from_coeffs(&(0..31).map(|i| (v >> i & 1) as u8).collect::<Vec<_>>());
        let mut basis = vec![f.one()];
        for v in gf2_31_vec(&seed) {
            let e = el(v);
            if !in_span(&f, &basis, &e) {
                basis.push(e);
            }
        }
        let l = annihilator(&f, &basis).unwrap();
        let (x, y) = (el(a as u64 & 0x7fff_ffff), el(b as u64 & 0x7fff_ffff));
        let lhs = l.eval(&f, &f.add(&f.scale(ca, &x), &f.scale(cb, &y)));
        let rhs = f.add(&f.scale(ca, &l.eval(&f, &x)), &f.scale(cb, &l.eval(&f, &y)));
        prop_assert_eq!(lhs, rhs);
        for u in &basis {
            prop_assert!(f.is_zero(&l.eval(&f, u)));
        }
    }

    #[test]
    fn rank_weight_is_basis_independent(raw in prop::collection::vec(any::<[u8; 11]>(), 12), perm in prop::collection::vec(any::<[u8; 11]>(), 11)) {
        // Change of F_q-basis of F_{q^m}: apply an invertible 11×11 matrix over F_256
        // to the coordinates of every entry and compare ranks.
        let f = Gf256m::new(11).unwrap();
        let x: Vec<_> = raw.iter().map(|c| f.from_coeffs(c)).collect();
        let base = f.base();
        let mat: Vec<Vec<u8>> = perm.iter().map(|r| r.to_vec()).collect();
        prop_assume!(ryde_core::rank::matrix_rank(base, &mat) == 11);
        let y: Vec<_> = x
            .iter()
            .map(|xi| {
                let c = f.to_coeffs(xi);
                let out: Vec<u8> = (0..11).map(|i| (0..11).fold(0u8, |acc, j| base.add(acc, base.mul(mat[i][j], c[j])))).collect();
                f.from_coeffs(&out)
            })
            .collect();
        prop_assert_eq!(rank_weight(&f, &x), rank_weight(&f, &y));
        prop_assert_eq!(ryde_core::rank::matrix_rank(base, &matrix_of(&f, &x)), rank_weight(&f, &x));
    }

    #[test]
    fn support_basis_spans_every_coordinate(raw in prop::collection::vec(any::<u32>(), 8)) {
        let f = Gf2m::new(31).unwrap();
        let el = |v: u64| f.from_coeffs(&(0..31).map(|i| (v >> i & 1) as u8).collect::<Vec<_>>());
        // Coordinates in a 3-dimensional space.
        let gens = [el(0x1234567), el(0x7654321), el(0x55aa55a)];
        let x: Vec<_> = raw.iter().map(|&v| (0..3).filter(|i| v >> i & 1 == 1).fold(f.zero(), |acc, i| f.add(&acc, &gens[i]))).collect();
        let w = rank_weight(&f, &x);
        prop_assume!(w > 0);
        let basis = support_basis(&f, &x).unwrap();
        prop_assert_eq!(basis.len(), w);
        prop_assert!(w <= 3);
        for xi in &x {
            prop_assert!(in_span(&f, &basis, xi));
        }
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u8), |acc, i| acc * BigUint::from(i))
}

#[test]
fn binomials_match_factorial_oracle() {
    for n in 0..=64u64 {
        for k in 0..=n {
            let want = factorial(n) / (factorial(k) * factorial(n - k));
            assert_eq!(binomial(n as i64, k as i64), want, "C({n},{k})");
        }
    }
}

#[test]
fn gaussian_binomials_match_subspace_counts() {
    // Count r-dimensional subspaces of F_2^m by brute force over spans.
    for m in 1..=6usize {
        for r in 0..=m.min(3) {
            let mut spans = BTreeSet::new();
            let gens: Vec<Vec<u64>> = match r {
                0 => vec![vec![]],
                1 => (1..1u64 << m).map(|a| vec![a]).collect(),
                2 => (1..1u64 << m).flat_map(|a| (a + 1..1u64 << m).map(move |b| vec![a, b])).collect(),
                _ => (1..1u64 << m)
                    .flat_map(|a| (a + 1..1u64 << m).flat_map(move |b| (b + 1..1u64 << m).map(move |c| vec![a, b, c])))
                    .collect(),
            };
            for g in gens {
                let s = span_set(&g);
                if s.len() == 1 << r {
                    spans.insert(s);
                }
            }
            let (count, _) = gaussian_binomial(m, r, 2).unwrap();
            assert_eq!(count, BigUint::from(spans.len()), "m={m} r={r}");
        }
    }
}

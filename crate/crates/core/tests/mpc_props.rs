mod common;

use common::{toy_max_accepts, Rng};
use ryde_core::field::{Field, Gf256m, Gf2m};
use ryde_core::keys::{keygen, SecretKey};
use ryde_core::mpc::{false_positive_rate, honest_c, party_compute, plain_check, Ext, Fields, Instance, MpcChallenge, WitnessBundle};
use ryde_core::params::{by_name, Ctx};
use ryde_core::shamir::{self, point_of, weights, Point};
use ryde_core::threshold::deal;

fn challenge<F: Field>(fl: &Fields<F>, n: usize, rng: &mut Rng) -> MpcChallenge<Ext<F>> {
    MpcChallenge {
        gamma: fl.fqme.sample_vec(n, rng),
        epsilon: fl.fqme.read(rng),
    }
}

fn full_bundle<F: Field>(fl: &Fields<F>, sk: &SecretKey<F>, rng: &mut Rng) -> WitnessBundle<F> {
    let a = fl.fqme.sample_vec(sk.beta().len(), rng);
    let c = honest_c(fl, sk.beta(), &a);
    WitnessBundle {
        x_b: sk.x_b.clone(),
        beta: sk.beta().to_vec(),
        a,
        c,
    }
}

fn random_bundle<F: Field>(fl: &Fields<F>, k: usize, r: usize, rng: &mut Rng) -> WitnessBundle<F> {
    WitnessBundle {
        x_b: fl.fqm.sample_vec(k, rng),
        beta: fl.fqm.sample_vec(r - 1, rng),
        a: fl.fqme.sample_vec(r - 1, rng),
        c: fl.fqme.read(rng),
    }
}

#[test]
fn additive_share_sums_match_plain_check() {
    let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-short").unwrap()).unwrap();
    let p = &ctx.params;
    let fl = &ctx.fields;
    let (pk, sk) = keygen(&ctx, &[3; 16]).unwrap();
    let mut rng = Rng::new(1);
    for n_parties in [1usize, 2, 4, 8] {
        for _ in 0..100 {
            let full = full_bundle(fl, &sk, &mut rng);
            let mut shares: Vec<_> = (1..n_parties).map(|_| random_bundle(fl, p.k, p.r, &mut rng)).collect();
            let mut acc = WitnessBundle::zero(fl, p.k, p.r);
            for s in &shares {
                acc.add_assign(fl, s);
            }
            shares.push(full.sub(fl, &acc));
            let ch = challenge(fl, p.n, &mut rng);
            let (alpha, v) = plain_check(fl, &sk.x(), sk.beta(), &full.a, &full.c, &ch);
            assert!(fl.fqme.is_zero(&v));
            // Phase 1 on every party, then open α and run phase 2.
            let first: Vec<_> = shares
                .iter()
                .enumerate()
                .map(|(i, s)| party_compute(fl, &pk.inst, s, &ch, i + 1 == n_parties, None).unwrap())
                .collect();
            let opened = first.iter().fold(vec![fl.fqme.zero(); p.r - 1], |mut acc, o| {
                fl.fqme.vec_add_assign(&mut acc, &o.alpha);
                acc
            });
            assert_eq!(opened, alpha);
            let v_sum = shares.iter().enumerate().fold(fl.fqme.zero(), |acc, (i, s)| {
                let out = party_compute(fl, &pk.inst, s, &ch, i + 1 == n_parties, Some(&opened)).unwrap();
                fl.fqme.add(&acc, &out.v.unwrap())
            });
            assert_eq!(v_sum, v);
        }
    }
}

#[test]
fn wrong_alpha_length_is_an_error() {
    let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-short").unwrap()).unwrap();
    let (pk, sk) = keygen(&ctx, &[4; 16]).unwrap();
    let mut rng = Rng::new(2);
    let b = full_bundle(&ctx.fields, &sk, &mut rng);
    let ch = challenge(&ctx.fields, ctx.params.n, &mut rng);
    assert!(party_compute(&ctx.fields, &pk.inst, &b, &ch, true, Some(&[])).is_err());
}

#[test]
fn zero_shares_give_zero_outputs() {
    let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-short").unwrap()).unwrap();
    let (pk, _) = keygen(&ctx, &[5; 16]).unwrap();
    let fl = &ctx.fields;
    let z = WitnessBundle::zero(fl, ctx.params.k, ctx.params.r);
    let ch = challenge(fl, ctx.params.n, &mut Rng::new(3));
    let zero_alpha = vec![fl.fqme.zero(); ctx.params.r - 1];
    let out = party_compute(fl, &pk.inst, &z, &ch, false, Some(&zero_alpha)).unwrap();
    assert!(out.alpha.iter().all(|a| fl.fqme.is_zero(a)));
    assert!(fl.fqme.is_zero(&out.v.unwrap()));
}

#[test]
fn shamir_party_outputs_reconstruct_plain_check() {
    let ctx = Ctx::<Gf256m>::new(&by_name("ryde128-thr-l3").unwrap()).unwrap();
    let p = &ctx.params;
    let fl = &ctx.fields;
    let (pk, sk) = keygen(&ctx, &[6; 16]).unwrap();
    let mut rng = Rng::new(4);
    for trial in 0..20 {
        let shares = deal(&ctx, &sk, &mut rng).unwrap();
        // Recover the dealt a and c to feed the plain evaluation.
        let set: Vec<usize> = (1..=p.ell + 1).map(|j| 1 + (j * 37 + trial * 11) % p.parties).collect();
        let mut set = set;
        set.sort();
        set.dedup();
        if set.len() != p.ell + 1 {
            continue;
        }
        let pts: Vec<Point> = set.iter().map(|&i| point_of(fl.fqm.base(), i).unwrap()).collect();
        let w0 = weights(fl.fqm.base(), &pts, Point::Finite(0)).unwrap();
        let a: Vec<_> = (0..p.r - 1)
            .map(|c| shamir::combine(&fl.fqme, &w0, &set.iter().map(|&i| shares[i - 1].a[c]).collect::<Vec<_>>()))
            .collect();
        let c = shamir::combine(&fl.fqme, &w0, &set.iter().map(|&i| shares[i - 1].c).collect::<Vec<_>>());
        let ch = challenge(fl, p.n, &mut rng);
        let (alpha, v) = plain_check(fl, &sk.x(), sk.beta(), &a, &c, &ch);
        assert!(fl.fqme.is_zero(&v));
        let outs: Vec<_> = set
            .iter()
            .map(|&i| party_compute(fl, &pk.inst, &shares[i - 1], &ch, i < 256, None).unwrap())
            .collect();
        let opened: Vec<_> = (0..p.r - 1)
            .map(|c| shamir::combine(&fl.fqme, &w0, &outs.iter().map(|o| o.alpha[c]).collect::<Vec<_>>()))
            .collect();
        assert_eq!(opened, alpha);
        let vs: Vec<_> = set
            .iter()
            .map(|&i| party_compute(fl, &pk.inst, &shares[i - 1], &ch, i < 256, Some(&opened)).unwrap().v.unwrap())
            .collect();
        assert!(fl.fqme.is_zero(&shamir::combine(&fl.fqme, &w0, &vs)));
    }
}

#[test]
fn honest_witness_always_accepts() {
    let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-fast").unwrap()).unwrap();
    let (_, sk) = keygen(&ctx, &[7; 16]).unwrap();
    let mut rng = Rng::new(5);
    for _ in 0..1000 {
        let b = full_bundle(&ctx.fields, &sk, &mut rng);
        let ch = challenge(&ctx.fields, ctx.params.n, &mut rng);
        let (_, v) = plain_check(&ctx.fields, &sk.x(), sk.beta(), &b.a, &b.c, &ch);
        assert!(ctx.fields.fqme.is_zero(&v));
    }
}

#[test]
fn toy_false_positive_rate_is_bounded() {
    let (accepts, total) = toy_max_accepts();
    let (p, _) = false_positive_rate(2, 3, 1);
    assert_eq!(p, num_rational::BigRational::new(15.into(), 64.into()));
    assert!(accepts * 64 <= total * 15, "{accepts}/{total}");
    // The bound is tight for c = 0.
    assert_eq!(accepts, 120);
}

#[test]
fn instance_recovers_x_a() {
    let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-short").unwrap()).unwrap();
    let (pk, sk) = keygen(&ctx, &[8; 16]).unwrap();
    let inst: &Instance<Gf2m> = &pk.inst;
    assert_eq!(inst.derive_x_a(&ctx.fields.fqm, &sk.x_b, true), sk.x_a);
    assert_eq!(inst.n(), ctx.params.n);
}

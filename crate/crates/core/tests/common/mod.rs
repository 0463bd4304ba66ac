#![allow(dead_code)]

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ryde_core::bits::BitSource;
use ryde_core::field::{Field, Gf2m};
use ryde_core::hypercube::{verify_repetition, ProverRepetition};
use ryde_core::keys::keygen;
use ryde_core::mpc::{plain_check, Fields, MpcChallenge};
use ryde_core::params::{Ctx, RankSdParams, Variant};

/// Seeded test randomness usable wherever the library reads from a bit source.
pub struct Rng(pub ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn bytes(&mut self, len: usize) -> Vec<u8> {
        let mut v = vec![0; len];
        self.0.fill_bytes(&mut v);
        v
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }
}

impl BitSource for Rng {
    fn take_bits(&mut self, n: usize) -> u64 {
        let v = self.0.next_u64();
        if n >= 64 {
            v
        } else {
            v & ((1u64 << n) - 1)
        }
    }
}

/// Exact accept count of plain_check over every challenge in F_8^3 for a rank-2
/// witness checked against r = 1, maximized over the prover's choice of c.
pub fn toy_max_accepts() -> (usize, usize) {
    let f = Gf2m::new(3).unwrap();
    let fl = Fields::new(f.clone(), 1).unwrap();
    let el = |v: u8| f.from_coeffs(&[v & 1, v >> 1 & 1, v >> 2 & 1]);
    let ext: Vec<_> = (0u8..8).map(|v| fl.fqme.embed(&el(v))).collect();
    let mut worst = 0;
    for x0 in 0u8..8 {
        for x1 in 0u8..8 {
            let x = [el(x0), el(x1)];
            if ryde_core::rank::rank_weight(&f, &x) != 2 {
                continue;
            }
            for c in &ext {
                let mut accepts = 0;
                for g0 in &ext {
                    for g1 in &ext {
                        for eps in &ext {
                            let ch = MpcChallenge {
                                gamma: vec![*g0, *g1],
                                epsilon: *eps,
                            };
                            let (_, v) = plain_check(&fl, &x, &[], &[], c, &ch);
                            accepts += usize::from(fl.fqme.is_zero(&v));
                        }
                    }
                }
                worst = worst.max(accepts);
            }
        }
    }
    (worst, 512)
}

/// Runs one N = 16 repetition in which the prover commits to a sharing of a
/// non-witness (c shifted by Δ) and then deviates on leaf `cheat` so the MPC
/// outputs v = 0. Returns the hidden indices for which the verifier's
/// recomputation matches the prover's messages.
pub fn cheating_acceptances(cheat: usize, seed: u64) -> Vec<usize> {
    let p = RankSdParams::custom(128, 2, 31, 33, 15, 10, 16, 1, 1, Variant::Hypercube, 0).unwrap();
    let ctx = Ctx::<Gf2m>::new(&p).unwrap();
    let fl = &ctx.fields;
    let mut rng = Rng::new(seed);
    let (pk, sk) = keygen(&ctx, &rng.bytes(16)).unwrap();
    let salt = rng.bytes(32);
    let mut rep = ProverRepetition::commit(&ctx, &sk, &salt, 1, &rng.bytes(16)).unwrap();
    let delta = loop {
        let d = fl.fqme.read(&mut rng);
        if !fl.fqme.is_zero(&d) {
            break d;
        }
    };
    rep.aux_commit.c = fl.fqme.add(&rep.aux_commit.c, &delta);
    rep.recommit(&ctx, &salt);
    let n = p.parties;
    rep.leaf_shares[n - 1].c = fl.fqme.add(&rep.leaf_shares[n - 1].c, &delta);
    rep.leaf_shares[cheat - 1].c = fl.fqme.sub(&rep.leaf_shares[cheat - 1].c, &delta);
    let ch = MpcChallenge {
        gamma: fl.fqme.sample_vec(p.n, &mut rng),
        epsilon: fl.fqme.read(&mut rng),
    };
    let first = rep.first_response(&ctx, &pk.inst, &salt, &ch).unwrap();
    (1..=n)
        .filter(|&i_star| {
            let rsp = rep.respond(&ctx, &pk.inst, &ch, i_star).unwrap();
            let check = verify_repetition(&ctx, &pk.inst, &salt, 1, &ch, i_star, &rsp).unwrap();
            check.h0 == rep.h0 && check.digests == first.digests
        })
        .collect()
}

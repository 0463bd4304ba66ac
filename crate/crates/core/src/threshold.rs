//! Threshold signature over (ℓ+1, N) Shamir sharing, q = 256.
//!
//! Each repetition shares (x_B, β, a, c) with fresh degree-ℓ polynomials,
//! commits every party's state under a Merkle tree and runs the MPC only on
//! S = {1, .., ℓ+1}. The verifier opens a set I of ℓ parties and gets α of the
//! party i* = min(S \ I).
//!
//! Signature layout (bit-packed, zero padded at the very end):
//! salt ‖ h1 ‖ h2 ‖ for each e: ℓ states (ascending party order) ‖ auth path ‖ α_{i*}
//! with state = x_B (k) ‖ β (r−1) ‖ a (r−1) ‖ c.

use crate::bits::{BitReader, BitSource, BitWriter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hypercube::signing_coins;
use crate::keys::{pk_to_bytes, validate_keypair, PublicKey, SecretKey};
use crate::mpc::{honest_c, party_phase1, party_v, Ext, Instance, MpcChallenge, WitnessBundle};
use crate::params::{Ctx, Variant};
use crate::shamir::{self, point_of, Point};
use crate::symmetric::{domain, expand_challenge1, expand_opened_set, merkle_auth_len, merkle_verify, Digest, MerkleTree, Sym};
use rayon::prelude::*;

fn state_write<F: Field>(ctx: &Ctx<F>, s: &WitnessBundle<F>, w: &mut BitWriter) {
    let (f, t) = (&ctx.fields.fqm, &ctx.fields.fqme);
    f.write_vec(&s.x_b, w);
    f.write_vec(&s.beta, w);
    t.write_vec(&s.a, w);
    t.write(&s.c, w);
}

fn state_read<F: Field>(ctx: &Ctx<F>, src: &mut dyn BitSource) -> WitnessBundle<F> {
    let p = &ctx.params;
    let (f, t) = (&ctx.fields.fqm, &ctx.fields.fqme);
    let x_b = f.read_vec(p.k, src);
    let beta = f.read_vec(p.r - 1, src);
    let a = t.read_vec(p.r - 1, src);
    let c = t.read(src);
    WitnessBundle { x_b, beta, a, c }
}

/// Width of one party state in bits.
pub fn state_bits<F: Field>(ctx: &Ctx<F>) -> usize {
    let p = &ctx.params;
    (p.k + p.r - 1) * ctx.fields.fqm.bit_len() + p.r * ctx.fields.fqme.bit_len()
}

/// cmt_i = H0(salt ‖ e ‖ i ‖ state_i), the state zero padded to whole bytes.
fn state_commit<F: Field>(ctx: &Ctx<F>, salt: &[u8], e: usize, i: usize, s: &WitnessBundle<F>) -> Digest {
    let mut w = BitWriter::new();
    state_write(ctx, s, &mut w);
    ctx.sym.commit(salt, e, i, &w.finish())
}

/// The party running the MPC with δ = 1: every finite point (the constant y
/// has a zero leading coefficient, so the party at infinity adds nothing).
fn adds_constant(pt: Point) -> bool {
    matches!(pt, Point::Finite(_))
}

fn points<F: Field>(ctx: &Ctx<F>, parties: &[usize]) -> Result<Vec<Point>> {
    parties.iter().map(|&i| point_of(ctx.fields.fqm.base(), i)).collect()
}

/// Shamir shares for all N parties of (x_B, β, a, c), with a fresh and
/// c = −⟨β, a⟩, drawn from `src`.
pub fn deal<F: Field>(ctx: &Ctx<F>, sk: &SecretKey<F>, src: &mut dyn BitSource) -> Result<Vec<WitnessBundle<F>>> {
    let p = &ctx.params;
    let fl = &ctx.fields;
    let a = fl.fqme.sample_vec(p.r - 1, src);
    let c = honest_c(fl, sk.beta(), &a);
    let xb = shamir::share_vec(&fl.fqm, &sk.x_b, p.ell, p.parties, src)?;
    let beta = shamir::share_vec(&fl.fqm, sk.beta(), p.ell, p.parties, src)?;
    let a_sh = shamir::share_vec(&fl.fqme, &a, p.ell, p.parties, src)?;
    let c_sh = shamir::share_vec(&fl.fqme, &[c], p.ell, p.parties, src)?;
    Ok(xb
        .into_iter()
        .zip(beta)
        .zip(a_sh)
        .zip(c_sh)
        .map(|(((x_b, beta), a), c)| WitnessBundle { x_b, beta, a, c: c[0] })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResponse<F: Field> {
    /// States of the opened parties, ascending.
    pub states: Vec<WitnessBundle<F>>,
    pub path: Vec<Digest>,
    pub alpha: Vec<Ext<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSignature<F: Field> {
    pub salt: Vec<u8>,
    pub h1: Digest,
    pub h2: Digest,
    pub responses: Vec<ThresholdResponse<F>>,
}

fn check_variant<F: Field>(ctx: &Ctx<F>) -> Result<()> {
    if ctx.params.variant != Variant::Threshold {
        return Err(Error::Params(format!("{} is not a threshold parameter set", ctx.params.name)));
    }
    Ok(())
}

fn hash_h1(sym: &Sym, msg: &[u8], pk: &[u8], salt: &[u8], h0s: &[Digest]) -> Digest {
    let mut x = sym.xof(domain::H1);
    x.absorb_var(msg).absorb(pk).absorb(salt);
    for h in h0s {
        x.absorb(h);
    }
    x.output(sym.digest_bytes())
}

/// Packed (α_i, v_i) for i ∈ S of one repetition.
fn pack_outputs<F: Field>(ctx: &Ctx<F>, outs: &[(Vec<Ext<F>>, Ext<F>)]) -> Vec<u8> {
    let t = &ctx.fields.fqme;
    let mut w = BitWriter::new();
    for (a, v) in outs {
        t.write_vec(a, &mut w);
        t.write(v, &mut w);
    }
    w.finish()
}

fn hash_h2(sym: &Sym, msg: &[u8], pk: &[u8], salt: &[u8], h1: &[u8], packed: &[Vec<u8>]) -> Digest {
    let mut x = sym.xof(domain::H2);
    x.absorb_var(msg).absorb(pk).absorb(salt).absorb(h1);
    for p in packed {
        x.absorb(p);
    }
    x.output(sym.digest_bytes())
}

/// i* = min(S \ I) with S = {1, .., ℓ+1}.
pub fn hidden_party(ell: usize, opened: &[usize]) -> usize {
    (1..=ell + 1).find(|i| !opened.contains(i)).expect("|I| = ℓ < |S|")
}

struct Committed<F: Field> {
    shares: Vec<WitnessBundle<F>>,
    tree: MerkleTree,
}

pub fn sign<F: Field>(ctx: &Ctx<F>, pk: &PublicKey<F>, sk: &SecretKey<F>, msg: &[u8], rand: &[u8]) -> Result<ThresholdSignature<F>> {
    check_variant(ctx)?;
    if !validate_keypair(ctx, pk, sk) {
        return Err(Error::InvalidKeyPair);
    }
    let p = &ctx.params;
    let fl = &ctx.fields;
    let t = &fl.fqme;
    let sym = &ctx.sym;
    let (salt, seeds) = signing_coins(ctx, sk, msg, rand);
    let committed: Vec<Committed<F>> = seeds
        .par_iter()
        .enumerate()
        .map(|(idx, seed)| {
            let e = idx + 1;
            let mut x = sym.xof(domain::SIGN);
            x.absorb_var(seed).absorb_u16(e);
            let shares = deal(ctx, sk, &mut x.stream())?;
            let cmts: Vec<Digest> = shares.iter().enumerate().map(|(j, s)| state_commit(ctx, &salt, e, j + 1, s)).collect();
            Ok(Committed {
                shares,
                tree: MerkleTree::build(sym, &cmts)?,
            })
        })
        .collect::<Result<_>>()?;
    let pk_bytes = pk_to_bytes(ctx, pk);
    let h0s: Vec<Digest> = committed.iter().map(|c| c.tree.root().clone()).collect();
    let h1 = hash_h1(sym, msg, &pk_bytes, &salt, &h0s);
    let chs = expand_challenge1(sym, &h1, t, p.n, p.tau);

    let s_parties: Vec<usize> = (1..=p.ell + 1).collect();
    let s_points = points(ctx, &s_parties)?;
    let w0 = shamir::weights(fl.fqm.base(), &s_points, Point::Finite(0))?;
    let outputs: Vec<Vec<(Vec<Ext<F>>, Ext<F>)>> = committed
        .par_iter()
        .zip(&chs)
        .map(|(c, ch)| {
            let p1: Vec<_> = s_parties
                .iter()
                .zip(&s_points)
                .map(|(&i, &pt)| party_phase1(fl, &pk.inst, &c.shares[i - 1], ch, adds_constant(pt)))
                .collect();
            let alpha_shares: Vec<&[Ext<F>]> = p1.iter().map(|x| x.alpha.as_slice()).collect();
            let alpha = shamir::combine_vec(t, &w0, &alpha_shares);
            s_parties
                .iter()
                .zip(&p1)
                .map(|(&i, ph)| Ok((ph.alpha.clone(), party_v(fl, &c.shares[i - 1], ch, ph, &alpha)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let packed: Vec<Vec<u8>> = outputs.iter().map(|o| pack_outputs(ctx, o)).collect();
    let h2 = hash_h2(sym, msg, &pk_bytes, &salt, &h1, &packed);
    let opened = expand_opened_set(sym, &h2, p.parties, p.ell, p.tau);
    let responses = committed
        .iter()
        .zip(&opened)
        .zip(&outputs)
        .map(|((c, set), outs)| {
            let i_star = hidden_party(p.ell, set);
            Ok(ThresholdResponse {
                states: set.iter().map(|&i| c.shares[i - 1].clone()).collect(),
                path: c.tree.auth(set)?,
                alpha: outs[i_star - 1].0.clone(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ThresholdSignature { salt, h1, h2, responses })
}

/// Recomputes h0 and the packed S outputs of one repetition.
#[allow(clippy::too_many_arguments)]
fn verify_repetition<F: Field>(
    ctx: &Ctx<F>,
    inst: &Instance<F>,
    salt: &[u8],
    e: usize,
    ch: &MpcChallenge<Ext<F>>,
    set: &[usize],
    rsp: &ThresholdResponse<F>,
) -> Result<(Digest, Vec<u8>)> {
    let p = &ctx.params;
    let fl = &ctx.fields;
    let t = &fl.fqme;
    let base = fl.fqm.base();
    if rsp.states.len() != p.ell || rsp.alpha.len() != p.r - 1 {
        return Err(Error::Parse("response has the wrong shape".into()));
    }
    let cmts: Vec<Digest> = set.iter().zip(&rsp.states).map(|(&i, s)| state_commit(ctx, salt, e, i, s)).collect();
    let h0 = merkle_verify(&ctx.sym, p.parties, set, &cmts, &rsp.path)?;

    let i_star = hidden_party(p.ell, set);
    let set_points = points(ctx, set)?;
    let p1: Vec<_> = rsp
        .states
        .iter()
        .zip(&set_points)
        .map(|(s, &pt)| party_phase1(fl, inst, s, ch, adds_constant(pt)))
        .collect();

    // α from the ℓ opened shares plus α_{i*}, then expanded onto S.
    let mut j_points = set_points.clone();
    j_points.push(point_of(base, i_star)?);
    let mut alpha_shares: Vec<&[Ext<F>]> = p1.iter().map(|x| x.alpha.as_slice()).collect();
    alpha_shares.push(&rsp.alpha);
    let alpha = shamir::combine_vec(t, &shamir::weights(base, &j_points, Point::Finite(0))?, &alpha_shares);

    // v shares of the opened parties plus v = 0 at the origin, expanded onto S.
    let mut v_points = set_points.clone();
    v_points.push(Point::Finite(0));
    let mut v_shares: Vec<Ext<F>> = rsp
        .states
        .iter()
        .zip(&p1)
        .map(|(s, ph)| party_v(fl, s, ch, ph, &alpha))
        .collect::<Result<_>>()?;
    v_shares.push(t.zero());

    let mut outs = Vec::with_capacity(p.ell + 1);
    for j in 1..=p.ell + 1 {
        let pt = point_of(base, j)?;
        let a_j = shamir::combine_vec(t, &shamir::weights(base, &j_points, pt)?, &alpha_shares);
        let v_j = shamir::combine(t, &shamir::weights(base, &v_points, pt)?, &v_shares);
        outs.push((a_j, v_j));
    }
    Ok((h0, pack_outputs(ctx, &outs)))
}

pub fn verify<F: Field>(ctx: &Ctx<F>, pk: &PublicKey<F>, msg: &[u8], sig: &ThresholdSignature<F>) -> Result<bool> {
    check_variant(ctx)?;
    let p = &ctx.params;
    let sym = &ctx.sym;
    if sig.responses.len() != p.tau {
        return Err(Error::Length {
            expected: p.tau,
            got: sig.responses.len(),
        });
    }
    let chs = expand_challenge1(sym, &sig.h1, &ctx.fields.fqme, p.n, p.tau);
    let opened = expand_opened_set(sym, &sig.h2, p.parties, p.ell, p.tau);
    let checks: Vec<(Digest, Vec<u8>)> = (0..p.tau)
        .into_par_iter()
        .map(|idx| verify_repetition(ctx, &pk.inst, &sig.salt, idx + 1, &chs[idx], &opened[idx], &sig.responses[idx]))
        .collect::<Result<_>>()?;
    let pk_bytes = pk_to_bytes(ctx, pk);
    let h0s: Vec<Digest> = checks.iter().map(|c| c.0.clone()).collect();
    if hash_h1(sym, msg, &pk_bytes, &sig.salt, &h0s) != sig.h1 {
        return Ok(false);
    }
    let packed: Vec<Vec<u8>> = checks.into_iter().map(|c| c.1).collect();
    Ok(hash_h2(sym, msg, &pk_bytes, &sig.salt, &sig.h1, &packed) == sig.h2)
}

/// Exact encoded size in bits for the given opened sets.
pub fn signature_bits<F: Field>(ctx: &Ctx<F>, opened: &[Vec<usize>]) -> Result<usize> {
    let p = &ctx.params;
    let per_rep = p.ell * state_bits(ctx) + (p.r - 1) * ctx.fields.fqme.bit_len();
    let mut total = 6 * p.lambda;
    for set in opened {
        total += per_rep + merkle_auth_len(p.parties, set)? * 2 * p.lambda;
    }
    Ok(total)
}

/// Largest possible encoding, with the longest authentication path in every
/// repetition.
pub fn max_signature_len<F: Field>(ctx: &Ctx<F>) -> Result<usize> {
    let p = &ctx.params;
    let auth = crate::symmetric::merkle_auth_max(p.parties, p.ell)?;
    let per_rep = p.ell * state_bits(ctx) + (p.r - 1) * ctx.fields.fqme.bit_len() + auth * 2 * p.lambda;
    Ok((6 * p.lambda + p.tau * per_rep).div_ceil(8))
}

impl<F: Field> ThresholdSignature<F> {
    pub fn to_bytes(&self, ctx: &Ctx<F>) -> Vec<u8> {
        let mut w = BitWriter::new();
        w.put_bytes(&self.salt);
        w.put_bytes(&self.h1);
        w.put_bytes(&self.h2);
        for r in &self.responses {
            for s in &r.states {
                state_write(ctx, s, &mut w);
            }
            for d in &r.path {
                w.put_bytes(d);
            }
            ctx.fields.fqme.write_vec(&r.alpha, &mut w);
        }
        w.finish()
    }

    pub fn from_bytes(ctx: &Ctx<F>, bytes: &[u8]) -> Result<Self> {
        check_variant(ctx)?;
        let p = &ctx.params;
        let sym = &ctx.sym;
        let mut r = BitReader::new(bytes);
        let salt = r.read_vec(sym.salt_bytes());
        let h1 = r.read_vec(sym.digest_bytes());
        let h2 = r.read_vec(sym.digest_bytes());
        let opened = expand_opened_set(sym, &h2, p.parties, p.ell, p.tau);
        let mut responses = Vec::with_capacity(p.tau);
        for set in &opened {
            let states = (0..p.ell).map(|_| state_read(ctx, &mut r)).collect();
            let path = (0..merkle_auth_len(p.parties, set)?).map(|_| r.read_vec(sym.digest_bytes())).collect();
            let alpha = ctx.fields.fqme.read_vec(p.r - 1, &mut r);
            responses.push(ThresholdResponse { states, path, alpha });
        }
        r.finish()?;
        Ok(Self { salt, h1, h2, responses })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf256m;
    use crate::keys::keygen;
    use crate::params::by_name;

    #[test]
    fn l1_round_trip() {
        let ctx = Ctx::<Gf256m>::new(&by_name("ryde128-thr-l3").unwrap()).unwrap();
        let (pk, sk) = keygen(&ctx, &[2u8; 16]).unwrap();
        let sig = sign(&ctx, &pk, &sk, b"msg", b"r").unwrap();
        assert!(verify(&ctx, &pk, b"msg", &sig).unwrap());
        assert!(!verify(&ctx, &pk, b"other", &sig).unwrap());
        let bytes = sig.to_bytes(&ctx);
        assert_eq!(ThresholdSignature::from_bytes(&ctx, &bytes).unwrap(), sig);
        assert!(bytes.len() <= max_signature_len(&ctx).unwrap());
    }
}

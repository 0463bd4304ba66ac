//! Hypercube (additive) signature.
//!
//! Per repetition a GGM tree gives N = 2^D leaf seeds. Leaf i < N expands its
//! whole witness share from its seed; leaf N expands only its `a` share and
//! carries an explicit correction `aux` = (x_B, β, c) making the shares sum to
//! the witness. Leaf i sits at hypercube coordinates i_d = bit (d−1) of (i−1)
//! plus one, so main party (d, 2) always contains leaf N and adds the public y.
//!
//! Signature layout (bit-packed, zero padded at the very end):
//! salt ‖ h1 ‖ h2 ‖ for each e: path (D seeds) ‖ cmt_{i*} ‖ α_{i*} ‖ [aux if i* ≠ N]
//! with aux = x_B (k) ‖ β (r−1) ‖ c.

use crate::bits::{BitReader, BitSource, BitWriter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::keys::{pk_to_bytes, validate_keypair, PublicKey, SecretKey};
use crate::mpc::{party_phase1, party_v, Ext, Instance, MpcChallenge, Phase1, WitnessBundle};
use crate::params::{Ctx, Variant};
use crate::symmetric::{domain, expand_challenge1, expand_hidden_party, ggm_expand, ggm_recover, Digest, SeedTree, Sym};
use rayon::prelude::*;

/// Party N's explicit shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aux<F: Field> {
    pub x_b: Vec<F::Elem>,
    pub beta: Vec<F::Elem>,
    pub c: Ext<F>,
}

impl<F: Field> Aux<F> {
    fn write(&self, ctx: &Ctx<F>, w: &mut BitWriter) {
        ctx.fields.fqm.write_vec(&self.x_b, w);
        ctx.fields.fqm.write_vec(&self.beta, w);
        ctx.fields.fqme.write(&self.c, w);
    }

    fn read(ctx: &Ctx<F>, src: &mut dyn BitSource) -> Self {
        let p = &ctx.params;
        let x_b = ctx.fields.fqm.read_vec(p.k, src);
        let beta = ctx.fields.fqm.read_vec(p.r - 1, src);
        let c = ctx.fields.fqme.read(src);
        Self { x_b, beta, c }
    }

    fn to_bytes(&self, ctx: &Ctx<F>) -> Vec<u8> {
        let mut w = BitWriter::new();
        self.write(ctx, &mut w);
        w.finish()
    }

    fn bit_len(ctx: &Ctx<F>) -> usize {
        let p = &ctx.params;
        (p.k + p.r - 1) * ctx.fields.fqm.bit_len() + ctx.fields.fqme.bit_len()
    }
}

fn share_stream<F: Field>(ctx: &Ctx<F>, seed: &[u8]) -> crate::symmetric::XofStream {
    let mut x = ctx.sym.xof(domain::SHARES);
    x.absorb(seed);
    x.stream()
}

/// Seed-derived share of leaf i < N, read in the order a, x_B, β, c.
pub fn leaf_share<F: Field>(ctx: &Ctx<F>, seed: &[u8]) -> WitnessBundle<F> {
    let p = &ctx.params;
    let (f, t) = (&ctx.fields.fqm, &ctx.fields.fqme);
    let mut st = share_stream(ctx, seed);
    let a = t.sample_vec(p.r - 1, &mut st);
    let x_b = f.sample_vec(p.k, &mut st);
    let beta = f.sample_vec(p.r - 1, &mut st);
    let c = t.read(&mut st);
    WitnessBundle { x_b, beta, a, c }
}

/// Leaf N: `a` from its seed, the rest from `aux`.
fn last_share<F: Field>(ctx: &Ctx<F>, seed: &[u8], aux: &Aux<F>) -> WitnessBundle<F> {
    let mut st = share_stream(ctx, seed);
    let a = ctx.fields.fqme.sample_vec(ctx.params.r - 1, &mut st);
    WitnessBundle {
        x_b: aux.x_b.clone(),
        beta: aux.beta.clone(),
        a,
        c: aux.c,
    }
}

fn leaf_commit<F: Field>(ctx: &Ctx<F>, salt: &[u8], e: usize, i: usize, leaf: &crate::symmetric::Leaf, aux: Option<&Aux<F>>) -> Digest {
    let mut state = leaf.rho.clone();
    state.extend_from_slice(&leaf.seed);
    if let Some(aux) = aux {
        state.extend_from_slice(&aux.to_bytes(ctx));
    }
    ctx.sym.commit(salt, e, i, &state)
}

/// h0 = H1(salt ‖ e ‖ cmt_1 ‖ .. ‖ cmt_N).
fn hash_commitments(sym: &Sym, salt: &[u8], e: usize, cmts: &[Digest]) -> Digest {
    let mut x = sym.xof(domain::H1);
    x.absorb(salt).absorb_u16(e);
    for c in cmts {
        x.absorb(c);
    }
    x.output(sym.digest_bytes())
}

/// Coordinate i_d ∈ {1, 2} of (1-based) leaf i along dimension d.
pub fn coordinate(i: usize, d: usize) -> usize {
    ((i - 1) >> (d - 1) & 1) + 1
}

/// Shares and outputs of the two main parties of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainView<E> {
    pub alpha: [Vec<E>; 2],
    pub v: [E; 2],
}

/// H_d = H3(salt ‖ e ‖ d ‖ α_(d,1) ‖ v_(d,1) ‖ α_(d,2) ‖ v_(d,2)).
pub fn dimension_digest<F: Field>(ctx: &Ctx<F>, salt: &[u8], e: usize, d: usize, view: &MainView<Ext<F>>) -> Digest {
    let t = &ctx.fields.fqme;
    let mut w = BitWriter::new();
    for k in 0..2 {
        t.write_vec(&view.alpha[k], &mut w);
        t.write(&view.v[k], &mut w);
    }
    let payload = w.finish();
    ctx.sym
        .hash(domain::H3, &[salt, &(e as u16).to_be_bytes(), &(d as u16).to_be_bytes(), &payload])
}

/// One repetition of the prover, after commitment.
///
/// `leaf_shares` are the shares the prover actually feeds to the MPC; an
/// honest prover keeps them equal to what the commitments bind. Tests may edit
/// them (and `aux_commit` followed by [`ProverRepetition::recommit`]) to model
/// a cheating prover.
#[derive(Debug, Clone)]
pub struct ProverRepetition<F: Field> {
    pub e: usize,
    pub tree: SeedTree,
    pub leaf_shares: Vec<WitnessBundle<F>>,
    pub aux_commit: Aux<F>,
    pub cmts: Vec<Digest>,
    pub h0: Digest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstResponse<F: Field> {
    pub alpha: Vec<Ext<F>>,
    pub views: Vec<MainView<Ext<F>>>,
    pub digests: Vec<Digest>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepResponse<F: Field> {
    pub path: Vec<Vec<u8>>,
    pub cmt: Digest,
    pub alpha: Vec<Ext<F>>,
    pub aux: Option<Aux<F>>,
}

/// What the verifier recomputes for one repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepCheck {
    pub h0: Digest,
    pub digests: Vec<Digest>,
}

impl<F: Field> ProverRepetition<F> {
    /// Expands the seed tree, builds the sharing of (x_B, β, a, c) and commits.
    pub fn commit(ctx: &Ctx<F>, sk: &SecretKey<F>, salt: &[u8], e: usize, root: &[u8]) -> Result<Self> {
        let p = &ctx.params;
        let fl = &ctx.fields;
        let n = p.parties;
        let tree = ggm_expand(&ctx.sym, root, salt, n)?;
        let mut shares: Vec<WitnessBundle<F>> = tree.leaves()[..n - 1].iter().map(|l| leaf_share(ctx, &l.seed)).collect();
        let mut sum = WitnessBundle::zero(fl, p.k, p.r);
        for s in &shares {
            sum.add_assign(fl, s);
        }
        let mut a_last = share_stream(ctx, &tree.leaf(n).seed);
        let a_n = fl.fqme.sample_vec(p.r - 1, &mut a_last);
        let mut a_total = sum.a.clone();
        fl.fqme.vec_add_assign(&mut a_total, &a_n);
        let c_total = crate::mpc::honest_c(fl, sk.beta(), &a_total);
        let aux = Aux {
            x_b: sk.x_b.iter().zip(&sum.x_b).map(|(x, s)| fl.fqm.sub(x, s)).collect(),
            beta: sk.beta().iter().zip(&sum.beta).map(|(x, s)| fl.fqm.sub(x, s)).collect(),
            c: fl.fqme.sub(&c_total, &sum.c),
        };
        shares.push(WitnessBundle {
            x_b: aux.x_b.clone(),
            beta: aux.beta.clone(),
            a: a_n,
            c: aux.c,
        });
        let mut rep = Self {
            e,
            tree,
            leaf_shares: shares,
            aux_commit: aux,
            cmts: Vec::new(),
            h0: Vec::new(),
        };
        rep.recommit(ctx, salt);
        Ok(rep)
    }

    /// Recomputes all commitments and h0 from the tree and `aux_commit`.
    pub fn recommit(&mut self, ctx: &Ctx<F>, salt: &[u8]) {
        let n = ctx.params.parties;
        self.cmts = (1..=n)
            .map(|i| {
                let aux = (i == n).then_some(&self.aux_commit);
                leaf_commit(ctx, salt, self.e, i, self.tree.leaf(i), aux)
            })
            .collect();
        self.h0 = hash_commitments(&ctx.sym, salt, self.e, &self.cmts);
    }

    /// Runs the main parties: both parties of dimension 1, then one party per
    /// further dimension with the second derived from the opened α and v = 0.
    pub fn first_response(&self, ctx: &Ctx<F>, inst: &Instance<F>, salt: &[u8], ch: &MpcChallenge<Ext<F>>) -> Result<FirstResponse<F>> {
        let p = &ctx.params;
        let fl = &ctx.fields;
        let t = &fl.fqme;
        let dims = p.dim();
        let main_share = |d: usize, k: usize| {
            let mut s = WitnessBundle::zero(fl, p.k, p.r);
            for (idx, share) in self.leaf_shares.iter().enumerate() {
                if coordinate(idx + 1, d) == k {
                    s.add_assign(fl, share);
                }
            }
            s
        };
        let mut views = Vec::with_capacity(dims);
        let s11 = main_share(1, 1);
        let s12 = main_share(1, 2);
        let p11 = party_phase1(fl, inst, &s11, ch, false);
        let p12 = party_phase1(fl, inst, &s12, ch, true);
        let alpha = t.vec_add(&p11.alpha, &p12.alpha);
        let v11 = party_v(fl, &s11, ch, &p11, &alpha)?;
        let v12 = party_v(fl, &s12, ch, &p12, &alpha)?;
        views.push(MainView {
            alpha: [p11.alpha, p12.alpha],
            v: [v11, v12],
        });
        for d in 2..=dims {
            let s = main_share(d, 1);
            let pd = party_phase1(fl, inst, &s, ch, false);
            let vd = party_v(fl, &s, ch, &pd, &alpha)?;
            let other: Vec<_> = alpha.iter().zip(&pd.alpha).map(|(a, b)| t.sub(a, b)).collect();
            views.push(MainView {
                alpha: [pd.alpha, other],
                v: [vd, t.neg(&vd)],
            });
        }
        let digests = views.iter().enumerate().map(|(d, v)| dimension_digest(ctx, salt, self.e, d + 1, v)).collect();
        Ok(FirstResponse { alpha, views, digests })
    }

    /// Opens every leaf but `i_star`.
    pub fn respond(&self, ctx: &Ctx<F>, inst: &Instance<F>, ch: &MpcChallenge<Ext<F>>, i_star: usize) -> Result<RepResponse<F>> {
        let n = ctx.params.parties;
        let path = self.tree.open(i_star)?;
        let share = &self.leaf_shares[i_star - 1];
        let alpha = party_phase1(&ctx.fields, inst, share, ch, i_star == n).alpha;
        let aux = (i_star != n).then(|| self.aux_commit.clone());
        Ok(RepResponse {
            path,
            cmt: self.cmts[i_star - 1].clone(),
            alpha,
            aux,
        })
    }
}

/// Verifier side of one repetition: rebuilds h0 and the per-dimension digests.
pub fn verify_repetition<F: Field>(
    ctx: &Ctx<F>,
    inst: &Instance<F>,
    salt: &[u8],
    e: usize,
    ch: &MpcChallenge<Ext<F>>,
    i_star: usize,
    rsp: &RepResponse<F>,
) -> Result<RepCheck> {
    let p = &ctx.params;
    let fl = &ctx.fields;
    let t = &fl.fqme;
    let n = p.parties;
    if rsp.aux.is_some() != (i_star != n) {
        return Err(Error::Parse("aux must be present exactly when the hidden party is not N".into()));
    }
    if rsp.alpha.len() != p.r - 1 {
        return Err(Error::Length {
            expected: p.r - 1,
            got: rsp.alpha.len(),
        });
    }
    let leaves = ggm_recover(&ctx.sym, &rsp.path, salt, n, i_star)?;
    let mut shares: Vec<Option<WitnessBundle<F>>> = Vec::with_capacity(n);
    let mut cmts = Vec::with_capacity(n);
    for (idx, leaf) in leaves.iter().enumerate() {
        let i = idx + 1;
        match leaf {
            None => {
                shares.push(None);
                cmts.push(rsp.cmt.clone());
            }
            Some(leaf) if i == n => {
                let aux = rsp.aux.as_ref().expect("checked above");
                shares.push(Some(last_share(ctx, &leaf.seed, aux)));
                cmts.push(leaf_commit(ctx, salt, e, i, leaf, Some(aux)));
            }
            Some(leaf) => {
                shares.push(Some(leaf_share(ctx, &leaf.seed)));
                cmts.push(leaf_commit(ctx, salt, e, i, leaf, None));
            }
        }
    }
    let h0 = hash_commitments(&ctx.sym, salt, e, &cmts);

    let mut digests = Vec::with_capacity(p.dim());
    for d in 1..=p.dim() {
        let hidden_k = coordinate(i_star, d);
        let known_k = 3 - hidden_k;
        let mut known = WitnessBundle::zero(fl, p.k, p.r);
        let mut partial = WitnessBundle::zero(fl, p.k, p.r);
        for (idx, s) in shares.iter().enumerate() {
            if let Some(s) = s {
                if coordinate(idx + 1, d) == known_k {
                    known.add_assign(fl, s);
                } else {
                    partial.add_assign(fl, s);
                }
            }
        }
        let partial_has_n = hidden_k == 2 && i_star != n;
        let pk_known: Phase1<Ext<F>> = party_phase1(fl, inst, &known, ch, known_k == 2);
        let pk_part = party_phase1(fl, inst, &partial, ch, partial_has_n);
        let alpha_hidden = t.vec_add(&pk_part.alpha, &rsp.alpha);
        let alpha = t.vec_add(&pk_known.alpha, &alpha_hidden);
        let v_known = party_v(fl, &known, ch, &pk_known, &alpha)?;
        let v_hidden = t.neg(&v_known);
        let view = if known_k == 1 {
            MainView {
                alpha: [pk_known.alpha, alpha_hidden],
                v: [v_known, v_hidden],
            }
        } else {
            MainView {
                alpha: [alpha_hidden, pk_known.alpha],
                v: [v_hidden, v_known],
            }
        };
        digests.push(dimension_digest(ctx, salt, e, d, &view));
    }
    Ok(RepCheck { h0, digests })
}

/// h1 = H2(salt ‖ msg ‖ h0^(1) ‖ .. ‖ h0^(τ)).
fn hash_h1(sym: &Sym, salt: &[u8], msg: &[u8], h0s: &[Digest]) -> Digest {
    let mut x = sym.xof(domain::H2);
    x.absorb(salt).absorb_var(msg);
    for h in h0s {
        x.absorb(h);
    }
    x.output(sym.digest_bytes())
}

/// h2 = H4(msg ‖ pk ‖ salt ‖ h1 ‖ (H_1..H_D)^(1..τ)).
fn hash_h2(sym: &Sym, msg: &[u8], pk: &[u8], salt: &[u8], h1: &[u8], digests: &[Vec<Digest>]) -> Digest {
    let mut x = sym.xof(domain::H4);
    x.absorb_var(msg).absorb(pk).absorb(salt).absorb(h1);
    for rep in digests {
        for h in rep {
            x.absorb(h);
        }
    }
    x.output(sym.digest_bytes())
}

/// Salt and per-repetition root seeds from XOF(SIGN ‖ seed_sk ‖ rand ‖ msg).
pub(crate) fn signing_coins<F: Field>(ctx: &Ctx<F>, sk: &SecretKey<F>, msg: &[u8], rand: &[u8]) -> (Vec<u8>, Vec<Vec<u8>>) {
    let mut x = ctx.sym.xof(domain::SIGN);
    x.absorb(&sk.seed_sk).absorb_var(rand).absorb_var(msg);
    let mut st = x.stream();
    let salt = st.bytes(ctx.sym.salt_bytes());
    let roots = (0..ctx.params.tau).map(|_| st.bytes(ctx.sym.seed_bytes())).collect();
    (salt, roots)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeSignature<F: Field> {
    pub salt: Vec<u8>,
    pub h1: Digest,
    pub h2: Digest,
    pub responses: Vec<RepResponse<F>>,
}

fn check_variant<F: Field>(ctx: &Ctx<F>) -> Result<()> {
    if ctx.params.variant != Variant::Hypercube {
        return Err(Error::Params(format!("{} is not a hypercube parameter set", ctx.params.name)));
    }
    if ctx.params.parties < 2 {
        return Err(Error::Params("hypercube signing needs N >= 2".into()));
    }
    Ok(())
}

/// Deterministic in (sk, msg, rand).
pub fn sign<F: Field>(ctx: &Ctx<F>, pk: &PublicKey<F>, sk: &SecretKey<F>, msg: &[u8], rand: &[u8]) -> Result<HypercubeSignature<F>> {
    check_variant(ctx)?;
    if !validate_keypair(ctx, pk, sk) {
        return Err(Error::InvalidKeyPair);
    }
    let p = &ctx.params;
    let (salt, roots) = signing_coins(ctx, sk, msg, rand);
    let reps: Vec<ProverRepetition<F>> = roots
        .par_iter()
        .enumerate()
        .map(|(idx, root)| ProverRepetition::commit(ctx, sk, &salt, idx + 1, root))
        .collect::<Result<_>>()?;
    let h0s: Vec<Digest> = reps.iter().map(|r| r.h0.clone()).collect();
    let h1 = hash_h1(&ctx.sym, &salt, msg, &h0s);
    let chs = expand_challenge1(&ctx.sym, &h1, &ctx.fields.fqme, p.n, p.tau);
    let firsts: Vec<FirstResponse<F>> = reps
        .par_iter()
        .zip(&chs)
        .map(|(rep, ch)| rep.first_response(ctx, &pk.inst, &salt, ch))
        .collect::<Result<_>>()?;
    let digests: Vec<Vec<Digest>> = firsts.into_iter().map(|f| f.digests).collect();
    let pk_bytes = pk_to_bytes(ctx, pk);
    let h2 = hash_h2(&ctx.sym, msg, &pk_bytes, &salt, &h1, &digests);
    let hidden = expand_hidden_party(&ctx.sym, &h2, p.dim(), p.tau);
    let responses = reps
        .par_iter()
        .zip(&chs)
        .zip(&hidden)
        .map(|((rep, ch), &i)| rep.respond(ctx, &pk.inst, ch, i))
        .collect::<Result<_>>()?;
    Ok(HypercubeSignature { salt, h1, h2, responses })
}

/// Accepts iff the recomputed h1 and h2 equal the transmitted ones.
pub fn verify<F: Field>(ctx: &Ctx<F>, pk: &PublicKey<F>, msg: &[u8], sig: &HypercubeSignature<F>) -> Result<bool> {
    check_variant(ctx)?;
    let p = &ctx.params;
    if sig.responses.len() != p.tau {
        return Err(Error::Length {
            expected: p.tau,
            got: sig.responses.len(),
        });
    }
    let chs = expand_challenge1(&ctx.sym, &sig.h1, &ctx.fields.fqme, p.n, p.tau);
    let hidden = expand_hidden_party(&ctx.sym, &sig.h2, p.dim(), p.tau);
    let checks: Vec<RepCheck> = (0..p.tau)
        .into_par_iter()
        .map(|idx| verify_repetition(ctx, &pk.inst, &sig.salt, idx + 1, &chs[idx], hidden[idx], &sig.responses[idx]))
        .collect::<Result<_>>()?;
    let h0s: Vec<Digest> = checks.iter().map(|c| c.h0.clone()).collect();
    let h1 = hash_h1(&ctx.sym, &sig.salt, msg, &h0s);
    if h1 != sig.h1 {
        return Ok(false);
    }
    let digests: Vec<Vec<Digest>> = checks.into_iter().map(|c| c.digests).collect();
    let h2 = hash_h2(&ctx.sym, msg, &pk_to_bytes(ctx, pk), &sig.salt, &h1, &digests);
    Ok(h2 == sig.h2)
}

/// Exact encoded size in bits for the given hidden parties.
pub fn signature_bits<F: Field>(ctx: &Ctx<F>, hidden: &[usize]) -> usize {
    let p = &ctx.params;
    let lambda = p.lambda;
    let per_rep = p.dim() * lambda + 2 * lambda + (p.r - 1) * ctx.fields.fqme.bit_len();
    6 * lambda
        + hidden
            .iter()
            .map(|&i| per_rep + if i != p.parties { Aux::<F>::bit_len(ctx) } else { 0 })
            .sum::<usize>()
}

/// Largest possible encoding, reached when no hidden party equals N.
pub fn max_signature_len<F: Field>(ctx: &Ctx<F>) -> usize {
    signature_bits(ctx, &vec![1; ctx.params.tau]).div_ceil(8)
}

impl<F: Field> HypercubeSignature<F> {
    pub fn to_bytes(&self, ctx: &Ctx<F>) -> Vec<u8> {
        let mut w = BitWriter::new();
        w.put_bytes(&self.salt);
        w.put_bytes(&self.h1);
        w.put_bytes(&self.h2);
        for r in &self.responses {
            for s in &r.path {
                w.put_bytes(s);
            }
            w.put_bytes(&r.cmt);
            ctx.fields.fqme.write_vec(&r.alpha, &mut w);
            if let Some(aux) = &r.aux {
                aux.write(ctx, &mut w);
            }
        }
        w.finish()
    }

    /// Strict decoding: wrong length or non-zero padding is an error.
    pub fn from_bytes(ctx: &Ctx<F>, bytes: &[u8]) -> Result<Self> {
        check_variant(ctx)?;
        let p = &ctx.params;
        let sym = &ctx.sym;
        let mut r = BitReader::new(bytes);
        let salt = r.read_vec(sym.salt_bytes());
        let h1 = r.read_vec(sym.digest_bytes());
        let h2 = r.read_vec(sym.digest_bytes());
        let hidden = expand_hidden_party(sym, &h2, p.dim(), p.tau);
        let mut responses = Vec::with_capacity(p.tau);
        for &i in &hidden {
            let path = (0..p.dim()).map(|_| r.read_vec(sym.seed_bytes())).collect();
            let cmt = r.read_vec(sym.digest_bytes());
            let alpha = ctx.fields.fqme.read_vec(p.r - 1, &mut r);
            let aux = (i != p.parties).then(|| Aux::read(ctx, &mut r));
            responses.push(RepResponse { path, cmt, alpha, aux });
        }
        r.finish()?;
        Ok(Self { salt, h1, h2, responses })
    }
}

/// Output of the zero-knowledge simulator for one repetition.
#[derive(Debug, Clone)]
pub struct SimulatedRepetition<F: Field> {
    pub h0: Digest,
    pub digests: Vec<Digest>,
    pub rsp: RepResponse<F>,
}

/// Simulates one repetition for challenges fixed in advance, from the public
/// instance only: every leaf but i* is honest seed material (with random aux),
/// α_{i*} is uniform and v_{i*} cancels the other v shares.
pub fn simulate_repetition<F: Field>(
    ctx: &Ctx<F>,
    inst: &Instance<F>,
    salt: &[u8],
    e: usize,
    ch: &MpcChallenge<Ext<F>>,
    i_star: usize,
    coins: &[u8],
) -> Result<SimulatedRepetition<F>> {
    let p = &ctx.params;
    let fl = &ctx.fields;
    let t = &fl.fqme;
    let n = p.parties;
    let mut x = ctx.sym.xof(domain::SIGN);
    x.absorb_var(coins).absorb_u16(e);
    let mut st = x.stream();
    let root = st.bytes(ctx.sym.seed_bytes());
    let tree = ggm_expand(&ctx.sym, &root, salt, n)?;
    let aux = Aux::<F>::read(ctx, &mut st);
    let alpha_hidden = t.sample_vec(p.r - 1, &mut st);

    let mut alphas = Vec::with_capacity(n);
    let mut phase = Vec::with_capacity(n);
    for i in 1..=n {
        let leaf = tree.leaf(i);
        let share = if i == n {
            last_share(ctx, &leaf.seed, &aux)
        } else {
            leaf_share(ctx, &leaf.seed)
        };
        if i == i_star {
            alphas.push(alpha_hidden.clone());
            phase.push(None);
        } else {
            let p1 = party_phase1(fl, inst, &share, ch, i == n);
            alphas.push(p1.alpha.clone());
            phase.push(Some((share, p1)));
        }
    }
    let mut alpha = vec![t.zero(); p.r - 1];
    for a in &alphas {
        t.vec_add_assign(&mut alpha, a);
    }
    let mut vs = vec![t.zero(); n];
    let mut v_sum = t.zero();
    for (idx, ph) in phase.iter().enumerate() {
        if let Some((share, p1)) = ph {
            vs[idx] = party_v(fl, share, ch, p1, &alpha)?;
            v_sum = t.add(&v_sum, &vs[idx]);
        }
    }
    vs[i_star - 1] = t.neg(&v_sum);

    let cmts: Vec<Digest> = (1..=n).map(|i| leaf_commit(ctx, salt, e, i, tree.leaf(i), (i == n).then_some(&aux))).collect();
    let h0 = hash_commitments(&ctx.sym, salt, e, &cmts);
    let digests = (1..=p.dim())
        .map(|d| {
            let mut view = MainView {
                alpha: [vec![t.zero(); p.r - 1], vec![t.zero(); p.r - 1]],
                v: [t.zero(), t.zero()],
            };
            for i in 1..=n {
                let k = coordinate(i, d) - 1;
                t.vec_add_assign(&mut view.alpha[k], &alphas[i - 1]);
                view.v[k] = t.add(&view.v[k], &vs[i - 1]);
            }
            dimension_digest(ctx, salt, e, d, &view)
        })
        .collect();
    let rsp = RepResponse {
        path: tree.open(i_star)?,
        cmt: cmts[i_star - 1].clone(),
        alpha: alpha_hidden,
        aux: (i_star != n).then_some(aux),
    };
    Ok(SimulatedRepetition { h0, digests, rsp })
}

/// Full simulated transcript: per-repetition (h0, digests, response) for the
/// given first and second challenges.
pub fn simulate_transcript<F: Field>(
    ctx: &Ctx<F>,
    pk: &PublicKey<F>,
    salt: &[u8],
    chs: &[MpcChallenge<Ext<F>>],
    hidden: &[usize],
    coins: &[u8],
) -> Result<Vec<SimulatedRepetition<F>>> {
    chs.iter()
        .zip(hidden)
        .enumerate()
        .map(|(idx, (ch, &i))| simulate_repetition(ctx, &pk.inst, salt, idx + 1, ch, i, coins))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2m;
    use crate::keys::keygen;
    use crate::params::by_name;

    #[test]
    fn l1_round_trip_and_size() {
        let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-short").unwrap()).unwrap();
        let (pk, sk) = keygen(&ctx, &[1u8; 16]).unwrap();
        let sig = sign(&ctx, &pk, &sk, b"msg", b"r").unwrap();
        assert!(verify(&ctx, &pk, b"msg", &sig).unwrap());
        assert!(!verify(&ctx, &pk, b"msh", &sig).unwrap());
        let bytes = sig.to_bytes(&ctx);
        let hidden: Vec<usize> = sig.responses.iter().map(|r| if r.aux.is_some() { 1 } else { 256 }).collect();
        assert_eq!(bytes.len(), signature_bits(&ctx, &hidden).div_ceil(8));
        assert_eq!(HypercubeSignature::from_bytes(&ctx, &bytes).unwrap(), sig);
        assert_eq!(max_signature_len(&ctx), 5931);
    }
}

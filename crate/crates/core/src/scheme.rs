//! Byte-level signing API. Keys carry their parameter id, so callers only
//! pick a parameter set at key generation.

use crate::error::{Error, Result};
use crate::field::{Field, Gf256m, Gf2m};
use crate::keys::{keygen as keygen_typed, params_id_of, pk_from_bytes, pk_to_bytes, sk_from_bytes, sk_to_bytes};
use crate::params::{by_id, BuildField, Ctx, RankSdParams, Variant};
use crate::{hypercube, threshold};

/// Encoded key pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub pk: Vec<u8>,
    pub sk: Vec<u8>,
}

fn keygen_in<F: Field + BuildField>(p: &RankSdParams, seed: &[u8]) -> Result<KeyPair> {
    let ctx = Ctx::<F>::new(p)?;
    let (pk, sk) = keygen_typed(&ctx, seed)?;
    Ok(KeyPair {
        pk: pk_to_bytes(&ctx, &pk),
        sk: sk_to_bytes(&ctx, &sk),
    })
}

fn sign_in<F: Field + BuildField>(p: &RankSdParams, sk: &[u8], msg: &[u8], rand: &[u8]) -> Result<Vec<u8>> {
    let ctx = Ctx::<F>::new(p)?;
    let (pk, sk) = sk_from_bytes(&ctx, sk)?;
    Ok(match p.variant {
        Variant::Hypercube => hypercube::sign(&ctx, &pk, &sk, msg, rand)?.to_bytes(&ctx),
        Variant::Threshold => threshold::sign(&ctx, &pk, &sk, msg, rand)?.to_bytes(&ctx),
    })
}

fn verify_in<F: Field + BuildField>(p: &RankSdParams, pk: &[u8], msg: &[u8], sig: &[u8]) -> Result<bool> {
    let ctx = Ctx::<F>::new(p)?;
    let pk = pk_from_bytes(&ctx, pk)?;
    match p.variant {
        Variant::Hypercube => hypercube::verify(&ctx, &pk, msg, &hypercube::HypercubeSignature::from_bytes(&ctx, sig)?),
        Variant::Threshold => threshold::verify(&ctx, &pk, msg, &threshold::ThresholdSignature::from_bytes(&ctx, sig)?),
    }
}

fn public_of_in<F: Field + BuildField>(p: &RankSdParams, sk: &[u8]) -> Result<Vec<u8>> {
    let ctx = Ctx::<F>::new(p)?;
    let (pk, _) = sk_from_bytes(&ctx, sk)?;
    Ok(pk_to_bytes(&ctx, &pk))
}

macro_rules! dispatch {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p.q {
            2 => $f::<Gf2m>($p, $($arg),*),
            256 => $f::<Gf256m>($p, $($arg),*),
            q => Err(Error::Unsupported(format!("q = {q}"))),
        }
    };
}

/// Deterministic key pair from a λ-bit seed.
pub fn keygen(p: &RankSdParams, seed: &[u8]) -> Result<KeyPair> {
    dispatch!(p, keygen_in(seed))
}

/// Parameter set named by the id prefix of a key.
pub fn params_of_key(key: &[u8]) -> Result<RankSdParams> {
    by_id(params_id_of(key)?)
}

/// Signs with an encoded secret key. `rand` seeds the salt and all per
/// repetition randomness.
pub fn sign(sk: &[u8], msg: &[u8], rand: &[u8]) -> Result<Vec<u8>> {
    let p = params_of_key(sk)?;
    dispatch!(&p, sign_in(sk, msg, rand))
}

/// Ok(true) on accept, Ok(false) on a well-formed signature that fails to
/// verify, and Err for encodings that do not parse.
pub fn verify(pk: &[u8], msg: &[u8], sig: &[u8]) -> Result<bool> {
    let p = params_of_key(pk)?;
    dispatch!(&p, verify_in(pk, msg, sig))
}

/// Public key regenerated from an encoded secret key.
pub fn public_of(sk: &[u8]) -> Result<Vec<u8>> {
    let p = params_of_key(sk)?;
    dispatch!(&p, public_of_in(sk))
}

/// Worst-case encoded signature length for a parameter set.
pub fn max_signature_len(p: &RankSdParams) -> Result<usize> {
    crate::estimator::wire_size_max(p)?.ok_or_else(|| Error::Unsupported(format!("{} is estimator-only", p.name)))
}

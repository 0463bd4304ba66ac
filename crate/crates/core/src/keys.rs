//! Rank-SD key pairs: generation from a seed, validation and byte encodings.
//!
//! pk = id (2 bytes, big-endian) ‖ seed_H ‖ y (bit-packed, zero padded)
//! sk = id ‖ seed_sk

use crate::bits::{BitReader, BitSource, BitWriter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mpc::Instance;
use crate::params::Ctx;
use crate::rank::{annihilator, in_span, matrix_rank, rank_weight, support_basis, QPolyCoeffs};
use crate::symmetric::{domain, Sym};

/// Rejection-sampling budget shared by the support and coordinate loops.
pub const KEYGEN_MAX_TRIES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey<F: Field> {
    pub seed_h: Vec<u8>,
    /// Expanded H' and y.
    pub inst: Instance<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey<F: Field> {
    pub seed_sk: Vec<u8>,
    /// Length n−k block, equal to y − H'·x_B.
    pub x_a: Vec<F::Elem>,
    /// Length k block, the one that gets shared.
    pub x_b: Vec<F::Elem>,
    /// Support basis {1, u_2, .., u_r}.
    pub support: Vec<F::Elem>,
    pub annihilator: QPolyCoeffs<F::Elem>,
}

impl<F: Field> SecretKey<F> {
    pub fn x(&self) -> Vec<F::Elem> {
        let mut x = self.x_a.clone();
        x.extend_from_slice(&self.x_b);
        x
    }

    pub fn beta(&self) -> &[F::Elem] {
        &self.annihilator.beta
    }
}

/// H' ∈ F_{q^m}^{(n−k)×k}, row-major from XOF(MATRIX ‖ seed_H).
pub fn expand_h<F: Field>(sym: &Sym, f: &F, seed_h: &[u8], n: usize, k: usize) -> Vec<Vec<F::Elem>> {
    let mut x = sym.xof(domain::MATRIX);
    x.absorb(seed_h);
    let mut st = x.stream();
    (0..n - k).map(|_| f.sample_vec(k, &mut st)).collect()
}

/// Deterministic key generation from a λ-bit secret seed.
pub fn keygen<F: Field>(ctx: &Ctx<F>, seed_sk: &[u8]) -> Result<(PublicKey<F>, SecretKey<F>)> {
    let p = &ctx.params;
    let f = &ctx.fields.fqm;
    let sym = &ctx.sym;
    if seed_sk.len() != sym.seed_bytes() {
        return Err(Error::Length {
            expected: sym.seed_bytes(),
            got: seed_sk.len(),
        });
    }
    let mut xof = sym.xof(domain::KEYGEN);
    xof.absorb(seed_sk);
    let mut st = xof.stream();
    let seed_h = st.bytes(sym.seed_bytes());

    let mut tries = 0;
    let mut support = vec![f.one()];
    while support.len() < p.r {
        tries += 1;
        if tries > KEYGEN_MAX_TRIES {
            return Err(Error::SamplingExhausted(KEYGEN_MAX_TRIES));
        }
        let u = f.read(&mut st);
        if !in_span(f, &support, &u) {
            support.push(u);
        }
    }

    let lq = p.log2_q();
    let base = f.base();
    let coords = loop {
        tries += 1;
        if tries > KEYGEN_MAX_TRIES {
            return Err(Error::SamplingExhausted(KEYGEN_MAX_TRIES));
        }
        let mat: Vec<Vec<u8>> = (0..p.r).map(|_| (0..p.n).map(|_| st.take_bits(lq) as u8).collect()).collect();
        if matrix_rank(base, &mat) == p.r {
            break mat;
        }
    };
    let x: Vec<F::Elem> = (0..p.n)
        .map(|j| support.iter().zip(&coords).fold(f.zero(), |acc, (u, row)| f.add(&acc, &f.scale(row[j], u))))
        .collect();
    debug_assert_eq!(rank_weight(f, &x), p.r);

    let x_a = x[..p.n - p.k].to_vec();
    let x_b = x[p.n - p.k..].to_vec();
    let h_prime = expand_h(sym, f, &seed_h, p.n, p.k);
    let y = h_prime.iter().zip(&x_a).map(|(row, xa)| f.add(xa, &f.inner(row, &x_b))).collect();
    let annihilator = annihilator(f, &support)?;
    let pk = PublicKey {
        seed_h,
        inst: Instance { h_prime, y },
    };
    let sk = SecretKey {
        seed_sk: seed_sk.to_vec(),
        x_a,
        x_b,
        support,
        annihilator,
    };
    Ok((pk, sk))
}

/// H·x = y, W_R(x) = r, 1 ∈ supp(x) and the annihilator vanishes on every x_j.
pub fn validate_keypair<F: Field>(ctx: &Ctx<F>, pk: &PublicKey<F>, sk: &SecretKey<F>) -> bool {
    let p = &ctx.params;
    let f = &ctx.fields.fqm;
    if sk.x_a.len() != p.n - p.k || sk.x_b.len() != p.k || pk.inst.y.len() != p.n - p.k {
        return false;
    }
    let syndrome_ok = pk
        .inst
        .h_prime
        .iter()
        .zip(&sk.x_a)
        .zip(&pk.inst.y)
        .all(|((row, xa), y)| f.add(xa, &f.inner(row, &sk.x_b)) == *y);
    if !syndrome_ok {
        return false;
    }
    let x = sk.x();
    if rank_weight(f, &x) != p.r {
        return false;
    }
    let Ok(basis) = support_basis(f, &x) else {
        return false;
    };
    if !in_span(f, &basis, &f.one()) {
        return false;
    }
    sk.annihilator.r == p.r && x.iter().all(|xj| f.is_zero(&sk.annihilator.eval(f, xj)))
}

pub fn params_id_of(bytes: &[u8]) -> Result<u16> {
    if bytes.len() < 2 {
        return Err(Error::Parse("key shorter than its 2-byte parameter id".into()));
    }
    Ok(u16::from_be_bytes([bytes[0], bytes[1]]))
}

fn check_id<F: Field>(ctx: &Ctx<F>, bytes: &[u8]) -> Result<()> {
    let id = params_id_of(bytes)?;
    if id != ctx.params.id {
        return Err(Error::Parse(format!("key is for parameter id {id:#06x}, expected {:#06x}", ctx.params.id)));
    }
    Ok(())
}

pub fn pk_len<F: Field>(ctx: &Ctx<F>) -> usize {
    let p = &ctx.params;
    2 + ctx.sym.seed_bytes() + ((p.n - p.k) * ctx.fields.fqm.bit_len()).div_ceil(8)
}

pub fn pk_to_bytes<F: Field>(ctx: &Ctx<F>, pk: &PublicKey<F>) -> Vec<u8> {
    let mut w = BitWriter::new();
    w.put_bytes(&ctx.params.id.to_be_bytes());
    w.put_bytes(&pk.seed_h);
    ctx.fields.fqm.write_vec(&pk.inst.y, &mut w);
    w.finish()
}

pub fn pk_from_bytes<F: Field>(ctx: &Ctx<F>, bytes: &[u8]) -> Result<PublicKey<F>> {
    check_id(ctx, bytes)?;
    if bytes.len() != pk_len(ctx) {
        return Err(Error::Length {
            expected: pk_len(ctx),
            got: bytes.len(),
        });
    }
    let p = &ctx.params;
    let f = &ctx.fields.fqm;
    let mut r = BitReader::new(&bytes[2..]);
    let seed_h = r.read_vec(ctx.sym.seed_bytes());
    let y = f.read_vec(p.n - p.k, &mut r);
    r.finish()?;
    let h_prime = expand_h(&ctx.sym, f, &seed_h, p.n, p.k);
    Ok(PublicKey {
        seed_h,
        inst: Instance { h_prime, y },
    })
}

pub fn sk_to_bytes<F: Field>(ctx: &Ctx<F>, sk: &SecretKey<F>) -> Vec<u8> {
    let mut out = ctx.params.id.to_be_bytes().to_vec();
    out.extend_from_slice(&sk.seed_sk);
    out
}

/// Decodes a secret key and regenerates the full key pair from its seed.
pub fn sk_from_bytes<F: Field>(ctx: &Ctx<F>, bytes: &[u8]) -> Result<(PublicKey<F>, SecretKey<F>)> {
    check_id(ctx, bytes)?;
    if bytes.len() != 2 + ctx.sym.seed_bytes() {
        return Err(Error::Length {
            expected: 2 + ctx.sym.seed_bytes(),
            got: bytes.len(),
        });
    }
    keygen(ctx, &bytes[2..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2m;
    use crate::params::by_name;

    #[test]
    fn keygen_roundtrip_l1() {
        let ctx = Ctx::<Gf2m>::new(&by_name("ryde128-hyp-short").unwrap()).unwrap();
        let (pk, sk) = keygen(&ctx, &[5u8; 16]).unwrap();
        assert!(validate_keypair(&ctx, &pk, &sk));
        let pkb = pk_to_bytes(&ctx, &pk);
        assert_eq!(pkb.len(), pk_len(&ctx));
        assert_eq!(pk_from_bytes(&ctx, &pkb).unwrap(), pk);
        let (pk2, sk2) = sk_from_bytes(&ctx, &sk_to_bytes(&ctx, &sk)).unwrap();
        assert_eq!((pk2, sk2), (pk, sk));
        assert!(keygen(&ctx, &[5u8; 15]).is_err());
    }
}

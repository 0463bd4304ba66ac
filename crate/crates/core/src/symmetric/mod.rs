//! SHAKE-based hashing with one-byte domain separation, commitments, GGM seed
//! trees, Merkle trees and challenge expansion.

mod challenge;
mod ggm;
mod merkle;

pub use challenge::{expand_challenge1, expand_hidden_party, expand_opened_set};
pub use ggm::{ggm_expand, ggm_recover, Leaf, SeedTree};
pub use merkle::{merkle_auth_len, merkle_auth_max, merkle_verify, MerkleTree};

use crate::bits::BitSource;
use crate::error::{Error, Result};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::{Shake128, Shake128Reader, Shake256, Shake256Reader};

/// Domain-separation prefixes. 0..=4 are the five protocol hashes.
pub mod domain {
    pub const H0: u8 = 0;
    pub const H1: u8 = 1;
    pub const H2: u8 = 2;
    pub const H3: u8 = 3;
    pub const H4: u8 = 4;
    pub const MERKLE_LEAF: u8 = 5;
    pub const MERKLE_NODE: u8 = 6;
    pub const GGM: u8 = 7;
    /// Secret-key expansion (seed_H, support, coordinates).
    pub const KEYGEN: u8 = 8;
    /// H' expansion from seed_H.
    pub const MATRIX: u8 = 9;
    /// Leaf share expansion from a leaf seed.
    pub const SHARES: u8 = 10;
    pub const CHALLENGE1: u8 = 11;
    pub const CHALLENGE2: u8 = 12;
    /// Signing randomness: salt, root seeds, sharing randomness.
    pub const SIGN: u8 = 13;
}

pub type Digest = Vec<u8>;

/// Hash/XOF instantiation for a security level λ: SHAKE-128 for λ = 128,
/// SHAKE-256 otherwise. Digests and salts are 2λ bits, seeds λ bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sym {
    lambda: usize,
}

impl Sym {
    pub fn new(lambda: usize) -> Result<Self> {
        match lambda {
            128 | 192 | 256 => Ok(Self { lambda }),
            _ => Err(Error::Params(format!("security level {lambda} not in {{128, 192, 256}}"))),
        }
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn seed_bytes(&self) -> usize {
        self.lambda / 8
    }

    pub fn digest_bytes(&self) -> usize {
        self.lambda / 4
    }

    pub fn salt_bytes(&self) -> usize {
        self.lambda / 4
    }

    pub fn xof(&self, domain: u8) -> Xof {
        let mut x = if self.lambda == 128 {
            Xof::S128(Shake128::default())
        } else {
            Xof::S256(Shake256::default())
        };
        x.absorb(&[domain]);
        x
    }

    /// XOF(domain ‖ parts...) truncated to 2λ bits.
    pub fn hash(&self, domain: u8, parts: &[&[u8]]) -> Digest {
        let mut x = self.xof(domain);
        for p in parts {
            x.absorb(p);
        }
        x.output(self.digest_bytes())
    }

    /// H_i(payload), i in 0..=4.
    pub fn hash_i(&self, i: u8, payload: &[u8]) -> Digest {
        assert!(i <= 4, "protocol hash index {i} out of range");
        self.hash(i, &[payload])
    }

    /// cmt = H_0(salt ‖ e ‖ i ‖ state), e and i as 2-byte big-endian.
    pub fn commit(&self, salt: &[u8], e: usize, i: usize, state: &[u8]) -> Digest {
        self.hash(domain::H0, &[salt, &(e as u16).to_be_bytes(), &(i as u16).to_be_bytes(), state])
    }
}

#[derive(Clone)]
pub enum Xof {
    S128(Shake128),
    S256(Shake256),
}

impl Xof {
    pub fn absorb(&mut self, data: &[u8]) -> &mut Self {
        match self {
            Xof::S128(h) => h.update(data),
            Xof::S256(h) => h.update(data),
        }
        self
    }

    pub fn absorb_u16(&mut self, v: usize) -> &mut Self {
        self.absorb(&(v as u16).to_be_bytes())
    }

    pub fn absorb_u32(&mut self, v: usize) -> &mut Self {
        self.absorb(&(v as u32).to_be_bytes())
    }

    /// Length-prefixed (8-byte big-endian) absorption for variable-length input.
    pub fn absorb_var(&mut self, data: &[u8]) -> &mut Self {
        self.absorb(&(data.len() as u64).to_be_bytes());
        self.absorb(data)
    }

    pub fn stream(self) -> XofStream {
        let reader = match self {
            Xof::S128(h) => Reader::S128(h.finalize_xof()),
            Xof::S256(h) => Reader::S256(h.finalize_xof()),
        };
        XofStream { reader, acc: 0, nacc: 0 }
    }

    pub fn output(self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.stream().take_bytes(&mut out);
        out
    }
}

enum Reader {
    S128(Shake128Reader),
    S256(Shake256Reader),
}

/// XOF output as a bit stream (LSB-first within bytes).
pub struct XofStream {
    reader: Reader,
    acc: u128,
    nacc: usize,
}

impl XofStream {
    fn read_raw(&mut self, out: &mut [u8]) {
        match &mut self.reader {
            Reader::S128(r) => r.read(out),
            Reader::S256(r) => r.read(out),
        }
    }

    pub fn bytes(&mut self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        self.take_bytes(&mut out);
        out
    }
}

impl BitSource for XofStream {
    fn take_bits(&mut self, n: usize) -> u64 {
        debug_assert!(n <= 64);
        while self.nacc < n {
            let mut b = [0u8; 1];
            self.read_raw(&mut b);
            self.acc |= (b[0] as u128) << self.nacc;
            self.nacc += 8;
        }
        let out = if n == 64 { self.acc as u64 } else { (self.acc as u64) & ((1u64 << n) - 1) };
        self.acc >>= n;
        self.nacc -= n;
        out
    }

    fn take_bytes(&mut self, out: &mut [u8]) {
        if self.nacc == 0 {
            self.read_raw(out);
        } else {
            for b in out.iter_mut() {
                *b = self.take_bits(8) as u8;
            }
        }
    }
}

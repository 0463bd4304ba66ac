use crate::error::{Error, Result};
use serde::Serialize;

/// x^8 + x^4 + x^3 + x + 1, the smallest degree-8 irreducible over F_2.
pub const GF256_MODULUS: u16 = 0x11b;

const fn build_tables() -> ([u8; 256], [u8; 512]) {
    // 0x03 generates the multiplicative group modulo 0x11b.
    let mut log = [0u8; 256];
    let mut exp = [0u8; 512];
    let mut x: u16 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x as u8;
        exp[i + 255] = x as u8;
        log[x as usize] = i as u8;
        // x *= 3
        let mut y = (x << 1) ^ x;
        if y & 0x100 != 0 {
            y ^= GF256_MODULUS;
        }
        x = y;
        i += 1;
    }
    exp[510] = exp[0];
    (log, exp)
}

const TABLES: ([u8; 256], [u8; 512]) = build_tables();
static LOG: [u8; 256] = TABLES.0;
static EXP: [u8; 512] = TABLES.1;

#[inline]
pub fn gf256_mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    EXP[LOG[a as usize] as usize + LOG[b as usize] as usize]
}

pub fn gf256_inv(a: u8) -> Result<u8> {
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    Ok(EXP[255 - LOG[a as usize] as usize])
}

/// The base field F_q of a tower. Scalars are carried as `u8` in both cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BaseField {
    Gf2,
    Gf256,
}

impl BaseField {
    pub fn from_q(q: usize) -> Result<Self> {
        match q {
            2 => Ok(BaseField::Gf2),
            256 => Ok(BaseField::Gf256),
            _ => Err(Error::Params(format!("q = {q} is not supported (expected 2 or 256)"))),
        }
    }

    pub fn q(self) -> usize {
        match self {
            BaseField::Gf2 => 2,
            BaseField::Gf256 => 256,
        }
    }

    pub fn log2_q(self) -> usize {
        match self {
            BaseField::Gf2 => 1,
            BaseField::Gf256 => 8,
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self {
            BaseField::Gf2 => a & b,
            BaseField::Gf256 => gf256_mul(a, b),
        }
    }

    pub fn inv(self, a: u8) -> Result<u8> {
        match self {
            BaseField::Gf2 if a == 1 => Ok(1),
            BaseField::Gf2 => Err(Error::ZeroInverse),
            BaseField::Gf256 => gf256_inv(a),
        }
    }

    pub fn pow(self, a: u8, e: usize) -> u8 {
        (0..e).fold(1u8, |acc, _| self.mul(acc, a))
    }

    /// All field elements in byte order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        (0..self.q()).map(|x| x as u8)
    }
}

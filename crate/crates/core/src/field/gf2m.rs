use super::irreducible;
use super::{BaseField, Field};
use crate::bits::{BitSource, BitWriter};
use crate::error::{Error, Result};

/// F_{2^m} for m ≤ 63 in a polynomial basis, one machine word per element
/// (coefficient i at bit i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2m {
    m: usize,
    modulus: u64,
}

#[inline]
fn clmul(a: u64, mut b: u64) -> u128 {
    let a = a as u128;
    let mut r = 0u128;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    r
}

impl Gf2m {
    /// Builds F_{2^m} over the smallest irreducible polynomial of degree m.
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > 63 {
            return Err(Error::Params(format!("binary extension degree {m} out of range 1..=63")));
        }
        Ok(Self {
            m,
            modulus: irreducible::smallest_gf2(m),
        })
    }

    /// Builds F_{2^m} over an explicit modulus (bit i = coefficient of x^i,
    /// including the leading bit), checking irreducibility.
    pub fn with_modulus(modulus: u64) -> Result<Self> {
        let m = 63 - modulus.leading_zeros() as usize;
        if m == 0 || !irreducible::is_irreducible_gf2(modulus) {
            return Err(Error::Params(format!("{modulus:#x} is not an irreducible polynomial")));
        }
        Ok(Self { m, modulus })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    fn reduce(&self, mut x: u128) -> u64 {
        let m = self.m;
        let f = self.modulus as u128;
        let mut bit = 2 * m - 2;
        while bit >= m {
            if (x >> bit) & 1 == 1 {
                x ^= f << (bit - m);
            }
            bit -= 1;
        }
        x as u64
    }
}

impl Field for Gf2m {
    type Elem = u64;

    fn base(&self) -> BaseField {
        BaseField::Gf2
    }

    fn degree(&self) -> usize {
        self.m
    }

    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(clmul(*a, *b))
    }

    fn scale(&self, c: u8, a: &u64) -> u64 {
        if c & 1 == 1 {
            *a
        } else {
            0
        }
    }

    fn to_coeffs(&self, a: &u64) -> Vec<u8> {
        (0..self.m).map(|i| ((a >> i) & 1) as u8).collect()
    }

    fn from_coeffs(&self, coeffs: &[u8]) -> u64 {
        coeffs.iter().take(self.m).enumerate().fold(0, |acc, (i, &c)| acc | (((c & 1) as u64) << i))
    }

    fn write(&self, a: &u64, w: &mut BitWriter) {
        w.put_bits(*a, self.m);
    }

    fn read(&self, src: &mut dyn BitSource) -> u64 {
        src.take_bits(self.m)
    }
}

//! Binary field tower: the base field F_q (q = 2 or 256), its degree-m extension
//! F_{q^m} and a further degree-eta extension F_{q^{m eta}}.
//!
//! Elements are plain `Copy` values; the arithmetic lives on a field descriptor
//! (`Gf2m`, `Gf256m`, `Tower<F>`) holding the modulus. Everything above this
//! module is generic over [`Field`].

mod base;
mod gf256m;
mod gf2m;
pub mod irreducible;
mod tower;

pub use base::{gf256_inv, gf256_mul, BaseField, GF256_MODULUS};
pub use gf256m::Gf256m;
pub use gf2m::Gf2m;
pub use tower::{Tower, MAX_ETA};

use crate::bits::{BitSource, BitWriter};
use crate::error::{Error, Result};
use std::fmt::Debug;
use std::hash::Hash;

/// A finite field of characteristic 2, viewed as a vector space over its base
/// field F_q. Subtraction and negation coincide with addition.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Copy + Clone + Debug + Default + PartialEq + Eq + Hash + Send + Sync;

    /// The prime-power base field F_q this field is built over.
    fn base(&self) -> BaseField;

    /// Dimension over F_q.
    fn degree(&self) -> usize;

    fn one(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplication by a base-field scalar.
    fn scale(&self, c: u8, a: &Self::Elem) -> Self::Elem;

    /// Coordinates over F_q in the polynomial basis, lowest first.
    fn to_coeffs(&self, a: &Self::Elem) -> Vec<u8>;

    fn from_coeffs(&self, coeffs: &[u8]) -> Self::Elem;

    fn zero(&self) -> Self::Elem {
        Self::Elem::default()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == Self::Elem::default()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        *a
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn from_base(&self, c: u8) -> Self::Elem {
        self.scale(c, &self.one())
    }

    /// Serialized width in bits.
    fn bit_len(&self) -> usize {
        self.degree() * self.base().log2_q()
    }

    /// Standalone encoding width in bytes.
    fn byte_len(&self) -> usize {
        self.bit_len().div_ceil(8)
    }

    /// x ↦ x^{q^i}.
    fn frobenius(&self, a: &Self::Elem, i: usize) -> Self::Elem {
        let mut x = *a;
        for _ in 0..i * self.base().log2_q() {
            x = self.square(&x);
        }
        x
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.square(&b);
            e >>= 1;
        }
        acc
    }

    /// Inverse as a^{2^n - 2} = prod_{i=1}^{n-1} a^{2^i}, n the bit length.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        let mut acc = self.one();
        let mut t = *a;
        for _ in 1..self.bit_len() {
            t = self.square(&t);
            acc = self.mul(&acc, &t);
        }
        Ok(acc)
    }

    fn write(&self, a: &Self::Elem, w: &mut BitWriter) {
        let lq = self.base().log2_q();
        for c in self.to_coeffs(a) {
            w.put_bits(c as u64, lq);
        }
    }

    fn read(&self, src: &mut dyn BitSource) -> Self::Elem {
        let lq = self.base().log2_q();
        let coeffs: Vec<u8> = (0..self.degree()).map(|_| src.take_bits(lq) as u8).collect();
        self.from_coeffs(&coeffs)
    }

    /// Standalone byte encoding (zero padded to a byte boundary).
    fn to_bytes(&self, a: &Self::Elem) -> Vec<u8> {
        let mut w = BitWriter::new();
        self.write(a, &mut w);
        w.finish()
    }

    fn from_bytes(&self, bytes: &[u8]) -> Result<Self::Elem> {
        if bytes.len() != self.byte_len() {
            return Err(Error::Length {
                expected: self.byte_len(),
                got: bytes.len(),
            });
        }
        let mut r = crate::bits::BitReader::new(bytes);
        let x = self.read(&mut r);
        r.finish()?;
        Ok(x)
    }

    // Vector helpers used throughout the protocol code.

    fn vec_add(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    fn vec_add_assign(&self, a: &mut [Self::Elem], b: &[Self::Elem]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = self.add(x, y);
        }
    }

    fn inner(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter().zip(b).fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }

    fn sample_vec(&self, len: usize, src: &mut dyn BitSource) -> Vec<Self::Elem> {
        (0..len).map(|_| self.read(src)).collect()
    }

    fn write_vec(&self, v: &[Self::Elem], w: &mut BitWriter) {
        for x in v {
            self.write(x, w);
        }
    }

    fn read_vec(&self, len: usize, src: &mut dyn BitSource) -> Vec<Self::Elem> {
        self.sample_vec(len, src)
    }
}

use super::irreducible;
use super::{gf256_mul, BaseField, Field};
use crate::error::{Error, Result};
use std::sync::{Mutex, OnceLock};

/// Largest supported extension degree over F_256.
pub const MAX_M: usize = 32;

/// F_{256^m} in a polynomial basis over F_256, one byte per coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf256m {
    m: usize,
    // c_0..c_{m-1} of the monic modulus X^m + sum c_j X^j
    modulus: [u8; MAX_M],
}

fn modulus_cache() -> &'static Mutex<Vec<Option<[u8; MAX_M]>>> {
    static CACHE: OnceLock<Mutex<Vec<Option<[u8; MAX_M]>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![None; MAX_M + 1]))
}

impl Gf256m {
    /// Builds F_{256^m} over the smallest irreducible polynomial of degree m
    /// (searched once per degree and cached).
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::Params(format!("F_256 extension degree {m} out of range 1..={MAX_M}")));
        }
        if m == 1 {
            return Ok(Self { m, modulus: [0; MAX_M] });
        }
        if let Some(md) = modulus_cache().lock().unwrap()[m] {
            return Ok(Self { m, modulus: md });
        }
        let coef = Gf256m::new(1)?;
        let poly = irreducible::smallest_irreducible(&coef, m);
        let mut md = [0u8; MAX_M];
        for (j, c) in poly.iter().take(m).enumerate() {
            md[j] = c[0];
        }
        modulus_cache().lock().unwrap()[m] = Some(md);
        Ok(Self { m, modulus: md })
    }

    /// Builds F_{256^m} over the monic polynomial X^m + sum c_j X^j, checking
    /// irreducibility.
    pub fn with_modulus(low_coeffs: &[u8]) -> Result<Self> {
        let m = low_coeffs.len();
        if m == 0 || m > MAX_M {
            return Err(Error::Params(format!("F_256 extension degree {m} out of range")));
        }
        let mut md = [0u8; MAX_M];
        md[..m].copy_from_slice(low_coeffs);
        let coef = Gf256m::new(1)?;
        let mut poly: Vec<[u8; MAX_M]> = low_coeffs.iter().map(|&c| coef.from_base(c)).collect();
        poly.push(coef.one());
        if !irreducible::is_irreducible(&coef, &poly) {
            return Err(Error::Params("modulus is not irreducible".into()));
        }
        Ok(Self { m, modulus: md })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Low coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus[..self.m]
    }
}

impl Field for Gf256m {
    type Elem = [u8; MAX_M];

    fn base(&self) -> BaseField {
        BaseField::Gf256
    }

    fn degree(&self) -> usize {
        self.m
    }

    fn one(&self) -> Self::Elem {
        let mut e = [0u8; MAX_M];
        e[0] = 1;
        e
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut r = [0u8; MAX_M];
        for i in 0..self.m {
            r[i] = a[i] ^ b[i];
        }
        r
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let m = self.m;
        let mut prod = [0u8; 2 * MAX_M];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] ^= gf256_mul(a[i], b[j]);
            }
        }
        for d in (m..2 * m - 1).rev() {
            let t = prod[d];
            if t != 0 {
                for j in 0..m {
                    prod[d - m + j] ^= gf256_mul(t, self.modulus[j]);
                }
            }
        }
        let mut r = [0u8; MAX_M];
        r[..m].copy_from_slice(&prod[..m]);
        r
    }

    fn scale(&self, c: u8, a: &Self::Elem) -> Self::Elem {
        let mut r = [0u8; MAX_M];
        for i in 0..self.m {
            r[i] = gf256_mul(c, a[i]);
        }
        r
    }

    fn to_coeffs(&self, a: &Self::Elem) -> Vec<u8> {
        a[..self.m].to_vec()
    }

    fn from_coeffs(&self, coeffs: &[u8]) -> Self::Elem {
        let mut r = [0u8; MAX_M];
        let n = coeffs.len().min(self.m);
        r[..n].copy_from_slice(&coeffs[..n]);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_the_base_field() {
        let f = Gf256m::new(1).unwrap();
        for a in 0..=255u8 {
            for b in [0u8, 1, 2, 0x53, 0xca, 255] {
                assert_eq!(f.mul(&f.from_base(a), &f.from_base(b))[0], gf256_mul(a, b));
            }
        }
    }

    #[test]
    fn inverse_in_extension() {
        let f = Gf256m::new(3).unwrap();
        let a = f.from_coeffs(&[7, 0, 200]);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
    }
}

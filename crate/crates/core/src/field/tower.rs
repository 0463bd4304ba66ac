use super::irreducible;
use super::{BaseField, Field};
use crate::bits::{BitSource, BitWriter};
use crate::error::{Error, Result};

/// Largest supported second extension degree.
pub const MAX_ETA: usize = 4;

/// F_{q^{m eta}} = F[Y] / (mod), F = F_{q^m}. For eta = 1 the modulus is Y and
/// the arithmetic coincides with that of F.
#[derive(Debug, Clone)]
pub struct Tower<F: Field> {
    inner: F,
    eta: usize,
    // low coefficients of the monic modulus
    modulus: [F::Elem; MAX_ETA],
}

impl<F: Field> Tower<F> {
    pub fn new(inner: F, eta: usize) -> Result<Self> {
        if eta == 0 || eta > MAX_ETA {
            return Err(Error::Params(format!("tower degree {eta} out of range 1..={MAX_ETA}")));
        }
        let poly = irreducible::smallest_irreducible(&inner, eta);
        let mut modulus = [inner.zero(); MAX_ETA];
        modulus[..eta].copy_from_slice(&poly[..eta]);
        Ok(Self { inner, eta, modulus })
    }

    pub fn eta(&self) -> usize {
        self.eta
    }

    /// The subfield F_{q^m}.
    pub fn inner(&self) -> &F {
        &self.inner
    }

    /// Low coefficients of the monic tower modulus.
    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus[..self.eta]
    }

    pub fn embed(&self, x: &F::Elem) -> [F::Elem; MAX_ETA] {
        let mut r = [self.inner.zero(); MAX_ETA];
        r[0] = *x;
        r
    }

    /// Product of a tower element with an element of the subfield.
    pub fn mul_inner(&self, a: &[F::Elem; MAX_ETA], x: &F::Elem) -> [F::Elem; MAX_ETA] {
        let mut r = [self.inner.zero(); MAX_ETA];
        for i in 0..self.eta {
            r[i] = self.inner.mul(&a[i], x);
        }
        r
    }
}

impl<F: Field> Field for Tower<F> {
    type Elem = [F::Elem; MAX_ETA];

    fn base(&self) -> BaseField {
        self.inner.base()
    }

    fn degree(&self) -> usize {
        self.eta * self.inner.degree()
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.inner.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut r = [self.inner.zero(); MAX_ETA];
        for i in 0..self.eta {
            r[i] = self.inner.add(&a[i], &b[i]);
        }
        r
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.inner;
        let e = self.eta;
        if e == 1 {
            return self.embed(&f.mul(&a[0], &b[0]));
        }
        let mut prod = [f.zero(); 2 * MAX_ETA];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = f.add(&prod[i + j], &f.mul(&a[i], &b[j]));
            }
        }
        for d in (e..2 * e - 1).rev() {
            let t = prod[d];
            if !f.is_zero(&t) {
                for j in 0..e {
                    prod[d - e + j] = f.sub(&prod[d - e + j], &f.mul(&t, &self.modulus[j]));
                }
            }
        }
        let mut r = [f.zero(); MAX_ETA];
        r[..e].copy_from_slice(&prod[..e]);
        r
    }

    fn scale(&self, c: u8, a: &Self::Elem) -> Self::Elem {
        let mut r = [self.inner.zero(); MAX_ETA];
        for i in 0..self.eta {
            r[i] = self.inner.scale(c, &a[i]);
        }
        r
    }

    fn to_coeffs(&self, a: &Self::Elem) -> Vec<u8> {
        a[..self.eta].iter().flat_map(|x| self.inner.to_coeffs(x)).collect()
    }

    fn from_coeffs(&self, coeffs: &[u8]) -> Self::Elem {
        let m = self.inner.degree();
        let mut r = [self.inner.zero(); MAX_ETA];
        for (i, chunk) in coeffs.chunks(m).take(self.eta).enumerate() {
            r[i] = self.inner.from_coeffs(chunk);
        }
        r
    }

    fn write(&self, a: &Self::Elem, w: &mut BitWriter) {
        for x in &a[..self.eta] {
            self.inner.write(x, w);
        }
    }

    fn read(&self, src: &mut dyn BitSource) -> Self::Elem {
        let mut r = [self.inner.zero(); MAX_ETA];
        for x in r.iter_mut().take(self.eta) {
            *x = self.inner.read(src);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2m;

    #[test]
    fn eta_one_matches_inner() {
        let f = Gf2m::new(7).unwrap();
        let t = Tower::new(f.clone(), 1).unwrap();
        for a in [0u64, 1, 5, 77, 127] {
            for b in [0u64, 3, 64, 99] {
                assert_eq!(t.mul(&t.embed(&a), &t.embed(&b))[0], f.mul(&a, &b));
            }
        }
    }

    #[test]
    fn quadratic_over_odd_degree_is_y2_y_1() {
        let t = Tower::new(Gf2m::new(31).unwrap(), 2).unwrap();
        assert_eq!(t.modulus(), &[1u64, 1]);
    }
}

//! Rank-metric helpers over F_{q^m}: coefficient matrices, rank weight, support
//! bases, annihilator q-polynomials and Gaussian binomials.

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// The m×n matrix over F_q whose column j holds the coordinates of x_j.
pub fn matrix_of<F: Field>(f: &F, x: &[F::Elem]) -> Vec<Vec<u8>> {
    let cols: Vec<Vec<u8>> = x.iter().map(|e| f.to_coeffs(e)).collect();
    (0..f.degree()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Inverse of [`matrix_of`].
pub fn from_matrix<F: Field>(f: &F, mat: &[Vec<u8>]) -> Vec<F::Elem> {
    let n = mat.first().map_or(0, |r| r.len());
    (0..n)
        .map(|j| {
            let col: Vec<u8> = mat.iter().map(|row| row[j]).collect();
            f.from_coeffs(&col)
        })
        .collect()
}

/// Reduces `mat` to row echelon form in place and returns the pivot columns.
pub fn echelon(base: BaseField, mat: &mut [Vec<u8>]) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| mat[i][c] != 0) else {
            continue;
        };
        mat.swap(r, p);
        let inv = base.inv(mat[r][c]).expect("pivot is non-zero");
        for v in mat[r].iter_mut() {
            *v = base.mul(*v, inv);
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let t = mat[i][c];
                for j in 0..cols {
                    let s = base.mul(t, mat[r][j]);
                    mat[i][j] = base.add(mat[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn matrix_rank(base: BaseField, mat: &[Vec<u8>]) -> usize {
    let mut m = mat.to_vec();
    echelon(base, &mut m).len()
}

/// W_R(x): rank over F_q of the coefficient matrix.
pub fn rank_weight<F: Field>(f: &F, x: &[F::Elem]) -> usize {
    matrix_rank(f.base(), &matrix_of(f, x))
}

/// Basis of the F_q-span of the coordinates of x: the coordinates sitting in the
/// pivot columns of the echelon form, in column order.
pub fn support_basis<F: Field>(f: &F, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let mut mat = matrix_of(f, x);
    let pivots = echelon(f.base(), &mut mat);
    if pivots.is_empty() {
        return Err(Error::ZeroSupport);
    }
    Ok(pivots.into_iter().map(|j| x[j]).collect())
}

/// True when `y` lies in the F_q-span of `basis`.
pub fn in_span<F: Field>(f: &F, basis: &[F::Elem], y: &F::Elem) -> bool {
    let mut v = basis.to_vec();
    let r = rank_weight(f, &v);
    v.push(*y);
    rank_weight(f, &v) == r
}

/// Normalized annihilator L(X) = (X^{q^r} - X) + sum_{k=1}^{r-1} beta_k (X^{q^k} - X).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolyCoeffs<E> {
    pub beta: Vec<E>,
    pub r: usize,
}

impl<E: Copy> QPolyCoeffs<E> {
    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut pw = *x;
        let mut acc = f.zero();
        for k in 1..=self.r {
            pw = f.frobenius(&pw, 1);
            let term = f.sub(&pw, x);
            acc = if k == self.r {
                f.add(&acc, &term)
            } else {
                f.add(&acc, &f.mul(&self.beta[k - 1], &term))
            };
        }
        acc
    }

    /// Monic coefficients (l_0, ..., l_r) with L = sum l_k X^{q^k}.
    pub fn monic_coeffs<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        let mut l0 = f.one();
        for b in &self.beta {
            l0 = f.add(&l0, b);
        }
        let mut out = vec![f.neg(&l0)];
        out.extend_from_slice(&self.beta);
        out.push(f.one());
        out
    }
}

fn eval_qpoly<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut pw = *x;
    let mut acc = f.zero();
    for (k, c) in p.iter().enumerate() {
        if k > 0 {
            pw = f.frobenius(&pw, 1);
        }
        acc = f.add(&acc, &f.mul(c, &pw));
    }
    acc
}

/// Annihilator of span(U) via L_{i+1} = L_i^q - L_i(u_{i+1})^{q-1} L_i, L_0 = X.
pub fn annihilator<F: Field>(f: &F, basis: &[F::Elem]) -> Result<QPolyCoeffs<F::Elem>> {
    let r = basis.len();
    if r == 0 || r > f.degree() {
        return Err(Error::Params(format!("support dimension {r} out of range 1..={}", f.degree())));
    }
    let q = f.base().q() as u64;
    let mut p = vec![f.one()];
    for u in basis {
        let c = eval_qpoly(f, &p, u);
        if f.is_zero(&c) {
            return Err(Error::DependentBasis);
        }
        let cq = f.pow(&c, q - 1);
        let mut next = vec![f.zero(); p.len() + 1];
        for (k, pk) in p.iter().enumerate() {
            next[k + 1] = f.frobenius(pk, 1);
            next[k] = f.sub(&next[k], &f.mul(&cq, pk));
        }
        p = next;
    }
    if !f.is_zero(&eval_qpoly(f, &p, &f.one())) {
        return Err(Error::OneNotInSpan);
    }
    debug_assert_eq!(p[r], f.one());
    Ok(QPolyCoeffs { beta: p[1..r].to_vec(), r })
}

/// Number of r-dimensional subspaces of F_q^m, exactly, plus its log2.
pub fn gaussian_binomial(m: usize, r: usize, q: u64) -> Result<(BigUint, f64)> {
    if r > m {
        return Err(Error::Params(format!("r = {r} exceeds m = {m}")));
    }
    let q = BigUint::from(q);
    let pw = |e: usize| q.pow(e as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= pw(m) - pw(i);
        den *= pw(r) - pw(i);
    }
    let v = num / den;
    let l = log2_big(&v);
    Ok((v, l))
}

/// log2 of a positive big integer from its bit length and top 64 bits.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2m;

    #[test]
    fn gf4_examples() {
        let f = Gf2m::new(2).unwrap();
        let w = 0b10u64;
        assert_eq!(rank_weight(&f, &[1, w]), 2);
        assert_eq!(support_basis(&f, &[1, w]).unwrap(), vec![1, w]);
        assert_eq!(support_basis(&f, &[1, 1, 1]).unwrap(), vec![1]);
        assert_eq!(rank_weight(&f, &[0, 0]), 0);
        assert_eq!(support_basis(&f, &[0, 0]), Err(Error::ZeroSupport));
        // L = X^4 - X over GF(4)
        let l = annihilator(&f, &[1, w]).unwrap();
        assert_eq!(l.beta, vec![0]);
        let l1 = annihilator(&f, &[1]).unwrap();
        assert!(l1.beta.is_empty());
        assert_eq!(l1.eval(&f, &w), f.add(&f.square(&w), &w));
    }

    #[test]
    fn annihilator_errors() {
        let f = Gf2m::new(4).unwrap();
        assert_eq!(annihilator(&f, &[1, 1]), Err(Error::DependentBasis));
        assert_eq!(annihilator(&f, &[0b10]), Err(Error::OneNotInSpan));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(5, 0, 2).unwrap().0, BigUint::one());
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap().0, BigUint::from(3u32));
        // exact value from an independent big-integer evaluation: log2 = 211.7905...
        let (_, l) = gaussian_binomial(31, 10, 2).unwrap();
        assert!((l - 211.7905).abs() < 1e-3, "{l}");
        // q^{r(m-r)} <= [m r]_q < q^{r(m-r)} * prod_{i>=1} 1/(1 - q^-i), the
        // product being 3.4627... (1.792 bits) for q = 2
        for (m, r) in [(31usize, 10usize), (37, 13), (43, 17), (20, 5), (8, 4)] {
            let (_, l) = gaussian_binomial(m, r, 2).unwrap();
            let base = (r * (m - r)) as f64;
            assert!(l >= base && l < base + 1.7925, "{m} {r} {l}");
        }
        assert!(gaussian_binomial(3, 4, 2).is_err());
    }
}

//! (ℓ+1, N) Shamir sharing with evaluation points in the base field F_q.
//!
//! Party i ≤ q−1 evaluates at the i-th non-zero element of F_q in byte order,
//! i.e. at the byte value i. F_256 has only 255 non-zero elements, so party 256
//! sits at the point at infinity, whose share is the leading coefficient of the
//! sharing polynomial. Because every point is fixed by x ↦ x^q, applying the
//! Frobenius map to shares commutes with interpolation.

use crate::bits::BitSource;
use crate::error::{Error, Result};
use crate::field::{BaseField, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(u8),
    Infinity,
}

/// Evaluation point of party i (1-based) over F_q.
pub fn point_of(base: BaseField, i: usize) -> Result<Point> {
    let q = base.q();
    match i {
        0 => Err(Error::Shares("party indices start at 1".into())),
        i if i < q => Ok(Point::Finite(i as u8)),
        i if i == q => Ok(Point::Infinity),
        _ => Err(Error::Shares(format!("party {i} has no evaluation point over F_{q}"))),
    }
}

/// The coefficient row (1, t, .., t^ℓ), or (0, .., 0, 1) at infinity.
fn monomials(base: BaseField, t: Point, ell: usize) -> Vec<u8> {
    match t {
        Point::Finite(x) => (0..=ell).map(|j| base.pow(x, j)).collect(),
        Point::Infinity => {
            let mut v = vec![0; ell + 1];
            v[ell] = 1;
            v
        }
    }
}

/// Share of the polynomial s + Σ_j r_j X^j at `t`.
pub fn eval_share<F: Field>(f: &F, secret: &F::Elem, coeffs: &[F::Elem], t: Point) -> F::Elem {
    match t {
        Point::Infinity => coeffs.last().copied().unwrap_or(*secret),
        Point::Finite(x) => {
            let mut acc = f.zero();
            for c in coeffs.iter().rev() {
                acc = f.add(&f.scale(x, &acc), c);
            }
            f.add(&f.scale(x, &acc), secret)
        }
    }
}

/// Interpolation weights w with P(target) = Σ w_j P(points_j), for |points| = ℓ+1.
pub fn weights(base: BaseField, points: &[Point], target: Point) -> Result<Vec<u8>> {
    let size = points.len();
    if size == 0 {
        return Err(Error::Shares("empty point set".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != size {
        return Err(Error::Shares("duplicate evaluation points".into()));
    }
    let ell = size - 1;
    // Solve Vᵀ w = row(target), V having one monomial row per point.
    let rows: Vec<Vec<u8>> = points.iter().map(|&p| monomials(base, p, ell)).collect();
    let rhs = monomials(base, target, ell);
    let mut aug: Vec<Vec<u8>> = (0..size)
        .map(|c| {
            let mut row: Vec<u8> = (0..size).map(|j| rows[j][c]).collect();
            row.push(rhs[c]);
            row
        })
        .collect();
    for col in 0..size {
        let piv = (col..size)
            .find(|&r| aug[r][col] != 0)
            .ok_or_else(|| Error::Shares("singular interpolation system".into()))?;
        aug.swap(col, piv);
        let inv = base.inv(aug[col][col])?;
        for v in aug[col].iter_mut() {
            *v = base.mul(*v, inv);
        }
        for r in 0..size {
            if r != col && aug[r][col] != 0 {
                let t = aug[r][col];
                for j in 0..=size {
                    let s = base.mul(t, aug[col][j]);
                    aug[r][j] = base.add(aug[r][j], s);
                }
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[size]).collect())
}

/// Applies precomputed weights to one share per point.
pub fn combine<F: Field>(f: &F, w: &[u8], shares: &[F::Elem]) -> F::Elem {
    w.iter().zip(shares).fold(f.zero(), |acc, (&c, s)| f.add(&acc, &f.scale(c, s)))
}

/// Coordinate-wise combination of share vectors.
pub fn combine_vec<F: Field>(f: &F, w: &[u8], shares: &[&[F::Elem]]) -> Vec<F::Elem> {
    let len = shares.first().map_or(0, |s| s.len());
    (0..len)
        .map(|c| w.iter().zip(shares).fold(f.zero(), |acc, (&wc, s)| f.add(&acc, &f.scale(wc, &s[c]))))
        .collect()
}

/// Shares of every coordinate of `secret` for parties 1..=n. Result is
/// party-major: out[i−1][c] is party i's share of coordinate c.
pub fn share_vec<F: Field>(f: &F, secret: &[F::Elem], ell: usize, n: usize, src: &mut dyn BitSource) -> Result<Vec<Vec<F::Elem>>> {
    let points: Vec<Point> = (1..=n).map(|i| point_of(f.base(), i)).collect::<Result<_>>()?;
    let polys: Vec<Vec<F::Elem>> = secret.iter().map(|_| f.sample_vec(ell, src)).collect();
    Ok(points
        .iter()
        .map(|&t| secret.iter().zip(&polys).map(|(s, r)| eval_share(f, s, r, t)).collect())
        .collect())
}

fn check_set(ell: usize, points: &[Point], shares: usize) -> Result<()> {
    if points.len() != ell + 1 || shares != ell + 1 {
        return Err(Error::Shares(format!("need exactly {} shares, got {}", ell + 1, points.len().min(shares))));
    }
    Ok(())
}

/// Secret from ℓ+1 shares: interpolation at 0.
pub fn reconstruct<F: Field>(f: &F, ell: usize, points: &[Point], shares: &[F::Elem]) -> Result<F::Elem> {
    check_set(ell, points, shares.len())?;
    Ok(combine(f, &weights(f.base(), points, Point::Finite(0))?, shares))
}

/// Shares at every point of `targets`, from ℓ+1 shares.
pub fn expand<F: Field>(f: &F, ell: usize, points: &[Point], shares: &[F::Elem], targets: &[Point]) -> Result<Vec<F::Elem>> {
    check_set(ell, points, shares.len())?;
    targets.iter().map(|&t| Ok(combine(f, &weights(f.base(), points, t)?, shares))).collect()
}

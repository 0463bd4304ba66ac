//! Irreducibility testing (Ben-Or) and the deterministic modulus choice: among
//! monic irreducible polynomials of a given degree, the one whose coefficient
//! vector has the smallest integer encoding (constant term least significant,
//! each coefficient encoded by its own standard integer encoding).

use super::Field;

fn deg_u128(x: u128) -> i32 {
    127 - x.leading_zeros() as i32
}

fn rem_gf2(mut x: u128, f: u64) -> u64 {
    let df = deg_u128(f as u128);
    let mut dx = deg_u128(x);
    while dx >= df {
        x ^= (f as u128) << (dx - df);
        dx = deg_u128(x);
    }
    x as u64
}

fn mulmod_gf2(a: u64, b: u64, f: u64) -> u64 {
    let mut r = 0u128;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            r ^= (a as u128) << i;
        }
    }
    rem_gf2(r, f)
}

fn gcd_gf2(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem_gf2(a as u128, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test for a binary polynomial (bit i = coefficient of x^i).
pub fn is_irreducible_gf2(f: u64) -> bool {
    let d = deg_u128(f as u128);
    if d <= 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let mut h = 0b10u64;
    for _ in 1..=d / 2 {
        h = mulmod_gf2(h, h, f);
        if gcd_gf2(f, h ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

/// Smallest irreducible binary polynomial of degree `deg` (1 ≤ deg ≤ 63).
pub fn smallest_gf2(deg: usize) -> u64 {
    assert!((1..=63).contains(&deg));
    if deg == 1 {
        return 0b10;
    }
    let mut c = (1u64 << deg) | 1;
    loop {
        if is_irreducible_gf2(c) {
            return c;
        }
        c += 2;
    }
}

// Dense polynomials over a field F, lowest coefficient first.

fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = a.to_vec();
    trim(f, &mut r);
    let db = b.len() - 1;
    let lc_inv = f.inv(&b[db]).expect("divisor is trimmed");
    while r.len() > db {
        let top = r.len() - 1;
        let t = f.mul(&r[top], &lc_inv);
        let shift = top - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(&r[shift + j], &f.mul(&t, bj));
        }
        trim(f, &mut r);
    }
    r
}

fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], md: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut p = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            p[i + j] = f.add(&p[i + j], &f.mul(x, y));
        }
    }
    rem(f, &p, md)
}

fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(f, &mut a);
    trim(f, &mut b);
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test for a monic polynomial over `f` (coefficients lowest first,
/// leading one included).
pub fn is_irreducible<F: Field>(f: &F, poly: &[F::Elem]) -> bool {
    let mut p = poly.to_vec();
    trim(f, &mut p);
    if p.len() < 2 {
        return false;
    }
    let d = p.len() - 1;
    if d == 1 {
        return true;
    }
    let x = vec![f.zero(), f.one()];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        // h <- h^Q with Q = 2^{bit_len}
        for _ in 0..f.bit_len() {
            h = mulmod(f, &h, &h, &p);
        }
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), f.zero());
        diff[1] = f.sub(&diff[1], &f.one());
        if gcd(f, &p, &diff).len() > 1 {
            return false;
        }
    }
    true
}

/// Field element whose integer encoding is `v` (base-q digits as coefficients).
pub fn elem_from_int<F: Field>(f: &F, mut v: u64) -> F::Elem {
    let q = f.base().q() as u64;
    let mut coeffs = Vec::with_capacity(f.degree());
    for _ in 0..f.degree() {
        coeffs.push((v % q) as u8);
        v /= q;
    }
    f.from_coeffs(&coeffs)
}

/// True when no binomial X^d + c over a field with 2^bits elements can be
/// irreducible: that needs every prime factor of d to divide 2^bits - 1 (and
/// 4 | d is excluded outright since 2^bits is not 1 mod 4).
fn binomials_all_reducible(bits: usize, d: usize) -> bool {
    if d.is_multiple_of(4) {
        return true;
    }
    let mut n = d;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            // 2^bits mod p
            let r = (0..bits).fold(1u64, |acc, _| acc * 2 % p as u64);
            if r != 1 % p as u64 {
                return true;
            }
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    false
}

/// Smallest monic irreducible polynomial of degree `deg` over `f`, returned
/// with its leading one.
pub fn smallest_irreducible<F: Field>(f: &F, deg: usize) -> Vec<F::Elem> {
    assert!(deg >= 1);
    if deg == 1 {
        return vec![f.zero(), f.one()];
    }
    let bits = f.bit_len().min(63) as u32;
    let order = 1u64 << bits; // only the low digits ever move in practice
    let mut digits = vec![0u64; deg];
    digits[0] = 1;
    if binomials_all_reducible(f.bit_len(), deg) {
        // jump past the whole X^deg + c block
        digits[1] = 1;
    }
    loop {
        let mut poly: Vec<F::Elem> = digits.iter().map(|&v| elem_from_int(f, v)).collect();
        poly.push(f.one());
        if is_irreducible(f, &poly) {
            return poly;
        }
        // increment, constant term least significant and never zero
        let mut j = 0;
        loop {
            digits[j] += 1;
            if digits[j] < order {
                break;
            }
            digits[j] = if j == 0 { 1 } else { 0 };
            j += 1;
            assert!(j < deg, "irreducible search exhausted");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division by every polynomial of degree 1..=deg/2.
    fn brute_force_irreducible(f: u64) -> bool {
        let d = deg_u128(f as u128);
        if d < 1 {
            return false;
        }
        for g in 2u64..(1u64 << (d / 2 + 1)) {
            if deg_u128(g as u128) >= 1 && rem_gf2(f as u128, g) == 0 && g != f {
                return false;
            }
        }
        true
    }

    #[test]
    fn binomial_criterion() {
        // X^2 + c is a square in characteristic 2
        assert!(binomials_all_reducible(31, 2));
        // 3 divides 2^136 - 1 but not 2^31 - 1
        assert!(!binomials_all_reducible(136, 3));
        assert!(binomials_all_reducible(31, 3));
        // small field: X^3 + c over F_4 with c a non-cube is irreducible
        let f4 = crate::field::Gf2m::new(2).unwrap();
        assert!(!binomials_all_reducible(2, 3));
        assert!(is_irreducible(&f4, &[2u64, 0, 0, 1]));
        assert!(!is_irreducible(&f4, &[1u64, 0, 0, 1]));
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for f in 2u64..(1 << 12) {
            assert_eq!(is_irreducible_gf2(f), brute_force_irreducible(f), "{f:#b}");
        }
    }

    #[test]
    fn smallest_binary_moduli() {
        assert_eq!(smallest_gf2(2), 0b111);
        assert_eq!(smallest_gf2(3), 0b1011);
        assert_eq!(smallest_gf2(4), 0b10011);
        assert_eq!(smallest_gf2(8), 0x11b);
        assert_eq!(smallest_gf2(31), (1 << 31) | 0b1001);
        for d in [31usize, 37, 43] {
            let p = smallest_gf2(d);
            assert!(brute_force_irreducible(p));
            // every smaller candidate of the same degree has a factor
            let mut c = (1u64 << d) | 1;
            while c < p {
                assert!(!brute_force_irreducible(c));
                c += 2;
            }
        }
    }
}

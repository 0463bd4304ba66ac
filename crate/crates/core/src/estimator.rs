//! Security and size estimates: soundness, the KZ forgery on 5-round
//! Fiat–Shamir, combinatorial and algebraic attacks on Rank-SD, and signature
//! sizes. Costs are reported as log2.

use crate::error::{Error, Result};
use crate::field::{Gf256m, Gf2m};
use crate::mpc::false_positive_rate;
use crate::params::{shipped, Ctx, RankSdParams, Variant};
use crate::rank::log2_big;
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

/// Binomial coefficient, zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// log2 of a positive rational.
pub fn log2_rational(x: &BigRational) -> f64 {
    let num = x.numer().to_biguint().expect("positive");
    let den = x.denom().to_biguint().expect("positive");
    log2_big(&num) - log2_big(&den)
}

fn rat(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, n))
}

/// Cheating probability of one repetition:
/// additive 1/N + p(1 − 1/N); threshold 1/C(N, ℓ) + p·ℓ(N − ℓ)/(ℓ + 1).
pub fn soundness_error(parties: usize, p: &BigRational, ell: usize, variant: Variant) -> BigRational {
    let n = BigInt::from(parties);
    match variant {
        Variant::Hypercube => {
            let inv = BigRational::new(BigInt::one(), n);
            &inv + p * (BigRational::one() - &inv)
        }
        Variant::Threshold => {
            let c = rat(binomial(parties as i64, ell as i64));
            let factor = BigRational::new(BigInt::from(ell * (parties - ell)), BigInt::from(ell + 1));
            BigRational::one() / c + p * factor
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForgeryCost {
    pub log2: f64,
    pub tau_prime: usize,
    /// Exact cost as a rational (skipped in serialized reports).
    #[serde(skip)]
    pub exact: BigRational,
}

/// min over 0 ≤ τ' ≤ τ of 1/P[X ≥ τ'] + B^{τ−τ'}, X ~ Binomial(τ, p).
/// Branches with P[X ≥ τ'] = 0 are skipped.
pub fn kz_cost(tau: usize, p: &BigRational, b: &BigUint) -> ForgeryCost {
    let one = BigRational::one();
    let p = if *p > one { one.clone() } else { p.clone() };
    let q = &one - &p;
    let mut best: Option<(BigRational, usize)> = None;
    let mut tail = BigRational::zero();
    for tp in (0..=tau).rev() {
        let term = rat(binomial(tau as i64, tp as i64)) * num_traits::pow(p.clone(), tp) * num_traits::pow(q.clone(), tau - tp);
        tail += term;
        if tail.is_zero() {
            continue;
        }
        let cost = one.clone() / &tail + rat(num_traits::pow(b.clone(), tau - tp));
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, tp));
        }
    }
    let (exact, tau_prime) = best.expect("τ' = 0 always has probability 1");
    ForgeryCost {
        log2: log2_rational(&exact),
        tau_prime,
        exact,
    }
}

/// Per-repetition false-positive parameter and guessing base of a set.
fn kz_inputs(p: &RankSdParams) -> (BigRational, BigUint) {
    let (p_eta, _) = false_positive_rate(p.q as u64, p.m, p.eta);
    match p.variant {
        Variant::Hypercube => (p_eta, BigUint::from(p.parties)),
        Variant::Threshold => {
            let scaled = p_eta * rat(binomial(p.parties as i64, p.ell as i64 + 1));
            (scaled, binomial(p.parties as i64, p.ell as i64))
        }
    }
}

pub fn kz_forge_cost(p: &RankSdParams) -> ForgeryCost {
    let (pp, b) = kz_inputs(p);
    kz_cost(p.tau, &pp, &b)
}

/// log2 of (nr + m)^3 q^{(m−r)(r−1)}.
pub fn enumeration_cost(q: usize, m: usize, n: usize, r: usize) -> f64 {
    3.0 * ((n * r + m) as f64).log2() + ((m - r) * (r - 1)) as f64 * (q as f64).log2()
}

/// log2 of (n−k)^3 m^3 q^{(r−1)⌊(k+1)m/n⌋}.
pub fn error_support_cost(q: usize, m: usize, n: usize, k: usize, r: usize) -> f64 {
    3.0 * (((n - k) * m) as f64).log2() + ((r - 1) * ((k + 1) * m / n)) as f64 * (q as f64).log2()
}

/// Algebraic attack result with its optimal hybrid (a), puncturing (p) and
/// degree (b, Support-Minors only) parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraicCost {
    pub log2: f64,
    pub a: usize,
    pub p: usize,
    pub b: usize,
}

fn better(best: Option<AlgebraicCost>, cand: AlgebraicCost) -> Option<AlgebraicCost> {
    match best {
        Some(b) if b.log2 <= cand.log2 => Some(b),
        _ => Some(cand),
    }
}

/// MaxMinors with hybrid a < k and puncturing p: cost q^{ar} C(n−a−p, r)^ω
/// subject to m·C(n−k−p−1, r) ≥ C(n−a−p, r) − 1 with at least one equation
/// left. None when nothing is feasible.
pub fn max_minors_cost(q: usize, m: usize, n: usize, k: usize, r: usize, omega: f64) -> Option<AlgebraicCost> {
    let lq = (q as f64).log2();
    let mut best = None;
    for a in 0..k {
        for p in 0..n - k {
            let (n2, k2) = ((n - a - p) as i64, (k - a) as i64);
            let vars = binomial(n2, r as i64);
            let eqs = BigUint::from(m) * binomial(n2 - k2 - 1, r as i64);
            if eqs.is_zero() || eqs + BigUint::one() < vars {
                continue;
            }
            let cost = (a * r) as f64 * lq + omega * log2_big(&vars);
            best = better(best, AlgebraicCost { log2: cost, a, p, b: 0 });
        }
    }
    best
}

/// Rows N and columns M of the Support-Minors linear system for (m, n, k, r)
/// at degree b.
pub fn support_minors_size(m: usize, n: usize, k: usize, r: usize, b: usize) -> (BigInt, BigInt) {
    let (m, n, k, r, b) = (m as i64, n as i64, k as i64, r as i64, b as i64);
    let big = |x: BigUint| BigInt::from_biguint(Sign::Plus, x);
    let mut rows = BigInt::zero();
    for i in 1..=k {
        rows += big(binomial(n - i, r) * binomial(k + b - 1 - i, b - 1));
    }
    rows -= big(binomial(n - k - 1, r) * binomial(k + b - 1, b));
    let mut alt = BigInt::zero();
    for i in 1..=b {
        let t = big(binomial(k + b - i - 1, b - i) * binomial(n - k - 1, r + i));
        if i % 2 == 1 {
            alt += t;
        } else {
            alt -= t;
        }
    }
    rows -= BigInt::from(m - 1) * alt;
    let cols = big(binomial(k + b - 1, b)) * (big(binomial(n, r)) - BigInt::from(m) * big(binomial(n - k - 1, r)));
    (rows, cols)
}

/// Support-Minors with hybrid a, puncturing p and degree b ≤ `max_b`: cost
/// q^{ar} m² N M^{ω−1}, feasible when M > 0 and N ≥ M − 1. When every
/// column of the code is specialized (k − a = 0) the remaining system is
/// trivial and the cost is q^{ar} m².
pub fn support_minors_cost(q: usize, m: usize, n: usize, k: usize, r: usize, omega: f64, max_b: usize) -> Option<AlgebraicCost> {
    let lq = (q as f64).log2();
    let lm2 = 2.0 * (m as f64).log2();
    let mut best = None;
    for a in 0..=k {
        let hybrid = (a * r) as f64 * lq;
        if a == k {
            best = better(
                best,
                AlgebraicCost {
                    log2: hybrid + lm2,
                    a,
                    p: 0,
                    b: 1,
                },
            );
            continue;
        }
        for p in 0..n - k {
            for b in 1..=max_b {
                let (rows, cols) = support_minors_size(m, n - a - p, k - a, r, b);
                if !cols.is_positive() || rows < &cols - BigInt::one() || !rows.is_positive() {
                    continue;
                }
                let lr = log2_big(&rows.to_biguint().unwrap());
                let lc = log2_big(&cols.to_biguint().unwrap());
                let cost = hybrid + lm2 + lr + (omega - 1.0) * lc;
                best = better(best, AlgebraicCost { log2: cost, a, p, b });
            }
        }
    }
    best
}

/// Signature size from the closed-form bit count (worst case for the
/// hypercube layout, upper bound for the threshold one), in bits.
pub fn signature_size_bits(p: &RankSdParams) -> f64 {
    let lam = p.lambda as f64;
    let lq = p.log2_q() as f64;
    let (m, k, r, eta) = (p.m as f64, p.k as f64, p.r as f64, p.eta as f64);
    let tau = p.tau as f64;
    match p.variant {
        Variant::Hypercube => {
            let field = ((r - 1.0) * m * eta + k * m + (r - 1.0) * m + m * eta) * lq;
            6.0 * lam + tau * (field + 2.0 * lam + lam * (p.parties as f64).log2())
        }
        Variant::Threshold => {
            let ell = p.ell as f64;
            // α counts r·mη instead of (r−1)·mη when N exceeds q.
            let alpha = if p.parties <= p.q { (r - 1.0) * m * eta } else { r * m * eta };
            let state = k * m + alpha + (r - 1.0) * m + r * m * eta;
            let path = 2.0 * lam * ell * (p.parties as f64 / ell).log2();
            6.0 * lam + tau * (ell * state * lq + path)
        }
    }
}

/// [`signature_size_bits`] rounded up to whole bytes.
pub fn signature_size(p: &RankSdParams) -> usize {
    ((signature_size_bits(p) - 1e-9).ceil() as usize).div_ceil(8)
}

/// Largest encoding the implementation can emit, for sets it can sign with.
pub fn wire_size_max(p: &RankSdParams) -> Result<Option<usize>> {
    if !p.signing_supported() {
        return Ok(None);
    }
    Ok(Some(match (p.variant, p.q) {
        (Variant::Hypercube, 2) => crate::hypercube::max_signature_len(&Ctx::<Gf2m>::new(p)?),
        (Variant::Hypercube, _) => crate::hypercube::max_signature_len(&Ctx::<Gf256m>::new(p)?),
        (Variant::Threshold, _) => crate::threshold::max_signature_len(&Ctx::<Gf256m>::new(p)?)?,
    }))
}

/// Public key size in bytes: id ‖ seed_H ‖ y.
pub fn public_key_size(p: &RankSdParams) -> usize {
    2 + p.lambda / 8 + ((p.n - p.k) * p.m * p.log2_q()).div_ceil(8)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackCostReport {
    pub enumeration: f64,
    pub error_support: f64,
    pub max_minors: Option<AlgebraicCost>,
    pub support_minors: Option<AlgebraicCost>,
    pub kz_forge: ForgeryCost,
    /// Smallest of all the above.
    pub binding_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub params: RankSdParams,
    pub pk_bytes: usize,
    pub sig_formula_bits: f64,
    pub sig_formula_bytes: usize,
    pub sig_wire_max_bytes: Option<usize>,
    pub log2_false_positive: f64,
    pub log2_soundness: f64,
    pub costs: AttackCostReport,
}

pub const DEFAULT_MAX_B: usize = 4;
pub const DEFAULT_OMEGA: f64 = 2.0;

pub fn attack_report(p: &RankSdParams, omega: f64) -> AttackCostReport {
    let enumeration = enumeration_cost(p.q, p.m, p.n, p.r);
    let error_support = error_support_cost(p.q, p.m, p.n, p.k, p.r);
    let max_minors = max_minors_cost(p.q, p.m, p.n, p.k, p.r, omega);
    let support_minors = support_minors_cost(p.q, p.m, p.n, p.k, p.r, omega, DEFAULT_MAX_B);
    let kz_forge = kz_forge_cost(p);
    let binding_min = [
        Some(enumeration),
        Some(error_support),
        max_minors.map(|c| c.log2),
        support_minors.map(|c| c.log2),
        Some(kz_forge.log2),
    ]
    .into_iter()
    .flatten()
    .fold(f64::INFINITY, f64::min);
    AttackCostReport {
        enumeration,
        error_support,
        max_minors,
        support_minors,
        kz_forge,
        binding_min,
    }
}

pub fn report_row(p: &RankSdParams, omega: f64) -> Result<ReportRow> {
    let (p_eta, log_fp) = false_positive_rate(p.q as u64, p.m, p.eta);
    let snd = soundness_error(p.parties, &p_eta, p.ell, p.variant);
    Ok(ReportRow {
        params: p.clone(),
        pk_bytes: public_key_size(p),
        sig_formula_bits: signature_size_bits(p),
        sig_formula_bytes: signature_size(p),
        sig_wire_max_bytes: wire_size_max(p)?,
        log2_false_positive: log_fp,
        log2_soundness: log2_rational(&snd),
        costs: attack_report(p, omega),
    })
}

/// Parses a security level written as I/III/V or 1/3/5.
pub fn parse_level(level: &str) -> Result<u8> {
    match level.trim().to_ascii_uppercase().as_str() {
        "I" | "1" => Ok(1),
        "III" | "3" => Ok(3),
        "V" | "5" => Ok(5),
        _ => Err(Error::UnknownLevel(level.to_string())),
    }
}

/// Rows for every shipped set of one security level.
pub fn table_report(level: &str, omega: f64) -> Result<Vec<ReportRow>> {
    let lvl = parse_level(level)?;
    shipped().par_iter().filter(|p| p.level == lvl).map(|p| report_row(p, omega)).collect()
}

fn fmt_alg(c: &Option<AlgebraicCost>, with_b: bool) -> String {
    match c {
        Some(c) if with_b => format!("{:.1} (a={}, p={}, b={})", c.log2, c.a, c.p, c.b),
        Some(c) => format!("{:.1} (a={}, p={})", c.log2, c.a, c.p),
        None => "inf".into(),
    }
}

/// Plain-text rendering of report rows.
pub fn format_table(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    for row in rows {
        let p = &row.params;
        out.push_str(&format!(
            "{}: q={} m={} n={} k={} r={} N={} eta={} tau={}{}\n",
            p.name,
            p.q,
            p.m,
            p.n,
            p.k,
            p.r,
            p.parties,
            p.eta,
            p.tau,
            if p.ell > 0 { format!(" ell={}", p.ell) } else { String::new() }
        ));
        out.push_str(&format!(
            "  pk {} B | sig formula {} B ({:.1} kB){}\n",
            row.pk_bytes,
            row.sig_formula_bytes,
            row.sig_formula_bytes as f64 / 1000.0,
            match row.sig_wire_max_bytes {
                Some(b) => format!(" | sig wire max {b} B"),
                None => " | estimator only".into(),
            }
        ));
        let c = &row.costs;
        out.push_str(&format!(
            "  log2 p_eta {:.1} | log2 soundness {:.2} | KZ forgery {:.2} (tau'={})\n",
            row.log2_false_positive, row.log2_soundness, c.kz_forge.log2, c.kz_forge.tau_prime
        ));
        out.push_str(&format!(
            "  enumeration {:.1} | error support {:.1} | MaxMinors {} | SupportMinors {} | min {:.1}\n",
            c.enumeration,
            c.error_support,
            fmt_alg(&c.max_minors, false),
            fmt_alg(&c.support_minors, true),
            c.binding_min
        ));
    }
    out
}

/// Soundness as f64 for quick inspection.
pub fn soundness_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigUint::from(10u8));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(-1, 0), BigUint::zero());
    }

    #[test]
    fn algebraic_table_rows() {
        let mm = max_minors_cost(2, 31, 29, 14, 10, 2.0).unwrap();
        assert!((mm.log2 - 146.1).abs() <= 0.5 && (mm.a, mm.p) == (12, 1), "{mm:?}");
        let mm = max_minors_cost(2, 37, 38, 16, 14, 2.0).unwrap();
        assert!((mm.log2 - 233.0).abs() <= 0.5 && (mm.a, mm.p) == (14, 2), "{mm:?}");
        let mm = max_minors_cost(2, 43, 44, 23, 13, 2.0).unwrap();
        assert!((mm.log2 - 300.3).abs() <= 0.5 && (mm.a, mm.p) == (20, 1), "{mm:?}");
        for ((m, n, k, r), want) in [((31, 29, 14, 10), 149.9), ((37, 38, 16, 14), 230.8), ((43, 44, 23, 13), 309.9)] {
            let sm = support_minors_cost(2, m, n, k, r, 2.0, DEFAULT_MAX_B).unwrap();
            assert!((sm.log2 - want).abs() <= 0.1, "{sm:?}");
        }
    }

    #[test]
    fn support_minors_known_size() {
        // λ=192 row specialized at a=13: (n, k) = (25, 3), b = 1.
        let (rows, cols) = support_minors_size(37, 25, 3, 14, 1);
        assert_eq!(rows, BigInt::from(795_872));
        assert_eq!(cols, BigInt::from(465_120));
    }

    #[test]
    fn direct_formulas() {
        assert!((enumeration_cost(2, 31, 33, 10) - (189.0 + 3.0 * 361f64.log2())).abs() < 1e-9);
        assert!((error_support_cost(2, 31, 33, 15, 10) - (135.0 + 3.0 * 558f64.log2())).abs() < 1e-9);
    }

    #[test]
    fn kz_tiny_case() {
        let c = kz_cost(1, &BigRational::one(), &BigUint::from(2u8));
        assert_eq!(c.tau_prime, 1);
        assert_eq!(c.exact, BigRational::from_integer(BigInt::from(2)));
    }
}

//! The linear MPC check run by every party: from shares of (x_B, β, a, c)
//! each party derives a share of α = ε·ω + a, the α vector is opened, and each
//! party then outputs a share of v = ε·z − ⟨α, β⟩ − c, which is zero for an
//! honest witness.

use crate::error::{Error, Result};
use crate::field::{Field, Tower, MAX_ETA};
use crate::rank::log2_big;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow};

/// Element of the extension F_{q^{mη}} built over `F`.
pub type Ext<F> = [<F as Field>::Elem; MAX_ETA];

/// The two working fields: F_{q^m} and F_{q^{mη}}.
#[derive(Debug, Clone)]
pub struct Fields<F: Field> {
    pub fqm: F,
    pub fqme: Tower<F>,
}

impl<F: Field> Fields<F> {
    pub fn new(fqm: F, eta: usize) -> Result<Self> {
        let fqme = Tower::new(fqm.clone(), eta)?;
        Ok(Self { fqm, fqme })
    }
}

/// Public Rank-SD data as seen by the parties: H' ((n−k)×k, row-major) and y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<F: Field> {
    pub h_prime: Vec<Vec<F::Elem>>,
    pub y: Vec<F::Elem>,
}

impl<F: Field> Instance<F> {
    pub fn n(&self) -> usize {
        self.y.len() + self.k()
    }

    pub fn k(&self) -> usize {
        self.h_prime.first().map_or(0, |row| row.len())
    }

    /// δ·y − H'·x_B, the length n−k block recovered from the shared block.
    pub fn derive_x_a(&self, f: &F, x_b: &[F::Elem], delta: bool) -> Vec<F::Elem> {
        self.h_prime
            .iter()
            .zip(&self.y)
            .map(|(row, y)| {
                let hx = f.inner(row, x_b);
                let base = if delta { *y } else { f.zero() };
                f.sub(&base, &hx)
            })
            .collect()
    }
}

/// One party's input: shares of x_B (k), β (r−1), a (r−1) and c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessBundle<F: Field> {
    pub x_b: Vec<F::Elem>,
    pub beta: Vec<F::Elem>,
    pub a: Vec<Ext<F>>,
    pub c: Ext<F>,
}

impl<F: Field> WitnessBundle<F> {
    pub fn zero(fl: &Fields<F>, k: usize, r: usize) -> Self {
        Self {
            x_b: vec![fl.fqm.zero(); k],
            beta: vec![fl.fqm.zero(); r - 1],
            a: vec![fl.fqme.zero(); r - 1],
            c: fl.fqme.zero(),
        }
    }

    pub fn add_assign(&mut self, fl: &Fields<F>, other: &Self) {
        fl.fqm.vec_add_assign(&mut self.x_b, &other.x_b);
        fl.fqm.vec_add_assign(&mut self.beta, &other.beta);
        fl.fqme.vec_add_assign(&mut self.a, &other.a);
        self.c = fl.fqme.add(&self.c, &other.c);
    }

    pub fn sub(&self, fl: &Fields<F>, other: &Self) -> Self {
        Self {
            x_b: self.x_b.iter().zip(&other.x_b).map(|(a, b)| fl.fqm.sub(a, b)).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| fl.fqm.sub(a, b)).collect(),
            a: self.a.iter().zip(&other.a).map(|(a, b)| fl.fqme.sub(a, b)).collect(),
            c: fl.fqme.sub(&self.c, &other.c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpcChallenge<E> {
    pub gamma: Vec<E>,
    pub epsilon: E,
}

/// Party output. `v` is absent after the first phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpcOutput<E> {
    pub alpha: Vec<E>,
    pub v: Option<E>,
}

/// Intermediate state between the two phases: the α share and the z share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase1<E> {
    pub alpha: Vec<E>,
    pub z: E,
}

/// ω_k = Σ_j γ_j (x_j^{q^k} − x_j) for k in 1..r, and z = −Σ_j γ_j (x_j^{q^r} − x_j).
fn omega_z<F: Field>(fl: &Fields<F>, x: &[F::Elem], gamma: &[Ext<F>], r: usize) -> (Vec<Ext<F>>, Ext<F>) {
    let (f, t) = (&fl.fqm, &fl.fqme);
    let mut omega = vec![t.zero(); r - 1];
    let mut z = t.zero();
    for (xj, g) in x.iter().zip(gamma) {
        let mut p = *xj;
        for k in 1..=r {
            p = f.frobenius(&p, 1);
            let d = f.sub(&p, xj);
            let term = t.mul_inner(g, &d);
            if k < r {
                omega[k - 1] = t.add(&omega[k - 1], &term);
            } else {
                z = t.sub(&z, &term);
            }
        }
    }
    (omega, z)
}

/// ⟨α, β⟩ with α over the extension and β over F_{q^m}.
fn inner_ext<F: Field>(fl: &Fields<F>, alpha: &[Ext<F>], beta: &[F::Elem]) -> Ext<F> {
    alpha
        .iter()
        .zip(beta)
        .fold(fl.fqme.zero(), |acc, (a, b)| fl.fqme.add(&acc, &fl.fqme.mul_inner(a, b)))
}

/// First phase: the α share. `delta` marks the party that adds the constant y.
pub fn party_phase1<F: Field>(fl: &Fields<F>, inst: &Instance<F>, share: &WitnessBundle<F>, ch: &MpcChallenge<Ext<F>>, delta: bool) -> Phase1<Ext<F>> {
    let r = share.beta.len() + 1;
    let mut x = inst.derive_x_a(&fl.fqm, &share.x_b, delta);
    x.extend_from_slice(&share.x_b);
    let (omega, z) = omega_z(fl, &x, &ch.gamma, r);
    let t = &fl.fqme;
    let alpha = omega.iter().zip(&share.a).map(|(w, a)| t.add(&t.mul(&ch.epsilon, w), a)).collect();
    Phase1 { alpha, z }
}

/// Second phase: the v share, using the opened α.
pub fn party_v<F: Field>(fl: &Fields<F>, share: &WitnessBundle<F>, ch: &MpcChallenge<Ext<F>>, p1: &Phase1<Ext<F>>, alpha_opened: &[Ext<F>]) -> Result<Ext<F>> {
    if alpha_opened.len() != share.beta.len() {
        return Err(Error::Length {
            expected: share.beta.len(),
            got: alpha_opened.len(),
        });
    }
    let t = &fl.fqme;
    let ez = t.mul(&ch.epsilon, &p1.z);
    Ok(t.sub(&t.sub(&ez, &inner_ext(fl, alpha_opened, &share.beta)), &share.c))
}

/// Both phases in one call. Without `alpha_opened` only the α share is produced.
pub fn party_compute<F: Field>(
    fl: &Fields<F>,
    inst: &Instance<F>,
    share: &WitnessBundle<F>,
    ch: &MpcChallenge<Ext<F>>,
    delta: bool,
    alpha_opened: Option<&[Ext<F>]>,
) -> Result<MpcOutput<Ext<F>>> {
    let p1 = party_phase1(fl, inst, share, ch, delta);
    let v = match alpha_opened {
        Some(a) => Some(party_v(fl, share, ch, &p1, a)?),
        None => None,
    };
    Ok(MpcOutput { alpha: p1.alpha, v })
}

/// Unshared reference evaluation on a full vector x: returns (α, v).
pub fn plain_check<F: Field>(fl: &Fields<F>, x: &[F::Elem], beta: &[F::Elem], a: &[Ext<F>], c: &Ext<F>, ch: &MpcChallenge<Ext<F>>) -> (Vec<Ext<F>>, Ext<F>) {
    let t = &fl.fqme;
    let r = beta.len() + 1;
    let (omega, z) = omega_z(fl, x, &ch.gamma, r);
    let alpha: Vec<_> = omega.iter().zip(a).map(|(w, ai)| t.add(&t.mul(&ch.epsilon, w), ai)).collect();
    let v = t.sub(&t.sub(&t.mul(&ch.epsilon, &z), &inner_ext(fl, &alpha, beta)), c);
    (alpha, v)
}

/// c = −⟨β, a⟩ for an honest bundle.
pub fn honest_c<F: Field>(fl: &Fields<F>, beta: &[F::Elem], a: &[Ext<F>]) -> Ext<F> {
    fl.fqme.neg(&inner_ext(fl, a, beta))
}

/// p_η = 2/q^{mη} − 1/q^{2mη}, exactly and as log2.
pub fn false_positive_rate(q: u64, m: usize, eta: usize) -> (BigRational, f64) {
    let big_q: BigUint = Pow::pow(BigUint::from(q), (m * eta) as u32);
    let num = BigUint::from(2u8) * &big_q - BigUint::one();
    let den = &big_q * &big_q;
    let log = log2_big(&num) - log2_big(&den);
    (BigRational::new(num.into(), den.into()), log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2m;
    use num_bigint::BigInt;

    #[test]
    fn fp_rate_small() {
        let (p, _) = false_positive_rate(2, 3, 1);
        assert_eq!(p, BigRational::new(BigInt::from(15), BigInt::from(64)));
        let (p, l) = false_positive_rate(2, 31, 1);
        let two = BigInt::from(2);
        let want = BigRational::new(two.clone(), Pow::pow(&two, 31u32)) - BigRational::new(BigInt::one(), Pow::pow(&two, 62u32));
        assert_eq!(p, want);
        assert!((l + 30.0).abs() < 1e-6);
    }

    #[test]
    fn zero_shares_give_zero() {
        let fl = Fields::new(Gf2m::new(7).unwrap(), 2).unwrap();
        let inst = Instance::<Gf2m> {
            h_prime: vec![vec![3, 5]; 2],
            y: vec![9, 1],
        };
        let share = WitnessBundle::zero(&fl, 2, 3);
        let ch = MpcChallenge {
            gamma: vec![fl.fqme.one(); 4],
            epsilon: fl.fqme.one(),
        };
        let out = party_compute(&fl, &inst, &share, &ch, false, Some(&[fl.fqme.zero(); 2])).unwrap();
        assert!(out.alpha.iter().all(|a| fl.fqme.is_zero(a)));
        assert!(fl.fqme.is_zero(&out.v.unwrap()));
        assert!(party_compute(&fl, &inst, &share, &ch, false, Some(&[fl.fqme.zero(); 1])).is_err());
    }
}

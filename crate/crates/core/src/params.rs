//! Parameter sets and the per-set working context.

use crate::error::{Error, Result};
use crate::field::{BaseField, Field, Gf256m, Gf2m};
use crate::mpc::Fields;
use crate::symmetric::Sym;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Hypercube,
    Threshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankSdParams {
    pub name: String,
    /// NIST level 1, 3 or 5.
    pub level: u8,
    pub lambda: usize,
    pub q: usize,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Number of MPC parties N.
    pub parties: usize,
    pub eta: usize,
    pub tau: usize,
    pub variant: Variant,
    /// Privacy threshold ℓ (threshold variant only, 0 otherwise).
    pub ell: usize,
    /// Two-byte identifier written in front of serialized keys. 0 for ad hoc sets.
    pub id: u16,
}

#[allow(clippy::too_many_arguments)]
fn row(
    name: &str,
    level: u8,
    id_low: u8,
    q: usize,
    (m, n, k, r): (usize, usize, usize, usize),
    parties: usize,
    eta: usize,
    tau: usize,
    ell: usize,
) -> RankSdParams {
    let variant = if ell == 0 { Variant::Hypercube } else { Variant::Threshold };
    let lambda = match level {
        1 => 128,
        3 => 192,
        _ => 256,
    };
    RankSdParams {
        name: name.to_string(),
        level,
        lambda,
        q,
        m,
        n,
        k,
        r,
        parties,
        eta,
        tau,
        variant,
        ell,
        id: (level as u16) << 8 | id_low as u16,
    }
}

/// All shipped parameter sets.
pub fn shipped() -> Vec<RankSdParams> {
    const L1: (usize, usize, usize, usize) = (31, 33, 15, 10);
    const L3: (usize, usize, usize, usize) = (37, 41, 18, 13);
    const L5: (usize, usize, usize, usize) = (43, 47, 18, 17);
    vec![
        row("ryde128-hyp-short", 1, 1, 2, L1, 256, 1, 20, 0),
        row("ryde192-hyp-short", 3, 1, 2, L3, 256, 1, 29, 0),
        row("ryde256-hyp-short", 5, 1, 2, L5, 256, 1, 38, 0),
        row("ryde128-hyp-fast", 1, 2, 2, L1, 32, 1, 30, 0),
        row("ryde192-hyp-fast", 3, 2, 2, L3, 32, 1, 44, 0),
        row("ryde256-hyp-fast", 5, 2, 2, L5, 32, 1, 58, 0),
        row("ryde128-thr-l3", 1, 3, 256, (11, 12, 5, 5), 256, 2, 6, 3),
        row("ryde192-thr-l3", 3, 3, 256, (13, 17, 7, 6), 256, 1, 11, 3),
        row("ryde256-thr-l3", 5, 3, 256, (17, 17, 7, 7), 256, 3, 14, 3),
        row("ryde128-thr-l1", 1, 4, 2, L1, 256, 2, 18, 1),
        row("ryde192-thr-l1", 3, 4, 2, L3, 256, 2, 27, 1),
        row("ryde256-thr-l1", 5, 4, 2, L5, 256, 2, 35, 1),
    ]
}

pub fn by_name(name: &str) -> Result<RankSdParams> {
    shipped()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownParams(name.to_string()))
}

pub fn by_id(id: u16) -> Result<RankSdParams> {
    shipped()
        .into_iter()
        .find(|p| p.id == id)
        .ok_or_else(|| Error::UnknownParams(format!("id {id:#06x}")))
}

impl RankSdParams {
    /// An unnamed set for experiments and tests (id 0).
    #[allow(clippy::too_many_arguments)]
    pub fn custom(
        lambda: usize,
        q: usize,
        m: usize,
        n: usize,
        k: usize,
        r: usize,
        parties: usize,
        eta: usize,
        tau: usize,
        variant: Variant,
        ell: usize,
    ) -> Result<Self> {
        let level = match lambda {
            128 => 1,
            192 => 3,
            _ => 5,
        };
        let p = Self {
            name: "custom".into(),
            level,
            lambda,
            q,
            m,
            n,
            k,
            r,
            parties,
            eta,
            tau,
            variant,
            ell,
            id: 0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn base(&self) -> Result<BaseField> {
        BaseField::from_q(self.q)
    }

    /// log2 N for the hypercube layout.
    pub fn dim(&self) -> usize {
        self.parties.trailing_zeros() as usize
    }

    pub fn log2_q(&self) -> usize {
        if self.q == 2 {
            1
        } else {
            8
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Params(s));
        self.base()?;
        Sym::new(self.lambda)?;
        if self.k == 0 || self.k >= self.n {
            return bad(format!("need 0 < k < n, got k = {}, n = {}", self.k, self.n));
        }
        if self.r == 0 || self.r > self.m.min(self.n) {
            return bad(format!("need 1 <= r <= min(m, n), got r = {}", self.r));
        }
        if self.parties == 0 || self.tau == 0 {
            return bad("N and tau must be positive".into());
        }
        match self.variant {
            Variant::Hypercube => {
                if !self.parties.is_power_of_two() {
                    return Err(Error::NotPowerOfTwo(self.parties));
                }
            }
            Variant::Threshold => {
                if self.ell == 0 || self.ell + 1 > self.parties {
                    return bad(format!("need 1 <= ell < N, got ell = {}", self.ell));
                }
            }
        }
        Ok(())
    }

    /// Whether keygen/sign/verify are implemented for this set. Threshold sets
    /// over F_2 are estimator-only.
    pub fn signing_supported(&self) -> bool {
        self.variant == Variant::Hypercube || (self.q == 256 && self.parties <= self.q)
    }
}

/// Field families that can be built from an extension degree.
pub trait BuildField: Field + Sized {
    fn build(m: usize) -> Result<Self>;
    const Q: usize;
}

impl BuildField for Gf2m {
    fn build(m: usize) -> Result<Self> {
        Gf2m::new(m)
    }
    const Q: usize = 2;
}

impl BuildField for Gf256m {
    fn build(m: usize) -> Result<Self> {
        Gf256m::new(m)
    }
    const Q: usize = 256;
}

/// Everything a signing or verification call needs for one parameter set.
#[derive(Debug, Clone)]
pub struct Ctx<F: Field> {
    pub params: RankSdParams,
    pub fields: Fields<F>,
    pub sym: Sym,
}

impl<F: BuildField> Ctx<F> {
    pub fn new(params: &RankSdParams) -> Result<Self> {
        params.validate()?;
        if !params.signing_supported() {
            return Err(Error::Unsupported(format!(
                "signing for {} (threshold sharing needs q = 256 and N <= q)",
                params.name
            )));
        }
        if params.q != F::Q {
            return Err(Error::Params(format!("parameter set uses q = {}, field family has q = {}", params.q, F::Q)));
        }
        let fields = Fields::new(F::build(params.m)?, params.eta)?;
        Ok(Self {
            params: params.clone(),
            fields,
            sym: Sym::new(params.lambda)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_sets_validate_and_are_unique() {
        let all = shipped();
        assert_eq!(all.len(), 12);
        for p in &all {
            p.validate().unwrap();
            assert_eq!(by_name(&p.name).unwrap(), *p);
            assert_eq!(by_id(p.id).unwrap(), *p);
        }
        assert!(by_name("ryde100-x").is_err());
        assert!(!by_name("ryde128-thr-l1").unwrap().signing_supported());
    }
}

use super::{domain, Sym};
use crate::bits::BitSource;
use crate::field::Field;
use crate::mpc::MpcChallenge;

/// First challenge for all repetitions, read e-major as (γ_1..γ_n, ε).
pub fn expand_challenge1<T: Field>(sym: &Sym, h1: &[u8], fqme: &T, n: usize, tau: usize) -> Vec<MpcChallenge<T::Elem>> {
    let mut x = sym.xof(domain::CHALLENGE1);
    x.absorb(h1);
    let mut st = x.stream();
    (0..tau)
        .map(|_| {
            let gamma = fqme.sample_vec(n, &mut st);
            let epsilon = fqme.read(&mut st);
            MpcChallenge { gamma, epsilon }
        })
        .collect()
}

/// Hidden party per repetition, 1-based: `d` stream bits plus one.
pub fn expand_hidden_party(sym: &Sym, h2: &[u8], d: usize, tau: usize) -> Vec<usize> {
    let mut x = sym.xof(domain::CHALLENGE2);
    x.absorb(h2);
    let mut st = x.stream();
    (0..tau).map(|_| st.take_bits(d) as usize + 1).collect()
}

/// Uniform value in [0, bound) from whole bytes with rejection. `bound` ≤ 2^16.
fn uniform_below(st: &mut dyn BitSource, bound: usize) -> usize {
    let width = if bound <= 256 { 8 } else { 16 };
    let space = 1usize << width;
    let limit = space - space % bound;
    loop {
        let v = st.take_bits(width) as usize;
        if v < limit {
            return v % bound;
        }
    }
}

/// Opened party sets per repetition: partial Fisher–Yates over [1..n],
/// first `ell` picks, sorted ascending.
pub fn expand_opened_set(sym: &Sym, h2: &[u8], n: usize, ell: usize, tau: usize) -> Vec<Vec<usize>> {
    assert!(ell <= n && n <= 1 << 16);
    let mut x = sym.xof(domain::CHALLENGE2);
    x.absorb(h2);
    let mut st = x.stream();
    (0..tau)
        .map(|_| {
            let mut perm: Vec<usize> = (1..=n).collect();
            for i in 0..ell {
                let j = i + uniform_below(&mut st, n - i);
                perm.swap(i, j);
            }
            let mut set = perm[..ell].to_vec();
            set.sort_unstable();
            set
        })
        .collect()
}

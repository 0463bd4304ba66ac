//! Known-answer test vectors. Files hold records of `key = value` lines
//! separated by blank lines; `#` starts a comment line. Every record has a
//! `kind` field: `hash`, `ggm` or `sig`.

use crate::error::{Error, Result};
use crate::params::{shipped, RankSdParams};
use crate::scheme;
use crate::symmetric::{ggm_expand, Sym};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub type Record = BTreeMap<String, String>;

/// Parses a KAT file into its records.
pub fn parse(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut cur = Record::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", no + 1)))?;
        if cur.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("line {}: duplicate key `{}`", no + 1, k.trim())));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// Renders records in the order given, keys sorted, `kind` first.
pub fn render(header: &str, records: &[Record]) -> String {
    let mut s = String::new();
    for line in header.lines() {
        let _ = writeln!(s, "# {line}");
    }
    for rec in records {
        s.push('\n');
        if let Some(kind) = rec.get("kind") {
            let _ = writeln!(s, "kind = {kind}");
        }
        for (k, v) in rec.iter().filter(|(k, _)| k.as_str() != "kind") {
            let _ = writeln!(s, "{k} = {v}");
        }
    }
    s
}

fn field<'a>(rec: &'a Record, key: &str) -> Result<&'a str> {
    rec.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::Parse(format!("record is missing `{key}`")))
}

fn hex_field(rec: &Record, key: &str) -> Result<Vec<u8>> {
    hex::decode(field(rec, key)?).map_err(|e| Error::Parse(format!("`{key}`: {e}")))
}

fn num_field(rec: &Record, key: &str) -> Result<usize> {
    field(rec, key)?.parse().map_err(|e| Error::Parse(format!("`{key}`: {e}")))
}

/// Deterministic test inputs: SHAKE256("kat" ‖ label ‖ counter).
pub fn kat_bytes(label: &str, counter: usize, len: usize) -> Vec<u8> {
    let mut h = Shake256::default();
    h.update(b"kat");
    h.update(&(label.len() as u32).to_be_bytes());
    h.update(label.as_bytes());
    h.update(&(counter as u64).to_be_bytes());
    let mut out = vec![0; len];
    h.finalize_xof().read(&mut out);
    out
}

fn hash_record(lambda: usize, domain: u8) -> Result<Record> {
    let sym = Sym::new(lambda)?;
    let mut r = Record::new();
    r.insert("kind".into(), "hash".into());
    r.insert("lambda".into(), lambda.to_string());
    r.insert("domain".into(), domain.to_string());
    r.insert("payload".into(), String::new());
    r.insert("digest".into(), hex::encode(sym.hash_i(domain, &[])));
    Ok(r)
}

fn ggm_record(lambda: usize, n: usize) -> Result<Record> {
    let sym = Sym::new(lambda)?;
    let root = kat_bytes("ggm-root", n, sym.seed_bytes());
    let salt = kat_bytes("ggm-salt", n, sym.salt_bytes());
    let tree = ggm_expand(&sym, &root, &salt, n)?;
    let leaves: Vec<String> = tree
        .leaves()
        .iter()
        .map(|l| format!("{}{}", hex::encode(&l.seed), hex::encode(&l.rho)))
        .collect();
    let mut r = Record::new();
    r.insert("kind".into(), "ggm".into());
    r.insert("lambda".into(), lambda.to_string());
    r.insert("n".into(), n.to_string());
    r.insert("root".into(), hex::encode(root));
    r.insert("salt".into(), hex::encode(salt));
    r.insert("leaves".into(), leaves.join(","));
    Ok(r)
}

/// Empty-payload digests for every λ and domain 0..4, plus GGM expansions for
/// N ∈ {4, 256} at λ = 128.
pub fn symmetric_records() -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for lambda in [128, 192, 256] {
        for d in 0..=4 {
            out.push(hash_record(lambda, d)?);
        }
    }
    for n in [4, 256] {
        out.push(ggm_record(128, n)?);
    }
    Ok(out)
}

/// One signature record: seed → (pk, sk), then σ on msg with signing seed rand.
pub fn sig_record(p: &RankSdParams, count: usize) -> Result<Record> {
    let seed = kat_bytes(&format!("{}-seed", p.name), count, p.lambda / 8);
    let msg = kat_bytes(&format!("{}-msg", p.name), count, 33 * (count + 1));
    let rand = kat_bytes(&format!("{}-rand", p.name), count, p.lambda / 8);
    let kp = scheme::keygen(p, &seed)?;
    let sig = scheme::sign(&kp.sk, &msg, &rand)?;
    let mut r = Record::new();
    r.insert("kind".into(), "sig".into());
    r.insert("params".into(), p.name.clone());
    r.insert("count".into(), count.to_string());
    r.insert("seed".into(), hex::encode(seed));
    r.insert("msg".into(), hex::encode(msg));
    r.insert("rand".into(), hex::encode(rand));
    r.insert("pk".into(), hex::encode(kp.pk));
    r.insert("sk".into(), hex::encode(kp.sk));
    r.insert("sig".into(), hex::encode(sig));
    Ok(r)
}

/// `per_set` records for each shipped set that supports signing, or only for
/// the sets listed in `only` when non-empty.
pub fn signature_records(per_set: usize, only: &[String]) -> Result<Vec<Record>> {
    use rayon::prelude::*;
    let sets: Vec<RankSdParams> = shipped()
        .into_iter()
        .filter(|p| p.signing_supported() && (only.is_empty() || only.contains(&p.name)))
        .collect();
    let jobs: Vec<(RankSdParams, usize)> = sets.into_iter().flat_map(|p| (0..per_set).map(move |c| (p.clone(), c))).collect();
    jobs.par_iter().map(|(p, c)| sig_record(p, *c)).collect()
}

/// Checks one record by recomputing it from its inputs. Signature records are
/// also verified.
pub fn check_record(rec: &Record) -> Result<()> {
    let mismatch = |what: &str| Err(Error::Parse(format!("{what} mismatch")));
    match field(rec, "kind")? {
        "hash" => {
            let sym = Sym::new(num_field(rec, "lambda")?)?;
            let d = num_field(rec, "domain")?;
            if d > 4 {
                return Err(Error::Parse(format!("hash domain {d} out of range")));
            }
            if sym.hash_i(d as u8, &hex_field(rec, "payload")?) != hex_field(rec, "digest")? {
                return mismatch("hash digest");
            }
        }
        "ggm" => {
            let sym = Sym::new(num_field(rec, "lambda")?)?;
            let tree = ggm_expand(&sym, &hex_field(rec, "root")?, &hex_field(rec, "salt")?, num_field(rec, "n")?)?;
            let got: Vec<String> = tree
                .leaves()
                .iter()
                .map(|l| format!("{}{}", hex::encode(&l.seed), hex::encode(&l.rho)))
                .collect();
            if got.join(",") != field(rec, "leaves")? {
                return mismatch("GGM leaves");
            }
        }
        "sig" => {
            let p = crate::params::by_name(field(rec, "params")?)?;
            let kp = scheme::keygen(&p, &hex_field(rec, "seed")?)?;
            if kp.pk != hex_field(rec, "pk")? {
                return mismatch("public key");
            }
            if kp.sk != hex_field(rec, "sk")? {
                return mismatch("secret key");
            }
            let msg = hex_field(rec, "msg")?;
            let sig = scheme::sign(&kp.sk, &msg, &hex_field(rec, "rand")?)?;
            if sig != hex_field(rec, "sig")? {
                return mismatch("signature");
            }
            if !scheme::verify(&kp.pk, &msg, &sig)? {
                return Err(Error::Parse("pinned signature does not verify".into()));
            }
        }
        other => return Err(Error::Parse(format!("unknown record kind `{other}`"))),
    }
    Ok(())
}

/// Checks every record, returning the number checked.
pub fn check_all(records: &[Record]) -> Result<usize> {
    use rayon::prelude::*;
    records
        .par_iter()
        .enumerate()
        .try_for_each(|(i, r)| check_record(r).map_err(|e| Error::Parse(format!("record {}: {e}", i + 1))))?;
    Ok(records.len())
}

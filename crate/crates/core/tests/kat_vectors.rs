use anyhow::Result;
use ryde_core::kat::{check_all, parse, signature_records, symmetric_records};
use std::path::PathBuf;

fn pinned(name: &str) -> Result<Vec<ryde_core::kat::Record>> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("kats").join(name);
    Ok(parse(&std::fs::read_to_string(path)?)?)
}

#[test]
fn pinned_symmetric_vectors_recompute() -> Result<()> {
    let recs = pinned("symmetric.kat")?;
    assert_eq!(check_all(&recs)?, 17);
    assert_eq!(recs, symmetric_records()?);
    Ok(())
}

#[test]
fn pinned_signature_vectors_recompute_and_verify() -> Result<()> {
    let recs = pinned("signatures.kat")?;
    assert_eq!(check_all(&recs)?, recs.len());
    assert_eq!(recs, signature_records(2, &[])?);
    Ok(())
}

#[test]
fn edited_vector_is_caught() -> Result<()> {
    let mut recs = pinned("signatures.kat")?;
    let sig = recs[0].get_mut("sig").unwrap();
    let last = sig.pop().unwrap();
    sig.push(if last == '0' { '1' } else { '0' });
    assert!(check_all(&recs[..1]).is_err());
    Ok(())
}

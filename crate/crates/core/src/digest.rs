use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::lattice::LatticePoint;

/// Content hash of a vertex set at a scale: SHA-256 over a domain tag, the
/// ambient dimension, the scale and every coordinate (little-endian i32), in
/// the stored (anti-lex) order. Hex encoded.
pub fn complex_digest(n: usize, r: u32, vertices: &[LatticePoint]) -> String {
    let mut h = Sha256::new();
    h.update(b"vr-lattice/complex/v1");
    h.update((n as u64).to_le_bytes());
    h.update(r.to_le_bytes());
    h.update((vertices.len() as u64).to_le_bytes());
    for v in vertices {
        for c in v.coords() {
            h.update(c.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// SHA-256 of the compact JSON encoding of `value`, hex encoded. Field
/// order follows the type definition, so equal values hash equally.
pub fn json_digest<T: Serialize>(value: &T) -> Result<String> {
    let bytes = serde_json::to_vec(value)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

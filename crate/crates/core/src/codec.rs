//! Hexadecimal witness encoding.
//!
//! The characteristic bit string of `A ⊆ [n]` is written most-significant bit
//! first (bit 0 of the set is the high bit of the first hex digit), padded on
//! the right with zero bits to a multiple of four, and printed as uppercase hex.
//! `{0, 2, 6, 7, 8, 9}` over `[12]` is `1010 0011 1100`, i.e. `A3C`.
//!
//! Symmetric witnesses are stored by their left half only; the full set is the
//! `(-1)^m` symmetrization of that half.

use crate::catalog::CatalogRecord;
use crate::error::{invalid, Error, Result};
use crate::poly::{Bipartition, LittlewoodPoly, SymmetrySign};
use crate::regen::RegenerativePair;

/// A hex-encoded witness together with the length and order it claims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexWitness {
    pub m: u32,
    pub n: usize,
    pub hex: String,
    pub symmetric_half: bool,
}

impl HexWitness {
    /// Number of bits the hex string carries information for.
    pub fn significant_bits(&self) -> usize {
        if self.symmetric_half {
            self.n / 2
        } else {
            self.n
        }
    }

    pub fn to_bipartition(&self) -> Result<Bipartition> {
        if self.symmetric_half {
            expand_half_witness(&self.hex, self.n, self.m)
        } else {
            Bipartition::new(self.n, hex_decode(&self.hex, self.n)?)
        }
    }

    pub fn to_poly(&self) -> Result<LittlewoodPoly> {
        Ok(self.to_bipartition()?.to_poly())
    }
}

pub fn hex_encode(a: &[usize], n: usize) -> Result<String> {
    let digits = n.div_ceil(4).max(1);
    let mut nibbles = vec![0u8; digits];
    for &i in a {
        if i >= n {
            return invalid(format!("element {i} outside [{n}]"));
        }
        nibbles[i / 4] |= 8 >> (i % 4);
    }
    Ok(nibbles.iter().map(|&d| char::from_digit(d as u32, 16).unwrap().to_ascii_uppercase()).collect())
}

fn nibbles(hex: &str) -> Result<Vec<u8>> {
    hex.trim()
        .chars()
        .map(|c| {
            c.to_digit(16)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Format(format!("{c:?} is not a hex digit")))
        })
        .collect()
}

fn bit(nibbles: &[u8], i: usize) -> bool {
    nibbles[i / 4] & (8 >> (i % 4)) != 0
}

/// Decodes the set over `[n]`; pad bits past `n` must be zero.
pub fn hex_decode(hex: &str, n: usize) -> Result<Vec<usize>> {
    let nib = nibbles(hex)?;
    if 4 * nib.len() < n {
        return Err(Error::Format(format!(
            "hex string of {} digits cannot hold {n} bits",
            nib.len()
        )));
    }
    if let Some(pad) = (n..4 * nib.len()).find(|&i| bit(&nib, i)) {
        return Err(Error::Format(format!("pad bit {pad} is set (only {n} bits are significant)")));
    }
    Ok((0..n).filter(|&i| bit(&nib, i)).collect())
}

/// Decodes the first `n` bits and ignores the rest.
pub fn hex_decode_prefix(hex: &str, n: usize) -> Result<Vec<usize>> {
    let nib = nibbles(hex)?;
    if 4 * nib.len() < n {
        return Err(Error::Format(format!(
            "hex string of {} digits cannot hold {n} bits",
            nib.len()
        )));
    }
    Ok((0..n).filter(|&i| bit(&nib, i)).collect())
}

/// Sign sequence of length `len` read from the leading bits of `hex`.
pub fn hex_prefix_poly(hex: &str, len: usize) -> Result<LittlewoodPoly> {
    Ok(Bipartition::new(len, hex_decode_prefix(hex, len)?)?.to_poly())
}

/// Decodes a left half over `[n/2]` and applies the `(-1)^m` symmetrization.
pub fn expand_half_witness(hex: &str, n: usize, m: u32) -> Result<Bipartition> {
    if n == 0 || n % 2 != 0 {
        return invalid(format!("full length {n} must be even and positive"));
    }
    let half = Bipartition::new(n / 2, hex_decode(hex, n / 2)?)?.to_poly();
    Ok(half.symmetrize(SymmetrySign::for_order(m)).to_bipartition())
}

/// Hex of the left half of a symmetric witness.
pub fn encode_half(full: &Bipartition) -> Result<String> {
    let h = full.n() / 2;
    let left: Vec<usize> = full.a().iter().copied().take_while(|&i| i < h).collect();
    hex_encode(&left, h)
}

/// Splits an `rp` record into `(f, g)`: `f` is the first `n/2` signs of the decoded
/// half, `g` the next `(n1 - n)/2`.
pub fn decode_rp(record: &CatalogRecord) -> Result<RegenerativePair> {
    let CatalogRecord::Rp { m, n, n1, hex, .. } = record else {
        return invalid(format!("not a regenerative-pair record: {}", record.label()));
    };
    let (m, n, n1) = (*m, *n, *n1);
    if n % 2 != 0 || n1 % 2 != 0 || n == 0 || n >= n1 {
        return invalid(format!("rp lengths ({n}, {n1}) must be even with n < n1"));
    }
    let half = Bipartition::new(n1 / 2, hex_decode(hex, n1 / 2)?)?.to_poly();
    let coeffs = half.coeffs();
    let f = LittlewoodPoly::new(coeffs[..n / 2].to_vec())?;
    let g = LittlewoodPoly::new(coeffs[n / 2..].to_vec())?;
    Ok(RegenerativePair::new(f, g, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_examples() {
        assert_eq!(hex_encode(&[0, 2, 6, 7, 8, 9], 12).unwrap(), "A3C");
        assert_eq!(hex_encode(&[], 4).unwrap(), "0");
        assert_eq!(hex_encode(&[0, 3, 4, 7, 9, 11, 12, 13], 16).unwrap(), "995C");
        assert!(hex_encode(&[12], 12).is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(hex_decode("A3C", 10).unwrap(), vec![0, 2, 6, 7, 8, 9]);
        assert_eq!(hex_decode("C1EC9", 20).unwrap(), vec![0, 1, 7, 8, 9, 10, 12, 13, 16, 19]);
        assert_eq!(hex_decode("0", 4).unwrap(), Vec::<usize>::new());
        assert_eq!(hex_decode("a3c", 10).unwrap(), vec![0, 2, 6, 7, 8, 9]);
    }

    #[test]
    fn decode_errors() {
        assert!(matches!(hex_decode("A3C", 8), Err(Error::Format(_))));
        assert!(matches!(hex_decode("A3", 10), Err(Error::Format(_))));
        assert!(matches!(hex_decode("G0", 8), Err(Error::Format(_))));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand_half_witness("A3C", 20, 3).unwrap().a(), &[0, 2, 6, 7, 8, 9, 14, 15, 16, 18]);
        let prefix = hex_prefix_poly("A3C", 6).unwrap();
        assert_eq!(prefix.to_bipartition().a(), &[0, 2]);
        assert_eq!(
            prefix.symmetrize(SymmetrySign::Minus).to_bipartition().a(),
            &[0, 2, 6, 7, 8, 10]
        );
        assert!(expand_half_witness("A3C", 7, 3).is_err());
    }

    #[test]
    fn decode_rp_rows() {
        let rec = CatalogRecord::Rp { m: 3, n: 12, n1: 20, hex: "A3C".into(), notes: None };
        let rp = decode_rp(&rec).unwrap();
        assert_eq!(rp.f().to_bipartition().a(), &[0, 2]);
        assert_eq!(rp.f().len(), 6);
        assert_eq!(rp.g().to_string(), "++++");

        let rec = CatalogRecord::Rp { m: 4, n: 24, n1: 32, hex: "995C".into(), notes: None };
        let rp = decode_rp(&rec).unwrap();
        assert_eq!(rp.f().to_bipartition().a(), &[0, 3, 4, 7, 9, 11]);
        assert_eq!(rp.g().to_string(), "++--");
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..=64, bits in any::<u64>()) {
            let a: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
            let hex = hex_encode(&a, n).unwrap();
            prop_assert_eq!(hex.len(), n.div_ceil(4));
            prop_assert_eq!(hex_decode(&hex, n).unwrap(), a);
        }

        #[test]
        fn even_order_half_round_trips(h in 1usize..=32, bits in any::<u32>()) {
            let a: Vec<usize> = (0..h).filter(|&i| bits >> i & 1 == 1).collect();
            let hex = hex_encode(&a, h).unwrap();
            let full = expand_half_witness(&hex, 2 * h, 4).unwrap();
            prop_assert_eq!(encode_half(&full).unwrap(), hex);
        }
    }
}

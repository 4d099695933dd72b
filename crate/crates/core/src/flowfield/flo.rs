//! Middlebury `.flo` reader and writer.
//!
//! Layout (all little-endian): `f32` magic 202021.25, `i32` width, `i32`
//! height, then `width * height` interleaved `(u, v)` `f32` pairs, row-major.

use super::FlowField;
use crate::error::{Error, Result};

pub const FLO_MAGIC: f32 = 202021.25;

const HEADER_LEN: usize = 12;

pub fn read_flo(bytes: &[u8]) -> Result<FlowField> {
    if bytes.len() < 4 {
        return Err(Error::Truncated { expected: HEADER_LEN, actual: bytes.len() });
    }
    let magic = f32::from_le_bytes(bytes[0..4].try_into().unwrap());
    if magic != FLO_MAGIC {
        return Err(Error::BadMagic(magic));
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated { expected: HEADER_LEN, actual: bytes.len() });
    }
    let width = i32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let height = i32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if width <= 0 || height <= 0 {
        return Err(Error::InvalidField(format!("non-positive dimensions {width}x{height}")));
    }
    let (width, height) = (width as usize, height as usize);
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::InvalidField(format!("dimensions {width}x{height} overflow")))?;
    let expected = n
        .checked_mul(8)
        .and_then(|p| p.checked_add(HEADER_LEN))
        .ok_or_else(|| Error::InvalidField(format!("dimensions {width}x{height} overflow")))?;
    if bytes.len() < expected {
        return Err(Error::Truncated { expected, actual: bytes.len() });
    }

    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for (i, pair) in bytes[HEADER_LEN..expected].chunks_exact(8).enumerate() {
        let a = f32::from_le_bytes(pair[0..4].try_into().unwrap());
        let b = f32::from_le_bytes(pair[4..8].try_into().unwrap());
        if !a.is_finite() {
            return Err(Error::NonFinite(2 * i));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite(2 * i + 1));
        }
        u.push(a);
        v.push(b);
    }
    FlowField::new(width, height, u, v)
}

pub fn write_flo(field: &FlowField) -> Vec<u8> {
    let n = field.width() * field.height();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * n);
    out.extend_from_slice(&FLO_MAGIC.to_le_bytes());
    out.extend_from_slice(&(field.width() as i32).to_le_bytes());
    out.extend_from_slice(&(field.height() as i32).to_le_bytes());
    for (a, b) in field.u().iter().zip(field.v()) {
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&b.to_le_bytes());
    }
    out
}

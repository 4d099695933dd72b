//! Foreground masks as binary PGM (P5) or PBM (P4) images.

use super::ForegroundMask;
use crate::error::{Error, Result};

/// Parses a P5 graymap (pixel above half of maxval is foreground) or a P4
/// bitmap (set bit is foreground).
pub fn read_mask(bytes: &[u8]) -> Result<ForegroundMask> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.token()?;
    match magic.as_str() {
        "P5" => {
            let width = cur.number()?;
            let height = cur.number()?;
            let maxval = cur.number()?;
            if maxval == 0 || maxval > 65535 {
                return Err(Error::Pnm(format!("maxval {maxval} out of range")));
            }
            cur.single_whitespace()?;
            let n = checked_area(width, height)?;
            let bpp = if maxval < 256 { 1 } else { 2 };
            let data = cur.rest(n * bpp)?;
            let bits = if bpp == 1 {
                data.iter().map(|&p| 2 * p as usize > maxval).collect()
            } else {
                data.chunks_exact(2)
                    .map(|c| 2 * u16::from_be_bytes([c[0], c[1]]) as usize > maxval)
                    .collect()
            };
            ForegroundMask::new(width, height, bits)
        }
        "P4" => {
            let width = cur.number()?;
            let height = cur.number()?;
            cur.single_whitespace()?;
            checked_area(width, height)?;
            let row_bytes = width.div_ceil(8);
            let data = cur.rest(row_bytes * height)?;
            let bits = (0..height)
                .flat_map(|y| (0..width).map(move |x| (x, y)))
                .map(|(x, y)| data[y * row_bytes + x / 8] & (0x80 >> (x % 8)) != 0)
                .collect();
            ForegroundMask::new(width, height, bits)
        }
        other => Err(Error::Pnm(format!("unsupported magic '{other}', expected P5 or P4"))),
    }
}

/// Writes the mask as an 8-bit P5 graymap: foreground 255, background 0.
pub fn write_mask_pgm(mask: &ForegroundMask) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width(), mask.height()).into_bytes();
    out.extend(mask.bits().iter().map(|&b| if b { 255u8 } else { 0 }));
    out
}

fn checked_area(width: usize, height: usize) -> Result<usize> {
    if width == 0 || height == 0 {
        return Err(Error::Pnm(format!("empty image {width}x{height}")));
    }
    width
        .checked_mul(height)
        .ok_or_else(|| Error::Pnm(format!("dimensions {width}x{height} overflow")))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Result<String> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Pnm("unexpected end of header".into()));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize> {
        let t = self.token()?;
        t.parse().map_err(|_| Error::Pnm(format!("bad header number '{t}'")))
    }

    fn single_whitespace(&mut self) -> Result<()> {
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::Pnm("missing whitespace after header".into())),
        }
    }

    fn rest(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(Error::Pnm(format!("pixel data truncated: need {n} bytes, have {}", self.bytes.len() - self.pos)));
        }
        Ok(&self.bytes[self.pos..end])
    }
}

//! Netpbm grayscale images (`P2` ASCII and `P5` binary, 8- or 16-bit),
//! scaled by the header's max value into `[0, 1]`.

use std::path::{Path, PathBuf};

use qnn_core::GrayImage;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("not a PGM image: {0}")]
    Format(String),
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage, PgmError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| PgmError::Io { path: path.to_path_buf(), source })?;
    parse_pgm(&bytes)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a str> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| !b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).ok()).flatten()
    }

    fn number(&mut self, what: &str) -> Result<u32, PgmError> {
        self.token()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| PgmError::Format(format!("missing or invalid {what}")))
    }
}

pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic = cur.token().ok_or_else(|| PgmError::Format("empty file".into()))?;
    let binary = match magic {
        "P2" => false,
        "P5" => true,
        other => return Err(PgmError::Format(format!("unsupported magic {other:?}"))),
    };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("max value")?;
    if maxval == 0 || maxval > u16::MAX as u32 {
        return Err(PgmError::Format(format!("max value {maxval} outside 1..=65535")));
    }
    let count = width * height;
    let scale = f64::from(maxval);
    let mut raw = Vec::with_capacity(count);

    if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = cur.pos + 1;
        let depth = if maxval < 256 { 1 } else { 2 };
        let data = bytes
            .get(start..start + count * depth)
            .ok_or_else(|| PgmError::Format(format!("raster truncated, expected {count} pixels")))?;
        if depth == 1 {
            raw.extend(data.iter().map(|&b| u32::from(b)));
        } else {
            raw.extend(data.chunks_exact(2).map(|c| u32::from(u16::from_be_bytes([c[0], c[1]]))));
        }
    } else {
        for _ in 0..count {
            raw.push(cur.number("pixel")?);
        }
    }
    if let Some(v) = raw.iter().find(|&&v| v > maxval) {
        return Err(PgmError::Format(format!("pixel value {v} exceeds max value {maxval}")));
    }
    let pixels = raw.into_iter().map(|v| f64::from(v) / scale).collect();
    GrayImage::new(width, height, pixels).map_err(|e| PgmError::Format(e.to_string()))
}

/// Encodes an 8-bit ASCII (`P2`) image; used for fixtures.
pub fn to_p2(width: usize, height: usize, pixels: &[u8]) -> String {
    let mut out = format!("P2\n{width} {height}\n255\n");
    for row in pixels.chunks(width.max(1)) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_with_comments() {
        let img = parse_pgm(b"P2\n# made by hand\n2 2\n# max\n4\n0 1\n2 4\n").unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.get(0, 1), 0.25);
        assert_eq!(img.get(1, 1), 1.0);
    }

    #[test]
    fn binary_eight_bit() {
        let mut bytes = b"P5 3 1 255\n".to_vec();
        bytes.extend([0u8, 51, 255]);
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.get(0, 1), 0.2);
        assert_eq!(img.get(0, 2), 1.0);
    }

    #[test]
    fn binary_sixteen_bit() {
        let mut bytes = b"P5\n2 1\n65535\n".to_vec();
        bytes.extend([0x00, 0x00, 0xff, 0xff]);
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.get(0, 0), 0.0);
        assert_eq!(img.get(0, 1), 1.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(parse_pgm(b"P6 1 1 255\n\0\0\0").is_err());
        assert!(parse_pgm(b"P5 4 4 255\n\0").is_err());
        assert!(parse_pgm(b"P2 1 1 10\n11\n").is_err());
        assert!(parse_pgm(b"").is_err());
    }

    #[test]
    fn p2_writer_round_trips() {
        let text = to_p2(2, 2, &[0, 255, 51, 102]);
        let img = parse_pgm(text.as_bytes()).unwrap();
        assert_eq!(img.get(1, 0), 0.2);
    }
}

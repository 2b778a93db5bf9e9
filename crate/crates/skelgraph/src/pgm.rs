//! PGM (portable graymap) reading and writing, plain `P2` and binary `P5`,
//! maxval up to 255.

use skelgraph_core::GrayImage;

use crate::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    /// `P2`: ASCII decimal samples.
    Plain,
    /// `P5`: one byte per sample.
    #[default]
    Binary,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments (which run to end of line).
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads an unsigned decimal after optional whitespace and comments.
    fn number(&mut self) -> Option<(usize, u64)> {
        self.skip_space();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value.saturating_mul(10).saturating_add((b - b'0') as u64);
            self.pos += 1;
        }
        (self.pos > start).then_some((start, value))
    }

    fn header_field(&mut self, name: &str) -> Result<(usize, u64), FormatError> {
        self.skip_space();
        let (start, value) = self.number().ok_or_else(|| FormatError::MalformedHeader {
            offset: self.pos,
            reason: format!("expected {name}"),
        })?;
        match self.bytes.get(self.pos) {
            None => Ok((start, value)),
            Some(b) if b.is_ascii_whitespace() || *b == b'#' => Ok((start, value)),
            Some(_) => Err(FormatError::MalformedHeader {
                offset: self.pos,
                reason: format!("unexpected byte after {name}"),
            }),
        }
    }
}

/// Parses a PGM file. Samples are rescaled to 0..=255 when maxval is lower.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, FormatError> {
    let magic = bytes.get(..2).ok_or(FormatError::Truncated {
        offset: 0,
        expected: 2,
        found: bytes.len(),
    })?;
    let plain = match magic {
        b"P2" => true,
        b"P5" => false,
        other => {
            return Err(FormatError::UnsupportedMagic {
                offset: 0,
                found: String::from_utf8_lossy(other).into_owned(),
            })
        }
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let (w_at, width) = cur.header_field("width")?;
    let (h_at, height) = cur.header_field("height")?;
    let (m_at, maxval) = cur.header_field("maxval")?;
    for (at, v, name) in [(w_at, width, "width"), (h_at, height, "height")] {
        if v == 0 || v > u32::MAX as u64 {
            return Err(FormatError::MalformedHeader {
                offset: at,
                reason: format!("{name} {v} out of range"),
            });
        }
    }
    if maxval == 0 || maxval > 255 {
        return Err(FormatError::UnsupportedMaxval { offset: m_at, maxval });
    }
    let n = (width * height) as usize;
    let scale = |v: u64| -> u8 {
        if maxval == 255 {
            v as u8
        } else {
            ((v * 255 + maxval / 2) / maxval) as u8
        }
    };
    let mut pixels = Vec::with_capacity(n);
    if plain {
        for _ in 0..n {
            cur.skip_space();
            let (start, v) = match cur.number() {
                Some(t) => t,
                None if cur.pos >= bytes.len() => {
                    return Err(FormatError::Truncated {
                        offset: cur.pos,
                        expected: n - pixels.len(),
                        found: 0,
                    })
                }
                None => {
                    return Err(FormatError::BadSample {
                        offset: cur.pos,
                        reason: "expected a decimal sample".into(),
                    })
                }
            };
            if v > maxval {
                return Err(FormatError::BadSample {
                    offset: start,
                    reason: format!("sample {v} exceeds maxval {maxval}"),
                });
            }
            pixels.push(scale(v));
        }
    } else {
        // Exactly one whitespace byte separates maxval from the raster.
        let start = cur.pos + 1;
        let available = bytes.len().saturating_sub(start);
        if available < n {
            return Err(FormatError::Truncated {
                offset: start.min(bytes.len()),
                expected: n,
                found: available,
            });
        }
        for (i, &v) in bytes[start..start + n].iter().enumerate() {
            if v as u64 > maxval {
                return Err(FormatError::BadSample {
                    offset: start + i,
                    reason: format!("sample {v} exceeds maxval {maxval}"),
                });
            }
            pixels.push(scale(v as u64));
        }
    }
    Ok(GrayImage::new(width as u32, height as u32, pixels).expect("dimensions checked"))
}

/// Serializes with maxval 255. Plain output keeps lines under 70 characters.
pub fn write_pgm(image: &GrayImage, encoding: Encoding) -> Vec<u8> {
    let magic = match encoding {
        Encoding::Plain => "P2",
        Encoding::Binary => "P5",
    };
    let mut out = format!("{magic}\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    match encoding {
        Encoding::Binary => out.extend_from_slice(image.pixels()),
        Encoding::Plain => {
            for row in image.pixels().chunks(image.width() as usize) {
                let mut line = String::new();
                for v in row {
                    let token = v.to_string();
                    if !line.is_empty() && line.len() + 1 + token.len() > 70 {
                        out.extend_from_slice(line.as_bytes());
                        out.push(b'\n');
                        line.clear();
                    }
                    if !line.is_empty() {
                        line.push(' ');
                    }
                    line.push_str(&token);
                }
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}

//! MNIST IDX image files: big-endian `u32` magic `0x00000803`, then the image
//! count, rows and columns, then `count * rows * cols` unsigned bytes.

use skelgraph_core::GrayImage;

use crate::FormatError;

pub const IMAGE_MAGIC: u32 = 0x0000_0803;
const HEADER_LEN: usize = 16;

/// Header of an IDX image file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdxHeader {
    pub count: usize,
    pub rows: usize,
    pub cols: usize,
}

fn be_u32(bytes: &[u8], offset: usize) -> Result<u32, FormatError> {
    let word = bytes.get(offset..offset + 4).ok_or(FormatError::Truncated {
        offset: bytes.len().min(offset),
        expected: 4,
        found: bytes.len().saturating_sub(offset),
    })?;
    Ok(u32::from_be_bytes(word.try_into().expect("4 bytes")))
}

pub fn read_idx_header(bytes: &[u8]) -> Result<IdxHeader, FormatError> {
    let magic = be_u32(bytes, 0)?;
    if magic != IMAGE_MAGIC {
        return Err(FormatError::WrongMagic { found: magic });
    }
    Ok(IdxHeader {
        count: be_u32(bytes, 4)? as usize,
        rows: be_u32(bytes, 8)? as usize,
        cols: be_u32(bytes, 12)? as usize,
    })
}

/// Extracts image `index` (row-major, intensity = stored byte).
pub fn read_idx_images(bytes: &[u8], index: usize) -> Result<GrayImage, FormatError> {
    let header = read_idx_header(bytes)?;
    if index >= header.count {
        return Err(FormatError::IndexOutOfRange {
            index,
            count: header.count,
        });
    }
    if header.rows == 0 || header.cols == 0 {
        return Err(FormatError::MalformedHeader {
            offset: 8,
            reason: "zero rows or columns".into(),
        });
    }
    let size = header.rows * header.cols;
    let start = HEADER_LEN + index * size;
    let available = bytes.len().saturating_sub(start);
    if available < size {
        return Err(FormatError::Truncated {
            offset: start.min(bytes.len()),
            expected: size,
            found: available,
        });
    }
    let pixels = bytes[start..start + size].to_vec();
    Ok(GrayImage::new(header.cols as u32, header.rows as u32, pixels).expect("dimensions checked"))
}

/// Packs equally sized images into an IDX image file.
///
/// # Panics
///
/// If the images differ in size or the list is empty.
pub fn write_idx_images(images: &[GrayImage]) -> Vec<u8> {
    let first = images.first().expect("at least one image");
    let (cols, rows) = (first.width(), first.height());
    let mut out = Vec::with_capacity(HEADER_LEN + images.len() * (rows * cols) as usize);
    for word in [IMAGE_MAGIC, images.len() as u32, rows, cols] {
        out.extend_from_slice(&word.to_be_bytes());
    }
    for img in images {
        assert_eq!(
            (img.width(), img.height()),
            (cols, rows),
            "IDX images must share dimensions"
        );
        out.extend_from_slice(img.pixels());
    }
    out
}

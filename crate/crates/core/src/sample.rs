//! Drawing training inputs from the pixels of a character.

use alloc::vec::Vec;

use rand::Rng;

use crate::geometry::Point;
use crate::image::{BinaryImage, GrayImage, Polarity};
use crate::{Error, Result};

/// Draws pixel coordinates from a character image.
///
/// A binary source is sampled uniformly over its foreground. A gray source is
/// sampled with probability proportional to each pixel's ink weight under the
/// given polarity, so zero-weight pixels are never drawn.
#[derive(Debug, Clone)]
pub struct PixelSampler {
    width: u32,
    height: u32,
    pixels: Vec<(u32, u32)>,
    /// Running weight totals, parallel to `pixels`; empty for uniform sampling.
    cumulative: Vec<u64>,
}

impl PixelSampler {
    pub fn from_binary(image: &BinaryImage) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::NoSampleablePixels);
        }
        Ok(PixelSampler {
            width: image.width(),
            height: image.height(),
            pixels: image.foreground().iter().copied().collect(),
            cumulative: Vec::new(),
        })
    }

    pub fn from_gray(image: &GrayImage, polarity: Polarity) -> Result<Self> {
        let w = image.width() as usize;
        let mut pixels = Vec::new();
        let mut cumulative = Vec::new();
        let mut total = 0u64;
        for (i, &v) in image.pixels().iter().enumerate() {
            let weight = polarity.weight(v);
            if weight > 0 {
                total += weight as u64;
                pixels.push(((i % w) as u32, (i / w) as u32));
                cumulative.push(total);
            }
        }
        if pixels.is_empty() {
            return Err(Error::NoSampleablePixels);
        }
        Ok(PixelSampler {
            width: image.width(),
            height: image.height(),
            pixels,
            cumulative,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Pixels that can be drawn (positive weight).
    pub fn support(&self) -> &[(u32, u32)] {
        &self.pixels
    }

    pub fn is_weighted(&self) -> bool {
        !self.cumulative.is_empty()
    }

    /// Draws one pixel coordinate.
    pub fn sample_pixel<R: Rng + ?Sized>(&self, rng: &mut R) -> (u32, u32) {
        let i = match self.cumulative.last() {
            None => rng.gen_range(0..self.pixels.len()),
            Some(&total) => {
                let r = rng.gen_range(0..total);
                self.cumulative.partition_point(|&c| c <= r)
            }
        };
        self.pixels[i]
    }

    /// Draws one pixel as a real-valued input vector.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let (x, y) = self.sample_pixel(rng);
        Point::new(x as f64, y as f64)
    }
}

//! Pixel grids and the preprocessing applied before training: binarization,
//! trimming to the character's bounding box, and noise injection.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Which side of the threshold counts as character ink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Polarity {
    /// Dark ink on a light page: `intensity < threshold` is foreground.
    #[default]
    DarkIsForeground,
    /// Light ink on a dark page (MNIST): `intensity >= threshold` is foreground.
    LightIsForeground,
}

impl Polarity {
    /// Sampling weight of a gray pixel under this polarity.
    #[inline]
    pub fn weight(self, intensity: u8) -> u32 {
        match self {
            Polarity::DarkIsForeground => 255 - intensity as u32,
            Polarity::LightIsForeground => intensity as u32,
        }
    }

    /// Intensity used to paint a pixel as background.
    pub fn background(self) -> u8 {
        match self {
            Polarity::DarkIsForeground => 255,
            Polarity::LightIsForeground => 0,
        }
    }

    /// Intensity used to paint a pixel as ink.
    pub fn ink(self) -> u8 {
        255 - self.background()
    }
}

/// An 8-bit gray image stored row-major, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage("width and height must be at least 1"));
        }
        if pixels.len() as u64 != width as u64 * height as u64 {
            return Err(Error::InvalidImage("pixel buffer length differs from width * height"));
        }
        Ok(GrayImage { width, height, pixels })
    }

    /// An image filled with a single intensity.
    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self> {
        let n = width as usize * height as usize;
        Self::new(width, height, alloc::vec![value; n])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Intensity at column `x`, row `y`.
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[self.index(x, y)]
    }

    pub fn set(&mut self, x: u32, y: u32, value: u8) {
        let i = self.index(x, y);
        self.pixels[i] = value;
    }

    /// Sub-image with top-left corner `(x0, y0)`.
    pub fn crop(&self, x0: u32, y0: u32, width: u32, height: u32) -> Result<GrayImage> {
        if x0 as u64 + width as u64 > self.width as u64 || y0 as u64 + height as u64 > self.height as u64 {
            return Err(Error::InvalidImage("crop window exceeds image"));
        }
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in y0..y0 + height {
            let start = self.index(x0, y);
            pixels.extend_from_slice(&self.pixels[start..start + width as usize]);
        }
        GrayImage::new(width, height, pixels)
    }

    fn index(&self, x: u32, y: u32) -> usize {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        y as usize * self.width as usize + x as usize
    }
}

/// A binary image: the set of character (foreground) pixel coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: u32,
    height: u32,
    foreground: BTreeSet<(u32, u32)>,
}

impl BinaryImage {
    pub fn new(width: u32, height: u32, foreground: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage("width and height must be at least 1"));
        }
        let foreground: BTreeSet<_> = foreground.into_iter().collect();
        if foreground.iter().any(|&(x, y)| x >= width || y >= height) {
            return Err(Error::InvalidImage("foreground pixel outside image bounds"));
        }
        Ok(BinaryImage {
            width,
            height,
            foreground,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Foreground pixels as `(x, y)`, sorted by `x` then `y`.
    pub fn foreground(&self) -> &BTreeSet<(u32, u32)> {
        &self.foreground
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.foreground.contains(&(x, y))
    }

    /// Number of foreground pixels (ρ in the noise experiment).
    pub fn count(&self) -> usize {
        self.foreground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.foreground.is_empty()
    }

    /// Paints foreground as ink and everything else as background.
    pub fn to_gray(&self, polarity: Polarity) -> GrayImage {
        let mut img =
            GrayImage::filled(self.width, self.height, polarity.background()).expect("dimensions already validated");
        for &(x, y) in &self.foreground {
            img.set(x, y, polarity.ink());
        }
        img
    }
}

/// Thresholds a gray image into foreground and background.
pub fn binarize(image: &GrayImage, threshold: u8, polarity: Polarity) -> BinaryImage {
    let w = image.width;
    let foreground = image.pixels.iter().enumerate().filter_map(|(i, &v)| {
        let fg = match polarity {
            Polarity::DarkIsForeground => v < threshold,
            Polarity::LightIsForeground => v >= threshold,
        };
        fg.then(|| ((i % w as usize) as u32, (i / w as usize) as u32))
    });
    BinaryImage {
        width: image.width,
        height: image.height,
        foreground: foreground.collect(),
    }
}

/// Crop window `(x0, y0, width, height)` that [`trim`] would use.
pub fn trim_bounds(image: &BinaryImage, margin: u32) -> Result<(u32, u32, u32, u32)> {
    let mut it = image.foreground.iter();
    let &(x, y) = it.next().ok_or(Error::NothingToTrim)?;
    let (mut x0, mut y0, mut x1, mut y1) = (x, y, x, y);
    for &(x, y) in it {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let x0 = x0.saturating_sub(margin);
    let y0 = y0.saturating_sub(margin);
    let x1 = x1.saturating_add(margin).min(image.width - 1);
    let y1 = y1.saturating_add(margin).min(image.height - 1);
    Ok((x0, y0, x1 - x0 + 1, y1 - y0 + 1))
}

/// Crops to the foreground bounding box grown by `margin` on every side
/// (clamped to the image) and rebases coordinates to the new origin.
pub fn trim(image: &BinaryImage, margin: u32) -> Result<BinaryImage> {
    let (x0, y0, width, height) = trim_bounds(image, margin)?;
    Ok(BinaryImage {
        width,
        height,
        foreground: image.foreground.iter().map(|&(x, y)| (x - x0, y - y0)).collect(),
    })
}

/// Noise rate `xi` (fraction of character pixels removed) and its seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    xi: f64,
    seed: u64,
}

impl NoiseSpec {
    pub fn new(xi: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::InvalidParam {
                name: "xi",
                reason: "noise rate must lie in [0, 1]",
            });
        }
        Ok(NoiseSpec { xi, seed })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of pixels removed from a character of `rho` pixels:
    /// `round(xi * rho)`, halves rounded away from zero.
    pub fn removed_count(&self, rho: usize) -> usize {
        (libm::round(self.xi * rho as f64) as usize).min(rho)
    }
}

/// Removes `round(xi * rho)` foreground pixels chosen uniformly without
/// replacement. The result depends only on the image and the spec.
pub fn inject_noise(image: &BinaryImage, spec: &NoiseSpec) -> BinaryImage {
    let mut pixels: Vec<(u32, u32)> = image.foreground.iter().copied().collect();
    let v = spec.removed_count(pixels.len());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // Partial Fisher-Yates: the first v slots end up holding the removed pixels.
    for i in 0..v {
        let j = rng.gen_range(i..pixels.len());
        pixels.swap(i, j);
    }
    BinaryImage {
        width: image.width,
        height: image.height,
        foreground: pixels[v..].iter().copied().collect(),
    }
}

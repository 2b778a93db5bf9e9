//! The full image-to-skeleton pipeline: binarize and trim, optional noise,
//! growing neural gas, rewiring, signature.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gng::{train_with, GngParams, GngState};
use crate::graph::SkeletonGraph;
use crate::image::{binarize, inject_noise, trim, trim_bounds, BinaryImage, GrayImage, NoiseSpec, Polarity};
use crate::rewire::{rewire, RewireParams};
use crate::sample::PixelSampler;
use crate::topology::{signature, TopologySignature, DEFAULT_CORNER_THRESHOLD};
use crate::{Error, Result};

const NOISE_STREAM: u64 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub threshold: u8,
    pub polarity: Polarity,
    /// Blank border kept around the character when trimming.
    pub margin: u32,
    /// Sample gray pixels in proportion to their ink instead of uniformly
    /// over the binarized foreground.
    pub intensity_weighted: bool,
    /// Fraction of character pixels to delete before training.
    pub noise_rate: Option<f64>,
    pub gng: GngParams,
    pub rewire: RewireParams,
    /// Degrees.
    pub corner_threshold: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            threshold: 128,
            polarity: Polarity::DarkIsForeground,
            margin: 1,
            intensity_weighted: false,
            noise_rate: None,
            gng: GngParams::default(),
            rewire: RewireParams::default(),
            corner_threshold: DEFAULT_CORNER_THRESHOLD,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.gng.validate()?;
        self.rewire.validate()?;
        if let Some(xi) = self.noise_rate {
            NoiseSpec::new(xi, 0)?;
        }
        if !self.corner_threshold.is_finite() {
            return Err(Error::InvalidParam {
                name: "corner_threshold",
                reason: "must be finite",
            });
        }
        Ok(())
    }

    fn noise_spec(&self) -> Result<Option<NoiseSpec>> {
        self.noise_rate
            .map(|xi| NoiseSpec::new(xi, noise_seed(self.gng.seed)))
            .transpose()
    }
}

/// Seed used for noise injection, derived from the run seed.
pub fn noise_seed(seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(NOISE_STREAM);
    rng.next_u64()
}

/// Everything the pipeline produced for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct Skeletonization {
    /// Trimmed (and possibly noised) character the network was trained on.
    pub image: BinaryImage,
    /// Graph straight out of the growing neural gas.
    pub learned: SkeletonGraph,
    /// Rewired graph.
    pub skeleton: SkeletonGraph,
    pub signature: TopologySignature,
}

pub fn skeletonize(image: &GrayImage, cfg: &PipelineConfig) -> Result<Skeletonization> {
    skeletonize_with(image, cfg, |_| {})
}

/// Runs the pipeline on a gray image; `observe` sees every training state.
pub fn skeletonize_with<F>(image: &GrayImage, cfg: &PipelineConfig, observe: F) -> Result<Skeletonization>
where
    F: FnMut(&GngState),
{
    cfg.validate()?;
    let binary = binarize(image, cfg.threshold, cfg.polarity);
    if !cfg.intensity_weighted {
        return skeletonize_binary_with(&binary, cfg, observe);
    }
    let (x0, y0, w, h) = trim_bounds(&binary, cfg.margin)?;
    let mut gray = image.crop(x0, y0, w, h)?;
    let trimmed = binarize(&gray, cfg.threshold, cfg.polarity);
    let kept = match cfg.noise_spec()? {
        Some(spec) => {
            let kept = inject_noise(&trimmed, &spec);
            for &(x, y) in trimmed.foreground().difference(kept.foreground()) {
                gray.set(x, y, cfg.polarity.background());
            }
            kept
        }
        None => trimmed,
    };
    let sampler = PixelSampler::from_gray(&gray, cfg.polarity)?;
    finish(kept, &sampler, cfg, observe)
}

pub fn skeletonize_binary(image: &BinaryImage, cfg: &PipelineConfig) -> Result<Skeletonization> {
    skeletonize_binary_with(image, cfg, |_| {})
}

/// Runs the pipeline on an already binarized image.
pub fn skeletonize_binary_with<F>(image: &BinaryImage, cfg: &PipelineConfig, observe: F) -> Result<Skeletonization>
where
    F: FnMut(&GngState),
{
    cfg.validate()?;
    let mut trimmed = trim(image, cfg.margin)?;
    if let Some(spec) = cfg.noise_spec()? {
        trimmed = inject_noise(&trimmed, &spec);
    }
    let sampler = PixelSampler::from_binary(&trimmed)?;
    finish(trimmed, &sampler, cfg, observe)
}

fn finish<F>(image: BinaryImage, sampler: &PixelSampler, cfg: &PipelineConfig, observe: F) -> Result<Skeletonization>
where
    F: FnMut(&GngState),
{
    let learned = train_with(sampler, &cfg.gng, observe)?;
    let skeleton = rewire(&learned, &cfg.rewire);
    let signature = signature(&skeleton, cfg.corner_threshold);
    Ok(Skeletonization {
        image,
        learned,
        skeleton,
        signature,
    })
}

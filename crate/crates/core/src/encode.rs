//! Tabular samples, min-max angle encoding, prefix splits and 4×4
//! grayscale patches.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::arch::InputAngles;
use crate::error::{Error, Result};

/// Features per tabular sample, one per qubit.
pub const FEATURE_COUNT: usize = 10;

/// Side length of an image patch.
pub const PATCH_SIDE: usize = 4;

/// Binary diagnosis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Benign = 0,
    Malignant = 1,
}

impl Label {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Label::Benign),
            1 => Some(Label::Malignant),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.bit())
    }

    /// Hard decision at threshold 0.5.
    pub fn from_probability(p: f64) -> Self {
        if p >= 0.5 {
            Label::Malignant
        } else {
            Label::Benign
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub features: [f64; FEATURE_COUNT],
    pub label: Label,
}

/// Per-feature minimum and maximum over a set of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureBounds {
    pub mins: [f64; FEATURE_COUNT],
    pub maxs: [f64; FEATURE_COUNT],
}

pub fn compute_bounds(samples: &[Sample]) -> Result<FeatureBounds> {
    let first = samples.first().ok_or(Error::EmptySamples)?;
    let mut bounds = FeatureBounds { mins: first.features, maxs: first.features };
    for s in &samples[1..] {
        for (i, &x) in s.features.iter().enumerate() {
            bounds.mins[i] = bounds.mins[i].min(x);
            bounds.maxs[i] = bounds.maxs[i].max(x);
        }
    }
    Ok(bounds)
}

/// Maps feature `i` linearly from `[min_i, max_i]` onto `[0, π]`, clamping
/// values outside the bounds. A constant feature encodes to 0.
pub fn encode(sample: &Sample, bounds: &FeatureBounds) -> InputAngles {
    let angles = sample
        .features
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let (lo, hi) = (bounds.mins[i], bounds.maxs[i]);
            let span = hi - lo;
            if span <= 0.0 {
                return 0.0;
            }
            let a = PI * ((x - lo) / span);
            // NaN falls through to 0
            if a > 0.0 {
                a.min(PI)
            } else {
                0.0
            }
        })
        .collect();
    InputAngles::new(angles).expect("encoded angles are clamped to [0, pi]")
}

/// First `train_count` items train; the remainder is held out.
pub fn split<T>(samples: &[T], train_count: usize) -> Result<(&[T], &[T])> {
    if train_count == 0 || train_count > samples.len() {
        return Err(Error::SplitRange { train_count, available: samples.len() });
    }
    Ok(samples.split_at(train_count))
}

/// Row-major grayscale image with intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::ImageShape { expected: width * height, found: pixels.len() });
        }
        if let Some(i) = pixels.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::PixelOutOfRange { row: i / width.max(1), col: i % width.max(1), value: pixels[i] });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrayPatch {
    pixels: [[f64; PATCH_SIDE]; PATCH_SIDE],
}

impl GrayPatch {
    pub fn new(pixels: [[f64; PATCH_SIDE]; PATCH_SIDE]) -> Result<Self> {
        for (row, line) in pixels.iter().enumerate() {
            for (col, &value) in line.iter().enumerate() {
                if !(0.0..=1.0).contains(&value) {
                    return Err(Error::PixelOutOfRange { row, col, value });
                }
            }
        }
        Ok(Self { pixels })
    }

    pub fn pixels(&self) -> &[[f64; PATCH_SIDE]; PATCH_SIDE] {
        &self.pixels
    }
}

/// The 4×4 window whose top-left corner is `(row, col)`.
pub fn extract_patch(image: &GrayImage, row: usize, col: usize) -> Result<GrayPatch> {
    let fits = row.checked_add(PATCH_SIDE).is_some_and(|end| end <= image.height)
        && col.checked_add(PATCH_SIDE).is_some_and(|end| end <= image.width);
    if !fits {
        return Err(Error::PatchOutOfBounds { row, col, height: image.height, width: image.width });
    }
    let mut pixels = [[0.0; PATCH_SIDE]; PATCH_SIDE];
    for (r, line) in pixels.iter_mut().enumerate() {
        for (c, px) in line.iter_mut().enumerate() {
            *px = image.get(row + r, col + c);
        }
    }
    Ok(GrayPatch { pixels })
}

/// `π · pixel`, row-major: 16 angles for a 16-qubit register.
pub fn patch_to_angles(patch: &GrayPatch) -> InputAngles {
    let angles = patch.pixels.iter().flatten().map(|&p| PI * p).collect();
    InputAngles::new(angles).expect("pixels lie in [0, 1]")
}

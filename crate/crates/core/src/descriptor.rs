//! Per-pixel descriptor maps.

use rayon::prelude::*;

use crate::entropy::{evaluate_index, IndexKind};
use crate::image::{rescale, Image, Pixel};
use crate::patch::{build_setting, GraphSetting, Neighborhood};
use crate::{Error, Result};

/// One (graph setting, index) pair and its patch parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescriptorConfig {
    pub setting: GraphSetting,
    pub kind: IndexKind,
    pub rho: f64,
    pub beta: f64,
    pub nbhd: Neighborhood,
    /// Scale applied to the normalized map when it becomes a segmentation channel.
    pub channel_weight: f64,
}

impl Default for DescriptorConfig {
    fn default() -> Self {
        DescriptorConfig {
            setting: GraphSetting::TwA,
            kind: IndexKind::ifv(0.1),
            rho: 5.0,
            beta: 0.1,
            nbhd: Neighborhood::Eight,
            channel_weight: 1.0,
        }
    }
}

impl DescriptorConfig {
    pub fn new(setting: GraphSetting, kind: IndexKind) -> Self {
        DescriptorConfig {
            setting,
            kind,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.kind.validate()?;
        if matches!(self.kind, IndexKind::Ide) && !self.setting.is_unweighted_tree() {
            return Err(Error::Incompatible(format!(
                "IDE requires unweighted graph: use TuE or TuA, not {}",
                self.setting
            )));
        }
        for (name, v) in [("rho", self.rho), ("beta", self.beta), ("channel weight", self.channel_weight)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    /// Descriptor value at a single pixel.
    pub fn evaluate_at(&self, u: &Image, p: Pixel) -> Result<f64> {
        let s = build_setting(u, p, self.setting, self.rho, self.beta, self.nbhd);
        evaluate_index(&s, self.kind)
    }
}

/// Descriptor values over the whole image plus the configuration used.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorMap {
    pub values: Image,
    pub config: DescriptorConfig,
}

impl DescriptorMap {
    pub fn dims(&self) -> (usize, usize) {
        self.values.dims()
    }
}

/// Evaluates `cfg` at every pixel of the single-channel image `u`.
///
/// Rows are processed in parallel; each value depends only on its own patch,
/// so the result does not depend on the worker count.
pub fn compute_descriptor_map(u: &Image, cfg: &DescriptorConfig) -> Result<DescriptorMap> {
    cfg.validate()?;
    if u.channels() != 1 {
        return Err(Error::InvalidParameter(format!(
            "descriptor maps need a single-channel image, got {} channels",
            u.channels()
        )));
    }
    let (w, h) = u.dims();
    let rows: Vec<Vec<f64>> = (0..h)
        .into_par_iter()
        .map(|y| (0..w).map(|x| cfg.evaluate_at(u, Pixel::new(x, y))).collect())
        .collect::<Result<_>>()?;
    let values = Image::from_vec(w, h, 1, rows.concat())?;
    Ok(DescriptorMap {
        values,
        config: *cfg,
    })
}

/// Affine rescale of the map to `[0, 1]`; constant maps become 0.5.
pub fn normalize_map(m: &DescriptorMap) -> Image {
    rescale(&m.values, 0.0, 1.0)
}

/// Normalizes each map and stacks them as channels, channel `i` scaled by
/// its configuration's `channel_weight`.
pub fn stack_maps(ms: &[DescriptorMap]) -> Result<Image> {
    let first = ms
        .first()
        .ok_or_else(|| Error::InvalidParameter("no descriptor maps to stack".into()))?;
    let planes = ms
        .iter()
        .map(|m| {
            if m.dims() != first.dims() {
                return Err(Error::DimensionMismatch(format!(
                    "{:?} vs {:?}",
                    m.dims(),
                    first.dims()
                )));
            }
            let k = m.config.channel_weight;
            Ok(normalize_map(m).map(|v| k * v))
        })
        .collect::<Result<Vec<_>>>()?;
    Image::from_channels(&planes)
}

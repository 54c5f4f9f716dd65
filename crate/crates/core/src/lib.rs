//! Graph-entropy texture descriptors and texture segmentation.
//!
//! Every pixel of a grey-scale image is turned into a small graph (a Euclidean
//! patch, an image-adaptive "amoeba" patch, or a Dijkstra search tree inside
//! either one). Entropy-based graph indices evaluated on those graphs give
//! per-pixel texture descriptors, which then drive a geodesic active contour
//! level-set segmentation. The [`fractal`] module relates the information
//! functionals behind the descriptors to a local fractal dimension.
//!
//! Module map:
//!
//! * [`image`]: images, masks, file I/O, smoothing and synthetic test images
//! * [`patch`]: pixel graphs, patch graphs, amoebas and Dijkstra trees
//! * [`entropy`]: Shannon entropy over information functionals, Dehmer entropies
//!   and the mean information on distances
//! * [`descriptor`]: per-pixel descriptor maps and channel stacking
//! * [`gac`]: edge maps, signed distances and the level-set solver
//! * [`fractal`]: dimension curves and sphere-growth dimension estimates
//! * [`cli`]: the `texseg` command-line front end

pub mod cli;
pub mod descriptor;
pub mod entropy;
mod error;
pub mod fractal;
pub mod gac;
pub mod image;
pub mod patch;

pub use error::{Error, Result};

use std::fs;
use std::path::Path;

use image::{DynamicImage, ImageBuffer, Luma, Rgb};

use super::{Image, ShapeMask};
use crate::{Error, Result};

const RAW_MAGIC: &[u8; 4] = b"TGF1";
const RAW_HEADER_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Pgm,
    Png,
    /// `TGF1` magic, little-endian u32 width/height/channels, then row-major
    /// little-endian f64 samples.
    F64Raw,
}

impl ImageFormat {
    /// Guesses the format from a file extension (`pgm`, `png`, `f64`/`raw`).
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .unwrap_or_default();
        match ext.as_str() {
            "pgm" => Ok(ImageFormat::Pgm),
            "png" => Ok(ImageFormat::Png),
            "f64" | "raw" | "f64raw" => Ok(ImageFormat::F64Raw),
            _ => Err(Error::UnsupportedFormat(format!(
                "cannot infer format of {}",
                path.display()
            ))),
        }
    }
}

/// Loads an image, converting RGB to luma.
pub fn load_image(path: impl AsRef<Path>, format: ImageFormat) -> Result<Image> {
    load_image_with(path, format, true)
}

/// Loads an image. With `grayscale`, RGB inputs are converted to luma
/// `0.299 R + 0.587 G + 0.114 B`; otherwise they keep three channels.
pub fn load_image_with(path: impl AsRef<Path>, format: ImageFormat, grayscale: bool) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    match format {
        ImageFormat::Pgm => decode_pgm(&bytes),
        ImageFormat::Png => decode_png(&bytes, grayscale),
        ImageFormat::F64Raw => decode_raw(&bytes),
    }
}

/// Saves an image. PGM and PNG round to the nearest integer and require
/// samples in `[0, 255]`.
pub fn save_image(img: &Image, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    let path = path.as_ref();
    let bytes = match format {
        ImageFormat::Pgm => encode_pgm(img)?,
        ImageFormat::Png => encode_png(img)?,
        ImageFormat::F64Raw => encode_raw(img),
    };
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Loads a mask; pixels brighter than mid-grey are inside.
pub fn load_mask(path: impl AsRef<Path>, format: ImageFormat) -> Result<ShapeMask> {
    let img = load_image(path, format)?;
    let inside = img.data().iter().map(|&v| v > 127.5).collect();
    ShapeMask::from_vec(img.width(), img.height(), inside)
}

pub fn save_mask(mask: &ShapeMask, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    save_image(&mask.to_image(), path, format)
}

fn to_byte(v: f64) -> Result<u8> {
    if !(0.0..=255.0).contains(&v) {
        return Err(Error::ValueOutOfRange(v));
    }
    Ok(v.round() as u8)
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderReader<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let tok = self
            .token()
            .ok_or_else(|| Error::MalformedHeader(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("bad {what}")))
    }
}

fn decode_pgm(bytes: &[u8]) -> Result<Image> {
    let mut r = HeaderReader { bytes, pos: 0 };
    let magic = r
        .token()
        .ok_or_else(|| Error::MalformedHeader("empty file".into()))?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(Error::MalformedHeader(format!(
                "unknown magic {:?}",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let width = r.number("width")?;
    let height = r.number("height")?;
    let maxval = r.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader("zero dimension".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::UnsupportedFormat(format!("PGM maxval {maxval}")));
    }
    let n = width * height;
    let scale = 255.0 / maxval as f64;
    let mut data = Vec::with_capacity(n);
    if binary {
        // exactly one whitespace byte separates the header from the payload
        let start = r.pos + 1;
        let bpp = if maxval > 255 { 2 } else { 1 };
        let payload = bytes.get(start..).unwrap_or(&[]);
        if payload.len() < n * bpp {
            return Err(Error::MalformedPayload);
        }
        for i in 0..n {
            let v = if bpp == 1 {
                payload[i] as usize
            } else {
                (payload[2 * i] as usize) << 8 | payload[2 * i + 1] as usize
            };
            if v > maxval {
                return Err(Error::MalformedPayload);
            }
            data.push(v as f64 * scale);
        }
    } else {
        for _ in 0..n {
            let tok = r.token().ok_or(Error::MalformedPayload)?;
            let v: usize = std::str::from_utf8(tok)
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::MalformedPayload)?;
            if v > maxval {
                return Err(Error::MalformedPayload);
            }
            data.push(v as f64 * scale);
        }
    }
    Image::from_vec(width, height, 1, data)
}

fn encode_pgm(img: &Image) -> Result<Vec<u8>> {
    if img.channels() != 1 {
        return Err(Error::UnsupportedFormat(format!(
            "PGM holds one channel, image has {}",
            img.channels()
        )));
    }
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    for &v in img.data() {
        out.push(to_byte(v)?);
    }
    Ok(out)
}

fn luma(r: f64, g: f64, b: f64) -> f64 {
    0.299 * r + 0.587 * g + 0.114 * b
}

fn decode_png(bytes: &[u8], grayscale: bool) -> Result<Image> {
    let dynamic = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)?;
    let (w, h) = (dynamic.width() as usize, dynamic.height() as usize);
    match dynamic {
        DynamicImage::ImageLuma8(_) | DynamicImage::ImageLumaA8(_) => {
            let buf = dynamic.into_luma8();
            Image::from_vec(w, h, 1, buf.into_raw().into_iter().map(f64::from).collect())
        }
        DynamicImage::ImageLuma16(_) | DynamicImage::ImageLumaA16(_) => {
            let buf = dynamic.into_luma16();
            Image::from_vec(
                w,
                h,
                1,
                buf.into_raw().into_iter().map(|v| v as f64 / 257.0).collect(),
            )
        }
        DynamicImage::ImageRgb8(_) | DynamicImage::ImageRgba8(_) => {
            let raw = dynamic.into_rgb8().into_raw();
            rgb_samples(w, h, raw.into_iter().map(f64::from).collect(), grayscale)
        }
        DynamicImage::ImageRgb16(_) | DynamicImage::ImageRgba16(_) => {
            let raw = dynamic.into_rgb16().into_raw();
            rgb_samples(
                w,
                h,
                raw.into_iter().map(|v| v as f64 / 257.0).collect(),
                grayscale,
            )
        }
        other => Err(Error::UnsupportedFormat(format!(
            "PNG color type {:?}",
            other.color()
        ))),
    }
}

fn rgb_samples(w: usize, h: usize, rgb: Vec<f64>, grayscale: bool) -> Result<Image> {
    if grayscale {
        let gray = rgb
            .chunks_exact(3)
            .map(|p| luma(p[0], p[1], p[2]))
            .collect();
        Image::from_vec(w, h, 1, gray)
    } else {
        Image::from_vec(w, h, 3, rgb)
    }
}

fn encode_png(img: &Image) -> Result<Vec<u8>> {
    let bytes: Vec<u8> = img.data().iter().map(|&v| to_byte(v)).collect::<Result<_>>()?;
    let (w, h) = (img.width() as u32, img.height() as u32);
    let dynamic = match img.channels() {
        1 => DynamicImage::ImageLuma8(
            ImageBuffer::<Luma<u8>, _>::from_raw(w, h, bytes).expect("buffer size"),
        ),
        3 => DynamicImage::ImageRgb8(
            ImageBuffer::<Rgb<u8>, _>::from_raw(w, h, bytes).expect("buffer size"),
        ),
        c => {
            return Err(Error::UnsupportedFormat(format!(
                "PNG output needs 1 or 3 channels, image has {c}"
            )))
        }
    };
    let mut out = std::io::Cursor::new(Vec::new());
    dynamic.write_to(&mut out, image::ImageFormat::Png)?;
    Ok(out.into_inner())
}

fn encode_raw(img: &Image) -> Vec<u8> {
    let mut out = Vec::with_capacity(RAW_HEADER_LEN + 8 * img.data().len());
    out.extend_from_slice(RAW_MAGIC);
    for dim in [img.width(), img.height(), img.channels()] {
        out.extend_from_slice(&(dim as u32).to_le_bytes());
    }
    for v in img.data() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn decode_raw(bytes: &[u8]) -> Result<Image> {
    if bytes.len() < RAW_HEADER_LEN || &bytes[..4] != RAW_MAGIC {
        return Err(Error::MalformedHeader("missing TGF1 magic".into()));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[4 * i..4 * i + 4].try_into().unwrap()) as usize;
    let (w, h, c) = (word(1), word(2), word(3));
    let payload = &bytes[RAW_HEADER_LEN..];
    if payload.len() != w * h * c * 8 {
        return Err(Error::MalformedPayload);
    }
    let data = payload
        .chunks_exact(8)
        .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
        .collect();
    Image::from_vec(w, h, c, data)
}

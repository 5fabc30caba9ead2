//! Five-color image transmission over the simulated channel.
//!
//! Images are paletted: every pixel is one of five symbols, each mapped to
//! an RGB color and to one alphabet state. PPM (P6 binary or P3 ASCII,
//! 8-bit) is the only supported container; encoding always emits P6 and a
//! decode of an encode is bit-exact.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::bell::ALPHABET;
use crate::channel::{
    confusion_from_sim, AnalyzerModel, ChannelMatrix, InconclusivePolicy, NoiseModel, Outcome,
    SimMode,
};
use crate::error::{Error, Result};
use crate::rng::stream;

const PIXEL_TAG: u64 = 0x706978;

/// Five RGB triples mapped to symbols 0..=4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    colors: [[u8; 3]; ALPHABET],
}

impl Palette {
    /// red, yellow, blue, green, white -> symbols 0..=4.
    pub fn standard() -> Self {
        Palette {
            colors: [
                [255, 0, 0],
                [255, 255, 0],
                [0, 0, 255],
                [0, 255, 0],
                [255, 255, 255],
            ],
        }
    }

    pub fn new(colors: [[u8; 3]; ALPHABET]) -> Result<Self> {
        for a in 0..ALPHABET {
            for b in (a + 1)..ALPHABET {
                if colors[a] == colors[b] {
                    return Err(Error::InvalidParameter {
                        name: "palette",
                        detail: format!("colors {a} and {b} are identical"),
                    });
                }
            }
        }
        Ok(Palette { colors })
    }

    pub fn color(&self, symbol: u8) -> [u8; 3] {
        self.colors[symbol as usize]
    }

    pub fn symbol_of(&self, rgb: [u8; 3]) -> Option<u8> {
        self.colors.iter().position(|c| *c == rgb).map(|k| k as u8)
    }

    /// Nearest palette entry by squared RGB distance; ties pick the lower
    /// symbol.
    pub fn nearest(&self, rgb: [u8; 3]) -> u8 {
        let mut best = 0u8;
        let mut best_d = u32::MAX;
        for (k, c) in self.colors.iter().enumerate() {
            let d: u32 = c
                .iter()
                .zip(rgb.iter())
                .map(|(&a, &b)| {
                    let diff = a as i32 - b as i32;
                    (diff * diff) as u32
                })
                .sum();
            if d < best_d {
                best_d = d;
                best = k as u8;
            }
        }
        best
    }
}

impl Default for Palette {
    fn default() -> Self {
        Palette::standard()
    }
}

/// A width x height grid of symbols 0..=4 with its palette.
#[derive(Clone, Debug, PartialEq)]
pub struct PalettedImage {
    pub width: u32,
    pub height: u32,
    pixels: Vec<u8>,
    pub palette: Palette,
}

impl PalettedImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>, palette: Palette) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage {
                detail: format!("degenerate dimensions {width}x{height}"),
            });
        }
        if pixels.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidImage {
                detail: format!("{} pixels for {width}x{height}", pixels.len()),
            });
        }
        if let Some(bad) = pixels.iter().position(|&s| s as usize >= ALPHABET) {
            return Err(Error::InvalidImage {
                detail: format!(
                    "pixel {bad} holds symbol {} (alphabet is 0..=4)",
                    pixels[bad]
                ),
            });
        }
        Ok(PalettedImage {
            width,
            height,
            pixels,
            palette,
        })
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    /// Relative frequency of each symbol.
    pub fn frequencies(&self) -> [f64; ALPHABET] {
        let mut counts = [0u64; ALPHABET];
        for &s in &self.pixels {
            counts[s as usize] += 1;
        }
        core::array::from_fn(|k| counts[k] as f64 / self.pixels.len() as f64)
    }
}

// ---------------------------------------------------------------------------
// PPM codec
// ---------------------------------------------------------------------------

struct PpmReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> PpmReader<'a> {
    fn skip_separators(&mut self) {
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<&'a [u8]> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::PpmFormat {
                detail: "unexpected end of header".to_string(),
            });
        }
        Ok(&self.data[start..self.pos])
    }

    fn number(&mut self) -> Result<u32> {
        let tok = self.token()?;
        core::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::PpmFormat {
                detail: "malformed number in header".to_string(),
            })
    }
}

/// Decode a P6 or P3 PPM payload into palette symbols. Off-palette pixels
/// are an error unless `lenient`, which snaps them to the nearest color.
pub fn decode_ppm(bytes: &[u8], palette: &Palette, lenient: bool) -> Result<PalettedImage> {
    let mut reader = PpmReader {
        data: bytes,
        pos: 0,
    };
    let magic = reader.token()?;
    let binary = match magic {
        b"P6" => true,
        b"P3" => false,
        other => {
            return Err(Error::PpmFormat {
                detail: format!("unsupported magic {:?}", core::str::from_utf8(other).ok()),
            })
        }
    };
    let width = reader.number()?;
    let height = reader.number()?;
    let maxval = reader.number()?;
    if maxval != 255 {
        return Err(Error::PpmFormat {
            detail: format!("depth {maxval} != 255"),
        });
    }
    let count = (width as usize) * (height as usize);
    let mut rgb = Vec::with_capacity(count * 3);
    if binary {
        // exactly one whitespace byte separates the header from the payload
        let start = reader.pos + 1;
        let end = start + count * 3;
        if reader.pos >= bytes.len() || !bytes[reader.pos].is_ascii_whitespace() {
            return Err(Error::PpmFormat {
                detail: "missing payload separator".to_string(),
            });
        }
        if bytes.len() < end {
            return Err(Error::PpmFormat {
                detail: format!("payload has {} of {} bytes", bytes.len() - start, count * 3),
            });
        }
        rgb.extend_from_slice(&bytes[start..end]);
    } else {
        for _ in 0..count * 3 {
            let v = reader.number()?;
            if v > 255 {
                return Err(Error::PpmFormat {
                    detail: format!("sample {v} > 255"),
                });
            }
            rgb.push(v as u8);
        }
    }
    let mut pixels = Vec::with_capacity(count);
    for (k, chunk) in rgb.chunks_exact(3).enumerate() {
        let color = [chunk[0], chunk[1], chunk[2]];
        match palette.symbol_of(color) {
            Some(s) => pixels.push(s),
            None if lenient => pixels.push(palette.nearest(color)),
            None => {
                return Err(Error::OffPalette {
                    x: (k as u32) % width,
                    y: (k as u32) / width,
                    rgb: color,
                })
            }
        }
    }
    PalettedImage::new(width, height, pixels, palette.clone())
}

/// Encode as binary P6.
pub fn encode_ppm(image: &PalettedImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(32 + image.len() * 3);
    out.extend_from_slice(format!("P6\n{} {}\n255\n", image.width, image.height).as_bytes());
    for &s in image.pixels() {
        out.extend_from_slice(&image.palette.color(s));
    }
    out
}

/// Fraction of pixels whose symbols agree.
pub fn fidelity(original: &PalettedImage, received: &PalettedImage) -> Result<f64> {
    if original.width != received.width || original.height != received.height {
        return Err(Error::InvalidImage {
            detail: format!(
                "dimension mismatch: {}x{} vs {}x{}",
                original.width, original.height, received.width, received.height
            ),
        });
    }
    let same = original
        .pixels()
        .iter()
        .zip(received.pixels())
        .filter(|(a, b)| a == b)
        .count();
    Ok(same as f64 / original.len() as f64)
}

/// Analytic expectation of the transmission fidelity: the color-frequency
/// weighted diagonal of the policy-resolved channel.
pub fn expected_fidelity(
    image: &PalettedImage,
    channel: &ChannelMatrix,
    policy: InconclusivePolicy,
) -> Result<f64> {
    if policy == InconclusivePolicy::SeparateOutcome {
        return Err(Error::InvalidParameter {
            name: "policy",
            detail: "transmission must resolve inconclusive events (retry or uniform guess)"
                .to_string(),
        });
    }
    let resolved = channel.with_policy(policy)?;
    let freq = image.frequencies();
    Ok((0..ALPHABET).map(|c| freq[c] * resolved.diagonal(c)).sum())
}

/// Outcome of sending one pixel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PixelResult {
    pub symbol: u8,
    pub trials: u64,
    pub inconclusive: u64,
}

/// Send one pixel through the noisy analyzer. Each trial is one entangled
/// pair; a trial registers with probability `η²` and its coincidence pattern
/// is then decoded. The per-pixel stream `(seed, index)` keeps parallel runs
/// bit-identical to serial ones.
pub fn transmit_pixel(
    model: &AnalyzerModel,
    noise: &NoiseModel,
    policy: InconclusivePolicy,
    seed: u64,
    index: u64,
    sent: u8,
) -> Result<PixelResult> {
    let mut rng = stream(seed, &[PIXEL_TAG, index]);
    let eta2 = noise.pair_efficiency();
    let mut trials = 0u64;
    let mut inconclusive = 0u64;
    match policy {
        InconclusivePolicy::SeparateOutcome => Err(Error::InvalidParameter {
            name: "policy",
            detail: "transmission must resolve inconclusive events".to_string(),
        }),
        InconclusivePolicy::RetryUntilConclusive => loop {
            trials += rng.geometric(eta2);
            let event = model.sample_event(sent, noise, &mut rng)?;
            match model.decode(event) {
                Outcome::Symbol(s) => {
                    return Ok(PixelResult {
                        symbol: s,
                        trials,
                        inconclusive,
                    })
                }
                Outcome::Inconclusive => inconclusive += 1,
            }
        },
        InconclusivePolicy::UniformGuess => {
            trials += rng.geometric(eta2);
            let event = model.sample_event(sent, noise, &mut rng)?;
            let symbol = match model.decode(event) {
                Outcome::Symbol(s) => s,
                Outcome::Inconclusive => {
                    inconclusive += 1;
                    rng.below(ALPHABET as u64) as u8
                }
            };
            Ok(PixelResult {
                symbol,
                trials,
                inconclusive,
            })
        }
    }
}

/// Transmission summary.
#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionReport {
    pub fidelity: f64,
    pub pixels_total: u64,
    pub pixels_wrong: u64,
    pub trials_total: u64,
    pub inconclusive_total: u64,
    pub expected_trials_per_pixel: f64,
    pub seed: u64,
}

/// Expected pairs per pixel: `1/η²` for one registered event, divided by the
/// conclusive probability under the retry policy.
pub fn expected_trials_per_pixel(
    model: &AnalyzerModel,
    noise: &NoiseModel,
    policy: InconclusivePolicy,
    image: &PalettedImage,
) -> Result<f64> {
    let per_detection = 1.0 / noise.pair_efficiency();
    match policy {
        InconclusivePolicy::RetryUntilConclusive => {
            let ch = confusion_from_sim(model, noise, SimMode::Exact)?;
            let freq = image.frequencies();
            let mean: f64 = (0..ALPHABET)
                .map(|c| freq[c] * per_detection / (1.0 - ch.inconclusive(c)))
                .sum();
            Ok(mean)
        }
        _ => Ok(per_detection),
    }
}

/// Combine per-pixel results into the received image and its report.
pub fn assemble_transmission(
    original: &PalettedImage,
    results: &[PixelResult],
    expected_trials: f64,
    seed: u64,
) -> Result<(PalettedImage, TransmissionReport)> {
    let pixels: Vec<u8> = results.iter().map(|r| r.symbol).collect();
    let received = PalettedImage::new(
        original.width,
        original.height,
        pixels,
        original.palette.clone(),
    )?;
    let wrong = original
        .pixels()
        .iter()
        .zip(received.pixels())
        .filter(|(a, b)| a != b)
        .count() as u64;
    let report = TransmissionReport {
        fidelity: 1.0 - wrong as f64 / original.len() as f64,
        pixels_total: original.len() as u64,
        pixels_wrong: wrong,
        trials_total: results.iter().map(|r| r.trials).sum(),
        inconclusive_total: results.iter().map(|r| r.inconclusive).sum(),
        expected_trials_per_pixel: expected_trials,
        seed,
    };
    Ok((received, report))
}

/// Encode, transmit and decode every pixel of an image. Deterministic for a
/// fixed seed; pixel order does not matter because each pixel has its own
/// stream.
pub fn transmit(
    image: &PalettedImage,
    model: &AnalyzerModel,
    noise: &NoiseModel,
    policy: InconclusivePolicy,
    seed: u64,
) -> Result<(PalettedImage, TransmissionReport)> {
    noise.validate()?;
    let mut results = Vec::with_capacity(image.len());
    for (k, &sent) in image.pixels().iter().enumerate() {
        results.push(transmit_pixel(model, noise, policy, seed, k as u64, sent)?);
    }
    let expected = expected_trials_per_pixel(model, noise, policy, image)?;
    assemble_transmission(image, &results, expected, seed)
}

/// The bundled five-color test pattern: a white field with a blue frame,
/// green corner wedges, a red diamond and a yellow core, at the reference
/// size 53x188.
pub fn generate_test_image(palette: Palette) -> PalettedImage {
    let (width, height) = (53u32, 188u32);
    let mut pixels = Vec::with_capacity((width * height) as usize);
    let (cx, cy) = (width as i64 / 2, height as i64 / 2);
    for y in 0..height as i64 {
        for x in 0..width as i64 {
            let border = x < 2 || y < 2 || x >= width as i64 - 2 || y >= height as i64 - 2;
            // diamond metric scaled so the red lobe spans most of the width
            let diamond = (x - cx).abs() * 7 + (y - cy).abs() * 2;
            let symbol = if border {
                2 // blue frame
            } else if diamond <= 60 {
                1 // yellow core
            } else if diamond <= 140 {
                0 // red diamond
            } else if (y - cy).abs() > 70 {
                3 // green caps
            } else {
                4 // white field
            };
            pixels.push(symbol);
        }
    }
    PalettedImage::new(width, height, pixels, palette).expect("generated image is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(pixels: Vec<u8>, w: u32, h: u32) -> PalettedImage {
        PalettedImage::new(w, h, pixels, Palette::standard()).unwrap()
    }

    #[test]
    fn red_pixel_decodes_to_symbol_zero() {
        let bytes = b"P6\n1 1\n255\n\xff\x00\x00";
        let img = decode_ppm(bytes, &Palette::standard(), false).unwrap();
        assert_eq!(img.pixels(), &[0]);
    }

    #[test]
    fn p3_and_p6_agree() {
        let p3 = b"P3\n2 1\n255\n255 0 0 255 255 255\n";
        let img3 = decode_ppm(p3, &Palette::standard(), false).unwrap();
        assert_eq!(img3.pixels(), &[0, 4]);
        let p6 = encode_ppm(&img3);
        let img6 = decode_ppm(&p6, &Palette::standard(), false).unwrap();
        assert_eq!(img3, img6);
    }

    #[test]
    fn comments_in_headers_are_skipped() {
        let bytes = b"P6 # magic\n# a comment line\n1 1 # dims\n255\n\x00\x00\xff";
        let img = decode_ppm(bytes, &Palette::standard(), false).unwrap();
        assert_eq!(img.pixels(), &[2]);
    }

    #[test]
    fn off_palette_is_strict_error_with_coordinates() {
        let bytes = b"P6\n2 1\n255\n\xff\x00\x00\x80\x80\x80";
        match decode_ppm(bytes, &Palette::standard(), false) {
            Err(Error::OffPalette { x, y, rgb }) => {
                assert_eq!((x, y), (1, 0));
                assert_eq!(rgb, [128, 128, 128]);
            }
            other => panic!("expected off-palette error, got {other:?}"),
        }
        // lenient mode snaps gray to the nearest color
        let img = decode_ppm(bytes, &Palette::standard(), true).unwrap();
        assert_eq!(img.pixels()[0], 0);
    }

    #[test]
    fn wrong_depth_is_rejected() {
        let bytes = b"P6\n1 1\n65535\n\xff\xff\x00\x00\x00\x00";
        assert!(matches!(
            decode_ppm(bytes, &Palette::standard(), false),
            Err(Error::PpmFormat { .. })
        ));
    }

    #[test]
    fn byte_layout_of_two_pixel_image() {
        let img = tiny(alloc::vec![0, 4], 2, 1);
        let bytes = encode_ppm(&img);
        assert!(bytes.ends_with(&[255, 0, 0, 255, 255, 255]));
    }

    #[test]
    fn zero_sized_images_are_rejected() {
        assert!(PalettedImage::new(0, 0, Vec::new(), Palette::standard()).is_err());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let img = generate_test_image(Palette::standard());
        let back = decode_ppm(&encode_ppm(&img), &Palette::standard(), false).unwrap();
        assert_eq!(img, back);
    }

    #[test]
    fn test_image_has_the_reference_size_and_all_colors() {
        let img = generate_test_image(Palette::standard());
        assert_eq!((img.width, img.height), (53, 188));
        assert_eq!(img.len(), 9964);
        let freq = img.frequencies();
        for (k, f) in freq.iter().enumerate() {
            assert!(*f > 0.02, "symbol {k} frequency {f}");
        }
    }

    #[test]
    fn fidelity_counts_matching_pixels() {
        let a = tiny(alloc::vec![0, 1, 2, 3], 2, 2);
        let b = tiny(alloc::vec![0, 1, 2, 4], 2, 2);
        assert_eq!(fidelity(&a, &a).unwrap(), 1.0);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.75);
        let different = tiny(alloc::vec![1, 2, 3, 4], 2, 2);
        assert_eq!(fidelity(&a, &different).unwrap(), 0.0);
        let c = tiny(alloc::vec![0, 1], 2, 1);
        assert!(fidelity(&a, &c).is_err());
    }

    #[test]
    fn reference_sized_mismatch_count_rounds_to_0_952() {
        // 478 wrong pixels out of 53x188 = 9964
        let original = generate_test_image(Palette::standard());
        let mut pixels = original.pixels().to_vec();
        for p in pixels.iter_mut().take(478) {
            *p = (*p + 1) % 5;
        }
        let received =
            PalettedImage::new(original.width, original.height, pixels, Palette::standard())
                .unwrap();
        let f = fidelity(&original, &received).unwrap();
        assert!((f - (1.0 - 478.0 / 9964.0)).abs() < 1e-15);
        assert_eq!(libm::round(f * 1000.0) / 1000.0, 0.952);
    }

    #[test]
    fn palette_mapping_is_a_bijection_on_the_five_colors() {
        let palette = Palette::standard();
        for symbol in 0..ALPHABET as u8 {
            assert_eq!(palette.symbol_of(palette.color(symbol)), Some(symbol));
            assert_eq!(palette.nearest(palette.color(symbol)), symbol);
        }
    }

    #[test]
    fn expected_fidelity_is_the_weighted_diagonal() {
        use crate::channel::{INCONCLUSIVE, N_OUTCOMES};
        let identity = ChannelMatrix::identity();
        let any = tiny(alloc::vec![0, 3, 4], 3, 1);
        let one =
            expected_fidelity(&any, &identity, InconclusivePolicy::RetryUntilConclusive).unwrap();
        assert!((one - 1.0).abs() < 1e-15);

        let mut rows = [[0.0; N_OUTCOMES]; ALPHABET];
        let diag = [0.926, 0.926, 0.926, 0.926, 0.972];
        for (x, row) in rows.iter_mut().enumerate() {
            row[x] = diag[x];
            row[(x + 1) % ALPHABET] = 1.0 - diag[x];
        }
        let ch = ChannelMatrix::from_rows(rows).unwrap();
        let only4 = tiny(alloc::vec![4, 4], 2, 1);
        let f = expected_fidelity(&only4, &ch, InconclusivePolicy::RetryUntilConclusive).unwrap();
        assert!((f - 0.972).abs() < 1e-12);

        // a symbol the channel never decodes correctly forces fidelity zero
        let mut dead = rows;
        dead[0] = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        let ch0 = ChannelMatrix::from_rows(dead).unwrap();
        let only0 = tiny(alloc::vec![0], 1, 1);
        let zero =
            expected_fidelity(&only0, &ch0, InconclusivePolicy::RetryUntilConclusive).unwrap();
        assert_eq!(zero, 0.0);
        // retries renormalize inconclusive mass away
        let mut rows2 = [[0.0; N_OUTCOMES]; ALPHABET];
        for (x, row) in rows2.iter_mut().enumerate() {
            row[x] = 0.8;
            row[INCONCLUSIVE] = 0.2;
        }
        let ch2 = ChannelMatrix::from_rows(rows2).unwrap();
        let f2 = expected_fidelity(&only4, &ch2, InconclusivePolicy::RetryUntilConclusive).unwrap();
        assert!((f2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noiseless_transmission_is_perfect() {
        let model = AnalyzerModel::bundled().unwrap();
        let img = tiny(alloc::vec![0, 1, 2, 3, 4, 0], 3, 2);
        let (received, report) = transmit(
            &img,
            &model,
            &NoiseModel::noiseless(),
            InconclusivePolicy::RetryUntilConclusive,
            1,
        )
        .unwrap();
        assert_eq!(received.pixels(), img.pixels());
        assert_eq!(report.fidelity, 1.0);
        assert_eq!(report.pixels_wrong, 0);
        assert_eq!(report.trials_total, 6); // unit efficiency, all conclusive
    }

    #[test]
    fn transmission_is_seed_reproducible() {
        let model = AnalyzerModel::bundled().unwrap();
        let img = generate_test_image(Palette::standard());
        let noise = NoiseModel::calibrated();
        let a = transmit(
            &img,
            &model,
            &noise,
            InconclusivePolicy::RetryUntilConclusive,
            7,
        )
        .unwrap();
        let b = transmit(
            &img,
            &model,
            &noise,
            InconclusivePolicy::RetryUntilConclusive,
            7,
        )
        .unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn separate_outcome_policy_is_rejected_for_transmission() {
        let model = AnalyzerModel::bundled().unwrap();
        let img = tiny(alloc::vec![0], 1, 1);
        assert!(transmit(
            &img,
            &model,
            &NoiseModel::calibrated(),
            InconclusivePolicy::SeparateOutcome,
            1
        )
        .is_err());
    }
}

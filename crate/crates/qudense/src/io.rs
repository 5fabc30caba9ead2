//! Path-level image IO over the core byte codecs.

use std::path::Path;

use qudense_core::image::{decode_ppm, encode_ppm, Palette, PalettedImage};

use crate::CliResult;

/// Read a P6/P3 PPM file into palette symbols. Off-palette pixels are an
/// error unless `lenient`, which snaps them to the nearest palette color.
pub fn load_ppm(path: &Path, palette: &Palette, lenient: bool) -> CliResult<PalettedImage> {
    let bytes = std::fs::read(path)
        .map_err(|e| crate::CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(decode_ppm(&bytes, palette, lenient)?)
}

/// Write an image as binary P6. A load of a save returns the image
/// bit-exactly.
pub fn save_ppm(image: &PalettedImage, path: &Path) -> CliResult<()> {
    std::fs::write(path, encode_ppm(image))
        .map_err(|e| crate::CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qudense_core::image::generate_test_image;

    #[test]
    fn save_then_load_is_identity() {
        let image = generate_test_image(Palette::standard());
        let path = std::env::temp_dir().join(format!("qudense_io_{}.ppm", std::process::id()));
        save_ppm(&image, &path).unwrap();
        let back = load_ppm(&path, &Palette::standard(), false).unwrap();
        assert_eq!(image, back);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn missing_file_is_a_usage_error() {
        let err = load_ppm(
            Path::new("/nonexistent/image.ppm"),
            &Palette::standard(),
            false,
        );
        assert!(matches!(err, Err(crate::CliError::Usage(_))));
    }
}

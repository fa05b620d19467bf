#pragma once

#include <string>

#include "focusfuse/image.hpp"

namespace ff {

/// Load an 8- or 16-bit grayscale or RGB raster (binary PGM "P5" or PNG,
/// chosen by content) as a gray image scaled to [0,1]. RGB inputs are
/// converted to luminance (0.299 R + 0.587 G + 0.114 B).
///
/// Throws std::runtime_error for unreadable/truncated files and
/// unsupported formats; zero-sized images are rejected.
GrayImage load_image(const std::string& path);

/// Load as RGB. Grayscale files are replicated across the three planes.
RgbImage load_rgb(const std::string& path);

/// True if the file decodes to a 3-channel image.
bool image_is_rgb(const std::string& path);

/// Write a gray image. Values are clamped to [0,1] and quantized to 8 bits
/// with round-half-up. ".pgm"/".pnm" selects binary PGM (maxval 255),
/// ".png" an 8-bit grayscale PNG.
void save_image(const GrayImage& img, const std::string& path);

/// Write an 8-bit RGB PNG (".png" only).
void save_rgb(const RgbImage& img, const std::string& path);

/// Round-half-up quantization of one [0,1]-clamped intensity to a byte.
uint8_t quantize8(double v);

}  // namespace ff

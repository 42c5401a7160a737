#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "minubench/types.hpp"

namespace minubench {

/// 8-bit wire quantization of an angle: round(theta * 256 / 2pi) mod 256
/// (the standard's 1.40625 degree unit).
std::uint8_t quantize_angle(double theta);
double dequantize_angle(std::uint8_t byte);

/// Encodes a single-view ISO/IEC 19794-2:2005 finger minutiae record
/// (big-endian). finger_id / impression_id survive only when they parse as
/// decimal integers in [0, 255]; the wire format has one byte for each.
/// Throws DataError when a field exceeds its bit range (x or y >= 2^14).
std::vector<std::uint8_t> encode_iso19794_2(const MinutiaeTemplate& t);

/// Inverse of encode on its image. Throws DataError on truncated records,
/// bad magic/version, or a count byte inconsistent with the record length.
MinutiaeTemplate decode_iso19794_2(std::span<const std::uint8_t> bytes);

}  // namespace minubench

#include "minubench/iso19794.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace minubench {

namespace {

constexpr std::size_t kHeaderSize = 24;
constexpr std::size_t kViewHeaderSize = 4;
constexpr std::size_t kMinutiaSize = 6;
constexpr std::size_t kExtendedLengthSize = 2;
constexpr int kCoordinateLimit = 1 << 14;

constexpr std::uint8_t kTypeEnding = 0b01;
constexpr std::uint8_t kTypeBifurcation = 0b10;
constexpr std::uint8_t kTypeOther = 0b00;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>((b[at] << 8) | b[at + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (static_cast<std::uint32_t>(b[at]) << 24) |
         (static_cast<std::uint32_t>(b[at + 1]) << 16) |
         (static_cast<std::uint32_t>(b[at + 2]) << 8) |
         static_cast<std::uint32_t>(b[at + 3]);
}

std::uint8_t type_code(MinutiaKind kind) {
  switch (kind) {
    case MinutiaKind::kEnding:
      return kTypeEnding;
    case MinutiaKind::kBifurcation:
      return kTypeBifurcation;
    case MinutiaKind::kOther:
      return kTypeOther;
  }
  return kTypeOther;
}

MinutiaKind kind_from_code(std::uint8_t code) {
  switch (code) {
    case kTypeEnding:
      return MinutiaKind::kEnding;
    case kTypeBifurcation:
      return MinutiaKind::kBifurcation;
    default:
      return MinutiaKind::kOther;
  }
}

// Opaque ids fit the wire only when they are small decimal integers.
std::uint8_t id_byte(const std::string& id) {
  if (id.empty()) return 0;
  char* end = nullptr;
  const long v = std::strtol(id.c_str(), &end, 10);
  if (end == nullptr || *end != '\0' || v < 0 || v > 255) return 0;
  return static_cast<std::uint8_t>(v);
}

}  // namespace

std::uint8_t quantize_angle(double theta) {
  const long q = std::lround(theta * 256.0 / kTwoPi);
  return static_cast<std::uint8_t>(((q % 256) + 256) % 256);
}

double dequantize_angle(std::uint8_t byte) { return byte * (kTwoPi / 256.0); }

std::vector<std::uint8_t> encode_iso19794_2(const MinutiaeTemplate& t) {
  if (t.count() > kMaxMinutiae) {
    throw DataError("encode_iso19794_2: minutiae count exceeds 255");
  }
  for (int i = 0; i < t.count(); ++i) {
    const Minutia& m = t.minutiae[i];
    if (m.x < 0 || m.x >= kCoordinateLimit || m.y < 0 ||
        m.y >= kCoordinateLimit) {
      std::ostringstream os;
      os << "encode_iso19794_2: minutia " << i
         << " coordinate exceeds 14-bit range";
      throw DataError(os.str());
    }
  }
  if (t.width >= kCoordinateLimit || t.height >= kCoordinateLimit) {
    throw DataError("encode_iso19794_2: image dimensions exceed 14-bit range");
  }

  const std::uint32_t total =
      static_cast<std::uint32_t>(kHeaderSize + kViewHeaderSize +
                                 kMinutiaSize * t.minutiae.size() +
                                 kExtendedLengthSize);

  std::vector<std::uint8_t> out;
  out.reserve(total);
  out.insert(out.end(), {'F', 'M', 'R', 0});
  out.insert(out.end(), {' ', '2', '0', 0});
  put_u32(out, total);
  put_u16(out, 0);  // capture equipment
  put_u16(out, static_cast<std::uint16_t>(t.width));
  put_u16(out, static_cast<std::uint16_t>(t.height));
  put_u16(out, static_cast<std::uint16_t>(t.resolution));
  put_u16(out, static_cast<std::uint16_t>(t.resolution));
  out.push_back(1);  // view count
  out.push_back(0);  // reserved

  out.push_back(id_byte(t.finger_id));      // finger position
  out.push_back(id_byte(t.impression_id));  // view number / impression
  out.push_back(0);                         // finger quality
  out.push_back(static_cast<std::uint8_t>(t.minutiae.size()));

  for (const Minutia& m : t.minutiae) {
    put_u16(out, static_cast<std::uint16_t>((type_code(m.kind) << 14) | m.x));
    put_u16(out, static_cast<std::uint16_t>(m.y));
    out.push_back(quantize_angle(m.theta));
    out.push_back(static_cast<std::uint8_t>(m.quality));
  }
  put_u16(out, 0);  // extended data length
  return out;
}

MinutiaeTemplate decode_iso19794_2(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize + kViewHeaderSize + kExtendedLengthSize) {
    throw DataError("decode_iso19794_2: truncated record");
  }
  const bool magic_ok = bytes[0] == 'F' && bytes[1] == 'M' && bytes[2] == 'R' &&
                        bytes[3] == 0;
  const bool version_ok =
      bytes[4] == ' ' && bytes[5] == '2' && bytes[6] == '0' && bytes[7] == 0;
  if (!magic_ok || !version_ok) {
    throw DataError("decode_iso19794_2: bad magic or format version");
  }
  const std::uint32_t total = get_u32(bytes, 8);
  if (total != bytes.size()) {
    throw DataError(
        "decode_iso19794_2: record length field does not match input size");
  }
  if (bytes[22] != 1) {
    throw DataError("decode_iso19794_2: unsupported view count (expected 1)");
  }

  MinutiaeTemplate t;
  t.width = get_u16(bytes, 14);
  t.height = get_u16(bytes, 16);
  t.resolution = get_u16(bytes, 18);
  t.finger_id = std::to_string(bytes[kHeaderSize + 0]);
  t.impression_id = std::to_string(bytes[kHeaderSize + 1]);

  const int count = bytes[kHeaderSize + 3];
  const std::size_t expected = kHeaderSize + kViewHeaderSize +
                               kMinutiaSize * static_cast<std::size_t>(count) +
                               kExtendedLengthSize;
  if (bytes.size() != expected) {
    std::ostringstream os;
    os << "decode_iso19794_2: count byte " << count << " implies " << expected
       << " bytes but record has " << bytes.size();
    throw DataError(os.str());
  }

  t.minutiae.reserve(count);
  std::size_t at = kHeaderSize + kViewHeaderSize;
  for (int i = 0; i < count; ++i, at += kMinutiaSize) {
    Minutia m;
    const std::uint16_t tx = get_u16(bytes, at);
    m.kind = kind_from_code(static_cast<std::uint8_t>(tx >> 14));
    m.x = tx & 0x3fff;
    m.y = get_u16(bytes, at + 2) & 0x3fff;
    m.theta = dequantize_angle(bytes[at + 4]);
    m.quality = bytes[at + 5];
    t.minutiae.push_back(m);
  }
  return t;
}

}  // namespace minubench

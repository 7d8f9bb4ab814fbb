// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cghw Authors

#include "cghw/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "cghw/errors.hpp"

namespace cghw {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failed: " + path.string());
  }
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot create " + tmp.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

// ---------------------------------------------------------------------------
// PGM

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = static_cast<char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  unsigned long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFul) {
        throw FormatError(std::string("PGM ") + what + " too large");
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw FormatError(std::string("PGM header: missing ") + what);
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw FormatError("not a PGM file (bad magic)");
  }
  if (bytes[1] != '5') {
    throw FormatError(std::string("unsupported PNM format P") + static_cast<char>(bytes[1]) +
                      " (only binary P5 is supported)");
  }
  HeaderReader h(bytes);
  const unsigned long width = h.number("width");
  const unsigned long height = h.number("height");
  const unsigned long maxval = h.number("maxval");
  if (width == 0 || height == 0) {
    throw FormatError("PGM dimensions must be positive");
  }
  if (maxval != 255) {
    throw FormatError("unsupported PGM depth: maxval " + std::to_string(maxval) +
                      " (only 255 is supported)");
  }
  if (h.pos() >= bytes.size() || !std::isspace(bytes[h.pos()])) {
    throw FormatError("PGM header not terminated by whitespace");
  }
  h.advance();
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() - h.pos() < count) {
    throw FormatError("truncated PGM payload: expected " + std::to_string(count) +
                      " bytes, found " + std::to_string(bytes.size() - h.pos()));
  }
  std::vector<std::uint8_t> px(bytes.begin() + static_cast<std::ptrdiff_t>(h.pos()),
                               bytes.begin() + static_cast<std::ptrdiff_t>(h.pos() + count));
  return GrayImage(width, height, std::move(px));
}

std::vector<std::uint8_t> serialize_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

GrayImage read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_pgm(img));
}

// ---------------------------------------------------------------------------
// Envelope

namespace {

constexpr char kMagic[4] = {'C', 'G', 'H', 'W'};

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(bytes[offset + i]) << (8 * i);
  }
  return v;
}

}  // namespace

std::vector<std::uint8_t> serialize_envelope(const CipherEnvelope& env) {
  env.validate();
  const int width_bytes = bit_depth(env.mode) / 8;
  std::vector<std::uint8_t> out;
  out.reserve(kEnvelopeHeaderSize + env.payload.size() * width_bytes);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(env.format_version);
  out.push_back(static_cast<std::uint8_t>(env.mode));
  put_le<std::uint32_t>(out, env.width);
  put_le<std::uint32_t>(out, env.height);
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(env.qmin));
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(env.qmax));
  for (std::uint16_t s : env.payload) {
    if (width_bytes == 1) {
      out.push_back(static_cast<std::uint8_t>(s));
    } else {
      put_le<std::uint16_t>(out, s);
    }
  }
  return out;
}

CipherEnvelope parse_envelope(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kEnvelopeHeaderSize) {
    throw FormatError("truncated envelope header (" + std::to_string(bytes.size()) + " bytes)");
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError("bad envelope magic");
  }
  CipherEnvelope env;
  env.format_version = bytes[4];
  if (env.format_version != kFormatVersion) {
    throw FormatError("unsupported envelope version " + std::to_string(env.format_version));
  }
  if (bytes[5] > 1) {
    throw FormatError("unknown cipher mode " + std::to_string(bytes[5]));
  }
  env.mode = static_cast<CipherMode>(bytes[5]);
  env.width = get_le<std::uint32_t>(bytes, 6);
  env.height = get_le<std::uint32_t>(bytes, 10);
  env.qmin = std::bit_cast<double>(get_le<std::uint64_t>(bytes, 14));
  env.qmax = std::bit_cast<double>(get_le<std::uint64_t>(bytes, 22));

  const std::size_t width_bytes = static_cast<std::size_t>(bit_depth(env.mode) / 8);
  const std::size_t count = static_cast<std::size_t>(env.width) * env.height;
  const std::size_t have = bytes.size() - kEnvelopeHeaderSize;
  if (have != count * width_bytes) {
    throw FormatError((have < count * width_bytes ? "truncated" : "oversized") +
                      std::string(" envelope payload: header declares ") +
                      std::to_string(count * width_bytes) + " bytes, found " +
                      std::to_string(have));
  }
  env.payload.resize(count);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t off = kEnvelopeHeaderSize + t * width_bytes;
    env.payload[t] = width_bytes == 1 ? bytes[off] : get_le<std::uint16_t>(bytes, off);
  }
  env.validate();
  return env;
}

CipherEnvelope read_envelope(const std::filesystem::path& path) {
  return parse_envelope(read_file(path));
}

void write_envelope(const CipherEnvelope& env, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_envelope(env));
}

// ---------------------------------------------------------------------------
// Key file

namespace {

constexpr std::string_view kKeyMagic = "cghw-key";
constexpr int kKeyVersion = 1;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("key file: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::string_view expect_field(std::string_view token, std::string_view name) {
  if (token.size() <= name.size() || token.substr(0, name.size()) != name ||
      token[name.size()] != '=') {
    throw FormatError("key file: expected " + std::string(name) + "=..., got '" +
                      std::string(token) + "'");
  }
  return token.substr(name.size() + 1);
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string serialize_key(const KeyMaterial& keys) {
  std::ostringstream out;
  out << kKeyMagic << ' ' << kKeyVersion << '\n';
  out << "strict_eq14 " << (keys.strict_eq14 ? 1 : 0) << '\n';
  out << "permutation "
      << (keys.permutation == PermutationVariant::kKeyed ? "keyed" : "data-sort") << '\n';
  out << "provenance " << (keys.provenance == Provenance::kDerivedFromImage ? "derived" : "user")
      << '\n';
  for (int k = 1; k <= kStreamCount; ++k) {
    const StreamKey& s = keys.stream(k);
    out << "stream " << k << " x0=" << fmt17(s.params.x0) << " a=" << fmt17(s.params.a)
        << " N=" << s.params.degree << " burn_in=" << s.burn_in << '\n';
  }
  out << "end\n";
  return out.str();
}

KeyMaterial parse_key(std::string_view text) {
  std::vector<std::vector<std::string_view>> lines;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(tokens(line));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  constexpr std::size_t kLines = 4 + kStreamCount + 1;
  if (lines.size() != kLines || lines.back() != std::vector<std::string_view>{"end"}) {
    throw FormatError("key file truncated or malformed: expected " + std::to_string(kLines) +
                      " lines ending in 'end'");
  }
  auto keyword = [&](std::size_t i, std::string_view name) {
    if (lines[i].size() != 2 || lines[i][0] != name) {
      throw FormatError("key file: expected '" + std::string(name) + " <value>' on line " +
                        std::to_string(i + 1));
    }
    return lines[i][1];
  };
  if (keyword(0, kKeyMagic) != std::to_string(kKeyVersion)) {
    throw FormatError("key file: unsupported version");
  }
  KeyMaterial keys;
  const std::string_view strict = keyword(1, "strict_eq14");
  if (strict != "0" && strict != "1") throw FormatError("key file: strict_eq14 must be 0 or 1");
  keys.strict_eq14 = strict == "1";
  const std::string_view perm = keyword(2, "permutation");
  if (perm == "keyed") {
    keys.permutation = PermutationVariant::kKeyed;
  } else if (perm == "data-sort") {
    keys.permutation = PermutationVariant::kDataSort;
  } else {
    throw FormatError("key file: unknown permutation variant");
  }
  const std::string_view prov = keyword(3, "provenance");
  if (prov == "derived") {
    keys.provenance = Provenance::kDerivedFromImage;
  } else if (prov == "user") {
    keys.provenance = Provenance::kUserSupplied;
  } else {
    throw FormatError("key file: unknown provenance");
  }
  for (int k = 1; k <= kStreamCount; ++k) {
    const auto& t = lines[3 + static_cast<std::size_t>(k)];
    if (t.size() != 6 || t[0] != "stream" || t[1] != std::to_string(k)) {
      throw FormatError("key file: malformed record for stream " + std::to_string(k));
    }
    StreamKey& s = keys.stream(k);
    s.params.x0 = parse_number<double>(expect_field(t[2], "x0"), "x0");
    s.params.a = parse_number<double>(expect_field(t[3], "a"), "a");
    s.params.degree = parse_number<int>(expect_field(t[4], "N"), "N");
    s.burn_in = parse_number<std::size_t>(expect_field(t[5], "burn_in"), "burn_in");
    try {
      s.params.validate();
    } catch (const DomainError& e) {
      throw FormatError("key file: stream " + std::to_string(k) + ": " + e.what());
    }
  }
  return keys;
}

KeyMaterial read_key(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  return parse_key(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void write_key(const KeyMaterial& keys, const std::filesystem::path& path) {
  const std::string text = serialize_key(keys);
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                    text.size()));
}

}  // namespace cghw

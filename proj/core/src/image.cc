// Copyright 2026 The Forgeline Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "forgeline/image.h"

#include <png.h>

#include <array>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "forgeline/error.h"

namespace forgeline {

RgbImage::RgbImage(int w, int h, uint8_t fill) : width(w), height(h) {
  if (w < 1 || h < 1) throw DimensionError("image dimensions must be >= 1");
  pixels.assign(PixelCount() * 3, fill);
}

BinaryMask DiffMask(const RgbImage& a, const RgbImage& b) {
  if (!a.SameShape(b)) throw DimensionError("image shape mismatch");
  BinaryMask mask(a.width, a.height);
  for (size_t i = 0; i < a.PixelCount(); ++i) {
    if (std::memcmp(&a.pixels[i * 3], &b.pixels[i * 3], 3) != 0)
      mask.set_flat(i, true);
  }
  return mask;
}

namespace {

constexpr char kAlphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

constexpr std::array<int8_t, 256> MakeDecodeTable() {
  std::array<int8_t, 256> table{};
  for (auto& v : table) v = -1;
  for (int i = 0; i < 64; ++i)
    table[static_cast<unsigned char>(kAlphabet[i])] = static_cast<int8_t>(i);
  return table;
}
constexpr auto kDecodeTable = MakeDecodeTable();

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

std::vector<uint8_t> EncodeRaw(const uint8_t* data, int width, int height,
                               png_uint_32 format) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(width);
  png.image.height = static_cast<png_uint_32>(height);
  png.image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, data, 0,
                                 nullptr)) {
    throw CodecError(std::string("PNG encode failed: ") + png.image.message);
  }
  std::vector<uint8_t> out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, data, 0,
                                 nullptr)) {
    throw CodecError(std::string("PNG encode failed: ") + png.image.message);
  }
  out.resize(size);
  return out;
}

std::vector<uint8_t> DecodeRaw(std::span<const uint8_t> bytes,
                               png_uint_32 format, int& width, int& height) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0)
    throw CodecError("payload is not a PNG");
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(),
                                        bytes.size())) {
    throw CodecError(std::string("PNG decode failed: ") + png.image.message);
  }
  png.image.format = format;
  std::vector<uint8_t> out(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, out.data(), 0, nullptr)) {
    throw CodecError(std::string("PNG decode failed: ") + png.image.message);
  }
  width = static_cast<int>(png.image.width);
  height = static_cast<int>(png.image.height);
  return out;
}

}  // namespace

std::string Base64Encode(std::span<const uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    const uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  const size_t rest = bytes.size() - i;
  if (rest > 0) {
    uint32_t v = bytes[i] << 16;
    if (rest == 2) v |= bytes[i + 1] << 8;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

std::vector<uint8_t> Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) throw CodecError("base64 length not a multiple of 4");
  std::vector<uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=') {
        if (i + 4 != text.size() || k < 2) throw CodecError("bad base64 padding");
        vals[k] = 0;
        ++pad;
      } else {
        if (pad > 0) throw CodecError("bad base64 padding");
        vals[k] = kDecodeTable[static_cast<unsigned char>(c)];
        if (vals[k] < 0) throw CodecError("invalid base64 character");
      }
    }
    const uint32_t v =
        (vals[0] << 18) | (vals[1] << 12) | (vals[2] << 6) | vals[3];
    out.push_back(static_cast<uint8_t>(v >> 16));
    if (pad < 2) out.push_back(static_cast<uint8_t>(v >> 8));
    if (pad < 1) out.push_back(static_cast<uint8_t>(v));
  }
  return out;
}

std::vector<uint8_t> EncodePng(const RgbImage& image) {
  if (image.pixels.size() != image.PixelCount() * 3 || image.width < 1)
    throw DimensionError("malformed RGB image");
  return EncodeRaw(image.pixels.data(), image.width, image.height,
                   PNG_FORMAT_RGB);
}

RgbImage DecodePng(std::span<const uint8_t> bytes) {
  RgbImage image;
  image.pixels = DecodeRaw(bytes, PNG_FORMAT_RGB, image.width, image.height);
  return image;
}

std::vector<uint8_t> EncodeMaskPng(const BinaryMask& mask) {
  std::vector<uint8_t> gray(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) gray[i] = mask[i] ? 255 : 0;
  return EncodeRaw(gray.data(), mask.width(), mask.height(), PNG_FORMAT_GRAY);
}

BinaryMask DecodeMaskPng(std::span<const uint8_t> bytes) {
  int w = 0;
  int h = 0;
  const auto gray = DecodeRaw(bytes, PNG_FORMAT_GRAY, w, h);
  BinaryMask mask(w, h);
  for (size_t i = 0; i < gray.size(); ++i) mask.set_flat(i, gray[i] != 0);
  return mask;
}

bool PeekPngSize(std::span<const uint8_t> bytes, int& width, int& height) {
  // Signature (8) + IHDR length/type (8) + width (4) + height (4).
  if (bytes.size() < 24 || png_sig_cmp(bytes.data(), 0, 8) != 0) return false;
  auto be32 = [&](size_t off) {
    return (static_cast<uint32_t>(bytes[off]) << 24) |
           (static_cast<uint32_t>(bytes[off + 1]) << 16) |
           (static_cast<uint32_t>(bytes[off + 2]) << 8) | bytes[off + 3];
  };
  width = static_cast<int>(be32(16));
  height = static_cast<int>(be32(20));
  return width > 0 && height > 0;
}

std::string ImageToBase64Png(const RgbImage& image) {
  return Base64Encode(EncodePng(image));
}

RgbImage ImageFromBase64Png(std::string_view text) {
  if (text.starts_with(kPngDataUriPrefix)) text.remove_prefix(kPngDataUriPrefix.size());
  return DecodePng(Base64Decode(text));
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path);
}

void WritePng(const std::string& path, const RgbImage& image) {
  WriteFileBytes(path, EncodePng(image));
}

std::vector<uint8_t> ReadImageRefBytes(const std::string& ref,
                                       const std::string& base_dir) {
  if (ref.starts_with(kPngDataUriPrefix))
    return Base64Decode(std::string_view(ref).substr(kPngDataUriPrefix.size()));
  std::filesystem::path path(ref);
  if (path.is_relative() && !base_dir.empty())
    path = std::filesystem::path(base_dir) / path;
  return ReadFileBytes(path.string());
}

RgbImage LoadImageRef(const std::string& ref, const std::string& base_dir) {
  return DecodePng(ReadImageRefBytes(ref, base_dir));
}

}  // namespace forgeline

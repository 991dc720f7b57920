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

#include "forgeline/perturb.h"

#include <algorithm>
#include <csetjmp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include <jpeglib.h>

#include "forgeline/error.h"
#include "forgeline/rng.h"

namespace forgeline {

namespace {

constexpr uint64_t kNoiseStream = 0x6e6f697365ULL;  // "noise"

uint8_t ToByte(double v) {
  return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void OnJpegError(j_common_ptr info) {
  auto* err = reinterpret_cast<JpegErrorManager*>(info->err);
  (*info->err->format_message)(info, err->message);
  std::longjmp(err->jump, 1);
}

std::vector<uint8_t> EncodeJpeg(const RgbImage& image, int qf) {
  jpeg_compress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = OnJpegError;
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_compress(&cinfo);
    std::free(buffer);
    throw CodecError(std::string("jpeg encode: ") + err.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = static_cast<JDIMENSION>(image.width);
  cinfo.image_height = static_cast<JDIMENSION>(image.height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, qf, TRUE);
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(image.at(cinfo.next_scanline, 0));
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  std::vector<uint8_t> out(buffer, buffer + size);
  jpeg_destroy_compress(&cinfo);
  std::free(buffer);
  return out;
}

RgbImage DecodeJpeg(const std::vector<uint8_t>& bytes) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = OnJpegError;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw CodecError(std::string("jpeg decode: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), bytes.size());
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&cinfo);
  RgbImage out(static_cast<int>(cinfo.output_width),
               static_cast<int>(cinfo.output_height));
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.at(cinfo.output_scanline, 0);
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

PerturbSpec PerturbSpec::Parse(const std::string& text) {
  PerturbSpec spec;
  spec.text_ = text;
  if (text == "none") return spec;
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigError("perturbation \"" + text + "\" is not kind:param");
  const std::string kind = text.substr(0, colon);
  const std::string param = text.substr(colon + 1);
  size_t used = 0;
  try {
    if (kind == "jpeg") {
      spec.kind = PerturbKind::kJpeg;
      spec.qf = std::stoi(param, &used);
      if (spec.qf < 1 || spec.qf > 100) throw ConfigError("QF must be in [1,100]");
    } else if (kind == "noise") {
      spec.kind = PerturbKind::kNoise;
      spec.sigma = std::stod(param, &used);
      if (!(spec.sigma > 0) || !std::isfinite(spec.sigma))
        throw ConfigError("noise sigma must be > 0");
    } else if (kind == "blur") {
      spec.kind = PerturbKind::kBlur;
      spec.ksize = std::stoi(param, &used);
      if (spec.ksize < 3 || spec.ksize % 2 == 0)
        throw ConfigError("blur ksize must be odd and >= 3");
    } else {
      throw ConfigError("unknown perturbation kind \"" + kind + "\"");
    }
  } catch (const std::logic_error&) {
    throw ConfigError("perturbation \"" + text + "\" has a bad parameter");
  }
  if (used != param.size())
    throw ConfigError("perturbation \"" + text + "\" has trailing characters");
  return spec;
}

std::string PerturbSpec::ToString() const {
  if (!text_.empty()) return text_;
  switch (kind) {
    case PerturbKind::kNone:
      return "none";
    case PerturbKind::kJpeg:
      return "jpeg:" + std::to_string(qf);
    case PerturbKind::kNoise:
      return "noise:" + FormatNumber(sigma);
    case PerturbKind::kBlur:
      return "blur:" + std::to_string(ksize);
  }
  return "";
}

std::string PerturbSpec::Label() const {
  switch (kind) {
    case PerturbKind::kNone:
      return "No Distortion";
    case PerturbKind::kJpeg:
      return "JPEG Comp. (QF = " + std::to_string(qf) + ")";
    case PerturbKind::kNoise:
      return "Gaussian Noise (σ = " + FormatNumber(sigma) + ")";
    case PerturbKind::kBlur:
      return "Gaussian Blur (Ksize = " + std::to_string(ksize) + ")";
  }
  return "";
}

RgbImage JpegCompress(const RgbImage& image, int qf) {
  if (qf < 1 || qf > 100) throw ConfigError("JPEG quality must be in [1,100]");
  if (image.width < 1 || image.height < 1)
    throw DimensionError("JPEG: empty image");
  return DecodeJpeg(EncodeJpeg(image, qf));
}

double NoiseDraw(uint64_t seed, uint64_t index) {
  const uint64_t pair = index / 2;
  const double u1 = ToUnit(CounterHash(seed, kNoiseStream, 2 * pair));
  const double u2 = ToUnit(CounterHash(seed, kNoiseStream, 2 * pair + 1));
  // 1 - u1 lies in (0, 1], keeping the logarithm finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return index % 2 == 0 ? r * std::cos(theta) : r * std::sin(theta);
}

RgbImage GaussianNoise(const RgbImage& image, double sigma, uint64_t seed) {
  if (!(sigma > 0)) throw ConfigError("noise sigma must be > 0");
  RgbImage out = image;
  for (size_t i = 0; i < out.pixels.size(); ++i) {
    const double v = image.pixels[i] / 255.0 + sigma * NoiseDraw(seed, i);
    out.pixels[i] = ToByte(std::clamp(v, 0.0, 1.0) * 255.0);
  }
  return out;
}

double BlurSigma(int ksize) { return 0.3 * ((ksize - 1) * 0.5 - 1) + 0.8; }

std::vector<double> GaussianKernel(int ksize) {
  if (ksize < 3 || ksize % 2 == 0)
    throw ConfigError("blur ksize must be odd and >= 3");
  const double sigma = BlurSigma(ksize);
  const int half = ksize / 2;
  std::vector<double> k(ksize);
  double sum = 0;
  for (int i = 0; i < ksize; ++i) {
    const double d = i - half;
    k[i] = std::exp(-d * d / (2 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

RgbImage GaussianBlur(const RgbImage& image, int ksize) {
  const auto kernel = GaussianKernel(ksize);
  const int half = ksize / 2;
  const int w = image.width, h = image.height;
  std::vector<double> tmp(image.pixels.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        double acc = 0;
        for (int k = -half; k <= half; ++k) {
          const int cc = std::clamp(c + k, 0, w - 1);
          acc += kernel[k + half] * image.at(r, cc)[ch];
        }
        tmp[(static_cast<size_t>(r) * w + c) * 3 + ch] = acc;
      }
    }
  }
  RgbImage out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        double acc = 0;
        for (int k = -half; k <= half; ++k) {
          const int rr = std::clamp(r + k, 0, h - 1);
          acc += kernel[k + half] * tmp[(static_cast<size_t>(rr) * w + c) * 3 + ch];
        }
        out.at(r, c)[ch] = ToByte(acc);
      }
    }
  }
  return out;
}

RgbImage ApplyPerturbation(const RgbImage& image, const PerturbSpec& spec) {
  switch (spec.kind) {
    case PerturbKind::kNone:
      return image;
    case PerturbKind::kJpeg:
      return JpegCompress(image, spec.qf);
    case PerturbKind::kNoise:
      return GaussianNoise(image, spec.sigma, spec.seed);
    case PerturbKind::kBlur:
      return GaussianBlur(image, spec.ksize);
  }
  return image;
}

std::vector<PerturbSpec> DefaultRobustnessGrid(uint64_t seed) {
  std::vector<PerturbSpec> grid;
  for (const char* s : {"none", "jpeg:50", "jpeg:35", "jpeg:20", "noise:0.1",
                        "noise:0.2", "noise:0.3", "blur:5", "blur:9", "blur:15"}) {
    grid.push_back(PerturbSpec::Parse(s));
    grid.back().seed = seed;
  }
  return grid;
}

}  // namespace forgeline

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

#include "forgeline/text_metrics.h"

#include <algorithm>
#include <cmath>

#include "forgeline/error.h"

namespace forgeline {

namespace {

// Decodes one UTF-8 code point at text[i], advancing i. Returns -1 for an
// invalid sequence (consuming one byte).
int32_t NextCodePoint(std::string_view text, size_t& i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  int len = 0;
  int32_t cp = 0;
  if (b0 < 0x80) {
    ++i;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return -1;
  }
  if (i + len > text.size()) {
    ++i;
    return -1;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return -1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

void AppendUtf8(std::string& out, int32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool IsSeparator(int32_t cp) {
  if (cp < 0) return true;
  if (cp < 0x80) {
    const auto c = static_cast<unsigned char>(cp);
    return !((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
             (c >= '0' && c <= '9'));
  }
  return (cp >= 0x80 && cp <= 0xBF) ||      // Latin-1 controls, punctuation
         cp == 0xD7 || cp == 0xF7 ||        // multiplication, division signs
         (cp >= 0x2000 && cp <= 0x206F) ||  // general punctuation, spaces
         (cp >= 0x3000 && cp <= 0x303F) ||  // CJK symbols and punctuation
         (cp >= 0xFF00 && cp <= 0xFF0F) ||  // fullwidth punctuation
         cp == 0xFEFF;
}

int32_t ToLower(int32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x100 && cp <= 0x17F && cp != 0x130 && cp != 0x138 &&
      cp != 0x149 && cp != 0x17F) {
    // Latin Extended-A alternates upper/lower, with parity flipping in
    // 0x139-0x148 and 0x179-0x17E.
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) ||
                           (cp >= 0x179 && cp <= 0x17E);
    if ((cp % 2 == 1) == odd_upper) return cp + 1;
    return cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

double Harmonic(double p, double r) {
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  size_t i = 0;
  while (i < text.size()) {
    const int32_t cp = NextCodePoint(text, i);
    if (IsSeparator(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      AppendUtf8(current, ToLower(cp));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

size_t LcsLength(std::span<const std::string> a,
                 std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<size_t> prev(b.size() + 1, 0);
  std::vector<size_t> curr(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                     : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

RougeL RougeLTokens(std::span<const std::string> candidate,
                    std::span<const std::string> reference) {
  RougeL out;
  if (candidate.empty() && reference.empty()) {
    out.precision = out.recall = out.f = 1.0;
    return out;
  }
  if (candidate.empty() || reference.empty()) return out;
  out.lcs = LcsLength(candidate, reference);
  out.precision = static_cast<double>(out.lcs) / candidate.size();
  out.recall = static_cast<double>(out.lcs) / reference.size();
  out.f = Harmonic(out.precision, out.recall);
  return out;
}

RougeL RougeLText(std::string_view candidate, std::string_view reference) {
  const auto c = Tokenize(candidate);
  const auto r = Tokenize(reference);
  return RougeLTokens(c, r);
}

double RougeLScore(std::string_view candidate, std::string_view reference) {
  return RougeLText(candidate, reference).score();
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DimensionError("embedding dims differ: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!std::isfinite(dot) || !std::isfinite(na) || !std::isfinite(nb))
    throw ValidationError("non-finite embedding");
  if (na == 0 || nb == 0) throw ValidationError("zero embedding vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

CssResult CssScore(const std::string& candidate, const std::string& reference,
                   Embedder& embedder) {
  const auto a = embedder.EmbedText(candidate);
  const auto b = embedder.EmbedText(reference);
  CssResult out;
  out.cosine = CosineSimilarity(a, b);
  out.score = 100.0 * std::max(0.0, out.cosine);
  return out;
}

std::string FormatRegionResponse(std::span<const RegionText> regions) {
  std::string out;
  for (size_t i = 0; i < regions.size(); ++i) {
    if (i > 0) out += '\n';
    out += "Artifact " + std::to_string(i + 1);
    if (!regions[i].location.empty()) out += " at " + regions[i].location;
    out += ": ";
    std::string_view e = regions[i].explanation;
    while (!e.empty() && (e.back() == '.' || e.back() == ' ')) e.remove_suffix(1);
    out += e;
    out += '.';
  }
  return out;
}

std::string AlignFreeFormResponse(std::string_view text) {
  std::vector<RegionText> regions;
  std::string sentence;
  auto flush = [&] {
    const auto b = sentence.find_first_not_of(" \t\r");
    if (b != std::string::npos) {
      const auto e = sentence.find_last_not_of(" \t\r");
      regions.push_back({"", sentence.substr(b, e - b + 1)});
    }
    sentence.clear();
  };
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?' || c == '\n') {
      flush();
    } else {
      sentence += c;
    }
  }
  flush();
  return FormatRegionResponse(regions);
}

void TextEvaluator::Add(const std::string& id, const std::string& candidate,
                        const std::string& reference) {
  Item item{id, RougeLScore(candidate, reference), std::nullopt};
  if (embedder_) item.css = CssScore(candidate, reference, *embedder_);
  items_.push_back(std::move(item));
}

nlohmann::json TextEvaluator::Report() const {
  nlohmann::json per_sample = nlohmann::json::array();
  double rouge_sum = 0;
  double css_sum = 0;
  double cos_sum = 0;
  for (const auto& item : items_) {
    nlohmann::json j = {{"id", item.id}, {"rouge_l", item.rouge_l}};
    rouge_sum += item.rouge_l;
    if (item.css) {
      j["css"] = item.css->score;
      j["cosine"] = item.css->cosine;
      css_sum += item.css->score;
      cos_sum += item.css->cosine;
    }
    per_sample.push_back(std::move(j));
  }
  const double n = items_.empty() ? 1.0 : static_cast<double>(items_.size());
  nlohmann::json means = {{"rouge_l", rouge_sum / n}};
  if (embedder_) {
    means["css"] = css_sum / n;
    means["cosine"] = cos_sum / n;
  }
  return {{"schema_version", 1},
          {"kind", "text"},
          {"count", items_.size()},
          {"mean", std::move(means)},
          {"per_sample", std::move(per_sample)}};
}

}  // namespace forgeline

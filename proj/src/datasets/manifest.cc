/* Copyright 2026 The capharness Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "capharness/datasets/manifest.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"
#include "capharness/common/json_util.h"
#include "capharness/text/tokenizer.h"

namespace capharness {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string LineLocus(std::size_t line) { return "line " + std::to_string(line); }

json ParseJsonOrThrow(std::string_view text, const std::string& locus) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(locus, std::string("invalid JSON: ") + e.what());
  }
}

std::string RequireString(const json& obj, const char* key, const std::string& locus) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(locus, std::string("missing \"") + key + "\"");
  if (!it->is_string()) throw ParseError(locus, std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

// JSON ids may be numbers (COCO) or strings.
std::string IdToString(const json& id, const std::string& locus) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw ParseError(locus, "id must be a string or integer");
}

Manifest ParseNativeJsonl(std::string_view text, const LoadOptions& options) {
  Manifest m;
  m.name = options.name;
  const std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string locus = LineLocus(i + 1);
    if (TrimAscii(lines[i]).empty()) continue;
    const json record = ParseJsonOrThrow(lines[i], locus);
    if (!record.is_object()) throw ParseError(locus, "record must be a JSON object");
    if (record.contains("manifest")) {
      const json& header = record.at("manifest");
      if (!header.is_object()) throw ParseError(locus, "\"manifest\" header must be an object");
      if (header.contains("name")) m.name = RequireString(header, "name", locus);
      if (header.contains("provenance")) m.provenance = header.at("provenance");
      continue;
    }
    Sample s;
    s.sample_id = RequireString(record, "sample_id", locus);
    s.image_path = RequireString(record, "image_path", locus);
    auto refs = record.find("references");
    if (refs == record.end() || !refs->is_array()) {
      throw ParseError(locus, "sample '" + s.sample_id + "' needs a \"references\" array");
    }
    for (const json& r : *refs) {
      if (!r.is_string()) throw ParseError(locus, "references must be strings");
      s.references.push_back(r.get<std::string>());
    }
    if (record.contains("domain")) {
      try {
        s.domain = ParseDomain(RequireString(record, "domain", locus));
      } catch (const ParseError& e) {
        throw ParseError(locus, e.what());
      }
    }
    m.samples.push_back(std::move(s));
  }
  return m;
}

// Accepts "image|number|caption" rows (with an optional header row) and the
// original "image#number<TAB>caption" token file.
Manifest ParseFlickrTsv(std::string_view text, const LoadOptions& options) {
  Manifest m;
  m.name = options.name;
  m.provenance = {{"source_format", "flickr_tsv"}};
  std::unordered_map<std::string, std::size_t> index;
  const std::vector<std::string> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string locus = LineLocus(i + 1);
    std::string_view line = TrimAscii(lines[i]);
    if (line.empty()) continue;
    std::string image;
    std::string number;
    std::string caption;
    if (const auto bar = line.find('|'); bar != std::string_view::npos) {
      const auto bar2 = line.find('|', bar + 1);
      if (bar2 == std::string_view::npos) {
        throw ParseError(locus, "expected image_name|comment_number|comment");
      }
      image = TrimAscii(line.substr(0, bar));
      number = TrimAscii(line.substr(bar + 1, bar2 - bar - 1));
      caption = TrimAscii(line.substr(bar2 + 1));
      if (image == "image_name") continue;
    } else if (const auto tab = line.find('\t'); tab != std::string_view::npos) {
      const std::string_view key = TrimAscii(line.substr(0, tab));
      const auto hash = key.rfind('#');
      if (hash == std::string_view::npos) throw ParseError(locus, "expected image#number<TAB>caption");
      image = key.substr(0, hash);
      number = key.substr(hash + 1);
      caption = TrimAscii(line.substr(tab + 1));
    } else {
      throw ParseError(locus, "expected image_name|comment_number|comment");
    }
    int parsed = 0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), parsed);
    if (image.empty() || ec != std::errc() || ptr != number.data() + number.size()) {
      throw ParseError(locus, "malformed image name or comment number");
    }
    if (caption.empty()) {
      throw ParseError(locus, "sample '" + image + "' has an empty caption");
    }
    auto [it, inserted] = index.try_emplace(image, m.samples.size());
    if (inserted) {
      Sample s;
      s.sample_id = image;
      s.image_path = (options.images_dir.empty() ? fs::path(image) : options.images_dir / image).string();
      m.samples.push_back(std::move(s));
    }
    m.samples[it->second].references.push_back(std::move(caption));
  }
  return m;
}

// COCO-style {"images": [...], "annotations": [...]}; images keep array order.
Manifest ParseNocapsJson(std::string_view text, const LoadOptions& options) {
  const json root = ParseJsonOrThrow(text, "document");
  if (!root.is_object()) throw ParseError("document", "expected a JSON object");
  auto images = root.find("images");
  auto annotations = root.find("annotations");
  if (images == root.end() || !images->is_array()) throw ParseError("document", "missing \"images\" array");
  if (annotations == root.end() || !annotations->is_array()) {
    throw ParseError("document", "missing \"annotations\" array");
  }
  Manifest m;
  m.name = options.name;
  m.provenance = {{"source_format", "nocaps_json"}};
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < images->size(); ++i) {
    const std::string locus = "images[" + std::to_string(i) + "]";
    const json& img = (*images)[i];
    if (!img.is_object() || !img.contains("id")) throw ParseError(locus, "image needs an \"id\"");
    Sample s;
    s.sample_id = IdToString(img.at("id"), locus);
    const std::string file = RequireString(img, "file_name", locus);
    s.image_path = (options.images_dir.empty() ? fs::path(file) : options.images_dir / file).string();
    if (img.contains("domain")) {
      try {
        s.domain = ParseDomain(RequireString(img, "domain", locus));
      } catch (const ParseError& e) {
        throw ParseError(locus, e.what());
      }
    }
    if (!index.try_emplace(s.sample_id, m.samples.size()).second) {
      throw ParseError(locus, "duplicate sample_id '" + s.sample_id + "'");
    }
    m.samples.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < annotations->size(); ++i) {
    const std::string locus = "annotations[" + std::to_string(i) + "]";
    const json& ann = (*annotations)[i];
    if (!ann.is_object() || !ann.contains("image_id")) throw ParseError(locus, "annotation needs \"image_id\"");
    const std::string id = IdToString(ann.at("image_id"), locus);
    auto it = index.find(id);
    if (it == index.end()) throw ParseError(locus, "annotation for unknown image '" + id + "'");
    m.samples[it->second].references.push_back(RequireString(ann, "caption", locus));
  }
  return m;
}

}  // namespace

std::string_view DomainName(Domain domain) {
  switch (domain) {
    case Domain::kInDomain:
      return "in_domain";
    case Domain::kNearDomain:
      return "near_domain";
    case Domain::kOutOfDomain:
      return "out_of_domain";
    case Domain::kUnspecified:
      return "unspecified";
  }
  return "unspecified";
}

Domain ParseDomain(std::string_view name) {
  if (name == "in_domain" || name == "in-domain") return Domain::kInDomain;
  if (name == "near_domain" || name == "near-domain") return Domain::kNearDomain;
  if (name == "out_of_domain" || name == "out-of-domain" || name == "out-domain" ||
      name == "out_domain") {
    return Domain::kOutOfDomain;
  }
  if (name == "unspecified" || name.empty()) return Domain::kUnspecified;
  throw ParseError("", "unknown domain '" + std::string(name) + "'");
}

std::string_view ManifestFormatName(ManifestFormat format) {
  switch (format) {
    case ManifestFormat::kFlickrTsv:
      return "flickr_tsv";
    case ManifestFormat::kNocapsJson:
      return "nocaps_json";
    case ManifestFormat::kNativeJsonl:
      return "native_jsonl";
  }
  return "native_jsonl";
}

ManifestFormat ParseManifestFormat(std::string_view name) {
  if (name == "flickr_tsv") return ManifestFormat::kFlickrTsv;
  if (name == "nocaps_json") return ManifestFormat::kNocapsJson;
  if (name == "native_jsonl") return ManifestFormat::kNativeJsonl;
  throw ParseError("", "unknown manifest format '" + std::string(name) +
                           "' (expected flickr_tsv, nocaps_json or native_jsonl)");
}

fs::path Manifest::ResolveImage(const Sample& sample) const {
  const fs::path p(sample.image_path);
  if (p.is_absolute() || root.empty()) return p;
  return root / p;
}

void Manifest::Validate() const {
  std::set<std::string_view> seen;
  for (const Sample& s : samples) {
    if (s.sample_id.empty()) throw ParseError("", "sample with empty sample_id");
    if (!seen.insert(s.sample_id).second) {
      throw ParseError("", "duplicate sample_id '" + s.sample_id + "'");
    }
    if (s.references.empty()) {
      throw ParseError("", "sample '" + s.sample_id + "' has no reference captions");
    }
    for (const std::string& r : s.references) {
      if (TrimAscii(r).empty()) {
        throw ParseError("", "sample '" + s.sample_id + "' has a blank reference caption");
      }
    }
  }
}

Manifest ParseManifest(std::string_view text, ManifestFormat format, const LoadOptions& options) {
  Manifest m;
  switch (format) {
    case ManifestFormat::kNativeJsonl:
      m = ParseNativeJsonl(text, options);
      break;
    case ManifestFormat::kFlickrTsv:
      m = ParseFlickrTsv(text, options);
      break;
    case ManifestFormat::kNocapsJson:
      m = ParseNocapsJson(text, options);
      break;
  }
  m.Validate();
  return m;
}

Manifest LoadManifest(const fs::path& path, ManifestFormat format, const LoadOptions& options) {
  LoadOptions opts = options;
  if (opts.name.empty()) opts.name = path.stem().string();
  Manifest m = ParseManifest(ReadFileToString(path), format, opts);
  m.root = path.parent_path();
  return m;
}

std::string SerializeManifest(const Manifest& manifest) {
  std::string out;
  json header = {{"manifest", {{"name", manifest.name}, {"provenance", manifest.provenance}}}};
  out += DumpJson(header) + "\n";
  for (const Sample& s : manifest.samples) {
    json record = {{"sample_id", s.sample_id},
                   {"image_path", s.image_path},
                   {"references", s.references},
                   {"domain", DomainName(s.domain)}};
    out += DumpJson(record) + "\n";
  }
  return out;
}

void SaveManifest(const fs::path& path, const Manifest& manifest) {
  WriteFileAtomic(path, SerializeManifest(manifest));
}

LengthStats CaptionLengthStats(const Manifest& manifest) {
  if (manifest.samples.empty()) throw Error("caption length stats need a non-empty manifest");
  LengthStats stats;
  stats.name = manifest.name;
  std::vector<std::size_t> lengths;
  for (const Sample& s : manifest.samples) {
    for (const std::string& r : s.references) {
      const std::size_t n = Tokenize(r).size();
      lengths.push_back(n);
      ++stats.histogram[n];
    }
  }
  stats.total_references = lengths.size();
  std::size_t total = 0;
  for (std::size_t n : lengths) total += n;
  stats.mean = static_cast<double>(total) / static_cast<double>(lengths.size());
  std::sort(lengths.begin(), lengths.end());
  const std::size_t mid = lengths.size() / 2;
  stats.median = lengths.size() % 2 == 1
                     ? static_cast<double>(lengths[mid])
                     : (static_cast<double>(lengths[mid - 1]) + static_cast<double>(lengths[mid])) / 2.0;
  return stats;
}

}  // namespace capharness

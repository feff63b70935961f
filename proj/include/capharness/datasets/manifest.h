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

#ifndef CAPHARNESS_DATASETS_MANIFEST_H_
#define CAPHARNESS_DATASETS_MANIFEST_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace capharness {

enum class Domain { kInDomain, kNearDomain, kOutOfDomain, kUnspecified };

std::string_view DomainName(Domain domain);
// Accepts the native names and the NoCaps spellings ("in-domain",
// "near-domain", "out-domain", "out-of-domain"). Throws ParseError.
Domain ParseDomain(std::string_view name);

// One image and its reference captions. References are stored exactly as
// ingested; they are never normalized.
struct Sample {
  std::string sample_id;
  std::string image_path;
  std::vector<std::string> references;
  Domain domain = Domain::kUnspecified;

  bool operator==(const Sample&) const = default;
};

// An ordered, immutable-after-load list of samples. Relative image paths are
// resolved against `root`, which is where the manifest file lives; it is
// not serialized.
struct Manifest {
  std::string name;
  std::vector<Sample> samples;
  nlohmann::json provenance = nlohmann::json::object();
  std::filesystem::path root;

  std::filesystem::path ResolveImage(const Sample& sample) const;

  // Throws ParseError on duplicate ids, empty reference lists or blank
  // references.
  void Validate() const;
};

enum class ManifestFormat { kFlickrTsv, kNocapsJson, kNativeJsonl };

std::string_view ManifestFormatName(ManifestFormat format);
// Throws ParseError for unknown names.
ManifestFormat ParseManifestFormat(std::string_view name);

struct LoadOptions {
  // Where flickr_tsv and nocaps_json images live; defaults to the
  // annotation file's directory.
  std::filesystem::path images_dir;
  // Defaults to the file stem.
  std::string name;
};

// Throws ParseError carrying the line or record locus.
Manifest LoadManifest(const std::filesystem::path& path, ManifestFormat format,
                      const LoadOptions& options = {});
Manifest ParseManifest(std::string_view text, ManifestFormat format,
                       const LoadOptions& options = {});

// Native JSON-Lines: an optional header line {"manifest": {"name",
// "provenance"}} followed by one sample per line. Keys are sorted, output is
// UTF-8 with LF line endings, so save(load(x)) == x for canonical files.
std::string SerializeManifest(const Manifest& manifest);
void SaveManifest(const std::filesystem::path& path, const Manifest& manifest);

// Reference caption lengths in shared-tokenizer tokens.
struct LengthStats {
  std::string name;
  std::map<std::size_t, std::size_t> histogram;  // length -> count
  std::size_t total_references = 0;
  double mean = 0.0;
  double median = 0.0;
};

// Throws Error for an empty manifest.
LengthStats CaptionLengthStats(const Manifest& manifest);

}  // namespace capharness

#endif  // CAPHARNESS_DATASETS_MANIFEST_H_

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

#ifndef CAPHARNESS_COMMON_ERRORS_H_
#define CAPHARNESS_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace capharness {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedCorruptionError : public Error {
 public:
  using Error::Error;
};

// A corruption or decoding parameter outside its legal range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `locus` names the line or record ("line 7",
// "images[3]") so the message can point at it.
class ParseError : public Error {
 public:
  ParseError(std::string locus, const std::string& message)
      : Error(locus.empty() ? message : locus + ": " + message),
        locus_(std::move(locus)) {}

  const std::string& locus() const { return locus_; }

 private:
  std::string locus_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

// Failure talking to a caption or embedding backend.
class ProviderError : public Error {
 public:
  using Error::Error;
};

class ImageError : public Error {
 public:
  using Error::Error;
};

// A failure scoped to one sample. Pipelines record these and continue.
struct SampleError {
  std::string sample_id;
  std::string stage;
  std::string message;

  bool operator==(const SampleError&) const = default;
};

void to_json(nlohmann::json& j, const SampleError& e);
void from_json(const nlohmann::json& j, SampleError& e);

}  // namespace capharness

#endif  // CAPHARNESS_COMMON_ERRORS_H_

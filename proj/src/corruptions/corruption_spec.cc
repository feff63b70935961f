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

#include "capharness/corruptions/corruption_spec.h"

#include <array>
#include <cmath>
#include <sstream>

#include "capharness/common/errors.h"
#include "capharness/common/file_util.h"

namespace capharness {
namespace {

struct KindInfo {
  CorruptionKind kind;
  std::string_view name;
};

constexpr std::array<KindInfo, 13> kKinds = {{
    {CorruptionKind::kGaussianNoise, "gaussian_noise"},
    {CorruptionKind::kImpulseNoise, "impulse_noise"},
    {CorruptionKind::kSpeckleNoise, "speckle_noise"},
    {CorruptionKind::kPoissonGaussianSensor, "poisson_gaussian_sensor"},
    {CorruptionKind::kGaussianBlur, "gaussian_blur"},
    {CorruptionKind::kDefocusBlur, "defocus_blur"},
    {CorruptionKind::kMotionBlur, "motion_blur"},
    {CorruptionKind::kZoomBlur, "zoom_blur"},
    {CorruptionKind::kSnow, "snow"},
    {CorruptionKind::kJpegCompression, "jpeg_compression"},
    {CorruptionKind::kPixelate, "pixelate"},
    {CorruptionKind::kLowLightGamma, "low_light_gamma"},
    {CorruptionKind::kAdversarialPatch, "adversarial_patch"},
}};

constexpr std::array<CorruptionKind, 13> kKindList = {
    CorruptionKind::kGaussianNoise,   CorruptionKind::kImpulseNoise,
    CorruptionKind::kSpeckleNoise,    CorruptionKind::kPoissonGaussianSensor,
    CorruptionKind::kGaussianBlur,    CorruptionKind::kDefocusBlur,
    CorruptionKind::kMotionBlur,      CorruptionKind::kZoomBlur,
    CorruptionKind::kSnow,            CorruptionKind::kJpegCompression,
    CorruptionKind::kPixelate,        CorruptionKind::kLowLightGamma,
    CorruptionKind::kAdversarialPatch};

// Legal ranges. Severity-table values all sit inside them; the identity
// settings (sigma 0, gamma 1, block 1, quality 0, ...) are included.
constexpr ParamRange kGaussianNoise[] = {{"sigma", 0.0, 1.0, false}};
constexpr ParamRange kImpulseNoise[] = {{"amount", 0.0, 1.0, false}};
constexpr ParamRange kSpeckleNoise[] = {{"sigma", 0.0, 2.0, false}};
constexpr ParamRange kPoissonGaussian[] = {{"photons", 1.0, 100000.0, false},
                                           {"sigma", 0.0, 1.0, false}};
constexpr ParamRange kGaussianBlur[] = {{"sigma", 0.0, 25.0, false}};
constexpr ParamRange kDefocusBlur[] = {{"radius", 0.0, 30.0, false}};
constexpr ParamRange kMotionBlur[] = {{"angle", 0.0, 360.0, false, true, true},
                                      {"length", 1.0, 63.0, true}};
constexpr ParamRange kZoomBlur[] = {{"max_scale", 1.0, 3.0, false},
                                    {"scales", 2.0, 32.0, true}};
constexpr ParamRange kSnow[] = {{"density", 0.0, 1.0, false}};
constexpr ParamRange kJpeg[] = {{"quality", 0.0, 100.0, true}};
constexpr ParamRange kPixelate[] = {{"block", 1.0, 256.0, true}};
constexpr ParamRange kGamma[] = {{"gamma", 0.1, 5.0, false}};
constexpr ParamRange kPatch[] = {{"area", 0.0, 1.0, false}};


}  // namespace

std::span<const CorruptionKind> AllCorruptionKinds() { return kKindList; }

std::string_view KindName(CorruptionKind kind) {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info.name;
  }
  throw UnsupportedCorruptionError("unknown corruption kind enum value");
}

std::string_view SeverityName(Severity level) {
  switch (level) {
    case Severity::kLow:
      return "low";
    case Severity::kMedium:
      return "medium";
    case Severity::kHigh:
      return "high";
  }
  throw ParameterError("unknown severity enum value");
}

CorruptionKind ParseKind(std::string_view name) {
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  throw UnsupportedCorruptionError("unsupported corruption kind '" + std::string(name) + "'");
}

Severity ParseSeverity(std::string_view name) {
  if (name == "low") return Severity::kLow;
  if (name == "medium") return Severity::kMedium;
  if (name == "high") return Severity::kHigh;
  throw ParameterError("unknown severity level '" + std::string(name) +
                       "' (expected low, medium or high)");
}

std::span<const ParamRange> LegalParams(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::kGaussianNoise:
      return kGaussianNoise;
    case CorruptionKind::kImpulseNoise:
      return kImpulseNoise;
    case CorruptionKind::kSpeckleNoise:
      return kSpeckleNoise;
    case CorruptionKind::kPoissonGaussianSensor:
      return kPoissonGaussian;
    case CorruptionKind::kGaussianBlur:
      return kGaussianBlur;
    case CorruptionKind::kDefocusBlur:
      return kDefocusBlur;
    case CorruptionKind::kMotionBlur:
      return kMotionBlur;
    case CorruptionKind::kZoomBlur:
      return kZoomBlur;
    case CorruptionKind::kSnow:
      return kSnow;
    case CorruptionKind::kJpegCompression:
      return kJpeg;
    case CorruptionKind::kPixelate:
      return kPixelate;
    case CorruptionKind::kLowLightGamma:
      return kGamma;
    case CorruptionKind::kAdversarialPatch:
      return kPatch;
  }
  throw UnsupportedCorruptionError("unknown corruption kind enum value");
}

ParamMap SeverityParams(CorruptionKind kind, Severity level) {
  const int i = static_cast<int>(level);
  auto pick = [i](double low, double medium, double high) {
    const double values[] = {low, medium, high};
    return values[i];
  };
  switch (kind) {
    case CorruptionKind::kGaussianNoise:
      return {{"sigma", pick(0.10, 0.50, 1.00)}};
    case CorruptionKind::kImpulseNoise:
      return {{"amount", pick(0.02, 0.08, 0.20)}};
    case CorruptionKind::kSpeckleNoise:
      return {{"sigma", pick(0.10, 0.25, 0.50)}};
    case CorruptionKind::kPoissonGaussianSensor:
      return {{"sigma", pick(0.05, 0.15, 0.30)}, {"photons", pick(200, 60, 15)}};
    case CorruptionKind::kGaussianBlur:
      return {{"sigma", pick(1, 3, 6)}};
    case CorruptionKind::kDefocusBlur:
      return {{"radius", pick(2, 5, 9)}};
    case CorruptionKind::kMotionBlur:
      // The blur angle is drawn from the seed unless "angle" is overridden.
      return {{"length", pick(5, 9, 15)}};
    case CorruptionKind::kZoomBlur:
      return {{"max_scale", pick(1.06, 1.16, 1.31)}, {"scales", 8}};
    case CorruptionKind::kSnow:
      return {{"density", pick(0.02, 0.06, 0.12)}};
    case CorruptionKind::kJpegCompression:
      return {{"quality", pick(60, 25, 10)}};
    case CorruptionKind::kPixelate:
      return {{"block", pick(4, 8, 16)}};
    case CorruptionKind::kLowLightGamma:
      return {{"gamma", pick(1.5, 0.8, 0.3)}};
    case CorruptionKind::kAdversarialPatch:
      return {{"area", pick(0.02, 0.05, 0.10)}};
  }
  throw UnsupportedCorruptionError("unknown corruption kind enum value");
}

CorruptionSpec CorruptionSpec::Resolve(CorruptionKind kind, Severity level,
                                       const ParamMap& overrides, uint64_t seed) {
  CorruptionSpec spec{kind, level, SeverityParams(kind, level), seed};
  for (const auto& [name, value] : overrides) spec.params[name] = value;
  spec.Validate();
  return spec;
}

void CorruptionSpec::Validate() const {
  const auto legal = LegalParams(kind);
  for (const auto& [name, value] : params) {
    const ParamRange* range = nullptr;
    for (const auto& r : legal) {
      if (r.name == name) range = &r;
    }
    if (range == nullptr) {
      throw ParameterError("unknown parameter '" + name + "' for " + std::string(KindName(kind)));
    }
    const bool above = range->max_exclusive ? value >= range->max : value > range->max;
    if (!std::isfinite(value) || value < range->min || above ||
        (range->integer && value != std::floor(value))) {
      std::ostringstream msg;
      msg << KindName(kind) << " parameter '" << name << "' = " << FormatNumber(value)
          << " outside legal range [" << FormatNumber(range->min) << ", "
          << FormatNumber(range->max) << (range->max_exclusive ? ")" : "]")
          << (range->integer ? " (integer)" : "");
      throw ParameterError(msg.str());
    }
  }
  for (const auto& r : legal) {
    if (!r.optional && !params.contains(r.name)) {
      throw ParameterError(std::string(KindName(kind)) + " requires parameter '" +
                           std::string(r.name) + "'");
    }
  }
}

std::string CorruptionSpec::Id() const {
  std::string id = std::string(KindName(kind)) + "/" + std::string(SeverityName(level));
  const ParamMap table = SeverityParams(kind, level);
  std::string extra;
  for (const auto& [name, value] : params) {
    auto it = table.find(name);
    if (it != table.end() && it->second == value) continue;
    if (!extra.empty()) extra += ",";
    extra += name + "=" + FormatNumber(value);
  }
  for (const auto& [name, value] : table) {
    if (!params.contains(name)) {
      if (!extra.empty()) extra += ",";
      extra += name + "=unset";
    }
  }
  if (!extra.empty()) id += "[" + extra + "]";
  return id;
}

std::string MixtureSpec::Id() const {
  std::string id;
  for (const auto& step : steps) {
    if (!id.empty()) id += "+";
    id += step.Id();
  }
  return id;
}

void to_json(nlohmann::json& j, const CorruptionSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : spec.params) params[name] = value;
  j = nlohmann::json{{"kind", KindName(spec.kind)},
                     {"level", SeverityName(spec.level)},
                     {"params", params},
                     {"seed", spec.seed}};
}

void from_json(const nlohmann::json& j, CorruptionSpec& spec) {
  if (!j.is_object()) throw ParameterError("corruption spec must be a JSON object");
  const CorruptionKind kind = ParseKind(j.at("kind").get<std::string>());
  const Severity level = ParseSeverity(j.value("level", std::string("medium")));
  ParamMap overrides;
  if (j.contains("params")) {
    for (const auto& [name, value] : j.at("params").items()) {
      if (!value.is_number()) {
        throw ParameterError("parameter '" + name + "' must be a number");
      }
      overrides[name] = value.get<double>();
    }
  }
  spec = CorruptionSpec::Resolve(kind, level, overrides, j.value("seed", uint64_t{0}));
}

void to_json(nlohmann::json& j, const MixtureSpec& mix) {
  j = nlohmann::json{{"steps", mix.steps}};
}

void from_json(const nlohmann::json& j, MixtureSpec& mix) {
  const nlohmann::json* steps = &j;
  if (j.is_object()) {
    if (j.contains("steps")) {
      steps = &j.at("steps");
    } else if (j.contains("mixture")) {
      steps = &j.at("mixture");
    }
  }
  if (!steps->is_array()) throw ParameterError("mixture must be an array of corruption specs");
  if (steps->empty()) throw ParameterError("mixture must contain at least one step");
  mix.steps.clear();
  for (std::size_t i = 0; i < steps->size(); ++i) {
    try {
      mix.steps.push_back((*steps)[i].get<CorruptionSpec>());
    } catch (const Error& e) {
      throw ParameterError("mixture step " + std::to_string(i) + ": " + e.what());
    }
  }
}

}  // namespace capharness

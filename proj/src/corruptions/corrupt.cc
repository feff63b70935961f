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

#include "capharness/corruptions/corrupt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "capharness/common/hash.h"
#include "capharness/common/rng.h"
#include "capharness/image/codec.h"

namespace capharness {
namespace {

// Working image on [0, 1], same layout as Raster.
struct Plane {
  int width;
  int height;
  std::vector<double> v;

  double& at(int x, int y, int c) {
    return v[(static_cast<std::size_t>(y) * width + x) * Raster::kChannels + c];
  }
  double at(int x, int y, int c) const {
    return v[(static_cast<std::size_t>(y) * width + x) * Raster::kChannels + c];
  }
};

Plane ToPlane(const Raster& image) {
  Plane p{image.width(), image.height(), {}};
  p.v.reserve(image.data().size());
  for (uint8_t b : image.data()) p.v.push_back(b / 255.0);
  return p;
}

// Clamp, then round half away from zero (std::round).
uint8_t Quantize(double x) {
  if (!(x >= 0.0)) x = 0.0;  // also maps NaN to 0
  if (x > 1.0) x = 1.0;
  return static_cast<uint8_t>(std::round(x * 255.0));
}

Raster ToRaster(const Plane& p) {
  std::vector<uint8_t> data(p.v.size());
  std::transform(p.v.begin(), p.v.end(), data.begin(), Quantize);
  return Raster(p.width, p.height, std::move(data));
}

// Reflect-101 border: for n = 5, index -2 maps to 2 and 6 maps to 2.
int Reflect101(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

struct Tap {
  int dx;
  int dy;
  double w;
};

// Normalizes weights to sum 1 and drops zero taps.
std::vector<Tap> NormalizeTaps(const std::map<std::pair<int, int>, double>& weights) {
  double total = 0.0;
  for (const auto& [pos, w] : weights) total += w;
  std::vector<Tap> taps;
  for (const auto& [pos, w] : weights) {
    if (w > 0.0) taps.push_back({pos.first, pos.second, w / total});
  }
  return taps;
}

Plane Convolve(const Plane& src, const std::vector<Tap>& taps) {
  Plane out{src.width, src.height, std::vector<double>(src.v.size(), 0.0)};
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < Raster::kChannels; ++c) {
        double acc = 0.0;
        for (const Tap& t : taps) {
          acc += t.w * src.at(Reflect101(x + t.dx, src.width), Reflect101(y + t.dy, src.height), c);
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

Plane ConvolveSeparable(const Plane& src, const std::vector<double>& kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  Plane tmp{src.width, src.height, std::vector<double>(src.v.size(), 0.0)};
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < Raster::kChannels; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += kernel[k + radius] * src.at(Reflect101(x + k, src.width), y, c);
        }
        tmp.at(x, y, c) = acc;
      }
    }
  }
  Plane out = tmp;
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < Raster::kChannels; ++c) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
          acc += kernel[k + radius] * tmp.at(x, Reflect101(y + k, src.height), c);
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

// Line of `length` unit-spaced points through the origin at `angle_deg`,
// each splatted bilinearly onto the integer grid.
std::vector<Tap> LineKernel(int length, double angle_deg) {
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double ux = std::cos(theta);
  const double uy = -std::sin(theta);  // image y grows downward
  std::map<std::pair<int, int>, double> weights;
  for (int t = 0; t < length; ++t) {
    const double s = t - (length - 1) / 2.0;
    const double px = s * ux;
    const double py = s * uy;
    const int x0 = static_cast<int>(std::floor(px));
    const int y0 = static_cast<int>(std::floor(py));
    const double fx = px - x0;
    const double fy = py - y0;
    weights[{x0, y0}] += (1 - fx) * (1 - fy);
    weights[{x0 + 1, y0}] += fx * (1 - fy);
    weights[{x0, y0 + 1}] += (1 - fx) * fy;
    weights[{x0 + 1, y0 + 1}] += fx * fy;
  }
  return NormalizeTaps(weights);
}

double Param(const CorruptionSpec& spec, std::string_view name) {
  return spec.params.find(name)->second;
}

Plane GaussianNoise(Plane p, double sigma, Rng& rng) {
  if (sigma == 0.0) return p;
  for (double& x : p.v) x += sigma * rng.Normal();
  return p;
}

Plane ImpulseNoise(Plane p, double amount, Rng& rng) {
  for (double& x : p.v) {
    if (rng.Uniform() < amount) x = rng.Uniform() < 0.5 ? 0.0 : 1.0;
  }
  return p;
}

Plane SpeckleNoise(Plane p, double sigma, Rng& rng) {
  if (sigma == 0.0) return p;
  for (double& x : p.v) x += x * sigma * rng.Normal();
  return p;
}

// Shot noise with `photons` expected counts at full scale, plus read noise.
Plane PoissonGaussian(Plane p, double photons, double sigma, Rng& rng) {
  for (double& x : p.v) {
    const double counts = static_cast<double>(rng.Poisson(std::clamp(x, 0.0, 1.0) * photons));
    x = counts / photons + sigma * rng.Normal();
  }
  return p;
}

Plane GaussianBlur(const Plane& p, double sigma) {
  if (sigma == 0.0) return p;
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    total += kernel[k + radius];
  }
  for (double& w : kernel) w /= total;
  return ConvolveSeparable(p, kernel);
}

Plane DefocusBlur(const Plane& p, double radius) {
  const int r = static_cast<int>(std::floor(radius));
  if (r < 1) return p;
  std::map<std::pair<int, int>, double> weights;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) weights[{dx, dy}] = 1.0;
    }
  }
  return Convolve(p, NormalizeTaps(weights));
}

Plane MotionBlur(const Plane& p, int length, double angle_deg) {
  if (length <= 1) return p;
  return Convolve(p, LineKernel(length, angle_deg));
}

// Mean of `scales` center zooms with factors evenly spaced in [1, max_scale].
Plane ZoomBlur(const Plane& p, double max_scale, int scales) {
  if (max_scale == 1.0) return p;
  Plane out{p.width, p.height, std::vector<double>(p.v.size(), 0.0)};
  const double cx = (p.width - 1) / 2.0;
  const double cy = (p.height - 1) / 2.0;
  for (int s = 0; s < scales; ++s) {
    const double zoom = 1.0 + (max_scale - 1.0) * s / (scales - 1);
    for (int y = 0; y < p.height; ++y) {
      const double sy = cy + (y - cy) / zoom;
      const int y0 = static_cast<int>(std::floor(sy));
      const double fy = sy - y0;
      for (int x = 0; x < p.width; ++x) {
        const double sx = cx + (x - cx) / zoom;
        const int x0 = static_cast<int>(std::floor(sx));
        const double fx = sx - x0;
        const int xa = Reflect101(x0, p.width);
        const int xb = Reflect101(x0 + 1, p.width);
        const int ya = Reflect101(y0, p.height);
        const int yb = Reflect101(y0 + 1, p.height);
        for (int c = 0; c < Raster::kChannels; ++c) {
          const double top = (1 - fx) * p.at(xa, ya, c) + fx * p.at(xb, ya, c);
          const double bottom = (1 - fx) * p.at(xa, yb, c) + fx * p.at(xb, yb, c);
          out.at(x, y, c) += (1 - fy) * top + fy * bottom;
        }
      }
    }
  }
  for (double& x : out.v) x /= scales;
  return out;
}

// Flakes seeded with probability `density`, smeared by a fixed streak kernel
// (length 9 at 70 degrees, gain 3) and screen-blended over the image.
Plane Snow(Plane p, double density, Rng& rng) {
  if (density == 0.0) return p;
  constexpr int kStreakLength = 9;
  constexpr double kStreakAngle = 70.0;
  constexpr double kStreakGain = 3.0;
  Plane flakes{p.width, p.height, std::vector<double>(p.v.size(), 0.0)};
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      if (rng.Uniform() < density) {
        const double intensity = rng.Uniform(0.5, 1.0);
        for (int c = 0; c < Raster::kChannels; ++c) flakes.at(x, y, c) = intensity;
      }
    }
  }
  const Plane streaks = Convolve(flakes, LineKernel(kStreakLength, kStreakAngle));
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    const double layer = std::min(1.0, kStreakGain * streaks.v[i]);
    p.v[i] = 1.0 - (1.0 - p.v[i]) * (1.0 - layer);
  }
  return p;
}

Plane Pixelate(const Plane& p, int block) {
  if (block <= 1) return p;
  Plane out = p;
  for (int by = 0; by < p.height; by += block) {
    for (int bx = 0; bx < p.width; bx += block) {
      const int ey = std::min(by + block, p.height);
      const int ex = std::min(bx + block, p.width);
      const double area = static_cast<double>((ey - by) * (ex - bx));
      for (int c = 0; c < Raster::kChannels; ++c) {
        double sum = 0.0;
        for (int y = by; y < ey; ++y) {
          for (int x = bx; x < ex; ++x) sum += p.at(x, y, c);
        }
        const double mean = sum / area;
        for (int y = by; y < ey; ++y) {
          for (int x = bx; x < ex; ++x) out.at(x, y, c) = mean;
        }
      }
    }
  }
  return out;
}

// out = in^(1/gamma): gamma < 1 darkens, gamma == 1 is the identity.
Plane LowLightGamma(Plane p, double gamma) {
  if (gamma == 1.0) return p;
  const double exponent = 1.0 / gamma;
  for (double& x : p.v) x = std::pow(x, exponent);
  return p;
}

// Black/white checkerboard square covering `area` of the image at a seeded
// position, with 8 cells per side.
Plane AdversarialPatch(Plane p, double area, Rng& rng) {
  const double total = static_cast<double>(p.width) * p.height;
  int side = static_cast<int>(std::round(std::sqrt(area * total)));
  side = std::min({side, p.width, p.height});
  if (side <= 0) return p;
  const int x0 = static_cast<int>(rng.UniformInt(static_cast<uint64_t>(p.width - side + 1)));
  const int y0 = static_cast<int>(rng.UniformInt(static_cast<uint64_t>(p.height - side + 1)));
  const int cell = std::max(1, side / 8);
  for (int y = y0; y < y0 + side; ++y) {
    for (int x = x0; x < x0 + side; ++x) {
      const double value = (((x - x0) / cell + (y - y0) / cell) % 2 == 0) ? 1.0 : 0.0;
      for (int c = 0; c < Raster::kChannels; ++c) p.at(x, y, c) = value;
    }
  }
  return p;
}

Raster JpegRoundTrip(const Raster& image, int quality) {
  if (quality == 0) return image;
  return DecodeImage(EncodeJpeg(image, quality));
}

}  // namespace

Raster Apply(const CorruptionSpec& spec, const Raster& image) {
  spec.Validate();
  Rng rng(spec.seed);
  if (spec.kind == CorruptionKind::kJpegCompression) {
    return JpegRoundTrip(image, static_cast<int>(Param(spec, "quality")));
  }
  Plane p = ToPlane(image);
  switch (spec.kind) {
    case CorruptionKind::kGaussianNoise:
      p = GaussianNoise(std::move(p), Param(spec, "sigma"), rng);
      break;
    case CorruptionKind::kImpulseNoise:
      p = ImpulseNoise(std::move(p), Param(spec, "amount"), rng);
      break;
    case CorruptionKind::kSpeckleNoise:
      p = SpeckleNoise(std::move(p), Param(spec, "sigma"), rng);
      break;
    case CorruptionKind::kPoissonGaussianSensor:
      p = PoissonGaussian(std::move(p), Param(spec, "photons"), Param(spec, "sigma"), rng);
      break;
    case CorruptionKind::kGaussianBlur:
      p = GaussianBlur(p, Param(spec, "sigma"));
      break;
    case CorruptionKind::kDefocusBlur:
      p = DefocusBlur(p, Param(spec, "radius"));
      break;
    case CorruptionKind::kMotionBlur: {
      auto it = spec.params.find("angle");
      const double angle = it != spec.params.end() ? it->second : rng.Uniform(0.0, 360.0);
      p = MotionBlur(p, static_cast<int>(Param(spec, "length")), angle);
      break;
    }
    case CorruptionKind::kZoomBlur:
      p = ZoomBlur(p, Param(spec, "max_scale"), static_cast<int>(Param(spec, "scales")));
      break;
    case CorruptionKind::kSnow:
      p = Snow(std::move(p), Param(spec, "density"), rng);
      break;
    case CorruptionKind::kPixelate:
      p = Pixelate(p, static_cast<int>(Param(spec, "block")));
      break;
    case CorruptionKind::kLowLightGamma:
      p = LowLightGamma(std::move(p), Param(spec, "gamma"));
      break;
    case CorruptionKind::kAdversarialPatch:
      p = AdversarialPatch(std::move(p), Param(spec, "area"), rng);
      break;
    case CorruptionKind::kJpegCompression:
      break;
  }
  return ToRaster(p);
}

Raster ApplyMixture(const MixtureSpec& mix, const Raster& image) {
  if (mix.steps.empty()) throw ParameterError("mixture must contain at least one step");
  Raster current = image;
  for (std::size_t i = 0; i < mix.steps.size(); ++i) {
    try {
      current = Apply(mix.steps[i], current);
    } catch (const Error& e) {
      throw MixtureStepError(i, e.what());
    }
  }
  return current;
}

std::string PlanId(const CorruptionPlan& plan) {
  return std::visit([](const auto& p) { return p.Id(); }, plan);
}

nlohmann::json PlanToJson(const CorruptionPlan& plan) {
  return std::visit([](const auto& p) { return nlohmann::json(p); }, plan);
}

CorruptionPlan PlanFromJson(const nlohmann::json& j) {
  if (j.is_array() || (j.is_object() && (j.contains("steps") || j.contains("mixture")))) {
    return j.get<MixtureSpec>();
  }
  return j.get<CorruptionSpec>();
}

CorruptionPlan SeedPlan(const CorruptionPlan& plan, uint64_t seed) {
  if (const auto* spec = std::get_if<CorruptionSpec>(&plan)) {
    CorruptionSpec seeded = *spec;
    seeded.seed = seed;
    return seeded;
  }
  MixtureSpec mix = std::get<MixtureSpec>(plan);
  for (std::size_t i = 0; i < mix.steps.size(); ++i) {
    mix.steps[i].seed = Hash64(seed, {"step", std::to_string(i)});
  }
  return mix;
}

Raster ApplyPlan(const CorruptionPlan& plan, const Raster& image) {
  if (const auto* spec = std::get_if<CorruptionSpec>(&plan)) return Apply(*spec, image);
  return ApplyMixture(std::get<MixtureSpec>(plan), image);
}

namespace {

const CorruptionSpec& LastStep(const CorruptionPlan& plan) {
  if (const auto* spec = std::get_if<CorruptionSpec>(&plan)) return *spec;
  return std::get<MixtureSpec>(plan).steps.back();
}

}  // namespace

bool PlanWritesJpeg(const CorruptionPlan& plan) {
  if (const auto* mix = std::get_if<MixtureSpec>(&plan); mix && mix->steps.empty()) return false;
  const CorruptionSpec& last = LastStep(plan);
  return last.kind == CorruptionKind::kJpegCompression && Param(last, "quality") > 0;
}

std::vector<uint8_t> ApplyPlanEncoded(const CorruptionPlan& plan, const Raster& image) {
  if (!PlanWritesJpeg(plan)) return EncodePng(ApplyPlan(plan, image));
  const CorruptionSpec& last = LastStep(plan);
  last.Validate();
  Raster before = image;
  if (const auto* mix = std::get_if<MixtureSpec>(&plan)) {
    MixtureSpec prefix{{mix->steps.begin(), mix->steps.end() - 1}};
    if (!prefix.steps.empty()) before = ApplyMixture(prefix, image);
  }
  return EncodeJpeg(before, static_cast<int>(Param(last, "quality")));
}

double Psnr(const Raster& a, const Raster& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ImageError("PSNR needs equally sized rasters");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = static_cast<double>(a.data()[i]) - b.data()[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.data().size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace capharness

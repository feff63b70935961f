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

#ifndef CAPHARNESS_COMMON_HTTP_CLIENT_H_
#define CAPHARNESS_COMMON_HTTP_CLIENT_H_

#include <chrono>
#include <string>
#include <string_view>

namespace capharness {

// "http://host[:port][/base/path]" split into the part the HTTP client
// connects to and the path prefix for every request.
struct HttpEndpoint {
  std::string origin;     // http://host:port
  std::string base_path;  // "" or "/base/path" without a trailing slash

  std::string Url(std::string_view path) const { return origin + base_path + std::string(path); }
};

// Only plain http is supported. Throws ConfigError.
HttpEndpoint ParseHttpEndpoint(std::string_view url);

struct HttpCallOptions {
  std::chrono::milliseconds timeout{60'000};
  int retries = 2;
  // Doubled after every failed attempt.
  std::chrono::milliseconds backoff{100};
};

struct HttpOutcome {
  enum class Kind {
    kOk,           // 2xx
    kHttpError,    // non-2xx after retries
    kTransport,    // request sent but no usable response (e.g. read timeout)
    kUnreachable,  // could not connect on any attempt
  };
  Kind kind = Kind::kOk;
  int status = 0;
  std::string body;
  std::string error;  // human-readable reason when kind != kOk
};

// POSTs a JSON body to endpoint.base_path + path. 5xx responses and
// transport failures are retried; 4xx responses are not.
HttpOutcome PostJson(const HttpEndpoint& endpoint, std::string_view path, const std::string& body,
                     const HttpCallOptions& options);

// GET with the same retry policy.
HttpOutcome GetPath(const HttpEndpoint& endpoint, std::string_view path,
                    const HttpCallOptions& options);

}  // namespace capharness

#endif  // CAPHARNESS_COMMON_HTTP_CLIENT_H_

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

#include "capharness/common/http_client.h"

#include <thread>

#include "capharness/common/errors.h"
#include "httplib.h"

namespace capharness {

HttpEndpoint ParseHttpEndpoint(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme) {
    throw ConfigError("endpoint '" + std::string(url) + "' must start with http://");
  }
  const std::string_view rest = url.substr(kScheme.size());
  const std::size_t slash = rest.find('/');
  const std::string_view host = rest.substr(0, slash);
  if (host.empty()) throw ConfigError("endpoint '" + std::string(url) + "' has no host");
  HttpEndpoint out;
  out.origin = std::string(kScheme) + std::string(host);
  if (slash != std::string_view::npos) {
    std::string_view path = rest.substr(slash);
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);
    out.base_path = std::string(path);
  }
  return out;
}

namespace {

template <typename Send>
HttpOutcome WithRetries(const HttpEndpoint& endpoint, const HttpCallOptions& options, Send send) {
  HttpOutcome outcome;
  bool ever_connected = false;
  auto backoff = options.backoff;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_write_timeout(options.timeout);
    httplib::Result res = send(client);
    if (!res) {
      const httplib::Error err = res.error();
      const bool unreachable = err == httplib::Error::Connection ||
                               err == httplib::Error::ConnectionTimeout ||
                               err == httplib::Error::BindIPAddress;
      if (!unreachable) ever_connected = true;
      outcome.kind = ever_connected ? HttpOutcome::Kind::kTransport : HttpOutcome::Kind::kUnreachable;
      outcome.status = 0;
      outcome.body.clear();
      outcome.error = httplib::to_string(err);
      continue;
    }
    ever_connected = true;
    outcome.status = res->status;
    outcome.body = res->body;
    if (res->status >= 200 && res->status < 300) {
      outcome.kind = HttpOutcome::Kind::kOk;
      outcome.error.clear();
      return outcome;
    }
    outcome.kind = HttpOutcome::Kind::kHttpError;
    outcome.error = "HTTP " + std::to_string(res->status);
    if (res->status < 500) return outcome;
  }
  return outcome;
}

}  // namespace

HttpOutcome PostJson(const HttpEndpoint& endpoint, std::string_view path, const std::string& body,
                     const HttpCallOptions& options) {
  const std::string full = endpoint.base_path + std::string(path);
  return WithRetries(endpoint, options, [&](httplib::Client& client) {
    return client.Post(full, body, "application/json");
  });
}

HttpOutcome GetPath(const HttpEndpoint& endpoint, std::string_view path,
                    const HttpCallOptions& options) {
  const std::string full = endpoint.base_path + std::string(path);
  return WithRetries(endpoint, options, [&](httplib::Client& client) { return client.Get(full); });
}

}  // namespace capharness

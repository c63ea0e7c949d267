// Copyright 2026 The ags Authors
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

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ags::cli {

using Json = nlohmann::json;

/// Bad flag combination detected after parsing; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Pretty-printed JSON with sorted keys and a trailing newline. An empty
/// path writes to stdout.
void write_json(const Json& j, const std::filesystem::path& path);

/// Explicit flag, else AGS_SEED, else 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

/// Collects what a run read and wrote, then writes the manifest next to
/// the primary output (or to ags.manifest.json for stdout output).
class Run {
 public:
  Run(std::string command, Json config, std::uint64_t seed);

  void input(const std::filesystem::path& p);
  void output(const std::filesystem::path& p);
  void set_manifest_path(std::filesystem::path p) { manifest_ = std::move(p); }

  /// Writes the manifest; `error` is empty on success.
  void finish(const std::string& error = {});

 private:
  std::string command_;
  Json config_;
  std::uint64_t seed_;
  std::vector<std::filesystem::path> inputs_, outputs_;
  std::filesystem::path manifest_;
  std::chrono::steady_clock::time_point start_;
};

/// "<out>.manifest.json", or "ags.manifest.json" when out is empty.
std::filesystem::path default_manifest_path(const std::filesystem::path& out);

}  // namespace ags::cli

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

#include "support.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "ags/common.hpp"

#ifndef AGS_VERSION
#define AGS_VERSION "0.0.0"
#endif

namespace ags::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ags: cannot open " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("ags: sha256 init failed");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

void write_json(const Json& j, const std::filesystem::path& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("ags: cannot write " + path.string());
  out << text;
  if (!out) throw Error("ags: write failed for " + path.string());
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("AGS_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("AGS_SEED must be a non-negative integer");
  }
  return 0;
}

std::filesystem::path default_manifest_path(const std::filesystem::path& out) {
  if (out.empty()) return "ags.manifest.json";
  return out.string() + ".manifest.json";
}

Run::Run(std::string command, Json config, std::uint64_t seed)
    : command_(std::move(command)),
      config_(std::move(config)),
      seed_(seed),
      start_(std::chrono::steady_clock::now()) {}

void Run::input(const std::filesystem::path& p) {
  if (!p.empty()) inputs_.push_back(p);
}

void Run::output(const std::filesystem::path& p) {
  if (!p.empty()) outputs_.push_back(p);
}

void Run::finish(const std::string& error) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  auto digests = [](const std::vector<std::filesystem::path>& files) {
    Json j = Json::object();
    for (const auto& f : files) {
      std::error_code ec;
      j[f.string()] = std::filesystem::is_regular_file(f, ec) ? Json(sha256_file(f)) : Json();
    }
    return j;
  };
  Json m;
  m["command"] = command_;
  m["config"] = config_;
  m["inputs"] = digests(inputs_);
  m["outputs"] = digests(outputs_);
  m["seed"] = seed_;
  m["version"] = AGS_VERSION;
  m["wall_time_s"] = wall;
  m["status"] = error.empty() ? "ok" : "error";
  if (!error.empty()) m["error"] = error;
  write_json(m, manifest_);
}

}  // namespace ags::cli

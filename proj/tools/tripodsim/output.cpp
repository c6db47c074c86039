// Copyright 2026 The Tripod Authors
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


#include "tripodsim/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>
#include <openssl/evp.h>

#ifndef TRIPODSIM_VERSION
#define TRIPODSIM_VERSION "0.0.0"
#endif

namespace tripodsim {

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string tool_version() { return TRIPODSIM_VERSION; }

std::string manifest_json(const Manifest& m, const std::filesystem::path& out_dir) {
  nlohmann::ordered_json j;
  j["tool"] = "tripodsim";
  j["version"] = tool_version();
  j["command"] = m.command;
  j["config_sha256"] = m.config_sha256;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& name : m.outputs) {
    outputs.push_back({{"path", name}, {"sha256", sha256_hex(read_file(out_dir / name))}});
  }
  j["outputs"] = outputs;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& r : m.runs) {
    runs.push_back({{"label", r.label}, {"wall_clock_seconds", r.wall_clock_seconds}});
  }
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

}  // namespace tripodsim

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


#pragma once

// File emission: shortest round-trip numbers, CSV, SHA-256 and the run
// manifest.

#include <filesystem>
#include <string>
#include <vector>

namespace tripodsim {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(const std::string& s);

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::filesystem::path& path);
/// Writes bytes verbatim; creates parent directories.
void write_file(const std::filesystem::path& path, const std::string& bytes);

struct ManifestRun {
  std::string label;
  double wall_clock_seconds = 0.0;
};

struct Manifest {
  std::string command;
  std::string config_sha256;
  std::vector<std::string> outputs;  // relative to the output directory
  std::vector<ManifestRun> runs;
};

std::string tool_version();

/// Hashes every listed output as it is on disk.
std::string manifest_json(const Manifest& m, const std::filesystem::path& out_dir);

}  // namespace tripodsim

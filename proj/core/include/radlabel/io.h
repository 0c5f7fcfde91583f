// Copyright 2026 The radlabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RADLABEL_IO_H_
#define RADLABEL_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace radlabel {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file. Creates parent directories.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

nlohmann::json read_json_file(const std::filesystem::path& path);

// Pretty-printed, trailing newline.
void write_json_file(const std::filesystem::path& path,
                     const nlohmann::ordered_json& doc);

std::string sha256_hex(std::string_view bytes);
std::string sha256_hex(std::span<const double> values);
std::string file_sha256(const std::filesystem::path& path);

// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

// Shortest decimal that round-trips; plain notation for magnitudes in
// [1e-4, 1e16), exponent form otherwise.
std::string format_double(double value);

}  // namespace radlabel

#endif  // RADLABEL_IO_H_

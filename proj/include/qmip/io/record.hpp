// Copyright 2026 The qmip-sim Authors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "qmip/adversary/adversary.hpp"
#include "qmip/transforms/transforms.hpp"

namespace qmip::io {

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);
std::string file_digest(const std::filesystem::path& path);

/// One line of a run log.
struct RunRecord {
    std::string input_digest;
    std::string command;
    std::optional<std::uint64_t> seed;
    std::optional<double> p_acc;
    std::optional<nlohmann::ordered_json> report;
    std::optional<nlohmann::ordered_json> adversary;
    /// Command-specific fields (verdicts, output paths, stage lists).
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    double wall_time = 0.0;
};

nlohmann::ordered_json to_json(const transforms::TransformReport& r);
/// Summary only: value, trace, restarts. Strategies are written separately.
nlohmann::ordered_json to_json(const adversary::AdversaryResult& r);
nlohmann::ordered_json to_json(const RunRecord& r);

/// Compact single-line JSON, newline terminated.
std::string to_line(const RunRecord& r);

} // namespace qmip::io

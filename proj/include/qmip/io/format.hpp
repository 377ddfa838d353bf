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

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "qmip/protocol/model.hpp"

namespace qmip::io {

inline constexpr const char* kFormatVersion = "qmip-protocol/1";

/// Advisory numbers carried by a file. Nothing here is trusted by a verdict.
struct Metadata {
    std::optional<double> claimed_c;
    std::optional<double> claimed_s;
    /// "yes", "no" or empty.
    std::string instance;
    std::string description;

    bool operator==(const Metadata&) const = default;
};

struct ProtocolFile {
    protocol::ProtocolInstance instance;
    Metadata metadata;
};

nlohmann::ordered_json to_json(const protocol::Circuit& c);
nlohmann::ordered_json to_json(const protocol::ProverStrategy& s, int prover);
nlohmann::ordered_json to_json(const ProtocolFile& f);

/// Parses and validates. Every error is a ValidationError whose message
/// starts with "<source>:<line>: ".
ProtocolFile from_json_text(const std::string& text, const std::string& source = "<input>");
ProtocolFile load(const std::filesystem::path& path);

std::string dump(const ProtocolFile& f);
void save(const ProtocolFile& f, const std::filesystem::path& path);

/// Reads just the prover strategies and shared state of a strategy file (the
/// same layout as a protocol file's "honest" block) against a given protocol.
ProtocolFile with_strategy(const ProtocolFile& base, const std::filesystem::path& strategy_path);
nlohmann::ordered_json strategy_json(const std::vector<protocol::ProverStrategy>& provers,
                                     const protocol::SharedState& shared);

} // namespace qmip::io

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

#include "qmip/io/record.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "qmip/errors.hpp"

namespace qmip::io {

using nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("SHA-256 digest failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) {
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return out.str();
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string() + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

ordered_json to_json(const transforms::TransformReport& r) {
    ordered_json j;
    j["pass"] = r.pass;
    j["input"] = {{"k", r.k_in}, {"m", r.m_in}, {"qubits", r.qubits_in}, {"registers", r.registers_in}};
    j["output"] = {{"k", r.k_out}, {"m", r.m_out}, {"qubits", r.qubits_out}, {"registers", r.registers_out}};
    if (r.c_in) {
        j["input"]["c_measured"] = *r.c_in;
    }
    if (r.c_out) {
        j["output"]["c_measured"] = *r.c_out;
    }
    j["claims"] = ordered_json::array();
    for (const auto& c : r.claims) {
        j["claims"].push_back({{"name", c.name}, {"formula", c.formula}, {"value", c.value}});
    }
    j["values"] = ordered_json::object();
    for (const auto& [k, v] : r.values) {
        j["values"][k] = v;
    }
    j["notes"] = r.notes;
    return j;
}

ordered_json to_json(const adversary::AdversaryResult& r) {
    ordered_json j;
    j["value"] = r.value;
    j["best_restart"] = r.best_restart;
    j["converged"] = r.converged;
    j["sweeps"] = r.trace.size();
    j["trace"] = r.trace;
    j["restart_values"] = r.restart_values;
    return j;
}

ordered_json to_json(const RunRecord& r) {
    ordered_json j;
    j["input_digest"] = r.input_digest;
    j["command"] = r.command;
    j["seed"] = r.seed ? ordered_json(*r.seed) : ordered_json(nullptr);
    j["p_acc"] = r.p_acc ? ordered_json(*r.p_acc) : ordered_json(nullptr);
    j["report"] = r.report ? *r.report : ordered_json(nullptr);
    j["adversary"] = r.adversary ? *r.adversary : ordered_json(nullptr);
    for (const auto& [k, v] : r.extra.items()) {
        j[k] = v;
    }
    j["wall_time"] = r.wall_time;
    return j;
}

std::string to_line(const RunRecord& r) {
    return to_json(r).dump() + "\n";
}

} // namespace qmip::io

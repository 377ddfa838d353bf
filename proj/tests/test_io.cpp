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

#include <string>

#include <gtest/gtest.h>

#include "qmip/errors.hpp"
#include "qmip/io/fixtures.hpp"
#include "qmip/io/format.hpp"
#include "qmip/io/record.hpp"
#include "qmip/protocol/simulator.hpp"

using namespace qmip;
namespace fx = io::fixtures;

namespace {

int line_of(const std::string& text, const std::string& needle) {
    const auto at = text.find(needle);
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n'));
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return text.replace(at, from.size(), to);
}

std::string error_of(const std::string& text) {
    try {
        io::from_json_text(text, "f.json");
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Format, RoundTripPreservesEveryFixture) {
    for (const auto& [entry, f] : fx::base_suite()) {
        const auto text = io::dump(f);
        const auto back = io::from_json_text(text, entry.file);
        EXPECT_EQ(back.instance.verifier.layout().slots(), f.instance.verifier.layout().slots()) << entry.name;
        EXPECT_NEAR(protocol::acceptance_probability(back.instance), protocol::acceptance_probability(f.instance),
                    1e-12)
            << entry.name;
        EXPECT_EQ(io::dump(back), text) << entry.name;
        EXPECT_EQ(back.metadata, f.metadata) << entry.name;
    }
}

TEST(Format, GuessLoadsValid) {
    const auto f = io::from_json_text(io::dump(fx::guess()));
    EXPECT_TRUE(protocol::validate(f.instance).empty());
    EXPECT_NEAR(protocol::acceptance_probability(f.instance), 0.5, 1e-12);
}

TEST(Format, ChshShape) {
    const auto f = io::from_json_text(io::dump(fx::chsh()));
    const auto& v = f.instance.verifier;
    EXPECT_EQ(v.k, 2);
    EXPECT_EQ(v.m(), 2);
    for (const auto& r : v.registers) {
        if (r.role == protocol::Role::Message) {
            EXPECT_EQ(r.qubits, 1) << r.name;
        }
    }
}

TEST(Format, ParseErrorNamesLine) {
    const auto text = replace_once(io::dump(fx::guess()), "\"provers\": 1,", "\"provers\": 1");
    const auto msg = error_of(text);
    EXPECT_EQ(msg.rfind("f.json:" + std::to_string(line_of(text, "\"registers\"")) + ": parse error", 0), 0u) << msg;
}

TEST(Format, UnknownGateNamesLine) {
    const auto text = replace_once(io::dump(fx::guess()), "\"gate\": \"H\"", "\"gate\": \"Q\"");
    const auto msg = error_of(text);
    EXPECT_EQ(msg.rfind("f.json:" + std::to_string(line_of(text, "\"gate\": \"Q\"")) + ": ", 0), 0u) << msg;
    EXPECT_NE(msg.find("unknown gate Q"), std::string::npos) << msg;
}

TEST(Format, NonUnitaryGateIsReported) {
    const std::string u = R"("gate": "U", "matrix": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]])";
    const auto text = replace_once(io::dump(fx::guess()), "\"gate\": \"H\"", u);
    const auto msg = error_of(text);
    EXPECT_NE(msg.find("gate U not unitary (‖U†U−I‖ = "), std::string::npos) << msg;
    EXPECT_EQ(msg.rfind("f.json:" + std::to_string(line_of(text, "\"gate\": \"U\"")) + ": ", 0), 0u) << msg;
}

TEST(Format, UnnormalizedSharedStateIsRejected) {
    const auto text = replace_once(io::dump(fx::guess()), "1.0,\n          0.0", "2.0,\n          0.0");
    EXPECT_NE(error_of(text).find("not normalized"), std::string::npos);
}

TEST(Format, ValidationViolationsAreFatal) {
    const auto text = replace_once(io::dump(fx::guess()), "\"register\": \"out\"", "\"register\": \"nowhere\"");
    EXPECT_FALSE(error_of(text).empty());
}

TEST(Record, Sha256KnownVector) {
    EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(io::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Record, DigestStableAcrossIdenticalBytes) {
    const auto text = io::dump(fx::chsh());
    EXPECT_EQ(io::sha256_hex(text), io::sha256_hex(io::dump(io::from_json_text(text))));
    EXPECT_NE(io::sha256_hex(text), io::sha256_hex(text + " "));
}

TEST(Record, OneLinePerRecord) {
    io::RunRecord r;
    r.input_digest = io::sha256_hex("x");
    r.command = "simulate";
    r.seed = 7;
    r.p_acc = 0.25;
    r.extra["verdict"] = "CONSISTENT";
    const auto line = io::to_line(r);
    ASSERT_FALSE(line.empty());
    EXPECT_EQ(line.back(), '\n');
    EXPECT_EQ(std::count(line.begin(), line.end(), '\n'), 1);
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("command"), "simulate");
    EXPECT_EQ(j.at("seed"), 7);
    EXPECT_EQ(j.at("verdict"), "CONSISTENT");
    EXPECT_TRUE(j.at("report").is_null());
}

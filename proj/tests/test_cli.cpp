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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"
#include "qmip/io/format.hpp"
#include "qmip/protocol/simulator.hpp"

namespace fs = std::filesystem;
using namespace qmip;

namespace {

const fs::path kFixtures = fs::path(QMIP_SOURCE_DIR) / "fixtures";

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("qmip_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(std::vector<std::string> args) {
        args.push_back("--out");
        args.push_back(dir_.string());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    static std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

    std::vector<nlohmann::json> records() const {
        std::vector<nlohmann::json> out;
        std::ifstream in(dir_ / "records.jsonl");
        for (std::string line; std::getline(in, line);) {
            out.push_back(nlohmann::json::parse(line));
        }
        return out;
    }

    fs::path dir_;
};

double value_after(const std::string& text, const std::string& key) {
    const auto at = text.find(key);
    EXPECT_NE(at, std::string::npos) << key;
    return std::stod(text.substr(at + key.size()));
}

} // namespace

TEST_F(Cli, SimulateAlways) {
    const auto r = run({"simulate", fixture("always.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "p_acc = 1.000000000000\n");
}

TEST_F(Cli, SimulateRewindableGoodWithOptimalShared) {
    const auto r = run({"simulate", fixture("rewindable_good.json"), "--optimal-shared"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "p_acc = "), 0.5, 1e-9);
}

TEST_F(Cli, AuditedChshStrategyReplays) {
    const auto a = run({"audit", fixture("chsh.json"), "--restarts", "5", "--seed", "3"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto s = run({"simulate", fixture("chsh.json"), "--strategy", (dir_ / "chsh_opt.json").string()});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NEAR(value_after(s.out, "p_acc = "), 0.853553, 1e-4);
}

TEST_F(Cli, AuditGuessIsConsistent) {
    const auto r = run({"audit", fixture("guess.json"), "--restarts", "20"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "value = "), 0.5, 1e-9);
    EXPECT_NE(r.out.find("CONSISTENT"), std::string::npos);
}

TEST_F(Cli, AuditAlways) {
    const auto r = run({"audit", fixture("always.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_after(r.out, "value = "), 1.0, 1e-9);
}

TEST_F(Cli, AuditReportsExcess) {
    const auto r = run({"audit", fixture("chsh.json"), "--restarts", "3", "--bound", "0.75"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("EXCEEDS"), std::string::npos);
}

TEST_F(Cli, AuditRewoundSound) {
    const auto r = run({"audit", fixture("rewound_sound.json"), "--restarts", "5", "--sweeps", "60"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_LE(value_after(r.out, "value = "), 0.5 + 2.0 * 0.1 + 2.5 * 0.01 + 1e-6);
    EXPECT_NE(r.out.find("CONSISTENT"), std::string::npos);
}

TEST_F(Cli, TransformGuessRewindable) {
    const auto r = run({"transform", fixture("guess.json"), "--pass", "rewindable"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = io::load(dir_ / "guess.rewindable.json");
    EXPECT_TRUE(f.instance.verifier.has_reg("B"));
    EXPECT_NEAR(value_after(r.out, "optimal_shared = "), 0.5, 1e-9);
    EXPECT_TRUE(fs::exists(dir_ / "guess.rewindable.report.json"));
}

TEST_F(Cli, TransformFiveTurnToThree) {
    const auto r = run({"transform", fixture("five_turn.json"), "--pass", "three-turn"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("-> (1, 3)"), std::string::npos);
    EXPECT_EQ(io::load(dir_ / "five_turn.three-turn.json").instance.verifier.m(), 3);
    std::ifstream in(dir_ / "five_turn.three-turn.report.json");
    EXPECT_EQ(nlohmann::json::parse(in).at("output").at("m"), 3);
}

TEST_F(Cli, TransformPc3OneRound) {
    const auto r = run({"transform", fixture("pc3.json"), "--pass", "one-round"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = io::load(dir_ / "pc3.one-round.json");
    EXPECT_EQ(f.instance.verifier.k, 2);
    EXPECT_EQ(f.instance.verifier.m(), 2);
    EXPECT_NEAR(protocol::acceptance_probability(f.instance), 0.9, 1e-9);
}

TEST_F(Cli, PipelineGood) {
    const auto r = run({"pipeline", fixture("good.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("final: k' = 2, m' = 2"), std::string::npos);
    EXPECT_NEAR(value_after(r.out, "p_acc = "), 1.0, 1e-9);
    EXPECT_TRUE(fs::exists(dir_ / "good.pipeline" / "5-one-round.json"));
}

TEST_F(Cli, PipelineFiveTurn) {
    const auto r = run({"pipeline", fixture("five_turn.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("final: k' = 2, m' = 2"), std::string::npos);
    EXPECT_NEAR(value_after(r.out, "p_acc = "), 1.0, 1e-9);
}

TEST_F(Cli, PipelineAbortsOnMissingGap) {
    const auto r = run({"pipeline", fixture("guess.json")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("stage rewindable"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("gap"), std::string::npos) << r.err;
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run({"simulate", (dir_ / "missing.json").string()}).code, 2);
    EXPECT_EQ(run({"transform", fixture("good.json"), "--pass", "nope"}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"transform", fixture("good.json"), "--pass", "rewind"}).code, 3);
    EXPECT_EQ(run({"transform", fixture("good.json"), "--pass", "seq-rep", "--n", "200"}).code, 4);
    fs::copy(kFixtures, dir_ / "fx");
    {
        std::ofstream o(dir_ / "fx" / "never.json", std::ios::app);
        o << "\n";
    }
    const auto v = run({"fixtures", "verify", "--dir", (dir_ / "fx").string()});
    EXPECT_EQ(v.code, 5);
    EXPECT_NE(v.out.find("never.json: FAILED"), std::string::npos);
}

TEST_F(Cli, CommittedFixturesVerify) {
    const auto r = run({"fixtures", "verify", "--dir", kFixtures.string()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(Cli, RecordsAreDeterministicApartFromWallTime) {
    ASSERT_EQ(run({"audit", fixture("chsh.json"), "--restarts", "3", "--seed", "9"}).code, 0);
    ASSERT_EQ(run({"audit", fixture("chsh.json"), "--restarts", "3", "--seed", "9"}).code, 0);
    auto recs = records();
    ASSERT_EQ(recs.size(), 2u);
    for (auto& r : recs) {
        r.erase("wall_time");
    }
    EXPECT_EQ(recs[0].dump(), recs[1].dump());
    EXPECT_EQ(recs[0].at("seed"), 9);
    EXPECT_EQ(recs[0].at("input_digest").get<std::string>().size(), 64u);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
    ::setenv("QMIP_OUT_DIR", (dir_ / "env").c_str(), 1);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"simulate", fixture("guess.json"), "--snapshots"}, out, err);
    ::unsetenv("QMIP_OUT_DIR");
    EXPECT_EQ(code, 0) << err.str();
    EXPECT_TRUE(fs::exists(dir_ / "env" / "records.jsonl"));
    EXPECT_TRUE(fs::exists(dir_ / "env" / "guess.snapshots.json"));
}

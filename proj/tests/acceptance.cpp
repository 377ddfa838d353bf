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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qmip/adversary/adversary.hpp"
#include "qmip/io/fixtures.hpp"
#include "qmip/io/format.hpp"
#include "qmip/linalg/operators.hpp"
#include "qmip/protocol/simulator.hpp"
#include "qmip/transforms/transforms.hpp"

namespace fs = std::filesystem;
using namespace qmip;

namespace {

// Pinned tolerances.
constexpr double kExact = 1e-9;
constexpr double kAuditSlack = 0.01;
constexpr double kFidelitySlack = 1e-9;
constexpr double kMonotoneSlack = 1e-9;
constexpr double kGridSlack = 1e-3;
constexpr double kChshTol = 1e-4;

const fs::path kFixtures = fs::path(QMIP_SOURCE_DIR) / "fixtures";
fs::path g_out;

struct Verdict {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string fixture(const std::string& name) { return (kFixtures / (name + ".json")).string(); }

/// Runs the command line tool in-process; throws on a nonzero exit code.
std::string cli(std::vector<std::string> args) {
    args.push_back("--out");
    args.push_back(g_out.string());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (code != 0) {
        throw std::runtime_error(args.front() + " exited with " + std::to_string(code) + ": " + err.str());
    }
    return out.str();
}

double after(const std::string& text, const std::string& key) {
    const auto at = text.find(key);
    if (at == std::string::npos) {
        throw std::runtime_error("missing '" + key + "' in output");
    }
    return std::stod(text.substr(at + key.size()));
}

/// Transforms `path` with `pass` through the tool and returns the output path.
std::string transform(const std::string& path, const std::string& pass, bool verifier_only = false) {
    std::vector<std::string> args{"transform", path, "--pass", pass};
    if (verifier_only) {
        args.push_back("--verifier-only");
    }
    cli(args);
    return (g_out / (fs::path(path).stem().string() + "." + pass + ".json")).string();
}

double honest(const std::string& path) { return protocol::acceptance_probability(io::load(path).instance); }

adversary::AdversaryResult seesaw(const protocol::VerifierSpec& spec, int restarts, std::uint64_t seed = 1,
                                  int sweeps = 200) {
    adversary::SeesawConfig c;
    c.restarts = restarts;
    c.seed = seed;
    c.max_sweeps = sweeps;
    return adversary::seesaw(spec, c);
}

double audit(const std::string& path, int restarts) { return seesaw(io::load(path).instance.verifier, restarts).value; }

double known_optimum(const std::string& name) {
    for (const auto& [e, f] : io::fixtures::base_suite()) {
        if (e.name == name) {
            return e.optimum;
        }
    }
    throw std::runtime_error("no fixture " + name);
}

// 1 --------------------------------------------------------------------------
Verdict perfect_rewindability() {
    Verdict v;
    for (const std::string name : {"good", "always"}) {
        const auto f = io::load(transform(fixture(name), "rewindable"));
        const double p = adversary::optimal_shared_state(f.instance.verifier, f.instance.provers).p_max;
        v.check(std::abs(p - 0.5) <= kExact, name + " optimum " + num(p, 12));
        v.note(name + " " + num(p, 12));
    }
    return v;
}

// 2 --------------------------------------------------------------------------
Verdict perfect_completeness() {
    Verdict v;
    std::vector<std::string> inputs{fixture("rewindable_good"), fixture("rewindable_always")};
    for (const std::string name : {"guess", "chsh", "chsh3", "relay3", "five_turn", "pc3"}) {
        inputs.push_back(transform(fixture(name), "rewindable"));
    }
    double worst = 0.0;
    for (const auto& in : inputs) {
        const auto out = transform(in, "rewind");
        const auto f = io::load(out);
        const double p = protocol::acceptance_probability(f.instance);
        const auto paths = transforms::rewind_paths(f.instance);
        const auto name = fs::path(in).stem().string();
        v.check(std::abs(p - 1.0) <= kExact, name + " honest " + num(p, 12));
        v.check(std::abs(paths.p1 + paths.p2 - 1.0) <= kExact, name + " rewinding test " + num(paths.p1 + paths.p2, 12));
        v.check(std::abs(paths.p3 - 1.0) <= kExact, name + " invertibility test " + num(paths.p3, 12));
        worst = std::max({worst, std::abs(p - 1.0), std::abs(paths.p1 + paths.p2 - 1.0), std::abs(paths.p3 - 1.0)});
    }
    v.note(std::to_string(inputs.size()) + " fixtures, worst deviation " + num(worst, 12));
    return v;
}

// 3 --------------------------------------------------------------------------
Verdict rewinding_soundness() {
    Verdict v;
    const double s = audit(fixture("sound"), 10);
    v.check(s <= 0.01 + kExact, "input see-saw value " + num(s) + " above 0.01");
    const auto spec = io::load(fixture("rewound_sound")).instance.verifier;
    const auto r = seesaw(spec, 100);
    const double bound = 0.5 + 2.0 * std::sqrt(s) + 2.5 * s + kAuditSlack;
    v.check(r.value <= bound, "rewound value " + num(r.value) + " above " + num(bound));
    v.note("s = " + num(s) + ", rewound see-saw (100 restarts) " + num(r.value) + " <= " + num(bound));
    return v;
}

// 4 --------------------------------------------------------------------------
Verdict halving() {
    Verdict v;
    for (const std::string name : {"five_turn", "nine_turn"}) {
        const double c = honest(fixture(name));
        const double h = honest(transform(fixture(name), "halve"));
        v.check(std::abs(h - (1.0 + c) / 2.0) <= kExact, name + " honest " + num(h, 12));
        v.note(name + " " + num(h, 12));
    }
    for (const std::string name : {"five_turn_no", "nine_turn_no"}) {
        const double s = known_optimum(name);
        const double a = audit(transform(fixture(name), "halve", true), 10);
        const double bound = (1.0 + std::sqrt(s)) / 2.0 + kAuditSlack;
        v.check(a <= bound, name + " audit " + num(a) + " above " + num(bound));
        v.note(name + " audit " + num(a) + " <= " + num(bound));
    }
    return v;
}

// 5 --------------------------------------------------------------------------
Verdict three_turn() {
    Verdict v;
    const auto out = transform(fixture("nine_turn_pc"), "three-turn");
    const auto f = io::load(out);
    const double h = protocol::acceptance_probability(f.instance);
    v.check(f.instance.verifier.m() == 3, "output has " + std::to_string(f.instance.verifier.m()) + " turns");
    v.check(std::abs(h - 1.0) <= kExact, "honest " + num(h, 12));
    v.note("honest " + num(h, 12));
    const double delta = 1.0 - known_optimum("nine_turn_no");
    const int m = io::load(fixture("nine_turn_no")).instance.verifier.m();
    const double a = audit(transform(fixture("nine_turn_no"), "three-turn", true), 10);
    const double bound = 1.0 - delta / ((m - 1.0) * (m - 1.0)) + kAuditSlack;
    v.check(a <= bound, "audit " + num(a) + " above " + num(bound));
    v.note("audit " + num(a) + " <= " + num(bound));
    return v;
}

std::vector<std::string> three_turn_suite() {
    return {fixture("chsh3"), fixture("pc3"), fixture("relay3"), fixture("relay3_no"),
            transform(fixture("five_turn"), "three-turn")};
}

// 6 --------------------------------------------------------------------------
Verdict public_coin() {
    Verdict v;
    double worst = 0.0;
    for (const auto& in : three_turn_suite()) {
        const double c = honest(in);
        const auto f = io::load(transform(in, "public-coin"));
        const auto& w = f.instance.verifier;
        const auto name = fs::path(in).stem().string();
        v.check(w.is_public_coin() && w.total_coin_bits() == 1, name + " broadcasts " +
                                                                     std::to_string(w.total_coin_bits()) + " bits");
        const double h = protocol::acceptance_probability(f.instance);
        v.check(std::abs(h - (1.0 + c) / 2.0) <= kExact, name + " honest " + num(h, 12));
        worst = std::max(worst, std::abs(h - (1.0 + c) / 2.0));
    }
    v.note("5 three-turn inputs, one coin bit each, worst deviation " + num(worst, 12));
    return v;
}

// 7 --------------------------------------------------------------------------
Verdict one_round() {
    Verdict v;
    std::vector<std::string> inputs{fixture("pc3")};
    for (const auto& in : three_turn_suite()) {
        inputs.push_back(transform(in, "public-coin"));
    }
    double worst = 0.0;
    for (const auto& in : inputs) {
        const auto before = io::load(in);
        const auto after_file = io::load(transform(in, "one-round"));
        const auto name = fs::path(in).stem().string();
        const double c = protocol::acceptance_probability(before.instance);
        const double h = protocol::acceptance_probability(after_file.instance);
        v.check(std::abs(h - c) <= kExact, name + " honest " + num(h, 12) + " vs " + num(c, 12));
        v.check(after_file.instance.verifier.k == before.instance.verifier.k + 1 &&
                    after_file.instance.verifier.m() == 2,
                name + " shape");
        worst = std::max(worst, std::abs(h - c));
    }
    v.note(std::to_string(inputs.size()) + " inputs, (k, m) -> (k+1, 2), worst deviation " + num(worst, 12));
    return v;
}

// 8 --------------------------------------------------------------------------
Verdict pipeline() {
    Verdict v;
    const int k = io::load(fixture("good")).instance.verifier.k;
    const auto yes = cli({"pipeline", fixture("good")});
    const std::string shape = "final: k' = " + std::to_string(k + 1) + ", m' = 2";
    v.check(yes.find(shape) != std::string::npos, "yes-instance final shape");
    const double h = after(yes, "p_acc = ");
    v.check(std::abs(h - 1.0) <= kExact, "yes-instance honest " + num(h, 12));
    v.note("good: (k', m') = (" + std::to_string(k + 1) + ", 2), honest " + num(h, 12));
    const auto no = cli({"pipeline", fixture("sound"), "--audit", "--restarts", "1", "--sweeps", "20"});
    const double p = after(no, "p' = ");
    const double a = after(no, "audit value = ");
    const double bound = 1.0 - 1.0 / p + kAuditSlack;
    v.check(a <= bound, "no-instance audit " + num(a) + " above " + num(bound));
    v.note("sound: p' = " + num(p, 3) + ", audit " + num(a) + " <= " + num(bound));
    return v;
}

// 9 --------------------------------------------------------------------------
Verdict direct_vs_detour() {
    Verdict v;
    double worst = 0.0;
    for (const auto& in : three_turn_suite()) {
        const double direct = honest(transform(in, "direct-one-round"));
        const double detour = honest(transform(transform(in, "public-coin"), "one-round"));
        v.check(std::abs(direct - detour) <= kExact,
                fs::path(in).stem().string() + " " + num(direct, 12) + " vs " + num(detour, 12));
        worst = std::max(worst, std::abs(direct - detour));
    }
    v.note("5 three-turn inputs, worst difference " + num(worst, 12));
    return v;
}

// 10 -------------------------------------------------------------------------
Verdict numerics() {
    Verdict v;
    std::mt19937_64 rng(2024);
    double worst = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Index dim = Eigen::Index{2} << (i % 3);
        std::uniform_int_distribution<Eigen::Index> rank(0, dim);
        const auto a = linalg::random_density(dim, rank(rng), rng);
        const auto b = linalg::random_density(dim, rank(rng), rng);
        const auto c = linalg::random_density(dim, rank(rng), rng);
        const double fab = linalg::fidelity(a, b);
        const double fbc = linalg::fidelity(b, c);
        const double fac = linalg::fidelity(a, c);
        worst = std::max(worst, fab * fab + fbc * fbc - 1.0 - fac);
    }
    v.check(worst <= kFidelitySlack, "fidelity inequality violated by " + num(worst, 12));
    v.note("fidelity: max excess " + num(worst, 3));

    int traces = 0;
    for (const auto& [e, f] : io::fixtures::base_suite()) {
        const auto r = seesaw(f.instance.verifier, 2, 5);
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            v.check(r.trace[i] >= r.trace[i - 1] - kMonotoneSlack, e.name + " trace not monotone");
        }
        ++traces;
    }
    v.note(std::to_string(traces) + " monotone traces");

    for (const std::string name : {"always", "guess", "chsh"}) {
        const auto spec = io::load(fixture(name)).instance.verifier;
        const double grid = adversary::brute_force_value(spec, std::numbers::pi / 32);
        const double ss = seesaw(spec, 5, 3).value;
        v.check(grid <= ss + kGridSlack, name + " grid " + num(grid) + " above see-saw " + num(ss));
    }
    v.note("grid <= see-saw on always, guess, chsh");

    const double chsh = seesaw(io::load(fixture("chsh")).instance.verifier, 10, 3).value;
    const double target = std::pow(std::cos(std::numbers::pi / 8), 2);
    v.check(std::abs(chsh - target) <= kChshTol, "CHSH see-saw " + num(chsh, 9));
    v.note("CHSH " + num(chsh, 9));
    return v;
}

} // namespace

int main() {
    g_out = fs::temp_directory_path() / "qmip_acceptance";
    fs::remove_all(g_out);
    fs::create_directories(g_out);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"perfect rewindability identity", perfect_rewindability},
        {"perfect completeness identity", perfect_completeness},
        {"rewinding soundness consistency", rewinding_soundness},
        {"halving identities", halving},
        {"three-turn cascade", three_turn},
        {"public-coin conversion", public_coin},
        {"one-round preservation", one_round},
        {"pipeline", pipeline},
        {"direct-vs-detour equivalence", direct_vs_detour},
        {"numerics", numerics},
    };
    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("error: ") + e.what();
        }
        passed += v.pass ? 1 : 0;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    fs::remove_all(g_out);
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}

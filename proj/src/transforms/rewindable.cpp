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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common.hpp"
#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"

namespace qmip::transforms {

using namespace detail;
namespace g = protocol::gates;

namespace {

struct Added {
    VerifierSpec spec;
    std::string b;
};

Added add_rewind_qubit(const VerifierSpec& in) {
    Added out{in, fresh_name(in, "B")};
    auto& s = out.spec;
    const auto acc = fresh_name(in, "acc");
    s.registers.push_back(verifier_zero(out.b));
    s.registers.push_back(verifier_zero(acc));
    for (auto it = s.turns.rbegin(); it != s.turns.rend(); ++it) {
        if (auto* p = std::get_if<ProverTurn>(&*it)) {
            p->held[0].push_back(out.b);
            break;
        }
    }
    s.final_circuit.add(g::toffoli({out.b, 0}, in.output, {acc, 0}));
    s.output = {acc, 0};
    return out;
}

TransformReport base_report(const VerifierSpec& in, const VerifierSpec& out, const Bounds& bounds) {
    TransformReport r;
    r.pass = "rewindable";
    fill_in(r, in, out);
    r.claims.push_back({"c'", "1/2", 0.5});
    if (bounds.s) {
        r.claims.push_back({"s'", "s", *bounds.s});
    }
    return r;
}

} // namespace

SpecResult make_perfectly_rewindable(const VerifierSpec& in, const Bounds& bounds) {
    ensure_valid(in, "rewindable");
    auto added = add_rewind_qubit(in);
    ensure_valid(added.spec, "rewindable");
    auto report = base_report(in, added.spec, bounds);
    return {std::move(added.spec), std::move(report)};
}

Result make_perfectly_rewindable(const ProtocolInstance& in, double p_max, const Bounds& bounds) {
    ensure_valid(in, "rewindable");
    if (!(p_max > 0.0)) {
        throw PreconditionError("rewindable: p_max must be positive");
    }
    if (p_max < 0.5 - kIdentityTol) {
        std::ostringstream msg;
        msg << "rewindable: p_max = " << p_max << " is below 1/2; the construction needs c >= 1/2";
        throw PreconditionError(msg.str());
    }
    const auto opt = adversary::optimal_shared_state(in.verifier, in.provers);
    if (std::abs(opt.p_max - p_max) > 1e-6) {
        std::ostringstream msg;
        msg << "rewindable: supplied p_max = " << p_max << " differs from the optimum " << opt.p_max
            << " over shared states";
        throw PreconditionError(msg.str());
    }

    auto added = add_rewind_qubit(in.verifier);
    ProtocolInstance out{added.spec, in.provers, opt.state};
    out.provers.resize(static_cast<std::size_t>(in.verifier.k));
    const int last = in.verifier.prover_turn_count() - 1;
    auto& turns = out.provers[0].turns;
    turns.resize(static_cast<std::size_t>(last + 1));
    const double theta = 2.0 * std::asin(std::sqrt(std::min(1.0, 1.0 / (2.0 * opt.p_max))));
    auto& options = turns[static_cast<std::size_t>(last)];
    if (options.empty()) {
        options.emplace_back();
    }
    for (auto& c : options) {
        c.add(g::ry(theta, {added.b, 0}));
    }
    ensure_valid(out, "rewindable");

    Result r{std::move(out), base_report(in.verifier, added.spec, bounds)};
    r.report.values["p_max"] = opt.p_max;
    measure(r.report, in, r.instance);
    return r;
}

} // namespace qmip::transforms

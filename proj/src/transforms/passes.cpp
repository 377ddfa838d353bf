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

#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"
#include "qmip/transforms/transforms.hpp"

namespace qmip::transforms {

const Claim* TransformReport::claim(const std::string& name) const {
    for (const auto& c : claims) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

const std::vector<std::string>& pass_names() {
    static const std::vector<std::string> names{"rewindable", "rewind",   "halve",   "three-turn", "public-coin",
                                                "one-round",  "direct-one-round", "seq-rep", "par-rep"};
    return names;
}

namespace {

[[noreturn]] void unknown(const std::string& pass) {
    std::string list;
    for (const auto& n : pass_names()) {
        list += (list.empty() ? "" : ", ") + n;
    }
    throw ValidationError("unknown pass '" + pass + "' (expected one of: " + list + ")");
}

} // namespace

Result apply_pass(const std::string& pass, const ProtocolInstance& in, const Bounds& bounds,
                  const PassOptions& options) {
    if (pass == "rewindable") {
        const double p = options.p_max ? *options.p_max
                                       : adversary::optimal_shared_state(in.verifier, in.provers).p_max;
        return make_perfectly_rewindable(in, p, bounds);
    }
    if (pass == "rewind") {
        return rewind_to_perfect_completeness(in, bounds);
    }
    if (pass == "halve") {
        return halve_turns(in, bounds);
    }
    if (pass == "three-turn") {
        return parallelize_to_three(in, bounds);
    }
    if (pass == "public-coin") {
        return to_public_coin_3turn(in, bounds);
    }
    if (pass == "one-round") {
        return public_coin_to_one_round(in, bounds);
    }
    if (pass == "direct-one-round") {
        return direct_two_turn(in, bounds);
    }
    if (pass == "seq-rep") {
        return sequential_repetition(in, options.repetitions, bounds);
    }
    if (pass == "par-rep") {
        return parallel_repetition_fresh_provers(in, options.repetitions, bounds);
    }
    unknown(pass);
}

SpecResult apply_pass(const std::string& pass, const VerifierSpec& in, const Bounds& bounds,
                      const PassOptions& options) {
    if (pass == "rewindable") {
        return make_perfectly_rewindable(in, bounds);
    }
    if (pass == "rewind") {
        return rewind_to_perfect_completeness(in, bounds);
    }
    if (pass == "halve") {
        return halve_turns(in, bounds);
    }
    if (pass == "three-turn") {
        return parallelize_to_three(in, bounds);
    }
    if (pass == "public-coin") {
        return to_public_coin_3turn(in, bounds);
    }
    if (pass == "one-round") {
        return public_coin_to_one_round(in, bounds);
    }
    if (pass == "direct-one-round") {
        return direct_two_turn(in, bounds);
    }
    if (pass == "seq-rep") {
        return sequential_repetition(in, options.repetitions, bounds);
    }
    if (pass == "par-rep") {
        return parallel_repetition_fresh_provers(in, options.repetitions, bounds);
    }
    unknown(pass);
}

} // namespace qmip::transforms

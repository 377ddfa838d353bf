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

#include <string>
#include <vector>

#include "qmip/io/format.hpp"

namespace qmip::io::fixtures {

/// Accepts whatever the prover does.
ProtocolFile always();
/// Rejects whatever the prover does.
ProtocolFile never();
/// The verifier hides a random bit and accepts when the prover's answer
/// matches it: value 1/2 for every strategy.
ProtocolFile guess();
/// The CHSH game for two provers with one-qubit answers.
ProtocolFile chsh();
/// CHSH with an opening turn in which both provers send their (empty) message
/// registers: three turns.
ProtocolFile chsh3();
/// Two turns, optimal value 3/4 reached with the all-zero shared state.
ProtocolFile good();
/// A message register is bounced between verifier and prover for `m` turns;
/// each verifier turn scrambles it with S.H and the honest prover undoes it.
/// The verifier finally checks the message still mirrors its hidden bit and
/// accepts with probability `w` when it does. Optimal value is exactly `w`.
/// `c`, `s` and `instance` only fill the metadata.
ProtocolFile relay(int m, double w, double c, double s, std::string instance);
/// Three-turn public-coin protocol: the prover commits to M, sees one coin,
/// sends N; the verifier checks the parity of (M, N) in the Z basis or the Y
/// basis and accepts with probability `w` on success.
ProtocolFile pc3(double w);

struct Entry {
    std::string name;
    std::string file;
    std::string provenance;  // by-construction | analytic | numerical-oracle
    double honest = 0.0;     // honest acceptance with the bundled strategy
    double optimum = -1.0;   // optimal value when known, else -1
    std::string note;
};

/// Base fixtures with their expected values.
std::vector<std::pair<Entry, ProtocolFile>> base_suite();

/// Base fixtures plus transformed ones (rewindable and rewound versions of
/// the good/sound pair).
std::vector<std::pair<Entry, ProtocolFile>> full_suite();

/// Metadata for a transformed file: the report's claims become the claimed
/// bounds, the rest is inherited.
Metadata derived_metadata(const Metadata& in, const std::string& pass, const std::optional<double>& c,
                          const std::optional<double>& s);

} // namespace qmip::io::fixtures

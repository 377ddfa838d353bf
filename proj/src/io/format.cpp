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

#include "qmip/io/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qmip/errors.hpp"
#include "qmip/protocol/simulator.hpp"

namespace qmip::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using namespace protocol;

namespace {

// ---------------------------------------------------------------------------
// JSON pointer -> line number, by a small scan of the source text.

class SourceMap {
  public:
    explicit SourceMap(const std::string& text) : text_(text) {
        skip_ws();
        if (pos_ < text_.size()) {
            value("");
        }
    }

    int line(std::string pointer) const {
        while (true) {
            if (auto it = lines_.find(pointer); it != lines_.end()) {
                return it->second;
            }
            if (pointer.empty()) {
                return 1;
            }
            pointer = pointer.substr(0, pointer.rfind('/'));
        }
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
            }
            ++pos_;
        }
    }

    std::string string() {
        std::string out;
        ++pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
                ++pos_;
            }
            out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    void value(const std::string& ptr) {
        skip_ws();
        if (pos_ >= text_.size()) {
            return;
        }
        lines_.emplace(ptr, line_);
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            while (true) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] == '}') {
                    ++pos_;
                    return;
                }
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                const int key_line = line_;
                const std::string key = string();
                skip_ws();
                ++pos_;  // ':'
                const std::string child = ptr + "/" + key;
                lines_.emplace(child, key_line);
                value(child);
            }
        } else if (c == '[') {
            ++pos_;
            int index = 0;
            while (true) {
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] == ']') {
                    ++pos_;
                    return;
                }
                if (text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                value(ptr + "/" + std::to_string(index++));
            }
        } else if (c == '"') {
            (void)string();
        } else {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '}' &&
                   !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;
};

struct Context {
    std::string source;
    SourceMap map;

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
        throw ValidationError(source + ":" + std::to_string(map.line(ptr)) + ": " + msg);
    }
};

const json& need(const Context& cx, const json& j, const std::string& ptr, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        cx.fail(ptr, std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

template <typename T>
T as(const Context& cx, const json& j, const std::string& ptr, const char* what) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        cx.fail(ptr, std::string("expected ") + what);
    }
}

std::string qubit_text(const QubitRef& q) { return q.reg + "[" + std::to_string(q.index) + "]"; }

QubitRef parse_qubit(const Context& cx, const json& j, const std::string& ptr) {
    const auto s = as<std::string>(cx, j, ptr, "a qubit like \"M[0]\"");
    const auto open = s.rfind('[');
    if (open == std::string::npos || open == 0 || s.back() != ']') {
        cx.fail(ptr, "malformed qubit \"" + s + "\"");
    }
    try {
        std::size_t used = 0;
        const int idx = std::stoi(s.substr(open + 1, s.size() - open - 2), &used);
        if (used != s.size() - open - 2 || idx < 0) {
            throw std::invalid_argument("index");
        }
        return {s.substr(0, open), idx};
    } catch (const std::exception&) {
        cx.fail(ptr, "malformed qubit \"" + s + "\"");
    }
}

std::vector<QubitRef> parse_qubits(const Context& cx, const json& j, const std::string& ptr) {
    if (!j.is_array()) {
        cx.fail(ptr, "expected a list of qubits");
    }
    std::vector<QubitRef> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_qubit(cx, j[i], ptr + "/" + std::to_string(i)));
    }
    return out;
}

Complex parse_complex(const Context& cx, const json& j, const std::string& ptr) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    cx.fail(ptr, "expected a complex number [re, im]");
}

ojson complex_json(Complex c) { return ojson::array({c.real(), c.imag()}); }

Gate parse_gate(const Context& cx, const json& j, const std::string& ptr) {
    const auto name = as<std::string>(cx, need(cx, j, ptr, "gate"), ptr + "/gate", "a gate name");
    const auto targets = parse_qubits(cx, need(cx, j, ptr, "targets"), ptr + "/targets");
    auto arity = [&](std::size_t n) {
        if (targets.size() != n) {
            cx.fail(ptr + "/targets", "gate " + name + " takes " + std::to_string(n) + " target(s)");
        }
    };
    Gate g;
    if (name == "H" || name == "X" || name == "Y" || name == "Z" || name == "S" || name == "SDG") {
        arity(1);
        static const std::map<std::string, Gate (*)(QubitRef)> make{{"H", gates::h},  {"X", gates::x},
                                                                    {"Y", gates::y},  {"Z", gates::z},
                                                                    {"S", gates::s},  {"SDG", gates::sdg}};
        g = make.at(name)(targets[0]);
    } else if (name == "CNOT") {
        arity(2);
        g = gates::cnot(targets[0], targets[1]);
    } else if (name == "TOFFOLI") {
        arity(3);
        g = gates::toffoli(targets[0], targets[1], targets[2]);
    } else if (name == "SWAP") {
        arity(2);
        g = gates::swap(targets[0], targets[1]);
    } else if (name == "CPHASE") {
        if (targets.empty()) {
            cx.fail(ptr + "/targets", "gate CPHASE needs at least one target");
        }
        g = gates::cphase(targets);
    } else if (name == "RY") {
        arity(1);
        g = gates::ry(as<double>(cx, need(cx, j, ptr, "theta"), ptr + "/theta", "a number"), targets[0]);
    } else if (name == "U") {
        const auto& m = need(cx, j, ptr, "matrix");
        const auto dim = Eigen::Index{1} << targets.size();
        if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != dim) {
            cx.fail(ptr + "/matrix", "gate U on " + std::to_string(targets.size()) + " qubit(s) needs a " +
                                         std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
        }
        Matrix u(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r) {
            const auto rp = ptr + "/matrix/" + std::to_string(r);
            const auto& row = m[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
                cx.fail(rp, "matrix row has the wrong length");
            }
            for (Eigen::Index c = 0; c < dim; ++c) {
                u(r, c) = parse_complex(cx, row[static_cast<std::size_t>(c)], rp + "/" + std::to_string(c));
            }
        }
        g = gates::unitary(u, targets);
    } else {
        cx.fail(ptr + "/gate", "unknown gate " + name);
    }
    if (j.contains("controls")) {
        const auto controls = parse_qubits(cx, j.at("controls"), ptr + "/controls");
        std::vector<int> values(controls.size(), 1);
        if (j.contains("values")) {
            values = as<std::vector<int>>(cx, j.at("values"), ptr + "/values", "a list of 0/1 values");
            if (values.size() != controls.size()) {
                cx.fail(ptr + "/values", "control/value count mismatch");
            }
        }
        for (std::size_t i = 0; i < controls.size(); ++i) {
            g = g.with_control(controls[i], values[i]);
        }
    }
    const double defect = linalg::unitarity_defect(g.matrix);
    if (!(defect <= linalg::default_tolerances().unitarity)) {
        std::ostringstream os;
        os << "gate " << name << " not unitary (‖U†U−I‖ = " << defect << ")";
        cx.fail(ptr + "/gate", os.str());
    }
    return g;
}

Circuit parse_circuit(const Context& cx, const json& j, const std::string& ptr) {
    if (!j.is_array()) {
        cx.fail(ptr, "expected a list of gates");
    }
    Circuit c;
    for (std::size_t i = 0; i < j.size(); ++i) {
        c.add(parse_gate(cx, j[i], ptr + "/" + std::to_string(i)));
    }
    return c;
}

int parse_prover(const Context& cx, const json& j, const std::string& ptr, int k) {
    const int p = as<int>(cx, j, ptr, "a prover number");
    if (p < 1 || p > k) {
        cx.fail(ptr, "prover number " + std::to_string(p) + " out of range 1.." + std::to_string(k));
    }
    return p - 1;
}

Role parse_role(const Context& cx, const json& j, const std::string& ptr) {
    const auto s = as<std::string>(cx, j, ptr, "a role");
    if (s == "verifier") {
        return Role::Verifier;
    }
    if (s == "message") {
        return Role::Message;
    }
    if (s == "private") {
        return Role::Private;
    }
    cx.fail(ptr, "unknown role " + s + " (verifier, message or private)");
}

const char* role_text(Role r) {
    switch (r) {
    case Role::Verifier:
        return "verifier";
    case Role::Message:
        return "message";
    case Role::Private:
        break;
    }
    return "private";
}

std::vector<Register> parse_registers(const Context& cx, const json& j, const std::string& ptr, int k) {
    if (!j.is_array()) {
        cx.fail(ptr, "expected a list of registers");
    }
    std::vector<Register> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = ptr + "/" + std::to_string(i);
        const auto& r = j[i];
        Register reg;
        reg.name = as<std::string>(cx, need(cx, r, p, "name"), p + "/name", "a register name");
        reg.qubits = as<int>(cx, need(cx, r, p, "qubits"), p + "/qubits", "a qubit count");
        reg.role = parse_role(cx, need(cx, r, p, "role"), p + "/role");
        if (r.contains("owner") && !(r.at("owner").is_string() && r.at("owner").get<std::string>() == "verifier")) {
            reg.owner = parse_prover(cx, r.at("owner"), p + "/owner", k);
        }
        reg.zero_init = r.value("zero_init", true);
        out.push_back(reg);
    }
    return out;
}

std::vector<Turn> parse_turns(const Context& cx, const json& j, const std::string& ptr, int k) {
    if (!j.is_array()) {
        cx.fail(ptr, "expected a list of turns");
    }
    std::vector<Turn> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = ptr + "/" + std::to_string(i);
        const auto& t = j[i];
        const auto owner = as<std::string>(cx, need(cx, t, p, "owner"), p + "/owner", "\"verifier\" or \"provers\"");
        if (owner == "verifier") {
            VerifierTurn v;
            if (t.contains("circuit")) {
                v.circuit = parse_circuit(cx, t.at("circuit"), p + "/circuit");
            }
            if (t.contains("coin")) {
                const auto cp = p + "/coin";
                const auto& c = t.at("coin");
                Coin coin;
                coin.reg = as<std::string>(cx, need(cx, c, cp, "register"), cp + "/register", "a register name");
                const auto& rec = need(cx, c, cp, "recipients");
                if (!rec.is_array()) {
                    cx.fail(cp + "/recipients", "expected a list of prover numbers");
                }
                for (std::size_t q = 0; q < rec.size(); ++q) {
                    coin.recipients.push_back(parse_prover(cx, rec[q], cp + "/recipients/" + std::to_string(q), k));
                }
                v.coin = coin;
            }
            out.emplace_back(std::move(v));
        } else if (owner == "provers") {
            ProverTurn pt;
            const auto& held = need(cx, t, p, "held");
            pt.held = as<std::vector<std::vector<std::string>>>(cx, held, p + "/held",
                                                                 "one list of register names per prover");
            if (static_cast<int>(pt.held.size()) != k) {
                cx.fail(p + "/held", "expected " + std::to_string(k) + " held lists, got " +
                                         std::to_string(pt.held.size()));
            }
            out.emplace_back(std::move(pt));
        } else {
            cx.fail(p + "/owner", "turn owner must be \"verifier\" or \"provers\"");
        }
    }
    return out;
}

std::vector<ProverStrategy> parse_strategies(const Context& cx, const json& j, const std::string& ptr, int k) {
    std::vector<ProverStrategy> out(static_cast<std::size_t>(k));
    if (!j.is_array()) {
        cx.fail(ptr, "expected a list of strategies");
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = ptr + "/" + std::to_string(i);
        const int prover = parse_prover(cx, need(cx, j[i], p, "prover"), p + "/prover", k);
        const auto& turns = need(cx, j[i], p, "turns");
        if (!turns.is_array()) {
            cx.fail(p + "/turns", "expected a list of turns");
        }
        auto& s = out[static_cast<std::size_t>(prover)];
        for (std::size_t t = 0; t < turns.size(); ++t) {
            const auto tp = p + "/turns/" + std::to_string(t);
            if (!turns[t].is_array()) {
                cx.fail(tp, "expected a list of circuits, one per coin history");
            }
            std::vector<Circuit> options;
            for (std::size_t h = 0; h < turns[t].size(); ++h) {
                options.push_back(parse_circuit(cx, turns[t][h], tp + "/" + std::to_string(h)));
            }
            s.turns.push_back(std::move(options));
        }
    }
    return out;
}

SharedState parse_shared(const Context& cx, const json& j, const std::string& ptr, const linalg::Layout& layout) {
    if (j.contains("amplitudes")) {
        const auto& a = j.at("amplitudes");
        const auto ap = ptr + "/amplitudes";
        if (!a.is_array() || a.size() != layout.dimension()) {
            cx.fail(ap, "expected " + std::to_string(layout.dimension()) + " amplitudes");
        }
        linalg::Vector v(static_cast<Eigen::Index>(a.size()));
        for (std::size_t i = 0; i < a.size(); ++i) {
            v[static_cast<Eigen::Index>(i)] = parse_complex(cx, a[i], ap + "/" + std::to_string(i));
        }
        const double n = v.norm();
        if (std::abs(n - 1.0) > linalg::default_tolerances().load_normalization) {
            std::ostringstream os;
            os << "shared state not normalized (norm = " << n << ")";
            cx.fail(ap, os.str());
        }
        v /= n;
        return SharedState(layout, v);
    }
    SharedState s(layout);
    if (j.contains("circuit")) {
        const auto c = parse_circuit(cx, j.at("circuit"), ptr + "/circuit");
        for (const auto& r : c.registers()) {
            if (!layout.contains(r)) {
                cx.fail(ptr + "/circuit", "shared-state circuit acts on " + r + ", which is not a shared register");
            }
        }
        protocol::apply(s, c);
    }
    return s;
}

/// Anchor for a validation violation.
std::string anchor(const std::string& msg, const VerifierSpec& spec) {
    auto number_after = [&](const std::string& word) -> int {
        const auto at = msg.find(word);
        if (at == std::string::npos) {
            return -1;
        }
        try {
            return std::stoi(msg.substr(at + word.size()));
        } catch (const std::exception&) {
            return -1;
        }
    };
    if (const int p = number_after("prover "); p > 0 && msg.find("turn") == std::string::npos) {
        return "/honest/strategies/" + std::to_string(p - 1);
    }
    if (const int t = number_after("turn "); t > 0) {
        return "/turns/" + std::to_string(t - 1);
    }
    if (msg.find("final") != std::string::npos) {
        return "/final";
    }
    if (msg.find("output") != std::string::npos) {
        return "/output";
    }
    if (msg.find("shared") != std::string::npos) {
        return "/honest/shared_state";
    }
    for (std::size_t i = 0; i < spec.registers.size(); ++i) {
        if (msg.find(" " + spec.registers[i].name + " ") != std::string::npos ||
            msg.ends_with(" " + spec.registers[i].name)) {
            return "/registers/" + std::to_string(i);
        }
    }
    return "/registers";
}

} // namespace

ojson to_json(const Circuit& c) {
    ojson out = ojson::array();
    for (const auto& g : c.gates()) {
        ojson j;
        j["gate"] = g.name;
        ojson t = ojson::array();
        for (const auto& q : g.targets) {
            t.push_back(qubit_text(q));
        }
        j["targets"] = t;
        if (g.name == "U") {
            ojson m = ojson::array();
            for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
                ojson row = ojson::array();
                for (Eigen::Index col = 0; col < g.matrix.cols(); ++col) {
                    row.push_back(complex_json(g.matrix(r, col)));
                }
                m.push_back(row);
            }
            j["matrix"] = m;
        }
        if (!g.controls.empty()) {
            ojson cs = ojson::array();
            for (const auto& q : g.controls) {
                cs.push_back(qubit_text(q));
            }
            j["controls"] = cs;
            j["values"] = g.control_values;
        }
        out.push_back(j);
    }
    return out;
}

ojson to_json(const ProverStrategy& s, int prover) {
    ojson turns = ojson::array();
    for (const auto& options : s.turns) {
        ojson o = ojson::array();
        for (const auto& c : options) {
            o.push_back(to_json(c));
        }
        turns.push_back(o);
    }
    ojson out;
    out["prover"] = prover + 1;
    out["turns"] = turns;
    return out;
}

namespace {

ojson shared_json(const SharedState& s) {
    ojson a = ojson::array();
    for (Index i = 0; i < s.size(); ++i) {
        a.push_back(complex_json(s[i]));
    }
    ojson out;
    out["amplitudes"] = a;
    return out;
}

ojson registers_json(const std::vector<Register>& regs) {
    ojson out = ojson::array();
    for (const auto& r : regs) {
        ojson j;
        j["name"] = r.name;
        j["qubits"] = r.qubits;
        j["role"] = role_text(r.role);
        if (r.owner == kVerifier) {
            j["owner"] = "verifier";
        } else {
            j["owner"] = r.owner + 1;
        }
        j["zero_init"] = r.zero_init;
        out.push_back(j);
    }
    return out;
}

} // namespace

ojson strategy_json(const std::vector<ProverStrategy>& provers, const SharedState& shared) {
    ojson strategies = ojson::array();
    for (std::size_t i = 0; i < provers.size(); ++i) {
        strategies.push_back(to_json(provers[i], static_cast<int>(i)));
    }
    ojson out;
    out["strategies"] = strategies;
    out["shared_state"] = shared_json(shared);
    return out;
}

ojson to_json(const ProtocolFile& f) {
    const auto& spec = f.instance.verifier;
    ojson out;
    out["format"] = kFormatVersion;
    out["provers"] = spec.k;
    out["registers"] = registers_json(spec.registers);
    ojson turns = ojson::array();
    for (const auto& t : spec.turns) {
        ojson j;
        if (const auto* v = std::get_if<VerifierTurn>(&t)) {
            j["owner"] = "verifier";
            j["circuit"] = to_json(v->circuit);
            if (v->coin) {
                ojson c;
                c["register"] = v->coin->reg;
                ojson rec = ojson::array();
                for (int r : v->coin->recipients) {
                    rec.push_back(r + 1);
                }
                c["recipients"] = rec;
                j["coin"] = c;
            }
        } else {
            j["owner"] = "provers";
            j["held"] = std::get<ProverTurn>(t).held;
        }
        turns.push_back(j);
    }
    out["turns"] = turns;
    out["final"] = to_json(spec.final_circuit);
    out["output"] = {{"register", spec.output.reg}, {"index", spec.output.index}};
    out["honest"] = strategy_json(f.instance.provers, f.instance.shared);
    ojson meta = ojson::object();
    if (f.metadata.claimed_c) {
        meta["claimed_c"] = *f.metadata.claimed_c;
    }
    if (f.metadata.claimed_s) {
        meta["claimed_s"] = *f.metadata.claimed_s;
    }
    if (!f.metadata.instance.empty()) {
        meta["instance"] = f.metadata.instance;
    }
    if (!f.metadata.description.empty()) {
        meta["description"] = f.metadata.description;
    }
    out["metadata"] = meta;
    return out;
}

ProtocolFile from_json_text(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ValidationError(source + ":" + std::to_string(line) + ": parse error: " + e.what());
    }
    const Context cx{source, SourceMap(text)};
    if (!j.is_object()) {
        cx.fail("", "expected a JSON object");
    }
    const auto version = as<std::string>(cx, need(cx, j, "", "format"), "/format", "a format tag");
    if (version != kFormatVersion) {
        cx.fail("/format", "unsupported format " + version + " (expected " + kFormatVersion + ")");
    }
    ProtocolFile f;
    auto& spec = f.instance.verifier;
    spec.k = as<int>(cx, need(cx, j, "", "provers"), "/provers", "a prover count");
    if (spec.k < 1) {
        cx.fail("/provers", "prover count must be at least 1");
    }
    spec.registers = parse_registers(cx, need(cx, j, "", "registers"), "/registers", spec.k);
    spec.turns = parse_turns(cx, need(cx, j, "", "turns"), "/turns", spec.k);
    spec.final_circuit = parse_circuit(cx, need(cx, j, "", "final"), "/final");
    const auto& out = need(cx, j, "", "output");
    spec.output.reg = as<std::string>(cx, need(cx, out, "/output", "register"), "/output/register", "a register");
    spec.output.index = as<int>(cx, need(cx, out, "/output", "index"), "/output/index", "a qubit index");

    if (const auto v = validate(spec); !v.empty()) {
        std::string msg;
        for (const auto& e : v) {
            msg += (msg.empty() ? "" : "\n") + source + ":" + std::to_string(cx.map.line(anchor(e, spec))) + ": " + e;
        }
        throw ValidationError(msg);
    }

    f.instance.provers.assign(static_cast<std::size_t>(spec.k), ProverStrategy{});
    f.instance.shared = SharedState(spec.shared_layout());
    if (j.contains("honest")) {
        const auto& h = j.at("honest");
        if (h.contains("strategies")) {
            f.instance.provers = parse_strategies(cx, h.at("strategies"), "/honest/strategies", spec.k);
        }
        if (h.contains("shared_state")) {
            f.instance.shared = parse_shared(cx, h.at("shared_state"), "/honest/shared_state", spec.shared_layout());
        }
    }
    if (const auto v = validate(f.instance); !v.empty()) {
        std::string msg;
        for (const auto& e : v) {
            msg += (msg.empty() ? "" : "\n") + source + ":" + std::to_string(cx.map.line(anchor(e, spec))) + ": " + e;
        }
        throw ValidationError(msg);
    }
    if (j.contains("metadata")) {
        const auto& m = j.at("metadata");
        if (m.contains("claimed_c")) {
            f.metadata.claimed_c = as<double>(cx, m.at("claimed_c"), "/metadata/claimed_c", "a number");
        }
        if (m.contains("claimed_s")) {
            f.metadata.claimed_s = as<double>(cx, m.at("claimed_s"), "/metadata/claimed_s", "a number");
        }
        f.metadata.instance = m.value("instance", "");
        f.metadata.description = m.value("description", "");
    }
    return f;
}

ProtocolFile load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string() + ": cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path.string());
}

std::string dump(const ProtocolFile& f) { return to_json(f).dump(2) + "\n"; }

void save(const ProtocolFile& f, const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError(path.string() + ": cannot write file");
    }
    out << dump(f);
}

ProtocolFile with_strategy(const ProtocolFile& base, const std::filesystem::path& strategy_path) {
    std::ifstream in(strategy_path, std::ios::binary);
    if (!in) {
        throw ValidationError(strategy_path.string() + ": cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    // Reuse the protocol loader: splice the strategy block into the base file.
    auto j = json::parse(to_json(base).dump());
    json s;
    try {
        s = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(strategy_path.string() + ": parse error: " + e.what());
    }
    if (s.contains("registers")) {
        j["registers"] = s.at("registers");
    }
    j["honest"] = json::object();
    if (s.contains("strategies")) {
        j["honest"]["strategies"] = s.at("strategies");
    }
    if (s.contains("shared_state")) {
        j["honest"]["shared_state"] = s.at("shared_state");
    }
    return from_json_text(j.dump(2), strategy_path.string());
}

} // namespace qmip::io

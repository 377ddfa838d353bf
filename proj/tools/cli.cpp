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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmip/adversary/adversary.hpp"
#include "qmip/errors.hpp"
#include "qmip/io/fixtures.hpp"
#include "qmip/io/format.hpp"
#include "qmip/io/record.hpp"
#include "qmip/protocol/simulator.hpp"
#include "qmip/transforms/transforms.hpp"

namespace qmip::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr double kHonestTol = 1e-9;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Env {
    std::ostream& out;
    std::ostream& err;
    std::string command;
    fs::path out_dir;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

fs::path default_out_dir() {
    if (const char* d = std::getenv("QMIP_OUT_DIR"); d && *d) {
        return d;
    }
    return "out";
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream o(path, std::ios::binary);
    if (!o) {
        throw ValidationError(path.string() + ": cannot write file");
    }
    o << text;
}

void emit(Env& env, io::RunRecord r) {
    r.command = env.command;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - env.start).count();
    fs::create_directories(env.out_dir);
    std::ofstream o(env.out_dir / "records.jsonl", std::ios::binary | std::ios::app);
    if (!o) {
        throw ValidationError((env.out_dir / "records.jsonl").string() + ": cannot write file");
    }
    o << io::to_line(r);
}

std::optional<double> claimed(const transforms::TransformReport& r, const std::string& name) {
    if (const auto* c = r.claim(name)) {
        return c->value;
    }
    return std::nullopt;
}

void print_report(std::ostream& out, const transforms::TransformReport& r) {
    out << "pass " << r.pass << ": (k, m) = (" << r.k_in << ", " << r.m_in << ") -> (" << r.k_out << ", " << r.m_out
        << "), qubits " << r.qubits_in << " -> " << r.qubits_out << "\n";
    if (r.c_in) {
        out << "c_in  = " << fmt("%.12f", *r.c_in) << "\n";
    }
    if (r.c_out) {
        out << "c_out = " << fmt("%.12f", *r.c_out) << "\n";
    }
    for (const auto& c : r.claims) {
        out << c.name << " = " << c.formula << " = " << fmt("%.12f", c.value) << "\n";
    }
    for (const auto& [k, v] : r.values) {
        out << k << " = " << fmt("%.12g", v) << "\n";
    }
    for (const auto& n : r.notes) {
        out << "note: " << n << "\n";
    }
}

/// Honest value at least the claimed completeness.
void verify_honest(const transforms::TransformReport& r) {
    const auto c = claimed(r, "c'");
    if (c && r.c_out && *r.c_out < *c - kHonestTol) {
        throw NumericalError(r.pass + ": honest value " + fmt("%.12f", *r.c_out) + " is below the claimed c' " +
                             fmt("%.12f", *c));
    }
}

adversary::SeesawConfig seesaw_config(int restarts, std::uint64_t seed, const std::vector<int>& dims, int sweeps) {
    adversary::SeesawConfig c;
    c.restarts = restarts;
    c.seed = seed;
    c.prover_dims = dims;
    c.max_sweeps = sweeps;
    return c;
}

std::string strategy_text(const adversary::AdversaryResult& r) {
    const auto j = io::to_json(io::ProtocolFile{{r.verifier, r.strategies, r.shared}, {}});
    ordered_json s;
    s["format"] = j.at("format");
    s["registers"] = j.at("registers");
    s["strategies"] = j.at("honest").at("strategies");
    s["shared_state"] = j.at("honest").at("shared_state");
    return s.dump(2) + "\n";
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
    std::string file;
    std::string strategy;
    bool optimal_shared = false;
    bool snapshots = false;
};

int cmd_simulate(Env& env, const SimulateArgs& a) {
    auto f = io::load(a.file);
    if (!a.strategy.empty()) {
        f = io::with_strategy(f, a.strategy);
    }
    io::RunRecord rec;
    rec.input_digest = io::file_digest(a.file);
    if (a.optimal_shared) {
        const auto opt = adversary::optimal_shared_state(f.instance.verifier, f.instance.provers);
        f.instance.shared = opt.state;
        rec.extra["optimal_shared"] = true;
    }
    const auto sim = protocol::simulate(f.instance, {.snapshots = a.snapshots});
    env.out << "p_acc = " << fmt("%.12f", sim.p_acc) << "\n";
    if (sim.branch_p.size() > 1) {
        for (std::size_t b = 0; b < sim.branch_p.size(); ++b) {
            env.out << "  coins " << b << ": " << fmt("%.12f", sim.branch_p[b]) << "\n";
        }
    }
    rec.p_acc = sim.p_acc;
    if (a.snapshots) {
        ordered_json snaps = ordered_json::array();
        for (const auto& s : sim.snapshots) {
            ordered_json amps = ordered_json::array();
            for (Eigen::Index i = 0; i < s.state.amplitudes().size(); ++i) {
                amps.push_back({s.state.amplitudes()[i].real(), s.state.amplitudes()[i].imag()});
            }
            snaps.push_back({{"branch", s.branch}, {"step", s.step}, {"label", s.label}, {"amplitudes", amps}});
        }
        const auto path = env.out_dir / (fs::path(a.file).stem().string() + ".snapshots.json");
        write_text(path, snaps.dump(1) + "\n");
        env.out << "snapshots: " << sim.snapshots.size() << " written to " << path.string() << "\n";
        rec.extra["snapshots"] = path.string();
    }
    emit(env, rec);
    return 0;
}

// transform -----------------------------------------------------------------

struct TransformArgs {
    std::string file;
    std::string pass;
    int repetitions = 2;
    std::optional<double> p_max;
    bool no_verify = false;
    bool verifier_only = false;
};

int cmd_transform(Env& env, const TransformArgs& a) {
    const auto f = io::load(a.file);
    transforms::PassOptions opts;
    opts.repetitions = a.repetitions;
    opts.p_max = a.p_max;
    io::RunRecord rec;
    rec.input_digest = io::file_digest(a.file);
    const auto stem = fs::path(a.file).stem().string() + "." + a.pass;
    io::ProtocolFile result;
    transforms::TransformReport report;
    if (a.verifier_only) {
        auto r = transforms::apply_pass(a.pass, f.instance.verifier, {f.metadata.claimed_c, f.metadata.claimed_s},
                                        opts);
        result.instance = {r.verifier, std::vector<protocol::ProverStrategy>(static_cast<std::size_t>(r.verifier.k)),
                           protocol::SharedState(r.verifier.shared_layout())};
        report = std::move(r.report);
    } else {
        const double c = protocol::acceptance_probability(f.instance);
        auto r = transforms::apply_pass(a.pass, f.instance, {c, f.metadata.claimed_s}, opts);
        result.instance = std::move(r.instance);
        report = std::move(r.report);
        if (!a.no_verify) {
            verify_honest(report);
            if (a.pass == "rewindable") {
                const double opt =
                    adversary::optimal_shared_state(result.instance.verifier, result.instance.provers).p_max;
                report.values["optimal_shared"] = opt;
                if (std::abs(opt - 0.5) > kHonestTol) {
                    throw NumericalError("rewindable: best honest value " + fmt("%.12f", opt) + " is not 1/2");
                }
            }
        }
        rec.p_acc = report.c_out;
    }
    result.metadata = io::fixtures::derived_metadata(f.metadata, a.pass, claimed(report, "c'"), claimed(report, "s'"));
    const auto path = env.out_dir / (stem + ".json");
    const auto report_path = env.out_dir / (stem + ".report.json");
    io::save(result, path);
    write_text(report_path, io::to_json(report).dump(2) + "\n");
    print_report(env.out, report);
    env.out << "wrote " << path.string() << "\n";
    rec.report = io::to_json(report);
    rec.extra["output"] = path.string();
    rec.extra["verified"] = !a.no_verify && !a.verifier_only;
    emit(env, rec);
    return 0;
}

// audit ---------------------------------------------------------------------

struct AuditArgs {
    std::string file;
    int restarts = 10;
    std::uint64_t seed = 1;
    std::vector<int> dims;
    double tol = 1e-6;
    int sweeps = 200;
    std::optional<double> bound;
    std::optional<double> brute;
};

int cmd_audit(Env& env, const AuditArgs& a) {
    const auto f = io::load(a.file);
    const auto r = adversary::seesaw(f.instance.verifier, seesaw_config(a.restarts, a.seed, a.dims, a.sweeps));
    io::RunRecord rec;
    rec.input_digest = io::file_digest(a.file);
    rec.seed = a.seed;
    rec.adversary = io::to_json(r);
    env.out << "value = " << fmt("%.12f", r.value) << "\n";
    env.out << "restarts = " << r.restart_values.size() << ", best restart = " << r.best_restart
            << ", sweeps = " << r.trace.size() << (r.converged ? " (converged)" : " (sweep limit)") << "\n";
    if (!r.trace.empty()) {
        env.out << "trace: " << fmt("%.12f", r.trace.front()) << " -> " << fmt("%.12f", r.trace.back()) << "\n";
    }
    if (a.brute) {
        const double b = adversary::brute_force_value(f.instance.verifier, *a.brute);
        env.out << "brute force = " << fmt("%.12f", b) << "\n";
        rec.extra["brute_force"] = b;
    }
    const auto bound = a.bound ? a.bound : f.metadata.claimed_s;
    if (bound) {
        const bool ok = r.value <= *bound + a.tol;
        env.out << "claimed s = " << fmt("%.12f", *bound) << ": " << (ok ? "CONSISTENT" : "EXCEEDS") << "\n";
        rec.extra["claimed_s"] = *bound;
        rec.extra["verdict"] = ok ? "CONSISTENT" : "EXCEEDS";
    } else {
        env.out << "no claimed soundness to compare against\n";
    }
    const auto path = env.out_dir / (fs::path(a.file).stem().string() + "_opt.json");
    write_text(path, strategy_text(r));
    env.out << "strategy written to " << path.string() << "\n";
    rec.extra["strategy"] = path.string();
    emit(env, rec);
    return 0;
}

// pipeline ------------------------------------------------------------------

struct PipelineArgs {
    std::string file;
    bool verifier_only = false;
    bool no_verify = false;
    bool audit = false;
    std::optional<double> s;
    int restarts = 2;
    std::uint64_t seed = 1;
    std::vector<int> dims;
    int sweeps = 30;
};

const std::vector<std::string>& chain() {
    static const std::vector<std::string> passes{"rewindable", "rewind", "three-turn", "public-coin", "one-round"};
    return passes;
}

template <typename F>
auto at_stage(const std::string& stage, F&& f) -> decltype(f()) {
    const auto prefix = "stage " + stage + ": ";
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + e.what());
    } catch (const PreconditionError& e) {
        throw PreconditionError(prefix + e.what());
    } catch (const BudgetError& e) {
        throw BudgetError(prefix + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(prefix + e.what());
    }
}

int cmd_pipeline(Env& env, const PipelineArgs& a) {
    const auto f = io::load(a.file);
    io::RunRecord rec;
    rec.input_digest = io::file_digest(a.file);
    const bool spec_only = a.verifier_only || f.metadata.instance == "no";
    const auto s = a.s ? a.s : f.metadata.claimed_s;
    if (!s) {
        throw ValidationError("pipeline needs a soundness bound: metadata claimed_s or --s");
    }
    std::optional<double> c = f.metadata.claimed_c;
    if (!spec_only) {
        c = protocol::acceptance_probability(f.instance);
    }
    const double gap_c = f.metadata.claimed_c ? *f.metadata.claimed_c : c.value_or(0.0);
    if (!(gap_c > *s)) {
        throw PreconditionError("stage rewindable: gap violation: c = " + fmt("%.6g", gap_c) +
                                " is not above s = " + fmt("%.6g", *s));
    }
    transforms::Bounds bounds{c, s};
    const auto dir = env.out_dir / (fs::path(a.file).stem().string() + ".pipeline");
    auto cur = f.instance;
    auto spec = f.instance.verifier;
    auto meta = f.metadata;
    ordered_json stages = ordered_json::array();
    int index = 1;
    for (const auto& pass : chain()) {
        transforms::TransformReport report;
        io::ProtocolFile file;
        at_stage(pass, [&] {
            if (spec_only) {
                auto r = transforms::apply_pass(pass, spec, bounds);
                spec = r.verifier;
                report = std::move(r.report);
                file.instance = {spec, std::vector<protocol::ProverStrategy>(static_cast<std::size_t>(spec.k)),
                                 protocol::SharedState(spec.shared_layout())};
            } else {
                auto r = transforms::apply_pass(pass, cur, bounds);
                cur = std::move(r.instance);
                spec = cur.verifier;
                report = std::move(r.report);
                if (!a.no_verify) {
                    verify_honest(report);
                }
                file.instance = cur;
            }
            return 0;
        });
        bounds = {claimed(report, "c'"), claimed(report, "s'")};
        meta = io::fixtures::derived_metadata(meta, pass, bounds.c, bounds.s);
        file.metadata = meta;
        const auto stem = std::to_string(index) + "-" + pass;
        io::save(file, dir / (stem + ".json"));
        write_text(dir / (stem + ".report.json"), io::to_json(report).dump(2) + "\n");
        env.out << "stage " << index << " " << pass << ": (k, m) = (" << report.k_out << ", " << report.m_out
                << "), qubits " << report.qubits_out;
        if (report.c_out) {
            env.out << ", honest " << fmt("%.12f", *report.c_out);
        }
        if (bounds.s) {
            env.out << ", s' = " << fmt("%.12f", *bounds.s);
        }
        env.out << "\n";
        for (const auto& n : report.notes) {
            env.out << "  note: " << n << "\n";
        }
        stages.push_back(io::to_json(report));
        ++index;
    }
    const double s_final = bounds.s.value_or(1.0);
    const double p = s_final < 1.0 ? 1.0 / (1.0 - s_final) : std::numeric_limits<double>::infinity();
    env.out << "p' = " << fmt("%.6f", p) << " (soundness 1 - 1/p' = " << fmt("%.12f", s_final) << ")\n";
    env.out << "final: k' = " << spec.k << ", m' = " << spec.m() << "\n";
    rec.extra["stages"] = stages;
    rec.extra["p_prime"] = p;
    rec.extra["final"] = {{"k", spec.k}, {"m", spec.m()}};
    if (!spec_only) {
        const double v = protocol::acceptance_probability(cur);
        env.out << "p_acc = " << fmt("%.12f", v) << "\n";
        rec.p_acc = v;
        if (!a.no_verify && std::abs(v - 1.0) > kHonestTol) {
            throw NumericalError("pipeline: final honest value " + fmt("%.12f", v) + " is not 1");
        }
    }
    if (a.audit) {
        const auto r = adversary::seesaw(spec, seesaw_config(a.restarts, a.seed, a.dims, a.sweeps));
        const bool ok = r.value <= s_final + 0.01;
        env.out << "audit value = " << fmt("%.12f", r.value) << ", bound 1 - 1/p' = " << fmt("%.12f", s_final)
                << ": " << (ok ? "CONSISTENT" : "EXCEEDS") << "\n";
        rec.seed = a.seed;
        rec.adversary = io::to_json(r);
        rec.extra["verdict"] = ok ? "CONSISTENT" : "EXCEEDS";
    }
    emit(env, rec);
    return 0;
}

// fixtures ------------------------------------------------------------------

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string() + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_fixtures_generate(Env& env, const fs::path& dir) {
    ordered_json manifest = ordered_json::array();
    for (const auto& [e, f] : io::fixtures::full_suite()) {
        const auto text = io::dump(f);
        write_text(dir / e.file, text);
        ordered_json m{{"name", e.name},   {"file", e.file},         {"provenance", e.provenance},
                       {"honest", e.honest}, {"sha256", io::sha256_hex(text)}};
        if (e.optimum >= 0.0) {
            m["optimum"] = e.optimum;
        }
        if (!e.note.empty()) {
            m["note"] = e.note;
        }
        manifest.push_back(m);
        env.out << "wrote " << (dir / e.file).string() << "\n";
    }
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    env.out << "wrote " << (dir / "manifest.json").string() << "\n";
    io::RunRecord rec;
    rec.input_digest = io::sha256_hex(manifest.dump());
    rec.extra["fixtures"] = manifest.size();
    emit(env, rec);
    return 0;
}

int cmd_fixtures_verify(Env& env, const fs::path& dir) {
    const auto manifest_text = read_text(dir / "manifest.json");
    const auto manifest = nlohmann::json::parse(manifest_text);
    std::map<std::string, std::string> expected;
    for (const auto& [e, f] : io::fixtures::full_suite()) {
        expected[e.file] = io::dump(f);
    }
    int failures = 0;
    for (const auto& m : manifest) {
        const std::string file = m.at("file");
        const auto text = read_text(dir / file);
        std::vector<std::string> problems;
        if (io::sha256_hex(text) != m.at("sha256").get<std::string>()) {
            problems.push_back("digest differs from the manifest");
        }
        if (auto it = expected.find(file); it == expected.end()) {
            problems.push_back("not produced by the generator");
        } else if (it->second != text) {
            problems.push_back("differs from the regenerated file");
        }
        const auto f = io::from_json_text(text, (dir / file).string());
        const double honest = protocol::acceptance_probability(f.instance);
        if (std::abs(honest - m.at("honest").get<double>()) > kHonestTol) {
            problems.push_back("honest value " + fmt("%.12f", honest) + " differs from the manifest");
        }
        env.out << file << ": " << (problems.empty() ? "ok" : "FAILED") << "\n";
        for (const auto& p : problems) {
            env.out << "  " << p << "\n";
        }
        failures += problems.empty() ? 0 : 1;
    }
    io::RunRecord rec;
    rec.input_digest = io::sha256_hex(manifest_text);
    rec.extra["fixtures"] = manifest.size();
    rec.extra["failures"] = failures;
    emit(env, rec);
    if (failures > 0) {
        throw NumericalError(std::to_string(failures) + " fixture(s) failed verification");
    }
    env.out << "verified " << manifest.size() << " fixtures\n";
    return 0;
}

std::string join(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        s += (s.empty() ? "" : " ") + a;
    }
    return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulate, transform and audit multi-prover quantum interactive proofs", "qmip"};
    app.require_subcommand(1);
    std::string out_dir = default_out_dir().string();
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "Output directory (default: $QMIP_OUT_DIR or ./out)");
    };

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Honest acceptance probability");
    s->add_option("file", sim.file, "Protocol file")->required();
    s->add_option("--strategy", sim.strategy, "Strategy file replacing the bundled provers");
    s->add_flag("--optimal-shared", sim.optimal_shared, "Use the best shared state for the provers' circuits");
    s->add_flag("--snapshots", sim.snapshots, "Write the state after every step");
    add_out(s);

    TransformArgs tr;
    auto* t = app.add_subcommand("transform", "Apply one transformation pass");
    t->add_option("file", tr.file, "Protocol file")->required();
    t->add_option("--pass", tr.pass, "Pass name")->required()->check(CLI::IsMember(transforms::pass_names()));
    t->add_option("--n", tr.repetitions, "Repetitions for seq-rep and par-rep");
    t->add_option("--p-max", tr.p_max, "Best honest value for the rewindable pass");
    t->add_flag("--no-verify", tr.no_verify, "Skip the honest-value check");
    t->add_flag("--verifier-only", tr.verifier_only, "Transform the verifier only");
    add_out(t);

    AuditArgs au;
    auto* a = app.add_subcommand("audit", "See-saw search for a cheating strategy");
    a->add_option("file", au.file, "Protocol file")->required();
    a->add_option("--restarts", au.restarts, "Random restarts");
    a->add_option("--seed", au.seed, "Seed");
    a->add_option("--dims", au.dims, "Private qubits per prover, comma separated")->delimiter(',');
    a->add_option("--tol", au.tol, "Slack when comparing with the claimed soundness");
    a->add_option("--sweeps", au.sweeps, "Sweep limit per restart");
    a->add_option("--bound", au.bound, "Soundness bound overriding the file's claim");
    a->add_option("--brute", au.brute, "Also run the grid search at this resolution");
    add_out(a);

    PipelineArgs pl;
    auto* p = app.add_subcommand("pipeline", "Rewindable, rewind, three-turn, public-coin, one-round");
    p->add_option("file", pl.file, "Protocol file")->required();
    p->add_flag("--verifier-only", pl.verifier_only, "Transform the verifier only (implied for no-instances)");
    p->add_flag("--no-verify", pl.no_verify, "Skip the honest-value checks");
    p->add_flag("--audit", pl.audit, "Audit the final verifier with the see-saw");
    p->add_option("--s", pl.s, "Soundness of the input overriding the file's claim");
    p->add_option("--restarts", pl.restarts, "Audit restarts");
    p->add_option("--seed", pl.seed, "Audit seed");
    p->add_option("--dims", pl.dims, "Audit private qubits per prover")->delimiter(',');
    p->add_option("--sweeps", pl.sweeps, "Audit sweep limit per restart");
    add_out(p);

    std::string fixture_dir = "fixtures";
    auto* fx = app.add_subcommand("fixtures", "Bundled fixture files");
    fx->require_subcommand(1);
    auto* gen = fx->add_subcommand("generate", "Write the fixture files and manifest");
    gen->add_option("--dir", fixture_dir, "Fixture directory");
    add_out(gen);
    auto* ver = fx->add_subcommand("verify", "Check fixture files against the manifest and generator");
    ver->add_option("--dir", fixture_dir, "Fixture directory");
    add_out(ver);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Env env{out, err, join(args), out_dir};
    try {
        if (s->parsed()) {
            return cmd_simulate(env, sim);
        }
        if (t->parsed()) {
            return cmd_transform(env, tr);
        }
        if (a->parsed()) {
            return cmd_audit(env, au);
        }
        if (p->parsed()) {
            return cmd_pipeline(env, pl);
        }
        if (gen->parsed()) {
            return cmd_fixtures_generate(env, fixture_dir);
        }
        if (ver->parsed()) {
            return cmd_fixtures_verify(env, fixture_dir);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        err << "numerical check failed: " << e.what() << "\n";
        return 5;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 5;
    }
    return 2;
}

} // namespace qmip::cli

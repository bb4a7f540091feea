// mdpc: command-line front end for the MDPC code library.
//
// Verbs: construct, analyze, decode, bound, sim, replay. Every run writes a
// manifest JSON that echoes all resolved parameters (defaults included) and
// the fully resolved argument vector; `mdpc replay --manifest <file>`
// re-executes that vector, reproducing the original outputs byte-for-byte
// (wall-clock fields excluded). Exit codes: 0 success, 1 domain error with a
// structured JSON object on stderr, 2 usage error.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdpc/bounds.hpp"
#include "mdpc/construct.hpp"
#include "mdpc/decode.hpp"
#include "mdpc/errors.hpp"
#include "mdpc/intersect.hpp"
#include "mdpc/io.hpp"
#include "mdpc/krawtchouk.hpp"
#include "mdpc/logprob.hpp"
#include "mdpc/rng.hpp"
#include "mdpc/sim.hpp"
#include "mdpc/version.hpp"

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Accumulates the resolved parameters of one run. `arg` records a flag both
// in the human-readable echo and in the replayable argument vector, so the
// two views can never drift apart.
class Manifest {
  public:
    explicit Manifest(std::vector<std::string> command) : command_(std::move(command)) {
        argv_ = command_;
    }

    void arg(const std::string& flag, const std::string& value) {
        resolved_[key(flag)] = value;
        argv_.push_back(flag);
        argv_.push_back(value);
    }
    void arg(const std::string& flag, std::uint64_t value) {
        resolved_[key(flag)] = value;
        argv_.push_back(flag);
        argv_.push_back(std::to_string(value));
    }
    void arg(const std::string& flag, std::uint32_t value) { arg(flag, std::uint64_t{value}); }
    void arg(const std::string& flag, unsigned long long value) { arg(flag, std::uint64_t{value}); }
    void arg(const std::string& flag, double value) {
        resolved_[key(flag)] = value;
        argv_.push_back(flag);
        argv_.push_back(fmt_double(value));
    }
    void arg(const std::string& flag, const std::vector<std::uint32_t>& values) {
        resolved_[key(flag)] = values;
        argv_.push_back(flag);
        std::string joined;
        for (auto v : values) {
            if (!joined.empty()) joined += ',';
            joined += std::to_string(v);
        }
        argv_.push_back(joined);
    }
    // Boolean switch: echoed always, emitted into argv only when set.
    void flag(const std::string& name, bool value) {
        resolved_[key(name)] = value;
        if (value) argv_.push_back(name);
    }

    ojson json() const {
        ojson m;
        m["schema_version"] = mdpc::kSchemaVersion;
        m["tool_version"] = mdpc::kVersion;
        m["command"] = command_;
        m["resolved"] = resolved_;
        m["argv"] = argv_;
        return m;
    }

    // Default manifest path: next to --out when present, otherwise named
    // after the verb in the working directory.
    std::string default_path(const std::optional<std::string>& out) const {
        if (out && !out->empty()) return *out + ".manifest.json";
        std::string stem;
        for (const auto& c : command_) {
            if (!stem.empty()) stem += '-';
            stem += c;
        }
        return stem + ".manifest.json";
    }

  private:
    static std::string key(const std::string& flag) {
        std::string k = flag;
        while (!k.empty() && k.front() == '-') k.erase(k.begin());
        std::replace(k.begin(), k.end(), '-', '_');
        return k;
    }

    std::vector<std::string> command_;
    ojson resolved_ = ojson::object();
    std::vector<std::string> argv_;
};

void write_json_file(const ojson& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw mdpc::IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw mdpc::IoError("write failed: " + path);
}

void write_text_file(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw mdpc::IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw mdpc::IoError("write failed: " + path);
}

// Emits the primary JSON artifact: to a file when --out was given (with a
// one-line confirmation on stdout), to stdout otherwise.
void emit_json(const ojson& j, const std::optional<std::string>& out) {
    if (out && !out->empty()) {
        write_json_file(j, *out);
        std::printf("wrote %s\n", out->c_str());
    } else {
        std::printf("%s\n", j.dump(2).c_str());
    }
}

void emit_text(const std::string& text, const std::optional<std::string>& out) {
    if (out && !out->empty()) {
        write_text_file(text, *out);
        std::printf("wrote %s\n", out->c_str());
    } else {
        std::fputs(text.c_str(), stdout);
    }
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const mdpc::ValidationError*>(&e)) return "validation";
    if (dynamic_cast<const mdpc::EnumerationBudgetExceeded*>(&e)) return "enumeration_budget";
    if (dynamic_cast<const mdpc::BudgetExhausted*>(&e)) return "budget_exhausted";
    if (dynamic_cast<const mdpc::RegimeViolation*>(&e)) return "regime_violation";
    if (dynamic_cast<const mdpc::IoError*>(&e)) return "io";
    if (dynamic_cast<const mdpc::Error*>(&e)) return "error";
    return "internal";
}

std::string cert_sidecar_path(const std::string& out) {
    const std::string suffix = ".json";
    if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out.substr(0, out.size() - suffix.size()) + ".cert.json";
    return out + ".cert.json";
}

ojson certificate_json(const mdpc::Certificate& cert) {
    ojson j;
    j["schema_version"] = mdpc::kSchemaVersion;
    j["s"] = cert.s;
    j["radius"] = cert.radius;
    j["attempts"] = cert.attempts;
    j["seed"] = cert.seed;
    j["target_s"] = cert.target_s;
    j["degenerate_no_intersection"] = cert.degenerate_no_intersection;
    return j;
}

ojson word_json(const mdpc::BinaryWord& w) {
    ojson j;
    j["length"] = w.length();
    j["support"] = w.support();
    return j;
}

// CSV cell for a double: shortest exact form, with nan/inf spelled out.
std::string csv_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt_double(x);
}

int run(std::vector<std::string> args, int depth);

// ---------------------------------------------------------------------------
// construct

void add_construct(CLI::App& app) {
    auto* construct = app.add_subcommand("construct", "Sample a parity-check matrix");
    construct->require_subcommand(1);

    {
        auto* g = construct->add_subcommand("gallager", "Permutation-block construction");
        auto n = std::make_shared<std::uint32_t>(0);
        auto w = std::make_shared<std::uint32_t>(0);
        auto v = std::make_shared<std::uint32_t>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto certify = std::make_shared<bool>(false);
        auto target_s = std::make_shared<std::uint32_t>(0);
        auto max_attempts = std::make_shared<std::uint32_t>(256);
        auto out = std::make_shared<std::string>("matrix.json");
        auto cert_out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        g->add_option("--n", *n, "Code length")->required();
        g->add_option("--w", *w, "Row weight (must divide n)")->required();
        g->add_option("--v", *v, "Column weight")->required();
        g->add_option("--seed", *seed, "Master seed (all randomness flows from it)");
        g->add_flag("--certify", *certify, "Rejection-sample until max intersection <= target");
        g->add_option("--target-s", *target_s, "Intersection target; 0 = ceil(2.5 ln n / ln ln n)");
        g->add_option("--max-attempts", *max_attempts, "Rejection budget");
        g->add_option("--out", *out, "Matrix JSON path");
        g->add_option("--cert-out", *cert_out, "Certificate path (default: <out stem>.cert.json)");
        g->add_option("--manifest", *manifest_path, "Manifest path (default: <out>.manifest.json)");
        g->callback([=]() {
            const auto params = mdpc::gallager_params(*n, *w, *v, *seed);
            Manifest man({"construct", "gallager"});
            man.arg("--n", *n);
            man.arg("--w", *w);
            man.arg("--v", *v);
            man.arg("--seed", *seed);
            man.flag("--certify", *certify);
            if (*certify) {
                mdpc::ConstructionBudget budget;
                budget.max_attempts = *max_attempts;
                budget.target_s = *target_s ? *target_s : mdpc::default_target_s(*n);
                man.arg("--target-s", *target_s);
                man.arg("--max-attempts", *max_attempts);
                const auto cc = mdpc::construct_certified(params, budget);
                mdpc::write_matrix(cc.code.matrix, *out);
                const std::string cpath = cert_out->empty() ? cert_sidecar_path(*out) : *cert_out;
                write_json_file(certificate_json(cc.certificate), cpath);
                man.arg("--out", *out);
                man.arg("--cert-out", cpath);
                const std::string mpath =
                    manifest_path->empty() ? man.default_path(*out) : *manifest_path;
                man.arg("--manifest", mpath);
                write_json_file(man.json(), mpath);
                std::printf("wrote %s and %s (s=%" PRIu32 ", radius=%" PRIu32 ", attempts=%" PRIu32
                            ")\n",
                            out->c_str(), cpath.c_str(), cc.certificate.s, cc.certificate.radius,
                            cc.certificate.attempts);
            } else {
                const auto code = mdpc::sample_gallager(params);
                mdpc::write_matrix(code.matrix, *out);
                man.arg("--out", *out);
                const std::string mpath =
                    manifest_path->empty() ? man.default_path(*out) : *manifest_path;
                man.arg("--manifest", mpath);
                write_json_file(man.json(), mpath);
                std::printf("wrote %s (%" PRIu32 "x%" PRIu32 ")\n", out->c_str(),
                            code.matrix.rows(), code.matrix.cols());
            }
        });
    }

    {
        auto* q = construct->add_subcommand("qc", "Two-block quasi-cyclic construction");
        auto p = std::make_shared<std::uint32_t>(0);
        auto half_weight = std::make_shared<std::uint32_t>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto certify = std::make_shared<bool>(false);
        auto target_s = std::make_shared<std::uint32_t>(0);
        auto max_attempts = std::make_shared<std::uint32_t>(256);
        auto out = std::make_shared<std::string>("qc-key.json");
        auto cert_out = std::make_shared<std::string>();
        auto expand_out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        q->add_option("--p", *p, "Circulant block size; code length is 2p")->required();
        q->add_option("--half-weight", *half_weight, "Weight of each block (w/2)")->required();
        q->add_option("--seed", *seed, "Master seed");
        q->add_flag("--certify", *certify, "Rejection-sample until max intersection <= target");
        q->add_option("--target-s", *target_s, "Intersection target; 0 = ceil(2.5 ln n / ln ln n)");
        q->add_option("--max-attempts", *max_attempts, "Rejection budget");
        q->add_option("--out", *out, "Key JSON path");
        q->add_option("--cert-out", *cert_out, "Certificate path (default: <out stem>.cert.json)");
        q->add_option("--expand-out", *expand_out, "Also write the expanded matrix JSON here");
        q->add_option("--manifest", *manifest_path, "Manifest path (default: <out>.manifest.json)");
        q->callback([=]() {
            mdpc::QcParams params;
            params.block_size = *p;
            params.half_weight = *half_weight;
            params.seed = *seed;
            Manifest man({"construct", "qc"});
            man.arg("--p", *p);
            man.arg("--half-weight", *half_weight);
            man.arg("--seed", *seed);
            man.flag("--certify", *certify);
            mdpc::QcMdpcKey key;
            if (*certify) {
                mdpc::ConstructionBudget budget;
                budget.max_attempts = *max_attempts;
                budget.target_s = *target_s ? *target_s : mdpc::default_target_s(2 * *p);
                man.arg("--target-s", *target_s);
                man.arg("--max-attempts", *max_attempts);
                const auto cc = mdpc::construct_certified(params, budget);
                key = *cc.code.construction.key;
                mdpc::write_qc_key(key, *out);
                const std::string cpath = cert_out->empty() ? cert_sidecar_path(*out) : *cert_out;
                write_json_file(certificate_json(cc.certificate), cpath);
                man.arg("--out", *out);
                man.arg("--cert-out", cpath);
                std::printf("wrote %s and %s (s=%" PRIu32 ", radius=%" PRIu32 ", attempts=%" PRIu32
                            ")\n",
                            out->c_str(), cpath.c_str(), cc.certificate.s, cc.certificate.radius,
                            cc.certificate.attempts);
            } else {
                key = mdpc::sample_qc(params);
                mdpc::write_qc_key(key, *out);
                man.arg("--out", *out);
                std::printf("wrote %s (p=%" PRIu32 ", row weight %" PRIu32 ")\n", out->c_str(),
                            key.block_size, key.row_weight());
            }
            if (!expand_out->empty()) {
                mdpc::write_matrix(mdpc::expand_qc(key), *expand_out);
                man.arg("--expand-out", *expand_out);
                std::printf("wrote %s\n", expand_out->c_str());
            }
            const std::string mpath =
                manifest_path->empty() ? man.default_path(*out) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
        });
    }
}

// ---------------------------------------------------------------------------
// analyze

void add_analyze(CLI::App& app) {
    auto* analyze = app.add_subcommand("analyze", "Inspect a matrix or key");
    analyze->require_subcommand(1);

    auto* ix = analyze->add_subcommand("intersections", "Pairwise column intersection profile");
    auto matrix = std::make_shared<std::string>();
    auto qc = std::make_shared<std::string>();
    auto threads = std::make_shared<unsigned>(0);
    auto out = std::make_shared<std::string>();
    auto manifest_path = std::make_shared<std::string>();
    auto* src = ix->add_option_group("source")->require_option(1);
    src->add_option("--matrix", *matrix, "Matrix JSON");
    src->add_option("--qc", *qc, "QC key JSON (circulant-aware counting)");
    ix->add_option("--threads", *threads, "Worker threads; 0 = available parallelism")
        ->envname("MDPC_THREADS");
    ix->add_option("--out", *out, "Profile JSON path (default: stdout)");
    ix->add_option("--manifest", *manifest_path, "Manifest path");
    ix->callback([=]() {
        Manifest man({"analyze", "intersections"});
        mdpc::IntersectionProfile prof;
        std::uint32_t v_min = 0;
        if (!matrix->empty()) {
            const auto m = mdpc::read_matrix(*matrix);
            prof = mdpc::max_column_intersection(m, *threads);
            v_min = m.min_col_weight();
            man.arg("--matrix", *matrix);
        } else {
            const auto key = mdpc::read_qc_key(*qc);
            prof = mdpc::qc_max_intersection(key);
            v_min = key.half_weight();
            man.arg("--qc", *qc);
        }
        man.arg("--threads", std::uint64_t{*threads});
        const auto rr = mdpc::guaranteed_radius(v_min, prof.max_s);
        ojson j;
        j["schema_version"] = mdpc::kSchemaVersion;
        j["max_s"] = prof.max_s;
        ojson hist = ojson::object();
        for (const auto& [value, count] : prof.histogram) hist[std::to_string(value)] = count;
        j["histogram"] = hist;
        j["argmax_pair"] = {prof.argmax_pair.first, prof.argmax_pair.second};
        j["min_col_weight"] = v_min;
        j["radius"] = rr.radius;
        j["radius_degenerate"] = rr.degenerate_no_intersection;
        j["total_pairs"] = prof.total_pairs();
        std::optional<std::string> out_opt;
        if (!out->empty()) {
            out_opt = *out;
            man.arg("--out", *out);
        }
        const std::string mpath = manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
        man.arg("--manifest", mpath);
        write_json_file(man.json(), mpath);
        emit_json(j, out_opt);
    });
}

// ---------------------------------------------------------------------------
// decode

void add_decode(CLI::App& app) {
    auto* d = app.add_subcommand("decode", "Parallel bit-flipping decode of a word");
    auto matrix = std::make_shared<std::string>();
    auto word = std::make_shared<std::string>();
    auto iters = std::make_shared<std::uint32_t>(1);
    auto report_path = std::make_shared<std::string>();
    auto manifest_path = std::make_shared<std::string>();
    d->add_option("--matrix", *matrix, "Matrix JSON")->required();
    d->add_option("--word", *word, "Word JSON {length, support}")->required();
    d->add_option("--iters", *iters, "Maximum flipping iterations");
    d->add_option("--report", *report_path, "Report JSON path (default: stdout)");
    d->add_option("--manifest", *manifest_path, "Manifest path");
    d->callback([=]() {
        const auto m = mdpc::read_matrix(*matrix);
        const auto y = mdpc::read_word(*word);
        const auto rep = mdpc::decode(m, y, *iters);
        Manifest man({"decode"});
        man.arg("--matrix", *matrix);
        man.arg("--word", *word);
        man.arg("--iters", *iters);
        ojson j;
        j["schema_version"] = mdpc::kSchemaVersion;
        j["success"] = rep.success;
        j["iterations_run"] = rep.iterations_run;
        j["syndrome_weight_trace"] = rep.syndrome_weight_trace;
        j["flips_trace"] = rep.flips_trace;
        j["output"] = word_json(rep.output);
        j["output_weight"] = rep.output.weight();
        std::optional<std::string> out_opt;
        if (!report_path->empty()) {
            out_opt = *report_path;
            man.arg("--report", *report_path);
        }
        const std::string mpath = manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
        man.arg("--manifest", mpath);
        write_json_file(man.json(), mpath);
        emit_json(j, out_opt);
    });
}

// ---------------------------------------------------------------------------
// bound

void add_bound(CLI::App& app) {
    auto* bound = app.add_subcommand("bound", "Analytic failure-rate chain");
    bound->require_subcommand(1);

    {
        auto* b = bound->add_subcommand("bias", "Syndrome-bit bias delta and approximation eps");
        auto n = std::make_shared<std::uint32_t>(0);
        auto w = std::make_shared<std::uint32_t>(0);
        auto t = std::make_shared<std::uint32_t>(0);
        auto exact = std::make_shared<bool>(false);
        auto eps_only = std::make_shared<bool>(false);
        auto manifest_path = std::make_shared<std::string>();
        b->add_option("--n", *n, "Code length")->required();
        b->add_option("--w", *w, "Row weight")->required();
        b->add_option("--t", *t, "Error weight")->required();
        auto* exact_flag = b->add_flag("--exact", *exact, "Print the exact rational value");
        b->add_flag("--eps", *eps_only, "Print only the exp(-2wt/n) approximation")
            ->excludes(exact_flag);
        b->add_option("--manifest", *manifest_path, "Manifest path");
        b->callback([=]() {
            Manifest man({"bound", "bias"});
            man.arg("--n", *n);
            man.arg("--w", *w);
            man.arg("--t", *t);
            man.flag("--exact", *exact);
            man.flag("--eps", *eps_only);
            const std::string mpath =
                manifest_path->empty() ? man.default_path(std::nullopt) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
            if (*eps_only) {
                std::printf("ε = %.17g\n", mdpc::eps(*n, *w, *t));
                return;
            }
            const auto bias = mdpc::exact_bias(*n, *w, *t);
            if (*exact) {
                if (!bias.delta_exact)
                    throw mdpc::ValidationError(
                        "exact rational bias is only computed for n <= 10000; rerun without "
                        "--exact for the float value");
                std::printf("δ = %s\n", bias.delta_exact->get_str().c_str());
                return;
            }
            std::printf("δ = %.17g\n", bias.delta);
            std::printf("ε = %.17g\n", bias.eps_approx);
        });
    }

    {
        auto* b = bound->add_subcommand("dfr", "Decoding-failure-rate bound for a scenario");
        auto n = std::make_shared<std::uint32_t>(0);
        auto w = std::make_shared<std::uint32_t>(0);
        auto t = std::make_shared<std::uint32_t>(0);
        auto scenario_name = std::make_shared<std::string>();
        auto s = std::make_shared<std::int64_t>(-1);
        auto v = std::make_shared<std::int64_t>(-1);
        auto alpha = std::make_shared<double>(std::nan(""));
        auto p_mode = std::make_shared<std::string>("conditional");
        auto q_mode = std::make_shared<std::string>("exact");
        auto target_bits = std::make_shared<double>(std::nan(""));
        auto out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        b->add_option("--n", *n, "Code length")->required();
        b->add_option("--w", *w, "Row weight")->required();
        b->add_option("--t", *t, "Error weight")->required();
        b->add_option("--scenario", *scenario_name, "I, II, III or IV")
            ->required()
            ->check(CLI::IsMember({"I", "II", "III", "IV"}));
        b->add_option("--s", *s, "Max column intersection (required for I and II)");
        b->add_option("--v", *v, "Column weight (default w/2)");
        b->add_option("--alpha", *alpha, "Residual contraction factor (III/IV)");
        b->add_option("--p-mode", *p_mode, "Per-check error probability route")
            ->check(CLI::IsMember({"conditional", "eps"}));
        b->add_option("--q-mode", *q_mode, "Per-bit flip probability route")
            ->check(CLI::IsMember({"exact", "surrogate"}));
        b->add_option("--target-bits", *target_bits, "Security target: bound must reach 2^-B");
        b->add_option("--out", *out, "Bound JSON path (default: stdout)");
        b->add_option("--manifest", *manifest_path, "Manifest path");
        b->callback([=]() {
            mdpc::ScenarioParams params;
            params.n = *n;
            params.w = *w;
            params.t = *t;
            if (*s >= 0) params.s = static_cast<std::uint32_t>(*s);
            if (*v >= 0) params.v = static_cast<std::uint32_t>(*v);
            if (!std::isnan(*alpha)) params.alpha = *alpha;
            params.p_mode = (*p_mode == "eps") ? mdpc::PbMode::eps_formula
                                               : mdpc::PbMode::exact_conditional;
            params.q_mode = (*q_mode == "surrogate") ? mdpc::QbMode::asymptotic_bound
                                                     : mdpc::QbMode::exact_tail;
            if (!std::isnan(*target_bits)) params.target_log2 = -std::abs(*target_bits);
            const auto scenario = mdpc::scenario_from_string(*scenario_name);
            const auto res = mdpc::scenario_dfr(params, scenario);

            Manifest man({"bound", "dfr"});
            man.arg("--n", *n);
            man.arg("--w", *w);
            man.arg("--t", *t);
            man.arg("--scenario", *scenario_name);
            if (params.s) man.arg("--s", *params.s);
            if (params.v) man.arg("--v", *params.v);
            if (params.alpha) man.arg("--alpha", *params.alpha);
            man.arg("--p-mode", *p_mode);
            man.arg("--q-mode", *q_mode);
            if (!std::isnan(*target_bits)) man.arg("--target-bits", std::abs(*target_bits));

            ojson j;
            j["schema_version"] = mdpc::kSchemaVersion;
            ojson inputs;
            inputs["n"] = res.n;
            inputs["w"] = res.w;
            inputs["t"] = res.t;
            inputs["v"] = res.v;
            if (res.s) inputs["s"] = *res.s;
            inputs["scenario"] = mdpc::to_string(res.scenario);
            if (res.bound && res.bound->alpha) inputs["alpha"] = *res.bound->alpha;
            inputs["p_mode"] = *p_mode;
            inputs["q_mode"] = *q_mode;
            if (res.target_log2) inputs["target_log2"] = *res.target_log2;
            j["inputs"] = inputs;
            if (res.radius) j["radius"] = *res.radius;
            j["certified_zero_error"] = res.certified_zero_error;
            if (res.bound) {
                j["log2_bound"] = res.bound->log2_bound;
                ojson fb;
                fb["t_prime"] = res.bound->t_prime;
                fb["log2_tail_s0"] = res.bound->log2_tail_s0;
                fb["log2_tail_s1"] = res.bound->log2_tail_s1;
                const auto probs = mdpc::flip_error_probs(res.n, res.w, res.v, res.t,
                                                          params.p_mode, params.q_mode);
                fb["eps"] = probs.eps_value;
                fb["p0"] = probs.p0;
                fb["p1"] = probs.p1;
                fb["log2_q0"] = mdpc::log2_from_nats(probs.log_q0);
                fb["log2_q1"] = mdpc::log2_from_nats(probs.log_q1);
                j["factor_breakdown"] = fb;
                j["assumptions_used"] = res.bound->assumptions_used;
            } else {
                j["log2_bound"] = nullptr;
                j["assumptions_used"] = ojson::array();
            }
            ojson variants = ojson::object();
            for (const auto& [name, value] : res.variants) variants[name] = value;
            j["variants"] = variants;
            if (res.meets_target) j["meets_target"] = *res.meets_target;
            if (!res.note.empty()) j["note"] = res.note;

            std::optional<std::string> out_opt;
            if (!out->empty()) {
                out_opt = *out;
                man.arg("--out", *out);
            }
            const std::string mpath =
                manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
            emit_json(j, out_opt);
        });
    }
}

// ---------------------------------------------------------------------------
// sim

void add_sim(CLI::App& app) {
    auto* sim = app.add_subcommand("sim", "Seeded Monte Carlo experiments");
    sim->require_subcommand(1);

    {
        auto* d = sim->add_subcommand("dfr", "Decode random weight-t errors, report failure rate");
        auto matrix = std::make_shared<std::string>();
        auto construct_kind = std::make_shared<std::string>();
        auto n = std::make_shared<std::uint32_t>(0);
        auto w = std::make_shared<std::uint32_t>(0);
        auto v = std::make_shared<std::uint32_t>(0);
        auto p = std::make_shared<std::uint32_t>(0);
        auto half_weight = std::make_shared<std::uint32_t>(0);
        auto certify = std::make_shared<bool>(false);
        auto target_s = std::make_shared<std::uint32_t>(0);
        auto max_attempts = std::make_shared<std::uint32_t>(256);
        auto t = std::make_shared<std::uint32_t>(0);
        auto trials = std::make_shared<std::uint64_t>(1000);
        auto iters = std::make_shared<std::uint32_t>(1);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto threads = std::make_shared<unsigned>(0);
        auto out = std::make_shared<std::string>();
        auto hist_out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        auto* src = d->add_option_group("source")->require_option(1);
        src->add_option("--matrix", *matrix, "Matrix JSON");
        src->add_option("--construct", *construct_kind, "Sample the matrix here: gallager or qc")
            ->check(CLI::IsMember({"gallager", "qc"}));
        d->add_option("--n", *n, "gallager: code length");
        d->add_option("--w", *w, "gallager: row weight");
        d->add_option("--v", *v, "gallager: column weight");
        d->add_option("--p", *p, "qc: circulant block size");
        d->add_option("--half-weight", *half_weight, "qc: block weight");
        d->add_flag("--certify", *certify, "Certify the sampled matrix before the run");
        d->add_option("--target-s", *target_s, "Intersection target; 0 = default rule");
        d->add_option("--max-attempts", *max_attempts, "Rejection budget");
        d->add_option("--t", *t, "Error weight per trial")->required();
        d->add_option("--trials", *trials, "Number of decode trials");
        d->add_option("--iters", *iters, "Flipping iterations per decode");
        d->add_option("--seed", *seed, "Master seed; construction uses derive_seed(seed, 1), "
                                       "trials derive_seed(seed, 2)");
        d->add_option("--threads", *threads, "Worker threads; 0 = available parallelism")
            ->envname("MDPC_THREADS");
        d->add_option("--out", *out, "Record CSV path (default: stdout)");
        d->add_option("--hist-out", *hist_out, "Residual-weight histogram JSON path");
        d->add_option("--manifest", *manifest_path, "Manifest path");
        d->callback([=]() {
            Manifest man({"sim", "dfr"});
            mdpc::SparseBinaryMatrix m;
            if (!matrix->empty()) {
                m = mdpc::read_matrix(*matrix);
                man.arg("--matrix", *matrix);
            } else if (*construct_kind == "gallager") {
                if (!*n || !*w || !*v)
                    throw CLI::ValidationError("--construct gallager requires --n, --w and --v");
                const auto params =
                    mdpc::gallager_params(*n, *w, *v, mdpc::derive_seed(*seed, 1));
                man.arg("--construct", *construct_kind);
                man.arg("--n", *n);
                man.arg("--w", *w);
                man.arg("--v", *v);
                man.flag("--certify", *certify);
                if (*certify) {
                    mdpc::ConstructionBudget budget;
                    budget.max_attempts = *max_attempts;
                    budget.target_s = *target_s ? *target_s : mdpc::default_target_s(*n);
                    man.arg("--target-s", *target_s);
                    man.arg("--max-attempts", *max_attempts);
                    m = mdpc::construct_certified(params, budget).code.matrix;
                } else {
                    m = mdpc::sample_gallager(params).matrix;
                }
            } else {
                if (!*p || !*half_weight)
                    throw CLI::ValidationError("--construct qc requires --p and --half-weight");
                mdpc::QcParams params;
                params.block_size = *p;
                params.half_weight = *half_weight;
                params.seed = mdpc::derive_seed(*seed, 1);
                man.arg("--construct", *construct_kind);
                man.arg("--p", *p);
                man.arg("--half-weight", *half_weight);
                man.flag("--certify", *certify);
                if (*certify) {
                    mdpc::ConstructionBudget budget;
                    budget.max_attempts = *max_attempts;
                    budget.target_s = *target_s ? *target_s : mdpc::default_target_s(2 * *p);
                    man.arg("--target-s", *target_s);
                    man.arg("--max-attempts", *max_attempts);
                    m = mdpc::construct_certified(params, budget).code.matrix;
                } else {
                    m = mdpc::expand_qc(mdpc::sample_qc(params));
                }
            }
            mdpc::TrialPlan plan;
            plan.t = *t;
            plan.trials = *trials;
            plan.master_seed = mdpc::derive_seed(*seed, 2);
            plan.max_iterations = *iters;
            plan.threads = *threads;
            const auto rec = mdpc::run_dfr(m, plan);

            man.arg("--t", *t);
            man.arg("--trials", *trials);
            man.arg("--iters", *iters);
            man.arg("--seed", *seed);
            man.arg("--threads", std::uint64_t{*threads});

            std::string csv =
                "schema_version,n,r,t,trials,iters,seed,failures,miscorrections,dfr,dfr_ci_low,"
                "dfr_ci_high,residual_mean,wall_time_s\n";
            char row[512];
            std::snprintf(row, sizeof row,
                          "%d,%" PRIu32 ",%" PRIu32 ",%" PRIu32 ",%" PRIu64 ",%" PRIu32
                          ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%s,%s,%s,%s,%.3f\n",
                          mdpc::kSchemaVersion, m.cols(), m.rows(), *t, *trials, *iters, *seed,
                          rec.failures, rec.miscorrections, csv_double(rec.dfr_point).c_str(),
                          csv_double(rec.dfr_95.low).c_str(), csv_double(rec.dfr_95.high).c_str(),
                          csv_double(rec.residual_mean).c_str(), rec.wall_time_s);
            csv += row;

            std::optional<std::string> out_opt;
            if (!out->empty()) {
                out_opt = *out;
                man.arg("--out", *out);
            }
            if (!hist_out->empty()) {
                ojson h;
                h["schema_version"] = mdpc::kSchemaVersion;
                ojson hist = ojson::object();
                for (const auto& [weight, count] : rec.residual_weight_histogram)
                    hist[std::to_string(weight)] = count;
                h["residual_weight_histogram"] = hist;
                h["residual_mean"] = rec.residual_mean;
                write_json_file(h, *hist_out);
                man.arg("--hist-out", *hist_out);
            }
            const std::string mpath =
                manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
            emit_text(csv, out_opt);
        });
    }

    {
        auto* c = sim->add_subcommand("coincidence",
                                      "Chi-square test of the pairwise intersection law");
        auto n = std::make_shared<std::uint32_t>(0);
        auto w = std::make_shared<std::uint32_t>(0);
        auto v = std::make_shared<std::uint32_t>(0);
        auto matrices = std::make_shared<std::uint32_t>(20);
        auto pairs = std::make_shared<std::uint32_t>(2000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        c->add_option("--n", *n, "Code length")->required();
        c->add_option("--w", *w, "Row weight")->required();
        c->add_option("--v", *v, "Column weight")->required();
        c->add_option("--matrices", *matrices, "Matrices sampled");
        c->add_option("--pairs", *pairs, "Column pairs per matrix");
        c->add_option("--seed", *seed, "Master seed");
        c->add_option("--out", *out, "Report JSON path (default: stdout)");
        c->add_option("--manifest", *manifest_path, "Manifest path");
        c->callback([=]() {
            mdpc::CoincidencePlan plan;
            plan.params = mdpc::gallager_params(*n, *w, *v, 0);
            plan.matrices = *matrices;
            plan.pairs_per_matrix = *pairs;
            plan.seed = *seed;
            const auto rep = mdpc::coincidence_test(plan);
            Manifest man({"sim", "coincidence"});
            man.arg("--n", *n);
            man.arg("--w", *w);
            man.arg("--v", *v);
            man.arg("--matrices", *matrices);
            man.arg("--pairs", *pairs);
            man.arg("--seed", *seed);
            ojson j;
            j["schema_version"] = mdpc::kSchemaVersion;
            j["coincidence_prob"] = rep.coincidence_prob;
            j["pairs_total"] = rep.pairs_total;
            j["statistic"] = rep.chi.statistic;
            j["df"] = rep.chi.df;
            j["p_value"] = rep.chi.p_value;
            j["merged_bins"] = rep.chi.merged_bins;
            j["observed"] = rep.observed;
            j["expected"] = rep.expected;
            std::optional<std::string> out_opt;
            if (!out->empty()) {
                out_opt = *out;
                man.arg("--out", *out);
            }
            const std::string mpath =
                manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
            emit_json(j, out_opt);
        });
    }

    {
        auto* e = sim->add_subcommand("estimate-s",
                                      "Percentile of max intersection over sampled matrices");
        auto n = std::make_shared<std::uint32_t>(0);
        auto w = std::make_shared<std::uint32_t>(0);
        auto v = std::make_shared<std::uint32_t>(0);
        auto p = std::make_shared<std::uint32_t>(0);
        auto half_weight = std::make_shared<std::uint32_t>(0);
        auto samples = std::make_shared<std::uint32_t>(50);
        auto percentile = std::make_shared<double>(0.20);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto threads = std::make_shared<unsigned>(0);
        auto out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        auto* gal = e->add_option("--n", *n, "gallager: code length");
        e->add_option("--w", *w, "gallager: row weight");
        e->add_option("--v", *v, "gallager: column weight");
        auto* qcp = e->add_option("--p", *p, "qc: circulant block size");
        e->add_option("--half-weight", *half_weight, "qc: block weight");
        gal->excludes(qcp);
        e->add_option("--samples", *samples, "Matrices sampled (>= 5)");
        e->add_option("--percentile", *percentile, "Acceptance percentile in (0, 1]");
        e->add_option("--seed", *seed, "Master seed");
        e->add_option("--threads", *threads, "gallager only; 0 = available parallelism")
            ->envname("MDPC_THREADS");
        e->add_option("--out", *out, "Report JSON path (default: stdout)");
        e->add_option("--manifest", *manifest_path, "Manifest path");
        e->callback([=]() {
            Manifest man({"sim", "estimate-s"});
            mdpc::PercentileEstimate est;
            if (*p) {
                if (!*half_weight)
                    throw CLI::ValidationError("--p requires --half-weight");
                mdpc::QcParams params;
                params.block_size = *p;
                params.half_weight = *half_weight;
                params.seed = *seed;
                est = mdpc::estimate_s_percentile(params, *samples, *percentile);
                man.arg("--p", *p);
                man.arg("--half-weight", *half_weight);
            } else {
                if (!*n || !*w || !*v)
                    throw CLI::ValidationError("either --p/--half-weight or --n/--w/--v required");
                const auto params = mdpc::gallager_params(*n, *w, *v, *seed);
                est = mdpc::estimate_s_percentile(params, *samples, *percentile, *threads);
                man.arg("--n", *n);
                man.arg("--w", *w);
                man.arg("--v", *v);
                man.arg("--threads", std::uint64_t{*threads});
            }
            man.arg("--samples", *samples);
            man.arg("--percentile", *percentile);
            man.arg("--seed", *seed);
            ojson j;
            j["schema_version"] = mdpc::kSchemaVersion;
            j["s0"] = est.s0;
            j["percentile"] = est.percentile;
            j["samples"] = est.values.size();
            j["values"] = est.values;
            std::optional<std::string> out_opt;
            if (!out->empty()) {
                out_opt = *out;
                man.arg("--out", *out);
            }
            const std::string mpath =
                manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
            emit_json(j, out_opt);
        });
    }

    {
        auto* s = sim->add_subcommand("search", "Smallest feasible n per w for a scenario");
        auto scenario_name = std::make_shared<std::string>();
        auto t = std::make_shared<std::uint32_t>(0);
        auto lambda = std::make_shared<double>(80.0);
        auto w_list = std::make_shared<std::vector<std::uint32_t>>();
        auto n_list = std::make_shared<std::vector<std::uint32_t>>();
        auto samples = std::make_shared<std::uint32_t>(50);
        auto percentile = std::make_shared<double>(0.20);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out = std::make_shared<std::string>();
        auto manifest_path = std::make_shared<std::string>();
        s->add_option("--scenario", *scenario_name, "I, II, III or IV")
            ->required()
            ->check(CLI::IsMember({"I", "II", "III", "IV"}));
        s->add_option("--t", *t, "Error weight")->required();
        s->add_option("--lambda", *lambda, "Security target in bits");
        s->add_option("--w-list", *w_list, "Row weights to scan (even)")
            ->required()
            ->delimiter(',');
        s->add_option("--n-list", *n_list, "Code lengths to scan, ascending (even)")
            ->required()
            ->delimiter(',');
        s->add_option("--samples", *samples, "Matrices per grid point");
        s->add_option("--percentile", *percentile, "Percentile for the s estimate");
        s->add_option("--seed", *seed, "Master seed");
        s->add_option("--out", *out, "Table CSV path (default: stdout)");
        s->add_option("--manifest", *manifest_path, "Manifest path");
        s->callback([=]() {
            mdpc::SearchRanges ranges;
            ranges.w_values = *w_list;
            ranges.n_values = *n_list;
            ranges.samples = *samples;
            ranges.percentile = *percentile;
            ranges.seed = *seed;
            const auto scenario = mdpc::scenario_from_string(*scenario_name);
            const auto result = mdpc::search_scenario_params(scenario, *t, *lambda, ranges);

            Manifest man({"sim", "search"});
            man.arg("--scenario", *scenario_name);
            man.arg("--t", *t);
            man.arg("--lambda", *lambda);
            man.arg("--w-list", *w_list);
            man.arg("--n-list", *n_list);
            man.arg("--samples", *samples);
            man.arg("--percentile", *percentile);
            man.arg("--seed", *seed);

            std::string csv = "schema_version,scenario,w,n,s,radius,log2_bound,meets,selected\n";
            auto selected = [&](const mdpc::SearchRow& row) {
                for (const auto& b : result.best)
                    if (b.w == row.w && b.n == row.n) return 1;
                return 0;
            };
            for (const auto& row : result.evaluated) {
                char line[256];
                std::snprintf(line, sizeof line,
                              "%d,%s,%" PRIu32 ",%" PRIu32 ",%" PRIu32 ",%" PRIu32 ",%s,%d,%d\n",
                              mdpc::kSchemaVersion, scenario_name->c_str(), row.w, row.n, row.s,
                              row.radius, csv_double(row.log2_bound).c_str(), row.meets ? 1 : 0,
                              selected(row));
                csv += line;
            }

            std::optional<std::string> out_opt;
            if (!out->empty()) {
                out_opt = *out;
                man.arg("--out", *out);
            }
            const std::string mpath =
                manifest_path->empty() ? man.default_path(out_opt) : *manifest_path;
            man.arg("--manifest", mpath);
            write_json_file(man.json(), mpath);
            emit_text(csv, out_opt);
        });
    }
}

// ---------------------------------------------------------------------------
// replay

void add_replay(CLI::App& app, int depth) {
    auto* r = app.add_subcommand("replay", "Re-execute a run from its manifest");
    auto manifest_path = std::make_shared<std::string>();
    r->add_option("--manifest", *manifest_path, "Manifest JSON written by a previous run")
        ->required();
    r->callback([=]() {
        std::ifstream in(*manifest_path);
        if (!in) throw mdpc::IoError("cannot open manifest: " + *manifest_path);
        ojson m;
        try {
            m = ojson::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw mdpc::IoError("malformed manifest " + *manifest_path + ": " + e.what());
        }
        if (!m.contains("argv") || !m["argv"].is_array())
            throw mdpc::ValidationError("manifest has no argv array: " + *manifest_path);
        if (depth > 0) throw mdpc::ValidationError("refusing to replay a replay");
        std::vector<std::string> args;
        for (const auto& a : m["argv"]) args.push_back(a.get<std::string>());
        if (!args.empty() && args.front() == "replay")
            throw mdpc::ValidationError("refusing to replay a replay");
        const int code = run(std::move(args), depth + 1);
        if (code != 0) throw mdpc::Error("replayed command exited with code " + std::to_string(code));
    });
}

int run(std::vector<std::string> args, int depth) {
    CLI::App app{"MDPC code construction, decoding and failure-rate bounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mdpc::kVersion);
    app.set_config("--config", "", "INI config file; flags override file values");

    add_construct(app);
    add_analyze(app);
    add_decode(app);
    add_bound(app);
    add_sim(app);
    add_replay(app, depth);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mdpc::Error& e) {
        ojson err;
        err["schema_version"] = mdpc::kSchemaVersion;
        err["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    } catch (const std::exception& e) {
        ojson err;
        err["schema_version"] = mdpc::kSchemaVersion;
        err["error"] = {{"kind", error_kind(e)}, {"message", e.what()}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), 0);
}

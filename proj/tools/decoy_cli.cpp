// Command-line front end: validate -> constraint data -> X/Z -> intervals ->
// optional LP verification -> optional key rate.
//
// Exit codes: 0 success, 1 verification mismatch or internal error,
//             2 validation/schema, 3 infeasible data, 4 search cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decoy/bounds.hpp"
#include "decoy/io.hpp"
#include "decoy/keyrate.hpp"
#include "decoy/model.hpp"
#include "decoy/oracle.hpp"
#include "decoy/report.hpp"

using namespace decoy;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCap = 4;

unsigned default_precision_bits() {
    if (const char* env = std::getenv("DECOY_PRECISION_BITS")) {
        long v = std::strtol(env, nullptr, 10);
        // Out-of-range values are passed through so validation rejects them loudly.
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 256;
}

struct CommonOpts {
    unsigned precision_bits = default_precision_bits();
    unsigned cap = 200;
    std::string format = "json";
    std::string plot_prefix;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--precision-bits", opts.precision_bits, "significand bits (>= 64)")
        ->capture_default_str();
    cmd->add_option("--cap", opts.cap, "search cap for the (L0, a0) scan")
        ->capture_default_str();
    cmd->add_option("--format", opts.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    cmd->add_option("--emit-plot-data", opts.plot_prefix,
                    "write <prefix>_intervals.csv and <prefix>_q.csv");
}

void emit_plot_data(const std::string& prefix, const BoundsReport& rep, const Dataset& d) {
    std::ofstream iv(prefix + "_intervals.csv");
    iv << "n,lo,hi\n";
    for (std::size_t n = 1; n <= rep.intervals.size(); ++n) {
        iv << n << "," << format_real(rep.intervals[n - 1].lo) << ","
           << format_real(rep.intervals[n - 1].hi) << "\n";
    }
    std::ofstream q(prefix + "_q.csv");
    q << "mu,Q\n";
    for (std::size_t i = 0; i < d.set.mu.size(); ++i) {
        q << format_real(d.set.mu[i]) << "," << format_real(d.rec.Q[i]) << "\n";
    }
}

void print_text_report(const BoundsReport& rep, const std::string& what) {
    std::cout << what << " (" << (rep.exact ? "exact extrema" : "bounds only") << ", "
              << (rep.feasible ? "feasible" : "INFEASIBLE") << ")\n";
    std::cout << "  L0 = " << rep.z.L0 << ", a0 = " << format_real(rep.z.a0) << " ("
              << (rep.z.branch == ZBranch::equality ? "equality" : "saturated") << " branch)\n";
    for (std::size_t n = 1; n <= rep.intervals.size(); ++n) {
        std::cout << "  n=" << n << ": [" << format_real(rep.intervals[n - 1].lo) << ", "
                  << format_real(rep.intervals[n - 1].hi) << "]\n";
    }
    for (const auto& w : rep.warnings) std::cout << "  warning: " << w << "\n";
}

// LP check of the n=1 interval endpoints; returns deltas, sets ok=false on
// disagreement beyond 1e-10 absolute + 1e-12 relative.
json verify_against_oracle(const BoundsReport& rep, const std::vector<real>& qplus,
                           const std::vector<real>& mu, unsigned oracle_n,
                           const PrecisionConfig& prec, bool& ok) {
    PrecisionScope scope(prec);
    unsigned N = oracle_n ? oracle_n : std::max(40u, rep.z.L0 + 20);
    TruncatedLP lp;
    lp.N = N;
    lp.mu = mu;
    lp.rhs.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) lp.rhs[i] = exp(mu[i]) * qplus[i];
    lp.objective = 1;

    lp.maximize = false;
    real lo = lp_extremize(lp, prec).value;
    lp.maximize = true;
    real hi = lp_extremize(lp, prec).value;

    real d_lo = abs(lo - rep.intervals[0].lo);
    real d_hi = abs(hi - rep.intervals[0].hi);
    real tol_lo = real("1e-10") + real("1e-12") * abs(rep.intervals[0].lo);
    real tol_hi = real("1e-10") + real("1e-12") * abs(rep.intervals[0].hi);
    if (d_lo > tol_lo || d_hi > tol_hi) {
        ok = false;
        std::cerr << "verify: oracle disagrees on n=1\n"
                  << "  reported [" << format_real(rep.intervals[0].lo) << ", "
                  << format_real(rep.intervals[0].hi) << "]\n"
                  << "  oracle   [" << format_real(lo) << ", " << format_real(hi) << "]\n";
    }
    json out;
    out["n_trunc"] = N;
    out["deltas"] = {{"lo", format_real(d_lo)}, {"hi", format_real(d_hi)}};
    return out;
}

json model_json(const Dataset& d) {
    if (!d.model) return nullptr;
    return {{"A", format_real(d.model->A)},
            {"B", format_real(d.model->B)},
            {"eta", format_real(d.model->eta)}};
}

struct BoundsRun {
    std::string mode = "yields";
    std::string input;
    bool verify = false;
    unsigned oracle_n = 0;
    CommonOpts common;
};

int run_bounds(const BoundsRun& run) {
    PrecisionConfig prec;
    prec.significand_bits = run.common.precision_bits;
    PrecisionScope scope(prec);

    Dataset d = parse_input(run.input);
    if (d.model) d.model->validate();

    bool verify_ok = true;
    json out;
    int exit_code = kExitOk;

    auto one_side = [&](bool errors_side) {
        std::vector<real> qp =
            errors_side ? qplus_from_errors(d.rec, d.set) : qplus_from_record(d.rec, d.set);
        BoundsReport rep = compute_bounds(qp, d.set.mu, prec, run.common.cap);
        json j = report_to_json(rep, d.set);
        j["model"] = model_json(d);
        if (run.verify) {
            j["oracle"] = verify_against_oracle(rep, qp, d.set.mu, run.oracle_n, prec, verify_ok);
        }
        if (!rep.feasible) exit_code = kExitInfeasible;
        if (run.common.format == "text") {
            print_text_report(rep, errors_side ? "error products b_n" : "yields y_n");
        }
        if (!run.common.plot_prefix.empty()) {
            std::string prefix = run.common.plot_prefix + (errors_side ? "_errors" : "");
            emit_plot_data(prefix, rep, d);
        }
        return j;
    };

    if (run.mode == "yields") {
        out = one_side(false);
    } else if (run.mode == "errors") {
        out = one_side(true);
    } else {  // both
        out["yields"] = one_side(false);
        out["errors"] = one_side(true);
    }
    if (run.common.format == "json") std::cout << out.dump(2) << "\n";
    if (!verify_ok && exit_code == kExitOk) exit_code = kExitError;
    return exit_code;
}

struct SynthRun {
    std::string a, b, eta;
    std::string mu_list;
    std::string y0;
    std::string e_det, p_dark;
    std::string output;
    unsigned seed = 0;  // recorded in the output; synthesis itself is deterministic
};

int run_synth(const SynthRun& run, const CommonOpts& common) {
    PrecisionConfig prec;
    prec.significand_bits = common.precision_bits;
    PrecisionScope scope(prec);

    Dataset d;
    ChannelParams p{parse_real(run.a), parse_real(run.b), parse_real(run.eta)};
    p.validate();
    d.model = p;

    std::stringstream ss(run.mu_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) d.set.mu.push_back(parse_real(tok));
    d.set.y0 = run.y0.empty() ? p.B : parse_real(run.y0);
    d.set.validate();

    std::optional<real> e_det, p_dark;
    if (!run.e_det.empty()) e_det = parse_real(run.e_det);
    if (!run.p_dark.empty()) p_dark = parse_real(run.p_dark);
    if (run.e_det.empty() != run.p_dark.empty()) {
        throw ValidationError("synth: --e-det and --p-dark must be given together");
    }
    d.rec = synth_record(d.set, p, e_det, p_dark);
    if (e_det) {
        d.e_det = e_det;
        d.p_dark = p_dark;
    }

    json j = dataset_to_json(d);
    j["seed"] = run.seed;
    if (run.output.empty()) {
        std::cout << j.dump(2) << "\n";
    } else if (run.output.size() >= 4 && run.output.substr(run.output.size() - 4) == ".csv") {
        std::ofstream out(run.output);
        out << dataset_to_csv(d);
    } else {
        std::ofstream out(run.output);
        out << j.dump(2) << "\n";
    }
    return kExitOk;
}

struct KeyrateRun {
    std::string input;
    std::string f = "1.22";
    int signal = -1;  // index into mu, default: the largest intensity
    CommonOpts common;
};

int run_keyrate(const KeyrateRun& run) {
    PrecisionConfig prec;
    prec.significand_bits = run.common.precision_bits;
    PrecisionScope scope(prec);

    Dataset d = parse_input(run.input);
    if (!d.rec.E) throw ValidationError("keyrate: input must carry an E column");

    std::vector<real> qp = qplus_from_record(d.rec, d.set);
    BoundsReport yields = compute_bounds(qp, d.set.mu, prec, run.common.cap);
    std::vector<real> bp = qplus_from_errors(d.rec, d.set);
    BoundsReport errors = compute_bounds(bp, d.set.mu, prec, run.common.cap);

    unsigned sig = run.signal < 0 ? d.set.M() - 1 : static_cast<unsigned>(run.signal);
    if (sig >= d.set.M()) throw ValidationError("keyrate: signal index out of range");

    real y1_min = yields.intervals[0].lo;
    real b1_max = errors.intervals[0].hi;
    real e1 = e1_upper(b1_max, y1_min);

    KeyRateInput in;
    in.Q = d.rec.Q[sig];
    in.E = (*d.rec.E)[sig];
    in.Q0 = exp(-d.set.mu[sig]) * d.set.y0;
    in.Q1 = exp(-d.set.mu[sig]) * d.set.mu[sig] * y1_min;
    in.e1_upper = e1;
    in.f = parse_real(run.f);
    real rate = key_rate(in);

    json out;
    out["signal_mu"] = format_real(d.set.mu[sig]);
    out["y1_min"] = format_real(y1_min);
    out["b1_max"] = format_real(b1_max);
    out["e1_upper"] = format_real(e1);
    out["key_rate"] = format_real(rate);
    // The error-correction term enters with a minus sign here; the value with
    // the sign flipped is included for cross-checking against other write-ups.
    out["key_rate_ec_added"] = format_real(rate + 2 * in.Q * in.f * h2(in.E));
    out["yields"] = report_to_json(yields, d.set);
    out["errors"] = report_to_json(errors, d.set);
    out["model"] = model_json(d);

    if (run.common.format == "text") {
        std::cout << "signal mu = " << format_real(d.set.mu[sig]) << "\n"
                  << "y1 >= " << format_real(y1_min) << ", b1 <= " << format_real(b1_max)
                  << ", e1 <= " << format_real(e1) << "\n"
                  << "key rate R = " << format_real(rate) << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    if (!yields.feasible || !errors.feasible) return kExitInfeasible;
    return kExitOk;
}

int run_selftest(const CommonOpts& common) {
    PrecisionConfig prec;
    prec.significand_bits = common.precision_bits;
    PrecisionScope scope(prec);

    ChannelParams p{real(1), real("1e-5"), real("1e-2")};
    std::vector<real> mu{real("0.07"), real("0.2"), real("0.5")};
    std::vector<real> qp;
    for (const real& m : mu) qp.push_back(synth_qplus(m, p));

    XConfiguration x = compute_x(qp, mu);
    ZConfiguration z = compute_z(qp, mu);
    std::cout << "q1 = " << format_real(yield_q(1, p)) << "\n";
    std::cout << "X1 = " << format_real(x.values[0]) << "\n";
    std::cout << "Z1 = " << format_real(z.values[0]) << " (L0=" << z.L0
              << ", a0=" << format_real(z.a0) << ")\n";

    bool ok = true;
    auto expect = [&](const char* name, const real& got, const char* want, const char* tol) {
        if (abs(got - real(want)) > real(tol)) {
            std::cerr << "selftest: " << name << " = " << format_real(got) << ", expected ~"
                      << want << "\n";
            ok = false;
        }
    };
    expect("q1", yield_q(1, p), "1.001e-2", "1e-20");
    expect("X1", x.values[0], "0.0100239739548431269708731359527", "1e-24");
    expect("Z1", z.values[0], "0.00995285903904873094311744439093", "1e-24");
    if (z.L0 != 4) ok = false;

    // Independent LP check of both endpoints.
    TruncatedLP lp;
    lp.N = 60;
    lp.mu = mu;
    lp.rhs.resize(3);
    for (int i = 0; i < 3; ++i) lp.rhs[i] = exp(mu[i]) * qp[i];
    lp.objective = 1;
    lp.maximize = false;
    real lo = lp_extremize(lp, prec).value;
    lp.maximize = true;
    real hi = lp_extremize(lp, prec).value;
    if (abs(lo - z.values[0]) > real("1e-10") || abs(hi - x.values[0]) > real("1e-10")) {
        std::cerr << "selftest: oracle mismatch\n";
        ok = false;
    }
    std::cout << "oracle [" << format_real(lo) << ", " << format_real(hi) << "]\n";
    std::cout << (ok ? "selftest passed" : "selftest FAILED") << "\n";
    return ok ? kExitOk : kExitError;
}

json error_json(const std::string& type, const std::string& message) {
    json j;
    j["errors"] = json::array({{{"type", type}, {"message", message}}});
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"per-photon-number yield and error bounds from decoy-state data"};
    app.require_subcommand(1);

    BoundsRun bounds_run;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "compute X/Z bounds from a dataset");
    bounds_cmd->add_option("--input", bounds_run.input, "CSV or JSON dataset")->required();
    bounds_cmd->add_option("--mode", bounds_run.mode, "yields, errors, or both")
        ->check(CLI::IsMember({"yields", "errors", "both"}))
        ->capture_default_str();
    bounds_cmd->add_flag("--verify", bounds_run.verify, "cross-check n=1 against the LP oracle");
    bounds_cmd->add_option("--oracle-n", bounds_run.oracle_n,
                           "LP truncation order (0 = max(40, L0+20))");
    add_common(bounds_cmd, bounds_run.common);

    BoundsRun verify_run;
    verify_run.verify = true;
    CLI::App* verify_cmd = app.add_subcommand("verify", "bounds with the LP cross-check forced");
    verify_cmd->add_option("--input", verify_run.input, "CSV or JSON dataset")->required();
    verify_cmd->add_option("--mode", verify_run.mode, "yields, errors, or both")
        ->check(CLI::IsMember({"yields", "errors", "both"}))
        ->capture_default_str();
    verify_cmd->add_option("--oracle-n", verify_run.oracle_n,
                           "LP truncation order (0 = max(40, L0+20))");
    add_common(verify_cmd, verify_run.common);

    SynthRun synth_run;
    CommonOpts synth_common;
    CLI::App* synth_cmd = app.add_subcommand("synth", "synthesize a model dataset");
    synth_cmd->add_option("--A", synth_run.a)->required();
    synth_cmd->add_option("--B", synth_run.b)->required();
    synth_cmd->add_option("--eta", synth_run.eta)->required();
    synth_cmd->add_option("--mu", synth_run.mu_list, "comma-separated intensities")->required();
    synth_cmd->add_option("--y0", synth_run.y0, "vacuum yield (default: B)");
    synth_cmd->add_option("--e-det", synth_run.e_det, "detector error rate (enables E column)");
    synth_cmd->add_option("--p-dark", synth_run.p_dark, "dark-count rate (enables E column)");
    synth_cmd->add_option("--output", synth_run.output, "output path (.csv or .json; default stdout)");
    synth_cmd->add_option("--seed", synth_run.seed, "recorded in the output for provenance");
    add_common(synth_cmd, synth_common);

    KeyrateRun keyrate_run;
    CLI::App* keyrate_cmd = app.add_subcommand("keyrate", "secure key rate from a dataset with E");
    keyrate_cmd->add_option("--input", keyrate_run.input, "CSV or JSON dataset")->required();
    keyrate_cmd->add_option("--f", keyrate_run.f, "error-correction inefficiency")
        ->capture_default_str();
    keyrate_cmd->add_option("--signal", keyrate_run.signal,
                            "signal intensity index (default: largest mu)");
    add_common(keyrate_cmd, keyrate_run.common);

    CommonOpts selftest_common;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the built-in consistency check");
    add_common(selftest_cmd, selftest_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds_cmd->parsed()) return run_bounds(bounds_run);
        if (verify_cmd->parsed()) return run_bounds(verify_run);
        if (synth_cmd->parsed()) return run_synth(synth_run, synth_common);
        if (keyrate_cmd->parsed()) return run_keyrate(keyrate_run);
        if (selftest_cmd->parsed()) return run_selftest(selftest_common);
    } catch (const CapExceeded& e) {
        std::cerr << error_json("cap_exceeded", e.what()).dump(2) << "\n";
        return kExitCap;
    } catch (const Infeasible& e) {
        std::cerr << error_json("infeasible", e.what()).dump(2) << "\n";
        return kExitInfeasible;
    } catch (const NegativeQPlus& e) {
        std::cerr << error_json("infeasible", e.what()).dump(2) << "\n";
        return kExitInfeasible;
    } catch (const SchemaError& e) {
        std::cerr << error_json("schema", e.what()).dump(2) << "\n";
        return kExitValidation;
    } catch (const DegenerateIntensities& e) {
        std::cerr << error_json("validation", e.what()).dump(2) << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << error_json("validation", e.what()).dump(2) << "\n";
        return kExitValidation;
    } catch (const DomainError& e) {
        std::cerr << error_json("validation", e.what()).dump(2) << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << error_json("error", e.what()).dump(2) << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << error_json("error", e.what()).dump(2) << "\n";
        return kExitError;
    }
    return kExitOk;
}

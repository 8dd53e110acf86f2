// qaa: exact amplitude amplification toolkit.
//
// Subcommands: simulate, amplify, distinguish, fault-detect, optimal-input,
// derandomize, schedule. Problem files are JSON documents (see README).
// Exit codes: 0 success, 1 promise/verification failure, 2 parse/validation
// or usage error.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <qaa/qaa.hpp>
#include <sstream>

using namespace qaa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPromise = 1;
constexpr int kExitParse = 2;

struct Options {
    std::string system_file;
    std::string promise_text;
    std::string epsilon_text;
    std::string out_file;
    std::string format = "text";
    bool verify = false;
    std::uint64_t seed = 0;
    int budget = kDefaultQubitBudget;
    double prob_tol = kProbTol;
    double op_tol = kOpTol;
    double norm_tol = kNormTol;
};

class Timer {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }
};

bool json_mode(const Options& opt) { return opt.format == "json"; }

ProblemFile load(const Options& opt) {
    if (opt.system_file.empty()) throw ParseError("missing --system FILE");
    return parse_problem_file(opt.system_file);
}

QuantumSystem load_system(const Options& opt, const ProblemFile& pf) {
    auto qs = pf.system();
    if (!qs) throw ParseError(opt.system_file + ": needs input, circuit and measurement");
    const auto report = validate_system(*qs, opt.op_tol, opt.norm_tol);
    if (!report.ok()) throw ValidationError(opt.system_file + ": " + report.to_string());
    return *qs;
}

SeparablePromise promise_from(const Options& opt, const ProblemFile& pf) {
    if (!opt.promise_text.empty()) {
        const auto comma = opt.promise_text.find(',');
        if (comma == std::string::npos)
            throw ParseError("--promise expects 'delta,epsilon' decimals");
        return SeparablePromise(parse_double(opt.promise_text.substr(0, comma)),
                                parse_double(opt.promise_text.substr(comma + 1)));
    }
    if (pf.promise) return *pf.promise;
    throw ParseError("no promise given (flag --promise or file field)");
}

void print_stage_table(const std::vector<StageRow>& rows) {
    std::printf("  %-34s %12s %12s %12s %10s\n", "stage", "good", "bad", "simulated", "drift");
    for (const auto& row : rows)
        std::printf("  %-34s %12.9f %12.9f %12.9f %10.2e\n", row.stage.c_str(),
                    row.analytic_good, row.analytic_bad, row.simulated_p, row.deviation);
}

std::string stage_rows_json(const std::vector<StageRow>& rows) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ",";
        os << "{\"stage\":\"" << rows[i].stage << "\",\"good\":\""
           << format_double(rows[i].analytic_good) << "\",\"bad\":\""
           << format_double(rows[i].analytic_bad) << "\",\"simulated\":\""
           << format_double(rows[i].simulated_p) << "\",\"drift\":\""
           << format_double(rows[i].deviation) << "\"}";
    }
    os << "]";
    return os.str();
}

int cmd_simulate(const Options& opt) {
    const ProblemFile pf = load(opt);
    const QuantumSystem qs = load_system(opt, pf);
    const auto dist = outcome_probability(qs);
    if (json_mode(opt))
        std::printf("{\"p_E\":\"%s\",\"p_F\":\"%s\"}\n", format_double(dist.p_E).c_str(),
                    format_double(dist.p_F()).c_str());
    else
        std::printf("p_E = %.12f\np_F = %.12f\n", dist.p_E, dist.p_F());
    return kExitOk;
}

int cmd_amplify(const Options& opt) {
    const Timer timer;
    const ProblemFile pf = load(opt);
    const QuantumSystem qs = load_system(opt, pf);
    const SeparablePromise promise = promise_from(opt, pf);
    const AmplificationPlan plan = build_perfect_distinguisher(promise);

    std::vector<StageRow> rows;
    QuantumSystem result;
    if (opt.verify) {
        const auto run = apply_plan_verified(plan, qs, opt.prob_tol);
        rows = run.trace;
        result = run.system;
    } else {
        result = apply_plan(plan, qs);
    }
    const double final_p = outcome_probability(result).p_E;

    if (json_mode(opt)) {
        std::printf("{\"promise\":{\"delta\":\"%s\",\"epsilon\":\"%s\"},"
                    "\"queries\":%lld,\"ancillae\":%d,\"final_p_E\":\"%s\","
                    "\"stages\":%s,\"ms\":\"%s\"}\n",
                    format_double(promise.delta).c_str(), format_double(promise.epsilon).c_str(),
                    static_cast<long long>(plan.query_count()), plan.ancilla_count(),
                    format_double(final_p).c_str(), stage_rows_json(rows).c_str(),
                    format_double(timer.ms()).c_str());
    } else {
        std::printf("promise (%.9f, %.9f), %lld black-box calls, %d ancilla(e)\n", promise.delta,
                    promise.epsilon, static_cast<long long>(plan.query_count()),
                    plan.ancilla_count());
        if (!rows.empty()) print_stage_table(rows);
        std::printf("final p_E = %.12f  (%.2f ms)\n", final_p, timer.ms());
    }

    if (!opt.out_file.empty()) {
        std::ofstream out(opt.out_file);
        if (!out) throw ParseError("cannot write " + opt.out_file);
        out << serialize_problem(problem_for_system(result));
    }
    return kExitOk;
}

std::pair<Circuit, Circuit> load_pair(const Options& opt, const ProblemFile& pf) {
    if (!pf.circuit_1 || !pf.circuit_2)
        throw ParseError(opt.system_file + ": needs circuit1 and circuit2");
    return {*pf.circuit_1, *pf.circuit_2};
}

int cmd_distinguish(const Options& opt, bool as_fault_detect) {
    const Timer timer;
    const ProblemFile pf = load(opt);
    const auto [c1, c2] = load_pair(opt, pf);
    if (!pf.device) throw ParseError(opt.system_file + ": needs a device circuit to decide");

    StateVector probe = pf.probe ? *pf.probe : optimal_input(c1, c2, opt.seed).probe;
    const DistinguisherPlan plan = build_circuit_distinguisher(c1, c2, probe);
    const Verdict verdict = decide(plan, *pf.device, opt.prob_tol);

    const char* name = as_fault_detect
                           ? (verdict == Verdict::IsC1 ? "fault-free" : "faulty")
                           : (verdict == Verdict::IsC1 ? "circuit1" : "circuit2");
    if (json_mode(opt))
        std::printf("{\"verdict\":\"%s\",\"epsilon\":\"%s\",\"queries\":%lld,\"ms\":\"%s\"}\n",
                    name, format_double(plan.epsilon).c_str(),
                    static_cast<long long>(plan.plan.query_count()),
                    format_double(timer.ms()).c_str());
    else
        std::printf("verdict: %s  (separation %.9f, %lld calls, %.2f ms)\n", name, plan.epsilon,
                    static_cast<long long>(plan.plan.query_count()), timer.ms());
    return kExitOk;
}

int cmd_optimal_input(const Options& opt) {
    const ProblemFile pf = load(opt);
    const auto [c1, c2] = load_pair(opt, pf);
    const OptimalInput best = optimal_input(c1, c2, opt.seed);
    if (json_mode(opt)) {
        std::printf("{\"epsilon\":\"%s\",\"probe\":[", format_double(best.epsilon).c_str());
        for (Eigen::Index i = 0; i < best.probe.amplitudes.size(); ++i)
            std::printf("%s[\"%s\",\"%s\"]", i ? "," : "",
                        format_double(best.probe.amplitudes(i).real()).c_str(),
                        format_double(best.probe.amplitudes(i).imag()).c_str());
        std::printf("]}\n");
    } else {
        std::printf("epsilon* = %.12f\nprobe amplitudes:\n", best.epsilon);
        for (Eigen::Index i = 0; i < best.probe.amplitudes.size(); ++i)
            std::printf("  [%lld]  %+.12f %+.12fi\n", static_cast<long long>(i),
                        best.probe.amplitudes(i).real(), best.probe.amplitudes(i).imag());
    }
    return kExitOk;
}

int cmd_derandomize(const Options& opt) {
    const Timer timer;
    const ProblemFile pf = load(opt);
    std::vector<VerdictRow> verdicts;
    std::int64_t queries = 0;
    bool uniform = false;
    if (pf.fixture) {
        const FamilyDerandomization d = derandomize_family(*pf.fixture, opt.prob_tol);
        verdicts = d.verdicts;
        queries = d.plan.query_count();
        // one shared circuit serves every input
        uniform = d.circuit.structure() == d.uniform.circuit.structure();
    } else if (pf.oracle_fixture) {
        SeparablePromise promise = promise_from(opt, pf);
        const OracleDerandomization d =
            derandomize_oracle(*pf.oracle_fixture, promise, opt.prob_tol);
        verdicts = d.verdicts;
        queries = d.plan.query_count();
        // per-input circuits differ only in oracle bindings
        uniform = true;
        const std::string first =
            d.template_bound.bound(kOracleSlot, pf.oracle_fixture->oracle_for(0)).structure();
        for (size_t x = 1; x < pf.oracle_fixture->truth.size(); ++x)
            uniform = uniform &&
                      d.template_bound.bound(kOracleSlot, pf.oracle_fixture->oracle_for(x))
                              .structure() == first;
    } else {
        throw ParseError(opt.system_file + ": needs a fixture or oracle_fixture");
    }
    if (!uniform) throw Error("transformed circuits are not uniform off the call sites");

    if (json_mode(opt)) {
        std::printf("{\"queries\":%lld,\"verdicts\":[", static_cast<long long>(queries));
        for (size_t i = 0; i < verdicts.size(); ++i)
            std::printf("%s{\"x\":%lld,\"decided\":%s,\"p\":\"%s\"}", i ? "," : "",
                        static_cast<long long>(verdicts[i].x),
                        verdicts[i].decided ? "true" : "false",
                        format_double(verdicts[i].p).c_str());
        std::printf("],\"uniform\":%s,\"ms\":\"%s\"}\n", uniform ? "true" : "false",
                    format_double(timer.ms()).c_str());
    } else {
        std::printf("%lld black-box calls; uniform off the black-box sites: %s\n",
                    static_cast<long long>(queries), uniform ? "yes" : "no");
        for (const auto& row : verdicts)
            std::printf("  x=%-4lld -> %d   (p_E = %.12f)\n", static_cast<long long>(row.x),
                        row.decided ? 1 : 0, row.p);
        std::printf("(%.2f ms)\n", timer.ms());
    }
    return kExitOk;
}

int cmd_schedule(const Options& opt) {
    if (opt.epsilon_text.empty()) throw ParseError("missing --epsilon");
    const double eps = parse_double(opt.epsilon_text);
    const Schedule s = amplification_schedule(eps);
    std::int64_t chain_calls = 1;
    for (int j = 0; j < s.k(); ++j) chain_calls *= 3;
    const auto plan = build_perfect_distinguisher(SeparablePromise(0.0, eps));

    if (json_mode(opt)) {
        std::printf("{\"k\":%d,\"epsilons\":[", s.k());
        for (int j = 0; j < s.k(); ++j)
            std::printf("%s\"%s\"", j ? "," : "", format_double(s.epsilons[j]).c_str());
        std::printf("],\"chain_calls\":%lld,\"plan_calls\":%lld}\n",
                    static_cast<long long>(chain_calls),
                    static_cast<long long>(plan.query_count()));
    } else {
        std::printf("k = %d\n", s.k());
        for (int j = 0; j < s.k(); ++j)
            std::printf("  eps_%d = %.12f\n", j + 1, s.epsilons[j]);
        std::printf("calls %lld (chain), %lld (full plan for promise (0, eps))\n",
                    static_cast<long long>(chain_calls),
                    static_cast<long long>(plan.query_count()));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact amplitude amplification toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--qubit-budget", opt.budget, "dense simulation cap (default 14)");
    app.add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opt.seed, "seed for optimizer restarts");
    app.add_option("--prob-tol", opt.prob_tol, "probability assertion tolerance");
    app.add_option("--op-tol", opt.op_tol, "operator identity tolerance");
    app.add_option("--norm-tol", opt.norm_tol, "state norm tolerance");

    auto add_system = [&](CLI::App* cmd) {
        cmd->add_option("--system", opt.system_file, "problem file");
    };

    auto* simulate = app.add_subcommand("simulate", "outcome distribution of a system");
    add_system(simulate);

    auto* amplify = app.add_subcommand("amplify", "build and apply a perfect distinguisher");
    add_system(amplify);
    amplify->add_option("--promise", opt.promise_text, "delta,epsilon as decimals");
    amplify->add_flag("--verify", opt.verify, "re-simulate each stage against the ledger");
    amplify->add_option("--out", opt.out_file, "write the transformed system here");

    auto* distinguish = app.add_subcommand("distinguish", "decide which circuit a device is");
    add_system(distinguish);
    auto* fault = app.add_subcommand("fault-detect", "decide fault-free vs. fault model");
    add_system(fault);

    auto* optin = app.add_subcommand("optimal-input", "probe maximizing the separation");
    add_system(optin);

    auto* derand = app.add_subcommand("derandomize", "decide a fixture deterministically");
    add_system(derand);
    derand->add_option("--promise", opt.promise_text, "delta,epsilon for oracle fixtures");

    auto* schedule = app.add_subcommand("schedule", "amplification chain for an epsilon");
    schedule->add_option("--epsilon", opt.epsilon_text, "initial probability, decimal");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    try {
        set_qubit_budget(opt.budget);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (amplify->parsed()) return cmd_amplify(opt);
        if (distinguish->parsed()) return cmd_distinguish(opt, false);
        if (fault->parsed()) return cmd_distinguish(opt, true);
        if (optin->parsed()) return cmd_optimal_input(opt);
        if (derand->parsed()) return cmd_derandomize(opt);
        if (schedule->parsed()) return cmd_schedule(opt);
        std::fprintf(stderr, "no subcommand\n");
        return kExitParse;
    } catch (const PromiseViolation& e) {
        std::fprintf(stderr, "promise violation: %s\n", e.what());
        return kExitPromise;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitParse;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    }
}

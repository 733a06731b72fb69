#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weylab/budget.hpp"
#include "weylab/config.hpp"
#include "weylab/diophantine.hpp"
#include "weylab/expsum.hpp"
#include "weylab/fixedreal.hpp"
#include "weylab/fracsearch.hpp"
#include "weylab/kprofile.hpp"
#include "weylab/meanvalue.hpp"
#include "weylab/rng.hpp"
#include "weylab/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace weylab;

constexpr const char* kVersion = "0.1.0";

std::vector<int> parse_profile(const std::string& text) {
    std::vector<int> exps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) exps.push_back(std::stoi(item));
    return exps;
}

std::vector<long> parse_grid(const std::string& text) {
    std::vector<long> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) xs.push_back(std::stol(item));
    return xs;
}

struct Output {
    std::optional<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }

    void open(const std::string& path) {
        if (path.empty()) return;
        file.emplace(path);
        if (!*file) throw std::invalid_argument("cannot open --out " + path);
    }
};

json record(const std::string& sub, const json& params, const json& result,
            double elapsed_ms, std::uint64_t seed) {
    return json{{"subcommand", sub}, {"params", params},
                {"result", result}, {"elapsed_ms", elapsed_ms},
                {"seed", seed},     {"version", kVersion}};
}

json sigma_json(const ExponentProfile& profile) {
    const auto sig = sigma_exponent(profile);
    const auto th = thresholds(profile);
    return json{
        {"profile", profile.exps()},
        {"missing", profile.missing_exponents()},
        {"sigma",
         {{"num", sig.sigma.get_num().get_si()},
          {"den", sig.sigma.get_den().get_si()},
          {"l", sig.l}}},
        {"D", th.D},
        {"L", th.L},
        {"thresholds",
         {{"s_min_single", th.s_thm11},
          {"s_threshold_general", th.s_thm12},
          {"s_mv_major", th.s_mv_major},
          {"s_mv_minor", th.s_mv_minor}}}};
}

void write_arcs_csv(const std::string& path, const ArcSet& arcs) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open --csv " + path);
    out << "lo,hi,q,a\n";
    out.precision(17);
    for (const auto& iv : arcs.intervals())
        out << iv.lo << "," << iv.hi << "," << iv.q << "," << iv.a << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"weylab: exponential-sum and fractional-part laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--out", out_path, "write JSON records here instead of stdout");
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--seed", seed_flag, "seed override");

    // sigma
    auto* sigma_cmd = app.add_subcommand("sigma", "exponent calculus for a profile");
    std::string sigma_profile;
    sigma_cmd->add_option("--profile", sigma_profile, "comma list, e.g. 10,9,8")
        ->required();

    // sum
    auto* sum_cmd = app.add_subcommand("sum", "evaluate an exponential sum");
    std::vector<std::string> sum_coeffs;
    long sum_X = 0;
    sum_cmd->add_option("--coeff", sum_coeffs,
                        "exponent=value (fraction, decimal, or sqrt2|pi|golden)")
        ->required();
    sum_cmd->add_option("-X", sum_X, "summation length")->required();

    // arcs
    auto* arcs_cmd = app.add_subcommand("arcs", "arc classification and arc sets");
    std::string arcs_alpha, arcs_csv;
    long arcs_X = 0;
    int arcs_k = 0, arcs_l = 2;
    double arcs_H = 0.0;
    bool arcs_set = false;
    arcs_cmd->add_option("--alpha", arcs_alpha, "value to classify");
    arcs_cmd->add_option("-X", arcs_X, "scale")->required();
    arcs_cmd->add_option("-k", arcs_k, "top exponent")->required();
    arcs_cmd->add_option("--l", arcs_l, "arc parameter l");
    arcs_cmd->add_option("--H", arcs_H, "use the strict H-threshold instead");
    arcs_cmd->add_flag("--set", arcs_set, "emit the major arc set");
    arcs_cmd->add_option("--csv", arcs_csv, "write the arc set as CSV");

    // meanvalue
    auto* mv_cmd = app.add_subcommand("meanvalue", "solution counts and arc mean values");
    std::string mv_profile, mv_arcs = "full", mv_backend = "hashed", mv_grid, mv_dist_csv;
    long mv_s = 0;
    int mv_l = 2;
    mv_cmd->add_option("--profile", mv_profile, "comma list")->required();
    mv_cmd->add_option("-s", mv_s, "variable pairs")->required();
    mv_cmd->add_option("-X", mv_grid, "X or comma grid")->required();
    mv_cmd->add_option("--arcs", mv_arcs, "full|major|minor");
    mv_cmd->add_option("--l", mv_l, "arc parameter l");
    mv_cmd->add_option("--backend", mv_backend, "hashed|brute");
    mv_cmd->add_option("--dist-csv", mv_dist_csv, "dump the distribution (d,c_d)");

    // minfrac
    auto* mf_cmd = app.add_subcommand("minfrac", "minimize the fractional part over a box");
    std::string mf_profile, mf_alpha = "random", mf_engine = "mitm", mf_grid, mf_csv;
    long mf_s = 0;
    mf_cmd->add_option("--profile", mf_profile, "comma list")->required();
    mf_cmd->add_option("-s", mf_s, "variable count")->required();
    mf_cmd->add_option("-X", mf_grid, "X or comma grid")->required();
    mf_cmd->add_option("--alpha", mf_alpha,
                       "random | file:<path> | comma list of values");
    mf_cmd->add_option("--engine", mf_engine, "mitm|exhaustive");
    mf_cmd->add_option("--csv", mf_csv, "write (X,min,sigma_emp) rows");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    std::string verify_suite = "fast";
    verify_cmd->add_option("--suite", verify_suite, "fast|full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    apply_env_overrides(cfg);
    if (seed_flag) cfg.seed = *seed_flag;
    cfg.validate();
    install_budgets(cfg);

    Output out;
    out.open(out_path);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    if (*sigma_cmd) {
        const ExponentProfile profile(parse_profile(sigma_profile));
        out.stream() << record("sigma", {{"profile", sigma_profile}},
                               sigma_json(profile), elapsed_ms(), cfg.seed)
                     << "\n";
        return 0;
    }

    if (*sum_cmd) {
        PhasePolynomial phase;
        for (const auto& spec : sum_coeffs) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--coeff expects exponent=value");
            phase.set(std::stoi(spec.substr(0, eq)),
                      FixedReal::parse(spec.substr(eq + 1)));
        }
        const Complex v = eval_sum(phase, sum_X);
        out.stream() << record("sum",
                               {{"coeffs", sum_coeffs}, {"X", sum_X}},
                               {{"re", v.real()},
                                {"im", v.imag()},
                                {"abs", std::abs(v)}},
                               elapsed_ms(), cfg.seed)
                     << "\n";
        return 0;
    }

    if (*arcs_cmd) {
        json result;
        if (arcs_set || !arcs_csv.empty()) {
            const ArcSet arcs = ArcSet::major_arcs(arcs_X, arcs_k, arcs_l);
            if (!arcs_csv.empty()) write_arcs_csv(arcs_csv, arcs);
            json ivs = json::array();
            for (const auto& iv : arcs.intervals())
                ivs.push_back({{"lo", iv.lo}, {"hi", iv.hi},
                               {"q", iv.q}, {"a", iv.a}});
            result["arc_set"] = ivs;
            result["measure"] = arcs.measure();
        }
        if (!arcs_alpha.empty()) {
            const FixedReal alpha = FixedReal::parse(arcs_alpha);
            const ArcVerdict v =
                arcs_H > 0.0 ? classify_arc_H(alpha, arcs_X, arcs_k, arcs_H)
                             : classify_arc(alpha, arcs_X, arcs_k, arcs_l);
            result["major"] = v.major;
            if (v.witness)
                result["witness"] = {{"a", v.witness->a.get_str()},
                                     {"q", v.witness->q.get_str()},
                                     {"err", v.witness->err_d()}};
        }
        out.stream() << record("arcs",
                               {{"alpha", arcs_alpha}, {"X", arcs_X},
                                {"k", arcs_k}, {"l", arcs_l}, {"H", arcs_H}},
                               result, elapsed_ms(), cfg.seed)
                     << "\n";
        return 0;
    }

    if (*mv_cmd) {
        const ExponentProfile profile(parse_profile(mv_profile));
        const auto backend =
            mv_backend == "brute" ? CountBackend::brute : CountBackend::hashed;
        for (long X : parse_grid(mv_grid)) {
            json result;
            const auto t0 = std::chrono::steady_clock::now();
            if (mv_arcs == "full") {
                const auto c = profile_count(profile, mv_s, X, backend);
                result["count"] = c.count.get_str();
            } else {
                const auto dist = solution_distribution(profile, mv_s, X);
                ArcSet arcs = ArcSet::major_arcs(X, profile.k(), mv_l);
                if (mv_arcs == "minor") arcs = arcs.complement();
                result["value"] = arc_meanvalue(dist, arcs);
                result["distribution_size"] = dist.counts.size();
                if (!mv_dist_csv.empty()) {
                    std::ofstream csv(mv_dist_csv);
                    if (!csv)
                        throw std::invalid_argument("cannot open --dist-csv");
                    csv << "d,c_d\n";
                    for (const auto& [d, c] : dist.counts)
                        csv << d.get_str() << "," << c.get_str() << "\n";
                }
            }
            result["elapsed_ms"] =
                std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
            out.stream() << record("meanvalue",
                                   {{"profile", mv_profile}, {"s", mv_s},
                                    {"X", X}, {"arcs", mv_arcs},
                                    {"l", mv_l}, {"backend", mv_backend}},
                                   result, elapsed_ms(), cfg.seed)
                         << "\n";
        }
        return 0;
    }

    if (*mf_cmd) {
        const ExponentProfile profile(parse_profile(mf_profile));
        CounterRng rng(cfg.seed);
        std::vector<std::vector<FixedReal>> coeffs;  // [variable][exponent]
        if (mf_alpha == "random") {
            for (long i = 0; i < mf_s; ++i) {
                std::vector<FixedReal> row;
                for (int j = 0; j < profile.t(); ++j)
                    row.push_back(rng.next_fixed());
                coeffs.push_back(row);
            }
        } else {
            std::vector<std::string> items;
            if (mf_alpha.rfind("file:", 0) == 0) {
                std::ifstream in(mf_alpha.substr(5));
                if (!in) throw std::invalid_argument("cannot open alpha file");
                std::string line;
                while (std::getline(in, line))
                    if (!line.empty()) items.push_back(line);
            } else {
                std::stringstream ss(mf_alpha);
                std::string item;
                while (std::getline(ss, item, ',')) items.push_back(item);
            }
            if (static_cast<long>(items.size()) !=
                mf_s * profile.t())
                throw std::invalid_argument(
                    "expected s*t coefficient values, got " +
                    std::to_string(items.size()));
            for (long i = 0; i < mf_s; ++i) {
                std::vector<FixedReal> row;
                for (int j = 0; j < profile.t(); ++j)
                    row.push_back(
                        FixedReal::parse(items[i * profile.t() + j]));
                coeffs.push_back(row);
            }
        }

        mpq_class sigma_target = sigma_exponent(profile).sigma;
        if (profile.t() == 1 && mf_s >= profile.k() + 2)
            sigma_target = sigma_sk(mf_s, profile.k());

        std::optional<std::ofstream> csv;
        if (!mf_csv.empty()) {
            csv.emplace(mf_csv);
            if (!*csv) throw std::invalid_argument("cannot open --csv");
            *csv << "X,min,sigma_emp\n";
        }
        std::vector<std::pair<long, double>> runs;
        const auto grid = parse_grid(mf_grid);
        for (long X : grid) {
            PolySystem sys;
            sys.X = X;
            for (long i = 0; i < mf_s; ++i) {
                PhasePolynomial p;
                for (int j = 0; j < profile.t(); ++j)
                    if (!coeffs[i][j].is_zero())
                        p.set(profile.exps()[j], coeffs[i][j]);
                sys.phis.push_back(p);
            }
            const MinResult res =
                mf_engine == "exhaustive" ? exhaustive_min(sys) : mitm_min(sys);
            runs.emplace_back(X, res.value_d());
            const double target = std::pow(static_cast<double>(X),
                                           -sigma_target.get_d() + cfg.epsilon);
            out.stream() << record(
                                "minfrac",
                                {{"profile", mf_profile}, {"s", mf_s},
                                 {"X", X}, {"alpha", mf_alpha},
                                 {"engine", mf_engine}},
                                {{"min", res.value_d()},
                                 {"argmin", res.argmin},
                                 {"engine", mf_engine},
                                 {"sigma_target", sigma_target.get_d()},
                                 {"pass", res.value_d() <= target}},
                                elapsed_ms(), cfg.seed)
                         << "\n";
        }
        if (csv) {
            double sigma_emp = 0.0;
            bool have_fit = false;
            try {
                sigma_emp = exponent_fit(runs).sigma_emp;
                have_fit = true;
            } catch (const std::invalid_argument&) {
            }
            csv->precision(17);
            for (const auto& [X, v] : runs)
                *csv << X << "," << v << ","
                     << (have_fit ? std::to_string(sigma_emp) : "") << "\n";
        }
        return 0;
    }

    if (*verify_cmd) {
        if (verify_suite != "fast" && verify_suite != "full")
            throw CLI::ValidationError("--suite must be fast or full");
        VerifyOptions opt;
        opt.full = verify_suite == "full";
        opt.seed = cfg.seed;
        opt.epsilon = cfg.epsilon;
        opt.lemma_floor = cfg.lemma_floor;
        opt.slope_slack = cfg.slope_slack;
        const VerifyReport report = run_verify(opt, std::cerr);
        json crits = json::array();
        for (const auto& c : report.criteria)
            crits.push_back({{"id", c.id}, {"name", c.name},
                             {"ran", c.ran}, {"hard", c.hard},
                             {"pass", c.pass}, {"detail", c.detail},
                             {"elapsed_s", c.elapsed_s}});
        out.stream() << record("verify", {{"suite", verify_suite}},
                               {{"criteria", crits},
                                {"all_pass", report.all_pass()}},
                               elapsed_ms(), cfg.seed)
                     << "\n";
        return report.all_pass() ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const weylab::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "corrkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "corrkit/arithmetic.hpp"
#include "corrkit/averaged.hpp"
#include "corrkit/correlations.hpp"
#include "corrkit/distribution.hpp"
#include "corrkit/intervalstats.hpp"
#include "corrkit/parallel.hpp"
#include "corrkit/report.hpp"
#include "corrkit/seqgen.hpp"
#include "corrkit/stirling.hpp"
#include "corrkit/verify.hpp"

namespace corrkit {

namespace {

// Parameter errors that should exit with code 4.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SourceOptions {
    std::string input;
    std::string kind = "uniform";
    std::size_t n = 1000;
    double alpha = 0.0;
    int degree = 1;
    std::uint64_t seed = 1;
    std::string integers;
};

void add_source_options(CLI::App* app, SourceOptions& src) {
    app->add_option("-i,--input", src.input, "Point file, one value in [0,1) per line");
    app->add_option("--kind", src.kind, "Generator: uniform, kronecker, polynomial, dilated, dyadic, vdc")
        ->capture_default_str();
    app->add_option("-n,--n", src.n, "Number of generated points")->capture_default_str();
    app->add_option("--alpha", src.alpha, "Multiplier for kronecker, polynomial and dilated");
    app->add_option("--degree", src.degree, "Polynomial degree")->capture_default_str();
    app->add_option("--seed", src.seed, "Seed of the uniform generator")->capture_default_str();
    app->add_option("--integers", src.integers, "Integer file for the dilated generator");
}

std::vector<std::uint64_t> load_integers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open integer file " + path);
    try {
        return read_integers(in);
    } catch (const std::runtime_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

GeneratorSpec make_spec(const SourceOptions& src) {
    const auto kind = parse_sequence_kind(src.kind);
    if (!kind) throw std::invalid_argument("unknown generator kind '" + src.kind + "'");
    GeneratorSpec spec;
    spec.kind = *kind;
    spec.alpha = src.alpha;
    spec.degree = src.degree;
    spec.seed = src.seed;
    if (!src.integers.empty()) spec.integers = load_integers(src.integers);
    return spec;
}

PointSequence load_points(const SourceOptions& src) {
    if (!src.input.empty()) {
        try {
            return read_points_file(src.input);
        } catch (const std::runtime_error& e) {
            throw InputError(e.what());
        }
    }
    return generate(make_spec(src), src.n);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

std::pair<double, double> parse_pair(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected lo:hi, got '" + text + "'");
    const auto lo = parse_list(text.substr(0, colon)), hi = parse_list(text.substr(colon + 1));
    if (lo.size() != 1 || hi.size() != 1) throw std::invalid_argument("expected lo:hi, got '" + text + "'");
    return {lo[0], hi[0]};
}

std::vector<double> scale_list(const std::string& text, int k) {
    auto scales = parse_list(text);
    if (scales.size() == 1 && k > 2) scales.assign(static_cast<std::size_t>(k - 1), scales[0]);
    if (static_cast<int>(scales.size()) != k - 1) {
        throw std::invalid_argument("expected 1 or k-1 = " + std::to_string(k - 1) + " scales");
    }
    return scales;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Statistic for `sweep`: name, value at (seq, s) and its Poissonian target.
struct SweepStat {
    enum class Kind { correlation, factorial, power, bell } kind;
    int k;
};

SweepStat parse_stat(const std::string& name) {
    auto order = [&](std::size_t prefix, std::size_t suffix) {
        const std::string digits = name.substr(prefix, name.size() - prefix - suffix);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("unknown statistic '" + name + "'");
        }
        const int k = std::stoi(digits);
        if (k < 2 || k > 16) throw std::invalid_argument("statistic order must lie in [2, 16]");
        return k;
    };
    if (name.rfind("bell", 0) == 0) return {SweepStat::Kind::bell, order(4, 0)};
    if (name.size() > 5 && name.rfind("star") == name.size() - 4 && name[0] == 'i') {
        return {SweepStat::Kind::power, order(1, 4)};
    }
    if (name.rfind("i", 0) == 0) return {SweepStat::Kind::factorial, order(1, 0)};
    if (name.rfind("r", 0) == 0) return {SweepStat::Kind::correlation, order(1, 0)};
    throw std::invalid_argument("unknown statistic '" + name + "'");
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"corrkit: correlation statistics of sequences modulo one"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker thread cap (0 = hardware concurrency)");
    std::string output;
    std::string format = "json";

    SourceOptions src;

    auto* gen = app.add_subcommand("gen", "Write a generated point sequence");
    add_source_options(gen, src);
    gen->add_option("-o,--output", output, "Output file (default stdout)");

    int k = 2;
    std::string scales_text, boxes_text;
    bool star = false;
    auto* corr = app.add_subcommand("corr", "k-th order correlation count");
    add_source_options(corr, src);
    corr->add_option("-k,--k", k, "Order")->capture_default_str();
    corr->add_option("-s,--s", scales_text, "Scale or comma list of k-1 scales");
    corr->add_option("--box", boxes_text, "Comma list of k-1 intervals a:b (signed scaled differences)");
    corr->add_flag("--star", star, "Allow repeated indices");
    corr->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    corr->add_option("-o,--output", output, "Output file (default stdout)");

    std::string interval;
    auto* cstar = app.add_subcommand("cstar", "Averaged correlation C_k^*");
    add_source_options(cstar, src);
    cstar->add_option("-k,--k", k, "Order")->capture_default_str();
    cstar->add_option("-s,--s", scales_text, "Scale or comma list of k-1 scales")->required();
    cstar->add_option("--interval", interval, "Restrict indices to [lo, hi) given as lo:hi");
    cstar->add_option("-o,--output", output, "Output file (default stdout)");

    double s = 1.0;
    auto* mom = app.add_subcommand("moments", "Moments of the counting function F(t,s,N)");
    add_source_options(mom, src);
    mom->add_option("-k,--k", k, "Order")->capture_default_str();
    mom->add_option("-s,--s", s, "Scale")->capture_default_str();
    mom->add_option("-o,--output", output, "Output file (default stdout)");

    std::uint64_t range = 0;
    std::string integer_file;
    auto* energy = app.add_subcommand("energy", "Additive energy and 3-AP count");
    energy->add_option("--integers", integer_file, "Integer file");
    energy->add_option("--range", range, "Use {1, ..., R}");
    energy->add_option("-n,--n", src.n, "Use the first N elements (default all)");
    energy->add_option("-o,--output", output, "Output file (default stdout)");

    std::size_t trials = 100;
    std::uint64_t seed = 1;
    auto* metric = app.add_subcommand("metric", "R_3 over random dilations {a_n alpha}");
    metric->add_option("--integers", integer_file, "Integer file");
    metric->add_option("--range", range, "Use {1, ..., R}");
    metric->add_option("-n,--n", src.n, "Number of terms")->capture_default_str();
    metric->add_option("-s,--s", s, "Scale")->capture_default_str();
    metric->add_option("--trials", trials, "Number of alpha samples")->capture_default_str();
    metric->add_option("--seed", seed, "Seed")->capture_default_str();
    metric->add_option("-o,--output", output, "Output file (default stdout)");

    int level = 6;
    auto* dist = app.add_subcommand("dist", "Dyadic masses, density functional and star discrepancy");
    add_source_options(dist, src);
    dist->add_option("-r,--r", level, "Dyadic level")->capture_default_str();
    dist->add_option("-k,--k", k, "Moment order")->capture_default_str();
    dist->add_option("-o,--output", output, "Output file (default stdout)");

    bool quick = false, full = false;
    std::uint64_t verify_seed = 7;
    auto* verify = app.add_subcommand("verify", "Run the identity and inequality suite");
    verify->add_flag("--quick", quick, "Exact identities and small oracles (default)");
    verify->add_flag("--full", full, "Also run the N = 10^5 statistical checks");
    verify->add_option("--seed", verify_seed, "Seed")->capture_default_str();
    verify->add_option("-o,--output", output, "Output file (default stdout)");

    std::string stat = "r2", sizes_text = "1000,10000,100000";
    auto* sweep = app.add_subcommand("sweep", "Statistic against N as CSV");
    add_source_options(sweep, src);
    sweep->add_option("--stat", stat, "r<k>, i<k>, i<k>star or bell<k>")->capture_default_str();
    sweep->add_option("-s,--s", s, "Scale")->capture_default_str();
    sweep->add_option("--N", sizes_text, "Increasing comma list of sizes")->capture_default_str();
    sweep->add_option("-o,--output", output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    set_max_threads(threads);

    try {
        Output out(output);
        std::ostream& os = out.stream();
        if (*gen) {
            write_points(os, load_points(src));
        } else if (*corr) {
            const auto seq = load_points(src);
            CorrelationReport rep;
            if (!boxes_text.empty()) {
                std::vector<BoxVector::Interval> iv;
                std::stringstream ss(boxes_text);
                std::string item;
                while (std::getline(ss, item, ',')) iv.push_back(parse_pair(item));
                if (static_cast<int>(iv.size()) != k - 1) {
                    throw std::invalid_argument("expected k-1 = " + std::to_string(k - 1) + " boxes");
                }
                const BoxVector bv(iv);
                rep = star ? brute_force_r_k(seq, bv, true) : r_k_box(seq, bv);
            } else {
                if (scales_text.empty()) throw std::invalid_argument("corr needs --s or --box");
                const ScaleVector sv(scale_list(scales_text, k));
                rep = star ? r_k_star(seq, sv) : r_k_distinct(seq, sv);
            }
            if (format == "csv") {
                write_csv(os, {rep});
            } else {
                os << to_json(rep).dump(2) << '\n';
            }
        } else if (*cstar) {
            const auto seq = load_points(src);
            const auto scales = scale_list(scales_text, k);
            nlohmann::json j{{"schema", kSchema}, {"statistic", "C_k_star"}, {"k", k}, {"N", seq.size()},
                             {"scales", scales}};
            if (!interval.empty()) {
                const auto [lo, hi] = parse_pair(interval);
                for (double v : scales) {
                    if (v != scales[0]) throw std::invalid_argument("--interval needs equal scales");
                }
                j["interval"] = {lo, hi};
                j["value"] = c_k_star_local(seq, scales[0], lo, hi, k);
            } else {
                j["value"] = c_k_star(seq, ScaleVector(scales));
            }
            os << j.dump(2) << '\n';
        } else if (*mom) {
            const auto seq = load_points(src);
            auto j = to_json(moments(seq, s, k));
            j["bell_prediction"] = bell_prediction(k, s);
            j["factorial_target"] = std::pow(s, k);
            os << j.dump(2) << '\n';
        } else if (*energy || *metric) {
            if (integer_file.empty() == (range == 0)) throw std::invalid_argument("give exactly one of --integers, --range");
            IntegerSet set = range ? IntegerSet::range(range) : IntegerSet(load_integers(integer_file));
            if (*energy) {
                const std::size_t n = energy->count("--n") ? src.n : set.size();
                const IntegerSet a = set.prefix(n);
                const double nd = static_cast<double>(n);
                const u128 e = additive_energy(a), t = three_ap_count(a);
                nlohmann::json j{{"schema", kSchema},
                                 {"N", n},
                                 {"energy", to_decimal(e)},
                                 {"three_ap", to_decimal(t)},
                                 {"energy_over_N3", static_cast<double>(e) / (nd * nd * nd)},
                                 {"three_ap_over_N2", static_cast<double>(t) / (nd * nd)}};
                os << j.dump(2) << '\n';
            } else {
                os << to_json(metric_r3_experiment(set, s, src.n, trials, seed)).dump(2) << '\n';
            }
        } else if (*dist) {
            const auto seq = load_points(src);
            const auto profile = dyadic_profile(seq, level);
            nlohmann::json j{{"schema", kSchema},
                             {"N", seq.size()},
                             {"k", k},
                             {"profile", to_json(profile)},
                             {"density_functional", density_moment_lower_bound(profile, k)},
                             {"star_discrepancy", star_discrepancy(seq)}};
            os << j.dump(2) << '\n';
        } else if (*verify) {
            if (quick && full) throw std::invalid_argument("--quick and --full are exclusive");
            const auto rep = run_verify(VerifyOptions{full, verify_seed});
            os << to_json(rep).dump(2) << '\n';
            for (const auto& e : rep.entries) {
                std::cerr << to_string(e.status) << "  " << e.name << "  measured=" << fmt(e.measured) << '\n';
            }
            return rep.passed() ? 0 : 1;
        } else if (*sweep) {
            const SweepStat st = parse_stat(stat);
            const auto sizes = parse_list(sizes_text);
            os << "N,statistic,target,deviation\n";
            double previous = 0.0;
            for (double nd : sizes) {
                if (!(nd >= 1.0) || nd != std::floor(nd) || nd <= previous) {
                    throw std::invalid_argument("--N must be an increasing list of positive integers");
                }
                previous = nd;
                const auto n = static_cast<std::size_t>(nd);
                double value = 0.0, target = 0.0;
                switch (st.kind) {
                    case SweepStat::Kind::correlation: {
                        const auto seq = src.input.empty() ? generate(make_spec(src), n) : load_points(src).prefix(n);
                        value = r_k_distinct(seq, ScaleVector::uniform(st.k, s)).value;
                        target = std::pow(2.0 * s, st.k - 1);
                        break;
                    }
                    case SweepStat::Kind::factorial:
                    case SweepStat::Kind::power: {
                        const auto seq = src.input.empty() ? generate(make_spec(src), n) : load_points(src).prefix(n);
                        const auto m = moments(seq, s, st.k);
                        value = st.kind == SweepStat::Kind::factorial ? m.i_k : m.i_k_star;
                        target = st.kind == SweepStat::Kind::factorial ? std::pow(s, st.k) : bell_prediction(st.k, s);
                        break;
                    }
                    case SweepStat::Kind::bell:
                        value = target = bell_prediction(st.k, s);
                        break;
                }
                os << n << ',' << fmt(value) << ',' << fmt(target) << ',' << fmt(std::fabs(value - target)) << '\n';
            }
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: oracle budget exceeded: " << e.what() << '\n';
        return 5;
    } catch (const InputError& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: parameter out of range: " << e.what() << '\n';
        return 4;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: parameter out of range: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace corrkit

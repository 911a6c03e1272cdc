#include <qtrank/cli.hpp>

#include <qtrank/census.hpp>
#include <qtrank/fpcount.hpp>
#include <qtrank/rankbound.hpp>
#include <qtrank/sieve.hpp>
#include <qtrank/systems.hpp>
#include <qtrank/util.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qtrank {

namespace {

constexpr const char* kVersion = "0.1.0";

IntPoly int_poly(std::vector<Int> cs) { return IntPoly(std::move(cs)); }

// Temporarily overrides the worker-count environment variable; the library
// reads it through default_workers() on every call.
class WorkerOverride {
public:
    explicit WorkerOverride(int workers) {
        if (workers <= 0) return;
        const char* old = std::getenv("QTRANK_WORKERS");
        if (old) saved_ = old;
        had_ = old != nullptr;
        active_ = true;
        setenv("QTRANK_WORKERS", std::to_string(workers).c_str(), 1);
    }
    ~WorkerOverride() {
        if (!active_) return;
        if (had_)
            setenv("QTRANK_WORKERS", saved_.c_str(), 1);
        else
            unsetenv("QTRANK_WORKERS");
    }

private:
    bool active_ = false;
    bool had_ = false;
    std::string saved_;
};

std::string join_command_line(int argc, const char* const* argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        std::string a = argv[i];
        if (a.find(' ') != std::string::npos)
            s += '"' + a + '"';
        else
            s += a;
    }
    return s;
}

// Reproducibility header. Comment-tolerant bodies (CSV, bare numbers) carry
// it inline as '#' lines; bare-JSON bodies get it on the diagnostic stream
// instead, so stdout stays parseable. The timestamp lives here and only
// here, which is what keeps repeated runs byte-identical below the header.
void write_header(std::ostream& os, const std::string& command,
                  std::optional<uint64_t> seed) {
    os << "# qtrank " << kVersion << '\n';
    os << "# command: " << command << '\n';
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    os << "# date: " << buf << '\n';
    if (seed) os << "# seed: " << *seed << '\n';
}

long long ipow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::string format_fp_coeffs(const FpPoly& u) {
    if (u.c.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < u.c.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(u.c[i]);
    }
    return s;
}

nlohmann::ordered_json json_or_null_int(const std::optional<int>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

struct RankBoundArgs {
    std::string a = "0", b = "0", c;
};

int run_rank_bound(const RankBoundArgs& args, const std::string& command,
                   std::ostream& out, std::ostream& err) {
    FamilyCurve curve{parse_coeff_list(args.a), parse_coeff_list(args.b),
                      parse_coeff_list(args.c)};
    RankBoundResult r = rank_upper_bound(curve);
    write_header(err, command, std::nullopt);
    nlohmann::ordered_json j;
    j["kind"] = certificate_kind_name(r.kind);
    j["omega"] = json_or_null_int(r.omega);
    j["bound"] = json_or_null_int(r.bound);
    if (r.certificate) {
        auto arr = nlohmann::ordered_json::array();
        for (const Int& c : r.certificate->coeffs()) arr.push_back(c.str());
        j["certificate"] = arr;
    } else {
        j["certificate"] = nullptr;
    }
    j["isotrivial"] = r.isotrivial;
    j["singular"] = r.singular;
    out << j.dump(2) << '\n';
    return 0;
}

struct CensusArgs {
    std::string kind;
    std::vector<long long> heights;
    std::string mode = "exact";
    uint64_t seed = 1;
    long long n = 0;
    int workers = 0;
    std::string out_path;
    std::string format = "csv";
    long long max_box = 1000000000LL;
    bool timing = false;
};

int run_census(const CensusArgs& args, const std::string& command,
               std::ostream& out, std::ostream& err) {
    bool sampled = args.mode == "sampled";
    if (sampled && args.n <= 0)
        throw std::invalid_argument("census: sampled mode needs --N >= 1");
    WorkerOverride workers(args.workers);

    std::vector<DensityRecord> records;
    for (long long h : args.heights) {
        auto spec = family_spec_from_name(args.kind, h);
        if (!spec)
            throw std::invalid_argument("census: unknown kind '" + args.kind +
                                        "'");
        records.push_back(sampled
                              ? measure_density_sampled(*spec, args.n,
                                                        args.seed)
                              : measure_density(*spec, args.max_box));
    }

    std::ofstream file;
    std::ostream* body = &out;
    if (!args.out_path.empty()) {
        file.open(args.out_path);
        if (!file)
            throw std::invalid_argument("census: cannot open '" +
                                        args.out_path + "'");
        body = &file;
    }
    std::optional<uint64_t> seed =
        sampled ? std::optional<uint64_t>(args.seed) : std::nullopt;
    if (args.format == "csv") {
        write_header(*body, command, seed);
        write_density_csv(*body, records, args.timing);
    } else {
        write_header(err, command, seed);
        write_density_json(*body, records, args.timing);
    }
    return 0;
}

struct FfcountArgs {
    std::string kind;
    std::vector<long long> primes;
    std::string check = "both";
    int workers = 0;
    std::string format = "csv";
};

struct FfcountRow {
    long long p;
    std::string target;
    long long brute;
    long long closed_num, closed_den;
    double ratio;
};

int run_ffcount(const FfcountArgs& args, const std::string& command,
                std::ostream& out, std::ostream& err) {
    auto kind = system_kind_from_name(args.kind);
    if (!kind)
        throw std::invalid_argument("ffcount: unknown kind '" + args.kind +
                                    "'");
    WorkerOverride workers(args.workers);

    std::vector<FfcountRow> rows;
    for (long long p : args.primes) {
        if (p < 2 || p > std::numeric_limits<uint32_t>::max() ||
            !is_prime_u64((uint64_t)p))
            throw std::invalid_argument("ffcount: " + std::to_string(p) +
                                        " is not prime");
        uint32_t up = (uint32_t)p;
        if (args.check != "nu") {
            long long brute = count_Ap(*kind, up);
            long long num = ipow_ll(p, system_tuple_dim(*kind));
            long long den = system_inverse_density(*kind);
            rows.push_back({p, "Ap", brute, num, den,
                            (double)brute * (double)den / (double)num});
        }
        if (args.check != "ap") {
            std::vector<long long> buckets = bucket_counts(*kind, up);
            for (long long i = 0; i < (long long)buckets.size(); ++i) {
                FpPoly u = target_from_index(*kind, up, i);
                auto cf = closed_form_count(*kind, up, u);
                if (!cf) continue;
                double ratio =
                    buckets[(size_t)i] == *cf
                        ? 1.0
                        : (*cf != 0 ? (double)buckets[(size_t)i] /
                                          (double)*cf
                                    : std::numeric_limits<double>::infinity());
                rows.push_back(
                    {p, format_fp_coeffs(u), buckets[(size_t)i], *cf, 1,
                     ratio});
            }
        }
    }

    if (args.format == "csv") {
        write_header(out, command, std::nullopt);
        out << "kind,p,target,brute,closed_num,closed_den,ratio\n";
        for (const FfcountRow& r : rows)
            out << system_kind_name(*kind) << ',' << r.p << ',' << r.target
                << ',' << r.brute << ',' << r.closed_num << ','
                << r.closed_den << ',' << r.ratio << '\n';
    } else {
        write_header(err, command, std::nullopt);
        auto arr = nlohmann::ordered_json::array();
        for (const FfcountRow& r : rows) {
            nlohmann::ordered_json j;
            j["kind"] = system_kind_name(*kind);
            j["p"] = r.p;
            j["target"] = r.target;
            j["brute"] = r.brute;
            j["closed_num"] = r.closed_num;
            j["closed_den"] = r.closed_den;
            j["ratio"] = r.ratio;
            arr.push_back(j);
        }
        out << arr.dump(2) << '\n';
    }
    return 0;
}

struct SieveArgs {
    std::string kind;
    long long height = 0;
    long long z = -1;
    bool auto_z = false;
    double c1 = 1.0, c2 = 1.0;
    bool no_exact = false;
    bool theory_only = false;
    long long max_box = 1000000000LL;
    int workers = 0;
};

int run_sieve(const SieveArgs& args, const std::string& command,
              std::ostream& out, std::ostream& err) {
    auto kind = system_kind_from_name(args.kind);
    if (!kind)
        throw std::invalid_argument("sieve: unknown kind '" + args.kind +
                                    "'");
    if (args.auto_z == (args.z >= 0))
        throw std::invalid_argument("sieve: give exactly one of --z and "
                                    "--auto-z");
    long long z = args.auto_z ? choose_z(args.height) : args.z;
    WorkerOverride workers(args.workers);
    write_header(err, command, std::nullopt);

    if (args.theory_only) {
        // no enumeration: the box may be far past any budget, so its size
        // is reported as a floating-point count
        auto bound = theoretical_bound_for(*kind, args.height, z, args.c1,
                                           args.c2);
        double box = 1.0;
        for (long long h :
             family_box_half_sides(family_for_system(*kind, args.height)))
            box *= 2.0 * (double)h + 1.0;
        nlohmann::ordered_json j;
        j["kind"] = system_kind_name(*kind);
        j["H"] = args.height;
        j["z"] = z;
        j["theoretical_bound"] = bound ? nlohmann::ordered_json(*bound)
                                       : nlohmann::ordered_json(nullptr);
        j["empirical_b_pz"] = nullptr;
        j["exact_b"] = nullptr;
        j["box_size"] = box;
        out << j.dump(2) << '\n';
        return 0;
    }

    SieveReport rep = empirical_sieve(*kind, args.height, z, !args.no_exact,
                                      args.max_box);
    rep.theoretical_bound =
        theoretical_bound_for(*kind, args.height, z, args.c1, args.c2);
    write_sieve_report_json(out, rep);
    return 0;
}

struct IrrCountArgs {
    long long p = 0;
    int n = 0;
    std::string predicate = "all";
    long long coeff = 0;
    bool brute = false;
};

int run_irr_count(const IrrCountArgs& args, const std::string& command,
                  std::ostream& out) {
    if (args.p < 2 || !is_prime_u64((uint64_t)args.p))
        throw std::invalid_argument("irr-count: --p must be prime");
    uint32_t p = (uint32_t)args.p;
    if (args.coeff < 0 || args.coeff >= args.p)
        throw std::invalid_argument("irr-count: --coeff must lie in [0, p)");
    uint64_t count;
    if (args.predicate == "even-coeff") {
        count = brute_census(p, args.n,
                             CensusPredicate::even_with_coeff(
                                 (uint32_t)args.coeff));
    } else if (args.predicate == "even") {
        count = args.brute
                    ? brute_census(p, args.n, CensusPredicate::even())
                    : count_even_irreducible_monic(p, args.n);
    } else {
        count = args.brute ? brute_census(p, args.n, CensusPredicate::all())
                           : count_irreducible_monic(p, args.n);
    }
    write_header(out, command, std::nullopt);
    out << count << '\n';
    return 0;
}

}  // namespace

IntPoly parse_coeff_list(std::string_view s) {
    std::vector<Int> coeffs;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t comma = s.find(',', pos);
        if (comma == std::string_view::npos) comma = s.size();
        std::string_view tok = s.substr(pos, comma - pos);
        while (!tok.empty() && std::isspace((unsigned char)tok.front()))
            tok.remove_prefix(1);
        while (!tok.empty() && std::isspace((unsigned char)tok.back()))
            tok.remove_suffix(1);
        std::string_view digits = tok;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
            digits.remove_prefix(1);
        if (digits.empty())
            throw std::invalid_argument(
                "coefficient list: empty entry in '" + std::string(s) + "'");
        for (char ch : digits)
            if (!std::isdigit((unsigned char)ch))
                throw std::invalid_argument("coefficient list: bad entry '" +
                                            std::string(tok) + "'");
        coeffs.emplace_back(std::string(tok));
        pos = comma + 1;
    }
    return int_poly(std::move(coeffs));
}

std::string format_coeff_list(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) s += ',';
        s += p.coeffs()[i].str();
    }
    return s;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{
        "Rank-bound experiments for quadratic-in-T curve families: "
        "certificate-based bounds, box censuses, mod-p system counts and "
        "the reducibility sieve."};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RankBoundArgs rb;
    CLI::App* rank = app.add_subcommand(
        "rank-bound",
        "Bound the rank of one member Y^2 = A(X)T^2 + B(X)T + C(X). "
        "Coefficient lists are comma separated, constant term first.");
    rank->add_option("--A", rb.a, "A coefficients (default 0)");
    rank->add_option("--B", rb.b, "B coefficients (default 0)");
    rank->add_option("--C", rb.c, "C coefficients, monic cubic")->required();

    CensusArgs ce;
    CLI::App* census = app.add_subcommand(
        "census",
        "Measure the density of positive rank bounds over a coefficient "
        "box, exhaustively or by seeded sampling.");
    census->add_option("--kind", ce.kind,
                       "s0, ssquare, sell, or s11..s22")->required();
    census->add_option("--H", ce.heights, "height(s), comma separated")
        ->required()
        ->delimiter(',');
    census->add_option("--mode", ce.mode, "exact or sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    census->add_option("--seed", ce.seed, "sampling seed (default 1)");
    census->add_option("--N", ce.n, "draws per height in sampled mode");
    census->add_option("--workers", ce.workers, "worker thread count");
    census->add_option("--out", ce.out_path, "write the body to this file");
    census->add_option("--format", ce.format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    census->add_option("--max-box", ce.max_box,
                       "exact-mode tuple budget (default 10^9)");
    census->add_flag("--timing", ce.timing,
                     "include wall times (breaks byte-identical reruns)");

    FfcountArgs ff;
    CLI::App* ffcount = app.add_subcommand(
        "ffcount",
        "Count mod-p parameter tuples per target certificate and compare "
        "against the closed forms.");
    ffcount->add_option("--kind", ff.kind,
                        "sys1, sys2, sys3, m11, m12, m21")->required();
    ffcount->add_option("--p", ff.primes, "prime(s), comma separated")
        ->required()
        ->delimiter(',');
    ffcount->add_option("--check", ff.check,
                        "nu (per-target counts), ap (irreducible-certificate "
                        "total), or both")
        ->check(CLI::IsMember({"nu", "ap", "both"}));
    ffcount->add_option("--workers", ff.workers, "worker thread count");
    ffcount->add_option("--format", ff.format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));

    SieveArgs si;
    CLI::App* sieve = app.add_subcommand(
        "sieve",
        "Count box members whose certificate stays reducible modulo every "
        "admitted prime up to z, against the three-term bound. Kinds are "
        "the system names; each sweeps its family box (sys1: s0, sys2: "
        "ssquare, sys3: sell, m11..m21 likewise).");
    sieve->add_option("--kind", si.kind,
                      "sys1, sys2, sys3, m11, m12, m21")->required();
    sieve->add_option("--H", si.height, "box height")->required();
    sieve->add_option("--z", si.z, "prime cutoff");
    sieve->add_flag("--auto-z", si.auto_z,
                    "derive z from H (needs H >= 16)");
    sieve->add_option("--c1", si.c1, "remainder constant on X/p terms");
    sieve->add_option("--c2", si.c2, "remainder constant on pX/H terms");
    sieve->add_flag("--no-exact", si.no_exact,
                    "skip the exact reducible-over-Q count");
    sieve->add_flag("--theory-only", si.theory_only,
                    "evaluate the bound without enumerating the box");
    sieve->add_option("--max-box", si.max_box,
                      "enumeration budget (default 10^9)");
    sieve->add_option("--workers", si.workers, "worker thread count");

    IrrCountArgs ir;
    CLI::App* irr = app.add_subcommand(
        "irr-count",
        "Count monic irreducible polynomials of degree n over F_p, by "
        "formula or exhaustive census.");
    irr->add_option("--p", ir.p, "prime modulus")->required();
    irr->add_option("--n", ir.n, "degree")->required();
    irr->add_option("--predicate", ir.predicate,
                    "all, even (polynomials in X^2), or even-coeff (even "
                    "with the X^{n-2} coefficient fixed)")
        ->check(CLI::IsMember({"all", "even", "even-coeff"}));
    irr->add_option("--coeff", ir.coeff, "coefficient for even-coeff");
    irr->add_flag("--brute", ir.brute,
                  "census instead of the counting formula");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    std::string command = join_command_line(argc, argv);
    try {
        if (rank->parsed()) return run_rank_bound(rb, command, out, err);
        if (census->parsed()) return run_census(ce, command, out, err);
        if (ffcount->parsed()) return run_ffcount(ff, command, out, err);
        if (sieve->parsed()) return run_sieve(si, command, out, err);
        if (irr->parsed()) return run_irr_count(ir, command, out);
    } catch (const budget_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace qtrank

#pragma once

// Command-line front end: subcommands, coefficient cache and report output.

#include <cvl/arith.hpp>
#include <cvl/bqf.hpp>
#include <cvl/heegner.hpp>
#include <cvl/lfun.hpp>
#include <cvl/quat.hpp>
#include <cvl/theta.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cvl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Text cache: a header line "CVLCACHE <version> <kind> <key> <bound>" then one row per line.
class Cache {
public:
    static constexpr int kVersion = 1;

    Cache() = default;
    explicit Cache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

    bool enabled() const { return dir_.has_value(); }

    std::filesystem::path path(const std::string& kind, const std::string& key, std::int64_t bound) const {
        std::string safe = key;
        for (auto& ch : safe) {
            if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-') ch = '_';
        }
        return *dir_ / (kind + "_" + safe + "_" + std::to_string(bound) + ".cache");
    }

    static std::string header(const std::string& kind, const std::string& key, std::int64_t bound) {
        return "CVLCACHE " + std::to_string(kVersion) + " " + kind + " " + key + " " + std::to_string(bound);
    }

    std::optional<std::vector<std::string>> load(const std::string& kind, const std::string& key,
                                                 std::int64_t bound) const {
        if (!dir_) return std::nullopt;
        std::ifstream in(path(kind, key, bound));
        if (!in) return std::nullopt;
        std::string line;
        if (!std::getline(in, line) || line != header(kind, key, bound)) return std::nullopt;
        std::vector<std::string> rows;
        while (std::getline(in, line)) rows.push_back(line);
        return rows;
    }

    void store(const std::string& kind, const std::string& key, std::int64_t bound,
               const std::vector<std::string>& rows) const {
        if (!dir_) return;
        std::filesystem::create_directories(*dir_);
        const auto target = path(kind, key, bound);
        const auto tmp = target.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << header(kind, key, bound) << '\n';
            for (const auto& r : rows) out << r << '\n';
        }
        std::filesystem::rename(tmp, target);
    }

    template <typename Compute>
    std::vector<std::string> rows(const std::string& kind, const std::string& key, std::int64_t bound,
                                  Compute&& compute) const {
        if (auto hit = load(kind, key, bound)) return *hit;
        std::vector<std::string> r = compute();
        store(kind, key, bound, r);
        return r;
    }

private:
    std::optional<std::filesystem::path> dir_;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

inline std::array<std::int64_t, 5> parse_curve(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 5) throw PreconditionError("--curve expects a1,a2,a3,a4,a6");
    std::array<std::int64_t, 5> a{};
    for (std::size_t k = 0; k < 5; ++k) {
        try {
            std::size_t used = 0;
            a[k] = std::stoll(parts[k], &used);
            if (used != parts[k].size()) throw std::invalid_argument(parts[k]);
        } catch (const std::exception&) {
            throw PreconditionError("--curve: bad coefficient '" + parts[k] + "'");
        }
    }
    return a;
}

inline arith::AffinePoint parse_point(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw PreconditionError("--point expects x,y");
    try {
        return {Rational(parts[0]), Rational(parts[1])};
    } catch (const std::exception&) {
        throw PreconditionError("--point: bad coordinate");
    }
}

/// The curve from --curve, with the built-in generator when the model matches one.
inline arith::CurveData curve_from(const std::string& spec, const std::string& point) {
    const auto coeffs = parse_curve(spec);
    std::optional<arith::AffinePoint> gen;
    if (!point.empty()) gen = parse_point(point);
    auto e = arith::make_curve(coeffs, gen);
    if (!e.generator) {
        try {
            const auto known = arith::standard_curve(e.conductor);
            if (known.a == e.a) e.generator = known.generator;
        } catch (const PreconditionError&) {
        }
    }
    return e;
}

inline std::string curve_key(const arith::CurveData& e) {
    std::string k;
    for (std::size_t i = 0; i < 5; ++i) k += (i ? "," : "") + std::to_string(e.a[i]);
    return k;
}

inline arith::FourierCoeffs cached_fourier(const Cache& cache, const arith::CurveData& e, std::int64_t bound) {
    auto rows = cache.rows("fourier", curve_key(e), bound, [&] {
        auto a = arith::fourier_coefficients(e, bound);
        std::vector<std::string> r;
        for (std::int64_t n = 1; n <= bound; ++n) r.push_back(std::to_string(a[n]));
        return r;
    });
    arith::FourierCoeffs a;
    a.a.assign(static_cast<std::size_t>(bound) + 1, 0);
    for (std::int64_t n = 1; n <= bound; ++n) a.a[static_cast<std::size_t>(n)] = std::stoll(rows[static_cast<std::size_t>(n - 1)]);
    return a;
}

inline std::string format_real(long double x, int digits = 15) {
    std::ostringstream os;
    os << std::setprecision(digits) << static_cast<double>(x);
    return os.str();
}

inline std::string format_sci(long double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << static_cast<double>(x);
    return os.str();
}

inline nlohmann::json eigenform_json(const quat::Eigenform& f) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : f.vector) v.push_back(static_cast<long long>(x));
    nlohmann::json ev = nlohmann::json::object();
    for (const auto& [m, l] : f.eigenvalues) ev[std::to_string(m)] = l.str();
    return {{"kind", quat::to_string(f.kind)}, {"vector", v}, {"eigenvalues", ev}};
}

inline nlohmann::json report_json(const lfun::VerificationReport& r) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : r.entries) {
        nlohmann::json j = {{"D", e.D}, {"m_D", e.m.str()}, {"L", static_cast<double>(e.L)},
                            {"delta", e.delta}, {"tail_bound", static_cast<double>(e.tail_bound)}};
        j["ratio"] = e.ratio ? nlohmann::json(static_cast<double>(*e.ratio)) : nlohmann::json(nullptr);
        entries.push_back(j);
    }
    nlohmann::json j = {{"kind", r.kind},
                        {"level", r.level},
                        {"root_number", r.root_number},
                        {"tol", r.tol},
                        {"kappa", static_cast<double>(r.kappa)},
                        {"max_deviation", static_cast<double>(r.max_deviation)},
                        {"ratio_count", r.ratio_count},
                        {"inconsistent", r.inconsistent},
                        {"passed", r.passed},
                        {"entries", entries}};
    if (r.kind == "waldspurger") j["L_f_1"] = static_cast<double>(r.central);
    if (!r.flag.empty()) j["flag"] = r.flag;
    return j;
}

inline std::vector<std::string> report_csv(const lfun::VerificationReport& r) {
    std::vector<std::string> rows{"D,m_D,L,ratio"};
    for (const auto& e : r.entries) {
        rows.push_back(std::to_string(e.D) + "," + e.m.str() + "," + format_real(e.L) + "," +
                       (e.ratio ? format_real(*e.ratio) : std::string()));
    }
    return rows;
}

struct Options {
    std::int64_t level = 0;
    std::string curve;
    std::string point;
    std::vector<std::int64_t> discs;
    std::int64_t upto = 0;
    std::int64_t m = 2;
    std::int64_t terms = 0;
    double tol = 0;
    unsigned jobs = 1;
    std::string out;
    std::string cache_dir;
};

class Runner {
public:
    Runner(Options opt, std::ostream& out) : opt_(std::move(opt)), out_(out) {
        std::string dir = opt_.cache_dir;
        if (dir.empty()) {
            if (const char* env = std::getenv("CV_CACHE_DIR")) dir = env;
        }
        if (!dir.empty()) cache_ = Cache(std::filesystem::path(dir));
    }

    std::ostream& sink() { return file_ ? *file_ : out_; }

    void open_out() {
        if (!opt_.out.empty()) {
            file_.emplace(opt_.out, std::ios::trunc);
            if (!*file_) throw PreconditionError("cannot open --out file");
        }
    }

    std::int64_t need_disc() const {
        if (opt_.discs.size() != 1) throw PreconditionError("--disc is required (one value)");
        return opt_.discs.front();
    }

    int classnum() {
        open_out();
        if (!opt_.discs.empty()) {
            for (auto d : opt_.discs) sink() << d << ',' << bqf::class_group_representatives(d).h << '\n';
            return kExitOk;
        }
        if (opt_.upto < 3) throw PreconditionError("classnum needs --disc or --upto >= 3");
        for (const auto& [d, h] : bqf::class_number_batch(opt_.upto, opt_.jobs).entries()) sink() << d << ',' << h << '\n';
        return kExitOk;
    }

    int theta3sq() {
        open_out();
        if (opt_.upto < 0) throw PreconditionError("--upto must be >= 0");
        auto rows = cache_.rows("theta", "three-squares", opt_.upto, [&] {
            auto t = bqf::three_squares_theta(opt_.upto, opt_.jobs);
            std::vector<std::string> r;
            for (std::int64_t n = 0; n <= opt_.upto; ++n) {
                if (t.counts[static_cast<std::size_t>(n)] != 0) r.push_back(std::to_string(n) + "," + t.coeff(n).str());
            }
            return r;
        });
        sink() << "n,coeff\n";
        for (const auto& r : rows) sink() << r << '\n';
        return kExitOk;
    }

    int brandt() {
        open_out();
        if (opt_.m < 0) throw PreconditionError("--m must be >= 0");
        auto rows = cache_.rows("brandt", "level" + std::to_string(opt_.level), opt_.m, [&] {
            const auto order = quat::maximal_order(opt_.level);
            const auto classes = quat::left_ideal_classes(order);
            return std::vector<std::string>{quat::to_string(quat::BrandtFamily(classes).matrices(opt_.m, opt_.jobs).back())};
        });
        for (const auto& r : rows) sink() << r << '\n';
        return kExitOk;
    }

    int eigen() {
        open_out();
        const auto order = quat::maximal_order(opt_.level);
        const auto classes = quat::left_ideal_classes(order);
        const auto dec = quat::eigenforms(quat::BrandtFamily(classes), opt_.m < 2 ? 13 : opt_.m);
        nlohmann::json forms = nlohmann::json::array();
        for (const auto& f : dec.forms) forms.push_back(eigenform_json(f));
        nlohmann::json residual = nlohmann::json::array();
        for (const auto& r : dec.residual) residual.push_back({{"dimension", r.dimension}});
        sink() << nlohmann::json{{"level", opt_.level}, {"forms", forms}, {"residual", residual}}.dump() << '\n';
        return kExitOk;
    }

    int theta32() {
        open_out();
        if (opt_.upto < 1) throw PreconditionError("--upto must be >= 1");
        const auto order = quat::maximal_order(opt_.level);
        const auto classes = quat::left_ideal_classes(order);
        const auto dec = quat::eigenforms(quat::BrandtFamily(classes), 13);
        const auto cusp = dec.cusp_forms();
        if (cusp.empty()) throw PreconditionError("no rational cusp eigenform at this level");
        const auto& f = *cusp.front();
        auto rows = cache_.rows("theta", "level" + std::to_string(opt_.level), opt_.upto, [&] {
            const auto g = theta::weight32_form(f, theta::ternary_lattices(classes), opt_.upto, opt_.level, opt_.jobs);
            std::vector<std::string> r;
            for (std::int64_t d = 1; d <= opt_.upto; ++d) {
                if (theta::in_kohnen_support(d, opt_.level)) r.push_back(std::to_string(d) + "," + g[d].str());
            }
            return r;
        });
        nlohmann::json head = {{"N", opt_.level},
                               {"eigenform", eigenform_json(f)["vector"]},
                               {"X", opt_.upto},
                               {"global_sign_convention", "primitive integral eigenvector, first nonzero entry positive"}};
        sink() << "# " << head.dump() << '\n' << "d,m_d\n";
        for (const auto& r : rows) sink() << r << '\n';
        return kExitOk;
    }

    int heegner() {
        open_out();
        auto e = lfun::with_root_number(curve_from(opt_.curve, opt_.point));
        const std::int64_t d = need_disc();
        const auto r = heegner::heegner_coefficient(e, d, opt_.terms);
        sink() << d << ' ' << r.m << ' ' << format_sci(r.residual) << '\n';
        return kExitOk;
    }

    int lvalue() {
        open_out();
        const double tol = opt_.tol > 0 ? opt_.tol : 1e-10;
        const std::int64_t d = opt_.discs.empty() ? 1 : need_disc();
        auto e = lfun::with_root_number(curve_from(opt_.curve, opt_.point));
        if (d != 1 && std::gcd(d, e.conductor) != 1) throw PreconditionError("central_value: D shares a factor with N");
        lfun::check_twist(d);
        const auto a = cached_fourier(cache_, e, lfun::coefficients_needed(e.conductor, d, tol));
        const auto cv = lfun::central_value(a, e.conductor, *e.root_number, d, tol, false);
        sink() << "D,L,terms,tail_bound\n"
               << d << ',' << format_real(cv.value) << ',' << cv.terms << ',' << format_sci(cv.tail_bound) << '\n';
        return kExitOk;
    }

    int report(const lfun::VerificationReport& r) {
        out_ << report_json(r).dump(2) << '\n';
        if (!opt_.out.empty()) {
            std::ofstream f(opt_.out, std::ios::trunc);
            if (!f) throw PreconditionError("cannot open --out file");
            for (const auto& row : report_csv(r)) f << row << '\n';
        }
        return r.passed ? kExitOk : kExitFailure;
    }

    int waldspurger() {
        const double tol = opt_.tol > 0 ? opt_.tol : 1e-4;
        if (opt_.upto < 3) throw PreconditionError("--upto must be >= 3");
        return report(lfun::waldspurger_verify(opt_.level, opt_.upto, tol, opt_.jobs));
    }

    int grosszagier() {
        const double tol = opt_.tol > 0 ? opt_.tol : 1e-3;
        auto e = curve_from(opt_.curve, opt_.point);
        std::vector<std::int64_t> discs = opt_.discs;
        if (discs.empty()) {
            const std::int64_t upto = opt_.upto > 0 ? opt_.upto : 100;
            for (std::int64_t n = 5; n <= upto; ++n) {
                if (arith::is_fundamental_discriminant(-n) && arith::kronecker(-n, e.conductor) == 1) discs.push_back(-n);
            }
        }
        return report(lfun::gross_zagier_verify(e, discs, tol, opt_.jobs));
    }

private:
    Options opt_;
    std::ostream& out_;
    std::optional<std::ofstream> file_;
    Cache cache_;
};

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Central values of quadratic twists: class numbers, Brandt matrices, theta series, Heegner points"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out, "output path");
        sub->add_option("--cache-dir", opt.cache_dir, "cache directory (default: $CV_CACHE_DIR)");
    };
    auto* classnum = app.add_subcommand("classnum", "class numbers h(D) as D,h rows");
    classnum->add_option("--disc", opt.discs, "fundamental discriminant(s) D < 0")->delimiter(',')->allow_extra_args(false);
    classnum->add_option("--upto", opt.upto, "all fundamental D with -X <= D < 0");
    add_common(classnum);

    auto* theta3sq = app.add_subcommand("theta3sq", "coefficients of the three-squares theta series");
    theta3sq->add_option("--upto", opt.upto, "bound X")->required();
    add_common(theta3sq);

    auto* brandt = app.add_subcommand("brandt", "Brandt matrix B(m)");
    brandt->add_option("--level", opt.level, "prime level N")->required();
    brandt->add_option("--m", opt.m, "index m");
    add_common(brandt);

    auto* eigen = app.add_subcommand("eigen", "rational eigenforms of the Brandt matrices (JSON)");
    eigen->add_option("--level", opt.level, "prime level N")->required();
    eigen->add_option("--m", opt.m, "probe bound");
    add_common(eigen);

    auto* theta32 = app.add_subcommand("theta32", "weight 3/2 coefficients m_d of the cusp eigenform");
    theta32->add_option("--level", opt.level, "prime level N")->required();
    theta32->add_option("--upto", opt.upto, "bound X")->required();
    add_common(theta32);

    auto* heeg = app.add_subcommand("heegner", "m_D from Heegner points: prints D m_D residual");
    heeg->add_option("--curve", opt.curve, "a1,a2,a3,a4,a6")->required();
    heeg->add_option("--point", opt.point, "generator x,y (default: built-in)");
    heeg->add_option("--disc", opt.discs, "fundamental discriminant D < -4")->required()->allow_extra_args(false);
    heeg->add_option("--terms", opt.terms, "series length M");
    add_common(heeg);

    auto* lval = app.add_subcommand("lvalue", "central value L(E, D, 1)");
    lval->add_option("--curve", opt.curve, "a1,a2,a3,a4,a6")->required();
    lval->add_option("--point", opt.point, "generator x,y");
    lval->add_option("--disc", opt.discs, "fundamental discriminant or 1")->allow_extra_args(false);
    lval->add_option("--tol", opt.tol, "absolute tolerance");
    add_common(lval);

    auto* verify = app.add_subcommand("verify", "proportionality checks (JSON report, CSV with --out)");
    verify->require_subcommand(1);
    auto* wald = verify->add_subcommand("waldspurger", "theta-side check at a prime level");
    wald->add_option("--level", opt.level, "prime level N")->required();
    wald->add_option("--upto", opt.upto, "bound on |D|")->required();
    wald->add_option("--tol", opt.tol, "maximal relative deviation");
    add_common(wald);
    auto* gz = verify->add_subcommand("grosszagier", "Heegner-side check for a rank one curve");
    gz->add_option("--curve", opt.curve, "a1,a2,a3,a4,a6")->required();
    gz->add_option("--point", opt.point, "generator x,y");
    gz->add_option("--disc", opt.discs, "discriminants (comma separated)")->delimiter(',');
    gz->add_option("--upto", opt.upto, "all admissible D with |D| <= X when --disc is absent");
    gz->add_option("--tol", opt.tol, "maximal relative deviation");
    add_common(gz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        Runner r(opt, out);
        if (*classnum) return r.classnum();
        if (*theta3sq) return r.theta3sq();
        if (*brandt) return r.brandt();
        if (*eigen) return r.eigen();
        if (*theta32) return r.theta32();
        if (*heeg) return r.heegner();
        if (*lval) return r.lvalue();
        if (*wald) return r.waldspurger();
        if (*gz) return r.grosszagier();
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace cvl::cli

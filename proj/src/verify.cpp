#include "meanlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "meanlab/arith.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/experiments.hpp"
#include "meanlab/polyeval.hpp"
#include "meanlab/report.hpp"
#include "meanlab/weights.hpp"
#include "meanlab/zeta.hpp"

namespace meanlab {

namespace {

// ---------------------------------------------------------------------------
// Calibrated corridor constants. Values marked "golden" were frozen from the
// reference calibration run (see the per-criterion notes); the asymptotic
// statements only give O(1)/o(1), so desk-scale acceptance works against
// these recorded corridors.
// ---------------------------------------------------------------------------
constexpr double kShapeCorridor = 0.35;        // golden: max deviation from u + T^{-2u} log T
constexpr double kUnitIntegralLo = 0.2;
constexpr double kUnitIntegralHi = 4.0;
constexpr double kKeyPropMaxDiff = 1.0;        // golden: O(1) contract at sigma = 1/2
constexpr double kMomentRatioLo = 0.5;
constexpr double kMomentRatioHi = 2.0;
constexpr double kOddMomentCFit = 1.0;         // golden: C' in the odd-moment budget
constexpr double kLogderivRatioLo = 0.6;
constexpr double kLogderivRatioHi = 1.6;
constexpr double kCorollaryLo = 0.15;          // golden: empirical/(T log^2 T) corridor, X = T^2
constexpr double kCorollaryHi = 1.5;
constexpr double kSCorrRatioLo = 0.7;
constexpr double kSCorrRatioHi = 1.4;
constexpr double kSCorrResidualMax = 0.35;     // golden: residual/T at beta = 0.4
constexpr double kTailCFit = 2.0;              // golden: C in exp(-C W log W)
constexpr double kTailSafety = 3.0;

// expected zeros at height 5000, from the theta-based count on the
// calibration run (N(5000) = 4520)
constexpr long long kZeroCount5000 = 4520;

// first hundred ordinates, frozen from the high-precision oracle
constexpr double kFirstZeros[100] = {
    14.134725141734694, 21.022039638771555, 25.010857580145689, 30.424876125859513,
    32.935061587739190, 37.586178158825671, 40.918719012147495, 43.327073280914999,
    48.005150881167160, 49.773832477672302, 52.970321477714461, 56.446247697063395,
    59.347044002602353, 60.831778524609810, 65.112544048081607, 67.079810529494174,
    69.546401711173979, 72.067157674481908, 75.704690699083933, 77.144840068874805,
    79.337375020249368, 82.910380854086030, 84.735492980517050, 87.425274613125229,
    88.809111207634929, 92.491899270558484, 94.651344040519887, 95.870634228245310,
    98.831194218193692, 101.31785100573139, 103.72553804047834, 105.44662305232609,
    107.16861118427640, 111.02953554316967, 111.87465917699264, 114.32022091545271,
    116.22668032085755, 118.79078286597622, 121.37012500242065, 122.94682929355258,
    124.25681855434577, 127.51668387959649, 129.57870419995605, 131.08768853093265,
    133.49773720299758, 134.75650975337387, 138.11604205453344, 139.73620895212139,
    141.12370740402112, 143.11184580762063, 146.00098248676551, 147.42276534255960,
    150.05352042078488, 150.92525761224175, 153.02469381151782, 156.11290929423980,
    157.59759181759404, 158.84998817142015, 161.18896413558265, 163.03070968718198,
    165.53706918790051, 167.18443997717315, 169.09451541556882, 169.91197647941527,
    173.41153651959155, 174.75419152336290, 176.44143429717909, 178.37740777609997,
    179.91648402025700, 182.20707848436646, 184.87446784838250, 185.59878367770327,
    187.22892258350258, 189.41615865601542, 192.02665636071268, 193.07972660384241,
    195.26539667952412, 196.87648184102424, 198.01530967459251, 201.26475194371368,
    202.49359451421319, 204.18967180340429, 205.39469720199422, 207.90625888716804,
    209.57650971685102, 211.69086259534102, 213.34791935971254, 214.54704478340604,
    216.16953853502440, 219.06759634879354, 220.71491883931400, 221.43070555469334,
    224.00700025460434, 224.98332466958229, 227.42144427967929, 229.33741330552535,
    231.25018870049916, 231.98723525318025, 233.69340417890830, 236.52422966581621,
};

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void maybe_write(const ExperimentReport& rep, const std::string& dir, const std::string& name) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    rep.write_json(dir + "/" + name + ".json");
}

}  // namespace

ZeroTable cached_zero_table(double height, const std::string& cache_dir) {
    if (cache_dir.empty()) return locate_zeros(height);
    std::filesystem::create_directories(cache_dir);
    char name[64];
    std::snprintf(name, sizeof(name), "ztbl_h%.0f_v1.ztbl", height);
    const std::string path = cache_dir + "/" + name;
    if (std::filesystem::exists(path)) {
        try {
            auto tbl = load_table(path);
            if (tbl.height() >= height) return tbl;
        } catch (const CorruptTableError&) {
            // fall through and rebuild
        }
    }
    auto tbl = locate_zeros(height);
    save_table(tbl, path);
    return tbl;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
    std::vector<CriterionResult> results;
    Stopwatch total;

    auto push = [&](int index, const std::string& name, bool pass, std::string detail,
                    double secs) {
        CriterionResult r{index, name, pass, std::move(detail), secs};
        if (opts.on_result) opts.on_result(r);
        results.push_back(std::move(r));
    };

    // Shared tables. Criterion 1 times its own 5000-height build; the rest
    // share a 2T+buffer table at T = 1e4.
    const double T = 1e4;
    ZeroTable big = cached_zero_table(2.0 * T + 60.0, opts.cache_dir);

    // ---- 1: zero engine ----------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;
        auto tbl = locate_zeros(5000.0);
        const double secs = sw.seconds();
        double worst = 0.0;
        for (int i = 0; i < 100; ++i)
            worst = std::max(worst, std::abs(tbl.ordinates()[i] - kFirstZeros[i]));
        if (worst > 1e-6) pass = false;
        if (!tbl.certified()) pass = false;
        const long long count = static_cast<long long>(tbl.ordinates().size());
        const double n_theta = theta_any(5000.0) / M_PI + 1.0;
        if (count != kZeroCount5000) pass = false;
        if (std::abs(static_cast<double>(count) - n_theta) > 3.0) pass = false;
        if (secs > 120.0) pass = false;
        msg << "count=" << count << " (theta-based " << fmt(n_theta) << "), worst zero err "
            << fmt(worst) << ", " << fmt(secs) << "s";
        push(1, "zero-engine", pass, msg.str(), sw.seconds());
    }

    // ---- 2: Montgomery shape -------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i) {
            const double u = 0.1 * i;
            const double f = pair_correlation_F(u, big, T);
            const double fm = pair_correlation_F(-u, big, T);
            if (f != fm) pass = false;         // symmetry, exact
            if (f < 0.0) pass = false;         // nonnegativity
            worst = std::max(worst, std::abs(f - (u + std::pow(T, -2.0 * u) * std::log(T))));
        }
        if (worst > kShapeCorridor) pass = false;
        const double secs = sw.seconds();
        if (secs > 60.0) pass = false;
        push(2, "montgomery-shape", pass,
             "max |F - shape| = " + fmt(worst) + " (corridor " + fmt(kShapeCorridor) + "), " +
                 fmt(secs) + "s",
             secs);
    }

    // ---- 3: unit integral corridor -------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;
        msg << "int_b^{b+1} F: ";
        for (double b : {0.0, 1.0, 2.0, 3.0}) {
            const double v = F_unit_integral(b, big, T, 64);
            msg << "b" << b << "=" << fmt(v) << " ";
            if (!(v > kUnitIntegralLo && v < kUnitIntegralHi)) pass = false;
        }
        push(3, "unit-integral", pass, msg.str(), sw.seconds());
    }

    // ---- 4: key proposition O(1) contract -------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        double max_small = 0.0, max_large = 0.0;
        for (double Tkp : {1000.0, 2000.0}) {
            KeyPropParams p;
            p.T = Tkp;
            p.X = Tkp * Tkp;
            p.sigma = 0.5;
            p.n_samples = 64;
            p.seed = 20260809;
            p.o1_reference = kKeyPropMaxDiff;
            auto tables = ArithTables::build(static_cast<std::uint64_t>(p.X) + 1);
            auto rep = check_key_prop(p, fejer_weight(p.X), big, tables);
            maybe_write(rep, opts.report_dir, "keyprop_T" + std::to_string(int(Tkp)));
            (Tkp == 1000.0 ? max_small : max_large) = rep.empirical;
        }
        if (max_small > kKeyPropMaxDiff || max_large > kKeyPropMaxDiff) pass = false;
        if (max_large > 2.0 * max_small) pass = false;  // non-growth
        const double secs = sw.seconds();
        if (secs > 600.0) pass = false;
        push(4, "key-prop", pass,
             "max diff " + fmt(max_small) + " @1e3, " + fmt(max_large) + " @2e3 (bound " +
                 fmt(kKeyPropMaxDiff) + "), " + fmt(secs) + "s",
             secs);
    }

    // ---- 5: moment asymptotics -------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;
        const double X = std::pow(T, 1.5);
        auto tables = ArithTables::build(static_cast<std::uint64_t>(X) + 1);
        const auto V = fejer_weight(X);

        MomentParams p;
        p.T = T;
        p.X = X;
        p.two_k = 2;
        p.part = Part::abs;
        auto rep_abs = moment_report(p, V, tables);
        maybe_write(rep_abs, opts.report_dir, "moment_abs_k1");
        msg << "abs ratio " << fmt(rep_abs.ratio);
        if (!(rep_abs.ratio > kMomentRatioLo && rep_abs.ratio < kMomentRatioHi)) pass = false;

        p.part = Part::re;
        auto rep_re = moment_report(p, V, tables);
        p.part = Part::im;
        auto rep_im = moment_report(p, V, tables);
        const double asym = std::abs(rep_re.empirical - rep_im.empirical) /
                            std::max(rep_re.empirical, rep_im.empirical);
        msg << ", re/im asymmetry " << fmt(asym);
        if (asym > 0.30) pass = false;

        p.two_k = 3;
        p.part = Part::re;
        p.c_fit = kOddMomentCFit;
        auto rep_odd = moment_report(p, V, tables);
        maybe_write(rep_odd, opts.report_dir, "moment_odd");
        msg << ", odd |emp| " << fmt(std::abs(rep_odd.empirical)) << " vs budget "
            << fmt(rep_odd.params.at("error_budget_value"));
        if (std::abs(rep_odd.empirical) > rep_odd.params.at("error_budget_value")) pass = false;

        const double secs = sw.seconds();
        if (secs > 900.0) pass = false;
        msg << ", " << fmt(secs) << "s";
        push(5, "moments", pass, msg.str(), secs);
    }

    // ---- 6: log-derivative second moment ----------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;

        LogderivMomentParams p;
        p.T = T;
        p.X = std::pow(T, 0.8);
        {
            auto tables = ArithTables::build(static_cast<std::uint64_t>(p.X) + 1);
            auto rep = logderiv_moment_report(p, big, tables);
            maybe_write(rep, opts.report_dir, "logderiv_moment_T08");
            msg << "X=T^0.8: f-term " << fmt(rep.components.at("f_term")) << ", ratio "
                << fmt(rep.ratio);
            if (rep.components.at("f_term") != 0.0) pass = false;
            if (!(rep.ratio > kLogderivRatioLo && rep.ratio < kLogderivRatioHi)) pass = false;
        }
        {
            p.X = T * T;
            auto tables = ArithTables::build(static_cast<std::uint64_t>(p.X) + 1);
            auto rep = logderiv_moment_report(p, big, tables);
            maybe_write(rep, opts.report_dir, "logderiv_moment_T2");
            const double cor = rep.params.at("corollary_ratio");
            msg << "; X=T^2: corollary " << fmt(cor);
            if (!(cor > kCorollaryLo && cor < kCorollaryHi)) pass = false;
        }
        const double secs = sw.seconds();
        if (secs > 1200.0) pass = false;
        msg << ", " << fmt(secs) << "s";
        push(6, "logderiv-moment", pass, msg.str(), secs);
    }

    // ---- 7: S(t) correlations ------------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;
        auto tables = ArithTables::build(
            static_cast<std::uint64_t>(std::pow(T, 0.8)) + 16);
        SCorrParams p;
        p.T = T;
        p.beta = 0.4;
        auto rep0 = s_correlation_report(p, big, tables);
        maybe_write(rep0, opts.report_dir, "scorr_00");
        msg << "ratio(0,0) " << fmt(rep0.ratio);
        if (!(rep0.ratio > kSCorrRatioLo && rep0.ratio < kSCorrRatioHi)) pass = false;
        const double res = rep0.params.at("residual_over_T");
        msg << ", residual/T " << fmt(res);
        if (res > kSCorrResidualMax) pass = false;

        p.y1 = 0.3;
        p.with_residual = false;
        auto rep3 = s_correlation_report(p, big, tables);
        maybe_write(rep3, opts.report_dir, "scorr_03");
        msg << ", ratio(0.3,0) " << fmt(rep3.ratio);
        if (!(rep3.ratio > kSCorrRatioLo && rep3.ratio < kSCorrRatioHi)) pass = false;

        const double secs = sw.seconds();
        if (secs > 600.0) pass = false;
        msg << ", " << fmt(secs) << "s";
        push(7, "s-correlation", pass, msg.str(), secs);
    }

    // ---- 8: large-deviation tails ----------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;
        TailParams p;
        p.T = T;
        p.X = T * T;
        p.part = Part::im;
        p.c_fit = kTailCFit;
        auto tables = ArithTables::build(static_cast<std::uint64_t>(p.X) + 1);
        auto rep = tail_report(p, fejer_weight(p.X), tables);
        maybe_write(rep, opts.report_dir, "tails");
        double prev = 2.0, worst_excess = 0.0;
        for (const auto& row : rep.rows) {
            if (row.at("empirical") > prev + 1e-15) pass = false;  // monotone
            prev = row.at("empirical");
            worst_excess = std::max(worst_excess, row.at("empirical") / row.at("bound"));
        }
        if (worst_excess > kTailSafety) pass = false;
        const double secs = sw.seconds();
        if (secs > 900.0) pass = false;
        msg << "worst tail/bound " << fmt(worst_excess) << " (cap " << fmt(kTailSafety)
            << "), " << fmt(secs) << "s";
        push(8, "tails", pass, msg.str(), secs);
    }

    // ---- 9: kernel identities ------------------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;
        auto expect = [&](double got, double want, const char* what) {
            if (std::abs(got - want) > 1e-9) {
                pass = false;
                msg << what << " off by " << fmt(std::abs(got - want)) << "; ";
            }
        };
        expect(moment_constant_ck(2).value(), 0.5, "c_k(2)");
        expect(moment_constant_ck(3).value(), 0.0, "c_k(3)");
        expect(moment_constant_ck(4).value(), 0.75, "c_k(4)");
        expect(multiplicative_f({1}).value(), 0.0, "f(p)");
        expect(multiplicative_f({2}).value(), 0.5, "f(p^2)");
        expect(multiplicative_f({4}).value(), 0.375, "f(p^4)");
        expect(k_kernel(1.0), 0.25, "k(1)");
        const double seam = 1.0 / (2.0 * M_PI);
        expect(k_kernel(seam * (1 - 1e-12)) - k_kernel(seam * (1 + 1e-12)), 0.0,
               "k continuity");
        expect(goldston_f(0.0), 1.0, "f(0)");
        expect(goldston_f(1.0), 0.0, "f(1)");
        expect(goldston_h(0.0), 0.0, "h(0)");
        expect(std::abs(fX_fourier(std::log(1e6), 1e6).value), 0.0, "fX_fourier(log X)");
        expect(std::abs(fX_fourier(-1.0, 1e6).value), 0.0, "fX_fourier(-1)");
        if (pass) msg << "all kernel identities hold to 1e-9";
        push(9, "kernel-identities", pass, msg.str(), sw.seconds());
    }

    // ---- 10: engineering -----------------------------------------------------------------
    {
        Stopwatch sw;
        bool pass = true;
        std::ostringstream msg;

        // rotor vs direct spot checks
        auto tables = ArithTables::build(1 << 20);
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> tdist(2000.0, 9000.0);
        double worst_rel = 0.0;
        for (int cfg = 0; cfg < 4; ++cfg) {
            const double Tg = tdist(rng);
            const double Xg = std::pow(10.0, 4.0 + cfg * 0.4);
            auto terms = weighted_vm_terms(Xg, fejer_weight(Xg), tables);
            auto grid = eval_grid(terms, Tg, auto_grid_count(Tg, terms.max_logn, 2));
            std::uniform_int_distribution<std::int64_t> jdist(0, grid.count);
            for (int probe = 0; probe < 8; ++probe) {
                const std::int64_t j = jdist(rng);
                const auto direct = eval_terms(terms, Tg + j * grid.dt);
                worst_rel = std::max(worst_rel,
                                     std::abs(grid.values[j] - direct) /
                                         std::max(std::abs(direct),
                                                  1e-3 * std::sqrt(terms.sum_sq)));
            }
        }
        msg << "rotor worst rel " << fmt(worst_rel);
        if (worst_rel > 1e-8) pass = false;

        // Montgomery-Vaughan short-sum calibration at X = T/10
        {
            WeightSpec flat;
            flat.log_support = 30.0;
            flat.label = "flat";
            flat.v = [](double x) { return std::abs(x) <= 30.0 ? 1.0 : 0.0; };
            flat.knots = {-30.0, 30.0};
            auto terms = weighted_vm_terms(T / 10.0, flat, tables);
            auto grid = eval_grid(terms, T, auto_grid_count(T, terms.max_logn, 2));
            const double ratio = mean_power(grid, 2, Part::abs) / terms.sum_sq;
            msg << ", MV ratio " << fmt(ratio);
            if (!(ratio > 0.9 && ratio < 1.1)) pass = false;
        }

        // zero-table round trip, bit exact
        {
            const std::string path = (opts.report_dir.empty() ? std::string(".")
                                                              : opts.report_dir) +
                                     "/acceptance_roundtrip.ztbl";
            save_table(big, path);
            auto loaded = load_table(path);
            bool same = loaded.ordinates().size() == big.ordinates().size();
            if (same)
                for (std::size_t i = 0; i < loaded.ordinates().size(); ++i)
                    if (loaded.ordinates()[i] != big.ordinates()[i]) {
                        same = false;
                        break;
                    }
            std::filesystem::remove(path);
            msg << ", roundtrip " << (same ? "bit-exact" : "MISMATCH");
            if (!same) pass = false;
        }

        const double wall = total.seconds();
        msg << ", total wall " << fmt(wall) << "s";
        if (wall > 5400.0) pass = false;
        push(10, "engineering", pass, msg.str(), sw.seconds());
    }

    return results;
}

bool all_passed(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return !rs.empty();
}

}  // namespace meanlab

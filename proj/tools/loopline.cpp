// loopline: winding matrices, Alexander polynomials and the rational loop
// expansion of knots presented by framed string links in the solid torus.
#include <CLI11.hpp>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "loopline/errors.hpp"
#include "loopline/json_io.hpp"
#include "loopline/random_gen.hpp"

using namespace loopline;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitSuiteFailure = 4;

struct Options {
    std::string input;
    std::string r_file;
    int order = 4;
    int lmo_n = 2;
    int loop_bound = 2;
    std::string format = "text";
    int jobs = 1;
    uint64_t seed = 1;
    int canon_cap = 24;
};

void set_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

std::string rat_matrix_text(const std::vector<std::vector<Rat>>& m) {
    std::string out;
    for (const auto& row : m) {
        out += "  [";
        for (size_t j = 0; j < row.size(); ++j)
            out += (j ? ", " : " ") + rat_to_string(row[j]);
        out += " ]\n";
    }
    return out;
}

Json specialness_json(const SpecialnessReport& rep) {
    Json j;
    j["isSpecial"] = rep.is_special;
    j["netDiscPassage"] = rep.net_disc_passage;
    Json lk = Json::array();
    for (const auto& row : rep.linking) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(rat_to_string(v));
        lk.push_back(r);
    }
    j["linking"] = lk;
    j["detLinking"] = rat_to_string(rep.det_lk);
    return j;
}

int cmd_wind(const Options& opt) {
    auto p = parse_presentation_file(opt.input);
    LaurentMatrix w = winding_matrix(p);
    auto rep = validate_special(p);
    std::pair<int, int> sig{0, 0};
    bool have_sig = true;
    try {
        sig = signature_at_1(w);
    } catch (const Error&) {
        have_sig = false;
    }
    if (opt.format == "json") {
        Json j;
        j["winding"] = matrix_to_json(w);
        j["special"] = specialness_json(rep);
        if (have_sig) {
            j["sigmaPlus"] = sig.first;
            j["sigmaMinus"] = sig.second;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "winding matrix W(T,t):\n";
        for (size_t i = 0; i < w.size(); ++i) {
            std::cout << "  [";
            for (size_t j = 0; j < w.size(); ++j)
                std::cout << (j ? " | " : " ") << w.at(i, j).to_string();
            std::cout << " ]\n";
        }
        std::cout << "linking matrix W(1):\n" << rat_matrix_text(rep.linking);
        if (have_sig)
            std::cout << "sigma+ = " << sig.first << ", sigma- = " << sig.second << "\n";
        std::cout << "net disc passage:";
        for (long v : rep.net_disc_passage) std::cout << " " << v;
        std::cout << "\ndet lk = " << rat_to_string(rep.det_lk)
                  << (rep.is_special ? "  (special)" : "  (NOT special)") << "\n";
    }
    return rep.is_special ? 0 : kExitPrecondition;
}

int cmd_alex(const Options& opt) {
    auto p = parse_presentation_file(opt.input);
    auto rep = validate_special(p);
    if (!rep.is_special) {
        std::cerr << "presentation is not special\n";
        return kExitPrecondition;
    }
    LaurentPoly det = det_laurent(winding_matrix(p));
    LaurentPoly alex = normalize_alexander(det);
    if (opt.format == "json") {
        Json j;
        j["alexander"] = laurent_to_json(alex);
        j["det"] = laurent_to_json(det);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "alexander = " << alex.to_string() << "\n";
        std::cout << "det W     = " << det.to_string() << "\n";
    }
    return 0;
}

int cmd_wheels(const Options& opt) {
    auto p = parse_presentation_file(opt.input);
    LoopExpansion le = surgery_assemble(p, std::nullopt, opt.order, opt.loop_bound);
    if (opt.format == "json") {
        std::cout << loop_expansion_to_json(le).dump(2) << "\n";
    } else {
        std::cout << "alexander = " << le.alexander.to_string() << "\n";
        for (size_t m = 0; m < le.wheel_coeffs.size(); ++m)
            std::cout << "c_" << 2 * (m + 1) << " = " << rat_to_string(le.wheel_coeffs[m])
                      << "\n";
    }
    return 0;
}

int cmd_invert(const Options& opt) {
    auto p = parse_presentation_file(opt.input);
    LaurentMatrix w = winding_matrix(p);
    RatFuncMatrix inv = invert_ratfunc_matrix(w);
    LaurentPoly det = det_laurent(w);
    if (opt.format == "json") {
        Json j;
        j["inverse"] = ratfunc_matrix_to_json(inv);
        j["det"] = laurent_to_json(det);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "det W = " << det.to_string() << "\n";
        for (size_t i = 0; i < inv.size(); ++i)
            for (size_t j = 0; j < inv.size(); ++j)
                std::cout << "W^-1[" << i + 1 << "," << j + 1
                          << "] = " << inv.at(i, j).to_string() << "\n";
    }
    return 0;
}

int cmd_integrate(const Options& opt) {
    auto p = parse_presentation_file(opt.input);
    std::optional<DiagramSeries> r;
    if (!opt.r_file.empty()) r = load_r_file(opt.r_file, opt.canon_cap);
    LoopExpansion le = surgery_assemble(p, r, opt.order, opt.loop_bound, opt.jobs > 1);
    le.lmo_degree = opt.lmo_n;
    if (opt.format == "json") {
        std::cout << loop_expansion_to_json(le).dump(2) << "\n";
    } else {
        std::cout << "alexander = " << le.alexander.to_string() << "\n";
        std::cout << "det W     = " << le.raw_det.to_string() << "\n";
        std::cout << "sigma+ = " << le.sigma_plus << ", sigma- = " << le.sigma_minus << "\n";
        for (size_t m = 0; m < le.wheel_coeffs.size(); ++m)
            std::cout << "c_" << 2 * (m + 1) << " = " << rat_to_string(le.wheel_coeffs[m])
                      << "\n";
        for (const auto& [i, series] : le.loop_terms) {
            std::cout << "loop terms at Euler characteristic " << -i << ": " << series.size()
                      << " diagram(s)\n";
            for (const auto& [key, e] : series.terms())
                std::cout << "  coeff " << rat_to_string(e.coeff) << ", "
                          << e.rep.vertices.size() << " vertices, " << e.rep.edges.size()
                          << " edges, " << e.rep.circles.size() << " circles\n";
        }
    }
    return 0;
}

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
};

int cmd_check(const Options& opt) {
    Rng rng(opt.seed);
    std::vector<SuiteResult> suites;

    {
        SuiteResult s{"hermitian/linking", 0, 0};
        for (int trial = 0; trial < 40; ++trial) {
            auto p = random_net_zero_presentation(rng, static_cast<size_t>(rng.range(1, 4)), 18,
                                                  rng.flip());
            LaurentMatrix w = winding_matrix(p);
            bool ok = w.is_hermitian() && w.eval_at_one() == linking_matrix(p);
            (ok ? s.passed : s.failed)++;
        }
        suites.push_back(s);
    }
    {
        SuiteResult s{"cover-oracle equality", 0, 0};
        for (int trial = 0; trial < 40; ++trial) {
            auto p = random_net_zero_presentation(rng, static_cast<size_t>(rng.range(1, 4)), 18,
                                                  rng.flip());
            (winding_matrix(p) == cover_linking_oracle(p) ? s.passed : s.failed)++;
        }
        suites.push_back(s);
    }
    {
        SuiteResult s{"move invariance", 0, 0};
        for (int trial = 0; trial < 40; ++trial) {
            auto p = random_net_zero_presentation(rng, static_cast<size_t>(rng.range(1, 3)), 12,
                                                  true);
            LaurentMatrix w = winding_matrix(p);
            MoveCancelPair m{true, static_cast<size_t>(rng.range(0, static_cast<long>(p.mu) - 1)),
                             0, rng.flip()};
            m.position = static_cast<size_t>(
                rng.range(0, static_cast<long>(p.strands[m.strand].size())));
            auto q = apply_move(p, m);
            MoveR2 r2{true, static_cast<size_t>(rng.range(0, static_cast<long>(p.mu) - 1)), 0,
                      static_cast<size_t>(rng.range(0, static_cast<long>(p.mu) - 1)), 0,
                      rng.sign(), -1, -1};
            r2.pos_over = static_cast<size_t>(
                rng.range(0, static_cast<long>(q.strands[r2.strand_over].size())));
            r2.pos_under = static_cast<size_t>(
                rng.range(0, static_cast<long>(q.strands[r2.strand_under].size())));
            auto q2 = apply_move(q, r2);
            (winding_matrix(q2) == w ? s.passed : s.failed)++;
        }
        suites.push_back(s);
    }
    {
        SuiteResult s{"wheels-line identity", 0, 0};
        for (int trial = 0; trial < 10; ++trial) {
            size_t mu = static_cast<size_t>(rng.range(1, 2));
            int n = static_cast<int>(rng.range(1, 2));
            LaurentMatrix w = random_hermitian_unimodular(rng, mu, 2, 2);
            auto chk = wheels_line_check(w, n, 2 * n, opt.jobs > 1);
            (chk.equal ? s.passed : s.failed)++;
        }
        suites.push_back(s);
    }
    {
        SuiteResult s{"pairing routes", 0, 0};
        for (int trial = 0; trial < 8; ++trial) {
            LaurentMatrix w = random_hermitian_unimodular(rng, 1, 1, 2);
            Trunc t = Trunc::by_grade(6);
            t.max_k_legs = 2;
            DiagramSeries r = DiagramSeries::unit();
            Diagram d = make_wheel(rng.flip() ? 2 : 4);
            for (auto& v : d.vertices)
                if (!v.internal) v.leg = x_label(1);
            r.add(d, Rat(1));
            IntegrableElement elem{w, r};
            bool ok = thr_d(fg_integrate(elem, t), t) == fg_integrate_threaded(elem, 2, t);
            DiagramSeries a = fg_integrate(elem, t, false);
            DiagramSeries b = fg_integrate(elem, t, true);
            ok = ok && a == b;
            (ok ? s.passed : s.failed)++;
        }
        suites.push_back(s);
    }
    {
        SuiteResult s{"inverse contract", 0, 0};
        for (int trial = 0; trial < 20; ++trial) {
            LaurentMatrix w = random_hermitian_unimodular(rng, static_cast<size_t>(rng.range(1, 3)),
                                                          2, 2);
            RatFuncMatrix inv = invert_ratfunc_matrix(w);
            RatFuncMatrix prod(w.size());
            for (size_t i = 0; i < w.size(); ++i)
                for (size_t j = 0; j < w.size(); ++j) {
                    RatFunc acc;
                    for (size_t k = 0; k < w.size(); ++k)
                        acc += RatFunc(w.at(i, k)) * inv.at(k, j);
                    prod.at(i, j) = acc;
                }
            (prod.is_identity() && inv.is_hermitian() ? s.passed : s.failed)++;
        }
        suites.push_back(s);
    }

    int total_failed = 0;
    for (const auto& s : suites) {
        total_failed += s.failed;
        std::cout << (s.failed == 0 ? "PASS" : "FAIL") << "  " << s.name << "  (" << s.passed
                  << " passed, " << s.failed << " failed)\n";
    }
    return total_failed == 0 ? 0 : kExitSuiteFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"loop expansion of knots from string links in the solid torus"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input) cmd->add_option("file", opt.input, "presentation file")->required();
        cmd->add_option("--format", opt.format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--jobs", opt.jobs, "worker threads for the gluing kernels");
        cmd->add_option("--canon-cap", opt.canon_cap, "canonicalization vertex bound");
    };

    auto* wind = app.add_subcommand("wind", "winding matrix, linking data, specialness");
    add_common(wind, true);
    auto* alex = app.add_subcommand("alex", "normalized Alexander polynomial and raw det");
    add_common(alex, true);
    auto* wheels = app.add_subcommand("wheels", "wheel-generator coefficients of the loop expansion");
    add_common(wheels, true);
    wheels->add_option("--order", opt.order, "number of wheel coefficients (c_2..c_2N)");
    auto* invert = app.add_subcommand("invert", "inverse winding matrix over det W");
    add_common(invert, true);
    auto* integrate = app.add_subcommand("integrate", "full loop-expansion assembly");
    add_common(integrate, true);
    integrate->add_option("--r-file", opt.r_file, "X-substantial remainder series (json)");
    integrate->add_option("--order", opt.order, "wheel coefficient order");
    integrate->add_option("--n", opt.lmo_n, "LMO integration degree (reporting only)");
    integrate->add_option("--loops", opt.loop_bound, "maximum loop order of the assembled terms");
    auto* check = app.add_subcommand("check", "run the exact property suites");
    add_common(check, false);
    check->add_option("--seed", opt.seed, "random seed for the suites");

    CLI11_PARSE(app, argc, argv);
    set_jobs(opt.jobs);

    try {
        if (wind->parsed()) return cmd_wind(opt);
        if (alex->parsed()) return cmd_alex(opt);
        if (wheels->parsed()) return cmd_wheels(opt);
        if (invert->parsed()) return cmd_invert(opt);
        if (integrate->parsed()) return cmd_integrate(opt);
        if (check->parsed()) return cmd_check(opt);
    } catch (const SyntaxError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParse;
    } catch (const DanglingCrossing& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParse;
    } catch (const MalformedR& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParse;
    } catch (const NotSpecial& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const NotIntegrable& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const NotHermitian& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const NotUnimodular& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const NotSymmetrizable& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const SingularAtOne& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitPrecondition;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParse;
    }
    return 0;
}

// Command-line driver: evaluate theta functions and Lefschetz numbers, run
// the anomaly/periodicity/S-T/rigidity/pole checks on instance files, and
// emit q-series, CSV scan tables, and JSON check reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "thetarig/instance.hpp"

using namespace thetarig;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericError = 3;

unsigned thread_budget(std::size_t work_items) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned cap = hw;
    if (const char* env = std::getenv("THETA_RIGIDITY_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    return std::min<unsigned>(std::min<unsigned>(hw, cap),
                              static_cast<unsigned>(std::max<std::size_t>(work_items, 1)));
}

struct Output {
    std::string path;
    std::string format; // "", "text", "csv", "json"

    void write(const std::string& content) const {
        if (path.empty()) return;
        std::ofstream out(path);
        if (!out) throw input_error("cannot write output file: " + path);
        out << content;
    }
};

std::string csv_of_scan(const RigidityReport& rep, unsigned digits) {
    std::string csv = "t_re,t_im,value_re,value_im,deviation\n";
    for (const auto& [t, v] : rep.values) {
        csv += to_string(t.re(), digits) + "," + to_string(t.im(), digits) + "," +
               to_string(v.re(), digits) + "," + to_string(v.im(), digits) + "," +
               to_string(abs(v - rep.mean), digits) + "\n";
    }
    return csv;
}

nlohmann::json json_of_check(const CheckReport& rep, unsigned digits) {
    nlohmann::json detail = nlohmann::json::array();
    for (const auto& d : rep.detail)
        detail.push_back({{"residual", to_string(d.residual, digits)}, {"note", d.note}});
    return {{"residual", to_string(rep.residual, digits)},
            {"tolerance", to_string(rep.tolerance, digits)},
            {"pass", rep.pass},
            {"note", rep.note},
            {"detail", detail}};
}

void print_check(const std::string& name, const CheckReport& rep, unsigned digits) {
    std::cout << name << ": " << (rep.pass ? "pass" : "FAIL")
              << "  residual = " << to_string(rep.residual, 6)
              << "  tolerance = " << to_string(rep.tolerance, 3) << "\n";
    if (!rep.note.empty()) std::cout << "  note: " << rep.note << "\n";
    for (const auto& d : rep.detail)
        std::cout << "  " << d.note << ": residual " << to_string(d.residual, 6) << "\n";
    (void)digits;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta-rigidity: Jacobi theta machinery, equivariant Lefschetz numbers,\n"
                 "generalized Witten genera, and numeric rigidity checks"};
    app.require_subcommand(1);

    unsigned digits = 60;
    long q_order = 40;
    unsigned grid_n = 5;
    Output out;
    app.add_option("--precision", digits, "working decimal digits")->capture_default_str();
    app.add_option("--q-order", q_order, "q-series truncation in eighths")->capture_default_str();
    app.add_option("--grid", grid_n, "rigidity grid dimension")->capture_default_str();
    app.add_option("--out", out.path, "write CSV (scans) or JSON (checks) to this path");
    app.add_option("--format", out.format, "output file format override: text, csv, json");

    // ---- theta ----
    auto* c_theta = app.add_subcommand("theta", "evaluate a theta function");
    std::string theta_kind = "theta", theta_v = "0", theta_tau = "i";
    unsigned theta_deriv = 0;
    c_theta->add_option("--kind", theta_kind, "theta, theta1, theta2, theta3")
        ->capture_default_str();
    c_theta->add_option("--v", theta_v, "argument v (complex literal)")->capture_default_str();
    c_theta->add_option("--tau", theta_tau, "modular parameter")->capture_default_str();
    c_theta->add_option("--deriv", theta_deriv, "v-derivative order")->capture_default_str();

    // ---- lefschetz ----
    auto* c_lef = app.add_subcommand("lefschetz", "evaluate Lefschetz numbers on an instance");
    std::string lef_instance, lef_t = "0.21+0.13i", lef_tau = "0.3+0.8i", lef_mode = "value";
    int lef_component = -1;
    c_lef->add_option("instance", lef_instance, "instance file")->required();
    c_lef->add_option("--t", lef_t, "group parameter t")->capture_default_str();
    c_lef->add_option("--tau", lef_tau, "modular parameter")->capture_default_str();
    c_lef->add_option("--mode", lef_mode, "value, qseries, or oracle")->capture_default_str();
    c_lef->add_option("--component", lef_component, "component index (-1 = all)")
        ->capture_default_str();

    // ---- genus ----
    auto* c_gen = app.add_subcommand("genus", "generalized Witten genus of the manifold data");
    std::string gen_instance, gen_lambda;
    c_gen->add_option("instance", gen_instance, "instance file with a manifold section")
        ->required();
    c_gen->add_option("--lambda", gen_lambda, "1, 2, 3 or all (default: the case lambda)");

    // ---- check-anomaly ----
    auto* c_an = app.add_subcommand("check-anomaly", "anomaly cancellation condition");
    std::string an_instance;
    int an_alpha = 0, an_beta = 0;
    c_an->add_option("instance", an_instance)->required();
    c_an->add_option("--alpha", an_alpha, "p1(L) coefficient (default: the case's)");
    c_an->add_option("--beta", an_beta, "p1(V) coefficient (default: the case's)");

    // ---- check-periodicity ----
    auto* c_per = app.add_subcommand("check-periodicity", "lattice quasi-periodicity of L'");
    std::string per_instance, per_t = "0.21+0.13i", per_tau = "0.3+0.8i", per_shift = "both";
    c_per->add_option("instance", per_instance)->required();
    c_per->add_option("--t", per_t)->capture_default_str();
    c_per->add_option("--tau", per_tau)->capture_default_str();
    c_per->add_option("--shift", per_shift, "2, 2tau, or both")->capture_default_str();

    // ---- check-st ----
    auto* c_st = app.add_subcommand("check-st", "modular S/T relation between the L'_lambda");
    std::string st_instance, st_tau = "0.3+0.8i", st_rel = "s33";
    unsigned st_samples = 5;
    c_st->add_option("instance", st_instance)->required();
    c_st->add_option("--tau", st_tau)->capture_default_str();
    c_st->add_option("--relation", st_rel, "s12, s21, s33, t11, t23, t32")
        ->capture_default_str();
    c_st->add_option("--samples", st_samples, "number of t sample points")
        ->capture_default_str();

    // ---- scan-rigidity ----
    auto* c_rig = app.add_subcommand("scan-rigidity", "L' over a t-grid; deviation from mean");
    std::string rig_instance, rig_tau = "0.3+0.8i";
    c_rig->add_option("instance", rig_instance)->required();
    c_rig->add_option("--tau", rig_tau)->capture_default_str();

    // ---- scan-poles ----
    auto* c_pol = app.add_subcommand("scan-poles", "predicted pole lattice and blowup search");
    std::string pol_instance, pol_tau = "0.3+0.8i", pol_box = "0,1,0,1";
    c_pol->add_option("instance", pol_instance)->required();
    c_pol->add_option("--tau", pol_tau)->capture_default_str();
    c_pol->add_option("--box", pol_box, "re_min,re_max,im_min,im_max")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitInputError;
    }

    try {
        set_working_digits(digits);

        auto load = [&](const std::string& path) {
            InstanceFile inst = load_instance(path);
            if (app.count("--precision") == 0 && inst.digits != digits) {
                digits = inst.digits;
                set_working_digits(digits);
                inst = load_instance(path); // reparse at the instance's precision
            }
            if (app.count("--q-order") == 0) q_order = inst.q_order_eighths;
            return inst;
        };
        PrecisionConfig cfg;
        cfg.digits = digits;

        if (*c_theta) {
            cfg.digits = digits;
            ThetaKind kind;
            if (theta_kind == "theta") kind = ThetaKind::theta;
            else if (theta_kind == "theta1") kind = ThetaKind::theta1;
            else if (theta_kind == "theta2") kind = ThetaKind::theta2;
            else if (theta_kind == "theta3") kind = ThetaKind::theta3;
            else throw input_error("unknown theta kind: " + theta_kind);
            Tau tau(parse_complex(theta_tau));
            Complex v = parse_complex(theta_v);
            Complex val = theta_v_deriv(kind, v, tau, theta_deriv, cfg);
            std::cout << theta_kind << (theta_deriv ? ("^(" + std::to_string(theta_deriv) + ")")
                                                    : "")
                      << "(" << theta_v << ", " << theta_tau << ") = " << to_string(val, digits)
                      << "\n";
            std::cout << "jacobi identity residual = "
                      << to_string(jacobi_identity_residual(tau, cfg), 6) << "\n";
            return kExitPass;
        }

        if (*c_lef) {
            InstanceFile inst = load(lef_instance);
            cfg.digits = digits;
            Complex t = parse_complex(lef_t);
            const OddEData* e = inst.data.e_data ? &*inst.data.e_data : nullptr;
            if (lef_mode == "value") {
                Tau tau(parse_complex(lef_tau));
                if (lef_component >= 0) {
                    Complex v = lefschetz_component(
                        inst.data.sel, inst.data.components.at(lef_component), e, t, tau, cfg);
                    std::cout << "L'[" << lef_component << "](t, tau) = " << to_string(v, digits)
                              << "\n";
                } else {
                    for (std::size_t i = 0; i < inst.data.components.size(); ++i) {
                        Complex v = lefschetz_component(inst.data.sel, inst.data.components[i], e,
                                                        t, tau, cfg);
                        std::cout << "component " << i << ": " << to_string(v, digits) << "\n";
                    }
                    Complex total = lefschetz_total(inst.data, t, tau, cfg);
                    std::cout << "total: " << to_string(total, digits) << "\n";
                }
            } else if (lef_mode == "qseries" || lef_mode == "oracle") {
                std::size_t ci = lef_component < 0 ? 0 : static_cast<std::size_t>(lef_component);
                QExp trunc = QExp::eighth(q_order);
                QSeries<Complex> s =
                    (lef_mode == "qseries")
                        ? lefschetz_component_qseries(inst.data.sel, inst.data.components.at(ci),
                                                      e, t, trunc, cfg)
                        : lefschetz_oracle(inst.data.sel, inst.data.components.at(ci), e, t,
                                           trunc, cfg);
                std::cout << to_string(s, digits) << "\n";
            } else {
                throw input_error("unknown mode: " + lef_mode);
            }
            return kExitPass;
        }

        if (*c_gen) {
            InstanceFile inst = load(gen_instance);
            cfg.digits = digits;
            if (!inst.manifold) throw input_error("instance has no manifold section");
            Lambda lambda = inst.sel.lambda;
            if (!gen_lambda.empty()) {
                if (gen_lambda == "all") lambda = Lambda::all;
                else if (gen_lambda == "1") lambda = Lambda::q1;
                else if (gen_lambda == "2") lambda = Lambda::q2;
                else if (gen_lambda == "3") lambda = Lambda::q3;
                else throw input_error("bad --lambda: " + gen_lambda);
            }
            const int dim = inst.manifold->dim;
            DimClass dc;
            switch (((dim % 4) + 4) % 4) {
            case 0: dc = DimClass::dim_4k; break;
            case 1: dc = DimClass::dim_4k_plus_1; break;
            case 2: dc = DimClass::dim_4k_plus_2; break;
            default: dc = DimClass::dim_4k_minus_1; break;
            }
            QSeries<Complex> g =
                witten_genus(dc, lambda, *inst.manifold, QExp::eighth(q_order), cfg);
            std::cout << "W(" << to_string(dc) << ", lambda=" << to_string(lambda)
                      << ") = " << to_string(g, digits) << "\n";
            return kExitPass;
        }

        if (*c_an) {
            InstanceFile inst = load(an_instance);
            AnomalyCondition cond = condition_for(inst.data.sel);
            if (c_an->count("--alpha")) cond.alpha = an_alpha;
            if (c_an->count("--beta")) cond.beta = an_beta;
            CheckReport rep = anomaly_check(inst.data, cond);
            print_check("check-anomaly (alpha=" + std::to_string(cond.alpha) +
                            ", beta=" + std::to_string(cond.beta) + ")",
                        rep, digits);
            if (!out.path.empty() && out.format != "csv" && out.format != "text")
                out.write(json_of_check(rep, digits).dump(2) + "\n");
            return rep.pass ? kExitPass : kExitCheckFailed;
        }

        if (*c_per) {
            InstanceFile inst = load(per_instance);
            cfg.digits = digits;
            Tau tau(parse_complex(per_tau));
            Complex t = parse_complex(per_t);
            bool ok = true;
            nlohmann::json reports = nlohmann::json::array();
            if (per_shift == "2" || per_shift == "both") {
                CheckReport rep = periodicity_check(inst.data, tau, t, PeriodShift::two, cfg);
                print_check("check-periodicity shift 2", rep, digits);
                reports.push_back(json_of_check(rep, digits));
                ok = ok && rep.pass;
            }
            if (per_shift == "2tau" || per_shift == "both") {
                CheckReport rep = periodicity_check(inst.data, tau, t, PeriodShift::two_tau, cfg);
                print_check("check-periodicity shift 2tau", rep, digits);
                reports.push_back(json_of_check(rep, digits));
                ok = ok && rep.pass;
            }
            if (per_shift != "2" && per_shift != "2tau" && per_shift != "both")
                throw input_error("bad --shift: " + per_shift);
            if (!out.path.empty()) out.write(reports.dump(2) + "\n");
            return ok ? kExitPass : kExitCheckFailed;
        }

        if (*c_st) {
            InstanceFile inst = load(st_instance);
            cfg.digits = digits;
            Tau tau(parse_complex(st_tau));
            StRelation rel;
            if (st_rel == "s12") rel = StRelation::s12;
            else if (st_rel == "s21") rel = StRelation::s21;
            else if (st_rel == "s33") rel = StRelation::s33;
            else if (st_rel == "t11") rel = StRelation::t11;
            else if (st_rel == "t23") rel = StRelation::t23;
            else if (st_rel == "t32") rel = StRelation::t32;
            else throw input_error("bad --relation: " + st_rel);
            std::vector<Complex> samples;
            for (unsigned i = 0; i < st_samples; ++i) {
                Real fr = Real("0.11") + Real("0.06") * static_cast<long>(i);
                samples.emplace_back(fr, Real("0.07") + Real("0.03") * static_cast<long>(i));
            }
            StReport rep = st_relation_check(inst.data, rel, samples, tau, cfg);
            std::cout << "check-st " << to_string(rel) << ": "
                      << (rep.ratio_pass ? "pass" : "FAIL")
                      << "  ratio residual = " << to_string(rep.ratio_residual, 6) << "\n";
            std::cout << "  observed constant = " << to_string(rep.observed_constant, 12) << "\n";
            std::cout << "  printed constant  = " << to_string(rep.printed_constant, 12)
                      << "  |observed - printed| = " << to_string(rep.constant_residual, 6)
                      << " (informational)\n";
            if (!out.path.empty()) {
                nlohmann::json jr = {
                    {"relation", to_string(rel)},
                    {"ratio_residual", to_string(rep.ratio_residual, digits)},
                    {"ratio_pass", rep.ratio_pass},
                    {"observed_constant", to_string(rep.observed_constant, digits)},
                    {"printed_constant", to_string(rep.printed_constant, digits)},
                    {"constant_residual", to_string(rep.constant_residual, digits)}};
                out.write(jr.dump(2) + "\n");
            }
            return rep.ratio_pass ? kExitPass : kExitCheckFailed;
        }

        if (*c_rig) {
            InstanceFile inst = load(rig_instance);
            cfg.digits = digits;
            Tau tau(parse_complex(rig_tau));
            std::vector<Complex> grid = default_t_grid(grid_n);
            RigidityReport rep =
                rigidity_scan(inst.data, tau, grid, cfg, thread_budget(grid.size()));
            Real tol = pow10(-static_cast<long>(digits) + 20);
            bool pass = rep.max_deviation < tol && rep.excluded.empty();
            std::cout << "scan-rigidity: " << (pass ? "pass" : "FAIL") << "  grid " << grid_n
                      << "x" << grid_n << "\n";
            std::cout << "  mean value    = " << to_string(rep.mean, 12) << "\n";
            std::cout << "  max deviation = " << to_string(rep.max_deviation, 6)
                      << "  tolerance = " << to_string(tol, 3) << "\n";
            if (!rep.excluded.empty())
                std::cout << "  warning: " << rep.excluded.size() << " grid points on poles\n";
            if (!out.path.empty()) out.write(csv_of_scan(rep, digits));
            return pass ? kExitPass : kExitCheckFailed;
        }

        if (*c_pol) {
            InstanceFile inst = load(pol_instance);
            cfg.digits = digits;
            Tau tau(parse_complex(pol_tau));
            SearchBox box;
            {
                std::stringstream ss(pol_box);
                std::string tok;
                std::vector<Real> vals;
                while (std::getline(ss, tok, ',')) vals.push_back(parse_real(tok));
                if (vals.size() != 4) throw input_error("--box needs four numbers");
                box = SearchBox{vals[0], vals[1], vals[2], vals[3]};
            }
            PoleScanReport rep = pole_scan(inst.data, tau, box, cfg);
            std::cout << "scan-poles: predicted " << rep.predicted.size() << " lattice points, "
                      << "detected " << rep.detected.size() << " blowups, "
                      << (rep.all_detected_predicted ? "all on predicted lines"
                                                     : "UNPREDICTED blowups present")
                      << "\n";
            for (const auto& p : rep.predicted)
                std::cout << "  predicted t = (" << p.a << " + " << p.b << " tau)/" << p.rotation
                          << " = " << to_string(p.location, 8) << "\n";
            for (const auto& d : rep.detected)
                std::cout << "  blowup near " << to_string(d.location, 8)
                          << " |L'| = " << to_string(d.magnitude, 4)
                          << (d.on_predicted_line ? "" : "  [NOT PREDICTED]") << "\n";
            if (!out.path.empty()) {
                std::string csv = "t_re,t_im,magnitude,on_predicted_line\n";
                for (const auto& d : rep.detected)
                    csv += to_string(d.location.re(), digits) + "," +
                           to_string(d.location.im(), digits) + "," +
                           to_string(d.magnitude, digits) + "," +
                           (d.on_predicted_line ? "1" : "0") + "\n";
                out.write(csv);
            }
            return rep.all_detected_predicted ? kExitPass : kExitCheckFailed;
        }

        return kExitInputError;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const case_error& e) {
        std::cerr << "case error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const pole_error& e) {
        std::cerr << "pole error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
}

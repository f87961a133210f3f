// confmom command-line front end: apply conformal transformations, inspect
// the hyperboloid atlas, sweep orbits, scan model potentials, fit the sigma
// series, extract masses, and run the verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "confmom/atlas.hpp"
#include "confmom/cone.hpp"
#include "confmom/conformal.hpp"
#include "confmom/fifthdim.hpp"
#include "confmom/models.hpp"
#include "confmom/verify.hpp"

using nlohmann::json;
using namespace confmom;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// RFC-4180: quote a field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct RunConfig {
    double M = 1.0;
    std::string units = "MeV";
    std::uint64_t seed = 0;
    std::string format = "csv";  // row output format for orbit and scan
    int grid_n = 2048;
    double grid_half_range_over_M = 10.0;
    double g = 1.0;
    double phi4_mass = 0.0;
    double f_pi = 93.0;
    double higgs_f = 1.0;
    double m_pi = 138.0;
    double lightlike_tol = kLightlikeTol;
};

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    in >> j;
    cfg.M = j.value("M", cfg.M);
    cfg.units = j.value("units", cfg.units);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.format = j.value("format", cfg.format);
    if (j.contains("grid")) {
        cfg.grid_n = j["grid"].value("n", cfg.grid_n);
        cfg.grid_half_range_over_M =
            j["grid"].value("half_range_over_M", cfg.grid_half_range_over_M);
    }
    if (j.contains("models")) {
        const auto& m = j["models"];
        cfg.g = m.value("g", cfg.g);
        cfg.phi4_mass = m.value("phi4_mass", cfg.phi4_mass);
        cfg.f_pi = m.value("f_pi", cfg.f_pi);
        cfg.higgs_f = m.value("higgs_f", cfg.higgs_f);
        cfg.m_pi = m.value("m_pi", cfg.m_pi);
    }
    if (j.contains("tolerances"))
        cfg.lightlike_tol = j["tolerances"].value("lightlike", cfg.lightlike_tol);
    return cfg;
}

FourMomentum parse_four(const std::string& s) {
    FourMomentum q;
    std::stringstream ss(s);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 4) throw std::invalid_argument("expected 4 components, got more: " + s);
        std::size_t pos = 0;
        q[i] = std::stod(part, &pos);
        if (pos != part.size()) throw std::invalid_argument("bad component '" + part + "'");
        ++i;
    }
    if (i != 4) throw std::invalid_argument("expected 4 comma-separated components: " + s);
    return q;
}

int parse_axis(const std::string& s) {
    if (s == "x" || s == "1") return 1;
    if (s == "y" || s == "2") return 2;
    if (s == "z" || s == "3") return 3;
    throw std::invalid_argument("axis must be x, y or z");
}

ConformalElement parse_element(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "inv") return Inversion{};
    if (kind == "dil") return Dilatation{std::stod(arg)};
    if (kind == "trans") return Translation{parse_four(arg)};
    if (kind == "sct") return SpecialConformal{parse_four(arg)};
    if (kind == "boost" || kind == "rot") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(kind + " needs axis,amount");
        const int axis = parse_axis(arg.substr(0, comma));
        const double amount = std::stod(arg.substr(comma + 1));
        return kind == "boost" ? lorentz_boost(axis, amount) : lorentz_rotation(axis, amount);
    }
    throw std::invalid_argument("unknown element spec '" + spec +
                                "' (inv, dil:l, trans:h0,h1,h2,h3, sct:..., boost:axis,r, "
                                "rot:axis,a)");
}

struct Range {
    double start = 0.0, stop = 0.0, step = 1.0;
};

Range parse_range(const std::string& s) {
    Range r;
    std::stringstream ss(s);
    std::string part;
    std::vector<double> vals;
    while (std::getline(ss, part, ':')) vals.push_back(std::stod(part));
    if (vals.size() != 3) throw std::invalid_argument("range must be start:stop:step");
    r.start = vals[0];
    r.stop = vals[1];
    r.step = vals[2];
    if (r.step <= 0.0 && r.start != r.stop)
        throw std::invalid_argument("range step must be positive");
    return r;
}

std::vector<double> range_values(const Range& r) {
    std::vector<double> out;
    if (r.start == r.stop) {
        out.push_back(r.start);
        return out;
    }
    for (double v = r.start; v <= r.stop + 0.5 * r.step; v += r.step) out.push_back(v);
    return out;
}

json json_four(const FourMomentum& q) { return json::array({q.q0, q.q1, q.q2, q.q3}); }

// ------------------------------------------------------------ subcommands ----

int cmd_transform(const RunConfig& cfg, const std::vector<std::string>& el_specs,
                  const std::string& q_str, double M_val) {
    const ScaleM M(M_val);
    const FourMomentum q = parse_four(q_str);
    ConformalWord word;
    for (const auto& s : el_specs) word.elements.push_back(parse_element(s));
    // the configured tolerance guards the first applied element; later steps
    // are checked by the library as the word unwinds
    if (!word.elements.empty() && is_lightlike(q, M, cfg.lightlike_tol)) {
        const ConformalElement& first = word.elements.back();
        if (std::holds_alternative<Inversion>(first) ||
            std::holds_alternative<SpecialConformal>(first))
            throw LightlikeInversion("input momentum is lightlike within tolerance");
    }
    const FourMomentum out = apply_word(word, q, M);
    json rec;
    rec["element"] = el_specs.size() == 1 ? json(el_specs[0]) : json(el_specs);
    rec["input"] = json_four(q);
    rec["output"] = json_four(out);
    rec["q2_in"] = minkowski_sq(q);
    rec["q2_out"] = minkowski_sq(out);
    rec["region_in"] = region_name(classify(minkowski_sq(q), M));
    rec["region_out"] = region_name(classify(minkowski_sq(out), M));
    std::cout << rec.dump() << "\n";
    return 0;
}

int cmd_lift(const std::string& q_str, double kplus, double M_val) {
    const ScaleM M(M_val);
    const FourMomentum q = parse_four(q_str);
    const ConeVector k = lift(q, kplus, M);
    json rec;
    rec["q"] = json_four(q);
    rec["kappa"] = json::array({k[0], k[1], k[2], k[3], k[4], k[5]});
    rec["kplus"] = k.kplus(M);
    rec["kminus"] = k.kminus(M);
    rec["cone_residual"] = cone_residual(k);
    std::cout << rec.dump() << "\n";
    return 0;
}

int cmd_classify(const std::string& q_str, std::optional<double> q2_opt, double M_val) {
    const ScaleM M(M_val);
    json rec;
    if (q2_opt) {
        const Region r = classify(*q2_opt, M);
        rec["q2"] = *q2_opt;
        rec["region"] = region_name(r);
        rec["branch"] = branch_name(branch_of(r));
        const double rad = branch_of(r) == Branch::internal ? M.sq() - *q2_opt
                                                            : M.sq() + *q2_opt;
        rec["q5"] = std::sqrt(std::max(0.0, rad));
    } else {
        const FourMomentum q = parse_four(q_str);
        const HyperboloidPoint p = attach(q, M);
        rec["q"] = json_four(q);
        rec["q2"] = p.q_sq();
        rec["region"] = region_name(p.region());
        rec["branch"] = branch_name(p.branch());
        rec["q5"] = p.q5();
        rec["shell_residual"] = p.shell_residual();
        if (!is_lightlike(q, M)) rec["lambda"] = lambda_of(p);
    }
    std::cout << rec.dump() << "\n";
    return 0;
}

int cmd_orbit(const std::string& family, const std::string& axis_str,
              const std::string& dir_str, const std::string& range_str,
              const std::string& q_str, double M_val, const std::string& format) {
    const ScaleM M(M_val);
    const FourMomentum q = parse_four(q_str);
    const Range range = parse_range(range_str);
    const bool as_json = format == "json";

    auto element_at = [&](double t) -> ConformalElement {
        if (family == "dil") return Dilatation{t};
        if (family == "boost") return lorentz_boost(parse_axis(axis_str), t);
        if (family == "rot") return lorentz_rotation(parse_axis(axis_str), t);
        if (family == "trans") return Translation{t * parse_four(dir_str)};
        if (family == "sct") return SpecialConformal{t * parse_four(dir_str)};
        throw std::invalid_argument("unknown family '" + family +
                                    "' (dil, boost, rot, trans, sct)");
    };

    if (!as_json) std::cout << "param,q0,q1,q2,q3,qsq,region,q5\n";
    for (double t : range_values(range)) {
        try {
            const FourMomentum out = apply(element_at(t), q, M);
            const HyperboloidPoint p = attach(out, M);
            if (as_json) {
                json row;
                row["param"] = t;
                row["q"] = json_four(out);
                row["qsq"] = p.q_sq();
                row["region"] = region_name(p.region());
                row["q5"] = p.q5();
                std::cout << row.dump() << "\n";
            } else {
                std::cout << fmt17(t) << ',' << fmt17(out.q0) << ',' << fmt17(out.q1) << ','
                          << fmt17(out.q2) << ',' << fmt17(out.q3) << ',' << fmt17(p.q_sq())
                          << ',' << csv_field(region_name(p.region())) << ','
                          << fmt17(p.q5()) << "\n";
            }
        } catch (const DomainViolation&) {
            if (as_json) {
                json row;
                row["param"] = t;
                row["flag"] = "singular";
                std::cout << row.dump() << "\n";
            } else {
                std::cout << fmt17(t) << ",,,,,,singular,\n";
            }
        }
    }
    return 0;
}

int cmd_scan(const RunConfig& cfg, const std::string& model, const std::string& range_str,
             double M_val, double g, double phi4_mass, double f_pi, double higgs_f,
             std::uint64_t seed, const std::string& format) {
    const ScaleM M(M_val);
    const Range range = parse_range(range_str);
    if (model != "phi4" && model != "sigma" && model != "higgs")
        throw std::invalid_argument("unknown model '" + model + "' (phi4, sigma, higgs)");
    const bool as_json = format == "json";

    if (!as_json) {
        std::cout << "# scan model=" << model << " M=" << fmt17(M_val);
        if (model == "phi4") std::cout << " g=" << fmt17(g) << " m=" << fmt17(phi4_mass);
        if (model == "sigma") std::cout << " f_pi=" << fmt17(f_pi);
        if (model == "higgs") std::cout << " f=" << fmt17(higgs_f);
        std::cout << " range=" << range_str << " seed=" << seed << " units=" << cfg.units
                  << "\n";
        std::cout << "field,L_int_internal,L_int_external,flag\n";
    }

    const BranchSpec inr(Branch::internal, model == "phi4" ? phi4_mass : 0.0, M);
    const BranchSpec ext(Branch::external, model == "phi4" ? phi4_mass : 0.0, M);
    for (double v : range_values(range)) {
        std::string flag;
        double li = 0.0, le = 0.0;
        try {
            if (model == "phi4") {
                li = phi4_L_int(v, Phi4Params(g, inr));
                le = phi4_L_int(v, Phi4Params(g, ext));
            } else if (model == "sigma") {
                const PionVector pi{v, 0.0, 0.0};
                li = sigma_L_int(pi, SigmaParams(f_pi, inr));
                le = sigma_L_int(pi, SigmaParams(f_pi, ext));
            } else {
                li = higgs_L_int(v, HiggsParams(higgs_f, inr));
                le = higgs_L_int(v, HiggsParams(higgs_f, ext));
            }
        } catch (const PionPole&) {
            flag = "pole";
        } catch (const NoRealBranch&) {
            flag = "domain";
        }
        if (as_json) {
            json row;
            row["field"] = v;
            if (flag.empty()) {
                row["L_int_internal"] = li;
                row["L_int_external"] = le;
            } else {
                row["flag"] = flag;
            }
            std::cout << row.dump() << "\n";
        } else if (flag.empty()) {
            std::cout << fmt17(v) << ',' << fmt17(li) << ',' << fmt17(le) << ",\n";
        } else {
            std::cout << fmt17(v) << ",,," << csv_field(flag) << "\n";
        }
    }
    return 0;
}

int cmd_series(double f_pi, double M_val, const std::string& branch_str) {
    const ScaleM M(M_val);
    const Branch branch = branch_str == "internal" ? Branch::internal : Branch::external;
    const SigmaParams params(f_pi, BranchSpec(branch, 0.0, M));
    const SigmaSeriesFit fit = sigma_series_coefficients(params);
    const double f2 = f_pi * f_pi;

    json rec;
    rec["branch"] = branch_str;
    rec["f_pi"] = f_pi;
    rec["M"] = M_val;
    json coeffs = json::array();
    auto add = [&](const std::string& name, double fitted, double expected) {
        json c;
        c["name"] = name;
        c["fitted"] = fitted;
        c["expected"] = expected;
        c["relative_error"] = (fitted - expected) / expected;
        coeffs.push_back(c);
    };
    add("c_const", fit.c_const, -4.5 * f2);
    add("c_inv", fit.c_inv, 8.0 * f2 * f2);
    add("c_2", fit.c_2, -1.0);
    add("c_4", fit.c_4, -0.25 / f2);
    rec["coefficients"] = coeffs;
    rec["max_residual"] = fit.max_residual;
    rec["condition"] = fit.condition;
    std::cout << rec.dump() << "\n";
    return 0;
}

int cmd_masses(double m_pi, double f_pi, double higgs_f, std::optional<double> M_opt) {
    json rec;
    {
        const ScaleM M_sigma(m_pi / std::sqrt(2.0));
        json s;
        s["m_pi_input"] = m_pi;
        s["M"] = M_sigma.value();
        s["pion_mass_sq_external"] = pion_mass_sq(Branch::external, M_sigma, f_pi);
        s["pion_mass_sq_internal"] = pion_mass_sq(Branch::internal, M_sigma, f_pi);
        s["m_pi_recovered"] = std::sqrt(pion_mass_sq(Branch::external, M_sigma, f_pi));
        rec["sigma"] = s;
    }
    {
        const ScaleM M_h(M_opt.value_or(m_pi / std::sqrt(2.0)));
        const HiggsParams p(higgs_f, BranchSpec(Branch::internal, 0.0, M_h));
        const HiggsMassReport h = higgs_mass_report(p);
        json hj;
        hj["M"] = M_h.value();
        hj["f"] = higgs_f;
        hj["u_star"] = h.u_star;
        hj["raw_curvature"] = h.raw_curvature;
        hj["normalization"] = h.normalization;
        hj["mass_sq"] = h.mass_sq;
        hj["mass"] = std::sqrt(h.mass_sq);
        rec["higgs"] = hj;
    }
    std::cout << rec.dump() << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    std::vector<verify::SuiteResult> results;
    if (suite == "all")
        results = verify::run_all(seed);
    else
        results.push_back(verify::run_suite(suite, seed));
    bool ok = true;
    for (const auto& r : results) {
        json rec;
        rec["suite"] = r.suite;
        rec["checks"] = r.checks;
        rec["failures"] = r.failures;
        rec["max_residual"] = r.max_residual;
        if (!r.failure_notes.empty()) rec["notes"] = r.failure_notes;
        std::cout << rec.dump() << "\n";
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"momentum-space conformal group toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)");
    std::string format_flag;
    app.add_option("--format", format_flag, "csv|json output for orbit and scan")
        ->check(CLI::IsMember({"csv", "json"}));

    // transform
    auto* transform = app.add_subcommand("transform", "apply conformal elements to a momentum");
    std::vector<std::string> el_specs;
    std::string q_str = "1,0,0,0";
    double M_val = 0.0;  // 0 = take from config
    transform->add_option("--el", el_specs, "element spec (repeatable, word applied right-to-left)")
        ->required();
    transform->add_option("--q", q_str, "four-momentum a,b,c,d")->required();
    transform->add_option("--M", M_val, "scale parameter");

    // lift
    auto* lift_cmd = app.add_subcommand("lift", "lift a momentum to the 6D cone");
    std::string lift_q = "1,0,0,0";
    double lift_kplus = 1.0;
    double lift_M = 0.0;
    lift_cmd->add_option("--q", lift_q, "four-momentum")->required();
    lift_cmd->add_option("--kplus", lift_kplus, "projective scale (nonzero)");
    lift_cmd->add_option("--M", lift_M, "scale parameter");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "atlas region/branch of a momentum");
    std::string cls_q;
    double cls_q2 = 0.0;
    bool cls_has_q2 = false;
    double cls_M = 0.0;
    classify_cmd->add_option("--q", cls_q, "four-momentum a,b,c,d");
    classify_cmd->add_option("--q2", cls_q2, "Minkowski square directly")
        ->each([&](const std::string&) { cls_has_q2 = true; });
    classify_cmd->add_option("--M", cls_M, "scale parameter");

    // orbit
    auto* orbit = app.add_subcommand("orbit", "sweep a one-parameter family (CSV)");
    std::string orbit_family, orbit_axis = "z", orbit_dir = "0,1,0,0", orbit_range,
                orbit_q = "1,0,0,0";
    double orbit_M = 0.0;
    orbit->add_option("--family", orbit_family, "dil|boost|rot|trans|sct")->required();
    orbit->add_option("--axis", orbit_axis, "axis for boost/rot");
    orbit->add_option("--dir", orbit_dir, "direction for trans/sct");
    orbit->add_option("--range", orbit_range, "start:stop:step")->required();
    orbit->add_option("--q", orbit_q, "four-momentum");
    orbit->add_option("--M", orbit_M, "scale parameter");

    // scan
    auto* scan = app.add_subcommand("scan", "scan a model interaction Lagrangian (CSV)");
    std::string scan_model, scan_range;
    double scan_M = 0.0, scan_g = 0.0, scan_m = -1.0, scan_fpi = 0.0, scan_f = 0.0;
    scan->add_option("--model", scan_model, "phi4|sigma|higgs")->required();
    scan->add_option("--range", scan_range, "field range start:stop:step")->required();
    scan->add_option("--M", scan_M, "scale parameter");
    scan->add_option("--g", scan_g, "phi4 coupling");
    scan->add_option("--m", scan_m, "phi4 field mass (eta through the branch factors)");
    scan->add_option("--f-pi", scan_fpi, "pion decay constant");
    scan->add_option("--f", scan_f, "higgs coupling");

    // series
    auto* series = app.add_subcommand("series", "sigma-model Laurent series fit (JSON)");
    double series_fpi = 0.0, series_M = 0.0;
    std::string series_branch = "external";
    series->add_option("--f-pi", series_fpi, "pion decay constant");
    series->add_option("--M", series_M, "scale parameter");
    series->add_option("--branch", series_branch, "internal|external")
        ->check(CLI::IsMember({"internal", "external"}));

    // masses
    auto* masses = app.add_subcommand("masses", "mass relations of the models (JSON)");
    double masses_mpi = 0.0, masses_fpi = 0.0, masses_f = 0.0, masses_M = 0.0;
    masses->add_option("--m-pi", masses_mpi, "pion mass input");
    masses->add_option("--f-pi", masses_fpi, "pion decay constant");
    masses->add_option("--f", masses_f, "higgs coupling");
    masses->add_option("--M", masses_M, "scale for the higgs sector");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run property suites (JSON lines)");
    std::string verify_suite = "all";
    std::uint64_t verify_seed = 0;
    bool verify_seed_set = false;
    verify_cmd->add_option("--suite", verify_suite, "all|group|cone|atlas|fifthdim|modes|models|sigma-series");
    verify_cmd->add_option("--seed", verify_seed, "suite RNG seed")
        ->each([&](const std::string&) { verify_seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        auto or_cfg = [](double flag_value, double cfg_value) {
            return flag_value != 0.0 ? flag_value : cfg_value;
        };
        if (transform->parsed())
            return cmd_transform(cfg, el_specs, q_str, or_cfg(M_val, cfg.M));
        if (lift_cmd->parsed()) return cmd_lift(lift_q, lift_kplus, or_cfg(lift_M, cfg.M));
        if (classify_cmd->parsed()) {
            if (!cls_has_q2 && cls_q.empty())
                throw std::invalid_argument("classify needs --q or --q2");
            return cmd_classify(cls_q,
                                cls_has_q2 ? std::optional<double>(cls_q2) : std::nullopt,
                                or_cfg(cls_M, cfg.M));
        }
        const std::string format = format_flag.empty() ? cfg.format : format_flag;
        if (orbit->parsed())
            return cmd_orbit(orbit_family, orbit_axis, orbit_dir, orbit_range, orbit_q,
                             or_cfg(orbit_M, cfg.M), format);
        if (scan->parsed())
            return cmd_scan(cfg, scan_model, scan_range, or_cfg(scan_M, cfg.M),
                            or_cfg(scan_g, cfg.g), scan_m >= 0.0 ? scan_m : cfg.phi4_mass,
                            or_cfg(scan_fpi, cfg.f_pi), or_cfg(scan_f, cfg.higgs_f), cfg.seed,
                            format);
        if (series->parsed())
            return cmd_series(or_cfg(series_fpi, cfg.f_pi), or_cfg(series_M, cfg.M),
                              series_branch);
        if (masses->parsed())
            return cmd_masses(or_cfg(masses_mpi, cfg.m_pi), or_cfg(masses_fpi, cfg.f_pi),
                              or_cfg(masses_f, cfg.higgs_f),
                              masses_M != 0.0 ? std::optional<double>(masses_M)
                                              : std::nullopt);
        if (verify_cmd->parsed())
            return cmd_verify(verify_suite, verify_seed_set ? verify_seed : cfg.seed);
    } catch (const DomainViolation& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lienard/charts.hpp"
#include "lienard/classify.hpp"
#include "lienard/errors.hpp"
#include "lienard/fractal.hpp"
#include "lienard/model.hpp"
#include "lienard/relation.hpp"

using json = nlohmann::ordered_json;
using namespace lienard;

namespace {

// %.17g keeps output byte-stable across runs
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

struct Knobs {
    std::string system_path;
    double tol = 1e-10;
    double y0 = 1e3;
    int max_iter = 20000;
    double r_floor = 1e-8;
    std::string direction = "auto";
    std::string out_path;
    std::string format = "csv";
    double class_tol = 1e-6;
    double delta_decades = 3.0;
};

json knobs_json(const Knobs& k) {
    json c;
    c["system"] = k.system_path;
    c["tol"] = k.tol;
    c["y0"] = k.y0;
    c["max_iter"] = k.max_iter;
    c["r_floor"] = k.r_floor;
    c["direction"] = k.direction;
    c["format"] = k.format;
    c["classify_tol"] = k.class_tol;
    c["delta_decades"] = k.delta_decades;
    return c;
}

std::string config_comment(const Knobs& k) { return "# config " + knobs_json(k).dump() + "\n"; }

LienardSystem load_system(const Knobs& k) {
    if (k.system_path.empty()) throw InvalidInput("--system is required");
    return system_from_json(read_file(k.system_path));
}

const char* dir_name(Direction d) { return d == Direction::ForwardS ? "S" : "Sinv"; }

const char* term_name(Termination t) {
    switch (t) {
        case Termination::MaxIterations: return "max-iterations";
        case Termination::FloorReached: return "floor-reached";
        case Termination::EquationUnsolvable: return "equation-unsolvable";
        case Termination::NotDivergent: return "not-divergent";
    }
    return "?";
}

json prediction_json(const Prediction& p) {
    json j;
    j["case"] = theorem_case_name(p.theorem_case);
    if (p.predicted_dim) {
        j["predicted_dim"] = {{"num", p.predicted_dim->num},
                              {"den", p.predicted_dim->den},
                              {"value", p.predicted_dim->value()}};
    }
    if (p.gap_exponent) {
        j["gap_exponent"] = {{"num", p.gap_exponent->num},
                             {"den", p.gap_exponent->den},
                             {"value", p.gap_exponent->value()}};
    }
    j["direction"] = p.theorem_case == TheoremCase::Symmetric ? "fixed" : dir_name(p.direction);
    if (p.i_star) j["i_star"] = *p.i_star;
    if (p.predicted_ratio) j["predicted_ratio"] = *p.predicted_ratio;
    j["nondegenerate_predicted"] = p.nondegenerate_predicted;
    j["numerically_unresolved"] = p.numerically_unresolved;
    j["detail"] = p.detail;
    return j;
}

// same start-height probing as verify(): double y0 until the orbit escapes
Orbit escape_orbit(const LienardSystem& sys, const Prediction& pred, const Knobs& k,
                   Direction dir) {
    const bool below = (sys.m <= 2 * sys.n + 1);
    double rtilde = 1.0, jtilde = 0.0;
    if (below) {
        rtilde = 0.5 * rtilde_max(sys);
        jtilde = -sdi_total(sys, std::pow(rtilde, -(sys.n + 1))).value;
    } else {
        jtilde = pred.i_star.value_or(0.0);
    }
    auto r_of_y = [&](double y) {
        return below ? std::pow(y, -1.0 / (sys.n + 1)) : std::pow(y, -2.0 / (sys.m + 1));
    };
    double y0 = k.y0;
    if (below) y0 = std::max(y0, std::pow(0.5 * rtilde, -static_cast<double>(sys.n + 1)));
    for (;; y0 *= 2.0) {
        if (y0 > 1e9) throw NonConvergence("no escaping start height found up to 1e9");
        Orbit probe =
            generate_orbit_compactified(sys, r_of_y(y0), jtilde, dir, 5, k.r_floor, rtilde, k.tol);
        if (probe.termination == Termination::NotDivergent || probe.r.size() < 6) continue;
        break;
    }
    return generate_orbit_compactified(sys, r_of_y(y0), jtilde, dir, k.max_iter, k.r_floor, rtilde,
                                       k.tol);
}

Direction resolve_direction(const std::string& flag, const Prediction& pred) {
    if (flag == "S") return Direction::ForwardS;
    if (flag == "Sinv") return Direction::InverseS;
    return pred.direction;
}

std::string orbit_csv(const Orbit& orb, const LienardSystem& sys, const Knobs& k) {
    const bool below = (sys.m <= 2 * sys.n + 1);
    const double expo = below ? -static_cast<double>(sys.n + 1)
                              : -0.5 * static_cast<double>(sys.m + 1);
    std::ostringstream out;
    out << config_comment(k);
    out << "l,y_l,r_l,gap,residual\n";
    for (std::size_t l = 0; l < orb.r.size(); ++l) {
        const double y = l < orb.y.size() ? orb.y[l] : std::pow(orb.r[l], expo);
        const double gap = l + 1 < orb.r.size() ? orb.r[l] - orb.r[l + 1] : 0.0;
        const double res = l < orb.residual.size() ? orb.residual[l] : 0.0;
        out << l << ',' << fmt(y) << ',' << fmt(orb.r[l]) << ',' << fmt(gap) << ',' << fmt(res)
            << '\n';
    }
    return out.str();
}

std::string chart_name(ChartKind c) {
    switch (c) {
        case ChartKind::MainPosX: return "main-pos-x";
        case ChartKind::MainNegX: return "main-neg-x";
        case ChartKind::MainPosY: return "main-pos-y";
        case ChartKind::FamilyPosX: return "family-pos-x";
        case ChartKind::FamilyNegX: return "family-neg-x";
        case ChartKind::PhaseYPosPosX: return "phase-y-pos-pos-x";
        case ChartKind::PhaseYNegPosX: return "phase-y-neg-pos-x";
        case ChartKind::PhaseRPosX: return "phase-r-pos-x";
        case ChartKind::PhaseYPosNegX: return "phase-y-pos-neg-x";
        case ChartKind::PhaseYNegNegX: return "phase-y-neg-neg-x";
        case ChartKind::PhaseRNegX: return "phase-r-neg-x";
    }
    return "?";
}

json catalog_json(const std::vector<SingularityInfo>& cat) {
    json arr = json::array();
    for (const auto& s : cat) {
        json e;
        e["chart"] = chart_name(s.chart);
        e["location"] = {s.location[0], s.location[1], s.location[2]};
        e["eigenvalues"] = s.eigen_symbolic;
        e["eigenvalues_numeric"] = s.eigen_numeric;
        e["kind"] = s.kind;
        if (!s.note.empty()) e["note"] = s.note;
        arr.push_back(e);
    }
    return arr;
}

std::string portrait_svg(const std::vector<SingularityInfo>& cat) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
         "viewBox=\"-1.2 -1.2 2.4 2.4\">\n";
    s << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
         "stroke-width=\"0.01\"/>\n";
    int i = 0;
    const int total = static_cast<int>(cat.size());
    for (const auto& e : cat) {
        // singularities placed evenly on the disc boundary, labeled by chart
        const double th = 2.0 * 3.14159265358979312 * i / std::max(total, 1);
        const double x = std::cos(th), y = -std::sin(th);
        s << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
          << "\" r=\"0.04\" fill=\"crimson\"/>\n";
        s << "<text x=\"" << fmt(0.78 * x) << "\" y=\"" << fmt(0.78 * y)
          << "\" font-size=\"0.07\" text-anchor=\"middle\">" << chart_name(e.chart) << "</text>\n";
        ++i;
    }
    s << "</svg>\n";
    return s.str();
}

std::vector<double> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::vector<double> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'l') continue;
        try {
            pts.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw InvalidInput("points file: bad line '" + line + "'");
        }
    }
    return pts;
}

std::string dim_svg(const std::vector<double>& lx, const std::vector<double>& ly, double slope,
                    double intercept) {
    double xmin = lx[0], xmax = lx[0], ymin = ly[0], ymax = ly[0];
    for (std::size_t i = 0; i < lx.size(); ++i) {
        xmin = std::min(xmin, lx[i]);
        xmax = std::max(xmax, lx[i]);
        ymin = std::min(ymin, ly[i]);
        ymax = std::max(ymax, ly[i]);
    }
    auto sx = [&](double v) { return 40.0 + 520.0 * (v - xmin) / (xmax - xmin); };
    auto sy = [&](double v) { return 360.0 - 320.0 * (v - ymin) / (ymax - ymin); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\">\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < lx.size(); ++i)
        s << fmt(sx(lx[i])) << ',' << fmt(sy(ly[i])) << ' ';
    s << "\"/>\n";
    s << "<line stroke=\"crimson\" stroke-dasharray=\"4 3\" x1=\"" << fmt(sx(xmin)) << "\" y1=\""
      << fmt(sy(slope * xmin + intercept)) << "\" x2=\"" << fmt(sx(xmax)) << "\" y2=\""
      << fmt(sy(slope * xmax + intercept)) << "\"/>\n";
    s << "<text x=\"300\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">log-log "
         "neighborhood measure, slope "
      << fmt(slope) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

int cmd_validate(const Knobs& k) {
    const LienardSystem sys = load_system(k);
    const ValidationReport rep = validate(sys);
    json j;
    j["config"] = knobs_json(k);
    j["ok"] = rep.ok;
    j["violations"] = rep.violations;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!k.out_path.empty()) write_file(k.out_path, text);
    return rep.ok ? 0 : 2;
}

int cmd_classify(const Knobs& k) {
    const LienardSystem sys = load_system(k);
    const Prediction pred = classify(sys, k.class_tol);
    if (pred.theorem_case == TheoremCase::Symmetric) {
        std::cout << "Symmetric: S is the identity\n";
    } else {
        std::cout << theorem_case_name(pred.theorem_case) << ": direction "
                  << dir_name(pred.direction);
        if (pred.predicted_dim)
            std::cout << ", predicted dim " << pred.predicted_dim->num << '/'
                      << pred.predicted_dim->den << " = " << fmt(pred.predicted_dim->value());
        std::cout << '\n';
    }
    json j;
    j["config"] = knobs_json(k);
    j["prediction"] = prediction_json(pred);
    if (!k.out_path.empty()) write_file(k.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_orbit(const Knobs& k) {
    const LienardSystem sys = load_system(k);
    const Prediction pred = classify(sys, k.class_tol);
    if (k.direction == "auto" && !pred.predicted_dim)
        throw InvalidInput("no escaping direction for case " +
                           theorem_case_name(pred.theorem_case) + "; pass --direction");
    const Direction dir = resolve_direction(k.direction, pred);
    const Orbit orb = escape_orbit(sys, pred, k, dir);
    const std::string csv = orbit_csv(orb, sys, k);
    std::cout << "orbit: " << orb.r.size() << " terms, direction " << dir_name(dir)
              << ", termination " << term_name(orb.termination) << '\n';
    if (!k.out_path.empty())
        write_file(k.out_path, csv);
    else
        std::cout << csv;
    return 0;
}

int cmd_dim(const Knobs& k, const std::string& points_path) {
    std::vector<double> pts;
    if (!points_path.empty()) {
        pts = read_points_csv(points_path);
    } else {
        const LienardSystem sys = load_system(k);
        const Prediction pred = classify(sys, k.class_tol);
        if (!pred.predicted_dim)
            throw InvalidInput("case " + theorem_case_name(pred.theorem_case) +
                               " has no escaping orbit to measure");
        pts = escape_orbit(sys, pred, k, resolve_direction(k.direction, pred)).r;
    }
    const DimensionEstimate dn = dimension_neighborhood(pts, k.delta_decades);
    std::optional<DimensionEstimate> dg;
    try {
        dg = dimension_gap_law(pts);
    } catch (const NumericalFailure&) {
    }
    json j;
    j["config"] = knobs_json(k);
    j["neighborhood"] = {{"value", dn.value},
                         {"method", dn.method},
                         {"stderr", dn.stderr_},
                         {"window_lo", dn.window.first},
                         {"window_hi", dn.window.second},
                         {"nondegeneracy", dn.nondegeneracy}};
    if (dg)
        j["gap_law"] = {{"value", dg->value}, {"method", dg->method}, {"stderr", dg->stderr_}};
    std::cout << j.dump(2) << '\n';
    if (k.out_path.empty()) return 0;
    // delta sweep table (and optional log-log plot) over the fitted window
    const double lo = dn.window.first > 0.0 ? dn.window.first : pts.back();
    const double hi = dn.window.second > 0.0 ? dn.window.second : pts.front();
    std::vector<double> lx, ly;
    std::ostringstream csv;
    csv << config_comment(k) << "delta,measure\n";
    const int samples = 80;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double delta = lo * std::pow(hi / lo, t);
        const double mu = neighborhood_length(pts, delta) + pts.back();
        csv << fmt(delta) << ',' << fmt(mu) << '\n';
        lx.push_back(std::log(delta));
        ly.push_back(std::log(mu));
    }
    if (k.format == "svg") {
        double sxy = 0, sx = 0, sy2 = 0, sxx = 0;
        const double nn = static_cast<double>(lx.size());
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy2 += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double slope = (nn * sxy - sx * sy2) / (nn * sxx - sx * sx);
        write_file(k.out_path, dim_svg(lx, ly, slope, (sy2 - slope * sx) / nn));
    } else {
        write_file(k.out_path, csv.str());
    }
    return 0;
}

int cmd_portrait(const Knobs& k) {
    const LienardSystem sys = load_system(k);
    const auto cat = singularity_catalog(sys);
    json j;
    j["config"] = knobs_json(k);
    j["canard_at_infinity_feasible"] = canard_at_infinity_feasible(sys);
    j["singularities"] = catalog_json(cat);
    const std::string text = k.format == "svg" ? portrait_svg(cat) : j.dump(2) + "\n";
    std::cout << "catalog: " << cat.size() << " singularities\n";
    if (!k.out_path.empty())
        write_file(k.out_path, text);
    else
        std::cout << text;
    return 0;
}

json verify_json(const VerifyReport& rep) {
    json j;
    j["ok"] = rep.ok;
    j["prediction"] = prediction_json(rep.prediction);
    j["orbit_length"] = rep.orbit.r.size();
    j["orbit_termination"] = term_name(rep.orbit.termination);
    j["dim_neighborhood"] = rep.dim_neighborhood;
    j["dim_gap_law"] = rep.dim_gap_law;
    j["gap_exponent_estimate"] = rep.gap_exponent_estimate;
    j["nondegeneracy"] = rep.nondegeneracy;
    j["message"] = rep.message;
    return j;
}

int cmd_verify(const Knobs& k) {
    const LienardSystem sys = load_system(k);
    const Prediction pred = classify(sys, k.class_tol);
    VerifyBudget budget;
    budget.max_iter = k.max_iter;
    budget.r_floor = k.r_floor;
    budget.tol = k.tol;
    const VerifyReport rep = verify(sys, pred, budget);
    json j;
    j["config"] = knobs_json(k);
    j["report"] = verify_json(rep);
    std::cout << j.dump(2) << '\n';
    if (!k.out_path.empty()) write_file(k.out_path, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const Knobs& k, const std::string& in_path) {
    std::ifstream in(in_path);
    if (!in) throw InvalidInput("cannot open " + in_path);
    std::ostringstream csv;
    csv << config_comment(k);
    csv << "id,case,predicted_dim,estimated_dim,gap_exponent,nondegeneracy,residual_i_star,"
           "residual_dim\n";
    std::string line;
    int id = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const LienardSystem sys = system_from_json(line);
        const Prediction pred = classify(sys, k.class_tol);
        csv << id << ',' << theorem_case_name(pred.theorem_case) << ',';
        if (!pred.predicted_dim) {
            csv << ",,,," << fmt(pred.i_star.value_or(0.0)) << ",\n";
            ++id;
            continue;
        }
        VerifyBudget budget;
        budget.max_iter = k.max_iter;
        budget.r_floor = k.r_floor;
        budget.tol = k.tol;
        const VerifyReport rep = verify(sys, pred, budget);
        csv << fmt(pred.predicted_dim->value()) << ',' << fmt(rep.dim_neighborhood) << ','
            << fmt(rep.gap_exponent_estimate) << ',' << fmt(rep.nondegeneracy) << ','
            << fmt(pred.i_star.value_or(0.0)) << ','
            << fmt(std::fabs(rep.dim_neighborhood - pred.predicted_dim->value())) << '\n';
        ++id;
    }
    std::cout << csv.str();
    if (!k.out_path.empty()) write_file(k.out_path, csv.str());
    return 0;
}

int cmd_balance(const Knobs& k, const std::string& family, int index, double lo, double hi) {
    const LienardSystem sys = load_system(k);
    const LienardSystem tuned = balance_search(
        sys, family == "b" ? CoefFamily::B : CoefFamily::A, index, lo, hi, k.class_tol);
    const std::string text = system_to_json(tuned) + "\n";
    std::cout << text;
    if (!k.out_path.empty()) write_file(k.out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slow-fast Lienard systems near infinity: classification, orbits, box dimension"};
    app.require_subcommand(1);

    Knobs k;
    std::string points_path, sweep_in, family = "a";
    int tune_index = 0;
    double tune_lo = -1.0, tune_hi = 1.0;

    auto add_common = [&](CLI::App* c, bool needs_system = true) {
        auto* opt = c->add_option("--system", k.system_path, "system description (JSON file)");
        if (needs_system) opt->required();
        c->add_option("--tol", k.tol, "solver tolerance");
        c->add_option("--y0", k.y0, "starting height");
        c->add_option("--max-iter", k.max_iter, "orbit length cap");
        c->add_option("--r-floor", k.r_floor, "smallest compactified radius");
        c->add_option("--direction", k.direction, "auto | S | Sinv")
            ->check(CLI::IsMember({"auto", "S", "Sinv"}));
        c->add_option("--out", k.out_path, "output file");
        c->add_option("--format", k.format, "csv | json | svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        c->add_option("--classify-tol", k.class_tol, "threshold for treating I* as zero");
        c->add_option("--delta-decades", k.delta_decades, "width of the fitting window");
    };

    auto* c_validate = app.add_subcommand("validate", "check the standing assumptions");
    add_common(c_validate);
    auto* c_classify = app.add_subcommand("classify", "predict case, direction and dimension");
    add_common(c_classify);
    auto* c_orbit = app.add_subcommand("orbit", "generate an escaping orbit (CSV)");
    add_common(c_orbit);
    auto* c_dim = app.add_subcommand("dim", "estimate the box dimension of a sequence");
    add_common(c_dim, false);
    c_dim->add_option("--points", points_path, "CSV file with one decreasing column");
    auto* c_portrait = app.add_subcommand("portrait", "singularity catalog at infinity");
    add_common(c_portrait);
    auto* c_verify = app.add_subcommand("verify", "compare prediction against measurement");
    add_common(c_verify);
    auto* c_sweep = app.add_subcommand("sweep", "batch verify (JSON-lines in, CSV out)");
    add_common(c_sweep, false);
    c_sweep->add_option("--in", sweep_in, "JSON-lines file of systems")->required();
    auto* c_balance = app.add_subcommand("balance", "tune one coefficient until I* vanishes");
    add_common(c_balance);
    c_balance->add_option("--family", family, "a | b")->check(CLI::IsMember({"a", "b"}));
    c_balance->add_option("--index", tune_index, "coefficient index")->required();
    c_balance->add_option("--lo", tune_lo, "bracket low end");
    c_balance->add_option("--hi", tune_hi, "bracket high end");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_validate->parsed()) return cmd_validate(k);
        if (c_classify->parsed()) return cmd_classify(k);
        if (c_orbit->parsed()) return cmd_orbit(k);
        if (c_dim->parsed()) return cmd_dim(k, points_path);
        if (c_portrait->parsed()) return cmd_portrait(k);
        if (c_verify->parsed()) return cmd_verify(k);
        if (c_sweep->parsed()) return cmd_sweep(k, sweep_in);
        if (c_balance->parsed()) return cmd_balance(k, family, tune_index, tune_lo, tune_hi);
    } catch (const AssumptionViolation& e) {
        std::cerr << "assumption violation: " << e.what() << '\n';
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

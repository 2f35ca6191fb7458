#include "helicity/calculus.hpp"
#include "helicity/conjugacy.hpp"
#include "helicity/contact.hpp"
#include "helicity/errors.hpp"
#include "helicity/suspension.hpp"
#include "helicity/torus.hpp"

#include "json_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

namespace {

using namespace helicity;
using helicity::cli::JsonWriter;

constexpr double kGoldenRatio = 0.6180339887498949;

struct CommonOpts {
    std::vector<int> grid;
    double tolerance = kDefaultPrimitiveTolerance;
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--grid", opts.grid, "grid resolution (one value or one per axis)")->delimiter(',');
    cmd->add_option("--tolerance", opts.tolerance, "primitive residual tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", opts.output, "write the report to this path");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int env_default_grid(int fallback) {
    if (const char* env = std::getenv("HELICITY_GRID")) {
        const int parsed = std::atoi(env);
        if (parsed >= 4) return parsed;
    }
    return fallback;
}

ChartGrid grid_for(ManifoldId m, const CommonOpts& opts, int fallback) {
    if (opts.grid.empty()) return make_grid(m, env_default_grid(fallback));
    return make_grid(m, std::span<const int>(opts.grid.data(), opts.grid.size()));
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(opts.output);
    if (!out) throw DomainError(ErrorCode::IoError, "cannot write '" + opts.output + "'");
    out << text << '\n';
}

double parse_theta(const std::string& text) {
    if (text == "golden") return kGoldenRatio;
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used == text.size()) return value;
    } catch (...) {
    }
    throw DomainError(ErrorCode::IoError, "theta must be a number or 'golden'");
}

ManifoldId manifold_arg(const std::string& token) {
    if (auto m = manifold_from_token(token)) return *m;
    throw DomainError(ErrorCode::ManifoldMismatch, "unknown manifold '" + token + "'");
}

void append_grid(JsonWriter& w, const ChartGrid& grid) {
    w.begin_object("grid");
    w.key_value("manifold", std::string(manifold_token(grid.manifold())));
    w.begin_array("resolution").array_values(grid.resolution()).end_array();
    w.end_object();
}

void append_result(JsonWriter& w, const HelicityResult& result, double tolerance) {
    w.key_value("value", result.value);
    w.key_value("method", std::string(method_name(result.method)));
    if (result.residual.has_value()) w.key_value("residual", *result.residual);
    w.key_value("tolerance", tolerance);
    w.begin_object("grid");
    w.key_value("manifold", std::string(manifold_token(result.grid.manifold)));
    w.begin_array("resolution").array_values(result.grid.resolution).end_array();
    w.end_object();
}

// --------------------------------------------------------------------------
// Subcommand bodies

void run_contact(const std::string& manifold, const std::string& h_text, bool cross_check,
                 const CommonOpts& opts) {
    const ManifoldId m = manifold_arg(manifold);
    const ChartGrid grid = grid_for(m, opts, 48);
    const ScalarField h(m, parse_expr(h_text));
    const HelicityResult result = helicity_contact(h, grid);
    const BoundsReport bounds = bounds_check(h, grid);

    JsonWriter w;
    w.begin_object();
    append_result(w, result, opts.tolerance);
    w.begin_object("bounds");
    w.key_value("lower", bounds.lower);
    w.key_value("upper", bounds.upper);
    w.key_value("tight_lower", bounds.tight_lower);
    w.key_value("tight_upper", bounds.tight_upper);
    w.end_object();
    if (cross_check) {
        const auto beta = beta_primitive_s3(h, grid);
        const ContactField field(h, grid);
        const auto direct = helicity_direct(field, beta, grid, opts.tolerance);
        w.key_value("direct_value", direct.value);
        w.key_value("direct_residual", *direct.residual);
        w.key_value("cross_check_gap", std::abs(direct.value - result.value));
    }
    w.end_object();
    emit(opts, w.take());
}

void run_relative(const std::string& manifold, const std::string& h_text,
                  const std::string& k_text, const CommonOpts& opts) {
    const ManifoldId m = manifold_arg(manifold);
    const ChartGrid grid = grid_for(m, opts, 48);
    const ScalarField h(m, parse_expr(h_text));
    const ScalarField k(m, parse_expr(k_text));
    JsonWriter w;
    w.begin_object();
    w.key_value("value", relative_helicity_contact(h, k, grid));
    w.key_value("method", "ContactFormula");
    append_grid(w, grid);
    w.end_object();
    emit(opts, w.take());
}

void run_direct(const std::string& h_text, const CommonOpts& opts) {
    const ChartGrid grid = grid_for(ManifoldId::Sphere3, opts, 48);
    const ScalarField h(ManifoldId::Sphere3, parse_expr(h_text));
    const auto beta = beta_primitive_s3(h, grid);
    const ContactField field(h, grid);
    const auto result = helicity_direct(field, beta, grid, opts.tolerance);
    const auto contact = helicity_contact(h, grid);
    JsonWriter w;
    w.begin_object();
    append_result(w, result, opts.tolerance);
    w.key_value("contact_value", contact.value);
    w.key_value("cross_check_gap", std::abs(result.value - contact.value));
    w.end_object();
    emit(opts, w.take());
}

void run_timedep(const std::string& h_text, int time_nodes, const CommonOpts& opts) {
    const ChartGrid grid = grid_for(ManifoldId::Sphere3, opts, 32);
    const ScalarField h(ManifoldId::Sphere3, parse_expr(h_text), true);
    const auto result = helicity_timedep(h, grid, time_nodes);
    JsonWriter w;
    w.begin_object();
    append_result(w, result, opts.tolerance);
    w.key_value("time_nodes", time_nodes);
    w.end_object();
    emit(opts, w.take());
}

void run_bounds(const std::string& manifold, const std::string& h_text,
                const CommonOpts& opts) {
    const ManifoldId m = manifold_arg(manifold);
    const ChartGrid grid = grid_for(m, opts, 48);
    const auto report = bounds_check(ScalarField(m, parse_expr(h_text)), grid);
    JsonWriter w;
    w.begin_object();
    w.key_value("lower", report.lower);
    w.key_value("value", report.value);
    w.key_value("upper", report.upper);
    w.key_value("tight_lower", report.tight_lower);
    w.key_value("tight_upper", report.tight_upper);
    append_grid(w, grid);
    w.end_object();
    emit(opts, w.take());
}

void run_lift(const std::string& f_text, const CommonOpts& opts) {
    const ChartGrid grid = grid_for(ManifoldId::Sphere2, opts, 64);
    const auto report = horizontal_lift_helicity(ScalarField(ManifoldId::Sphere2, parse_expr(f_text)), grid);
    JsonWriter w;
    w.begin_object();
    w.key_value("value", report.value);
    w.key_value("constant_input", report.constant_input);
    append_grid(w, grid);
    w.end_object();
    emit(opts, w.take());
}

void run_disc_average(const std::string& h_text, const CommonOpts& opts) {
    const ChartGrid grid = grid_for(ManifoldId::Sphere3, opts, 48);
    const ScalarField h(ManifoldId::Sphere3, parse_expr(h_text));
    const double disc = filling_disc_average(h, grid);
    JsonWriter w;
    w.begin_object();
    w.key_value("disc_average", disc);
    w.key_value("volume_average", average(h, grid));
    append_grid(w, grid);
    w.end_object();
    emit(opts, w.take());
}

void run_fiber_linking(const std::string& f_text, const std::string& points_path,
                       const CommonOpts& opts) {
    std::ifstream in(points_path);
    if (!in) throw DomainError(ErrorCode::IoError, "cannot open '" + points_path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw DomainError(ErrorCode::IoError, std::string("bad JSON: ") + err.what());
    }
    std::vector<SignedPoint> points;
    for (const auto& entry : doc) {
        if (!entry.is_array() || entry.size() != 3)
            throw DomainError(ErrorCode::IoError, "points must be [phi, psi, sign] triples");
        points.push_back(SignedPoint{{entry[0].get<double>(), entry[1].get<double>()},
                                     entry[2].get<int>()});
    }
    const double value =
        fiber_linking(ScalarField(ManifoldId::Sphere2, parse_expr(f_text)), points);
    JsonWriter w;
    w.begin_object();
    w.key_value("value", value);
    w.key_value("points", static_cast<long long>(points.size()));
    w.end_object();
    emit(opts, w.take());
}

void run_limit(const std::string& exprs_path, const CommonOpts& opts) {
    std::ifstream in(exprs_path);
    if (!in) throw DomainError(ErrorCode::IoError, "cannot open '" + exprs_path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw DomainError(ErrorCode::IoError, std::string("bad JSON: ") + err.what());
    }
    std::vector<ScalarField> sequence;
    for (const auto& entry : doc)
        sequence.emplace_back(ManifoldId::Sphere3, parse_expr(entry.get<std::string>()));
    const ChartGrid grid = grid_for(ManifoldId::Sphere3, opts, 32);
    const auto report = helicity_limit(sequence, grid);

    if (opts.format == "csv") {
        std::string csv = "i,value,sup_gap\n";
        for (std::size_t i = 0; i < report.values.size(); ++i) {
            csv += std::to_string(i) + ',' + JsonWriter::format_double(report.values[i]) + ',';
            csv += i + 1 < report.values.size() ? JsonWriter::format_double(report.sup_gaps[i])
                                                : std::string();
            csv += '\n';
        }
        csv.pop_back();
        emit(opts, csv);
        return;
    }
    JsonWriter w;
    w.begin_object();
    w.begin_array("values");
    for (double v : report.values) w.array_value(v);
    w.end_array();
    w.begin_array("sup_gaps");
    for (double g : report.sup_gaps) w.array_value(g);
    w.end_array();
    append_grid(w, grid);
    w.end_object();
    emit(opts, w.take());
}

void run_suspension(const std::string& f_text, double support, const CommonOpts& opts) {
    const IsotopySpec spec(parse_expr(f_text), support);
    ChartGrid torus = [&] {
        if (!opts.grid.empty())
            return make_grid(ManifoldId::SolidTorus,
                             std::span<const int>(opts.grid.data(), opts.grid.size()));
        const int res[3] = {env_default_grid(64), 24, 16};
        return make_grid(ManifoldId::SolidTorus, std::span<const int>(res, 3));
    }();
    const int disk_res[2] = {torus.resolution()[0], torus.resolution()[1]};
    const ChartGrid disk = make_grid(ManifoldId::Disk2, std::span<const int>(disk_res, 2));

    const double cal = calabi(spec, disk, torus.resolution()[2]);
    const auto direct = suspension_helicity_direct(spec, torus);
    const double relative = relative_helicity_suspension(spec, torus);
    JsonWriter w;
    w.begin_object();
    w.key_value("calabi", cal);
    w.key_value("helicity", direct.value);
    w.key_value("relative", relative);
    w.key_value("residual", *direct.residual);
    w.key_value("twice_calabi_gap", std::abs(direct.value - 2.0 * cal));
    append_grid(w, torus);
    w.end_object();
    emit(opts, w.take());
}

void run_double_suspension(const std::string& f1_text, const std::string& f2_text,
                           double support1, double support2, const CommonOpts& opts) {
    const IsotopySpec spec1(parse_expr(f1_text), support1);
    const IsotopySpec spec2(parse_expr(f2_text), support2);
    ChartGrid torus = [&] {
        if (!opts.grid.empty())
            return make_grid(ManifoldId::SolidTorus,
                             std::span<const int>(opts.grid.data(), opts.grid.size()));
        const int res[3] = {env_default_grid(64), 24, 16};
        return make_grid(ManifoldId::SolidTorus, std::span<const int>(res, 3));
    }();
    const ChartGrid s3 = make_grid(ManifoldId::Sphere3, 24);
    const auto report = double_suspension_helicity(spec1, spec2, torus, s3);
    JsonWriter w;
    w.begin_object();
    w.key_value("formula_value", report.formula_value);
    w.begin_object("termwise");
    w.key_value("h_sum", report.h_sum);
    w.key_value("r_reeb", report.r_reeb);
    w.key_value("h_reeb", report.h_reeb);
    w.key_value("total", report.termwise_total);
    w.end_object();
    w.key_value("cal1", report.cal1);
    w.key_value("cal2", report.cal2);
    w.key_value("termwise_gap", std::abs(report.termwise_total - report.formula_value));
    append_grid(w, torus);
    w.end_object();
    emit(opts, w.take());
}

void run_torus(const std::string& coeffs_path, bool direct, const CommonOpts& opts) {
    const TorusHamiltonian h(helicity::cli::read_spectrum_file(coeffs_path));
    const ChartGrid grid = grid_for(ManifoldId::Torus3, opts, 32);
    const auto flux = torus_flux(h);
    const double kappa = torus_kappa(grid);

    JsonWriter w;
    w.begin_object();
    w.begin_object("flux");
    w.key_value("a1", flux.a1);
    w.key_value("b1", flux.b1);
    w.end_object();
    w.key_value("exact", flux.exact);
    w.key_value("kappa", kappa);
    // The formula needs exactness; report it (and optionally the direct
    // quadrature) only when the field has a primitive.
    const double formula = torus_helicity_fourier(h, kappa);
    w.key_value("formula_value", formula);
    if (direct) {
        const auto result = torus_helicity_direct(h, grid, opts.tolerance);
        w.key_value("direct_value", result.value);
        w.key_value("residual", *result.residual);
        w.key_value("formula_gap", std::abs(result.value - formula));
    }
    append_grid(w, grid);
    w.end_object();
    emit(opts, w.take());
}

void append_split(JsonWriter& w, const SplitReport& split) {
    w.begin_object("split");
    w.key_value("eta", split.eta);
    w.key_value("residual_sup", split.residual_sup);
    w.key_value("small_divisor_min", split.small_divisor_min);
    w.begin_array("c0_partial_sums");
    for (double v : split.c0_partial_sums) w.array_value(v);
    w.end_array();
    w.begin_array("c1_partial_sums");
    for (double v : split.c1_partial_sums) w.array_value(v);
    w.end_array();
    w.end_object();
}

void run_furstenberg(const std::string& theta_text, int d, const std::string& coeffs_path,
                     bool do_split, int orbit, int cells, int example_terms, bool relaxed,
                     const CommonOpts& opts) {
    JsonWriter w;
    w.begin_object();

    if (example_terms > 0) {
        const auto example = furstenberg_example(example_terms, relaxed);
        w.key_value("theta", example.theta);
        w.key_value("relaxed", example.relaxed);
        w.begin_array("frequencies");
        for (long long n : example.frequencies) w.array_value(static_cast<double>(n));
        w.end_array();
        w.begin_array("fractional_parts");
        for (double v : example.fractional_parts) w.array_value(v);
        w.end_array();
        w.begin_array("c0_partial_sums");
        for (double v : example.c0_partial_sums) w.array_value(v);
        w.end_array();
        w.begin_array("c1_partial_sums");
        for (double v : example.c1_partial_sums) w.array_value(v);
        w.end_array();
        w.key_value("split_residual", example.split_residual);
        w.end_object();
        emit(opts, w.take());
        return;
    }

    const double theta = parse_theta(theta_text);
    FourierSpectrum f = coeffs_path.empty() ? FourierSpectrum(1)
                                            : helicity::cli::read_spectrum_file(coeffs_path);
    const auto map = make_furstenberg_map(theta, d, std::move(f));
    w.key_value("theta", theta);
    w.key_value("d", d);
    if (do_split) append_split(w, split_function(map.f, theta, map.f.max_index()));
    if (orbit > 0) {
        w.begin_object("orbit");
        w.key_value("length", orbit);
        w.key_value("cells", cells);
        w.key_value("discrepancy", orbit_discrepancy(map, {0.1, 0.2}, orbit, cells));
        w.end_object();
    }
    w.end_object();
    emit(opts, w.take());
}

void run_split(const std::string& coeffs_path, const std::string& theta_text, int max_index,
               const CommonOpts& opts) {
    const FourierSpectrum f = helicity::cli::read_spectrum_file(coeffs_path);
    const double theta = parse_theta(theta_text);
    const int n = max_index > 0 ? max_index : f.max_index();
    const auto split = split_function(f, theta, n);

    if (opts.format == "csv") {
        std::string csv = "m,c0_partial,c1_partial\n";
        for (std::size_t i = 0; i < split.c0_partial_sums.size(); ++i) {
            csv += std::to_string(i + 1) + ',' +
                   JsonWriter::format_double(split.c0_partial_sums[i]) + ',' +
                   JsonWriter::format_double(split.c1_partial_sums[i]) + '\n';
        }
        csv.pop_back();
        emit(opts, csv);
        return;
    }
    JsonWriter w;
    w.begin_object();
    w.key_value("theta", theta);
    append_split(w, split);
    w.end_object();
    emit(opts, w.take());
}

void run_lipschitz(const std::string& rho_text, int n_max, double cutoff,
                   const CommonOpts& opts) {
    const TwistHomeo tw{parse_expr(rho_text), 0.0, cutoff};
    const auto report = lipschitz_lower_bounds(tw, n_max);
    if (opts.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.key_value("skipped", report.skipped);
        w.begin_array("pairs");
        for (const auto& pair : report.pairs) {
            w.begin_object();
            w.key_value("n", pair.n);
            w.key_value("r_n", pair.r_n);
            w.key_value("r_prime_n", pair.r_prime_n);
            w.key_value("L_n", pair.lower_bound);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        emit(opts, w.take());
        return;
    }
    std::string csv = "n,r_n,L_n\n";
    for (const auto& pair : report.pairs) {
        csv += std::to_string(pair.n) + ',' + JsonWriter::format_double(pair.r_n) + ',' +
               JsonWriter::format_double(pair.lower_bound) + '\n';
    }
    if (!report.pairs.empty()) csv.pop_back();
    emit(opts, csv);
}

void run_discrepancy(const std::string& theta_text, int d, const std::string& coeffs_path,
                     int iterations, int cells, double start_u, double start_v,
                     const CommonOpts& opts) {
    FourierSpectrum f = coeffs_path.empty() ? FourierSpectrum(1)
                                            : helicity::cli::read_spectrum_file(coeffs_path);
    const auto map = make_furstenberg_map(parse_theta(theta_text), d, std::move(f));
    const double value = orbit_discrepancy(map, {start_u, start_v}, iterations, cells);
    JsonWriter w;
    w.begin_object();
    w.key_value("discrepancy", value);
    w.key_value("iterations", iterations);
    w.key_value("cells", cells);
    w.end_object();
    emit(opts, w.take());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"helicity: closed-form and direct helicity computations on model three-manifolds"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");
    app.set_config("--config", "", "read defaults from a config file (flags win)");

    // The Hamiltonian option is spelled --h, so the short help flag must go.
    auto add_sub = [&app](const std::string& name, const std::string& description) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->set_help_flag("--help", "print this help message and exit");
        sub->set_config("--config", "", "read defaults from a config file (flags win)");
        return sub;
    };

    CommonOpts opts;
    CommonOpts seq_opts; // sequence-producing commands default to CSV
    seq_opts.format = "csv";
    std::string manifold = "s3";
    std::string h_text, k_text, f_text, f2_text;
    std::string coeffs_path, points_path, exprs_path, theta_text = "golden", rho_text;
    bool cross_check = false, torus_direct = false, do_split = false, relaxed = false;
    int time_nodes = 64, orbit = 0, cells = 8, d = 1, split_n = 0, n_max = 20;
    int example_terms = 0, iterations = 100000;
    double support = 0.9, support2 = 0.9, cutoff = 0.9, start_u = 0.1, start_v = 0.2;

    auto* contact = add_sub("contact", "closed-form helicity of a basic Hamiltonian");
    contact->add_option("--manifold", manifold)->check(CLI::IsMember({"s3", "t3"}));
    contact->add_option("--h", h_text, "Hamiltonian expression")->required();
    contact->add_flag("--cross-check", cross_check, "also run the direct quadrature");
    add_common(contact, opts);
    contact->callback([&] { run_contact(manifold, h_text, cross_check, opts); });

    auto* relative = add_sub("relative", "relative helicity of two Hamiltonians");
    relative->add_option("--manifold", manifold)->check(CLI::IsMember({"s3", "t3"}));
    relative->add_option("--h", h_text)->required();
    relative->add_option("--k", k_text)->required();
    add_common(relative, opts);
    relative->callback([&] { run_relative(manifold, h_text, k_text, opts); });

    auto* direct = add_sub("direct", "direct-definition helicity on the three-sphere");
    direct->add_option("--h", h_text, "zonal basic Hamiltonian")->required();
    add_common(direct, opts);
    direct->callback([&] { run_direct(h_text, opts); });

    auto* timedep = add_sub("timedep", "time-dependent helicity");
    timedep->add_option("--h", h_text, "Hamiltonian in chart variables and t")->required();
    timedep->add_option("--time-nodes", time_nodes)->check(CLI::PositiveNumber);
    add_common(timedep, opts);
    timedep->callback([&] { run_timedep(h_text, time_nodes, opts); });

    auto* bounds = add_sub("bounds", "L2 bounds with tightness flags");
    bounds->add_option("--manifold", manifold)->check(CLI::IsMember({"s3", "t3"}));
    bounds->add_option("--h", h_text)->required();
    add_common(bounds, opts);
    bounds->callback([&] { run_bounds(manifold, h_text, opts); });

    auto* lift = add_sub("lift", "helicity of a horizontal lift");
    lift->add_option("--f", f_text, "function on the base two-sphere")->required();
    add_common(lift, opts);
    lift->callback([&] { run_lift(f_text, opts); });

    auto* disc = add_sub("disc-average", "average via the filling disc");
    disc->add_option("--h", h_text)->required();
    add_common(disc, opts);
    disc->callback([&] { run_disc_average(h_text, opts); });

    auto* fiber = add_sub("fiber-linking", "linking against signed fibers");
    fiber->add_option("--f", f_text)->required();
    fiber->add_option("--points", points_path, "JSON [[phi, psi, sign], ...]")->required();
    add_common(fiber, opts);
    fiber->callback([&] { run_fiber_linking(f_text, points_path, opts); });

    auto* limit = add_sub("limit", "helicities along a sequence of Hamiltonians");
    limit->add_option("--exprs", exprs_path, "JSON array of expressions")->required();
    add_common(limit, seq_opts);
    limit->callback([&] { run_limit(exprs_path, seq_opts); });

    auto* susp = add_sub("suspension", "suspension helicity and Calabi invariant");
    susp->add_option("--f", f_text, "Hamiltonian in (r, theta, t)")->required();
    susp->add_option("--support", support)->check(CLI::Range(0.0, 1.0));
    add_common(susp, opts);
    susp->callback([&] { run_suspension(f_text, support, opts); });

    auto* dsusp = add_sub("double-suspension", "glued suspension on the three-sphere");
    dsusp->add_option("--f1", f_text)->required();
    dsusp->add_option("--f2", f2_text)->required();
    dsusp->add_option("--support1", support)->check(CLI::Range(0.0, 1.0));
    dsusp->add_option("--support2", support2)->check(CLI::Range(0.0, 1.0));
    add_common(dsusp, opts);
    dsusp->callback([&] { run_double_suspension(f_text, f2_text, support, support2, opts); });

    auto* torus = add_sub("torus", "helicity on the three-torus from Fourier data");
    torus->add_option("--coeffs", coeffs_path, "spectrum JSON file")->required();
    torus->add_flag("--direct", torus_direct, "also run the direct quadrature");
    add_common(torus, opts);
    torus->callback([&] { run_torus(coeffs_path, torus_direct, opts); });

    auto* furst = add_sub("furstenberg", "skew-product torus maps");
    furst->add_option("--theta", theta_text, "rotation number or 'golden'");
    furst->add_option("--d", d, "degree of the skew product");
    furst->add_option("--f", coeffs_path, "spectrum JSON file");
    furst->add_flag("--split", do_split, "solve the splitting equation");
    furst->add_option("--orbit", orbit, "orbit length for the discrepancy report");
    furst->add_option("--cells", cells)->check(CLI::PositiveNumber);
    furst->add_option("--example", example_terms,
                      "emit the splittable-but-not-C1 construction with K terms");
    furst->add_flag("--relaxed", relaxed, "relaxed frequency bounds for the example");
    add_common(furst, opts);
    furst->callback([&] {
        run_furstenberg(theta_text, d, coeffs_path, do_split, orbit, cells, example_terms,
                        relaxed, opts);
    });

    auto* split = add_sub("split", "cohomological splitting equation");
    split->add_option("--f", coeffs_path, "spectrum JSON file")->required();
    split->add_option("--theta", theta_text);
    split->add_option("--n", split_n, "bandwidth (defaults to the spectrum size)");
    add_common(split, opts);
    split->callback([&] { run_split(coeffs_path, theta_text, split_n, opts); });

    auto* lipschitz = add_sub("lipschitz", "Lipschitz lower-bound certificates");
    lipschitz->add_option("--rho", rho_text, "twist profile in r")->required();
    lipschitz->add_option("--nmax", n_max)->check(CLI::NonNegativeNumber);
    lipschitz->add_option("--cutoff", cutoff)->check(CLI::Range(0.0, 1.0));
    add_common(lipschitz, seq_opts);
    lipschitz->callback([&] { run_lipschitz(rho_text, n_max, cutoff, seq_opts); });

    auto* disc_cmd = add_sub("discrepancy", "orbit box-count discrepancy");
    disc_cmd->add_option("--theta", theta_text);
    disc_cmd->add_option("--d", d);
    disc_cmd->add_option("--f", coeffs_path);
    disc_cmd->add_option("--n", iterations)->check(CLI::PositiveNumber);
    disc_cmd->add_option("--cells", cells)->check(CLI::PositiveNumber);
    disc_cmd->add_option("--start-u", start_u);
    disc_cmd->add_option("--start-v", start_v);
    add_common(disc_cmd, opts);
    disc_cmd->callback([&] {
        run_discrepancy(theta_text, d, coeffs_path, iterations, cells, start_u, start_v, opts);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        std::cerr << err.what() << '\n' << app.help();
        return 2;
    } catch (const helicity::DomainError& err) {
        std::cerr << err.name() << ": " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catlab/catenoid.hpp"
#include "catlab/errors.hpp"
#include "catlab/format.hpp"
#include "catlab/monotone.hpp"
#include "catlab/report.hpp"
#include "catlab/revolution.hpp"
#include "catlab/surgery.hpp"
#include "catlab/two_sheet.hpp"

namespace fs = std::filesystem;
using catlab::format::shortest;

namespace {

struct RunConfig {
    std::string command;
    int n = 3;
    double a = 1.0;
    double r = 1e-3;
    double r_min = 1e-6;
    double r_max = 1e-2;
    int grid_points = 50;
    bool grid_points_set = false;
    double s_min = 0.0;  // 0: derived from r
    double s_max = 0.0;
    std::string out_dir = "out";
    std::string format = "csv";
    double tol_override = 1.0;
};

std::vector<double> geometric_grid(double lo, double hi, int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
    for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo * std::pow(ratio, i);
    g.back() = hi;
    return g;
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << contents;
}

std::string csv_or_json_table(const std::vector<std::string>& cols,
                              const std::vector<std::vector<double>>& rows, bool as_json) {
    std::ostringstream os;
    if (as_json) {
        os << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) os << ",";
            os << "{";
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (j) os << ",";
                os << "\"" << cols[j] << "\":" << shortest(rows[i][j]);
            }
            os << "}";
        }
        os << "]";
        return os.str();
    }
    for (std::size_t j = 0; j < cols.size(); ++j) os << (j ? "," : "") << cols[j];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << shortest(row[j]);
        os << "\n";
    }
    return os.str();
}

int run_catenoid(const RunConfig& cfg) {
    const double t_max = (cfg.s_max > 0.0) ? cfg.s_max : 100.0 * cfg.r;
    const auto profile = catlab::catenoid::CatenoidProfile::sample(cfg.n, cfg.r, t_max);
    std::vector<std::vector<double>> rows;
    rows.reserve(profile.samples.size());
    for (const auto& s : profile.samples) rows.push_back({s.t, s.h, s.a_norm, s.area_cum});
    const bool as_json = cfg.format == "json";
    write_file(fs::path(cfg.out_dir) / (as_json ? "catenoid.json" : "catenoid.csv"),
               csv_or_json_table({"t", "h", "A_norm", "area_cum"}, rows, as_json));
    std::cout << "catenoid profile: " << rows.size() << " samples written\n";
    return 0;
}

int run_family(const RunConfig& cfg) {
    const auto table = catlab::revolution::family_table(cfg.n, cfg.a, cfg.grid_points);
    std::vector<std::vector<double>> rows;
    rows.reserve(table.size());
    for (const auto& row : table)
        rows.push_back({row.t, row.rho, row.area, row.kappa_mer, row.kappa_sph, row.ric_min, row.dist});
    const bool as_json = cfg.format == "json";
    write_file(fs::path(cfg.out_dir) / (as_json ? "family.json" : "family.csv"),
               csv_or_json_table({"t", "rho", "area", "kappa_mer", "kappa_sph", "ric_min", "dist"},
                                 rows, as_json));
    std::cout << "family table: " << rows.size() << " rows written\n";
    return 0;
}

int run_monotone(const RunConfig& cfg) {
    const double s_min = (cfg.s_min > 0.0) ? cfg.s_min : 100.0 * cfg.r;
    const double s_max = (cfg.s_max > 0.0) ? cfg.s_max : 1000.0 * cfg.r;
    const auto sheet =
        catlab::two_sheet::make_catenoid_config(cfg.n, cfg.r, s_min, s_max, cfg.grid_points);
    const auto grid = geometric_grid(s_min, s_max, cfg.grid_points);
    const auto tr = catlab::monotone::trace(sheet, grid);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < tr.s.size(); ++i)
        rows.push_back({tr.s[i], tr.I[i], tr.tau[i], tr.F[i], tr.I_mod[i], tr.tau_mod[i],
                        tr.dI_ds[i], tr.dtau_ds[i]});
    const bool as_json = cfg.format == "json";
    write_file(fs::path(cfg.out_dir) / (as_json ? "monotone.json" : "monotone.csv"),
               csv_or_json_table({"s", "I", "tau", "F", "I_mod", "tau_mod", "dI_ds", "dtau_ds"},
                                 rows, as_json));

    const auto rep = catlab::two_sheet::minimal_graph_residual(sheet);
    std::vector<std::vector<double>> rrows;
    for (const auto& row : rep.rows)
        rrows.push_back({row.rho, row.w, row.lhs, row.rhs, row.residual});
    write_file(fs::path(cfg.out_dir) / (as_json ? "residuals.json" : "residuals.csv"),
               csv_or_json_table({"rho", "w", "lhs", "rhs", "residual"}, rrows, as_json));
    std::cout << "monotone trace: " << rows.size() << " rows written\n";
    return 0;
}

int run_surgery(const RunConfig& cfg) {
    // default: one radius per decade, matching {1e-2, ..., 1e-6}
    const int points = cfg.grid_points_set
                           ? cfg.grid_points
                           : static_cast<int>(std::lround(std::log10(cfg.r_max / cfg.r_min))) + 1;
    const auto grid = geometric_grid(cfg.r_min, cfg.r_max, std::max(points, 2));
    auto cert = catlab::surgery::certify(cfg.n, cfg.a, [](double r) { return std::sqrt(r); }, grid);
    cert.neck_rule = "sqrt_r";
    write_file(fs::path(cfg.out_dir) / "certificate.json", catlab::surgery::certificate_to_json(cert));
    if (cfg.format == "csv") {
        std::vector<std::vector<double>> rows;
        for (const auto& row : cert.rows)
            rows.push_back({row.r, row.R, row.gain, row.loss, row.margin});
        write_file(fs::path(cfg.out_dir) / "certificate.csv",
                   csv_or_json_table({"r", "R", "gain", "loss", "margin"}, rows, false));
    }
    std::cout << "surgery certificate: r_star = " << shortest(cert.r_star) << ", verdict = "
              << (cert.verdict ? "true" : "false") << "\n";
    return cert.verdict ? 0 : 1;
}

int run_verify(const RunConfig& cfg) {
    const auto rep = catlab::report::run_verify(cfg.n, cfg.tol_override);
    const bool as_json = cfg.format == "json" || cfg.format == "csv";
    write_file(fs::path(cfg.out_dir) / (cfg.format == "csv" ? "report.csv" : "report.json"),
               cfg.format == "csv" ? catlab::report::report_to_csv(rep)
                                   : catlab::report::report_to_json(rep));
    (void)as_json;
    for (const auto& check : rep.checks)
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.id << "  value="
                  << shortest(check.value) << " bound=" << shortest(check.bound) << "  ("
                  << check.anchor << ")\n";
    std::cout << rep.passed() << "/" << rep.total() << " checks passed\n";
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"catlab: catenoid necks, revolution families, monotonicity traces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON file supplying the same keys as the flags");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "hypersurface dimension (2..6)");
        sub->add_option("--a", cfg.a, "family parameter a >= 1");
        sub->add_option("--r", cfg.r, "neck radius");
        sub->add_option("--r-min", cfg.r_min, "smallest neck radius (surgery grid)");
        sub->add_option("--r-max", cfg.r_max, "largest neck radius (surgery grid)");
        sub->add_option("--s-min", cfg.s_min, "lower end of the s grid");
        sub->add_option("--s-max", cfg.s_max, "upper end of the s grid");
        sub->add_option("--grid-points", cfg.grid_points, "number of grid points");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol-override", cfg.tol_override, "scale factor on check tolerances");
    };

    add_common(app.add_subcommand("catenoid", "sample a catenoid profile"));
    add_common(app.add_subcommand("family", "tabulate the revolution family"));
    add_common(app.add_subcommand("monotone", "trace the cross-section averages"));
    add_common(app.add_subcommand("verify", "run the verification checks"));
    add_common(app.add_subcommand("surgery", "emit the neck-replacement certificate"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot read config " + config_path);
            nlohmann::json j;
            in >> j;
            // flags take precedence: only fill values the user left untouched
            auto maybe = [&](const char* key, auto& slot, const std::string& flag) {
                const CLI::App* sub = app.get_subcommands().front();
                if (j.contains(key) && sub->count(flag) == 0)
                    slot = j[key].get<std::decay_t<decltype(slot)>>();
            };
            maybe("n", cfg.n, "--n");
            maybe("a", cfg.a, "--a");
            maybe("r", cfg.r, "--r");
            maybe("r_min", cfg.r_min, "--r-min");
            maybe("r_max", cfg.r_max, "--r-max");
            maybe("s_min", cfg.s_min, "--s-min");
            maybe("s_max", cfg.s_max, "--s-max");
            maybe("grid_points", cfg.grid_points, "--grid-points");
            maybe("out", cfg.out_dir, "--out");
            maybe("format", cfg.format, "--format");
            maybe("tol_override", cfg.tol_override, "--tol-override");
        }
        if (const char* env_out = std::getenv("CATLAB_OUT")) cfg.out_dir = env_out;

        if (cfg.n < 2 || cfg.n > 6) {
            std::cerr << "error: --n must be between 2 and 6\n";
            return 2;
        }
        if (cfg.a < 1.0) {
            std::cerr << "error: --a must be at least 1\n";
            return 2;
        }
        fs::create_directories(cfg.out_dir);

        const CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        cfg.grid_points_set = sub->count("--grid-points") > 0;
        if (cfg.command == "catenoid") return run_catenoid(cfg);
        if (cfg.command == "family") return run_family(cfg);
        if (cfg.command == "monotone") return run_monotone(cfg);
        if (cfg.command == "surgery") return run_surgery(cfg);
        return run_verify(cfg);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

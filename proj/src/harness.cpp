#include "rieszmg/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rieszmg {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

ManufacturedProblem resolve_problem(const RunConfig& config) {
    if (config.problem == "1d") return problem_1d(config.alpha);
    if (config.problem == "2d") return problem_2d(config.alpha, config.beta);
    if (config.problem == "3d") return problem_3d(config.alpha, config.beta, config.gamma);
    throw std::invalid_argument("unknown problem '" + config.problem +
                                "' (expected 1d, 2d, or 3d)");
}

} // namespace

StudyResult run_study(const ManufacturedProblem& problem, const RunConfig& config) {
    if (config.kmin < 3 || config.kmax < config.kmin) {
        throw std::invalid_argument("grid exponents need 3 <= kmin <= kmax");
    }
    StudyResult result;
    double prev_error = 0.0;
    for (int k = config.kmin; k <= config.kmax; ++k) {
        const int N = 1 << k;
        try {
            const GridSpec grid = grid_for(problem, N, N);
            RunReport report;
            const Field u = run_time_stepping(problem, grid, config.scheme,
                                              config.control, &report);
            const Field ref = sample_on_grid(problem.exact, grid, grid.t_final());
            ConvergenceRow row;
            row.N = N;
            row.max_error = max_abs_diff(u, ref);
            row.rate = result.rows.empty() ? std::nan("")
                                           : std::log2(prev_error / row.max_error);
            row.avg_iter = report.avg_iterations();
            row.cpu_seconds = report.seconds;
            prev_error = row.max_error;
            result.rows.push_back(row);
        } catch (const std::exception& err) {
            result.failures.push_back("N = " + std::to_string(N) + ": " + err.what());
        }
    }
    return result;
}

StudyResult run_study(const RunConfig& config) {
    return run_study(resolve_problem(config), config);
}

std::string emit_table(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "    N   max_error      rate   avg_iter   cpu_seconds\n";
    for (const ConvergenceRow& r : rows) {
        char buf[128];
        if (std::isnan(r.rate)) {
            std::snprintf(buf, sizeof(buf), "%5d   %.4e      --      %5.2f   %11.3f\n",
                          r.N, r.max_error, r.avg_iter, r.cpu_seconds);
        } else {
            std::snprintf(buf, sizeof(buf), "%5d   %.4e  %.4f      %5.2f   %11.3f\n",
                          r.N, r.max_error, r.rate, r.avg_iter, r.cpu_seconds);
        }
        out << buf;
    }
    return out.str();
}

std::string emit_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "N,max_error,rate,avg_iter,cpu_seconds\n";
    for (const ConvergenceRow& r : rows) {
        out << r.N << ',' << fmt("%.17g", r.max_error) << ',';
        if (!std::isnan(r.rate)) {
            out << fmt("%.17g", r.rate);
        }
        out << ',' << fmt("%.17g", r.avg_iter) << ',' << fmt("%.17g", r.cpu_seconds)
            << '\n';
    }
    return out.str();
}

std::vector<ConvergenceRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "N,max_error,rate,avg_iter,cpu_seconds") {
        throw std::invalid_argument("bad CSV header");
    }
    std::vector<ConvergenceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        // A failed extraction leaves the previous cell text in place, so the
        // stream state must be checked to reject rows with missing columns.
        auto next = [&]() -> const std::string& {
            if (!std::getline(cells, cell, ',')) {
                throw std::invalid_argument("CSV row '" + line + "' has too few columns");
            }
            return cell;
        };
        ConvergenceRow r;
        r.N = std::stoi(next());
        r.max_error = std::stod(next());
        next();
        r.rate = cell.empty() ? std::nan("") : std::stod(cell);
        r.avg_iter = std::stod(next());
        r.cpu_seconds = std::stod(next());
        rows.push_back(r);
    }
    return rows;
}

std::string emit_plot_svg(const std::vector<ConvergenceRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("plot needs at least one row");
    }
    // Data ranges in log coordinates.
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (const ConvergenceRow& r : rows) {
        const double lx = std::log2(static_cast<double>(r.N));
        const double ly = std::log10(r.max_error);
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
    }
    // Reference line with slope -2 anchored on the first point spans the
    // same N range; widen the y range to keep it inside the frame.
    const double ref0 = std::log10(rows.front().max_error);
    const double ref1 = ref0 - 2.0 * (lx1 - lx0) * std::log10(2.0);
    ly0 = std::min(ly0, std::min(ref0, ref1));
    ly1 = std::max(ly1, std::max(ref0, ref1));
    if (lx1 == lx0) lx1 = lx0 + 1.0;
    if (ly1 == ly0) ly1 = ly0 + 1.0;

    const double W = 480.0, H = 360.0, ML = 64.0, MR = 24.0, MT = 24.0, MB = 48.0;
    auto X = [&](double lx) { return ML + (lx - lx0) / (lx1 - lx0) * (W - ML - MR); };
    auto Y = [&](double ly) { return H - MB - (ly - ly0) / (ly1 - ly0) * (H - MT - MB); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
           "viewBox=\"0 0 480 360\">\n";
    svg << "<rect x=\"" << fmt("%.2f", ML) << "\" y=\"" << fmt("%.2f", MT) << "\" width=\""
        << fmt("%.2f", W - ML - MR) << "\" height=\"" << fmt("%.2f", H - MT - MB)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // Axis labels: grid sizes along x, decades along y.
    for (const ConvergenceRow& r : rows) {
        const double x = X(std::log2(static_cast<double>(r.N)));
        svg << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << fmt("%.2f", H - MB + 18.0)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << r.N << "</text>\n";
    }
    for (int d = static_cast<int>(std::floor(ly0)); d <= static_cast<int>(std::ceil(ly1));
         ++d) {
        if (d < ly0 || d > ly1) continue;
        svg << "<text x=\"" << fmt("%.2f", ML - 6.0) << "\" y=\"" << fmt("%.2f", Y(d) + 4.0)
            << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    svg << "<text x=\"" << fmt("%.2f", (ML + W - MR) / 2.0) << "\" y=\""
        << fmt("%.2f", H - 10.0) << "\" font-size=\"12\" text-anchor=\"middle\">N</text>\n";
    svg << "<text x=\"14\" y=\"" << fmt("%.2f", (MT + H - MB) / 2.0)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << fmt("%.2f", (MT + H - MB) / 2.0) << ")\">max error</text>\n";

    // Slope -2 reference line.
    svg << "<line x1=\"" << fmt("%.2f", X(lx0)) << "\" y1=\"" << fmt("%.2f", Y(ref0))
        << "\" x2=\"" << fmt("%.2f", X(lx1)) << "\" y2=\"" << fmt("%.2f", Y(ref1))
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

    // Data polyline and markers.
    svg << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (const ConvergenceRow& r : rows) {
        svg << fmt("%.2f", X(std::log2(static_cast<double>(r.N)))) << ','
            << fmt("%.2f", Y(std::log10(r.max_error))) << ' ';
    }
    svg << "\"/>\n";
    for (const ConvergenceRow& r : rows) {
        svg << "<circle cx=\"" << fmt("%.2f", X(std::log2(static_cast<double>(r.N))))
            << "\" cy=\"" << fmt("%.2f", Y(std::log10(r.max_error)))
            << "\" r=\"3\" fill=\"black\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void apply_config_line(RunConfig& config, const std::string& key, const std::string& value) {
    try {
        if (key == "problem") {
            config.problem = value;
        } else if (key == "alpha") {
            config.alpha = std::stod(value);
        } else if (key == "beta") {
            config.beta = std::stod(value);
        } else if (key == "gamma") {
            config.gamma = std::stod(value);
        } else if (key == "scheme") {
            config.scheme = scheme_from_name(value);
        } else if (key == "kmin") {
            config.kmin = std::stoi(value);
        } else if (key == "kmax") {
            config.kmax = std::stoi(value);
        } else if (key == "tol") {
            config.control.tolerance = std::stod(value);
        } else if (key == "max_iter") {
            config.control.max_iterations = std::stoi(value);
        } else if (key == "coarsest") {
            config.control.coarsest_size = std::stoi(value);
        } else if (key == "omega_pre") {
            config.control.smoother.omega_pre = std::stod(value);
        } else if (key == "omega_post") {
            config.control.smoother.omega_post = std::stod(value);
        } else if (key == "sweeps_pre") {
            config.control.smoother.pre_sweeps = std::stoi(value);
        } else if (key == "sweeps_post") {
            config.control.smoother.post_sweeps = std::stoi(value);
        } else if (key == "out") {
            config.out = value;
        } else if (key == "plot") {
            config.plot = value;
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value '" + value + "' for config key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    RunConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            const std::size_t b = s.find_first_not_of(ws);
            if (b == std::string::npos) return std::string();
            const std::size_t e = s.find_last_not_of(ws);
            return s.substr(b, e - b + 1);
        };
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key = value");
        }
        apply_config_line(config, trim(stripped.substr(0, eq)),
                          trim(stripped.substr(eq + 1)));
    }
    return config;
}

} // namespace rieszmg

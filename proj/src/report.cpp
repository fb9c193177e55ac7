#include "alsga/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace alsga {

namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error("cannot create directory " + path.parent_path().string() +
                                     ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) {
        if (!f.empty() && f.back() == '\r') {
            f.pop_back();
        }
        fields.push_back(f);
    }
    return fields;
}

double to_double(const std::string& s, const fs::path& path, std::size_t line)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line) +
                                 ": malformed number '" + s + "'");
    }
    return v;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void write_summary(std::ostream& out, const RunResult& r)
{
    out << "final_best_fitness " << format_number(r.best_fitness.combined) << '\n'
        << "final_best_dunn " << format_number(r.best_fitness.dunn) << '\n'
        << "final_best_penalty_count " << r.best_fitness.penalty_count << '\n'
        << "final_best_degenerate " << (r.best_fitness.degenerate ? "true" : "false") << '\n'
        << "initial_best_fitness " << format_number(r.initial_best_fitness.combined) << '\n'
        << "iterations " << r.trajectory.size() << '\n'
        << "evaluations " << r.evaluations << '\n'
        << "non_empty_clusters " << non_empty_clusters(r.best_labeling) << '\n'
        << "wall_time_seconds " << fixed(r.wall_time_seconds, 3) << '\n';
}

}  // namespace

std::string format_number(double value)
{
    // shortest text that reads back to the same double
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_convergence_csv(const fs::path& path, std::span<const GenerationStats> series)
{
    auto out = open_for_write(path);
    out << "iteration,min,mean,max\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << (i + 1) << ',' << format_number(series[i].min) << ','
            << format_number(series[i].mean) << ',' << format_number(series[i].max) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::vector<GenerationStats> read_convergence_csv(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("iteration,min,mean,max", 0) != 0) {
        throw std::runtime_error(path.string() + ": missing convergence header");
    }
    std::vector<GenerationStats> series;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 4) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected 4 fields");
        }
        if (to_double(f[0], path, line_no) != static_cast<double>(series.size() + 1)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": iterations out of sequence");
        }
        series.push_back({to_double(f[1], path, line_no), to_double(f[2], path, line_no),
                          to_double(f[3], path, line_no)});
    }
    return series;
}

void write_labels_csv(const fs::path& path, const Labeling& labeling)
{
    auto out = open_for_write(path);
    out << "point_id,cluster\n";
    for (std::size_t i = 0; i < labeling.size(); ++i) {
        out << i << ',' << labeling.labels[i] << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

Labeling read_labels_csv(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("point_id,cluster", 0) != 0) {
        throw std::runtime_error(path.string() + ": missing label header");
    }
    Labeling labeling;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 2 || to_double(f[0], path, line_no) != double(labeling.size())) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected point_id,cluster in sequence");
        }
        const double c = to_double(f[1], path, line_no);
        if (c < 1 || c != std::floor(c)) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": cluster must be a positive integer");
        }
        labeling.labels.push_back(static_cast<ClusterId>(c));
        labeling.k = std::max(labeling.k, labeling.labels.back());
    }
    return labeling;
}

ChartRange chart_range(const std::vector<std::span<const GenerationStats>>& series, double floor)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series) {
        for (const GenerationStats& g : s) {
            for (double v : {g.min, g.mean, g.max}) {
                if (v > floor && std::isfinite(v)) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
        }
    }
    if (!std::isfinite(lo)) {
        return {};
    }
    if (hi - lo < 1e-12) {
        const double pad = std::max(1e-6, std::abs(hi) * 0.05);
        return {lo - pad, hi + pad};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

void write_convergence_svg(const fs::path& path, std::span<const GenerationStats> series,
                           const ChartRange& range, const std::string& title)
{
    constexpr double width = 800, height = 480;
    constexpr double left = 80, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const std::size_t n = series.size();

    auto px = [&](std::size_t i) {
        return n <= 1 ? left + plot_w / 2 : left + plot_w * double(i) / double(n - 1);
    };
    auto py = [&](double v) {
        const double span = range.hi - range.lo;
        double t = span > 0 ? (v - range.lo) / span : 0.5;
        t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
        return top + plot_h * (1.0 - t);
    };
    auto polyline = [&](auto pick, const char* style) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) {
            pts += fixed(px(i), 2) + "," + fixed(py(pick(series[i])), 2) + " ";
        }
        return "<polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
    };

    auto out = open_for_write(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title) << "</text>\n";

    // Axes and ticks.
    out << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << top + plot_h << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << top + plot_h << "\"/>\n</g>\n";
    out << "<g class=\"axis\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int t = 0; t <= 5; ++t) {
        const double v = range.lo + (range.hi - range.lo) * t / 5.0;
        const double y = py(v);
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << left
            << "\" y2=\"" << fixed(y, 2) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << left - 8 << "\" y=\"" << fixed(y + 4, 2)
            << "\" text-anchor=\"end\">" << format_number(v) << "</text>\n";
    }
    if (n > 0) {
        const std::size_t ticks = std::min<std::size_t>(n, 5);
        for (std::size_t t = 0; t < ticks; ++t) {
            const std::size_t i = ticks == 1 ? 0 : t * (n - 1) / (ticks - 1);
            out << "<line x1=\"" << fixed(px(i), 2) << "\" y1=\"" << top + plot_h << "\" x2=\""
                << fixed(px(i), 2) << "\" y2=\"" << top + plot_h + 5
                << "\" stroke=\"black\"/>\n"
                << "<text x=\"" << fixed(px(i), 2) << "\" y=\"" << top + plot_h + 18
                << "\" text-anchor=\"middle\">" << (i + 1) << "</text>\n";
        }
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\">iteration</text>\n"
        << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << top + plot_h / 2 << ")\">fitness</text>\n</g>\n";

    out << polyline([](const GenerationStats& g) { return g.max; },
                    "stroke=\"#1f4e79\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\"")
        << polyline([](const GenerationStats& g) { return g.min; },
                    "stroke=\"#1f4e79\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\"")
        << polyline([](const GenerationStats& g) { return g.mean; },
                    "stroke=\"#1f4e79\" stroke-width=\"2.5\"")
        << "</svg>\n";
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

void emit_convergence_report(const RunResult& result, const fs::path& out_dir,
                             const std::string& title, double floor)
{
    write_convergence_csv(out_dir / "convergence.csv", result.trajectory);
    write_labels_csv(out_dir / "best_labels.csv", result.best_labeling);
    write_convergence_svg(out_dir / "convergence.svg", result.trajectory,
                          chart_range({result.trajectory}, floor), title);
    auto out = open_for_write(out_dir / "summary.txt");
    write_summary(out, result);
}

void emit_convergence_report(const ExperimentReport& report, const fs::path& out_dir,
                             double floor)
{
    std::vector<std::span<const GenerationStats>> all;
    for (const auto& e : report.experiments) {
        all.emplace_back(e.aggregate);
    }
    const ChartRange range = chart_range(all, floor);

    for (const auto& e : report.experiments) {
        const fs::path dir = out_dir / ("experiment_" + std::to_string(e.spec.id));
        write_convergence_csv(dir / "convergence.csv", e.aggregate);
        const RunRecord& best = e.best_run();
        write_labels_csv(dir / "best_labels.csv", best.result.best_labeling);
        const auto& c = e.spec.counts;
        const std::string title = "Experiment " + std::to_string(e.spec.id) + ": " + e.spec.label +
                                  " (" + std::to_string(c.elite) + "/" +
                                  std::to_string(c.crossover) + "/" + std::to_string(c.flip) +
                                  "/" + std::to_string(c.bisection) + "/" +
                                  std::to_string(c.random) + ")";
        write_convergence_svg(dir / "convergence.svg", e.aggregate, range, title);
        auto out = open_for_write(dir / "summary.txt");
        out << "experiment " << e.spec.id << '\n'
            << "label " << e.spec.label << '\n'
            << "counts " << c.elite << ' ' << c.crossover << ' ' << c.flip << ' ' << c.bisection
            << ' ' << c.random << '\n'
            << "repetitions " << e.runs.size() << '\n'
            << "mean_final_best_fitness " << format_number(e.mean_final_best()) << '\n'
            << "best_repetition " << best.repetition << '\n';
        write_summary(out, best.result);
        for (const RunRecord& r : e.runs) {
            out << "run " << r.repetition << " wall_time_seconds "
                << fixed(r.result.wall_time_seconds, 3) << '\n';
        }
    }

    auto runs = open_for_write(out_dir / "suite_runs.csv");
    runs << "experiment,repetition,seed,final_best,dunn,penalty_count,initial_best\n";
    for (const auto& e : report.experiments) {
        for (const RunRecord& r : e.runs) {
            runs << e.spec.id << ',' << r.repetition << ',' << r.seed << ','
                 << format_number(r.result.best_fitness.combined) << ','
                 << format_number(r.result.best_fitness.dunn) << ','
                 << r.result.best_fitness.penalty_count << ','
                 << format_number(r.result.initial_best_fitness.combined) << '\n';
        }
    }
    auto summary = open_for_write(out_dir / "summary.txt");
    summary << "experiments " << report.experiments.size() << '\n'
            << "chart_y_range " << format_number(range.lo) << ' ' << format_number(range.hi)
            << '\n';
    for (const auto& e : report.experiments) {
        summary << "experiment " << e.spec.id << " mean_final_best "
                << format_number(e.mean_final_best()) << '\n';
    }
    summary << "wall_time_seconds " << fixed(report.wall_time_seconds, 3) << '\n';
}

}  // namespace alsga

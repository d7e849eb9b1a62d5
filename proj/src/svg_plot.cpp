#include "trunksim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace trunksim {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(line);
    while (std::getline(in, item, ',')) out.push_back(item);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// largest 1/2/5-decade step giving at most ~6 ticks
double nice_step(double span) {
    if (span <= 0.0) return 1.0;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= mult * mag) return mult * mag;
    }
    return 10.0 * mag;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                         "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

struct series {
    std::string label;
    bool dashed = false;
    std::vector<std::pair<double, double>> pts;
};

} // namespace

const std::vector<std::string>& plot_metrics() {
    static const std::vector<std::string> metrics = {
        "e_n_aggregated", "e_n_delivered", "e_p_tr_total_w", "e_p_tr_per_mtd_w",
        "e_p_m_w",        "p_s",           "outage"};
    return metrics;
}

std::string plot_csv_to_svg(const std::string& csv_text, const std::string& metric) {
    const auto& metrics = plot_metrics();
    if (std::find(metrics.begin(), metrics.end(), metric) == metrics.end()) {
        std::string msg = "unknown metric '" + metric + "'; valid metrics:";
        for (const auto& m : metrics) msg += " " + m;
        throw std::invalid_argument(msg);
    }

    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    auto header = split_csv_line(line);
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::invalid_argument("CSV lacks column '" + name + "'");
        return static_cast<size_t>(it - header.begin());
    };
    size_t c_mode = col("mode"), c_lambda = col("lambda_per_s"), c_R = col("R"), c_K = col("K"),
           c_source = col("source"), c_metric = col(metric);

    std::map<std::string, series> grouped;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() <= std::max({c_mode, c_lambda, c_R, c_K, c_source, c_metric}))
            throw std::invalid_argument("CSV row has too few columns: '" + line + "'");
        std::string key = "R=" + f[c_R] + " K=" + f[c_K] + " " + f[c_mode] + " " + f[c_source];
        auto& s = grouped[key];
        s.label = key;
        s.dashed = f[c_source] == "sim";
        s.pts.emplace_back(std::stod(f[c_lambda]), std::stod(f[c_metric]));
    }
    if (grouped.empty()) throw std::invalid_argument("CSV has no data rows");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [key, s] : grouped) {
        std::sort(s.pts.begin(), s.pts.end());
        for (auto& [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + (ymin == 0.0 ? 1.0 : std::abs(ymin) * 0.1);
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    if (ymin > 0.0 && ymin < 0.3 * ymax) ymin = 0.0;

    const double width = 760, height = 520;
    const double ml = 80, mr = 200, mt = 40, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << metric << " vs lambda</text>\n";

    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\" stroke=\"black\"/>\n";

    double xstep = nice_step(xmax - xmin);
    for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9 * xstep; t += xstep) {
        svg << "<line x1=\"" << X(t) << "\" y1=\"" << mt + ph << "\" x2=\"" << X(t) << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << X(t) << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(t)
            << "</text>\n";
    }
    double ystep = nice_step(ymax - ymin);
    for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep; t += ystep) {
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(t) << "\" x2=\"" << ml << "\" y2=\""
            << Y(t) << "\" stroke=\"black\"/>\n"
            << "<line x1=\"" << ml << "\" y1=\"" << Y(t) << "\" x2=\"" << ml + pw << "\" y2=\""
            << Y(t) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << Y(t) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(t)
            << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 15
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">lambda (1/s)"
        << "</text>\n"
        << "<text x=\"20\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << mt + ph / 2 << ")\">" << metric << "</text>\n";

    int idx = 0;
    for (const auto& [key, s] : grouped) {
        const char* color = palette[idx % 10];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (const auto& [x, y] : s.pts) svg << fmt(X(x)) << ',' << fmt(Y(y)) << ' ';
        svg << "\"/>\n";
        for (const auto& [x, y] : s.pts)
            svg << "<circle cx=\"" << fmt(X(x)) << "\" cy=\"" << fmt(Y(y)) << "\" r=\"2.4\" fill=\""
                << color << "\"/>\n";
        double ly = mt + 16 + 18 * idx;
        svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 40
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << "/>\n<text x=\"" << ml + pw + 46 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace trunksim

#include "divrank/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "divrank/errors.hpp"

namespace divrank {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 56.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

class Canvas {
public:
    explicit Canvas(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw IoError("cannot write file: " + path);
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
             << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    void axes(const Range& xr, const Range& yr, const std::string& xLabel,
              const std::string& yLabel) {
        out_ << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
             << kWidth - kMargin / 2 << "\" y2=\"" << kHeight - kMargin
             << "\" stroke=\"black\"/>\n";
        out_ << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
             << kMargin << "\" y2=\"" << kMargin / 2 << "\" stroke=\"black\"/>\n";
        out_ << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
             << "\" font-size=\"13\" text-anchor=\"middle\">" << xLabel << "</text>\n";
        out_ << "<text x=\"16\" y=\"" << kHeight / 2
             << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
             << kHeight / 2 << ")\">" << yLabel << "</text>\n";
        label(kMargin, kHeight - kMargin + 16, xr.lo);
        label(kWidth - kMargin / 2, kHeight - kMargin + 16, xr.hi);
        label(kMargin - 6, kHeight - kMargin, yr.lo, true);
        label(kMargin - 6, kMargin / 2 + 4, yr.hi, true);
    }

    double mapX(double v, const Range& r) const {
        return kMargin + (v - r.lo) / r.span() * (kWidth - 1.5 * kMargin);
    }
    double mapY(double v, const Range& r) const {
        return kHeight - kMargin - (v - r.lo) / r.span() * (kHeight - 1.5 * kMargin);
    }

    std::ofstream& out() { return out_; }

    ~Canvas() { out_ << "</svg>\n"; }

private:
    void label(double x, double y, double value, bool rightAlign = false) {
        out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"11\" text-anchor=\""
             << (rightAlign ? "end" : "middle") << "\">" << value << "</text>\n";
    }
    std::ofstream out_;
};

} // namespace

void writeLineChartSvg(const std::vector<SvgSeries>& series, const std::string& xLabel,
                       const std::string& yLabel, const std::string& path) {
    if (series.empty()) throw ValidationError("no series to plot");
    Range xr, yr;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw ValidationError("series x/y length mismatch");
        for (double v : s.x) xr.expand(v);
        for (double v : s.y) yr.expand(v);
    }
    Canvas canvas(path);
    canvas.axes(xr, yr, xLabel, yLabel);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
        canvas.out() << "<polyline fill=\"none\" stroke=\"" << color
                     << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t p = 0; p < series[i].x.size(); ++p)
            canvas.out() << canvas.mapX(series[i].x[p], xr) << ","
                         << canvas.mapY(series[i].y[p], yr) << " ";
        canvas.out() << "\"/>\n";
        canvas.out() << "<text x=\"" << kWidth - kMargin / 2 << "\" y=\""
                     << kMargin / 2 + 16.0 * static_cast<double>(i)
                     << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << color << "\">"
                     << series[i].label << "</text>\n";
    }
}

void writeScatterSvg(const SvgSeries& points, const std::string& xLabel,
                     const std::string& yLabel, const std::string& path) {
    if (points.x.size() != points.y.size()) throw ValidationError("series x/y length mismatch");
    if (points.x.empty()) throw ValidationError("no points to plot");
    Range xr, yr;
    for (double v : points.x) xr.expand(v);
    for (double v : points.y) yr.expand(v);
    Canvas canvas(path);
    canvas.axes(xr, yr, xLabel, yLabel);
    for (std::size_t p = 0; p < points.x.size(); ++p)
        canvas.out() << "<circle cx=\"" << canvas.mapX(points.x[p], xr) << "\" cy=\""
                     << canvas.mapY(points.y[p], yr) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    canvas.out() << "<text x=\"" << kWidth - kMargin / 2 << "\" y=\"" << kMargin / 2
                 << "\" font-size=\"12\" text-anchor=\"end\">" << points.label << "</text>\n";
}

} // namespace divrank

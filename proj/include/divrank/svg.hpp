#ifndef DIVRANK_SVG_HPP
#define DIVRANK_SVG_HPP

#include <string>
#include <vector>

namespace divrank {

// Minimal static SVG emitters for curves and front scatters. No styling
// knobs; these exist so runs can drop a glanceable picture next to the CSVs.

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

void writeLineChartSvg(const std::vector<SvgSeries>& series, const std::string& xLabel,
                       const std::string& yLabel, const std::string& path);

void writeScatterSvg(const SvgSeries& points, const std::string& xLabel,
                     const std::string& yLabel, const std::string& path);

} // namespace divrank

#endif

#include "divrank/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include <Eigen/Eigenvalues>

#include "divrank/csv.hpp"
#include "divrank/errors.hpp"

namespace divrank {

SimilarityKernel cosineKernel(const Corpus& corpus) {
    if (!corpus.vectorized())
        throw ValidationError("cosine kernel requires a vectorized corpus");
    for (int i = 0; i < corpus.size(); ++i) {
        if (corpus.tfidf.row(i).norm() == 0.0)
            throw ValidationError("item \"" + corpus.items[static_cast<std::size_t>(i)].id +
                                  "\" has an all-zero TF-IDF row; no text to compare");
    }
    SimilarityKernel kernel;
    kernel.sourceIds = corpus.ids();
    kernel.entries = corpus.tfidf * corpus.tfidf.transpose();
    const int n = kernel.size();
    for (int i = 0; i < n; ++i) {
        kernel.entries(i, i) = 1.0; // rows are unit norm; pin round-off
        for (int j = 0; j < n; ++j)
            kernel.entries(i, j) = std::clamp(kernel.entries(i, j), -1.0, 1.0);
    }
    return kernel;
}

double medianPairwiseDistance(const std::vector<Eigen::VectorXd>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw ValidationError("median heuristic needs at least 2 points");
    std::vector<double> distances;
    distances.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            distances.push_back((points[i] - points[j]).norm());
    std::sort(distances.begin(), distances.end());
    const std::size_t m = distances.size();
    if (m % 2 == 1) return distances[m / 2];
    return 0.5 * (distances[m / 2 - 1] + distances[m / 2]);
}

SimilarityKernel rbfKernel(const std::vector<Eigen::VectorXd>& points, double sigma,
                           std::vector<std::string> ids) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw ValidationError("RBF kernel needs at least 2 points");
    for (const auto& p : points)
        if (p.size() != points.front().size())
            throw ValidationError("RBF kernel points must share one dimension");
    if (!(sigma > 0)) throw ValidationError("RBF sigma must be positive");
    if (!ids.empty() && static_cast<int>(ids.size()) != n)
        throw ValidationError("RBF kernel: ids and points differ in length");

    SimilarityKernel kernel;
    if (ids.empty()) {
        kernel.sourceIds.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) kernel.sourceIds.push_back(std::to_string(i));
    } else {
        kernel.sourceIds = std::move(ids);
    }
    kernel.entries.resize(n, n);
    const double denom = 2.0 * sigma * sigma;
    for (int i = 0; i < n; ++i) {
        kernel.entries(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const double d2 = (points[static_cast<std::size_t>(i)] -
                               points[static_cast<std::size_t>(j)])
                                  .squaredNorm();
            const double value = std::exp(-d2 / denom);
            kernel.entries(i, j) = value;
            kernel.entries(j, i) = value;
        }
    }
    return kernel;
}

KernelReport validateKernel(const SimilarityKernel& kernel) {
    KernelReport report;
    const auto& m = kernel.entries;
    const int n = kernel.size();
    if (n == 0 || m.rows() != m.cols()) return report;

    double maxAsym = 0.0;
    double maxDiagErr = 0.0;
    for (int i = 0; i < n; ++i) {
        maxDiagErr = std::max(maxDiagErr, std::abs(m(i, i) - 1.0));
        for (int j = i + 1; j < n; ++j)
            maxAsym = std::max(maxAsym, std::abs(m(i, j) - m(j, i)));
    }
    report.symmetric = maxAsym <= kSymmetryTol;
    report.unitDiagonal = maxDiagErr <= kUnitDiagonalTol;

    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    report.minEigenvalue = solver.eigenvalues().minCoeff();
    report.psd = report.minEigenvalue >= kPsdTol;
    return report;
}

void saveKernel(const SimilarityKernel& kernel, const std::string& path) {
    if (static_cast<int>(kernel.sourceIds.size()) != kernel.size() ||
        kernel.entries.rows() != kernel.entries.cols())
        throw ValidationError("kernel ids and entries are inconsistent");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out << "ids";
    for (const auto& id : kernel.sourceIds) out << ',' << csv::escape(id);
    out << '\n';
    char buffer[64];
    const int n = kernel.size();
    for (int i = 0; i < n; ++i) {
        out << csv::escape(kernel.sourceIds[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j) {
            // 17 significant digits round-trip any double exactly.
            std::snprintf(buffer, sizeof(buffer), "%.17g", kernel.entries(i, j));
            out << ',' << buffer;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

SimilarityKernel loadKernel(const std::string& path, bool strict) {
    const auto rows = csv::readFile(path);
    if (rows.empty() || rows[0].empty() || rows[0][0] != "ids")
        throw ValidationError("kernel CSV must start with an \"ids,...\" header: " + path);
    const int n = static_cast<int>(rows[0].size()) - 1;
    if (n < 1) throw ValidationError("kernel CSV has no ids: " + path);
    if (static_cast<int>(rows.size()) != n + 1)
        throw ValidationError("kernel CSV is not square: " + std::to_string(n) +
                              " ids but " + std::to_string(rows.size() - 1) + " rows");

    SimilarityKernel kernel;
    kernel.sourceIds.assign(rows[0].begin() + 1, rows[0].end());
    {
        std::set<std::string> unique(kernel.sourceIds.begin(), kernel.sourceIds.end());
        if (static_cast<int>(unique.size()) != n)
            throw ValidationError("kernel CSV has duplicate ids: " + path);
    }
    kernel.entries.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i) + 1];
        if (static_cast<int>(row.size()) != n + 1)
            throw ValidationError("kernel CSV is not square: row " + std::to_string(i + 1) +
                                  " has " + std::to_string(row.size() - 1) + " values, expected " +
                                  std::to_string(n));
        if (row[0] != kernel.sourceIds[static_cast<std::size_t>(i)])
            throw ValidationError("kernel CSV row id \"" + row[0] +
                                  "\" does not match header id \"" +
                                  kernel.sourceIds[static_cast<std::size_t>(i)] + "\"");
        for (int j = 0; j < n; ++j) {
            const std::string& cell = row[static_cast<std::size_t>(j) + 1];
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw ValidationError("kernel CSV has a non-numeric entry at row " +
                                      std::to_string(i + 1) + ", column " + std::to_string(j + 1));
            if (std::isnan(value))
                throw ValidationError("kernel CSV has a NaN entry at row " +
                                      std::to_string(i + 1) + ", column " + std::to_string(j + 1));
            kernel.entries(i, j) = value;
        }
    }
    if (strict) {
        const KernelReport report = validateKernel(kernel);
        if (!report.ok())
            throw NumericError(
                "kernel failed validation (symmetric=" + std::to_string(report.symmetric) +
                " unitDiagonal=" + std::to_string(report.unitDiagonal) +
                " psd=" + std::to_string(report.psd) +
                " minEigenvalue=" + std::to_string(report.minEigenvalue) + ")");
    }
    return kernel;
}

PointSet loadPoints(const std::string& path) {
    const auto rows = csv::readFile(path);
    if (rows.size() < 2 || rows[0].size() < 2 || rows[0][0] != "id")
        throw ValidationError("points CSV must start with header \"id,x1,..,xd\": " + path);
    const int d = static_cast<int>(rows[0].size()) - 1;
    PointSet set;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (static_cast<int>(row.size()) != d + 1)
            throw ValidationError("points CSV row " + std::to_string(r) + " has " +
                                  std::to_string(row.size() - 1) + " coordinates, expected " +
                                  std::to_string(d));
        set.ids.push_back(row[0]);
        Eigen::VectorXd point(d);
        for (int c = 0; c < d; ++c) {
            const std::string& cell = row[static_cast<std::size_t>(c) + 1];
            char* end = nullptr;
            point(c) = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0' || std::isnan(point(c)))
                throw ValidationError("points CSV has a bad coordinate at row " +
                                      std::to_string(r) + ", column " + std::to_string(c + 2));
        }
        set.coords.push_back(std::move(point));
    }
    {
        std::set<std::string> unique(set.ids.begin(), set.ids.end());
        if (unique.size() != set.ids.size())
            throw ValidationError("points CSV has duplicate ids: " + path);
    }
    return set;
}

} // namespace divrank

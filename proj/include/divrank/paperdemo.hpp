#ifndef DIVRANK_PAPERDEMO_HPP
#define DIVRANK_PAPERDEMO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "divrank/corpus.hpp"
#include "divrank/kernel.hpp"

namespace divrank {

// Built-in worked examples with known reference values, runnable end to end
// as a self-check: `bench paperdemo` in the CLI.

struct DemoCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Four short idea summaries; the first two share the composting theme,
// qualities 20, 12, 9, 3.
Corpus fourIdeaDemoCorpus();

// The idealized 4x4 similarity matrix for the corpus above: unit diagonal,
// entry (0,1) = 0.61, every other off-diagonal 0.
SimilarityKernel fourIdeaDemoKernel();

// Five-item instance with one similar pair (items 2 and 3, 0-based) and
// qualities 3, 2, 7, 8, 6.
SimilarityKernel fiveSketchDemoKernel();
std::vector<double> fiveSketchQualities();

std::vector<DemoCheck> runPaperDemo();

// Prints one pass/fail row per check; returns the number of failures.
int printPaperDemo(std::ostream& out);

} // namespace divrank

#endif

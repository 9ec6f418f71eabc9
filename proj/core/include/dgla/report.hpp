#ifndef DGLA_REPORT_HPP
#define DGLA_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace dgla {

// stable 64-bit content hash (FNV-1a), rendered as 16 lowercase hex digits
std::string content_digest(const std::string& bytes);

// the sign / indexing conventions every report embeds, so that numbers in
// the output are interpretable without reading the source:
//   - the first-order obstruction rule (how n0 is derived from the least
//     nonzero perturbation stage)
//   - the cohomology bidegree pairing rule
std::vector<std::string> standard_conventions();

// Machine- and human-renderable result envelope.  Field order is the
// serialization order; payload_json must be a self-contained JSON value.
// Rendering is deterministic: identical Reports produce identical bytes.
struct Report {
    std::string command;
    std::string input_digest;  // digest of the presentation source text
    std::vector<std::pair<std::string, int>> cutoffs;  // in effect, in order
    std::vector<std::string> conventions;
    std::vector<std::string> notes;  // cutoff-incompleteness and similar
    std::string payload_json;        // command-specific body

    // {"schema": "dgla-report/1", ...}, indented two spaces, keys in
    // declaration order, trailing newline
    std::string render_json() const;
    // indented key/value walk of the same data, trailing newline
    std::string render_text() const;
};

}  // namespace dgla

#endif

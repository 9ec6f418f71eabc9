#ifndef DGLA_PRESENTATION_HPP
#define DGLA_PRESENTATION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgla/dgl.hpp"
#include "dgla/lie.hpp"

namespace dgla {

// diagnostic with a 1-based source position
struct PresentationError : std::runtime_error {
    int line;
    int column;
    PresentationError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) +
                             ", column " + std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

// Sectioned plain-text presentation of a free DGL or of a graded Lie algebra
// given by generators and relations:
//
//   [generators]      name = degree          (degree >= 1; connectedness)
//   [differential]    name = bracket expr    (degree |name| - 1, or 0)
//   [relations]       label = bracket expr   (homogeneous; labels are free)
//   [cutoffs]         degree | filtration | simplicial = N
//
// '#' starts a comment.  A file carries either a differential (DGL mode) or
// relations (graded-Lie mode), not both.
struct ParsedPresentation {
    std::string source;  // original text, for digests and re-parsing
    LieContextPtr ctx;
    DGL dgl;  // differential installed in DGL mode, zero otherwise
    bool has_relations = false;
    std::vector<std::pair<std::string, LieElement>> relations;
    std::optional<int> file_degree_cutoff;
    std::optional<int> file_filtration_cutoff;
    std::optional<int> file_simplicial_cutoff;
    int degree_cutoff = 0;  // cutoff the context was built with
};

// the context cutoff is, in order of preference: the override, the file's
// [cutoffs] degree entry, or 8
ParsedPresentation parse_presentation(const std::string& text,
                                      std::optional<int> degree_cutoff_override =
                                          std::nullopt);
ParsedPresentation parse_presentation_file(const std::string& path,
                                           std::optional<int> degree_cutoff_override =
                                               std::nullopt);

// canonical re-serialization; parses back to an equivalent presentation
std::string serialize_presentation(const ParsedPresentation& p);

}  // namespace dgla

#endif

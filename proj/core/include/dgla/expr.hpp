#ifndef DGLA_EXPR_HPP
#define DGLA_EXPR_HPP

#include <stdexcept>
#include <string>

#include "dgla/lie.hpp"

namespace dgla {

struct ExprError : std::runtime_error {
    int position;  // 0-based offset into the source string
    ExprError(const std::string& msg, int pos)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Parses a bracket expression over the generators of ctx:
//   expr   := term (("+" | "-") term)*
//   term   := ["-"] [rational "*"] atom
//   atom   := name | "[" expr "," expr "]"
//   rational := integer ["/" integer]
// Unknown names and malformed syntax raise ExprError with a position.
LieElement parse_lie_expr(FreeLieContext& ctx, const std::string& src);

}  // namespace dgla

#endif

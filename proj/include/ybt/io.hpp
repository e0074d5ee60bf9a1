// JSON input files: R-matrix specs, twist data, presentations, phi tables.

#ifndef YBT_IO_HPP
#define YBT_IO_HPP

#include <string>

#include "ybt/algebra.hpp"
#include "ybt/report.hpp"
#include "ybt/rmatrix.hpp"

namespace ybt {

/// Reads and parses a JSON file; ParseError on failure.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Expression string, or a plain JSON number.
ScalarExpr expr_from_json(const Json& j);

/// {"s": [[i, j, expr]...]} roots, or {"phi": [[i, j, expr]...]} with each
/// phi_ij an exact square. When both are present they must agree.
RootTable roots_from_json(const Json& j, int N);
Json roots_to_json(const RootTable& s);

/// {"N", "phi" | "s", "v1", "v2", "colour"}; missing colour tables mean 1.
TwistData twist_from_json(const Json& j);
Json twist_to_json(const TwistData& tw);

/// Builder form {"N", "kind", "params"} with kind one of identity,
/// permutation, trig, multiparam, rational, coloured-rational; or explicit
/// source tables {"N", "spectral", "f", "g"}.
ParticleConservingR r_from_json(const Json& j);
/// Always the explicit table form.
Json r_to_json(const ParticleConservingR& R);

}  // namespace ybt

#endif  // YBT_IO_HPP

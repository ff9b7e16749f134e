#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qsm/box.hpp"
#include "qsm/check.hpp"
#include "qsm/cone.hpp"
#include "qsm/qmet.hpp"
#include "qsm/symmetry.hpp"

// JSON forms. Rationals are written as "p/q", or "p" when q = 1; integer
// entries may be given as JSON numbers or such strings.
namespace qsm::io {

using Json = nlohmann::json;

/// Throws ParseError when the file cannot be read or parsed.
Json readFile(const std::string& path);
Json parse(const std::string& text);

Rational rationalFrom(const Json& j);
Json toJson(const Rational& r);

/// {"dim": d, "rows": [{"label": ..., "coeffs": [...]}, ...]}
Json coneToJson(const HDescription& h);
HDescription coneFromJson(const Json& j);

/// {"dim": d, "rays": [[int, ...], ...]}
Json raysToJson(std::size_t dim, const std::vector<Ray>& rays);
std::vector<Ray> raysFromJson(const Json& j);

/// {"n": n, "entries": [[...], ...]}; the diagonal must be zero.
Json matrixToJson(const qmet::RawMatrix& m);
Json matrixToJson(const qmet::ExponentMatrix& m);
qmet::RawMatrix matrixFromJson(const Json& j);

/// {"dim": d, "bound": b, "pairs": [[in, out], ...]}
Json oracleToJson(const box::BoxOracle& o);
box::BoxOracle oracleFromJson(const Json& j);

Json checksToJson(const std::vector<Check>& checks);
Json pointsToJson(const std::vector<box::BoxPoint>& pts);
Json elementToJson(const GroupElement& g);
Json certificateToJson(const symmetry::LinesCertificate& c);

} // namespace qsm::io

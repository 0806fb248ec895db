#pragma once

// JSON encoding for everything the command-line front end reads or writes.
// Exact scalars travel as [re_num, re_den, im_num, im_den]; every slot is an
// integer, or a decimal string once it would overflow 64 bits.  Parsers are
// lenient on input (plain integers, [num, den] pairs, and "a/b" strings are
// accepted) and always emit the canonical quadruple.  Malformed input throws
// std::invalid_argument; semantically invalid input throws std::domain_error.

#include "adeq/dynkin.hpp"
#include "adeq/geometry.hpp"
#include "adeq/quiver.hpp"
#include "adeq/rep.hpp"
#include "adeq/solver.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace adeq {

using Json = nlohmann::ordered_json;

Json qc_to_json(const QC& v);
QC qc_from_json(const Json& j);

Json cd_to_json(CD v);  // [re, im]
CD cd_from_json(const Json& j);

Json poly_to_json(const Poly& p);  // coefficient list, ascending degree
Poly poly_from_json(const Json& j);

Json fibration_to_json(const FibrationData& f);
FibrationData fibration_from_json(const Json& j);

Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

Json representation_to_json(const Representation<QC>& v);
Json representation_to_json(const Representation<CD>& v);

// Field is decided by the "field" key; exactly one member is set.
struct ParsedRepresentation {
  std::optional<Representation<QC>> exact;
  std::optional<Representation<CD>> floating;
};
ParsedRepresentation representation_from_json(const Json& j, const Quiver& q);

Json equation_to_json(const ThreefoldEquation& eq);
// Round-trips n and the polynomial; the eigenvalue list is not part of the
// wire format, so the result carries an empty t.
ThreefoldEquation equation_from_json(const Json& j);

Json surface_point_to_json(const SurfacePointQ& p);
Json surface_point_to_json(const SurfacePointC& p);
struct ParsedSurfacePoint {
  std::optional<SurfacePointQ> exact;
  std::optional<SurfacePointC> floating;
};
ParsedSurfacePoint surface_point_from_json(const Json& j);

Json chart_point_to_json(const ChartPointQ& c);
Json chart_point_to_json(const ChartPointC& c);
struct ParsedChartPoint {
  std::optional<ChartPointQ> exact;
  std::optional<ChartPointC> floating;
};
ParsedChartPoint chart_point_from_json(const Json& j);

Json genericity_to_json(const GenericityReport& r);
Json singular_locus_to_json(const SingularLocus& locus);
Json semi_invariants_to_json(const SemiInvariants& s);
Json stability_to_json(const StabilityVerdict& v);
Json residual_report_to_json(const ResidualReport& r);
Json solve_result_to_json(const SolveResult& r);
Json probe_to_json(const FiberProbeReport& r);

}  // namespace adeq

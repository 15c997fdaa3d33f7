#pragma once

// CSV and SVG renderings of an uncertainty diagram.
//
// SVG legend: red squares for Present points whose witness state is
// classical, blue diamonds for the other Present points, hollow red circles
// for holes, grey crosses for undecided points. The hyperbola n_a * n_b = d
// is dashed and the line n_a + n_b = d + 1 dot-dashed. Output depends only
// on its inputs.

#include <cstdint>
#include <string>
#include <vector>

#include "kdq/diagram.hpp"

namespace kdq {

enum class Marker { Classical, Nonclassical, Hole, Unknown };

const char* to_string(Marker m) noexcept;

struct PlotPoint {
  unsigned n_a = 0;
  unsigned n_b = 0;
  Marker marker = Marker::Unknown;
};

/// Marker per lattice point, in diagram order. Present points are coloured
/// by classifying one witness state drawn with a seed derived from `seed`.
std::vector<PlotPoint> plot_markers(const TransitionMatrix& u, const UncertaintyDiagram& diagram, std::uint64_t seed,
                                    double support_eps = kDefaultSupportEps,
                                    double classical_eps = kDefaultClassicalEps);

/// Header "na,nb,status", one line per lattice point.
std::string render_csv(const UncertaintyDiagram& diagram);

std::string render_svg(unsigned d, const std::vector<PlotPoint>& points);

}  // namespace kdq

#pragma once

// JSON formats: diagrams, states, and the on-disk diagram cache.
//
// Diagram:  {"d": int, "engine": str,
//            "points": [{"na": int, "nb": int, "status": str, "rows": [...], "cols": [...]}]}
// State:    {"d": int, "amps_a": [[re, im], ...]}
//
// Keys are written in the order above and points in (na, nb) order, so a
// saved diagram is byte-stable.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "kdq/diagram.hpp"
#include "kdq/kd.hpp"

namespace kdq {

inline constexpr const char* kVersion = "0.3.1";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string diagram_to_json(const UncertaintyDiagram& diagram);
/// Throws FormatError on malformed input.
UncertaintyDiagram diagram_from_json(const std::string& text);

struct LoadedState {
  StateVector state;
  /// Set when the stored amplitudes were off unit norm by more than 1e-6.
  bool renormalized = false;
};

std::string state_to_json(const StateVector& psi);
/// Normalises the amplitudes. Throws FormatError on malformed input.
LoadedState state_from_json(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// File name of a cached diagram: one per (d, engine, tolerance, symmetry
/// reduction, code version).
std::string diagram_cache_name(unsigned d, EngineMode engine, double rank_tol, bool sym_reduce);

/// Cached diagram from `dir`, if present and readable.
std::optional<UncertaintyDiagram> load_cached_diagram(const std::filesystem::path& dir, unsigned d, EngineMode engine,
                                                      double rank_tol, bool sym_reduce);
void store_cached_diagram(const std::filesystem::path& dir, const UncertaintyDiagram& diagram, double rank_tol);

}  // namespace kdq

#pragma once

#include <iosfwd>
#include <string>

#include "qdw/simulator.hpp"

namespace qdw {

// State file: {"d_a": int, "d_b": int, "matrix": [[[re, im], ...], ...]}
// with row-major nesting. Reading enforces every density-matrix invariant
// and names the first one that fails.
DensityMatrix read_density(std::istream& in);
DensityMatrix parse_density(const std::string& text);
DensityMatrix load_density(const std::string& path);
void write_density(std::ostream& out, const DensityMatrix& rho);
void save_density(const std::string& path, const DensityMatrix& rho);

// Measurement file: {"d": int, "settings": [{"a": float, "bloch": [...]}]}
MeasurementSet read_measurements(std::istream& in, Side side);
MeasurementSet parse_measurements(const std::string& text, Side side);
MeasurementSet load_measurements(const std::string& path, Side side);
void write_measurements(std::ostream& out, const MeasurementSet& set);
void save_measurements(const std::string& path, const MeasurementSet& set);

// Tally file: {"settings": [n_a, n_b],
//              "counts": {"x,y": [[n00, n01], [n10, n11]], ...}}
TallyTable read_tally(std::istream& in);
TallyTable parse_tally(const std::string& text);
TallyTable load_tally(const std::string& path);
void write_tally(std::ostream& out, const TallyTable& t);
void save_tally(const std::string& path, const TallyTable& t);

// Witness report: {"q": [[...]], "w": float, "d_a": int, "d_b": int,
//                  "path": "analytic"|"estimated"}
std::string report_to_json(const WitnessReport& report);
WitnessReport parse_report(const std::string& text);

} // namespace qdw

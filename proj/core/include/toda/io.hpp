#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "toda/closure.hpp"
#include "toda/quantization.hpp"
#include "toda/radial.hpp"

namespace toda::io {

using json = nlohmann::ordered_json;

/// {"expr": prefix expression, "decimal": 30 significant digits, "exact": "p/q" when rational}
json to_json(const RealScalar& value);
/// Rebuilds the value from "expr"; checks "exact" against it when present.
RealScalar real_from_json(const json& j);

/// {"mu1", "mu2", "count", "points": [{"s1", "s2", "provenance"}]}
json to_json(const SigmaSet& set);
/// Throws ParseError on schema violations.
SigmaSet sigma_set_from_json(const json& j);

/// Header s1,s2,provenance; decimal columns.
void write_csv(std::ostream& out, const SigmaSet& set);

/// Header t,r,u1..un,du1..dun,sigma1..sigman,pohozaev_residual; 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const CartanMatrix& a);

/// Parses a trajectory CSV written by write_trajectory_csv. mu and h are not
/// stored in the file and come from the caller. Throws ParseError.
Trajectory read_trajectory_csv(std::istream& in, const GammaVector& gamma,
                               const std::vector<double>& h);

/// {"plateaus": [[s1, s2], ...], "sigma_set_match": [bool, ...]}
json plateau_report(const std::vector<Plateau>& plateaus, const std::vector<bool>& matches);

/// {"n", "gamma", "sigma", "pohozaev_residual", "margins"}
json quantize_report(const GammaVector& gamma, const EnergyVector& sigma,
                     const RealScalar& residual, const std::vector<RealScalar>& margins);

}  // namespace toda::io

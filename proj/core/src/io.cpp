#include "toda/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "toda/errors.hpp"

namespace toda::io {

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scalar_text(const RealScalar& v) {
  return v.is_rational() ? v.exact()->to_string() : v.to_string();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
}

}  // namespace

json to_json(const RealScalar& value) {
  json j;
  j["expr"] = value.to_prefix();
  j["decimal"] = value.decimal(30);
  if (value.is_rational()) j["exact"] = value.exact()->to_fraction();
  return j;
}

RealScalar real_from_json(const json& j) {
  if (!j.is_object() || !j.contains("expr") || !j["expr"].is_string()) {
    throw ParseError("scalar must be an object with a string \"expr\"");
  }
  RealScalar value = RealScalar::parse_prefix(j["expr"].get<std::string>());
  if (j.contains("exact") && !j["exact"].is_null()) {
    const Rational stated = Rational::parse(j["exact"].get<std::string>());
    if (!value.is_rational() || !(*value.exact() == stated)) {
      throw ParseError("\"exact\" does not match \"expr\" " + j["expr"].get<std::string>());
    }
  }
  return value;
}

json to_json(const SigmaSet& set) {
  json points = json::array();
  for (const auto& p : set.points) {
    points.push_back({{"s1", to_json(p.s1)}, {"s2", to_json(p.s2)},
                      {"provenance", describe(p.provenance)}});
  }
  return {{"mu1", set.conic.mu1().to_fraction()},
          {"mu2", set.conic.mu2().to_fraction()},
          {"count", set.points.size()},
          {"points", std::move(points)}};
}

SigmaSet sigma_set_from_json(const json& j) {
  try {
    const Conic conic(Rational::parse(j.at("mu1").get<std::string>()),
                      Rational::parse(j.at("mu2").get<std::string>()));
    SigmaSet set{conic, {}, {}};
    for (const auto& item : j.at("points")) {
      SigmaPoint p{real_from_json(item.at("s1")), real_from_json(item.at("s2")),
                   parse_provenance(item.at("provenance").get<std::string>())};
      set.points.push_back(std::move(p));
    }
    if (j.at("count").get<std::size_t>() != set.points.size()) {
      throw ParseError("\"count\" disagrees with the number of points");
    }
    for (std::size_t child = 0; child < set.points.size(); ++child) {
      if (const auto* cut = std::get_if<IntersectionOrigin>(&set.points[child].provenance)) {
        if (cut->parent != IntersectionOrigin::kNoParent) {
          if (cut->parent >= set.points.size()) throw ParseError("provenance parent out of range");
          set.generation_log.push_back({cut->parent, cut->axis, cut->shift, child});
        }
      }
    }
    return set;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sigma set JSON: ") + e.what());
  }
}

void write_csv(std::ostream& out, const SigmaSet& set) {
  out << "s1,s2,provenance\n";
  for (const auto& p : set.points) {
    out << p.s1.decimal(30) << ',' << p.s2.decimal(30) << ',' << describe(p.provenance) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr, const CartanMatrix& a) {
  const std::size_t n = tr.size();
  out << "t,r";
  for (const char* prefix : {"u", "du", "sigma"}) {
    for (std::size_t i = 1; i <= n; ++i) out << ',' << prefix << i;
  }
  out << ",pohozaev_residual\n";
  for (std::size_t k = 0; k < tr.points(); ++k) {
    out << format17(tr.t[k]) << ',' << format17(std::exp(tr.t[k]));
    for (const auto* rows : {&tr.u, &tr.du, &tr.sigma}) {
      for (std::size_t i = 0; i < n; ++i) out << ',' << format17((*rows)[i][k]);
    }
    out << ',' << format17(pohozaev_at(tr, a, k)) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in, const GammaVector& gamma,
                               const std::vector<double>& h) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trajectory file");
  const auto header = split_csv_line(line);
  if (header.size() < 6 || (header.size() - 3) % 3 != 0) {
    throw ParseError("trajectory header has " + std::to_string(header.size()) + " columns");
  }
  const std::size_t n = (header.size() - 3) / 3;
  std::vector<std::string> expected = {"t", "r"};
  for (const char* prefix : {"u", "du", "sigma"}) {
    for (std::size_t i = 1; i <= n; ++i) expected.push_back(prefix + std::to_string(i));
  }
  expected.emplace_back("pohozaev_residual");
  if (header != expected) throw ParseError("unexpected trajectory header '" + line + "'");
  if (gamma.size() != n || h.size() != n) {
    throw ParseError("file has " + std::to_string(n) + " components but gamma/h have " +
                     std::to_string(gamma.size()) + "/" + std::to_string(h.size()));
  }

  Trajectory tr;
  for (std::size_t i = 0; i < n; ++i) tr.mu.push_back(gamma.mu(i).to_double());
  tr.h = h;
  tr.u.resize(n);
  tr.du.resize(n);
  tr.sigma.resize(n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    const double t = parse_double(fields[0], line_no);
    if (!tr.t.empty() && !(t > tr.t.back())) {
      throw ParseError("line " + std::to_string(line_no) + ": t is not increasing");
    }
    tr.t.push_back(t);
    for (std::size_t i = 0; i < n; ++i) {
      tr.u[i].push_back(parse_double(fields[2 + i], line_no));
      tr.du[i].push_back(parse_double(fields[2 + n + i], line_no));
      tr.sigma[i].push_back(parse_double(fields[2 + 2 * n + i], line_no));
    }
  }
  if (tr.t.empty()) throw ParseError("trajectory file has no data rows");
  return tr;
}

json plateau_report(const std::vector<Plateau>& plateaus, const std::vector<bool>& matches) {
  json list = json::array();
  for (const auto& p : plateaus) list.push_back(p.sigma);
  return {{"plateaus", std::move(list)}, {"sigma_set_match", matches}};
}

json quantize_report(const GammaVector& gamma, const EnergyVector& sigma,
                     const RealScalar& residual, const std::vector<RealScalar>& margins) {
  json g = json::array();
  for (const auto& v : gamma.values()) g.push_back(v.to_string());
  json s = json::array();
  for (const auto& v : sigma) s.push_back(scalar_text(v));
  json m = json::array();
  for (const auto& v : margins) m.push_back(scalar_text(v));
  const std::string res =
      residual.is_rational() ? residual.exact()->to_string() : residual.decimal(30);
  return {{"n", gamma.size()}, {"gamma", g}, {"sigma", s}, {"pohozaev_residual", res},
          {"margins", m}};
}

}  // namespace toda::io

#include "gbox/json_io.hpp"

#include <stdexcept>
#include <string>

namespace gbox {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number())
    throw std::invalid_argument(std::string("missing or non-numeric field '") +
                                field + "'");
  return j.at(field).get<double>();
}

int require_int(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number_integer())
    throw std::invalid_argument(std::string("missing or non-integer field '") +
                                field + "'");
  return j.at(field).get<int>();
}

}  // namespace

json to_json(const CorrelationFunction& f) {
  json terms = json::array();
  for (const auto& [p, c] : f.terms())
    terms.push_back({{"m", p.m}, {"n", p.n}, {"cos", c.cos_coeff}, {"sin", c.sin_coeff}});
  return {{"two_j", f.two_j()}, {"constant", f.constant()}, {"terms", terms}};
}

CorrelationFunction correlation_from_json(const json& j) {
  CorrelationFunction f(require_int(j, "two_j"), require_number(j, "constant"));
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw std::invalid_argument("missing or non-array field 'terms'");
  FreqPair prev{0, 0};
  bool first = true;
  for (const auto& t : j.at("terms")) {
    const FreqPair p{require_int(t, "m"), require_int(t, "n")};
    if (!is_canonical(p))
      throw std::invalid_argument("term (" + std::to_string(p.m) + ", " +
                                  std::to_string(p.n) +
                                  ") violates the canonical form m >= 0, n > 0 if m = 0");
    if (!first && !(prev < p))
      throw std::invalid_argument("terms must be strictly ascending by (m, n); "
                                  "duplicate or out-of-order pair (" +
                                  std::to_string(p.m) + ", " + std::to_string(p.n) + ")");
    prev = p;
    first = false;
    f.add_term(p, require_number(t, "cos"), require_number(t, "sin"));
  }
  return f;
}

json to_json(const JointBox& box) {
  return {{"pp", to_json(box.block(+1, +1))},
          {"pm", to_json(box.block(+1, -1))},
          {"mp", to_json(box.block(-1, +1))},
          {"mm", to_json(box.block(-1, -1))}};
}

JointBox jointbox_from_json(const json& j) {
  for (const char* key : {"pp", "pm", "mp", "mm"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("missing block '") + key + "'");
  return JointBox({correlation_from_json(j.at("pp")),
                   correlation_from_json(j.at("pm")),
                   correlation_from_json(j.at("mp")),
                   correlation_from_json(j.at("mm"))});
}

json to_json(const LhvModel& model) {
  json pairs = json::array();
  json bs = json::array();
  for (std::size_t i = 0; i < model.freq_pairs.size(); ++i) {
    pairs.push_back({{"m", model.freq_pairs[i].m}, {"n", model.freq_pairs[i].n}});
    bs.push_back({model.b_vectors[i][0], model.b_vectors[i][1]});
  }
  return {{"n_terms", model.n_terms},
          {"xi", model.xi},
          {"freq_pairs", pairs},
          {"b_vectors", bs},
          {"scale", model.scale}};
}

LhvModel lhv_from_json(const json& j) {
  LhvModel m;
  m.n_terms = require_int(j, "n_terms");
  m.xi = require_number(j, "xi");
  m.scale = require_number(j, "scale");
  if (!j.contains("freq_pairs") || !j.at("freq_pairs").is_array() ||
      !j.contains("b_vectors") || !j.at("b_vectors").is_array())
    throw std::invalid_argument("missing 'freq_pairs' or 'b_vectors' array");
  for (const auto& p : j.at("freq_pairs"))
    m.freq_pairs.push_back({require_int(p, "m"), require_int(p, "n")});
  for (const auto& b : j.at("b_vectors")) {
    if (!b.is_array() || b.size() != 2)
      throw std::invalid_argument("each b-vector must be a 2-element array");
    m.b_vectors.push_back({b[0].get<double>(), b[1].get<double>()});
  }
  if (m.freq_pairs.size() != m.b_vectors.size() ||
      static_cast<int>(m.freq_pairs.size()) != m.n_terms)
    throw std::invalid_argument("'n_terms', 'freq_pairs', 'b_vectors' sizes disagree");
  return m;
}

json to_json(const WitnessReport& report) {
  return {{"n", report.n_settings},
          {"lhs", report.lhs},
          {"bound", report.classical_bound},
          {"violated", report.violated},
          {"margin", report.margin}};
}

}  // namespace gbox

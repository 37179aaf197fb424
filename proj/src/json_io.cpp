#include "biquad/json_io.hpp"

#include <cmath>
#include <string>

namespace biquad::io {

namespace {

std::size_t get_dim(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
    throw Error(std::string("json: missing or invalid dimension '") + key + "'");
  return j[key].get<std::size_t>();
}

std::vector<double> get_entries(const json& j, std::size_t expected) {
  if (!j.contains("entries") || !j["entries"].is_array())
    throw Error("json: missing 'entries' array");
  std::vector<double> out;
  out.reserve(j["entries"].size());
  for (const auto& v : j["entries"]) {
    if (!v.is_number()) throw Error("json: non-numeric entry");
    out.push_back(v.get<double>());
  }
  if (out.size() != expected)
    throw Error("json: expected " + std::to_string(expected) + " entries, got " +
                std::to_string(out.size()));
  for (double v : out)
    if (!std::isfinite(v)) throw Error("json: non-finite entry");
  return out;
}

void check_layout(const json& j, const char* expected) {
  if (j.contains("layout") && j["layout"].get<std::string>() != expected)
    throw Error(std::string("json: unsupported layout, expected '") + expected + "'");
}

}  // namespace

json tensor_to_json(const Tensor4& t) {
  return json{{"m", t.m()}, {"n", t.n()}, {"layout", kTensorLayout},
              {"entries", t.entries()}};
}

json tensor_to_json(const BiquadraticTensor& a) {
  return json{{"m", a.m()}, {"n", a.n()}, {"layout", kTensorLayout},
              {"entries", a.entries()}};
}

Tensor4 tensor4_from_json(const json& j) {
  if (!j.is_object()) throw Error("json: tensor must be an object");
  const std::size_t m = get_dim(j, "m"), n = get_dim(j, "n");
  check_layout(j, kTensorLayout);
  Tensor4 t(m, n);
  t.entries() = get_entries(j, m * n * m * n);
  return t;
}

json third_order_to_json(const ThirdOrderTensor& t) {
  return json{{"p", t.p()}, {"m", t.m()}, {"n", t.n()},
              {"layout", kThirdOrderLayout}, {"entries", t.entries()}};
}

ThirdOrderTensor third_order_from_json(const json& j) {
  if (!j.is_object()) throw Error("json: tensor must be an object");
  const std::size_t p = get_dim(j, "p"), m = get_dim(j, "m"), n = get_dim(j, "n");
  check_layout(j, kThirdOrderLayout);
  ThirdOrderTensor t(p, m, n);
  t.entries() = get_entries(j, p * m * n);
  return t;
}

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", m.data}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw Error("json: matrix must be an object");
  const std::size_t rows = get_dim(j, "rows"), cols = get_dim(j, "cols");
  Matrix m(rows, cols);
  m.data = get_entries(j, rows * cols);
  return m;
}

json decomposition_to_json(const BQDecomposition& d) {
  json terms = json::array();
  for (const RankOneTerm& t : d.terms)
    terms.push_back(json{{"coef", t.coef}, {"x", t.x}, {"y", t.y}});
  return json{{"m", d.m}, {"n", d.n}, {"terms", std::move(terms)},
              {"reconstruction_error", d.reconstruction_error}};
}

BQDecomposition decomposition_from_json(const json& j) {
  BQDecomposition d;
  d.m = get_dim(j, "m");
  d.n = get_dim(j, "n");
  if (!j.contains("terms") || !j["terms"].is_array())
    throw Error("json: decomposition needs a 'terms' array");
  for (const auto& t : j["terms"]) {
    RankOneTerm term;
    term.coef = t.at("coef").get<double>();
    term.x = t.at("x").get<std::vector<double>>();
    term.y = t.at("y").get<std::vector<double>>();
    if (term.x.size() != d.m || term.y.size() != d.n)
      throw Error("json: term vector lengths do not match (m, n)");
    d.terms.push_back(std::move(term));
  }
  d.reconstruction_error = j.value("reconstruction_error", 0.0);
  return d;
}

json interval_to_json(const NormInterval& iv) {
  return json{{"lower", iv.lower},
              {"upper", iv.upper},
              {"exact", iv.exact},
              {"lower_source", iv.lower_source},
              {"upper_source", iv.upper_source}};
}

json meigenpair_to_json(const MEigenPair& p) {
  return json{{"lambda", p.lambda}, {"x", p.x}, {"y", p.y}, {"residual", p.residual}};
}

json psd_verdict_to_json(const PsdVerdict& v) {
  const char* tag = v.tag == PsdTag::CertifiedPSD ? "CertifiedPSD"
                    : v.tag == PsdTag::NotPSD     ? "NotPSD"
                                                  : "Unknown";
  json witness = nullptr;
  if (v.witness)
    witness = json{{"x", v.witness->x}, {"y", v.witness->y}, {"value", v.witness->value}};
  return json{{"tag", tag}, {"witness", std::move(witness)},
              {"min_estimate", v.min_estimate}};
}

json inequality_report_to_json(const InequalityReport& r) {
  json checks = json::array();
  for (const InequalityCheck& c : r.checks)
    checks.push_back(json{{"name", c.name},
                          {"left", c.left},
                          {"right", c.right},
                          {"satisfied", c.satisfied},
                          {"note", c.note}});
  return json{{"checks", std::move(checks)}, {"all_sound", r.all_sound}};
}

json tucker_to_json(const TuckerForm& t) {
  return json{{"core", tensor_to_json(t.core)},
              {"P", matrix_to_json(t.P)},
              {"Q", matrix_to_json(t.Q)},
              {"kind", t.kind == TuckerKind::Orthonormal ? "orthonormal" : "independent"},
              {"reconstruction_error", t.reconstruction_error},
              {"exact", t.exact}};
}

json br_report_to_json(const BrPreservationReport& r) {
  return json{{"terms_ambient", r.terms_ambient},
              {"terms_core", r.terms_core},
              {"push_forward_error", r.push_forward_error},
              {"pull_back_error", r.pull_back_error},
              {"push_forward_ok", r.push_forward_ok},
              {"pull_back_ok", r.pull_back_ok},
              {"ok", r.ok}};
}

}  // namespace biquad::io

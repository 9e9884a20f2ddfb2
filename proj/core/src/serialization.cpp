#include "pcm/serialization.hpp"

#include <string>

#include "pcm/errors.hpp"

namespace pcm {

using nlohmann::json;

namespace {

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

json bin_json(const HistogramBin& b) {
  return {{"total", b.total}, {"violating", b.violating}};
}

HistogramBin bin_from(const json& j) {
  return {j.at("total").get<std::uint64_t>(),
          j.at("violating").get<std::uint64_t>()};
}

}  // namespace

json to_json(const PairwiseComparisonMatrix& a) {
  return {{"n", a.size()}, {"upper", a.upper_triangle()}};
}

PairwiseComparisonMatrix matrix_from_json(const json& j) {
  return guarded("matrix", [&] {
    return PairwiseComparisonMatrix::from_upper(
        j.at("n").get<std::size_t>(), j.at("upper").get<std::vector<double>>());
  });
}

json to_json(const RandomIndexTable& table) {
  json values = json::object();
  for (const auto& [n, ri] : table.values()) values[std::to_string(n)] = ri;
  json out = {{"scale", std::string(to_string(table.scale()))},
              {"values", values}};
  out["sample_size"] =
      table.sample_size() ? json(*table.sample_size()) : json(nullptr);
  return out;
}

RandomIndexTable ri_table_from_json(const json& j) {
  return guarded("random index table", [&] {
    std::map<std::size_t, double> values;
    for (const auto& [key, value] : j.at("values").items()) {
      std::size_t n = 0;
      try {
        n = std::stoul(key);
      } catch (const std::exception&) {
        throw ValidationError("random index key '" + key + "' is not a size");
      }
      values[n] = value.get<double>();
    }
    std::optional<std::uint64_t> sample_size;
    if (j.contains("sample_size") && !j["sample_size"].is_null()) {
      sample_size = j["sample_size"].get<std::uint64_t>();
    }
    return RandomIndexTable(parse_scale(j.at("scale").get<std::string>()),
                            std::move(values), sample_size);
  });
}

json to_json(const InconsistencyReport& r) {
  return {{"n", r.n},   {"lambda_max", r.lambda_max}, {"ci", r.ci},
          {"ri", r.ri}, {"cr", r.cr},                 {"acceptable", r.acceptable}};
}

json to_json(const EigenResult& r) {
  return {{"lambda_max", r.lambda_max},
          {"weights", std::vector<double>(r.weights.values().begin(),
                                          r.weights.values().end())},
          {"iterations", r.iterations},
          {"residual", r.residual}};
}

json to_json(const MonotonicityReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"i", v.i + 1},
                          {"j", v.j + 1},
                          {"k", v.k + 1},
                          {"ratio_before", v.ratio_before},
                          {"ratio_after", v.ratio_after},
                          {"factor", v.factor}});
  }
  json weak = json::array();
  for (const auto& e : r.weak_violations) weak.push_back({e.i + 1, e.j + 1});
  return {{"matrix_hash", r.matrix_hash},
          {"method", std::string(to_string(r.method))},
          {"factor", r.factor},
          {"margin", r.margin},
          {"eigen_tol", r.eigen_tol},
          {"violations", violations},
          {"weak_violations", weak}};
}

json to_json(const ViolationExample& e) {
  return {{"matrix", to_json(e.matrix)},
          {"cr", e.cr},
          {"i", e.i + 1},
          {"j", e.j + 1},
          {"k", e.k + 1}};
}

ViolationExample violation_example_from_json(const json& j) {
  return guarded("violation example", [&] {
    return ViolationExample{matrix_from_json(j.at("matrix")),
                            j.at("cr").get<double>(),
                            j.at("i").get<std::size_t>() - 1,
                            j.at("j").get<std::size_t>() - 1,
                            j.at("k").get<std::size_t>() - 1};
  });
}

json to_json(const CrHistogram& h) {
  json bins = json::array();
  const std::size_t rows =
      h.regular_bin_limit() ? *h.regular_bin_limit() : h.bins().size();
  for (std::size_t m = 0; m < rows; ++m) {
    const HistogramBin b = h.bin(m);
    json row = bin_json(b);
    row["index"] = m + 1;
    row["lo"] = h.beta() * static_cast<double>(m);
    row["hi"] = h.beta() * static_cast<double>(m + 1);
    row["proportion"] = b.total ? json(b.proportion()) : json(nullptr);
    bins.push_back(std::move(row));
  }
  json out = {{"beta", h.beta()},
              {"bins", bins},
              {"boundary_ties", h.boundary_ties()},
              {"failures", h.failures()},
              {"skipped", h.skipped()}};
  out["overflow_at"] = h.overflow_at() ? json(*h.overflow_at()) : json(nullptr);
  out["overflow"] = h.overflow_at() ? bin_json(h.overflow()) : json(nullptr);
  out["min_cr_example"] =
      h.min_cr_example() ? to_json(*h.min_cr_example()) : json(nullptr);
  return out;
}

CrHistogram histogram_from_json(const json& j) {
  return guarded("histogram", [&] {
    std::optional<double> overflow_at;
    if (!j.at("overflow_at").is_null()) overflow_at = j["overflow_at"].get<double>();
    std::vector<HistogramBin> bins;
    for (const auto& b : j.at("bins")) bins.push_back(bin_from(b));
    HistogramBin overflow;
    if (!j.at("overflow").is_null()) overflow = bin_from(j["overflow"]);
    std::optional<ViolationExample> example;
    if (!j.at("min_cr_example").is_null()) {
      example = violation_example_from_json(j["min_cr_example"]);
    }
    return CrHistogram::restore(
        j.at("beta").get<double>(), overflow_at, std::move(bins), overflow,
        j.at("boundary_ties").get<std::uint64_t>(),
        j.at("failures").get<std::uint64_t>(),
        j.at("skipped").get<std::uint64_t>(), std::move(example));
  });
}

}  // namespace pcm

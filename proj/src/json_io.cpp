#include "lacuna/json_io.hpp"

namespace lacuna {

namespace {

Rational rational_from_json(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) return Rational::from_double(v.get<double>());
  throw ParseError("json: expected rational as string or number");
}

SqrtRational sqrt_rational_from_json(const json& v) {
  if (v.is_string()) return SqrtRational::parse(v.get<std::string>());
  return SqrtRational::of_rational(rational_from_json(v));
}

json sqrt_rational_to_json(const SqrtRational& v) {
  if (v.is_rational()) return json(v.rational_root().str());
  return json("sqrt(" + v.squared().str() + ")");
}

}  // namespace

json step_function_to_json(const StepFunction& f) {
  json j;
  json bp = json::array();
  for (const auto& b : f.breakpoints()) bp.push_back(b.str());
  json vals = json::array();
  for (const auto& v : f.values()) vals.push_back(v.str());
  j["breakpoints"] = std::move(bp);
  j["values"] = std::move(vals);
  return j;
}

StepFunction step_function_from_json(const json& j) {
  if (!j.contains("breakpoints") || !j.contains("values"))
    throw ParseError("json: step function needs breakpoints and values");
  std::vector<Rational> bp, vals;
  for (const auto& v : j.at("breakpoints")) bp.push_back(rational_from_json(v));
  for (const auto& v : j.at("values")) vals.push_back(rational_from_json(v));
  return StepFunction(std::move(bp), std::move(vals));
}

json step_set_to_json(const std::vector<StepFunction>& fs) {
  json j;
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(step_function_to_json(f));
  j["functions"] = std::move(arr);
  return j;
}

std::vector<StepFunction> step_set_from_json(const json& j) {
  const json& arr = j.contains("functions") ? j.at("functions") : j;
  if (!arr.is_array()) throw ParseError("json: expected a function array");
  std::vector<StepFunction> out;
  for (const auto& f : arr) out.push_back(step_function_from_json(f));
  return out;
}

json system_to_json(const SystemSpec& sys) {
  json j;
  j["kind"] = kind_name(sys.kind());
  json params;
  switch (sys.kind()) {
    case SystemKind::Rademacher:
    case SystemKind::Walsh:
      params["m"] = sys.size();
      break;
    case SystemKind::TrigSine:
    case SystemKind::TrigCosine:
      params["freqs"] = sys.freqs();
      params["amplitude"] = sqrt_rational_to_json(sys.amplitude());
      break;
    case SystemKind::CustomStep: {
      json arr = json::array();
      for (const auto& f : sys.custom_functions())
        arr.push_back(step_function_to_json(f));
      params["functions"] = std::move(arr);
      break;
    }
  }
  j["params"] = std::move(params);
  j["D"] = sqrt_rational_to_json(sys.bound());
  return j;
}

SystemSpec system_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  const json& params = j.at("params");
  SystemSpec sys = [&]() {
    if (kind == "rademacher")
      return SystemSpec::rademacher(params.at("m").get<int>());
    if (kind == "walsh") return SystemSpec::walsh(params.at("m").get<int>());
    if (kind == "trig-sine" || kind == "trig-cosine") {
      std::vector<long long> freqs =
          params.at("freqs").get<std::vector<long long>>();
      SqrtRational amp = params.contains("amplitude")
                             ? sqrt_rational_from_json(params.at("amplitude"))
                             : SqrtRational::sqrt_of(Rational(2));
      return kind == "trig-sine" ? SystemSpec::trig_sine(freqs, amp)
                                 : SystemSpec::trig_cosine(freqs, amp);
    }
    if (kind == "custom-step")
      return SystemSpec::custom_step(step_set_from_json(params));
    throw ParseError("json: unknown system kind '" + kind + "'");
  }();
  if (j.contains("D")) sys.set_bound(sqrt_rational_from_json(j.at("D")));
  return sys;
}

json certificate_to_json(const SelectionCertificate& cert) {
  json j;
  j["success"] = cert.success;
  j["system"] = cert.system;
  j["indices"] = cert.indices;
  j["condition_sum"] = cert.condition_sum;
  if (!cert.condition_sum_exact.empty())
    j["condition_sum_exact"] = cert.condition_sum_exact;
  j["threshold"] = cert.threshold;
  j["worst_pattern"] = cert.worst_pattern;
  j["seed"] = cert.seed;
  j["stats"] = {{"restarts", cert.stats.restarts},
                {"evaluations", cert.stats.evaluations}};
  if (!cert.per_step_sums.empty()) {
    j["per_step_sums"] = cert.per_step_sums;
    j["per_step_thresholds"] = cert.per_step_thresholds;
  }
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

SelectionCertificate certificate_from_json(const json& j) {
  SelectionCertificate cert;
  cert.success = j.at("success").get<bool>();
  cert.system = j.value("system", "");
  cert.indices = j.at("indices").get<std::vector<int>>();
  cert.condition_sum = j.at("condition_sum").get<double>();
  cert.condition_sum_exact = j.value("condition_sum_exact", "");
  cert.threshold = j.at("threshold").get<double>();
  cert.worst_pattern = j.value("worst_pattern", std::vector<int>{});
  cert.seed = j.value("seed", 0ULL);
  if (j.contains("stats")) {
    cert.stats.restarts = j["stats"].value("restarts", 0LL);
    cert.stats.evaluations = j["stats"].value("evaluations", 0LL);
  }
  cert.per_step_sums = j.value("per_step_sums", std::vector<double>{});
  cert.per_step_thresholds =
      j.value("per_step_thresholds", std::vector<double>{});
  cert.note = j.value("note", "");
  return cert;
}

json riesz_certificate_to_json(const RieszCertificate& cert) {
  json j;
  j["blocks"] = cert.blocks;
  j["weights"] = cert.weights;
  j["i_n"] = cert.i_n;
  j["lower_target"] = cert.lower_target;
  j["holds"] = cert.holds;
  j["gamma_terms"] = cert.gamma_terms;
  if (cert.t_prime > 0.0) {
    j["l_n"] = cert.l_n;
    j["t_prime"] = cert.t_prime;
    j["bound_leading"] = cert.bound_leading;
    j["bound_expectation_part"] = cert.bound_expectation_part;
    j["bound_total"] = cert.bound_total;
  }
  return j;
}

json equivalence_report_to_json(const EquivalenceReport& rep) {
  json j;
  j["c_hat"] = rep.unbounded ? json("unbounded") : json(rep.c_hat);
  j["unbounded"] = rep.unbounded;
  j["family_size"] = rep.family_size;
  j["z_grid_size"] = rep.z_grid_size;
  json w = json::array();
  for (const auto& it : rep.witnesses)
    w.push_back({{"family_index", it.family_index},
                 {"z", it.z},
                 {"side", it.side}});
  j["witnesses"] = std::move(w);
  return j;
}

json moment_band_to_json(const MomentBand& band) {
  json j;
  j["c_lower"] = band.c_lower;
  j["c_upper"] = band.c_upper;
  j["beta"] = band.beta;
  j["lower_witness"] = {{"family_index", band.lower_witness.family_index},
                        {"t", band.lower_witness.t},
                        {"ratio", band.lower_witness.ratio}};
  j["upper_witness"] = {{"family_index", band.upper_witness.family_index},
                        {"t", band.upper_witness.t},
                        {"ratio", band.upper_witness.ratio}};
  return j;
}

}  // namespace lacuna

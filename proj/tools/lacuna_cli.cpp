// lacuna: batch front end for the lacunary-system toolkit.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lacuna/equivalence.hpp"
#include "lacuna/extension.hpp"
#include "lacuna/json_io.hpp"
#include "lacuna/kfunctional.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/qnorm.hpp"
#include "lacuna/selection.hpp"
#include "lacuna/tails.hpp"
#include "lacuna/version.hpp"

using namespace lacuna;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitOutcome = 2;  // NotFound / Unbounded / failed check

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw ParseError("empty number list '" + text + "'");
  return out;
}

std::vector<long long> parse_freq_list(const std::string& text) {
  // "1,3,9" or "1..128"
  auto dots = text.find("..");
  std::vector<long long> out;
  if (dots != std::string::npos) {
    long long lo = std::stoll(text.substr(0, dots));
    long long hi = std::stoll(text.substr(dots + 2));
    for (long long k = lo; k <= hi; ++k) out.push_back(k);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      out.push_back(std::stoll(item));
    }
  }
  if (out.empty()) throw ParseError("empty frequency list '" + text + "'");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

// "rademacher:8", "walsh:256", "trig-sine:1,3,9", "trig-cosine:1..128",
// "@system.json"
SystemSpec parse_system(const std::string& text, const std::string& amp) {
  if (!text.empty() && text.front() == '@')
    return system_from_json(read_json_file(text.substr(1)));
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("system spec needs kind:params, got '" + text + "'");
  std::string kind = text.substr(0, colon);
  std::string params = text.substr(colon + 1);
  if (kind == "rademacher") return SystemSpec::rademacher(std::stoi(params));
  if (kind == "walsh") return SystemSpec::walsh(std::stoi(params));
  if (kind == "trig-sine" || kind == "trig-cosine") {
    SqrtRational amplitude = amp.empty()
                                 ? SqrtRational::sqrt_of(Rational(2))
                                 : SqrtRational::parse(amp);
    auto freqs = parse_freq_list(params);
    return kind == "trig-sine" ? SystemSpec::trig_sine(freqs, amplitude)
                               : SystemSpec::trig_cosine(freqs, amplitude);
  }
  if (kind == "custom-step")
    return SystemSpec::custom_step(step_set_from_json(read_json_file(params)));
  throw ParseError("unknown system kind '" + kind + "'");
}

// Inline "1,0.5,-2", "@vectors.json", or "gen:seed:count:n".
std::vector<CoefficientVector> parse_family(const std::string& text) {
  std::vector<CoefficientVector> family;
  if (!text.empty() && text.front() == '@') {
    json j = read_json_file(text.substr(1));
    if (j.contains("family")) {
      for (const auto& row : j.at("family"))
        family.emplace_back(row.get<std::vector<double>>());
    } else if (j.contains("a")) {
      family.emplace_back(j.at("a").get<std::vector<double>>());
    } else {
      throw ParseError("vector file needs an 'a' or 'family' field");
    }
    return family;
  }
  if (text.rfind("gen:", 0) == 0) {
    std::stringstream ss(text.substr(4));
    std::string part;
    std::vector<long long> nums;
    while (std::getline(ss, part, ':')) nums.push_back(std::stoll(part));
    if (nums.size() != 3)
      throw ParseError("generator spec is gen:<seed>:<count>:<n>");
    return make_family(static_cast<std::uint64_t>(nums[0]),
                       static_cast<std::size_t>(nums[1]),
                       static_cast<std::size_t>(nums[2]));
  }
  family.emplace_back(parse_number_list(text));
  return family;
}

std::vector<int> default_indices(int m) {
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i + 1;
  return idx;
}

std::vector<int> parse_indices(const std::string& text, int fallback_m) {
  if (text.empty()) return default_indices(fallback_m);
  auto freqs = parse_freq_list(text);
  std::vector<int> idx(freqs.begin(), freqs.end());
  return idx;
}

struct Output {
  std::string json_path;
  std::string csv_path;
  json report;
  std::vector<std::string> csv_rows;
  std::string csv_header;

  void finish() const {
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      out << report.dump(2) << "\n";
    }
    if (!csv_path.empty()) {
      std::ofstream out(csv_path);
      out << csv_header << "\n";
      for (const auto& row : csv_rows) out << row << "\n";
    }
  }
};

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("LACUNA_SEED"))
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  return cli_seed;
}

json base_report(const std::string& command, std::uint64_t seed) {
  json j;
  j["tool"] = "lacuna";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  return j;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacuna: K-functionals, partition norms, tail envelopes, "
               "subsystem selection and multiplicative extension"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string out_path, csv_path, amp, d_text;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--output", out_path, "write the JSON report here");
  app.add_option("--csv", csv_path, "write a CSV summary here");
  app.add_option("--seed", seed, "seed (LACUNA_SEED overrides)");
  app.add_option("--threads", threads, "worker count (default: all cores)");

  // ---- kfunc ----
  auto* kfunc = app.add_subcommand("kfunc", "exact K(t,a;l1,l2) and kappa");
  std::string kf_a, kf_grid;
  double kf_t = 1.0;
  kfunc->add_option("--a", kf_a, "coefficients")->required();
  kfunc->add_option("--t", kf_t, "single t value");
  kfunc->add_option("--t-grid", kf_grid, "comma list of t values");

  // ---- qnorm ----
  auto* qn = app.add_subcommand("qnorm", "Montgomery-Smith partition norm");
  std::string qn_a;
  int qn_t = 1;
  bool qn_heur = false;
  qn->add_option("--a", qn_a, "coefficients")->required();
  qn->add_option("--t", qn_t, "number of blocks")->required();
  qn->add_flag("--heuristic", qn_heur, "use the feasible heuristic solver");

  // ---- tails ----
  auto* tl = app.add_subcommand("tails", "two-sided tail envelope");
  std::string tl_a, tl_zgrid;
  double tl_beta = 2.0, tl_alpha = 1.0, tl_beta_prime = 0.0;
  int tl_zcount = 33;
  tl->add_option("--a", tl_a, "coefficients")->required();
  tl->add_option("--beta", tl_beta, "moment-equivalence constant")->required();
  tl->add_option("--alpha", tl_alpha, "Holmstedt constant in use");
  tl->add_option("--beta-prime", tl_beta_prime,
                 "reference-system constant (default: beta)");
  tl->add_option("--z-grid", tl_zgrid, "explicit z values");
  tl->add_option("--z-count", tl_zcount, "grid size when --z-grid is absent");

  // ---- select-kashin ----
  auto* sk = app.add_subcommand("select-kashin",
                                "subset search for the 10^-s condition");
  std::string sk_system;
  int sk_n = 0, sk_s = 0;
  long long sk_budget = 100000;
  sk->add_option("--system", sk_system, "system spec")->required();
  sk->add_option("--N", sk_n, "candidate pool size (default: system size)");
  sk->add_option("--s", sk_s, "subset size")->required();
  sk->add_option("--budget", sk_budget, "evaluation budget");
  sk->add_option("--amp", amp, "trig amplitude (e.g. 1, sqrt2)");
  sk->add_option("--D", d_text, "uniform bound (default: natural)");

  // ---- select-greedy ----
  auto* sg = app.add_subcommand("select-greedy",
                                "epsilon-schedule greedy selection");
  std::string sg_system;
  int sg_horizon = 0, sg_count = 0;
  double sg_eps_first = 0.0, sg_eps_ratio = 0.5, sg_h = 1.0;
  sg->add_option("--system", sg_system, "system spec")->required();
  sg->add_option("--horizon", sg_horizon, "candidate horizon")->required();
  sg->add_option("--count", sg_count, "how many to accept")->required();
  sg->add_option("--eps-first", sg_eps_first,
                 "first epsilon (default: min(1,D)/32)");
  sg->add_option("--eps-ratio", sg_eps_ratio, "geometric ratio (<= 1/2)");
  sg->add_option("--h-const", sg_h, "constant weak limit h");
  sg->add_option("--amp", amp, "trig amplitude");
  sg->add_option("--D", d_text, "uniform bound");

  // ---- extend ----
  auto* ex = app.add_subcommand("extend",
                                "multiplicative extension to [0,2]");
  std::string ex_input, ex_output, ex_d = "1";
  ex->add_option("--input", ex_input, "step set JSON")->required();
  ex->add_option("--D", ex_d, "uniform bound (rational)");
  ex->add_option("--out", ex_output, "write extended set here")->required();

  // ---- check-mult ----
  auto* cm = app.add_subcommand("check-mult",
                                "verify a step set is multiplicative");
  std::string cm_input;
  cm->add_option("input", cm_input, "step set JSON")->required();

  // ---- verify-equiv ----
  auto* ve = app.add_subcommand("verify-equiv",
                                "distribution equivalence constant");
  std::string ve_sysf, ve_sysg, ve_idxf, ve_idxg, ve_family, ve_zgrid,
      ve_ampf, ve_ampg;
  int ve_zcount = 32;
  ve->add_option("--sysF", ve_sysf, "reference system")->required();
  ve->add_option("--sysG", ve_sysg, "compared system")->required();
  ve->add_option("--indicesF", ve_idxf, "indices into sysF");
  ve->add_option("--indicesG", ve_idxg, "indices into sysG");
  ve->add_option("--family", ve_family, "coefficient family (gen:s:c:n etc.)")
      ->required();
  ve->add_option("--z-grid", ve_zgrid, "explicit z grid");
  ve->add_option("--z-count", ve_zcount, "quantile grid size");
  ve->add_option("--ampF", ve_ampf, "sysF amplitude");
  ve->add_option("--ampG", ve_ampg, "sysG amplitude");

  // ---- moment-band ----
  auto* mb = app.add_subcommand("moment-band",
                                "norm-to-kappa ratio band and beta");
  std::string mb_system, mb_idx, mb_family, mb_grid = "1,2,4,8,16,32";
  mb->add_option("--system", mb_system, "system spec")->required();
  mb->add_option("--indices", mb_idx, "member indices (default 1..n)");
  mb->add_option("--family", mb_family, "coefficient family")->required();
  mb->add_option("--t-grid", mb_grid, "comma list of t values");
  mb->add_option("--amp", amp, "trig amplitude");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::uint64_t run_seed = effective_seed(seed);
  if (threads > 0) set_worker_count(threads);

  Output out;
  out.json_path = out_path;
  out.csv_path = csv_path;

  try {
    if (*kfunc) {
      auto family = parse_family(kf_a);
      std::vector<double> ts =
          kf_grid.empty() ? std::vector<double>{kf_t} : parse_number_list(kf_grid);
      out.report = base_report("kfunc", run_seed);
      out.report["config"] = {{"a", kf_a}, {"t_grid", ts}};
      out.csv_header = "vector,t,k,lambda,holmstedt,kappa";
      json rows = json::array();
      for (std::size_t vi = 0; vi < family.size(); ++vi) {
        for (double t : ts) {
          KSplit s = k_exact(family[vi], t);
          double h = holmstedt(family[vi], t);
          double kp = kappa(family[vi], t);
          std::cout << "K(" << t << ", a" << vi << ") = " << fmt(s.value)
                    << "  holmstedt = " << fmt(h)
                    << "  kappa(t) = " << fmt(kp) << "\n";
          rows.push_back({{"vector", vi},
                          {"t", t},
                          {"k", s.value},
                          {"lambda", s.lambda},
                          {"holmstedt", h},
                          {"kappa", kp}});
          out.csv_rows.push_back(std::to_string(vi) + "," + fmt(t) + "," +
                                 fmt(s.value) + "," + fmt(s.lambda) + "," +
                                 fmt(h) + "," + fmt(kp));
        }
      }
      out.report["results"] = std::move(rows);
      out.finish();
      return kExitOk;
    }

    if (*qn) {
      CoefficientVector a(parse_number_list(qn_a));
      PartitionResult r =
          qn_heur ? q_norm_heuristic(a, qn_t) : q_norm_exact(a, qn_t);
      std::cout << fmt(r.value) << "\n";
      std::cout << "blocks:";
      for (const auto& blk : r.blocks) {
        std::cout << " {";
        for (std::size_t i = 0; i < blk.size(); ++i)
          std::cout << (i ? "," : "") << blk[i];
        std::cout << "}";
      }
      std::cout << "\n";
      out.report = base_report("qnorm", run_seed);
      out.report["config"] = {{"a", qn_a}, {"t", qn_t}, {"heuristic", qn_heur}};
      out.report["results"] = {{"value", r.value}, {"blocks", r.blocks}};
      out.csv_header = "value";
      out.csv_rows.push_back(fmt(r.value));
      out.finish();
      return kExitOk;
    }

    if (*tl) {
      CoefficientVector a(parse_number_list(tl_a));
      double bp = tl_beta_prime > 0.0 ? tl_beta_prime : tl_beta;
      TailEnvelope env = build_envelope(a, tl_beta, tl_alpha, bp);
      std::vector<double> zs;
      if (!tl_zgrid.empty()) {
        zs = parse_number_list(tl_zgrid);
      } else {
        double zmax = env.upper_cutoff() * 1.05;
        for (int i = 0; i < tl_zcount; ++i)
          zs.push_back(zmax * i / std::max(1, tl_zcount - 1));
      }
      out.report = base_report("tails", run_seed);
      out.report["config"] = {{"a", tl_a},
                              {"beta", tl_beta},
                              {"alpha", tl_alpha},
                              {"beta_prime", bp}};
      out.report["constants"] = {{"C1", env.c1()}, {"C2", env.c2()},
                                 {"C3", env.c3()}, {"C4", env.c4()},
                                 {"A", env.big_a()},
                                 {"lower_cutoff", env.lower_cutoff()},
                                 {"upper_cutoff", env.upper_cutoff()}};
      out.csv_header = "z,lower,upper,chain_ok";
      json rows = json::array();
      for (double z : zs) {
        double lo = env.lower(z), hi = env.upper(z);
        bool chain = env.chain_ok(z);
        rows.push_back(
            {{"z", z}, {"lower", lo}, {"upper", hi}, {"chain_ok", chain}});
        out.csv_rows.push_back(fmt(z) + "," + fmt(lo) + "," + fmt(hi) + "," +
                               (chain ? "1" : "0"));
        std::cout << "z = " << fmt(z) << "  lower = " << fmt(lo)
                  << "  upper = " << fmt(hi) << "\n";
      }
      out.report["results"] = std::move(rows);
      out.finish();
      return kExitOk;
    }

    if (*sk) {
      SystemSpec sys = parse_system(sk_system, amp);
      if (!d_text.empty()) sys.set_bound(SqrtRational::parse(d_text));
      int n = sk_n > 0 ? sk_n : sys.size();
      SelectionCertificate cert =
          kashin_select(sys, n, sk_s, sys.bound(), sk_budget, run_seed);
      out.report = base_report("select-kashin", run_seed);
      out.report["config"] = {{"system", sk_system}, {"N", n}, {"s", sk_s},
                              {"budget", sk_budget},
                              {"D", sys.bound().str()}};
      out.report["certificate"] = certificate_to_json(cert);
      out.csv_header = "success,condition_sum,threshold,evaluations";
      out.csv_rows.push_back(std::string(cert.success ? "1" : "0") + "," +
                             fmt(cert.condition_sum) + "," +
                             fmt(cert.threshold) + "," +
                             std::to_string(cert.stats.evaluations));
      std::cout << (cert.success ? "Success" : "NotFound")
                << "  sum = " << cert.condition_sum_exact << " ("
                << fmt(cert.condition_sum) << ")  threshold = "
                << fmt(cert.threshold) << "\nindices:";
      for (int i : cert.indices) std::cout << " " << i;
      std::cout << "\n";
      out.finish();
      return cert.success ? kExitOk : kExitOutcome;
    }

    if (*sg) {
      SystemSpec sys = parse_system(sg_system, amp);
      if (!d_text.empty()) sys.set_bound(SqrtRational::parse(d_text));
      double d = sys.bound().value();
      double first = sg_eps_first > 0.0 ? sg_eps_first : std::min(1.0, d) / 32.0;
      EpsilonSchedule schedule =
          EpsilonSchedule::geometric(sg_count, first, sg_eps_ratio);
      out.report = base_report("select-greedy", run_seed);
      out.report["config"] = {{"system", sg_system},
                              {"horizon", sg_horizon},
                              {"count", sg_count},
                              {"eps_first", first},
                              {"eps_ratio", sg_eps_ratio},
                              {"h_const", sg_h}};
      try {
        SelectionCertificate cert =
            greedy_select(sys, sg_horizon, schedule,
                          WeakLimit::of_constant(sg_h), sys.bound());
        out.report["certificate"] = certificate_to_json(cert);
        std::cout << "accepted:";
        for (int i : cert.indices) std::cout << " " << i;
        std::cout << "\n";
        out.finish();
        return kExitOk;
      } catch (const HorizonExhausted& e) {
        out.report["error"] = e.what();
        std::cout << e.what() << "\n";
        out.finish();
        return kExitOutcome;
      }
    }

    if (*ex) {
      auto g = step_set_from_json(read_json_file(ex_input));
      Rational d = Rational::parse(ex_d);
      ExtensionCheck check = check_extension_condition(g, d);
      out.report = base_report("extend", run_seed);
      out.report["config"] = {{"input", ex_input}, {"D", ex_d}};
      out.report["check"] = {{"max_abs", check.max_abs.str()},
                             {"ok", check.ok}};
      if (!check.ok) {
        std::cout << "product-mean condition check failed: max |E| = "
                  << check.max_abs.str() << "\n";
        out.finish();
        return kExitOutcome;
      }
      ExtensionResult res = extend_multiplicative(g, d);
      {
        std::ofstream hspec(ex_output);
        hspec << step_set_to_json(res.h).dump(2) << "\n";
      }
      MultiplicativityReport rep = verify_multiplicative(res.h);
      out.report["results"] = {{"s", res.plan.s},
                               {"functions", ex_output},
                               {"verified_multiplicative", rep.ok}};
      std::cout << "extended " << res.h.size() << " functions to [0,2]; "
                << "multiplicative: " << (rep.ok ? "yes" : "NO") << "\n";
      out.finish();
      return rep.ok ? kExitOk : kExitOutcome;
    }

    if (*cm) {
      auto h = step_set_from_json(read_json_file(cm_input));
      MultiplicativityReport rep = verify_multiplicative(h);
      out.report = base_report("check-mult", run_seed);
      out.report["config"] = {{"input", cm_input}};
      out.report["results"] = {{"ok", rep.ok}};
      if (!rep.ok) {
        out.report["results"]["worst_subset"] = rep.worst_subset;
        out.report["results"]["worst_value"] = rep.worst_value.str();
        std::cout << "not multiplicative: worst subset integral "
                  << rep.worst_value.str() << "\n";
      } else {
        std::cout << "ok: all subset products integrate to zero exactly\n";
      }
      out.finish();
      return rep.ok ? kExitOk : kExitOutcome;
    }

    if (*ve) {
      SystemSpec sf = parse_system(ve_sysf, ve_ampf);
      SystemSpec sg2 = parse_system(ve_sysg, ve_ampg);
      auto family = parse_family(ve_family);
      std::size_t m = family.front().size();
      std::vector<int> idxf = parse_indices(ve_idxf, static_cast<int>(m));
      std::vector<int> idxg = parse_indices(ve_idxg, static_cast<int>(m));
      std::vector<double> zs;
      if (!ve_zgrid.empty()) {
        zs = parse_number_list(ve_zgrid);
      } else {
        // Quantile points of the reference distribution plus midpoints.
        Polynomial ref(sf, idxf, family.front());
        zs = quantile_z_grid(ref, ve_zcount);
      }
      EquivalenceReport rep =
          distribution_compare(sf, idxf, sg2, idxg, family, zs);
      out.report = base_report("verify-equiv", run_seed);
      out.report["config"] = {{"sysF", ve_sysf}, {"sysG", ve_sysg},
                              {"family", ve_family},
                              {"family_size", family.size()},
                              {"z_grid_size", zs.size()}};
      out.report["results"] = equivalence_report_to_json(rep);
      out.csv_header = "family_index,z,side";  // one row per witness
      for (const auto& w : rep.witnesses)
        out.csv_rows.push_back(std::to_string(w.family_index) + "," +
                               fmt(w.z) + "," + w.side);
      std::cout << "C_hat (lower bound for the true constant) = "
                << (rep.unbounded ? std::string("unbounded")
                                  : fmt(rep.c_hat))
                << "\n";
      out.finish();
      return rep.unbounded ? kExitOutcome : kExitOk;
    }

    if (*mb) {
      SystemSpec sys = parse_system(mb_system, amp);
      auto family = parse_family(mb_family);
      std::vector<int> idx = parse_indices(
          mb_idx, static_cast<int>(family.front().size()));
      std::vector<double> grid = parse_number_list(mb_grid);
      MomentBand band = moment_band(sys, idx, family, grid);
      out.report = base_report("moment-band", run_seed);
      out.report["config"] = {{"system", mb_system},
                              {"family", mb_family},
                              {"t_grid", grid}};
      out.report["results"] = moment_band_to_json(band);
      out.csv_header = "c_lower,c_upper,beta";
      out.csv_rows.push_back(fmt(band.c_lower) + "," + fmt(band.c_upper) +
                             "," + fmt(band.beta));
      std::cout << "band = [" << fmt(band.c_lower) << ", "
                << fmt(band.c_upper) << "]  beta = " << fmt(band.beta)
                << "\n";
      out.finish();
      return kExitOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

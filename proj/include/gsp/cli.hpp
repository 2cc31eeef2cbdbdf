// Copyright 2026 The gsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage error.

#pragma once

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsp/census.hpp"
#include "gsp/diag_state.hpp"
#include "gsp/drpp.hpp"
#include "gsp/fixedpoint.hpp"
#include "gsp/gmpp.hpp"
#include "gsp/graph_core.hpp"
#include "gsp/parallel.hpp"
#include "gsp/thresholds.hpp"
#include "gsp/vbs.hpp"
#include "json.hpp"

namespace gsp {

// Malformed command-line input. Maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Graph ParseGraphSpec(const std::string& text) {
  static const std::vector<std::string> kNames = {"chain", "cycle", "star", "complete", "grid",
                                                  "pentagon", "icosahedron", "file"};
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  if (std::find(kNames.begin(), kNames.end(), name) == kNames.end()) {
    throw UsageError("graph spec '" + text + "' at position 0: unknown name '" + name + "'");
  }
  if (name == "file") return MakeNamed(text);  // file contents are data, not usage
  try {
    return MakeNamed(text);
  } catch (const std::invalid_argument& e) {
    size_t pos = colon == std::string::npos ? text.size() : colon + 1;
    throw UsageError("graph spec '" + text + "' at position " + std::to_string(pos) + ": " + e.what());
  }
}

namespace detail {

inline double ParseNumber(const std::string& s, const std::string& ctx) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "' in '" + ctx + "'");
  }
  if (pos != s.size()) throw UsageError("bad number '" + s + "' in '" + ctx + "'");
  return v;
}

inline std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace detail

// z:P, depol:P, global:X, thermal:BETA,DELTA, pauli:PX,PY,PZ,
// pattern:TERM[,TERM...] with TERM = {x|y|z|d}@QUBIT[=RATE]. A pattern term
// without a rate uses default_p; d spreads the rate evenly over X, Y, Z.
inline NoiseSpec ParseNoiseSpec(const std::string& text, std::optional<double> default_p = std::nullopt) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("noise spec '" + text + "' needs KIND:PARAMS");
  std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  auto nums = [&](size_t count) {
    auto parts = detail::Split(arg, ',');
    if (parts.size() != count) {
      throw UsageError("noise spec '" + text + "' needs " + std::to_string(count) + " number(s)");
    }
    std::vector<double> v;
    for (auto& p : parts) v.push_back(detail::ParseNumber(p, text));
    return v;
  };
  if (kind == "z") return noise::Z{nums(1)[0]};
  if (kind == "depol") return noise::Depol{nums(1)[0]};
  if (kind == "global") return noise::Global{nums(1)[0]};
  if (kind == "thermal") {
    auto v = nums(2);
    return noise::Thermal{v[0], v[1]};
  }
  if (kind == "pauli") {
    auto v = nums(3);
    return noise::LocalPauli{{v[0], v[1], v[2]}};
  }
  if (kind == "pattern") {
    noise::Pattern pat;
    for (const auto& term : detail::Split(arg, ',')) {
      auto at = term.find('@');
      if (at != 1) throw UsageError("pattern term '" + term + "' must look like z@3 or z@3=0.2");
      char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(term[0])));
      auto eq = term.find('=');
      std::string qs = term.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
      double q = detail::ParseNumber(qs, text);
      if (q < 0 || q >= kMaxVertices || q != std::floor(q)) throw UsageError("bad qubit in '" + term + "'");
      double rate;
      if (eq != std::string::npos) {
        rate = detail::ParseNumber(term.substr(eq + 1), text);
      } else if (default_p) {
        rate = *default_p;
      } else {
        throw UsageError("pattern term '" + term + "' has no rate and no --p was given");
      }
      size_t qi = static_cast<size_t>(q);
      if (pat.per_qubit.size() <= qi) pat.per_qubit.resize(qi + 1);
      PauliRates& r = pat.per_qubit[qi];
      switch (letter) {
        case 'x': r.px += rate; break;
        case 'y': r.py += rate; break;
        case 'z': r.pz += rate; break;
        case 'd': r.px += rate / 3, r.py += rate / 3, r.pz += rate / 3; break;
        default: throw UsageError("unknown Pauli letter in '" + term + "'");
      }
    }
    if (pat.per_qubit.empty()) throw UsageError("empty noise pattern");
    return pat;
  }
  throw UsageError("unknown noise kind '" + kind + "'");
}

namespace detail {

inline std::string FormatDouble(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// --out: "json" or "csv" go to stdout; anything else is a path whose
// extension (.csv) picks the format.
struct Sink {
  std::ostream& stdout_stream;
  std::string out;

  bool csv() const {
    if (out == "csv") return true;
    if (out == "json" || out.empty()) return false;
    return out.size() >= 4 && out.compare(out.size() - 4, 4, ".csv") == 0;
  }

  void Emit(const nlohmann::json& j, const std::function<void(std::ostream&)>& csv_writer = nullptr) {
    bool as_csv = csv();
    if (as_csv && !csv_writer) throw UsageError("this command has no CSV output");
    auto write = [&](std::ostream& os) {
      if (as_csv) csv_writer(os);
      else os << j.dump(2) << '\n';
    };
    if (out.empty() || out == "json" || out == "csv") {
      write(stdout_stream);
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    write(f);
  }
};

inline nlohmann::json MaskToList(Mask m) {
  nlohmann::json a = nlohmann::json::array();
  for (Mask r = m; r; r &= r - 1) a.push_back(std::countr_zero(r));
  return a;
}

inline nlohmann::json ThresholdJson(const ThresholdResult& r) {
  return {{"model", r.model}, {"parameter", r.parameter}, {"threshold", r.value},
          {"witness", r.witness}, {"tolerance", r.tolerance}};
}

inline nlohmann::json CanonJson(const CanonicalForm& c) {
  nlohmann::json e = nlohmann::json::array();
  for (auto [u, v] : c.edges) e.push_back({u, v});
  return {{"n", c.n}, {"edges", e}};
}

inline ValenceProjector ReadProjectorJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad JSON in '") + path + "': " + e.what());
  }
  auto matrix = [&](const char* key) {
    Mat2 m;
    const auto& rows = j.at(key);
    if (rows.size() != 2) throw UsageError(std::string(key) + " must have 2 rows");
    for (int r = 0; r < 2; ++r) {
      if (rows[r].size() != 2) throw UsageError(std::string(key) + " rows must have 2 entries");
      for (int c = 0; c < 2; ++c) m(r, c) = cd(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
    }
    return m;
  };
  return {matrix("alpha0"), matrix("alpha1")};
}

}  // namespace detail

// Entry point shared by the binary and the tests.
inline int Run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Graph-state purification toolkit", "gsp"};
  app.set_config("--config", "", "key=value config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  int threads = DefaultThreads();
  uint64_t seed = 20070412;
  std::string out_opt = "json";
  app.add_option("--threads", threads, "worker threads (THREADS env var sets the default)");
  app.add_option("--seed", seed, "seed for randomized search");

  std::function<void()> action;
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_opt, "json, csv, or an output path"); };
  detail::Sink sink{out, ""};

  // gmpp
  std::string graph_spec, noise_spec, sequence = "auto";
  std::optional<double> p_opt;
  int max_steps = 300;
  std::optional<long long> coloring_mask;
  auto* gmpp = app.add_subcommand("gmpp", "multipartite purification by P1/P2 sequences");
  gmpp->add_option("--graph", graph_spec, "graph spec")->required();
  gmpp->add_option("--noise", noise_spec, "noise spec")->required();
  gmpp->add_option("--p", p_opt, "default rate for pattern terms");
  gmpp->add_option("--sequence", sequence, "auto, greedy, or explicit like P1P2P1");
  gmpp->add_option("--max-steps", max_steps, "step budget")->check(CLI::PositiveNumber);
  gmpp->add_option("--coloring", coloring_mask, "bitmask of A qubits (default: BFS 2-coloring)");
  add_out(gmpp);
  gmpp->callback([&] {
    action = [&] {
      Graph g = ParseGraphSpec(graph_spec);
      DiagonalState s = FromNoise(g, ParseNoiseSpec(noise_spec, p_opt));
      Mask a;
      if (coloring_mask) {
        a = static_cast<Mask>(*coloring_mask);
      } else {
        auto c = TwoColoring(g);
        if (!c) throw std::invalid_argument("graph is not two-colorable");
        a = c->first;
      }
      ColoredState cs(g, s, a);
      SearchBudget budget;
      budget.max_steps = max_steps;
      budget.seed = seed;
      budget.threads = threads;
      nlohmann::json j{{"graph", graph_spec}, {"noise", noise_spec}, {"convention", kBitConvention},
                       {"coloring", {{"A", detail::MaskToList(a)}, {"B", detail::MaskToList(g.all() & ~a)}}},
                       {"initial_fidelity", cs.fidelity()}};
      std::vector<Step> seq;
      if (sequence == "auto") {
        GmppVerdict v = SearchRegime(cs, budget);
        j["mode"] = "auto";
        j["purifiable"] = v.purifiable;
        j["best_fidelity"] = v.best_fidelity;
        j["strategy"] = v.strategy;
        j["attractor"] = v.attractor_k ? nlohmann::json(std::ldexp(1.0, -*v.attractor_k)) : nlohmann::json(nullptr);
        seq = v.sequence;
        nlohmann::json strat = nlohmann::json::array();
        for (const auto& r : v.strategies) {
          strat.push_back({{"id", r.id}, {"fidelity", r.fidelity}, {"steps", r.sequence.size()}});
        }
        j["strategies"] = strat;
      } else if (sequence == "greedy") {
        ColoredState cur = cs;
        for (int i = 0; i < max_steps && cur.fidelity() <= budget.success_threshold; ++i) {
          Step st = detail::GreedyLookahead(cur);
          seq.push_back(st);
          cur = ApplyStep(cur, st).first;
        }
        j["mode"] = "greedy";
      } else {
        try {
          seq = ParseSequence(sequence);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        j["mode"] = "explicit";
      }
      j["sequence"] = SequenceString(seq);
      nlohmann::json trace = nlohmann::json::array();
      GmppTrace t;
      if (!seq.empty()) t = RunSequence(cs, seq);
      for (size_t i = 0; i < t.steps.size(); ++i) {
        const auto& r = t.steps[i];
        trace.push_back({{"step", i + 1}, {"kind", r.kind == Step::P1 ? "P1" : "P2"},
                         {"fidelity", r.fidelity}, {"success_prob", r.success_prob}});
      }
      j["final_fidelity"] = seq.empty() ? cs.fidelity() : t.final_state.fidelity();
      j["trace"] = trace;
      sink.Emit(j, [&](std::ostream& os) {
        os << "step,kind,fidelity,success_prob\n";
        for (size_t i = 0; i < t.steps.size(); ++i) {
          const auto& r = t.steps[i];
          os << i + 1 << ',' << (r.kind == Step::P1 ? "P1" : "P2") << ',' << detail::FormatDouble(r.fidelity)
             << ',' << detail::FormatDouble(r.success_prob) << '\n';
        }
      });
    };
  });

  // drpp
  auto* drpp = app.add_subcommand("drpp", "divide-and-rebuild verdict per edge");
  drpp->add_option("--graph", graph_spec, "graph spec")->required();
  drpp->add_option("--noise", noise_spec, "noise spec")->required();
  drpp->add_option("--p", p_opt, "default rate for pattern terms");
  add_out(drpp);
  drpp->callback([&] {
    action = [&] {
      Graph g = ParseGraphSpec(graph_spec);
      DrppVerdict v = DrppVerdictFor(g, ParseNoiseSpec(noise_spec, p_opt), threads);
      nlohmann::json edges = nlohmann::json::array();
      for (const auto& e : v.edges) {
        edges.push_back({{"u", e.u}, {"v", e.v}, {"lambda", e.pair.l}, {"purifiable", e.purifiable}});
      }
      RateBound rb = NGeoBound(g);
      nlohmann::json j{{"graph", graph_spec}, {"noise", noise_spec}, {"purifiable", v.purifiable},
                       {"worst_edge", {v.edges[v.worst].u, v.edges[v.worst].v}}, {"edges", edges},
                       {"pair_convention", "lambda index = bit(u) + 2*bit(v)"},
                       {"n_geo", rb.n_geo}, {"rate_ratio_bounds", {rb.lower, rb.upper}}};
      if (graph_spec.rfind("grid:", 0) == 0) j["n_geo_cluster"] = NGeoCluster(2).n_geo;
      sink.Emit(j);
    };
  });

  // drpp-critical
  int degree = 0;
  auto* drpp_crit = app.add_subcommand("drpp-critical", "critical local depolarizing rate of the DRPP");
  drpp_crit->add_option("--degree", degree, "maximum degree D_G")->required();
  add_out(drpp_crit);
  drpp_crit->callback([&] {
    action = [&] {
      double p = CriticalDepol(degree);
      sink.Emit({{"degree", degree}, {"p_crit", p}, {"x_root", 1 - 4 * p / 3}});
    };
  });

  // threshold {z|global|depol}
  auto* thr = app.add_subcommand("threshold", "upper bounds on purification");
  thr->require_subcommand(1);
  int dmin = 1, n_arg = 2;
  auto* thr_z = thr->add_subcommand("z", "local Z noise, by minimum degree");
  thr_z->add_option("--dmin", dmin, "minimum degree")->required();
  add_out(thr_z);
  thr_z->callback([&] {
    action = [&] {
      double p = ZGeneralThreshold(dmin);
      sink.Emit({{"model", "z"}, {"dmin", dmin}, {"threshold", p},
                 {"critical_temperature_per_delta", dmin == 1 ? nlohmann::json(CriticalTemperature(1.0)) : nlohmann::json(nullptr)}});
    };
  });
  auto* thr_g = thr->add_subcommand("global", "global depolarizing noise");
  thr_g->add_option("--n", n_arg, "qubit count")->required();
  add_out(thr_g);
  thr_g->callback([&] {
    action = [&] {
      sink.Emit({{"model", "global"}, {"n", n_arg}, {"threshold_fidelity", GlobalDepolThreshold(n_arg)},
                 {"threshold_x", 2.0}, {"drpp_fidelity_bound", MaxDepolDrppBound(n_arg)}});
    };
  });
  std::optional<long long> partition_mask, noisy_mask;
  auto* thr_d = thr->add_subcommand("depol", "local depolarizing noise across a partition");
  thr_d->add_option("--graph", graph_spec, "graph spec")->required();
  thr_d->add_option("--partition", partition_mask, "bitmask of one side (default: best LR cut)");
  thr_d->add_option("--noisy", noisy_mask, "bitmask of noisy qubits (default: all)");
  add_out(thr_d);
  thr_d->callback([&] {
    action = [&] {
      Graph g = ParseGraphSpec(graph_spec);
      NoiseFamily fam = noisy_mask ? DepolOnFamily(static_cast<Mask>(*noisy_mask), g.n()) : DepolFamily();
      ThresholdResult r = partition_mask ? PartitionThreshold(g, fam, {static_cast<Mask>(*partition_mask)})
                                         : BestLrPartitionThreshold(g, fam, threads);
      r.model = "depol";
      auto j = detail::ThresholdJson(r);
      j["graph"] = graph_spec;
      sink.Emit(j);
    };
  });

  // census {lr|coverage|degree3}
  auto* census = app.add_subcommand("census", "LR census and LC coverage");
  census->require_subcommand(1);
  int census_n = 4;
  auto* c_lr = census->add_subcommand("lr", "exhaustive count of LR labeled graphs");
  c_lr->add_option("--n", census_n, "vertex count (2..8)")->required();
  add_out(c_lr);
  c_lr->callback([&] {
    action = [&] {
      CensusReport r = CountLr(census_n, threads);
      sink.Emit({{"n", r.n}, {"lr", r.lr_count}, {"total", r.total}, {"p_q", r.p_q},
                 {"p_estimate", {r.p_estimate.first, r.p_estimate.second}},
                 {"ratio_bounds", {r.ratio_bounds.first, r.ratio_bounds.second}},
                 {"ratio", static_cast<double>(r.lr_count) / static_cast<double>(r.total)},
                 {"wall_seconds", r.wall_seconds}});
    };
  });
  auto* c_cov = census->add_subcommand("coverage", "every connected graph is LC-equivalent to an LR graph");
  c_cov->add_option("--n", census_n, "maximum vertex count (<= 8)")->required();
  add_out(c_cov);
  c_cov->callback([&] {
    action = [&] {
      CoverageReport r = LcLrCoverage(census_n, threads);
      nlohmann::json v = nlohmann::json::array();
      for (const auto& c : r.violators) v.push_back(detail::CanonJson(c));
      sink.Emit({{"max_n", r.max_n}, {"connected_classes", r.connected_classes}, {"per_n", r.per_n},
                 {"violators", v}});
    };
  });
  auto* c_d3 = census->add_subcommand("degree3", "connected non-LR graphs of maximum degree 3");
  c_d3->add_option("--max-n", census_n, "maximum vertex count (<= 9)")->required();
  add_out(c_d3);
  c_d3->callback([&] {
    action = [&] {
      auto cat = Degree3NonLrCatalog(census_n);
      nlohmann::json v = nlohmann::json::array();
      for (const auto& c : cat) v.push_back(detail::CanonJson(c));
      sink.Emit({{"max_n", census_n}, {"count", cat.size()}, {"graphs", v}});
    };
  });

  // lc-orbit
  size_t cap = 1'000'000;
  auto* lc = app.add_subcommand("lc-orbit", "local complementation orbit");
  lc->add_option("--graph", graph_spec, "graph spec")->required();
  lc->add_option("--cap", cap, "maximum labeled orbit size");
  add_out(lc);
  lc->callback([&] {
    action = [&] {
      Graph g = ParseGraphSpec(graph_spec);
      LcOrbit o = LcOrbitOf(g, true, cap);
      size_t lr_classes = 0;
      for (const auto& c : o.classes) lr_classes += c.n >= 2 && IsLr(c.ToGraph()).has_value();
      sink.Emit({{"graph", graph_spec}, {"labeled", o.labeled_count}, {"classes", o.classes.size()},
                 {"lr_classes", lr_classes}, {"any_lr", o.any_lr}});
    };
  });

  // fixedpoint
  int fp_d = 2, fp_rounds = 5;
  double fp_x = 1;
  auto* fp = app.add_subcommand("fixedpoint", "iterated bipartite map against its closed form");
  fp->add_option("--d", fp_d, "dimension D (power of two)")->required();
  fp->add_option("--x", fp_x, "global noise parameter x")->required();
  fp->add_option("--rounds", fp_rounds, "number of rounds");
  add_out(fp);
  fp->callback([&] {
    action = [&] {
      if (fp_rounds < 0) throw UsageError("--rounds must be >= 0");
      BipartiteDiag m = GlobalStyle(fp_d, fp_x);
      nlohmann::json rows = nlohmann::json::array();
      std::vector<std::array<double, 2>> vals;
      for (int n = 0; n <= fp_rounds; ++n) {
        double it = IterateMap(m, n).at(0, 0), cf = ClosedFormLambda00(fp_d, fp_x, n);
        vals.push_back({it, cf});
        rows.push_back({{"n", n}, {"lambda00_iterated", it}, {"lambda00_closed_form", cf}});
      }
      sink.Emit({{"d", fp_d}, {"x", fp_x}, {"rows", rows}}, [&](std::ostream& os) {
        os << "n,lambda00_iterated,lambda00_closed_form\n";
        for (size_t n = 0; n < vals.size(); ++n) {
          os << n << ',' << detail::FormatDouble(vals[n][0]) << ',' << detail::FormatDouble(vals[n][1]) << '\n';
        }
      });
    };
  });

  // vbs {check|weighted}
  auto* vbs = app.add_subcommand("vbs", "three-qubit valence bond example");
  vbs->require_subcommand(1);
  std::string alpha_path;
  double th1 = 0, th2 = 0;
  auto vbs_json = [](const ValenceProjector& p) {
    OptimalityReport o = OptimalityDetail(p);
    PairResult pr = ZMeasurePair(p);
    bool recon = ReconstructionCheck(p, DeriveP1(p));
    return nlohmann::json{{"optimality", o.holds}, {"residual", o.residual},
                          {"diagonal_check", o.diagonal_check ? nlohmann::json(*o.diagonal_check) : nlohmann::json(nullptr)},
                          {"pair_entangled", pr.entangled}, {"pair_max_schmidt", pr.max_schmidt},
                          {"reconstruction", recon}, {"projector_rank", ProjectorRank(p)}};
  };
  auto* v_check = vbs->add_subcommand("check", "optimality condition for a projector from JSON");
  v_check->add_option("--alpha", alpha_path, "JSON with alpha0, alpha1 as [[re,im],...] rows")->required();
  add_out(v_check);
  v_check->callback([&] { action = [&] { sink.Emit(vbs_json(detail::ReadProjectorJson(alpha_path))); }; });
  auto* v_w = vbs->add_subcommand("weighted", "weighted graph state projector");
  v_w->add_option("--theta1", th1, "phase on the right bond")->required();
  v_w->add_option("--theta2", th2, "phase on the left bond")->required();
  add_out(v_w);
  v_w->callback([&] {
    action = [&] {
      ValenceProjector p = WeightedGraphP0(th1, th2);
      auto j = vbs_json(p);
      j["theta1"] = th1;
      j["theta2"] = th2;
      j["cluster_fidelity"] = Overlap(BuildInitial(p), LinearCluster3());
      sink.Emit(j);
    };
  });

  // sweep depol-chain
  auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
  sweep->require_subcommand(1);
  int n_from = 2, n_to = 10;
  auto* s_chain = sweep->add_subcommand("depol-chain", "depolarizing thresholds of linear chains");
  s_chain->add_option("--n-from", n_from, "first chain length");
  s_chain->add_option("--n-to", n_to, "last chain length");
  add_out(s_chain);
  s_chain->callback([&] {
    action = [&] {
      auto rows = DepolChainSweep(n_from, n_to, threads);
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : rows) {
        j.push_back({{"n", r.n}, {"all_noisy", r.all_noisy}, {"all_noisy_cut", r.all_noisy_cut},
                     {"first_n1_noisy", r.first_n1_noisy}, {"first_n1_noisy_cut", r.first_n1_noisy_cut}});
      }
      sink.Emit({{"rows", j}}, [&](std::ostream& os) {
        os << "n,all_noisy,first_n1_noisy\n";
        for (const auto& r : rows) {
          os << r.n << ',' << detail::FormatDouble(r.all_noisy) << ',' << detail::FormatDouble(r.first_n1_noisy) << '\n';
        }
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  sink.out = out_opt;
  try {
    if (action) action();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gsp

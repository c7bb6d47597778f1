// Copyright 2026 The cpnkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command dispatch behind the `cpn` executable. Exit codes:
//   0  success
//   1  mathematical negative (not CP^n, theta not dominated, failed certificate)
//   2  usage, schema or shape error

#ifndef CPNKIT_CLI_HPP
#define CPNKIT_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "cpn/io.hpp"
#include "cpn/structure.hpp"
#include "cpn/testing/acceptance.hpp"
#include "cpn/version.hpp"

namespace cpn::cli {

inline constexpr double kDefaultTol = 1e-9;

struct CommandRequest {
  std::string command;
  std::vector<std::string> inputs;
  double tol = kDefaultTol;
  std::optional<double> rank_tol;
  std::uint64_t seed = 0;
  // random
  Index d = 0;
  Index m = 0;
  Index n = 0;
  Index rank = 0;
  // suite
  Index count = 200;

  Tolerance tolerance() const { return {tol, rank_tol.value_or(tol)}; }
};

struct CommandResult {
  int exit_code = 0;
  json report;
};

/// CPN_TOL if set and parseable, otherwise the built-in default.
inline double default_tolerance() {
  if (const char* env = std::getenv("CPN_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTol;
}

namespace detail {

inline json envelope(const CommandRequest& req, bool verdict, json certificates) {
  return json{{"command", req.command},
              {"verdict", verdict},
              {"certificates", std::move(certificates)},
              {"tol", req.tol},
              {"version", kVersion}};
}

inline CommandResult error_result(const CommandRequest& req, int code, const std::string& type,
                                  const std::string& message, json extra = json::object()) {
  json err{{"type", type}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  json certs = json::object();
  if (extra.contains("min_eig")) certs["min_eig"] = extra["min_eig"];
  json report = envelope(req, false, std::move(certs));
  report["error"] = std::move(err);
  return {code, std::move(report)};
}

inline void require_inputs(const CommandRequest& req, std::size_t count) {
  if (req.inputs.size() != count) {
    throw ValidationError(req.command + " expects " + std::to_string(count) + " input file(s)");
  }
}

inline json certificate_json(const PositivityCertificate& c) {
  return json{{"min_eig", c.min_eig}, {"hermitian", c.hermitian}, {"hermitian_residual", c.hermitian_residual}};
}

inline CommandResult check(const CommandRequest& req) {
  require_inputs(req, 1);
  const CPnMap rho = read_cpn_map(req.inputs[0]);
  const PositivityCertificate c = complete_positivity_certificate(rho, req.tol);
  json report = envelope(req, c.verdict, certificate_json(c));
  report["cpn"] = c.verdict;
  report["min_eig"] = c.min_eig;
  report["n"] = rho.order();
  return {c.verdict ? 0 : 1, std::move(report)};
}

inline CommandResult dilate_cmd(const CommandRequest& req) {
  require_inputs(req, 1);
  const CPnMap rho = read_cpn_map(req.inputs[0]);
  const StinespringDilation d = dilate(rho, req.tolerance());
  const DilationReport r = verify_dilation(rho, d, req.tolerance());
  json report = envelope(req, r.minimal,
                         {{"factor_residual", r.factor_residual},
                          {"span_dim", r.span_dim},
                          {"space_dim", r.space_dim},
                          {"minimal", r.minimal}});
  report["dilation"] = to_json(d);
  return {r.minimal ? 0 : 1, std::move(report)};
}

inline CommandResult rn(const CommandRequest& req) {
  require_inputs(req, 2);
  const CPnMap rho = read_cpn_map(req.inputs[0]);
  const CPnMap theta = read_cpn_map(req.inputs[1]);
  const RadonNikodym r = rn_operator(rho, theta, req.tolerance());
  json body = to_json(r);
  json certs = body["certificates"];
  certs["w_norm"] = r.w.norm;
  certs["isometry_residual"] = r.w.isometry_residual;
  certs["intertwining_residual"] = r.w.intertwining_residual;
  certs["domination_min_eig"] = r.w.domination.min_eig;
  json report = envelope(req, true, std::move(certs));
  report["T"] = body["T"];
  return {0, std::move(report)};
}

inline CommandResult pure(const CommandRequest& req) {
  require_inputs(req, 1);
  const PurityReport p = purity_report(read_cpn_map(req.inputs[0]), req.tolerance());
  json report = envelope(req, p.pure,
                         {{"commutation_residual", p.commutation_residual},
                          {"space_dim", p.space_dim},
                          {"multiplicities", p.multiplicities}});
  report["pure"] = p.pure;
  report["commutant_dim"] = p.commutant_dim;
  return {0, std::move(report)};
}

inline CommandResult extreme(const CommandRequest& req) {
  require_inputs(req, 1);
  const ExtremalityReport e = is_extreme(read_cpn_map(req.inputs[0]), req.tolerance());
  json report = envelope(req, e.extreme, {{"h0_dim", e.h0_dim}});
  report["extreme"] = e.extreme;
  report["compression_rank"] = e.compression_rank;
  report["commutant_dim"] = e.commutant_dim;
  return {0, std::move(report)};
}

inline CommandResult disjoint(const CommandRequest& req) {
  require_inputs(req, 2);
  const CPnMap a = read_cpn_map(req.inputs[0]);
  const CPnMap b = read_cpn_map(req.inputs[1]);
  const DisjointnessReport r = are_disjoint(a, b, req.tolerance());
  json certs = json::object();
  json witness = nullptr;
  if (!r.disjoint) {
    if (const auto w = extension_witness(a, b, req.tolerance())) {
      certs = certificate_json(w->certificate);
      certs["off_diagonal_norm"] = w->off_diagonal_norm;
      witness = to_json(w->map);
    }
  }
  json report = envelope(req, r.disjoint, std::move(certs));
  report["disjoint"] = r.disjoint;
  report["intertwiner_dim"] = r.intertwiner_dim;
  report["witness"] = std::move(witness);
  return {0, std::move(report)};
}

inline CommandResult random(const CommandRequest& req) {
  if (!req.inputs.empty()) throw ValidationError("random takes no input files");
  if (req.d < 1 || req.m < 1 || req.n < 1 || req.rank < 0) {
    throw ValidationError("random: --d, --m and --n must be positive and --rank nonnegative");
  }
  Rng rng(req.seed);
  return {0, to_json(random_cpn_map(CStarAlgebra({req.d}), req.m, req.n, req.rank, rng))};
}

inline CommandResult suite(const CommandRequest& req) {
  if (!req.inputs.empty()) throw ValidationError("suite takes no input files");
  if (req.count < 1) throw ValidationError("suite: --count must be positive");
  acceptance::Options o;
  o.seed = req.seed;
  o.tol = req.tol;
  o.scale = static_cast<double>(req.count) / 200.0;
  const auto results = acceptance::run_all(o);
  json criteria = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    criteria.push_back(
        {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  json report = envelope(req, all, {{"criteria", criteria}});
  report["seed"] = req.seed;
  report["count"] = req.count;
  return {all ? 0 : 1, std::move(report)};
}

}  // namespace detail

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check", "dilate", "rn", "pure", "extreme", "disjoint", "random", "suite"};
  return names;
}

/// Never throws for library errors; they become exit codes 1 or 2 with a
/// machine-readable "error" object.
inline CommandResult run_command(const CommandRequest& req) {
  try {
    if (req.tol <= 0.0 || (req.rank_tol && *req.rank_tol <= 0.0)) {
      throw ValidationError("tolerances must be positive");
    }
    if (req.command == "check") return detail::check(req);
    if (req.command == "dilate") return detail::dilate_cmd(req);
    if (req.command == "rn") return detail::rn(req);
    if (req.command == "pure") return detail::pure(req);
    if (req.command == "extreme") return detail::extreme(req);
    if (req.command == "disjoint") return detail::disjoint(req);
    if (req.command == "random") return detail::random(req);
    if (req.command == "suite") return detail::suite(req);
    return detail::error_result(req, 2, "usage", "unknown command '" + req.command + "'");
  } catch (const DominationError& e) {
    return detail::error_result(req, 1, "domination", e.what(), {{"min_eig", e.min_eig()}});
  } catch (const ValidationError& e) {
    return detail::error_result(req, 2, "validation", e.what());
  } catch (const CertificationError& e) {
    return detail::error_result(req, 1, "certification", e.what(), {{"residual", e.residual()}});
  } catch (const json::exception& e) {
    return detail::error_result(req, 2, "validation", e.what());
  }
}

}  // namespace cpn::cli

#endif  // CPNKIT_CLI_HPP

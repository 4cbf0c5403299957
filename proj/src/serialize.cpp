#include "qnls/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "qnls/errors.hpp"

namespace qnls {

namespace {

double max_relative_drift(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, std::abs(v - x.front()));
  return x.front() != 0.0 ? worst / std::abs(x.front()) : worst;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

void to_json(Json& j, const WaveParams& p) {
  j = Json{{"dim", p.dim()},
           {"kappa", p.kappa},
           {"omega", p.omega},
           {"c", p.c},
           {"case", to_string(p.kind)},
           {"mass_first", p.mass_first()},
           {"mass_second", p.mass_second()},
           {"beta", p.beta()}};
}

void to_json(Json& j, const FunctionalReport& r) {
  j = Json::object();
  if (r.has_plain) {
    j["e"] = r.E;
    j["p"] = r.P;
    j["l"] = r.L;
    j["n"] = r.N;
    j["s"] = r.S;
    j["k"] = r.K;
  }
  if (r.has_tilde) {
    j["l_tilde"] = r.L_tilde;
    j["n_tilde"] = r.N_tilde;
    j["s_tilde"] = r.S_tilde;
    j["k_tilde"] = r.K_tilde;
  }
  j["q"] = r.Q;
  j["a"] = r.a;
  j["b"] = r.b;
}

void to_json(Json& j, const DecayFit& f) {
  j = Json{{"model", f.model},     {"exp_rate", f.exp_rate}, {"exp_r2", f.exp_r2}, {"alg_power", f.alg_power},
           {"alg_r2", f.alg_r2}, {"samples", f.samples},   {"note", f.note}};
}

void to_json(Json& j, const SeedOutcome& s) {
  j = Json{{"seed", s.seed},
           {"j", s.J},
           {"residual", s.residual},
           {"shell", s.shell},
           {"iterations", s.iterations},
           {"converged", s.converged},
           {"below_reference", s.below_reference},
           {"stop", s.stop}};
  const auto& h = s.quadratic_history;
  const std::size_t keep = std::min<std::size_t>(h.size(), 101);
  j["quadratic_tail"] = std::vector<double>(h.end() - static_cast<std::ptrdiff_t>(keep), h.end());
}

void to_json(Json& j, const GroundStateResult& r) {
  j = Json{{"params", r.params},
           {"mu", r.mu},
           {"residual_first", r.residual_first},
           {"residual_second", r.residual_second},
           {"relative_residual", r.relative_residual},
           {"decay_first", r.decay.first},
           {"decay_second", r.decay.second},
           {"points", r.points},
           {"box", r.box},
           {"requested_box", r.requested_box},
           {"converged", r.converged},
           {"best_seed", r.best_seed},
           {"seeds", r.seeds},
           {"iterations", r.weinstein_history.size()}};
  if (r.pohozaev) j["pohozaev"] = {r.pohozaev->first, r.pohozaev->second};
  if (r.profile.first.size() > 0) j["functionals"] = action(r.profile, r.params);
}

void to_json(Json& j, const MuEstimate& m) {
  j = Json{{"value", m.value}, {"uncertainty", m.uncertainty}, {"levels", m.levels}, {"converged", m.converged}};
}

void to_json(Json& j, const ScalingReport& r) {
  j = Json{{"exponent", r.exponent}, {"factor", r.factor},   {"mu_base", r.mu_base},   {"mu_scaled", r.mu_scaled},
           {"ratio", r.ratio},       {"expected", r.expected}, {"mismatch", r.mismatch}, {"converged", r.converged}};
}

void to_json(Json& j, const DirectionReport& r) {
  j = Json{{"mu_first_axis", r.mu_first_axis},
           {"mu_second_axis", r.mu_second_axis},
           {"difference", r.difference},
           {"anisotropic", r.anisotropic},
           {"converged", r.converged}};
}

void to_json(Json& j, const BoostReport& r) {
  j = Json{{"mu_boosted", r.mu_boosted}, {"mu_rest", r.mu_rest}, {"difference", r.difference}, {"converged", r.converged}};
  if (r.plain_action) j["plain_action"] = *r.plain_action;
  if (r.plain_nehari) j["plain_nehari"] = *r.plain_nehari;
}

void to_json(Json& j, const EvolutionTrace& t) {
  j = Json{{"samples", t.time.size()},
           {"steps", t.steps},
           {"final_time", t.time.empty() ? 0.0 : t.time.back()},
           {"reason", to_string(t.reason)},
           {"drift_q", max_relative_drift(t.Q)},
           {"drift_e", max_relative_drift(t.E)}};
  double dp = 0.0;
  for (const auto& p : t.P)
    for (std::size_t k = 0; k < p.size(); ++k) dp = std::max(dp, std::abs(p[k] - t.P.front()[k]));
  j["drift_p"] = dp;
  double g = 0.0;
  for (std::size_t i = 0; i < t.time.size(); ++i) g = std::max(g, std::hypot(t.grad_first[i], t.grad_second[i]));
  j["max_gradient"] = g;
}

void to_json(Json& j, const WaveTrackReport& r) {
  j = Json{{"max_error", r.max_error}, {"times", r.times}, {"errors", r.errors},
           {"dt", r.dt},               {"t", r.T},         {"reason", to_string(r.reason)}};
}

void to_json(Json& j, const GalileanReport& r) { j = Json{{"discrepancy", r.discrepancy}, {"t", r.T}}; }

void to_json(Json& j, const SemitrivialReport& r) {
  j = Json{{"max_growth", r.max_growth},
           {"max_free_error", r.max_free_error},
           {"time", r.time},
           {"norm_first", r.norm_first},
           {"reason", to_string(r.reason)}};
}

void to_json(Json& j, const MuReference& m) { j = Json{{"params", m.params}, {"mu", m.mu}, {"source", m.source}}; }

void to_json(Json& j, const WellVerdict& v) {
  j = Json{{"params", v.params},         {"s", v.S}, {"k", v.K}, {"l", v.L}, {"n", v.N}, {"mu", v.mu},
           {"mu_source", v.mu_source}, {"membership", to_string(v.membership)}, {"margin", v.margin}};
}

void to_json(Json& j, const InvarianceReport& r) {
  std::vector<std::string> m;
  for (auto x : r.memberships) m.push_back(to_string(x));
  j = Json{{"initial", to_string(r.initial)},
           {"times", r.times},
           {"memberships", m},
           {"s", r.S},
           {"k", r.K},
           {"flips", r.flips},
           {"reason", to_string(r.reason)}};
  if (r.first_flip) j["first_flip"] = *r.first_flip;
}

void to_json(Json& j, const AprioriBound& b) {
  j = Json{{"shifted_bound", b.shifted_bound},
           {"gradient_bound", b.gradient_bound},
           {"shifted_value", b.shifted_value},
           {"gradient_value", b.gradient_value}};
}

void to_json(Json& j, const Threshold& t) {
  j = Json{{"branch", std::string(1, t.branch)}, {"kappa", t.kappa}, {"value", t.value},
           {"factor", t.factor},                 {"unit", t.unit},   {"exploratory", t.exploratory}};
}

void to_json(Json& j, const OscillationPoint& p) {
  j = Json{{"requested", p.requested}, {"speed", p.speed}, {"c", p.c},     {"omega", p.omega},
           {"mu", p.mu},               {"s", p.S},         {"k", p.K},     {"n", p.N},
           {"lhs", p.lhs},             {"rhs", p.rhs},     {"membership", to_string(p.membership)}};
}

void to_json(Json& j, const OscillationReport& r) {
  j = Json{{"threshold", r.threshold},
           {"mass", r.mass},
           {"below_threshold", r.below_threshold},
           {"schedule", r.schedule},
           {"unresolved", r.unresolved},
           {"n_monotone", r.n_monotone},
           {"note", r.note}};
  if (r.first_plus) {
    j["first_plus"] = *r.first_plus;
    j["threshold_speed"] = r.schedule[*r.first_plus].speed;
  }
  if (r.evolution) {
    j["evolution"] = *r.evolution;
    j["bound"] = r.bound;
    j["max_shifted"] = r.max_shifted;
    j["max_gradient"] = r.max_gradient;
  }
}

void to_json(Json& j, const ChargeThresholdReport& r) {
  j = Json{{"q_star", r.q_star},
           {"energy", r.energy},
           {"kinetic", r.kinetic},
           {"omega_second", r.omega_second},
           {"mu_first", r.mu_first},
           {"mu_second", r.mu_second},
           {"ratio", r.ratio},
           {"sample_charge", r.sample_charge},
           {"omega_large", r.omega_large},
           {"sample_verdict", r.sample_verdict}};
}

void to_json(Json& j, const GnReport& r) {
  j = Json{{"q_star", r.q_star}, {"minimizer", r.minimizer}, {"max_random", r.max_random}, {"random", r.random}};
}

namespace oracle {

void to_json(Json& j, const FdCheckReport& r) {
  j = Json{{"eps", r.eps}, {"errors", r.errors}, {"best", r.best}, {"orders", r.orders},
           {"gradient_norm", r.gradient_norm}};
}

void to_json(Json& j, const BruteComparison& r) {
  j = Json{{"spectral", r.spectral}, {"brute", r.brute},   {"bound_e", r.bound_E},
           {"bound_l", r.bound_L},   {"bound_p", r.bound_P}, {"diff_e", r.diff_E},
           {"diff_l", r.diff_L},     {"diff_s", r.diff_S},   {"diff_q", r.diff_Q},
           {"diff_p", r.diff_P},     {"agree", r.agree}};
}

}  // namespace oracle

void write_trace_csv(const EvolutionTrace& t, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  const std::size_t d = t.P.empty() ? 0 : t.P.front().size();
  out << "t,q,e";
  for (std::size_t k = 0; k < d; ++k) out << ",p" << k;
  out << ",grad_u,grad_v,tail_u,tail_v";
  const bool labels = t.labels.size() == t.time.size() && !t.labels.empty();
  if (labels) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < t.time.size(); ++i) {
    out << t.time[i] << ',' << t.Q[i] << ',' << t.E[i];
    for (std::size_t k = 0; k < d; ++k) out << ',' << t.P[i][k];
    out << ',' << t.grad_first[i] << ',' << t.grad_second[i] << ',' << t.tail_first[i] << ',' << t.tail_second[i];
    if (labels) out << ',' << t.labels[i];
    out << '\n';
  }
  if (!out) throw FormatError("write failed for " + path.string());
}

void write_json(const Json& j, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace qnls

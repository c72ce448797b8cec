#include <algorithm>
#include <cmath>
#include <memory>

#include "scid/hybrid.hpp"

namespace scid::hybrid {

namespace {

const double kCentre[] = {10, 20, 30};
constexpr double kCruise = 35;
constexpr double kUpshift[] = {15, 25};
constexpr double kBrakeMargin = 0.9;

double efficiency(int gear, double omega) {
  const double d = omega - kCentre[gear - 1];
  return 0.99 * std::exp(-d * d / 64) + 0.01;
}

int best_gear(double omega) {
  if (omega >= kUpshift[1]) return 3;
  if (omega >= kUpshift[0]) return 2;
  return 1;
}

std::string eta_text(int gear) {
  return "0.99 * exp(-sq(omega - " + std::to_string(static_cast<int>(kCentre[gear - 1])) + ") / 64) + 0.01";
}

// Stopping distance when braking in the best gear at a fraction of full deceleration.
class BrakingCurve {
public:
  BrakingCurve() {
    dist_.push_back(0);
    for (std::size_t i = 1; i * kDv <= 60; ++i) {
      const double v0 = static_cast<double>(i - 1) * kDv, v1 = static_cast<double>(i) * kDv;
      auto f = [](double v) { return v / (kBrakeMargin * efficiency(best_gear(v), v)); };
      dist_.push_back(dist_.back() + 0.5 * kDv * (f(v0) + f(v1)));
    }
  }

  // Highest speed from which the vehicle can stop within distance d.
  [[nodiscard]] double speed_for(double d) const {
    if (d <= 0) return 0;
    auto it = std::upper_bound(dist_.begin(), dist_.end(), d);
    if (it == dist_.end()) return 60;
    const auto i = static_cast<std::size_t>(it - dist_.begin());
    const double frac = (d - dist_[i - 1]) / (dist_[i] - dist_[i - 1]);
    return (static_cast<double>(i - 1) + frac) * kDv;
  }

private:
  static constexpr double kDv = 0.001;
  std::vector<double> dist_;
};

}  // namespace

Mds transmission() {
  Mds m;
  m.name = "transmission";
  m.vars = {{"theta", "distance"}, {"omega", "speed"}};
  auto mode = [](std::string name, std::string accel, std::string eta, bool dwell) {
    Mode md;
    md.name = std::move(name);
    md.rhs = {RealExpr::parse("omega"), RealExpr::parse(accel)};
    md.defs = {{"eta", RealExpr::parse(eta)}};
    md.dwell = dwell;
    return md;
  };
  m.modes.push_back(mode("N", "0", "0.01", false));
  for (int g = 1; g <= 3; ++g) m.modes.push_back(mode(std::to_string(g) + "U", "1 * eta", eta_text(g), true));
  for (int g = 1; g <= 3; ++g) m.modes.push_back(mode(std::to_string(g) + "D", "-1 * eta", eta_text(g), true));
  m.spec = RealExpr::parse("(omega >= 5 => eta >= 0.5) && (0 <= omega && omega <= 60)");

  const std::optional<RealInterval> any;
  const std::optional<RealInterval> speed = RealInterval{0, 60};
  auto tr = [&](std::string name, const char* from, const char* to) {
    Transition t;
    t.name = std::move(name);
    t.from = m.mode_index(from);
    t.to = m.mode_index(to);
    t.initial = {any, speed};
    return t;
  };
  m.transitions = {tr("g_N1U", "N", "1U"),  tr("g_12U", "1U", "2U"), tr("g_23U", "2U", "3U"),
                   tr("g_33D", "3U", "3D"), tr("g_32D", "3D", "2D"), tr("g_21D", "2D", "1D"),
                   tr("g_1ND", "1D", "N"),  tr("g_11U", "1D", "1U"), tr("g_22U", "2D", "2U"),
                   tr("g_33U", "3D", "3U"), tr("g_22D", "2U", "2D"), tr("g_11D", "1U", "1D")};
  Transition& stop = m.transitions[6];
  stop.initial = {RealInterval{kThetaMax, kThetaMax}, RealInterval{0, 0}};
  stop.fixed = true;
  m.initial_mode = 0;
  m.initial_state = {0, 0};
  m.probe_state = {0, 0};
  m.finalize();
  return m;
}

std::map<std::string, RealInterval> transmission_reference(bool dwell) {
  if (!dwell)
    return {{"g_N1U", {0, 16.70}},     {"g_11U", {0, 16.70}},     {"g_12U", {13.29, 26.70}},
            {"g_22U", {13.29, 26.70}}, {"g_23U", {23.29, 36.70}}, {"g_33U", {23.29, 36.70}},
            {"g_33D", {23.29, 36.70}}, {"g_32D", {13.29, 26.70}}, {"g_22D", {13.29, 26.70}},
            {"g_21D", {0, 16.70}},     {"g_11D", {0, 16.70}}};
  return {{"g_N1U", {0, 0}},         {"g_11U", {0, 0}},         {"g_12U", {13.29, 23.42}},
          {"g_11D", {1.31, 16.70}},  {"g_23U", {26.70, 33.42}}, {"g_22D", {26.70, 26.70}},
          {"g_33D", {36.70, 36.70}}, {"g_32D", {16.58, 26.70}}, {"g_33U", {23.29, 33.42}},
          {"g_21D", {1.31, 16.70}},  {"g_22U", {13.29, 23.42}}};
}

Policy transmission_policy(const Mds& mds) {
  struct Ids {
    std::size_t n, u[3], d[3];
    std::size_t n1u, up12, up23, d33, d32, d21, d1n, u11, u22, u33, d22, d11;
  };
  auto t = [&](const char* name) {
    for (std::size_t i = 0; i < mds.transitions.size(); ++i)
      if (mds.transitions[i].name == name) return i;
    throw std::invalid_argument(std::string("transmission policy: missing transition ") + name);
  };
  Ids id{};
  id.n = mds.mode_index("N");
  for (int g = 0; g < 3; ++g) {
    id.u[g] = mds.mode_index(std::to_string(g + 1) + "U");
    id.d[g] = mds.mode_index(std::to_string(g + 1) + "D");
  }
  id.n1u = t("g_N1U");
  id.up12 = t("g_12U");
  id.up23 = t("g_23U");
  id.d33 = t("g_33D");
  id.d32 = t("g_32D");
  id.d21 = t("g_21D");
  id.d1n = t("g_1ND");
  id.u11 = t("g_11U");
  id.u22 = t("g_22U");
  id.u33 = t("g_33U");
  id.d22 = t("g_22D");
  id.d11 = t("g_11D");
  const std::size_t theta = mds.var_index("theta"), omega = mds.var_index("omega");
  auto curve = std::make_shared<BrakingCurve>();

  return [=](const PolicyState& ps) -> std::optional<std::size_t> {
    const double d = kThetaMax - ps.state[theta];
    const double w = ps.state[omega];
    const double target = std::min(kCruise, curve->speed_for(d));
    const bool accelerate = w < target;
    const double h_guard = 0.0025;
    if (ps.mode == id.n) {
      if (std::fabs(d) > 0.005) return id.n1u;
      return std::nullopt;
    }
    if (ps.mode == id.d[0]) {
      if (std::fabs(d) < 0.005 && w < 0.005) return id.d1n;
      if (accelerate || w < h_guard) return id.u11;
      return std::nullopt;
    }
    if (ps.mode == id.u[0]) {
      if (!accelerate && w >= h_guard) return id.d11;
      if (accelerate && w >= kUpshift[0] && target > kUpshift[0]) return id.up12;
      return std::nullopt;
    }
    if (ps.mode == id.u[1]) {
      if (!accelerate) return id.d22;
      if (w >= kUpshift[1] && target > kUpshift[1]) return id.up23;
      return std::nullopt;
    }
    if (ps.mode == id.d[1]) {
      if (w < kUpshift[0]) return id.d21;
      if (accelerate) return id.u22;
      return std::nullopt;
    }
    if (ps.mode == id.u[2]) {
      if (!accelerate) return id.d33;
      return std::nullopt;
    }
    if (ps.mode == id.d[2]) {
      if (w < kUpshift[1]) return id.d32;
      if (accelerate) return id.u33;
      return std::nullopt;
    }
    return std::nullopt;
  };
}

Goal transmission_goal(const Mds& mds, double omega_tolerance, double theta_tolerance) {
  const std::size_t n = mds.mode_index("N");
  const std::size_t theta = mds.var_index("theta"), omega = mds.var_index("omega");
  return [=](std::size_t mode, std::span<const double> s, double time) {
    return time > 0 && mode == n && std::fabs(s[theta] - kThetaMax) <= theta_tolerance &&
           std::fabs(s[omega]) <= omega_tolerance;
  };
}

}  // namespace scid::hybrid

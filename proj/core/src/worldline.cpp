#include "pgrav/worldline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace pgrav {

namespace {

void check_sample(const WorldlineSample& s, double u_norm_tol) {
  const double nn = minkowski_dot(s.u, s.u);
  if (std::abs(nn + 1.0) > u_norm_tol)
    throw ValidationError("Worldline: |u.u + 1| = " + std::to_string(std::abs(nn + 1.0)) +
                          " exceeds tolerance at tau = " + std::to_string(s.tau));
  if (!(s.u[0] > 0.0))
    throw ValidationError("Worldline: u0 must be positive at tau = " + std::to_string(s.tau));
  if (!std::isfinite(s.tau) || !std::isfinite(s.y[0]))
    throw ValidationError("Worldline: non-finite sample");
}

void check_ordering(const WorldlineSample& prev, const WorldlineSample& next) {
  if (!(next.tau > prev.tau))
    throw ValidationError("Worldline: tau must be strictly increasing");
  if (!(next.y[0] > prev.y[0]))
    throw ValidationError("Worldline: coordinate time y0 must be strictly increasing");
}

// Cubic Hermite value and derivative on one segment, per component.
// s in [0,1], h = segment width.
FourVector hermite_value(const FourVector& p0, const FourVector& m0, const FourVector& p1,
                         const FourVector& m1, double s, double h) {
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * p0 + (h10 * h) * m0 + h01 * p1 + (h11 * h) * m1;
}

FourVector hermite_derivative(const FourVector& p0, const FourVector& m0, const FourVector& p1,
                              const FourVector& m1, double s, double h) {
  const double s2 = s * s;
  const double d00 = (6.0 * s2 - 6.0 * s) / h;
  const double d10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double d01 = (-6.0 * s2 + 6.0 * s) / h;
  const double d11 = 3.0 * s2 - 2.0 * s;
  return d00 * p0 + d10 * m0 + d01 * p1 + d11 * m1;
}

}  // namespace

Worldline Worldline::from_samples(std::vector<WorldlineSample> samples, double u_norm_tol) {
  if (samples.size() < 2)
    throw ValidationError("Worldline: need at least two samples");
  for (const auto& s : samples) check_sample(s, u_norm_tol);
  for (std::size_t i = 1; i < samples.size(); ++i)
    check_ordering(samples[i - 1], samples[i]);
  Worldline w;
  w.samples_ = std::move(samples);
  w.u_norm_tol_ = u_norm_tol;
  return w;
}

void Worldline::push_back(const WorldlineSample& s) {
  check_sample(s, u_norm_tol_);
  if (!samples_.empty()) check_ordering(samples_.back(), s);
  samples_.push_back(s);
}

double Worldline::tau_min() const {
  if (samples_.empty()) throw NotCoveredError("Worldline: empty");
  return samples_.front().tau;
}

double Worldline::tau_max() const {
  if (samples_.empty()) throw NotCoveredError("Worldline: empty");
  return samples_.back().tau;
}

std::size_t Worldline::segment(double tau) const {
  if (samples_.size() < 2) throw NotCoveredError("Worldline: need two samples to interpolate");
  const double lo = samples_.front().tau, hi = samples_.back().tau;
  const double slack = 1e-9 * (hi - lo);
  if (tau < lo - slack || tau > hi + slack)
    throw NotCoveredError("Worldline: tau = " + std::to_string(tau) +
                          " outside covered range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  auto it = std::upper_bound(samples_.begin(), samples_.end(), tau,
                             [](double t, const WorldlineSample& s) { return t < s.tau; });
  std::size_t i = static_cast<std::size_t>(it - samples_.begin());
  if (i == 0) return 0;
  if (i >= samples_.size()) return samples_.size() - 2;
  return i - 1;
}

FourVector Worldline::position(double tau) const {
  const std::size_t i = segment(tau);
  const auto& s0 = samples_[i];
  const auto& s1 = samples_[i + 1];
  const double h = s1.tau - s0.tau;
  const double s = (tau - s0.tau) / h;
  return hermite_value(s0.y, s0.u, s1.y, s1.u, s, h);
}

FourVector Worldline::velocity(double tau) const {
  const std::size_t i = segment(tau);
  const auto& s0 = samples_[i];
  const auto& s1 = samples_[i + 1];
  const double h = s1.tau - s0.tau;
  const double s = (tau - s0.tau) / h;
  return hermite_value(s0.u, s0.du, s1.u, s1.du, s, h);
}

FourVector Worldline::acceleration(double tau) const {
  const std::size_t i = segment(tau);
  const auto& s0 = samples_[i];
  const auto& s1 = samples_[i + 1];
  const double h = s1.tau - s0.tau;
  const double s = (tau - s0.tau) / h;
  return hermite_derivative(s0.u, s0.du, s1.u, s1.du, s, h);
}

WorldlineSample Worldline::state(double tau) const {
  return {tau, position(tau), velocity(tau), acceleration(tau)};
}

Worldline Worldline::at_rest(const Vec3& x, double tau0, double tau1, std::size_t n) {
  if (n < 2 || !(tau1 > tau0)) throw ValidationError("Worldline::at_rest: bad span");
  std::vector<WorldlineSample> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = tau0 + (tau1 - tau0) * static_cast<double>(i) / static_cast<double>(n - 1);
    s[i].tau = tau;
    s[i].y = four(tau, x);
    s[i].u = {1.0, 0.0, 0.0, 0.0};
    s[i].du = {0.0, 0.0, 0.0, 0.0};
  }
  return from_samples(std::move(s));
}

Worldline Worldline::uniform_velocity(const Vec3& x0, const Vec3& v, double tau0,
                                      double tau1, std::size_t n) {
  if (n < 2 || !(tau1 > tau0)) throw ValidationError("Worldline::uniform_velocity: bad span");
  const double v2 = dot(v, v);
  if (!(v2 < 1.0)) throw ValidationError("Worldline::uniform_velocity: |v| must be < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  std::vector<WorldlineSample> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = tau0 + (tau1 - tau0) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double t = gamma * tau;
    s[i].tau = tau;
    s[i].y = four(t, x0 + t * v);
    s[i].u = four(gamma, gamma * v);
    s[i].du = {0.0, 0.0, 0.0, 0.0};
  }
  return from_samples(std::move(s));
}

Worldline Worldline::circular(const Vec3& center, double rho, double omega,
                              double phase, double tau0, double tau1, std::size_t n) {
  if (n < 2 || !(tau1 > tau0)) throw ValidationError("Worldline::circular: bad span");
  if (!(rho > 0.0)) throw ValidationError("Worldline::circular: rho must be positive");
  const double speed = rho * std::abs(omega);
  if (!(speed < 1.0)) throw ValidationError("Worldline::circular: rho*|omega| must be < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - speed * speed);
  std::vector<WorldlineSample> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = tau0 + (tau1 - tau0) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double t = gamma * tau;
    const double ph = omega * t + phase;
    const double c = std::cos(ph), sn = std::sin(ph);
    const Vec3 pos = center + Vec3{rho * c, rho * sn, 0.0};
    const Vec3 vel{-rho * omega * sn, rho * omega * c, 0.0};
    const Vec3 acc{-rho * omega * omega * c, -rho * omega * omega * sn, 0.0};
    s[i].tau = tau;
    s[i].y = four(t, pos);
    // gamma is constant on a circular orbit, so du = gamma^2 (0, d^2x/dt^2).
    s[i].u = four(gamma, gamma * vel);
    s[i].du = four(0.0, (gamma * gamma) * acc);
  }
  return from_samples(std::move(s));
}

// ---------------------------------------------------------------------------
// CSV round trip.

namespace {

constexpr const char* kHeader = "tau,y0,y1,y2,y3,u0,u1,u2,u3";

// to_chars/from_chars keep the number format locale-independent.
std::string format_row(const double* vals, std::size_t n) {
  std::string row;
  char buf[40];
  for (std::size_t i = 0; i < n; ++i) {
    const auto res = std::to_chars(buf, buf + sizeof buf, vals[i],
                                   std::chars_format::general, 17);
    if (i) row += ',';
    row.append(buf, res.ptr);
  }
  return row;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              std::size_t line_no) {
  std::vector<double> vals;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t comma = line.find(',', start);
    const std::string cell =
        line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
      throw ParseError("worldline CSV line " + std::to_string(line_no) +
                       ": bad numeric cell '" + cell + "'");
    vals.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.size() != expected)
    throw ParseError("worldline CSV line " + std::to_string(line_no) + ": expected " +
                     std::to_string(expected) + " columns, got " + std::to_string(vals.size()));
  return vals;
}

// Non-uniform three-point first derivative of u(tau) at every sample.
std::vector<FourVector> rebuild_du(const std::vector<WorldlineSample>& s) {
  const std::size_t n = s.size();
  std::vector<FourVector> du(n);
  auto fd3 = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    const double ta = s[a].tau, tb = s[b].tau, tc = s[c].tau;
    // Derivative of the Lagrange interpolating quadratic through a, b, c.
    const double wa = (2.0 * at - tb - tc) / ((ta - tb) * (ta - tc));
    const double wb = (2.0 * at - ta - tc) / ((tb - ta) * (tb - tc));
    const double wc = (2.0 * at - ta - tb) / ((tc - ta) * (tc - tb));
    return wa * s[a].u + wb * s[b].u + wc * s[c].u;
  };
  if (n == 2) {
    const double h = s[1].tau - s[0].tau;
    const FourVector slope = (1.0 / h) * (s[1].u - s[0].u);
    du[0] = du[1] = slope;
    return du;
  }
  du[0] = fd3(0, 1, 2, s[0].tau);
  for (std::size_t i = 1; i + 1 < n; ++i) du[i] = fd3(i - 1, i, i + 1, s[i].tau);
  du[n - 1] = fd3(n - 3, n - 2, n - 1, s[n - 1].tau);
  return du;
}

}  // namespace

void save_worldline_csv(const Worldline& w, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& s : w.samples()) {
    const double vals[9] = {s.tau, s.y[0], s.y[1], s.y[2], s.y[3],
                            s.u[0], s.u[1], s.u[2], s.u[3]};
    out << format_row(vals, 9) << '\n';
  }
}

void save_worldline_csv(const Worldline& w, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  save_worldline_csv(w, out);
}

Worldline load_worldline_csv(std::istream& in, double u_norm_tol) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("worldline CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw ParseError("worldline CSV: expected header '" + std::string(kHeader) + "', got '" +
                     line + "'");
  std::vector<WorldlineSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto vals = parse_row(line, 9, line_no);
    WorldlineSample s;
    s.tau = vals[0];
    s.y = {vals[1], vals[2], vals[3], vals[4]};
    s.u = {vals[5], vals[6], vals[7], vals[8]};
    samples.push_back(s);
  }
  if (samples.size() < 2) throw ParseError("worldline CSV: need at least two data rows");
  const auto du = rebuild_du(samples);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i].du = du[i];
  return Worldline::from_samples(std::move(samples), u_norm_tol);
}

Worldline load_worldline_csv(const std::filesystem::path& path, double u_norm_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return load_worldline_csv(in, u_norm_tol);
}

}  // namespace pgrav

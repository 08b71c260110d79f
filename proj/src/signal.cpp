#include "moddenoise/signal.hpp"

#include <cmath>
#include <sstream>

#include "moddenoise/errors.hpp"
#include "moddenoise/io.hpp"

namespace moddenoise {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(const ComplexVector& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) {
      throw Error(ErrorKind::validation, std::string(what) + ": entry " + std::to_string(i + 1) +
                                             " is not finite");
    }
  }
}

}  // namespace

TorusSignal TorusSignal::on_torus(ComplexVector values, double tolerance) {
  require_finite(values, "torus signal");
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double dev = std::abs(std::abs(values(i)) - 1.0);
    if (dev > tolerance) {
      std::ostringstream msg;
      msg << "entry " << (i + 1) << " has modulus " << std::abs(values(i))
          << ", not on the unit circle (tolerance " << tolerance << ")";
      throw Error(ErrorKind::validation, msg.str());
    }
  }
  if (tolerance > kTorusTolerance) {
    for (Eigen::Index i = 0; i < values.size(); ++i) values(i) /= std::abs(values(i));
  }
  return TorusSignal(std::move(values), true);
}

TorusSignal TorusSignal::raw(ComplexVector values) {
  require_finite(values, "signal");
  return TorusSignal(std::move(values), false);
}

double TorusSignal::torus_deviation() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    worst = std::max(worst, std::abs(std::abs(values_(i)) - 1.0));
  }
  return worst;
}

FunctionSpec FunctionSpec::f1() { return {FunctionKind::f1, kF1Lipschitz, {}}; }
FunctionSpec FunctionSpec::f2() { return {FunctionKind::f2, kF2Lipschitz, {}}; }

FunctionSpec FunctionSpec::make_custom(std::function<double(double)> f, double lipschitz_M) {
  if (!(lipschitz_M > 0.0)) {
    throw Error(ErrorKind::parameter, "Lipschitz constant must be positive");
  }
  if (!f) throw Error(ErrorKind::parameter, "custom function is empty");
  return {FunctionKind::custom, lipschitz_M, std::move(f)};
}

double FunctionSpec::operator()(double x) const {
  switch (kind) {
    case FunctionKind::f1: {
      const double c = std::cos(kTwoPi * x);
      const double s = std::sin(kTwoPi * x);
      return 3.0 * x * c * c - s * s + 0.7;
    }
    case FunctionKind::f2:
      return std::sin(kTwoPi * x);
    case FunctionKind::custom:
      return custom(x);
  }
  return 0.0;
}

std::string_view to_string(FunctionKind kind) noexcept {
  switch (kind) {
    case FunctionKind::f1: return "f1";
    case FunctionKind::f2: return "f2";
    case FunctionKind::custom: return "custom";
  }
  return "custom";
}

FunctionSpec parse_function(std::string_view name) {
  if (name == "f1") return FunctionSpec::f1();
  if (name == "f2") return FunctionSpec::f2();
  throw Error(ErrorKind::validation, "unknown function '" + std::string(name) +
                                         "' (expected f1 or f2)");
}

Eigen::VectorXd uniform_grid(int n) {
  if (n < 2) {
    throw Error(ErrorKind::validation, "invalid grid size n=" + std::to_string(n));
  }
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = static_cast<double>(i) / (n - 1);
  return x;
}

Eigen::VectorXd sample_function(const FunctionSpec& f, const Eigen::VectorXd& grid) {
  return grid.unaryExpr([&f](double x) { return f(x); });
}

TorusSignal lift_to_torus(const Eigen::VectorXd& samples) {
  ComplexVector h(samples.size());
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    const double s = samples(i);
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::validation, "sample " + std::to_string(i + 1) + " is not finite");
    }
    const double frac = s - std::floor(s);
    h(i) = std::polar(1.0, kTwoPi * frac);
  }
  return TorusSignal::on_torus(std::move(h));
}

TorusSignal add_modulo_noise(const TorusSignal& h, double sigma, NormalStream& stream) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::parameter, "noise sigma must be >= 0");
  ComplexVector z = h.values();
  if (sigma == 0.0) return TorusSignal::on_torus(std::move(z));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double eta = sigma * stream.normal();
    z(i) *= std::polar(1.0, kTwoPi * eta);
  }
  return TorusSignal::on_torus(std::move(z));
}

TorusSignal add_modulo_noise(const TorusSignal& h, const NoiseModel& noise) {
  NormalStream stream(noise.seed);
  return add_modulo_noise(h, noise.sigma, stream);
}

double smoothness(const TorusSignal& h, const Graph& g) {
  if (h.size() != g.size()) {
    throw Error(ErrorKind::validation, "signal length " + std::to_string(h.size()) +
                                           " does not match graph size " +
                                           std::to_string(g.size()));
  }
  double total = 0.0;
  for (const auto& e : g.edges()) total += std::norm(h[e.u - 1] - h[e.v - 1]);
  return total;
}

double quadratic_variation_bound(const Eigen::VectorXd& f_samples) {
  if (f_samples.size() < 2) {
    throw Error(ErrorKind::validation, "quadratic variation needs at least 2 samples");
  }
  const Eigen::Index n = f_samples.size();
  const double sum = (f_samples.tail(n - 1) - f_samples.head(n - 1)).squaredNorm();
  return 4.0 * std::numbers::pi * std::numbers::pi * sum;
}

double mse(const TorusSignal& u, const TorusSignal& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::validation, "mse: length mismatch (" + std::to_string(u.size()) +
                                           " vs " + std::to_string(v.size()) + ")");
  }
  return squared_distance(u.values(), v.values());
}

std::string signal_csv(const TorusSignal& s) {
  std::ostringstream out;
  out << "i,re,im\n";
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out << (i + 1) << ',' << format_double(s[i].real()) << ',' << format_double(s[i].imag())
        << '\n';
  }
  return out.str();
}

TorusSignal parse_signal_csv(std::string_view text, bool require_torus, double tolerance) {
  const CsvTable table = parse_csv(text);
  const auto ci = table.column("i");
  const auto cre = table.column("re");
  const auto cim = table.column("im");
  ComplexVector values(static_cast<Eigen::Index>(table.rows.size()));
  std::vector<bool> filled(table.rows.size(), false);
  for (const auto& row : table.rows) {
    const long long i = parse_integer(row[ci]);
    if (i < 1 || i > static_cast<long long>(table.rows.size()) || filled[i - 1]) {
      throw Error(ErrorKind::validation, "signal CSV has a bad or repeated index " +
                                             std::to_string(i));
    }
    filled[i - 1] = true;
    values(i - 1) = {parse_double(row[cre]), parse_double(row[cim])};
  }
  return require_torus ? TorusSignal::on_torus(std::move(values), tolerance)
                       : TorusSignal::raw(std::move(values));
}

std::string samples_csv(const Eigen::VectorXd& grid, const Eigen::VectorXd& f_samples) {
  std::ostringstream out;
  out << "i,x,f\n";
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    out << (i + 1) << ',' << format_double(grid(i)) << ',' << format_double(f_samples(i)) << '\n';
  }
  return out.str();
}

}  // namespace moddenoise

#include "cylwig/states.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "cylwig/error.hpp"

namespace cylwig {

namespace {

constexpr int kMaxNf = 512;
constexpr double kAutoTail = 1e-12;

double parse_number(std::string_view key, std::string_view v) {
  std::string s(v);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(out))
    throw InvalidArgument("state spec: field '" + std::string(key) + "' is not a number: '" + s + "'");
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty())
    throw InvalidArgument("state spec: field '" + std::string(key) + "' is not an integer: '" + std::string(v) + "'");
  return out;
}

bool in_phase_range(double x) { return x >= -kPi && x < kPi; }

// |alpha|^n / sqrt(n!) for n = 0..nmax.
std::vector<double> coherent_weights(double a, int nmax) {
  std::vector<double> w(static_cast<std::size_t>(nmax + 1));
  w[0] = 1.0;
  for (int n = 1; n <= nmax; ++n) w[n] = w[n - 1] * a / std::sqrt(double(n));
  return w;
}

CVector coherent_amplitudes(double abs, double arg, int nmax) {
  CVector c(nmax + 1);
  const cplx alpha = std::polar(abs, arg);
  c(0) = std::exp(-0.5 * abs * abs);
  for (int n = 1; n <= nmax; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  return c;
}

// Scaled Hermite terms g_n = (u/2)^n H_n(y/u) / sqrt(n!) with u^2 = 2a.
CVector scaled_hermite(cplx y, cplx a, int nmax) {
  CVector g(nmax + 1);
  g(0) = 1.0;
  if (nmax >= 1) g(1) = y;
  for (int n = 1; n < nmax; ++n) g(n + 1) = (y * g(n) - std::sqrt(double(n)) * a * g(n - 1)) / std::sqrt(double(n + 1));
  return g;
}

// Sum of |c_n|^2 beyond nmax, continuing the generator until terms die out.
template <class Gen>
double tail_beyond(Gen&& gen, int nmax) {
  double tail = 0.0;
  int small = 0;
  for (int n = nmax + 1; n < 8 * kMaxNf && small < 32; ++n) {
    double t = gen(n);
    tail += t;
    small = t < 1e-34 ? small + 1 : 0;
  }
  return tail;
}

}  // namespace

StateSpec parse_state_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view fam = text.substr(0, colon);
  StateSpec s;
  if (fam == "fock") s.family = StateFamily::fock;
  else if (fam == "coherent") s.family = StateFamily::coherent;
  else if (fam == "squeezed") s.family = StateFamily::squeezed;
  else if (fam == "thermal") s.family = StateFamily::thermal;
  else if (fam == "cat") s.family = StateFamily::cat;
  else throw InvalidArgument("state spec: unknown family '" + std::string(fam) + "'");

  std::map<std::string, std::string, std::less<>> fields;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    for (bool more = true; more;) {
      const auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      more = comma != std::string_view::npos;
      if (more) rest = rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw InvalidArgument("state spec: expected key=value, got '" + std::string(item) + "'");
      std::string key(item.substr(0, eq));
      if (!fields.emplace(key, std::string(item.substr(eq + 1))).second)
        throw InvalidArgument("state spec: field '" + key + "' given twice");
    }
  }

  auto allowed = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : fields) {
      bool ok = k == "nf" || k == "tail";
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) throw InvalidArgument("state spec: field '" + k + "' does not apply to " + std::string(fam));
    }
  };
  auto num = [&](const char* k, double& dst, bool required) {
    auto it = fields.find(k);
    if (it == fields.end()) {
      if (required) throw InvalidArgument(std::string("state spec: missing field '") + k + "'");
      return;
    }
    dst = parse_number(k, it->second);
  };
  auto integer = [&](const char* k, int& dst, bool required) {
    auto it = fields.find(k);
    if (it == fields.end()) {
      if (required) throw InvalidArgument(std::string("state spec: missing field '") + k + "'");
      return;
    }
    dst = parse_int(k, it->second);
  };

  switch (s.family) {
    case StateFamily::fock:
      allowed({"N"});
      integer("N", s.N, true);
      break;
    case StateFamily::coherent:
      allowed({"abs", "arg"});
      num("abs", s.abs, true);
      num("arg", s.arg, false);
      break;
    case StateFamily::squeezed:
      allowed({"abs", "arg", "r", "theta"});
      num("abs", s.abs, false);
      num("arg", s.arg, false);
      num("r", s.r, true);
      num("theta", s.theta, false);
      break;
    case StateFamily::thermal:
      allowed({"bho"});
      num("bho", s.bho, true);
      break;
    case StateFamily::cat:
      allowed({"eta", "phi0", "N", "Nprime"});
      num("eta", s.eta, true);
      num("phi0", s.phi0, false);
      integer("N", s.N, true);
      integer("Nprime", s.Nprime, true);
      break;
  }
  integer("nf", s.n_f, false);
  num("tail", s.tail_allowance, false);
  validate(s);
  return s;
}

std::string to_string(const StateSpec& s) {
  std::ostringstream os;
  os.precision(17);
  switch (s.family) {
    case StateFamily::fock: os << "fock:N=" << s.N; break;
    case StateFamily::coherent: os << "coherent:abs=" << s.abs << ",arg=" << s.arg; break;
    case StateFamily::squeezed:
      os << "squeezed:abs=" << s.abs << ",arg=" << s.arg << ",r=" << s.r << ",theta=" << s.theta;
      break;
    case StateFamily::thermal: os << "thermal:bho=" << s.bho; break;
    case StateFamily::cat: os << "cat:eta=" << s.eta << ",phi0=" << s.phi0 << ",N=" << s.N << ",Nprime=" << s.Nprime; break;
  }
  if (s.n_f >= 0) os << ",nf=" << s.n_f;
  return os.str();
}

void validate(const StateSpec& s) {
  auto fail = [](const std::string& m) { throw InvalidArgument("state spec: " + m); };
  if (s.n_f < -1 || s.n_f > kMaxNf) fail("nf must lie in [0, " + std::to_string(kMaxNf) + "]");
  if (!(s.tail_allowance >= 0.0)) fail("tail allowance must be nonnegative");
  switch (s.family) {
    case StateFamily::fock:
      if (s.N < 0) fail("N must be nonnegative");
      if (s.n_f >= 0 && s.n_f < s.N) fail("nf must be at least N");
      break;
    case StateFamily::coherent:
      if (!(s.abs >= 0.0)) fail("abs must be nonnegative");
      if (!in_phase_range(s.arg)) fail("arg must lie in [-pi, pi)");
      break;
    case StateFamily::squeezed:
      if (!(s.abs >= 0.0)) fail("abs must be nonnegative");
      if (!in_phase_range(s.arg) || !in_phase_range(s.theta)) fail("arg and theta must lie in [-pi, pi)");
      if (!(s.r >= 0.0)) fail("r must be nonnegative");
      if (s.r > 15.0) fail("r > 15 cannot be represented: tanh r rounds to 1");
      break;
    case StateFamily::thermal:
      if (!(s.bho > 0.0) || !std::isfinite(s.bho)) fail("bho must be positive");
      break;
    case StateFamily::cat:
      if (s.N < 0 || s.Nprime < 0) fail("N and Nprime must be nonnegative");
      if (s.N == s.Nprime) fail("N and Nprime must differ");
      if (!std::isfinite(s.eta)) fail("eta must be finite");
      if (!in_phase_range(s.phi0)) fail("phi0 must lie in [-pi, pi)");
      if (s.n_f >= 0 && s.n_f < std::max(s.N, s.Nprime)) fail("nf must be at least max(N, Nprime)");
      break;
  }
}

cplx hermite(int n, cplx z) {
  if (n < 0) throw InvalidArgument("hermite: degree must be nonnegative");
  if (n > kMaxNf) throw InvalidArgument("hermite: degree " + std::to_string(n) + " exceeds 512");
  cplx h0 = 1.0;
  if (n == 0) return h0;
  cplx h1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    cplx h2 = 2.0 * z * h1 - 2.0 * double(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

CVector squeezed_amplitudes(double abs, double arg, double r, double theta, int n_max) {
  const cplx alpha = std::polar(abs, arg);
  const cplx a = std::polar(std::tanh(r), theta);
  const cplx y = alpha + std::conj(alpha) * a;
  const cplx pre = std::exp(-0.5 * (abs * abs + std::conj(alpha) * std::conj(alpha) * a)) / std::sqrt(std::cosh(r));
  return pre * scaled_hermite(y, a, n_max);
}

State build_state(const StateSpec& spec) {
  validate(spec);
  State st{spec, 0, 0.0, std::nullopt, FockDensity(CMatrix::Identity(1, 1))};

  auto choose_nf = [&](auto&& term_abs2, double total) {
    if (spec.n_f >= 0) return spec.n_f;
    double acc = 0.0;
    for (int n = 0; n <= kMaxNf; ++n) {
      acc += term_abs2(n);
      if (total - acc <= kAutoTail) return n;
    }
    return kMaxNf;
  };

  switch (spec.family) {
    case StateFamily::fock: {
      st.n_f = spec.n_f >= 0 ? spec.n_f : spec.N;
      FockVector v{CVector::Zero(st.n_f + 1), 0.0};
      v.amps(spec.N) = 1.0;
      st.vector = v;
      break;
    }
    case StateFamily::cat: {
      st.n_f = spec.n_f >= 0 ? spec.n_f : std::max(spec.N, spec.Nprime);
      FockVector v{CVector::Zero(st.n_f + 1), 0.0};
      v.amps(spec.N) = std::cos(spec.eta);
      v.amps(spec.Nprime) = std::polar(std::sin(spec.eta), spec.phi0);
      st.vector = v;
      break;
    }
    case StateFamily::coherent: {
      const double a2 = spec.abs * spec.abs;
      // Poisson weights, extended on demand.
      std::vector<double> pw;
      auto pterm = [&](int n) {
        while (static_cast<int>(pw.size()) <= n) pw.push_back(pw.empty() ? std::exp(-a2) : pw.back() * a2 / double(pw.size()));
        return pw[n];
      };
      st.n_f = choose_nf(pterm, 1.0);
      st.vector = FockVector{coherent_amplitudes(spec.abs, spec.arg, st.n_f), 0.0};
      st.tail_mass = tail_beyond(pterm, st.n_f);
      break;
    }
    case StateFamily::squeezed: {
      const CVector big = squeezed_amplitudes(spec.abs, spec.arg, spec.r, spec.theta, 8 * kMaxNf);
      auto term = [&](int n) { return std::norm(big(n)); };
      st.n_f = choose_nf(term, 1.0);
      st.vector = FockVector{big.head(st.n_f + 1), 0.0};
      st.tail_mass = tail_beyond(term, st.n_f);
      break;
    }
    case StateFamily::thermal: {
      const double x = spec.bho;
      st.n_f = spec.n_f >= 0 ? spec.n_f : std::min(kMaxNf, static_cast<int>(std::ceil(-std::log(kAutoTail) / x)) - 1);
      st.n_f = std::max(st.n_f, 0);
      st.tail_mass = std::exp(-(st.n_f + 1) * x);
      break;
    }
  }

  if (st.tail_mass > std::max(spec.tail_allowance, 0.0)) {
    std::ostringstream os;
    os << "state " << to_string(spec) << " loses tail mass " << st.tail_mass << " at N_F = " << st.n_f
       << ", above the allowance " << spec.tail_allowance;
    throw InvalidArgument(os.str());
  }

  if (spec.family == StateFamily::thermal) {
    const double x = spec.bho;
    RVector d(st.n_f + 1);
    for (int n = 0; n <= st.n_f; ++n) d(n) = std::exp(-n * x);
    d /= d.sum();
    st.density = FockDensity(d.cast<cplx>().asDiagonal().toDenseMatrix());
    st.density.tail_mass = st.tail_mass;
  } else {
    st.vector->tail_mass = st.tail_mass;
    st.density = FockDensity::from_pure(*st.vector, 1e-10);
  }
  return st;
}

double exact_number_phase_wigner(const StateSpec& spec, double phi, int n, SqueezedForm form) {
  validate(spec);
  // Series length: the explicit truncation, or the automatic one.
  const int nf = spec.n_f >= 0 ? spec.n_f : build_state(spec).n_f;
  if (n < 0 || n > nf) throw InvalidArgument("exact_number_phase_wigner: n outside [0, N_F]");
  switch (spec.family) {
    case StateFamily::fock:
      return n == spec.N ? 1.0 / kTwoPi : 0.0;
    case StateFamily::thermal: {
      const double x = spec.bho;
      return (1.0 - std::exp(-x)) * std::exp(-n * x) / kTwoPi;
    }
    case StateFamily::cat: {
      const double c2 = std::cos(spec.eta) * std::cos(spec.eta), s2 = std::sin(spec.eta) * std::sin(spec.eta);
      double w = (n == spec.N ? c2 : 0.0) + (n == spec.Nprime ? s2 : 0.0);
      if (n == spec.N || n == spec.Nprime)
        w += 0.5 * std::sin(2.0 * spec.eta) * std::cos((spec.N - spec.Nprime) * phi + spec.phi0);
      return w / kTwoPi;
    }
    case StateFamily::coherent: {
      const double a = spec.abs, d = phi - spec.arg;
      const std::vector<double> wk = coherent_weights(a, nf);
      double sc = 0.0, ss = 0.0;
      for (int k = 0; k <= nf; ++k) {
        sc += wk[k] * std::cos(k * d);
        ss += wk[k] * std::sin(k * d);
      }
      return wk[n] * std::exp(-a * a) / kTwoPi * (std::cos(n * d) * sc + std::sin(n * d) * ss);
    }
    case StateFamily::squeezed: {
      const double t = std::tanh(spec.r), ch = std::cosh(spec.r);
      if (spec.abs == 0.0) {
        if (n % 2 != 0) return 0.0;
        // sqrt((2m)!)/m! (-t/2)^m by recurrence in m.
        const int half = n / 2, lmax = nf / 2;
        std::vector<double> b(static_cast<std::size_t>(lmax + 1));
        b[0] = 1.0;
        for (int m = 1; m <= lmax; ++m)
          b[m] = b[m - 1] * (-t / 2.0) * std::sqrt(double(2 * m) * double(2 * m - 1)) / m;
        double s = 0.0;
        for (int l = 0; l <= lmax; ++l) s += b[l] * std::cos((half - l) * (2.0 * phi - spec.theta));
        return b[half] * s / (kTwoPi * ch);
      }
      const cplx alpha = std::polar(spec.abs, spec.arg);
      const cplx a = std::polar(t, spec.theta);
      const cplx y_n = alpha + std::conj(alpha) * a;
      const cplx y_k = form == SqueezedForm::corrected ? y_n : alpha + std::conj(alpha) * std::polar(t, -spec.theta);
      const CVector gn = scaled_hermite(y_n, a, nf);
      const CVector gk = form == SqueezedForm::corrected ? gn : scaled_hermite(y_k, a, nf);
      const double env = std::exp(-spec.abs * spec.abs * (1.0 + std::cos(2.0 * spec.arg - spec.theta) * t));
      cplx s{};
      for (int k = 0; k <= nf; ++k) s += std::polar(1.0, (n - k) * phi) * gk(k);
      return (env * std::conj(gn(n)) * s).real() / (kTwoPi * ch);
    }
  }
  return 0.0;
}

namespace {

NumberPhaseWigner pipeline(const StateSpec& s, const AngleGrid& grid) {
  return number_phase_wigner(build_state(s).density, grid);
}

}  // namespace

Table figure_data(const std::string& which, int grid_points) {
  Table t;
  t.add_meta("figure", which);
  t.add_meta("kernel", "symmetric");
  const AngleGrid grid(grid_points);
  if (which == "max") {
    // Peak W(0, n) against |alpha|, phi = 0 (arg alpha = 0).
    t.columns = {"abs", "n", "W"};
    t.add_meta("phi", "0");
    const int ns[] = {0, 1, 2, 5, 10, 20, 30, 40};
    const AngleGrid g4(4);  // point 2 is phi = 0
    for (int i = 0; i <= 120; ++i) {
      StateSpec s;
      s.family = StateFamily::coherent;
      s.abs = 0.05 * i;
      s.n_f = 100;
      s.tail_allowance = 1e-12;
      const NumberPhaseWigner w = pipeline(s, g4);
      for (int n : ns) t.add_row({s.abs, double(n), w.at(2, n)});
    }
    t.add_meta("nf", "100");
    return t;
  }
  if (which == "coh") {
    t.columns = {"panel", "abs", "n", "phi", "W"};
    struct Panel { int id; double abs; std::vector<int> ns; };
    const Panel panels[] = {{0, 0.1, {0, 1}}, {1, 1.0, {0, 1, 2}}, {2, 5.0, {0, 1, 2}},
                            {3, 5.0, {15, 20, 25}}, {4, 1.0, {15, 20, 25}}};
    for (const Panel& p : panels) {
      StateSpec s;
      s.family = StateFamily::coherent;
      s.abs = p.abs;
      const NumberPhaseWigner w = pipeline(s, grid);
      for (int j = 0; j < grid.size(); ++j)
        for (int n : p.ns) t.add_row({double(p.id), p.abs, double(n), grid.point(j), w.at(j, n)});
    }
    return t;
  }
  if (which == "squeezed") {
    t.columns = {"panel", "r", "n", "phi", "W"};
    struct Panel { int id; double r; std::vector<int> ns; };
    const Panel panels[] = {{0, 1.0, {2}}, {0, 0.8, {2}}, {0, 0.6, {2}}, {1, 1.0, {0, 2, 4}}};
    for (const Panel& p : panels) {
      StateSpec s;
      s.family = StateFamily::squeezed;
      s.r = p.r;
      const NumberPhaseWigner w = pipeline(s, grid);
      for (int j = 0; j < grid.size(); ++j)
        for (int n : p.ns) t.add_row({double(p.id), p.r, double(n), grid.point(j), w.at(j, n)});
    }
    return t;
  }
  if (which == "cat") {
    t.columns = {"n", "phi", "W"};
    StateSpec s;
    s.family = StateFamily::cat;
    s.eta = kPi / 10.0;
    s.N = 0;
    s.Nprime = 7;
    t.add_meta("state", to_string(s));
    const NumberPhaseWigner w = pipeline(s, grid);
    for (int j = 0; j < grid.size(); ++j)
      for (int n = 0; n <= 7; ++n) t.add_row({double(n), grid.point(j), w.at(j, n)});
    return t;
  }
  throw InvalidArgument("figures: unknown figure '" + which + "' (expected max, coh, squeezed or cat)");
}

}  // namespace cylwig

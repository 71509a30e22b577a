#include "cylwig/kernels.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

#include "cylwig/error.hpp"

namespace cylwig {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "true";
    case Verdict::fails: return "false";
    default: return "unknown";
  }
}

const char* to_string(KernelCondition c) {
  switch (c) {
    case KernelCondition::cond_theta: return "cond_theta";
    case KernelCondition::cond_L: return "cond_L";
    case KernelCondition::cond_sym: return "cond_sym";
    case KernelCondition::nonvanishing: return "nonvanishing";
    default: return "admissible";
  }
}

Verdict KernelFlags::get(KernelCondition c) const {
  switch (c) {
    case KernelCondition::cond_theta: return cond_theta;
    case KernelCondition::cond_L: return cond_L;
    case KernelCondition::cond_sym: return cond_sym;
    case KernelCondition::nonvanishing: return nonvanishing;
    default: return admissible;
  }
}

void KernelFlags::set(KernelCondition c, Verdict v) {
  switch (c) {
    case KernelCondition::cond_theta: cond_theta = v; break;
    case KernelCondition::cond_L: cond_L = v; break;
    case KernelCondition::cond_sym: cond_sym = v; break;
    case KernelCondition::nonvanishing: nonvanishing = v; break;
    default: admissible = v; break;
  }
}

struct Kernel::State {
  std::string name;
  KernelId id = KernelId::custom;
  EvalFn eval;
  MomentFn moment;
  std::array<std::atomic<signed char>, kKernelConditionCount> flags{};
};

Kernel::Kernel(std::shared_ptr<State> s) : s_(std::move(s)) {}

Kernel::Kernel(std::string name, EvalFn eval, MomentFn half_moment, KernelFlags known)
    : s_(std::make_shared<State>()) {
  if (!eval) throw InvalidArgument("kernel '" + name + "' needs an eval function");
  s_->name = std::move(name);
  s_->eval = std::move(eval);
  s_->moment = std::move(half_moment);
  for (int c = 0; c < kKernelConditionCount; ++c)
    s_->flags[c].store(static_cast<signed char>(known.get(static_cast<KernelCondition>(c))));
}

const std::string& Kernel::name() const { return s_->name; }
KernelId Kernel::id() const { return s_->id; }
cplx Kernel::eval(double sigma, int l) const { return s_->eval(sigma, l); }
bool Kernel::has_half_moment() const { return static_cast<bool>(s_->moment); }

cplx Kernel::moment(int l, HalfInt mu, const Config& cfg) const {
  if (s_->moment) return s_->moment(l, mu);
  return moment_by_quadrature(l, mu, cfg.quad_nodes);
}

cplx Kernel::moment_by_quadrature(int l, HalfInt mu, int nodes) const {
  const GaussRule& g = gauss_legendre(nodes);
  cplx s{};
  const double m = mu.value();
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    double sigma = kPi * g.x[i];
    s += g.w[i] * s_->eval(sigma, l) * std::polar(1.0, sigma * m);
  }
  return kPi * s;
}

KernelFlags Kernel::flags() const {
  KernelFlags f;
  for (int c = 0; c < kKernelConditionCount; ++c)
    f.set(static_cast<KernelCondition>(c), static_cast<Verdict>(s_->flags[c].load()));
  return f;
}

Verdict Kernel::flag(KernelCondition c) const {
  return static_cast<Verdict>(s_->flags[static_cast<int>(c)].load());
}

void Kernel::record(KernelCondition c, Verdict v) const {
  if (v == Verdict::unknown) return;
  signed char expected = static_cast<signed char>(Verdict::unknown);
  auto& slot = s_->flags[static_cast<int>(c)];
  if (slot.compare_exchange_strong(expected, static_cast<signed char>(v))) return;
  if (expected != static_cast<signed char>(v))
    throw InvariantViolation("kernel '" + s_->name + "': " + to_string(c) + " was recorded as " +
                             to_string(static_cast<Verdict>(expected)) + " but the check gives " + to_string(v));
}

cplx weyl_moment(HalfInt mu) {
  if (mu.twice == 0) return kTwoPi;
  if (mu.is_integer()) return 0.0;
  // sin(pi * twice / 2) for odd twice is +1 when (twice - 1)/2 is even.
  const int q = (mu.twice - 1) / 2;
  double s = (q % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * s / mu.value();
}

Kernel kernel_weyl() {
  auto s = std::make_shared<Kernel::State>();
  s->name = "weyl";
  s->id = KernelId::weyl;
  s->eval = [](double, int) { return cplx{1.0, 0.0}; };
  s->moment = [](int, HalfInt mu) { return weyl_moment(mu); };
  KernelFlags f{Verdict::holds, Verdict::holds, Verdict::holds, Verdict::holds, Verdict::fails};
  for (int c = 0; c < kKernelConditionCount; ++c)
    s->flags[c].store(static_cast<signed char>(f.get(static_cast<KernelCondition>(c))));
  return Kernel(std::move(s));
}

Kernel kernel_symmetric() {
  auto s = std::make_shared<Kernel::State>();
  s->name = "symmetric";
  s->id = KernelId::symmetric;
  s->eval = [](double sigma, int l) { return cplx{std::cos(0.5 * sigma * l), 0.0}; };
  s->moment = [](int l, HalfInt mu) {
    return 0.5 * (weyl_moment({mu.twice + l}) + weyl_moment({mu.twice - l}));
  };
  KernelFlags f{Verdict::holds, Verdict::holds, Verdict::holds, Verdict::fails, Verdict::holds};
  for (int c = 0; c < kKernelConditionCount; ++c)
    s->flags[c].store(static_cast<signed char>(f.get(static_cast<KernelCondition>(c))));
  return Kernel(std::move(s));
}

Kernel kernel_by_name(const std::string& name) {
  if (name == "weyl") return kernel_weyl();
  if (name == "symmetric") return kernel_symmetric();
  throw InvalidArgument("unknown kernel '" + name + "' (expected weyl or symmetric)");
}

const GaussRule& gauss_legendre(int nodes) {
  if (nodes < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[nodes];
  if (!slot) {
    auto rule = std::make_unique<GaussRule>();
    std::vector<double> pos = boost::math::legendre_p_zeros<double>(nodes);
    auto weight = [nodes](double x) {
      double d = boost::math::legendre_p_prime(nodes, x);
      return 2.0 / ((1.0 - x * x) * d * d);
    };
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
      if (*it == 0.0) continue;
      rule->x.push_back(-*it);
      rule->w.push_back(weight(*it));
    }
    for (double x : pos) {
      rule->x.push_back(x);
      rule->w.push_back(weight(x));
    }
    slot = std::move(rule);
  }
  return *slot;
}

MomentTable::MomentTable(const Kernel& k, int l_max, int twice_max, const Config& cfg)
    : l_max_(l_max), twice_max_(twice_max), stride_(2 * twice_max + 1) {
  if (l_max < 0 || twice_max < 0) throw InvalidArgument("moment table bounds must be nonnegative");
  data_.resize(static_cast<std::size_t>((2 * l_max + 1) * stride_));
  for (int l = -l_max; l <= l_max; ++l)
    for (int t = -twice_max; t <= twice_max; ++t)
      data_[static_cast<std::size_t>((l + l_max) * stride_ + (t + twice_max))] = k.moment(l, {t}, cfg);
}

namespace {

void update_max(ConditionVerdict& v, double dev, double sigma, int l) {
  if (dev > v.worst) {
    v.worst = dev;
    v.sigma = sigma;
    v.l = l;
  }
}

}  // namespace

KernelReport check_kernel_conditions(const Kernel& k, int l_range, int sigma_probes, const Config& cfg) {
  if (l_range < 1) throw InvalidArgument("check_kernel_conditions: l_range must be >= 1");
  if (sigma_probes < 1) throw InvalidArgument("check_kernel_conditions: need at least one sigma probe");
  KernelReport r;
  r.kernel = k.name();
  r.l_range = l_range;
  r.sigma_probes = sigma_probes;
  r.tol = cfg.tol;

  for (int l = -l_range; l <= l_range; ++l) update_max(r.cond_theta, std::abs(k.eval(0.0, l) - 1.0), 0.0, l);

  double min_abs = INFINITY;
  bool have_witness = false;
  for (int j = 0; j < sigma_probes; ++j) {
    const double sigma = -kPi + kTwoPi * j / sigma_probes;
    update_max(r.cond_L, std::abs(k.eval(sigma, 0) - 1.0), sigma, 0);
    for (int l = -l_range; l <= l_range; ++l) {
      cplx v = k.eval(sigma, l);
      update_max(r.cond_sym, std::abs(std::conj(v) - k.eval(-sigma, -l)), sigma, l);
      double a = std::abs(v);
      min_abs = std::min(min_abs, a);
      // Witness: smallest |l| (positive first), then the first sigma.
      if (a < cfg.tol) {
        const ConditionVerdict& w = r.nonvanishing;
        bool better = !have_witness || std::abs(l) < std::abs(w.l) || (std::abs(l) == std::abs(w.l) && l > w.l);
        if (better) {
          r.nonvanishing.sigma = sigma;
          r.nonvanishing.l = l;
          have_witness = true;
        }
      }
    }
  }
  r.nonvanishing.worst = min_abs;
  r.nonvanishing.holds = !(min_abs < cfg.tol);
  r.cond_theta.holds = r.cond_theta.worst <= cfg.tol;
  r.cond_L.holds = r.cond_L.worst <= cfg.tol;
  r.cond_sym.holds = r.cond_sym.worst <= cfg.tol;

  auto verdict = [](bool h) { return h ? Verdict::holds : Verdict::fails; };
  k.record(KernelCondition::cond_theta, verdict(r.cond_theta.holds));
  k.record(KernelCondition::cond_L, verdict(r.cond_L.holds));
  k.record(KernelCondition::cond_sym, verdict(r.cond_sym.holds));
  k.record(KernelCondition::nonvanishing, verdict(r.nonvanishing.holds));
  return r;
}

AdmissibilityReport check_admissibility(const Kernel& k, int j_max, int n_depth, const Config& cfg) {
  if (j_max < 0 || n_depth < 1) throw InvalidArgument("check_admissibility: need j_max >= 0 and n_depth >= 1");
  AdmissibilityReport r;
  for (int j = 0; j <= j_max; ++j)
    for (int kk = 0; kk <= j_max; ++kk)
      for (int n = -n_depth; n < 0; ++n) {
        double v = std::abs(k.moment(j - kk, HalfInt::center(j, kk, n), cfg));
        if (v > r.worst) {
          r.worst = v;
          r.j = j;
          r.k = kk;
          r.n = n;
        }
      }
  r.admissible = r.worst <= cfg.tol;
  if (!r.admissible) k.record(KernelCondition::admissible, Verdict::fails);
  return r;
}

}  // namespace cylwig

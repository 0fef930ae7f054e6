#include "lfz/zeros.hpp"

#include "lfz/asymptotics.hpp"
#include "lfz/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace lfz {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2 * pi;

// Runs fn(0..n-1) on up to `jobs` threads. Results go wherever fn puts them, by index;
// the first exception by index is rethrown.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errs(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  for (std::size_t i = 0; i < w; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

// Split fractions tried in order when a cut runs into a zero.
constexpr double kCuts[] = {0.5, 0.5137, 0.4809, 0.5311, 0.4563, 0.5729};

Rectangle shifted(Rectangle r, double dt) {
  r.t_min += dt;
  r.t_max += dt;
  return r;
}

}  // namespace

void Rectangle::validate() const {
  if (!(sigma_min < sigma_max) || !(t_min < t_max)) throw ContractError("rectangle needs min < max on both axes");
  if (!std::isfinite(sigma_min) || !std::isfinite(sigma_max) || !std::isfinite(t_min) || !std::isfinite(t_max))
    throw ContractError("rectangle corners must be finite");
}

std::string method_name(ZeroMethod m) { return m == ZeroMethod::newton ? "newton" : "subdivision"; }

std::string format_zero_list(const std::vector<ZeroRecord>& zeros) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& z : zeros)
    os << z.m << ' ' << z.location.real() << ' ' << z.location.imag() << ' ' << z.residual << ' '
       << method_name(z.method) << '\n';
  return os.str();
}

ZeroFinder::ZeroFinder(const LFunctionEvaluator& ev, ZeroOptions opt) : ev_(ev), opt_(opt) {}

cplx ZeroFinder::F(cplx s, int m, double* err) const {
  const auto r = ev_.normalized_F_result(s, m);
  if (err) *err = r.error_estimate;
  return r.value;
}

// ---------------------------------------------------------------------------
// phase tracing

namespace {

struct TraceNode {
  double u;    // position along the segment, 0..1
  double arg;  // continuous argument
};

}  // namespace

// Continuous arg F along a -> b. Each accepted step has both halves under the phase
// threshold and a bounded change in log|F|.
static std::vector<TraceNode> trace_nodes(const std::function<cplx(cplx, double*)>& f, cplx a, cplx b,
                                          double initial_step, double min_segment, double threshold,
                                          std::size_t& evals) {
  const double len = std::abs(b - a);
  const int n = std::max(1, static_cast<int>(std::ceil(len / initial_step)));
  const auto at = [&](double u) { return a + (b - a) * u; };
  const auto value = [&](double u) {
    double err = 0.0;
    const cplx v = f(at(u), &err);
    ++evals;
    if (!(std::abs(v) > 8 * err) || !std::isfinite(std::abs(v)))
      throw BoundaryZeroError("phase trace: |F| indistinguishable from 0 on the contour");
    return v;
  };
  std::vector<TraceNode> out;
  cplx fa = value(0.0);
  double arg = std::arg(fa);
  out.push_back({0.0, arg});

  struct Seg {
    double u0, u1;
    cplx f0, f1;
  };
  for (int i = 0; i < n; ++i) {
    const double u0 = static_cast<double>(i) / n;
    const double u1 = static_cast<double>(i + 1) / n;
    const cplx fb = value(u1);
    // depth-first, left half first, so nodes come out in order
    std::vector<Seg> stack{{u0, u1, fa, fb}};
    while (!stack.empty()) {
      Seg s = stack.back();
      stack.pop_back();
      if ((s.u1 - s.u0) * len < min_segment * std::max(1.0, std::abs(at(s.u0))))
        throw BoundaryZeroError("phase trace: refinement collapsed, zero on or at the contour");
      const double um = 0.5 * (s.u0 + s.u1);
      const cplx fm = value(um);
      const double d1 = std::arg(fm / s.f0);
      const double d2 = std::arg(s.f1 / fm);
      const double r1 = std::abs(std::log(std::abs(fm / s.f0)));
      const double r2 = std::abs(std::log(std::abs(s.f1 / fm)));
      if (std::abs(d1) <= threshold && std::abs(d2) <= threshold && r1 <= 1.5 && r2 <= 1.5) {
        arg += d1;
        out.push_back({um, arg});
        arg += d2;
        out.push_back({s.u1, arg});
      } else {
        stack.push_back({um, s.u1, fm, s.f1});
        stack.push_back({s.u0, um, s.f0, fm});
      }
    }
    fa = fb;
  }
  return out;
}

double ZeroFinder::trace_phase(cplx a, cplx b, int m, std::size_t* evaluations, double refine) const {
  std::size_t evals = 0;
  const auto f = [&](cplx s, double* err) { return F(s, m, err); };
  const auto nodes =
      trace_nodes(f, a, b, opt_.initial_step * refine, opt_.min_segment, (pi / 4) * refine, evals);
  if (evaluations) *evaluations += evals;
  return nodes.back().arg - nodes.front().arg;
}

WindingResult ZeroFinder::winding(const Rectangle& rect, int m) const {
  rect.validate();
  for (int attempt = 0; attempt <= 3; ++attempt) {
    const double dt = 1e-3 * attempt;
    const Rectangle r = shifted(rect, dt);
    const cplx c00(r.sigma_min, r.t_min), c10(r.sigma_max, r.t_min), c11(r.sigma_max, r.t_max),
        c01(r.sigma_min, r.t_max);
    try {
      WindingResult best;
      for (double refine : {1.0, 0.5, 0.25}) {
        const cplx corners[5] = {c00, c10, c11, c01, c00};
        double phase[4] = {};
        std::size_t ev[4] = {};
        parallel_for(4, opt_.jobs, [&](std::size_t i) {
          phase[i] = trace_phase(corners[i], corners[i + 1], m, &ev[i], refine);
        });
        WindingResult w;
        w.total_phase = phase[0] + phase[1] + phase[2] + phase[3];
        const double q = w.total_phase / two_pi;
        w.count = static_cast<int>(std::lround(q));
        w.rounding_gap = std::abs(q - w.count);
        w.t_shift = dt;
        w.evaluations = ev[0] + ev[1] + ev[2] + ev[3];
        if (w.rounding_gap <= 0.01) return w;
        best = w;
      }
      throw Error("winding: total phase / 2 pi = " + std::to_string(best.total_phase / two_pi) +
                  " not within 0.01 of an integer after refinement");
    } catch (const BoundaryZeroError&) {
      continue;
    }
  }
  throw BoundaryZeroError("winding: boundary zero persists after three upward shifts of 1e-3");
}

// ---------------------------------------------------------------------------
// isolation

namespace {

struct Cell {
  Rectangle r;
  int count;
};

}  // namespace

std::vector<ZeroRecord> ZeroFinder::isolate_zeros(const Rectangle& rect_in, int m) const {
  const WindingResult top = winding(rect_in, m);
  const Rectangle rect = shifted(rect_in, top.t_shift);

  // exact count on a cell, no perturbation (internal cuts move instead)
  const auto count = [&](const Rectangle& r) -> std::optional<int> {
    const cplx c00(r.sigma_min, r.t_min), c10(r.sigma_max, r.t_min), c11(r.sigma_max, r.t_max),
        c01(r.sigma_min, r.t_max);
    try {
      for (double refine : {1.0, 0.5, 0.25}) {
        const double total = trace_phase(c00, c10, m, nullptr, refine) + trace_phase(c10, c11, m, nullptr, refine) +
                             trace_phase(c11, c01, m, nullptr, refine) + trace_phase(c01, c00, m, nullptr, refine);
        const double q = total / two_pi;
        if (std::abs(q - std::lround(q)) <= 0.01) return static_cast<int>(std::lround(q));
      }
    } catch (const BoundaryZeroError&) {
    }
    return std::nullopt;
  };

  const auto newton = [&](const Rectangle& r) -> std::optional<ZeroRecord> {
    cplx z = r.center();
    for (int it = 0; it < 50; ++it) {
      const auto jet = ev_.eval_jet(z, m + 1);
      const cplx d = jet[m + 1].value;
      if (d == 0.0) return std::nullopt;
      const cplx step = jet[m].value / d;
      z -= step;
      if (!r.contains(z)) return std::nullopt;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) break;
      if (it == 49) return std::nullopt;
    }
    const auto res = ev_.eval(z, m);
    const double resid = std::abs(res.value);
    if (resid > std::max(opt_.residual_tolerance, 16 * res.error_estimate)) return std::nullopt;
    ZeroRecord rec;
    rec.location = z;
    rec.m = m;
    rec.residual = resid;
    rec.isolation_radius = std::min({z.real() - r.sigma_min, r.sigma_max - z.real(), z.imag() - r.t_min,
                                     r.t_max - z.imag()});
    rec.method = ZeroMethod::newton;
    return rec;
  };

  std::vector<ZeroRecord> found;
  std::vector<Cell> generation{{rect, top.count}};
  while (!generation.empty()) {
    std::vector<std::vector<Cell>> children(generation.size());
    std::vector<std::vector<ZeroRecord>> records(generation.size());
    parallel_for(generation.size(), opt_.jobs, [&](std::size_t gi) {
      const Cell cell = generation[gi];
      if (cell.count <= 0) return;
      const Rectangle& r = cell.r;
      const double diam = std::hypot(r.width(), r.height());
      if (cell.count == 1 && std::max(r.width(), r.height()) <= opt_.newton_cell) {
        if (auto rec = newton(r)) {
          records[gi].push_back(*rec);
          return;
        }
      }
      if (diam < (cell.count == 1 ? 1e-10 : 1e-7)) {
        // Newton gave up (or several zeros coalesce): the cell itself is the answer
        ZeroRecord rec;
        rec.location = r.center();
        rec.m = m;
        rec.residual = std::abs(ev_.eval(rec.location, m).value);
        rec.isolation_radius = 0.5 * std::min(r.width(), r.height());
        rec.method = ZeroMethod::subdivision;
        rec.multiplicity = cell.count;
        rec.flagged = true;
        records[gi].push_back(rec);
        return;
      }
      const bool cut_sigma = r.width() > r.height();
      for (double f : kCuts) {
        Rectangle a = r, b = r;
        if (cut_sigma) {
          const double x = r.sigma_min + f * r.width();
          a.sigma_max = x;
          b.sigma_min = x;
        } else {
          const double y = r.t_min + f * r.height();
          a.t_max = y;
          b.t_min = y;
        }
        const auto ca = count(a);
        if (!ca) continue;
        const auto cb = count(b);
        if (!cb || *ca + *cb != cell.count) continue;
        children[gi] = {{a, *ca}, {b, *cb}};
        return;
      }
      throw Error("isolate_zeros: no zero-free cut found for a cell");
    });
    std::vector<Cell> next;
    for (std::size_t gi = 0; gi < generation.size(); ++gi) {
      for (auto& rec : records[gi]) found.push_back(rec);
      for (auto& c : children[gi]) next.push_back(c);
    }
    generation = std::move(next);
  }
  std::sort(found.begin(), found.end(), [](const ZeroRecord& x, const ZeroRecord& y) {
    if (x.location.imag() != y.location.imag()) return x.location.imag() < y.location.imag();
    return x.location.real() < y.location.real();
  });
  return found;
}

// ---------------------------------------------------------------------------
// right zero-free region

double ZeroFinder::majorant_sum(double sigma, int m) const {
  const auto& tab = ev_.table();
  const std::size_t N = tab.length();
  const std::size_t nf = (m == 0) ? 1 : tab.n_f();
  const double lnf = (m == 0) ? 1.0 : std::log(static_cast<double>(nf));
  const double lognf = std::log(static_cast<double>(nf));
  double acc = 0.0;
  for (std::size_t n = nf + 1; n <= N; ++n) {
    const double l = std::abs(tab.lambda(n));
    if (l == 0.0) continue;
    const double ln = std::log(static_cast<double>(n));
    acc += l * std::pow(ln / lnf, m) * std::exp(sigma * (lognf - ln));
  }
  // Deligne beyond the table
  const double tail = divisor_tail_bound(static_cast<double>(N), sigma, m) * std::pow(static_cast<double>(nf), sigma) /
                      std::pow(lnf, m);
  return acc + tail;
}

ZeroFreeReport ZeroFinder::zero_free_certify(int m) const {
  {
    std::lock_guard<std::mutex> lock(certify_mu_);
    if (auto it = certified_.find(m); it != certified_.end()) return it->second;
  }
  if (m < 0) throw ContractError("zero_free_certify: m must be >= 0");
  ZeroFreeReport rep;
  rep.m = m;
  rep.lead = (m == 0) ? 1.0 : std::abs(ev_.table().lambda(ev_.table().n_f()));
  rep.tabulated = ev_.table().length();
  rep.alpha_left = -ev_.shift() - opt_.alpha_offset;
  rep.delta = opt_.strip_delta;
  for (int j = 21;; ++j) {
    const double sigma = 0.05 * j;
    const double s = majorant_sum(sigma, m);
    if (s <= 0.5 * rep.lead) {
      rep.sigma_right = sigma;
      rep.majorant_sum = s;
      break;
    }
    if (j > 2000) throw Error("zero_free_certify: no certificate below sigma = 100");
  }
  rep.min_re_F = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) {
    const cplx f = F({rep.sigma_right, 0.5 * i}, m);
    rep.min_re_F = std::min(rep.min_re_F, f.real());
    rep.max_abs_F_minus_1 = std::max(rep.max_abs_F_minus_1, std::abs(f - 1.0));
  }
  std::lock_guard<std::mutex> lock(certify_mu_);
  certified_.emplace(m, rep);
  return rep;
}

double ZeroFinder::sigma_right(int m) const { return zero_free_certify(m).sigma_right; }

// ---------------------------------------------------------------------------
// counting

Rectangle ZeroFinder::strip(double T, int m) const {
  const auto cert = zero_free_certify(m);
  return {cert.alpha_left, cert.sigma_right, cert.delta, T};
}

std::vector<CountReport> ZeroFinder::count_to_heights(const std::vector<double>& Ts, int m) const {
  if (Ts.empty()) throw ContractError("count_to_heights: no heights");
  std::vector<double> h(Ts);
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  if (h.back() > opt_.max_height) throw ContractError("count_to_heights: T beyond the configured maximum");
  const Rectangle base = strip(h.back(), m);
  if (h.front() <= base.t_min) throw ContractError("count_to_heights: T must exceed the strip bottom");
  const std::size_t nf = ev_.table().n_f();

  for (double refine : {1.0, 0.5, 0.25}) {
    // horizontal lines, each shifted upward by 1e-3 steps if it grazes a zero
    std::vector<double> level(h.size() + 1);
    std::vector<double> horiz(h.size() + 1);
    std::vector<double> shift(h.size() + 1, 0.0);
    std::vector<std::size_t> ev(h.size() + 1, 0);
    level[0] = base.t_min;
    for (std::size_t i = 0; i < h.size(); ++i) level[i + 1] = h[i];
    parallel_for(level.size(), opt_.jobs, [&](std::size_t i) {
      for (int attempt = 0; attempt <= 3; ++attempt) {
        const double y = level[i] + 1e-3 * attempt;
        try {
          horiz[i] = trace_phase({base.sigma_min, y}, {base.sigma_max, y}, m, &ev[i], refine);
          shift[i] = 1e-3 * attempt;
          return;
        } catch (const BoundaryZeroError&) {
        }
      }
      throw BoundaryZeroError("count: zero persists on Im s = " + std::to_string(level[i]));
    });
    for (std::size_t i = 0; i < level.size(); ++i) level[i] += shift[i];
    // vertical edges per slab: right edge upward minus left edge upward
    std::vector<double> vert(h.size());
    std::vector<std::size_t> vev(h.size(), 0);
    parallel_for(h.size(), opt_.jobs, [&](std::size_t i) {
      std::size_t e = 0;
      vert[i] = trace_phase({base.sigma_max, level[i]}, {base.sigma_max, level[i + 1]}, m, &e, refine) -
                trace_phase({base.sigma_min, level[i]}, {base.sigma_min, level[i + 1]}, m, &e, refine);
      vev[i] = e;
    });
    std::vector<CountReport> out;
    double running = horiz[0];
    std::size_t evals = ev[0];
    bool ok = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      running += vert[i];
      evals += vev[i] + ev[i + 1];
      const double total = running - horiz[i + 1];
      const double q = total / two_pi;
      CountReport r;
      r.m = m;
      r.T = h[i];
      r.computed_count = static_cast<int>(std::lround(q));
      r.rounding_gap = std::abs(q - r.computed_count);
      r.t_shift = shift[i + 1];
      r.main_term = main_term_formula(r.T, m, nf);
      r.deviation = r.computed_count - r.main_term;
      r.deviation_over_logT = r.deviation / std::log(r.T);
      r.evaluations = evals;
      if (r.rounding_gap > 0.01 || r.computed_count < 0) ok = false;
      out.push_back(r);
    }
    if (!ok) continue;
    std::vector<CountReport> ordered;
    for (double T : Ts)
      for (const auto& r : out)
        if (r.T == T) {
          ordered.push_back(r);
          break;
        }
    return ordered;
  }
  throw Error("count_to_heights: phase totals not within 0.01 of integers after refinement");
}

CountReport ZeroFinder::count_to_height(double T, int m) const {
  if (T <= opt_.strip_delta) {
    CountReport r;
    r.m = m;
    r.T = T;
    r.main_term = main_term_formula(T, m, ev_.table().n_f());
    r.deviation = -r.main_term;
    r.deviation_over_logT = T > 1 ? r.deviation / std::log(T) : 0.0;
    return r;
  }
  return count_to_heights({T}, m).front();
}

CountReport ZeroFinder::count_right_of(double sigma, double T, int m) const {
  if (!(sigma > 0.5)) throw DomainError("count_right_of: sigma must exceed 1/2");
  if (T > opt_.max_height) throw ContractError("count_right_of: T beyond the configured maximum");
  CountReport r;
  r.m = m;
  r.T = T;
  r.sigma = sigma;
  const double right = sigma_right(m);
  if (sigma < right && T > opt_.strip_delta) {
    const auto w = winding({sigma, right, opt_.strip_delta, T}, m);
    r.computed_count = w.count;
    r.rounding_gap = w.rounding_gap;
    r.t_shift = w.t_shift;
    r.evaluations = w.evaluations;
  }
  if (T > 1.0) {
    const double C = ev_.table().length() >= 10000 ? rankin_fit(ev_.table()).C_hat
                                                   : ev_.table().rankin_partial(ev_.table().length()) /
                                                         static_cast<double>(ev_.table().length());
    const auto d = density_envelope(sigma, T, m, density_constants(ev_.table(), m, C), r.computed_count);
    r.main_term = d.envelope_zd2;
    r.deviation = r.computed_count - r.main_term;
    r.deviation_over_logT = r.deviation / std::log(T);
  }
  return r;
}

// ---------------------------------------------------------------------------
// real zeros

std::vector<double> ZeroFinder::real_zero_scan(double a, double b, int m, double step) const {
  if (!(a < b) || !(b < 0.0)) throw DomainError("real_zero_scan: needs a < b < 0");
  if (!(step > 0.0)) throw ContractError("real_zero_scan: step must be positive");
  const auto g = [&](double x) { return ev_.eval({x, 0.0}, m).value.real(); };
  const std::size_t n = static_cast<std::size_t>(std::ceil((b - a) / step - 1e-9));
  std::vector<double> xs(n + 1), gs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = std::min(b, a + static_cast<double>(i) * step);
    gs[i] = g(xs[i]);
  }
  // a node sitting on a zero has no usable sign; nudge it inside its cell
  for (std::size_t i = 0; i <= n; ++i) {
    const double left = i > 0 ? std::abs(gs[i - 1]) : 0.0;
    const double right = i < n ? std::abs(gs[i + 1]) : 0.0;
    const double scale = std::max(left, right);
    if (std::abs(gs[i]) <= 1e-12 * scale) {
      const double dx = (i < n ? 0.37 : -0.37) * step;
      xs[i] += dx;
      gs[i] = g(xs[i]);
    }
  }
  std::vector<double> roots;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((gs[i] < 0) != (gs[i + 1] < 0))) continue;
    double lo = xs[i], hi = xs[i + 1];
    double glo = gs[i];
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if ((gm < 0) == (glo < 0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Littlewood

LittlewoodReport ZeroFinder::littlewood_check(double sigma, double T, int m, double t_min) const {
  if (!(sigma > 0.5)) throw DomainError("littlewood_check: sigma must exceed 1/2");
  if (!(T > t_min)) throw ContractError("littlewood_check: T must exceed the bottom edge");
  LittlewoodReport rep;
  rep.sigma = sigma;
  rep.m = m;
  rep.t_min = t_min;
  // any abscissa right of the certified one works; keep the rectangle non-degenerate
  rep.sigma_right = std::max(sigma_right(m), sigma + 1.0);
  const Rectangle rect{sigma, rep.sigma_right, t_min, T};
  const auto w = winding(rect, m);
  rep.t_shift = w.t_shift;
  const Rectangle r = shifted(rect, w.t_shift);
  rep.T = r.t_max;
  rep.t_min = r.t_min;

  const auto zeros = isolate_zeros(r, m);
  double lhs = 0.0;
  for (const auto& z : zeros) lhs += z.multiplicity * (z.location.real() - sigma);
  rep.lhs = two_pi * lhs;
  rep.zeros_used = zeros.size();

  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  constexpr double tol = 1e-11;
  // where F ~ 1 the tolerance sits under the evaluation noise; deeper bisection only burns time
  constexpr unsigned depth = 12;
  double qerr = 0.0;
  const auto log_abs = [&](double x) { return [this, x, m](double t) { return std::log(std::abs(F({x, t}, m))); }; };
  double e = 0.0;
  const double I1 = GK::integrate(log_abs(sigma), r.t_min, r.t_max, depth, tol, &e);
  qerr += e;
  const double I2 = GK::integrate(log_abs(rep.sigma_right), r.t_min, r.t_max, depth, tol, &e);
  qerr += e;

  // arg F on a horizontal line, continuous from the right edge (where Re F > 0)
  const auto arg_integral = [&](double y) {
    std::size_t evals = 0;
    const auto f = [&](cplx s, double* err) { return F(s, m, err); };
    const cplx a(rep.sigma_right, y), b(sigma, y);
    auto nodes = trace_nodes(f, a, b, opt_.initial_step, opt_.min_segment, pi / 4, evals);
    // anchor: principal value at the right edge
    const double a0 = std::arg(F(a, m));
    const double off = a0 - nodes.front().arg;
    for (auto& n : nodes) n.arg += off;
    // u runs from the right edge leftward; x = sigma_right - u (sigma_right - sigma)
    const double span = rep.sigma_right - sigma;
    const auto cont_arg = [&](double x) {
      const double u = (rep.sigma_right - x) / span;
      auto it = std::lower_bound(nodes.begin(), nodes.end(), u, [](const TraceNode& n, double v) { return n.u < v; });
      double guess;
      if (it == nodes.begin())
        guess = it->arg;
      else if (it == nodes.end())
        guess = nodes.back().arg;
      else {
        const auto& p = *(it - 1);
        guess = p.arg + (it->arg - p.arg) * (u - p.u) / (it->u - p.u);
      }
      const double principal = std::arg(F({x, y}, m));
      return principal + two_pi * std::round((guess - principal) / two_pi);
    };
    // integrate piecewise between trace nodes, where the argument is smooth
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double x0 = rep.sigma_right - nodes[i + 1].u * span;
      const double x1 = rep.sigma_right - nodes[i].u * span;
      double err = 0.0;
      // short smooth pieces; near arg = 0 the relative tolerance is unreachable, so keep the depth small
      acc += GK::integrate(cont_arg, x0, x1, 5, tol, &err);
      qerr += err;
    }
    return acc;
  };
  const double I3 = arg_integral(r.t_max);
  const double I4 = arg_integral(r.t_min);
  rep.rhs = I1 - I2 + I3 - I4;
  rep.discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.quadrature_error = qerr;
  return rep;
}

}  // namespace lfz

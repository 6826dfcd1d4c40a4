#include "infharm/tension.hpp"

#include <cmath>

namespace infharm {

std::vector<ExpPoly> metric_gradient(const ExpPoly& f, const MetricSpec& M) {
  if (!same_vars(f.vars(), M.coords))
    throw DimensionMismatch("scalar lives over the wrong coordinates");
  const int n = M.dim;
  std::vector<ExpPoly> partials;
  partials.reserve(n);
  for (int k = 0; k < n; ++k) partials.push_back(f.derivative(k));
  std::vector<ExpPoly> grad(n, ExpPoly::zero(M.coords));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!M.inverse(a, b).is_zero() && !partials[b].is_zero())
        grad[a] += M.inverse(a, b) * partials[b];
  return grad;
}

namespace {

// h_ij o phi for every target metric entry; the substitution rejects maps
// whose image coordinates enter a target frequency non-linearly.
std::vector<ExpPoly> composed_target_metric(const PolyMap& phi) {
  const int n = phi.target->dim;
  std::vector<ExpPoly> h(std::size_t(n) * n, ExpPoly::zero(phi.domain->coords));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      ExpPoly e = phi.target->metric(i, j).substituted(phi.domain->coords, phi.components);
      h[std::size_t(i) * n + j] = e;
      h[std::size_t(j) * n + i] = std::move(e);
    }
  return h;
}

std::vector<ExpPoly> component_partials(const PolyMap& phi) {
  const int n = phi.target->dim, m = phi.domain->dim;
  std::vector<ExpPoly> d(std::size_t(n) * m, ExpPoly::zero(phi.domain->coords));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) d[std::size_t(i) * m + a] = phi.components[i].derivative(a);
  return d;
}

}  // namespace

std::vector<ExpPoly> pullback_metric(const PolyMap& phi) {
  const int n = phi.target->dim, m = phi.domain->dim;
  const auto h = composed_target_metric(phi);
  const auto dphi = component_partials(phi);
  std::vector<ExpPoly> pb(std::size_t(m) * m, ExpPoly::zero(phi.domain->coords));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b <= a; ++b) {
      ExpPoly s = ExpPoly::zero(phi.domain->coords);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const ExpPoly& hij = h[std::size_t(i) * n + j];
          const ExpPoly& da = dphi[std::size_t(i) * m + a];
          const ExpPoly& db = dphi[std::size_t(j) * m + b];
          if (!hij.is_zero() && !da.is_zero() && !db.is_zero()) s += da * db * hij;
        }
      pb[std::size_t(a) * m + b] = s;
      pb[std::size_t(b) * m + a] = std::move(s);
    }
  return pb;
}

ExpPoly energy_density(const PolyMap& phi) {
  const int m = phi.domain->dim;
  const auto pb = pullback_metric(phi);
  ExpPoly e = ExpPoly::zero(phi.domain->coords);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const ExpPoly& gab = phi.domain->inverse(a, b);
      if (!gab.is_zero() && !pb[std::size_t(a) * m + b].is_zero())
        e += gab * pb[std::size_t(a) * m + b];
    }
  return e;
}

TensionReport tau_infinity(const PolyMap& phi) {
  const int n = phi.target->dim, m = phi.domain->dim;
  TensionReport rep;
  rep.energy = energy_density(phi);
  rep.energy_gradient = metric_gradient(rep.energy, *phi.domain);
  const auto dphi = component_partials(phi);

  rep.tau.reserve(n);
  bool harmonic = true;
  for (int i = 0; i < n; ++i) {
    ExpPoly t = ExpPoly::zero(phi.domain->coords);
    for (int a = 0; a < m; ++a) {
      const ExpPoly& da = dphi[std::size_t(i) * m + a];
      if (!da.is_zero() && !rep.energy_gradient[a].is_zero()) t += da * rep.energy_gradient[a];
    }
    harmonic = harmonic && t.is_zero();
    rep.tau.push_back(std::move(t));
  }
  rep.harmonic = harmonic;

  rep.constant_energy = true;
  for (int a = 0; a < m; ++a)
    if (!rep.energy.derivative(a).is_zero()) {
      rep.constant_energy = false;
      break;
    }
  return rep;
}

std::vector<ExpPoly> tau_metric_pairing(const PolyMap& phi) {
  const int n = phi.target->dim, m = phi.domain->dim;
  const ExpPoly energy = energy_density(phi);
  const auto grad_e = metric_gradient(energy, *phi.domain);
  std::vector<ExpPoly> tau;
  tau.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto grad_i = metric_gradient(phi.components[i], *phi.domain);
    ExpPoly t = ExpPoly::zero(phi.domain->coords);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const ExpPoly& gab = phi.domain->metric(a, b);
        if (!gab.is_zero() && !grad_i[a].is_zero() && !grad_e[b].is_zero())
          t += gab * grad_i[a] * grad_e[b];
      }
    tau.push_back(std::move(t));
  }
  return tau;
}

bool is_isometry(const PolyMap& phi) {
  if (phi.domain->dim != phi.target->dim) return false;
  const auto pb = pullback_metric(phi);
  for (std::size_t k = 0; k < pb.size(); ++k)
    if (pb[k] != phi.domain->g[k]) return false;
  return true;
}

std::vector<double> numeric_residual(const PolyMap& phi, std::span<const double> point, double h) {
  const int n = phi.target->dim, m = phi.domain->dim;
  if (int(point.size()) != m) throw DimensionMismatch("point has wrong dimension");

  auto image = [&](std::span<const double> p) {
    std::vector<double> img(n);
    for (int i = 0; i < n; ++i) img[i] = phi.components[i].evaluate(p);
    return img;
  };

  // dphi evaluated from the components' own derivative polynomials.  An
  // earlier revision differenced the components too, but the nested central
  // differences amplified rounding to eps/h^2 and drowned the signal; the
  // component derivatives are covered by the kernel's finite-difference
  // property tests, so nothing from the energy derivation leaks in here.
  std::vector<ExpPoly> partials;
  partials.reserve(std::size_t(n) * m);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) partials.push_back(phi.components[i].derivative(std::size_t(a)));

  auto jacobian = [&](std::span<const double> p) {
    std::vector<double> jac(std::size_t(n) * m);
    for (std::size_t k = 0; k < jac.size(); ++k) jac[k] = partials[k].evaluate(p);
    return jac;
  };

  auto energy_at = [&](std::span<const double> p) {
    const auto jac = jacobian(p);
    const auto img = image(p);
    double e = 0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        const double gab = phi.domain->inverse(a, b).evaluate(p);
        if (gab == 0) continue;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double hij = phi.target->metric(i, j).evaluate(img);
            if (hij != 0)
              e += gab * jac[std::size_t(i) * m + a] * jac[std::size_t(j) * m + b] * hij;
          }
      }
    return e;
  };

  std::vector<double> de(m);
  std::vector<double> q(point.begin(), point.end());
  for (int b = 0; b < m; ++b) {
    q[b] = point[b] + h;
    const double up = energy_at(q);
    q[b] = point[b] - h;
    const double dn = energy_at(q);
    q[b] = point[b];
    de[b] = (up - dn) / (2 * h);
  }

  std::vector<double> grad(m, 0.0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) grad[a] += phi.domain->inverse(a, b).evaluate(point) * de[b];

  const auto jac = jacobian(point);
  std::vector<double> res(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a) res[i] += jac[std::size_t(i) * m + a] * grad[a];
  return res;
}

TensionReport check_composition(const PolyMap& outer, const PolyMap& inner) {
  return tau_infinity(compose(outer, inner));
}

}  // namespace infharm

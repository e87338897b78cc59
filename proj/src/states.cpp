#include "qmetro/states.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qmetro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorKind::InvalidInput, message);
}

// Remaining population beyond `last` for a Poisson law of mean lambda, scaled
// by `factor` (cats double the surviving parity).
double poisson_tail_after(double lambda, Index last, double factor) {
  double p = std::exp(-lambda);
  for (Index n = 0; n <= last; ++n) p *= lambda / double(n + 1);
  const double ratio = lambda / double(last + 2);
  if (ratio >= 1) return kInf;
  return factor * p / (1 - ratio);
}

// Squeezed vacuum P(2k) for the smallest k with 2k > last.
double squeezed_vacuum_tail_after(double r, Index last) {
  const double t2 = std::pow(std::tanh(r), 2);
  if (t2 == 0) return 0;
  double p = 1 / std::cosh(r);
  Index k = 0;
  for (; 2 * k <= last; ++k) p *= t2 * double(2 * k + 1) / double(2 * k + 2);
  return p / (1 - t2);
}

double spssv_tail_after(double r, Index last) {
  const double t2 = std::pow(std::tanh(r), 2);
  const double s2 = std::pow(std::sinh(r), 2);
  // p_sv(2k+2) with k = 0 first.
  double psv = t2 * 0.5 / std::cosh(r);
  Index k = 0;
  for (; 2 * k + 1 <= last; ++k) psv *= t2 * double(2 * k + 3) / double(2 * k + 4);
  const double p = double(2 * k + 2) * psv / s2;  // population of level 2k+1
  const double ratio = t2 * double(2 * k + 3) / double(2 * k + 2);
  if (ratio >= 1) return kInf;
  return p / (1 - ratio);
}

}  // namespace

const char* family_name(Family family) noexcept {
  switch (family) {
    case Family::Fock: return "fock";
    case Family::Coherent: return "coherent";
    case Family::EvenCat: return "evencat";
    case Family::OddCat: return "oddcat";
    case Family::SqueezedVacuum: return "sqvac";
    case Family::Spssv: return "spssv";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Fock, Family::Coherent, Family::EvenCat, Family::OddCat,
                   Family::SqueezedVacuum, Family::Spssv}) {
    if (name == family_name(f)) return f;
  }
  return std::nullopt;
}

bool is_even_odd(Family family) noexcept { return family != Family::Coherent; }

PureStateSpec PureStateSpec::fock(int n) {
  PureStateSpec s{Family::Fock, n, 0};
  s.validate();
  return s;
}
PureStateSpec PureStateSpec::coherent(double alpha0) {
  PureStateSpec s{Family::Coherent, 0, alpha0};
  s.validate();
  return s;
}
PureStateSpec PureStateSpec::even_cat(double alpha0) {
  PureStateSpec s{Family::EvenCat, 0, alpha0};
  s.validate();
  return s;
}
PureStateSpec PureStateSpec::odd_cat(double alpha0) {
  PureStateSpec s{Family::OddCat, 0, alpha0};
  s.validate();
  return s;
}
PureStateSpec PureStateSpec::squeezed_vacuum(double r) {
  PureStateSpec s{Family::SqueezedVacuum, 0, r};
  s.validate();
  return s;
}
PureStateSpec PureStateSpec::spssv(double r_prime) {
  PureStateSpec s{Family::Spssv, 0, r_prime};
  s.validate();
  return s;
}

void PureStateSpec::validate() const {
  if (family == Family::Fock) {
    require(photons >= 0, "Fock photon number must be non-negative");
    return;
  }
  require(std::isfinite(amplitude) && amplitude >= 0,
          std::string(family_name(family)) + ": parameter must be real and non-negative");
  switch (family) {
    case Family::Coherent:
    case Family::EvenCat:
      require(amplitude <= 20, "amplitude too large");
      break;
    case Family::OddCat:
      require(amplitude > 0 && amplitude <= 20, "odd cat needs 0 < alpha0 <= 20");
      break;
    case Family::SqueezedVacuum:
      require(amplitude <= 4, "squeezing too large");
      break;
    case Family::Spssv:
      require(amplitude > 0 && amplitude <= 4, "SPSSV needs 0 < R' <= 4");
      break;
    case Family::Fock:
      break;
  }
}

int PureStateSpec::parity() const {
  switch (family) {
    case Family::Fock: return photons % 2 == 0 ? 1 : -1;
    case Family::EvenCat:
    case Family::SqueezedVacuum: return 1;
    case Family::OddCat:
    case Family::Spssv: return -1;
    case Family::Coherent: return amplitude == 0 ? 1 : 0;
  }
  return 0;
}

std::string PureStateSpec::describe() const {
  std::ostringstream os;
  os << family_name(family);
  if (family == Family::Fock) {
    os << "(N=" << photons << ")";
  } else {
    os.precision(6);
    os << "(" << amplitude << ")";
  }
  return os.str();
}

PureStateSpec spec_for_mean_photons(Family family, double n) {
  require(std::isfinite(n) && n >= 0, "target mean photon number must be non-negative");
  switch (family) {
    case Family::Fock:
      return PureStateSpec::fock(static_cast<int>(std::lround(n)));
    case Family::Coherent:
      return PureStateSpec::coherent(std::sqrt(n));
    case Family::SqueezedVacuum:
      return PureStateSpec::squeezed_vacuum(std::asinh(std::sqrt(n)));
    case Family::Spssv:
      require(n > 1, "SPSSV mean photon number must exceed 1");
      return PureStateSpec::spssv(std::asinh(std::sqrt((n - 1) / 3)));
    case Family::EvenCat:
    case Family::OddCat: {
      const bool even = family == Family::EvenCat;
      if (!even) require(n > 1, "odd cat mean photon number must exceed 1");
      auto f = [even](double x) { return even ? x * std::tanh(x) : x / std::tanh(x); };
      double lo = 0, hi = n + 1;
      for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid > 0 && f(mid) < n) {
          lo = mid;
        } else if (mid == 0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double alpha0 = std::sqrt(0.5 * (lo + hi));
      return even ? PureStateSpec::even_cat(alpha0) : PureStateSpec::odd_cat(alpha0);
    }
  }
  fail(ErrorKind::InvalidInput, "unknown family");
}

void SqueezedThermalSpec::validate() const {
  require(std::isfinite(r) && r >= 0 && r <= 4, "squeezed thermal: need 0 <= r <= 4");
  require(std::isfinite(nth) && nth >= 0, "squeezed thermal: need nth >= 0");
}

double SqueezedThermalSpec::mean_photons() const {
  return (2 * nth + 1) * std::pow(std::sinh(r), 2) + nth;
}

double tail_mass(const PureStateSpec& spec, Index dim) {
  spec.validate();
  if (dim < 1) return 1;
  const Index last = dim - 1;
  const double x = spec.amplitude;
  switch (spec.family) {
    case Family::Fock:
      return spec.photons > last ? 1.0 : 0.0;
    case Family::Coherent:
      return poisson_tail_after(x * x, last, 1.0);
    case Family::EvenCat:
      return x == 0 ? 0.0 : poisson_tail_after(x * x, last, 2 / (1 + std::exp(-2 * x * x)));
    case Family::OddCat:
      return poisson_tail_after(x * x, last, 2 / (1 - std::exp(-2 * x * x)));
    case Family::SqueezedVacuum:
      return squeezed_vacuum_tail_after(x, last);
    case Family::Spssv:
      return spssv_tail_after(x, last);
  }
  return 1;
}

Index required_dim(const PureStateSpec& spec, double tail_tolerance) {
  require(tail_tolerance > 0, "tail tolerance must be positive");
  Index dim = 2;
  if (spec.family == Family::Fock) dim = std::max<Index>(2, spec.photons + 1);
  while (tail_mass(spec, dim) >= tail_tolerance) {
    ++dim;
    if (dim > 100000) fail(ErrorKind::ResourceLimit, "required_dim: cutoff above 100000");
  }
  return dim;
}

ComplexVector pure_ket(const PureStateSpec& spec, Index dim, double tail_tolerance) {
  spec.validate();
  detail::require_dim(dim, 2, "pure_ket");
  if (tail_mass(spec, dim) >= tail_tolerance) {
    const Index need = required_dim(spec, tail_tolerance);
    fail(ErrorKind::TruncationOverflow,
         spec.describe() + " needs dim >= " + std::to_string(need) + " (got " +
             std::to_string(dim) + ")",
         need);
  }
  ComplexVector v = ComplexVector::Zero(dim);
  const double x = spec.amplitude;
  switch (spec.family) {
    case Family::Fock:
      v[spec.photons] = 1;
      return v;
    case Family::Coherent:
    case Family::EvenCat:
    case Family::OddCat: {
      // c_{n+1} = c_n alpha0 / sqrt(n+1)
      double c = std::exp(-0.5 * x * x);
      const int sign = spec.family == Family::OddCat ? -1 : 1;
      for (Index n = 0; n < dim; ++n) {
        if (spec.family == Family::Coherent) {
          v[n] = c;
        } else {
          const bool even_level = n % 2 == 0;
          v[n] = (even_level ? 1.0 + sign : 1.0 - sign) * c;
        }
        c *= x / std::sqrt(double(n + 1));
      }
      break;
    }
    case Family::SqueezedVacuum: {
      // xi0 = -R: c_{2k+2} = tanh(R) sqrt((2k+1)/(2k+2)) c_{2k}
      const double t = std::tanh(x);
      double c = 1 / std::sqrt(std::cosh(x));
      for (Index k = 0; 2 * k < dim; ++k) {
        v[2 * k] = c;
        c *= t * std::sqrt(double(2 * k + 1) / double(2 * k + 2));
      }
      break;
    }
    case Family::Spssv: {
      const Index build =
          std::max<Index>(dim + 1, squeezed_vacuum_required_dim(x, 1e-18)) + 16;
      const ComplexVector sv = squeeze_columns<double>(build, x, M_PI, 1).col(0);
      v = lower(sv).head(dim);
      break;
    }
  }
  v.normalize();
  return v;
}

Index thermal_levels(double nth, double tail_tolerance) {
  require(nth >= 0 && tail_tolerance > 0 && tail_tolerance < 1, "thermal_levels: bad arguments");
  if (nth == 0) return 1;
  const double x = nth / (nth + 1);
  return std::max<Index>(1, static_cast<Index>(std::ceil(std::log(tail_tolerance) / std::log(x))));
}

ComplexMatrix ThermalEnsemble::density() const {
  return columns * weights.cast<Complex>().asDiagonal() * columns.adjoint();
}

namespace {

// Weighted population on levels >= level for every level, as a suffix sum.
RVector<double> weighted_suffix(const ComplexMatrix& cols, const RVector<double>& w) {
  const Index d = cols.rows();
  RVector<double> row(d);
  for (Index n = 0; n < d; ++n) {
    double s = 0;
    for (Index m = 0; m < cols.cols(); ++m) s += w[m] * std::norm(cols(n, m));
    row[n] = s;
  }
  RVector<double> suffix(d + 1);
  suffix[d] = 0;
  for (Index n = d - 1; n >= 0; --n) suffix[n] = suffix[n + 1] + row[n];
  return suffix;
}

}  // namespace

ThermalEnsemble squeezed_thermal_ensemble(const SqueezedThermalSpec& spec, double tail_tolerance,
                                          Index dim) {
  spec.validate();
  const Index levels = thermal_levels(spec.nth, tail_tolerance);
  ThermalEnsemble out;
  out.weights.resize(levels);
  const double x = spec.nth / (spec.nth + 1);
  for (Index m = 0; m < levels; ++m) out.weights[m] = (1 - x) * std::pow(x, double(m));
  out.skipped_weight = spec.nth == 0 ? 0.0 : std::pow(x, double(levels));
  out.weights /= out.weights.sum();

  if (spec.r == 0) {
    const Index d = std::max<Index>({dim, levels, 2});
    out.columns = ComplexMatrix::Identity(d, levels);
    return out;
  }

  const double m = double(levels);
  Index build = static_cast<Index>((2 * m + 1) * std::exp(2 * spec.r) / 2 +
                                   10 * std::exp(spec.r) * std::sqrt(m + 1) + 24);
  if (dim > 0) build = std::max(build, dim + dim / 4 + 16);
  for (int attempt = 0; attempt < 12; ++attempt) {
    const ComplexMatrix cols = squeeze_columns<double>(build, spec.r, 0.0, levels);
    const RVector<double> suffix = weighted_suffix(cols, out.weights);
    Index needed = build;
    for (Index n = 0; n <= build; ++n) {
      if (suffix[n] < tail_tolerance) {
        needed = n;
        break;
      }
    }
    needed = std::max<Index>({needed, levels, 2});
    const Index guard = std::max<Index>(8, build / 5);
    if (needed + guard > build) {
      build = build + build / 2;
      continue;
    }
    if (dim > 0 && suffix[dim] >= tail_tolerance) {
      fail(ErrorKind::TruncationOverflow,
           "squeezed thermal (r=" + std::to_string(spec.r) + ", nth=" + std::to_string(spec.nth) +
               ") needs dim >= " + std::to_string(needed),
           needed);
    }
    const Index keep = dim > 0 ? dim : needed;
    out.columns = cols.topRows(keep);
    out.tail_population = suffix[keep];
    for (Index j = 0; j < levels; ++j) out.columns.col(j).normalize();
    return out;
  }
  fail(ErrorKind::ResourceLimit, "squeezed thermal ensemble: cutoff search did not converge");
}

ComplexMatrix squeezed_thermal_density(const SqueezedThermalSpec& spec, Index dim,
                                       double tail_tolerance) {
  detail::require_dim(dim, 1, "squeezed_thermal_density");
  return squeezed_thermal_ensemble(spec, tail_tolerance, dim).density();
}

StateMoments moments_closed(const PureStateSpec& spec) {
  spec.validate();
  StateMoments m;
  const double x = spec.amplitude;
  switch (spec.family) {
    case Family::Fock:
      m.mean_n = spec.photons;
      break;
    case Family::Coherent:
      m.mean_n = x * x;
      m.mean_a = x;
      m.mean_a2 = x * x;
      break;
    case Family::EvenCat:
      m.mean_n = x * x * std::tanh(x * x);
      m.mean_a2 = x * x;
      break;
    case Family::OddCat:
      m.mean_n = x * x / std::tanh(x * x);
      m.mean_a2 = x * x;
      break;
    case Family::SqueezedVacuum:
      m.mean_n = std::pow(std::sinh(x), 2);
      m.mean_a2 = std::sinh(2 * x) / 2;
      break;
    case Family::Spssv:
      m.mean_n = 1 + 3 * std::pow(std::sinh(x), 2);
      m.mean_a2 = 1.5 * std::sinh(2 * x);
      break;
  }
  m.phase = std::abs(m.mean_a) == 0 ? 0.0 : std::arg(m.mean_a);
  return m;
}

StateMoments moments_numeric(const ComplexVector& ket) {
  if (ket.size() < 1) fail(ErrorKind::InvalidDimension, "moments_numeric: empty vector");
  if (std::abs(ket.squaredNorm() - 1) > 1e-10) {
    fail(ErrorKind::InvalidInput, "moments_numeric: vector is not normalised");
  }
  const ComplexVector a1 = lower(ket);
  const ComplexVector a2 = lower(a1);
  StateMoments m;
  m.mean_n = a1.squaredNorm();
  m.mean_a = ket.dot(a1);
  m.mean_a2 = ket.dot(a2);
  m.phase = std::abs(m.mean_a) < 1e-14 ? 0.0 : std::arg(m.mean_a);
  return m;
}

}  // namespace qmetro

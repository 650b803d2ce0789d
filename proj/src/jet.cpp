/*
 * Copyright 2026 The finsler-gbc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fgbc/jet.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace fgbc {

namespace {

std::uint32_t encode(const MultiIndex& a) {
  std::uint32_t key = 0;
  for (int v = kMaxJetVars - 1; v >= 0; --v) key = key * 8u + a[static_cast<std::size_t>(v)];
  return key;
}

// Per-process map keyed by encode(); only touched while building a layout.
struct IndexMap {
  std::unordered_map<std::uint32_t, int> map;
};

void enumerate(int nvars, int degree, int var, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (var == nvars - 1) {
    cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(degree);
    out.push_back(cur);
    cur[static_cast<std::size_t>(var)] = 0;
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
    enumerate(nvars, degree - e, var + 1, cur, out);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}

void check_compatible(const Jet& a, const Jet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "jet: empty operand");
  if (&a.layout() != &b.layout())
    throw Error(ErrorCode::BaseMismatch, "jet: operands have different variable counts");
  if (a.base_tag() != 0 && b.base_tag() != 0 && a.base_tag() != b.base_tag())
    throw Error(ErrorCode::BaseMismatch, "jet: operands lifted at different base points");
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

// Support-filtered product lists, built on first use. Only kept for up to
// kFilteredVars variables, where the table stays small.
constexpr int kFilteredVars = 4;
constexpr std::size_t kMasks = 1u << kFilteredVars;

struct JetLayout::Filtered {
  static constexpr std::size_t kSlots = kMasks * kMasks * (kMaxJetOrder + 1);
  std::once_flag once[kSlots];
  std::vector<ProductTerm> terms[kSlots];
};

JetLayout::~JetLayout() = default;

int total_degree(const MultiIndex& alpha) noexcept {
  int d = 0;
  for (auto e : alpha) d += e;
  return d;
}

JetLayout::JetLayout(int nvars) : nvars_(nvars) {
  MultiIndex cur{};
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    enumerate(nvars, d, 0, cur, monomials_);
    sizes_.push_back(static_cast<int>(monomials_.size()));
  }
  IndexMap idx;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    idx.map.emplace(encode(monomials_[i]), static_cast<int>(i));
    degrees_.push_back(total_degree(monomials_[i]));
    std::uint32_t s = 0;
    for (int v = 0; v < nvars; ++v)
      if (monomials_[i][static_cast<std::size_t>(v)] != 0) s |= 1u << v;
    supports_.push_back(s);
  }
  raise_.assign(monomials_.size() * static_cast<std::size_t>(nvars), -1);
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    if (degrees_[i] == kMaxJetOrder) continue;
    for (int v = 0; v < nvars; ++v) {
      MultiIndex a = monomials_[i];
      ++a[static_cast<std::size_t>(v)];
      raise_[i * static_cast<std::size_t>(nvars) + static_cast<std::size_t>(v)] = idx.map.at(encode(a));
    }
  }
  for (std::size_t l = 0; l < monomials_.size(); ++l) {
    const int room = kMaxJetOrder - degrees_[l];
    for (int r = 0; r < sizes_[static_cast<std::size_t>(room)]; ++r) {
      MultiIndex a = monomials_[l];
      const MultiIndex& b = monomials_[static_cast<std::size_t>(r)];
      for (int v = 0; v < nvars; ++v)
        a[static_cast<std::size_t>(v)] =
            static_cast<std::uint8_t>(a[static_cast<std::size_t>(v)] + b[static_cast<std::size_t>(v)]);
      products_.push_back({static_cast<std::uint16_t>(l), static_cast<std::uint16_t>(r),
                           static_cast<std::uint16_t>(idx.map.at(encode(a)))});
    }
  }
  std::stable_sort(products_.begin(), products_.end(),
                   [](const ProductTerm& p, const ProductTerm& q) { return p.out < q.out; });
  if (nvars <= kFilteredVars) filtered_ = std::make_unique<Filtered>();
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    const auto limit = sizes_[static_cast<std::size_t>(k)];
    auto it = std::lower_bound(products_.begin(), products_.end(), limit,
                               [](const ProductTerm& p, int lim) { return p.out < lim; });
    product_offsets_.push_back(static_cast<std::size_t>(it - products_.begin()));
  }
}

const JetLayout& JetLayout::for_vars(int nvars) {
  if (nvars < 1 || nvars > kMaxJetVars)
    throw Error(ErrorCode::InvalidArgument, "jet: variable count out of range");
  static std::once_flag flags[kMaxJetVars + 1];
  static std::unique_ptr<JetLayout> layouts[kMaxJetVars + 1];
  std::call_once(flags[nvars], [nvars] { layouts[nvars].reset(new JetLayout(nvars)); });
  return *layouts[nvars];
}

int JetLayout::index_of(const MultiIndex& alpha) const {
  const int d = total_degree(alpha);
  if (d > kMaxJetOrder) return -1;
  for (int v = nvars_; v < kMaxJetVars; ++v)
    if (alpha[static_cast<std::size_t>(v)] != 0) return -1;
  const int lo = d == 0 ? 0 : sizes_[static_cast<std::size_t>(d - 1)];
  const int hi = sizes_[static_cast<std::size_t>(d)];
  for (int i = lo; i < hi; ++i)
    if (monomials_[static_cast<std::size_t>(i)] == alpha) return i;
  return -1;
}

std::span<const JetLayout::ProductTerm> JetLayout::product_terms(int order) const {
  return {products_.data(), product_offsets_.at(static_cast<std::size_t>(order))};
}


std::span<const JetLayout::ProductTerm> JetLayout::product_terms(int order, std::uint32_t lhs_support,
                                                                  std::uint32_t rhs_support) const {
  if (nvars_ > kFilteredVars) return product_terms(order);
  const std::size_t slot =
      (static_cast<std::size_t>(order) * kMasks + lhs_support) * kMasks + rhs_support;
  Filtered& f = *filtered_;
  std::call_once(f.once[slot], [&] {
    for (const auto& t : product_terms(order))
      if ((supports_[t.lhs] & ~lhs_support) == 0 && (supports_[t.rhs] & ~rhs_support) == 0) f.terms[slot].push_back(t);
  });
  return f.terms[slot];
}

Jet Jet::constant(const JetLayout& layout, int order, double value) {
  if (order < 0 || order > kMaxJetOrder) throw Error(ErrorCode::InvalidArgument, "jet: order out of range");
  Jet j;
  j.layout_ = &layout;
  j.order_ = order;
  j.c_.assign(static_cast<std::size_t>(layout.size(order)), 0.0);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(const JetLayout& layout, int order, int var, double value, std::uint64_t base_tag) {
  if (var < 0 || var >= layout.nvars()) throw Error(ErrorCode::InvalidArgument, "jet: variable index out of range");
  Jet j = constant(layout, order, value);
  j.tag_ = base_tag;
  if (order >= 1) {
    j.c_[static_cast<std::size_t>(1 + var)] = 1.0;
    j.support_ = 1u << var;
  }
  return j;
}

double Jet::coeff(const MultiIndex& alpha) const {
  const int idx = layout_->index_of(alpha);
  if (idx < 0 || total_degree(alpha) > order_) throw Error(ErrorCode::OrderExhausted, "jet: multi-index beyond truncation order");
  return c_[static_cast<std::size_t>(idx)];
}

double Jet::partial(const MultiIndex& alpha) const {
  double f = 1.0;
  for (auto e : alpha) f *= factorial(e);
  return coeff(alpha) * f;
}

Jet Jet::truncated(int order) const {
  if (order > order_) throw Error(ErrorCode::OrderExhausted, "jet: cannot raise truncation order");
  Jet j = *this;
  j.order_ = order;
  j.c_.resize(static_cast<std::size_t>(layout_->size(order)));
  return j;
}

Jet Jet::derivative(int var) const {
  if (order_ == 0) throw Error(ErrorCode::OrderExhausted, "jet: derivative of an order-0 jet");
  if (var < 0 || var >= nvars()) throw Error(ErrorCode::InvalidArgument, "jet: variable index out of range");
  Jet j;
  j.layout_ = layout_;
  j.order_ = order_ - 1;
  j.tag_ = tag_;
  j.support_ = support_;
  const int n = layout_->size(order_ - 1);
  j.c_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int up = layout_->raise(i, var);
    const double mult = layout_->exponents(i)[static_cast<std::size_t>(var)] + 1.0;
    j.c_[static_cast<std::size_t>(i)] = mult * c_[static_cast<std::size_t>(up)];
  }
  return j;
}

Jet& Jet::operator+=(const Jet& other) {
  check_compatible(*this, other);
  if (other.order_ < order_) {
    order_ = other.order_;
    c_.resize(other.c_.size());
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  support_ |= other.support_;
  if (tag_ == 0) tag_ = other.tag_;
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  check_compatible(*this, other);
  if (other.order_ < order_) {
    order_ = other.order_;
    c_.resize(other.c_.size());
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  support_ |= other.support_;
  if (tag_ == 0) tag_ = other.tag_;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet j = *this;
  for (auto& v : j.c_) v = -v;
  return j;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  Jet j;
  j.layout_ = a.layout_;
  j.order_ = std::min(a.order_, b.order_);
  j.tag_ = a.tag_ != 0 ? a.tag_ : b.tag_;
  j.support_ = a.support_ | b.support_;
  j.c_.assign(static_cast<std::size_t>(a.layout_->size(j.order_)), 0.0);
  const double* pa = a.c_.data();
  const double* pb = b.c_.data();
  double* out = j.c_.data();
  const auto terms = j.support_ == a.layout_->full_support()
                         ? a.layout_->product_terms(j.order_)
                         : a.layout_->product_terms(j.order_, a.support_, b.support_);
  for (const auto& t : terms) out[t.out] += pa[t.lhs] * pb[t.rhs];
  return j;
}

Jet Jet::rescaled_fiber(int dim, double s, int degree, std::uint64_t new_tag) const {
  Jet j = *this;
  j.tag_ = new_tag;
  double pw[kMaxJetOrder + 1];
  pw[0] = 1.0;
  for (int k = 1; k <= kMaxJetOrder; ++k) pw[k] = pw[k - 1] * s;
  const double base = std::pow(s, -degree);
  for (std::size_t i = 0; i < j.c_.size(); ++i) {
    const auto& e = layout_->exponents(static_cast<int>(i));
    int dy = 0;
    for (int v = dim; v < 2 * dim; ++v) dy += e[static_cast<std::size_t>(v)];
    j.c_[i] *= base * pw[dy];
  }
  return j;
}

Jet compose_power_series(const Jet& a, std::span<const double> c) {
  Jet h = a;
  h.coeff(0) = 0.0;
  const int n = std::min<int>(a.order(), static_cast<int>(c.size()) - 1);
  Jet r = Jet::constant(a.layout(), a.order(), c[static_cast<std::size_t>(n)]);
  for (int k = n - 1; k >= 0; --k) {
    r = r * h;
    r.coeff(0) += c[static_cast<std::size_t>(k)];
  }
  if (n == 0) r = r + 0.0 * h;  // carry the base tag
  return r;
}

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, std::string("jet: non-finite value in ") + what);
}

}  // namespace

Jet reciprocal(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0) throw Error(ErrorCode::DomainError, "jet: division by a zero value");
  double c[kMaxJetOrder + 1];
  double p = 1.0 / a0;
  for (int k = 0; k <= a.order(); ++k) {
    c[k] = (k % 2 ? -1.0 : 1.0) * p;
    p /= a0;
  }
  return compose_power_series(a, {c, static_cast<std::size_t>(a.order() + 1)});
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

Jet pow(const Jet& a, double p) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw Error(ErrorCode::DomainError, "jet: pow requires a positive value");
  double c[kMaxJetOrder + 1];
  double binom = 1.0;
  for (int k = 0; k <= a.order(); ++k) {
    c[k] = binom * std::pow(a0, p - k);
    binom *= (p - k) / (k + 1);
  }
  return compose_power_series(a, {c, static_cast<std::size_t>(a.order() + 1)});
}

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0)) throw Error(ErrorCode::DomainError, "jet: sqrt requires a positive value");
  return pow(a, 0.5);
}

Jet exp(const Jet& a) {
  require_finite(a.value(), "exp");
  double c[kMaxJetOrder + 1];
  const double e = std::exp(a.value());
  for (int k = 0; k <= a.order(); ++k) c[k] = e / factorial(k);
  return compose_power_series(a, {c, static_cast<std::size_t>(a.order() + 1)});
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw Error(ErrorCode::DomainError, "jet: log requires a positive value");
  double c[kMaxJetOrder + 1];
  c[0] = std::log(a0);
  double p = a0;
  for (int k = 1; k <= a.order(); ++k) {
    c[k] = (k % 2 ? 1.0 : -1.0) / (k * p);
    p *= a0;
  }
  return compose_power_series(a, {c, static_cast<std::size_t>(a.order() + 1)});
}

Jet sin(const Jet& a) {
  double c[kMaxJetOrder + 1];
  const double s = std::sin(a.value()), co = std::cos(a.value());
  const double cyc[4] = {s, co, -s, -co};
  for (int k = 0; k <= a.order(); ++k) c[k] = cyc[k % 4] / factorial(k);
  return compose_power_series(a, {c, static_cast<std::size_t>(a.order() + 1)});
}

Jet cos(const Jet& a) {
  double c[kMaxJetOrder + 1];
  const double s = std::sin(a.value()), co = std::cos(a.value());
  const double cyc[4] = {co, -s, -co, s};
  for (int k = 0; k <= a.order(); ++k) c[k] = cyc[k % 4] / factorial(k);
  return compose_power_series(a, {c, static_cast<std::size_t>(a.order() + 1)});
}

Jet square(const Jet& a) { return a * a; }

Jet jet_arith(const Jet& a, const Jet& b, JetOp op, double exponent) {
  switch (op) {
    case JetOp::Add: return a + b;
    case JetOp::Mul: return a * b;
    case JetOp::Div: return a / b;
    case JetOp::Sqrt: return sqrt(a);
    case JetOp::Pow: return pow(a, exponent);
  }
  throw Error(ErrorCode::InvalidArgument, "jet: unknown operation");
}

std::uint64_t phase_tag(const PhasePoint& p) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  mix(&p.dim, sizeof p.dim);
  mix(&p.chart, sizeof p.chart);
  mix(p.x.data(), sizeof(double) * static_cast<std::size_t>(p.dim));
  mix(p.y.data(), sizeof(double) * static_cast<std::size_t>(p.dim));
  return h == 0 ? 1 : h;
}

std::string direction_name(int var, int dim) {
  return (var < dim ? "x" : "y") + std::to_string(var % dim + 1);
}

std::vector<Jet> phase_variables(const PhasePoint& point, int order) {
  const int m = point.dim;
  if (m < 1 || m > kMaxJetVars / 2) throw Error(ErrorCode::InvalidArgument, "jet: dimension out of range");
  bool zero = true;
  for (int i = 0; i < m; ++i) zero = zero && point.y[static_cast<std::size_t>(i)] == 0.0;
  if (zero) throw Error(ErrorCode::DegenerateFiber, "jet: evaluation at y = 0 is outside TM_o");
  const auto& layout = JetLayout::for_vars(2 * m);
  const auto tag = phase_tag(point);
  std::vector<Jet> vars;
  vars.reserve(static_cast<std::size_t>(2 * m));
  for (int i = 0; i < m; ++i) vars.push_back(Jet::variable(layout, order, i, point.x[static_cast<std::size_t>(i)], tag));
  for (int i = 0; i < m; ++i) vars.push_back(Jet::variable(layout, order, m + i, point.y[static_cast<std::size_t>(i)], tag));
  return vars;
}

Jet jet_lift(const ScalarField& field, const PhasePoint& point, int order) {
  const auto vars = phase_variables(point, order);
  const int m = point.dim;
  std::span<const Jet> all(vars);
  Jet out = field(all.subspan(0, static_cast<std::size_t>(m)), all.subspan(static_cast<std::size_t>(m)));
  const auto coeffs = out.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (std::isfinite(coeffs[i])) continue;
    if (i == 0) throw Error(ErrorCode::NonFinite, "jet_lift: field value is not finite");
    const auto& e = out.layout().exponents(static_cast<int>(i));
    std::string dirs;
    for (int v = 0; v < 2 * m; ++v)
      for (int k = 0; k < e[static_cast<std::size_t>(v)]; ++k) dirs += (dirs.empty() ? "" : ",") + direction_name(v, m);
    throw Error(ErrorCode::NonFinite, "jet_lift: non-finite derivative along (" + dirs + ")");
  }
  return out;
}

}  // namespace fgbc

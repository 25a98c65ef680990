#include "pearl/rings.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace pearl {

namespace {

std::atomic<std::size_t> g_support_cap{10000};

void check_cap(std::size_t size) {
  if (size > g_support_cap.load(std::memory_order_relaxed)) {
    throw TooLargeError("ring element support " + std::to_string(size) + " exceeds cap " +
                        std::to_string(g_support_cap.load()));
  }
}

// Sorts and cancels equal entries in pairs (Z₂ coefficients).
template <typename T>
std::vector<T> reduce_mod2(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  std::vector<T> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  return out;
}

// Symmetric difference of two sorted unique ranges.
template <typename T>
std::vector<T> xor_sorted(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_terms(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("", "bad integer '" + std::string(s) + "' in '" + std::string(context) + "'");
  }
  return v;
}

// Parses `<var>` or `<var>^<int>` and returns the exponent.
std::int64_t parse_power(std::string_view term, std::string_view var, std::string_view context) {
  term = trim(term);
  if (term.substr(0, var.size()) != var) {
    throw ParseError("", "expected '" + std::string(var) + "' in '" + std::string(context) + "'");
  }
  auto rest = trim(term.substr(var.size()));
  if (rest.empty()) return 1;
  if (rest.front() != '^') {
    throw ParseError("", "expected '^' in '" + std::string(context) + "'");
  }
  return parse_int(rest.substr(1), context);
}

std::string power_string(std::string_view var, std::int64_t e) {
  std::string s(var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

}  // namespace

std::size_t max_support_terms() noexcept { return g_support_cap.load(); }
void set_max_support_terms(std::size_t cap) noexcept { g_support_cap.store(cap); }

// ---------------------------------------------------------------------------
// GradedLaurent

GradedLaurent::GradedLaurent(int min_maslov) : min_maslov_(min_maslov) {
  if (min_maslov <= 0) throw PreconditionError("minimal Maslov number must be positive");
}

GradedLaurent::GradedLaurent(int min_maslov, std::vector<std::int64_t> sorted_support)
    : GradedLaurent(min_maslov) {
  check_cap(sorted_support.size());
  support_ = std::move(sorted_support);
}

GradedLaurent GradedLaurent::monomial(int min_maslov, std::int64_t exponent) {
  return GradedLaurent(min_maslov, {exponent});
}

GradedLaurent GradedLaurent::from_exponents(int min_maslov, std::vector<std::int64_t> exponents) {
  return GradedLaurent(min_maslov, reduce_mod2(std::move(exponents)));
}

std::optional<std::int64_t> GradedLaurent::exponent() const {
  if (support_.size() != 1) return std::nullopt;
  return support_.front();
}

std::optional<std::int64_t> GradedLaurent::valuation() const {
  if (support_.empty()) return std::nullopt;
  return support_.front();
}

bool GradedLaurent::coefficient(std::int64_t e) const {
  return std::binary_search(support_.begin(), support_.end(), e);
}

GradedLaurent GradedLaurent::shifted(std::int64_t k) const {
  std::vector<std::int64_t> s = support_;
  for (auto& e : s) e += k;
  return GradedLaurent(min_maslov_, std::move(s));
}

void GradedLaurent::require_same_ring(const GradedLaurent& other) const {
  if (min_maslov_ != other.min_maslov_) {
    throw IncompatibleRingError("Laurent operands have var_degree " + std::to_string(-min_maslov_) +
                                " and " + std::to_string(-other.min_maslov_));
  }
}

GradedLaurent& GradedLaurent::operator+=(const GradedLaurent& other) {
  require_same_ring(other);
  auto s = xor_sorted(support_, other.support_);
  check_cap(s.size());
  support_ = std::move(s);
  return *this;
}

GradedLaurent operator*(const GradedLaurent& a, const GradedLaurent& b) {
  a.require_same_ring(b);
  std::vector<std::int64_t> raw;
  raw.reserve(a.support_.size() * b.support_.size());
  for (auto x : a.support_) {
    for (auto y : b.support_) raw.push_back(x + y);
  }
  return GradedLaurent(a.min_maslov_, reduce_mod2(std::move(raw)));
}

GradedLaurent& GradedLaurent::operator*=(const GradedLaurent& other) {
  *this = *this * other;
  return *this;
}

std::string GradedLaurent::to_string() const {
  if (support_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (i) out += " + ";
    out += support_[i] == 0 ? std::string("1") : power_string("t", support_[i]);
  }
  return out;
}

GradedLaurent GradedLaurent::parse(std::string_view text, int min_maslov) {
  auto body = trim(text);
  if (body.empty()) throw ParseError("", "empty Laurent polynomial");
  if (body == "0") return GradedLaurent(min_maslov);
  std::vector<std::int64_t> exps;
  for (auto term : split_terms(body, '+')) {
    if (term.empty()) throw ParseError("", "empty term in '" + std::string(text) + "'");
    if (term == "1") {
      exps.push_back(0);
    } else {
      exps.push_back(parse_power(term, "t", text));
    }
  }
  return from_exponents(min_maslov, std::move(exps));
}

std::optional<std::int64_t> degree_of(const GradedLaurent& a, std::int64_t generator_degree) {
  auto e = a.exponent();
  if (!e) return std::nullopt;
  return generator_degree - *e * a.min_maslov();
}

GradedLaurent gamma_embed(std::int64_t s_power, int chern, int min_maslov) {
  if (min_maslov <= 0 || chern <= 0 || (2 * chern) % min_maslov != 0) {
    throw NotMonotoneCompatibleError("N=" + std::to_string(min_maslov) + " does not divide 2C_M=" +
                                     std::to_string(2 * chern));
  }
  return GradedLaurent::monomial(min_maslov, s_power * (2 * chern / min_maslov));
}

// ---------------------------------------------------------------------------
// PositiveLaurent

PositiveLaurent::PositiveLaurent(GradedLaurent value) : value_(std::move(value)) {
  if (value_.has_negative_exponents()) {
    throw PreconditionError("element " + value_.to_string() + " has negative exponents");
  }
}

bool specialize_sigma(const PositiveLaurent& a) { return a.value().coefficient(0); }

// ---------------------------------------------------------------------------
// Disk classes

DiskClassLattice::DiskClassLattice(std::vector<std::int64_t> maslov, std::vector<Rational> area,
                                   Rational tau, int min_maslov)
    : maslov_(std::move(maslov)), area_(std::move(area)), tau_(tau), min_maslov_(min_maslov) {
  if (min_maslov_ <= 0) throw PreconditionError("minimal Maslov number must be positive");
  if (tau_ <= 0) throw PreconditionError("monotonicity constant must be positive");
  if (area_.size() != maslov_.size()) {
    throw PreconditionError("area and Maslov functionals have different ranks");
  }
  for (std::size_t i = 0; i < maslov_.size(); ++i) {
    if (maslov_[i] % min_maslov_ != 0) {
      throw InvalidClassError("Maslov value " + std::to_string(maslov_[i]) +
                              " is not a multiple of N=" + std::to_string(min_maslov_));
    }
    if (area_[i] != tau_ * maslov_[i]) {
      throw InvalidClassError("area functional is not tau times Maslov on basis vector " +
                              std::to_string(i));
    }
  }
}

std::int64_t DiskClassLattice::maslov_of(const LatticeVector& cls) const {
  if (cls.size() != maslov_.size()) throw PreconditionError("lattice vector has wrong rank");
  return std::inner_product(cls.begin(), cls.end(), maslov_.begin(), std::int64_t{0});
}

Rational DiskClassLattice::area_of(const LatticeVector& cls) const {
  if (cls.size() != area_.size()) throw PreconditionError("lattice vector has wrong rank");
  Rational sum = 0;
  for (std::size_t i = 0; i < cls.size(); ++i) sum += area_[i] * cls[i];
  return sum;
}

namespace {

bool is_origin(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

void validate_class(const DiskClassLattice& lat, const LatticeVector& cls) {
  if (cls.size() != lat.rank()) throw PreconditionError("lattice vector has wrong rank");
  if (is_origin(cls)) return;
  if (lat.maslov_of(cls) <= 0) {
    throw InvalidClassError("disk class with non-positive Maslov index " +
                            std::to_string(lat.maslov_of(cls)));
  }
  if (lat.area_of(cls) != lat.tau() * lat.maslov_of(cls)) {
    throw InvalidClassError("disk class violates monotonicity");
  }
}

}  // namespace

DiskClassElement::DiskClassElement(LatticePtr lattice, std::vector<LatticeVector> terms)
    : lattice_(std::move(lattice)), terms_(std::move(terms)) {
  if (!lattice_) throw PreconditionError("disk class element without lattice");
  check_cap(terms_.size());
}

DiskClassElement DiskClassElement::from_multiset(LatticePtr lattice, std::vector<LatticeVector> terms) {
  for (const auto& t : terms) validate_class(*lattice, t);
  return DiskClassElement(std::move(lattice), reduce_mod2(std::move(terms)));
}

DiskClassElement DiskClassElement::zero(LatticePtr lattice) {
  return DiskClassElement(std::move(lattice), {});
}

DiskClassElement DiskClassElement::one(LatticePtr lattice) {
  LatticeVector origin(lattice->rank(), 0);
  return DiskClassElement(std::move(lattice), {origin});
}

DiskClassElement DiskClassElement::monomial(LatticePtr lattice, LatticeVector cls) {
  return from_multiset(std::move(lattice), {std::move(cls)});
}

void DiskClassElement::require_same_lattice(const DiskClassElement& other) const {
  if (lattice_ != other.lattice_ && !(*lattice_ == *other.lattice_)) {
    throw IncompatibleRingError("disk class elements over different lattices");
  }
}

DiskClassElement operator+(const DiskClassElement& a, const DiskClassElement& b) {
  a.require_same_lattice(b);
  return DiskClassElement(a.lattice_, xor_sorted(a.terms_, b.terms_));
}

DiskClassElement operator*(const DiskClassElement& a, const DiskClassElement& b) {
  a.require_same_lattice(b);
  std::vector<LatticeVector> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      LatticeVector s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
      raw.push_back(std::move(s));
    }
  }
  return DiskClassElement(a.lattice_, reduce_mod2(std::move(raw)));
}

bool operator==(const DiskClassElement& a, const DiskClassElement& b) {
  return (a.lattice_ == b.lattice_ || *a.lattice_ == *b.lattice_) && a.terms_ == b.terms_;
}

std::string DiskClassElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += " + ";
    if (is_origin(terms_[i])) {
      out += "1";
      continue;
    }
    out += "T[";
    for (std::size_t k = 0; k < terms_[i].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(terms_[i][k]);
    }
    out += "]";
  }
  return out;
}

DiskClassElement DiskClassElement::parse(std::string_view text, LatticePtr lattice) {
  auto body = trim(text);
  if (body.empty()) throw ParseError("", "empty disk class element");
  if (body == "0") return zero(std::move(lattice));
  std::vector<LatticeVector> terms;
  for (auto term : split_terms(body, '+')) {
    if (term == "1") {
      terms.emplace_back(lattice->rank(), 0);
      continue;
    }
    if (term.size() < 3 || term.substr(0, 2) != "T[" || term.back() != ']') {
      throw ParseError("", "bad disk class term '" + std::string(term) + "'");
    }
    LatticeVector v;
    for (auto c : split_terms(term.substr(2, term.size() - 3), ',')) v.push_back(parse_int(c, text));
    if (v.size() != lattice->rank()) {
      throw ParseError("", "disk class term '" + std::string(term) + "' has wrong rank");
    }
    terms.push_back(std::move(v));
  }
  return from_multiset(std::move(lattice), std::move(terms));
}

GradedLaurent specialize_q(const DiskClassElement& e) {
  const auto& lat = e.lattice();
  std::vector<std::int64_t> exps;
  exps.reserve(e.terms().size());
  for (const auto& t : e.terms()) exps.push_back(lat.maslov_of(t) / lat.min_maslov());
  return GradedLaurent::from_exponents(lat.min_maslov(), std::move(exps));
}

// ---------------------------------------------------------------------------
// Mixed ring

MixedRing MixedRing::from_relation(std::int64_t p, std::int64_t q) {
  if (p <= 0 || q <= 0) throw PreconditionError("mixed ring exponents must be positive");
  return MixedRing{p, q, q, p};
}

MixedRing MixedRing::from_chern(int chern, int min_maslov_l, int min_maslov_lp) {
  if (chern <= 0 || min_maslov_l <= 0 || min_maslov_lp <= 0 || (2 * chern) % min_maslov_l != 0 ||
      (2 * chern) % min_maslov_lp != 0) {
    throw NotMonotoneCompatibleError("minimal Maslov numbers must divide 2C_M=" +
                                     std::to_string(2 * chern));
  }
  return MixedRing{2 * chern / min_maslov_l, 2 * chern / min_maslov_lp, min_maslov_l, min_maslov_lp};
}

MixedLaurent::Exponents MixedLaurent::canonical(const MixedRing& ring, std::int64_t i, std::int64_t j) {
  std::int64_t quot = i / ring.p;
  std::int64_t rem = i % ring.p;
  if (rem < 0) {
    rem += ring.p;
    --quot;
  }
  return {rem, j + quot * ring.q};
}

MixedLaurent MixedLaurent::monomial(MixedRing ring, std::int64_t i, std::int64_t j) {
  return from_multiset(ring, {canonical(ring, i, j)});
}

MixedLaurent MixedLaurent::from_multiset(MixedRing ring, std::vector<Exponents> terms) {
  for (auto& t : terms) t = canonical(ring, t.first, t.second);
  MixedLaurent out(ring);
  out.terms_ = reduce_mod2(std::move(terms));
  check_cap(out.terms_.size());
  return out;
}

void MixedLaurent::require_same_ring(const MixedLaurent& other) const {
  if (!(ring_ == other.ring_)) {
    throw IncompatibleRingError("mixed ring operands have different (p,q)");
  }
}

bool MixedLaurent::is_pure_t1() const { return terms_.size() == 1 && terms_.front().first == 0; }

MixedLaurent operator+(const MixedLaurent& a, const MixedLaurent& b) {
  a.require_same_ring(b);
  MixedLaurent out(a.ring_);
  out.terms_ = xor_sorted(a.terms_, b.terms_);
  check_cap(out.terms_.size());
  return out;
}

MixedLaurent operator*(const MixedLaurent& a, const MixedLaurent& b) {
  a.require_same_ring(b);
  std::vector<MixedLaurent::Exponents> raw;
  raw.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) raw.emplace_back(x.first + y.first, x.second + y.second);
  }
  return MixedLaurent::from_multiset(a.ring_, std::move(raw));
}

std::string MixedLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k) out += " + ";
    auto [i, j] = terms_[k];
    std::string term;
    if (i != 0) term = power_string("t0", i);
    if (j != 0) term += (term.empty() ? "" : "*") + power_string("t1", j);
    out += term.empty() ? "1" : term;
  }
  return out;
}

MixedLaurent MixedLaurent::parse(std::string_view text, MixedRing ring) {
  auto body = trim(text);
  if (body.empty()) throw ParseError("", "empty mixed Laurent polynomial");
  if (body == "0") return MixedLaurent(ring);
  std::vector<Exponents> terms;
  for (auto term : split_terms(body, '+')) {
    if (term.empty()) throw ParseError("", "empty term in '" + std::string(text) + "'");
    std::int64_t i = 0, j = 0;
    if (term != "1") {
      for (auto factor : split_terms(term, '*')) {
        if (factor.substr(0, 2) == "t0") {
          i += parse_power(factor, "t0", text);
        } else if (factor.substr(0, 2) == "t1") {
          j += parse_power(factor, "t1", text);
        } else {
          throw ParseError("", "bad mixed factor '" + std::string(factor) + "'");
        }
      }
    }
    terms.emplace_back(i, j);
  }
  return from_multiset(ring, std::move(terms));
}

bool mixed_pure_t1_test(std::int64_t i, std::int64_t p) {
  if (i < 1 || p < 1) throw PreconditionError("mixed_pure_t1_test requires i >= 1 and p >= 1");
  return i % p == 0;
}

}  // namespace pearl

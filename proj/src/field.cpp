#include "gmap/field.hpp"

#include <map>
#include <mutex>

#include "gmap/error.hpp"

namespace gmap {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Multiply the digit vector `cur` (degree < e) by x modulo the monic `mod`.
void times_x(std::vector<unsigned>& cur, const std::vector<unsigned>& mod, unsigned p) {
  const std::size_t e = cur.size();
  unsigned top = cur[e - 1];
  for (std::size_t i = e - 1; i > 0; --i) cur[i] = cur[i - 1];
  cur[0] = 0;
  if (top != 0)
    for (std::size_t i = 0; i < e; ++i) cur[i] = (cur[i] + (p - top) * mod[i]) % p;
}

}  // namespace

GaloisField::GaloisField(unsigned p, unsigned e) : p_(p), e_(e) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > (1u << 20)) throw Error(ErrorCode::ResourceLimit, "field order exceeds 2^20");
  }
  q_ = static_cast<Elem>(q);

  auto encode = [&](const std::vector<unsigned>& d) {
    Elem v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
  };

  // Search monic polynomials x^e + c_{e-1}x^{e-1} + ... + c_0 in increasing
  // order of the digit encoding of (c_0..c_{e-1}); keep the first primitive one.
  for (Elem idx = 1; idx < q_; ++idx) {
    std::vector<unsigned> mod(e + 1, 0);
    Elem t = idx;
    for (unsigned i = 0; i < e; ++i) {
      mod[i] = t % p;
      t /= p;
    }
    mod[e] = 1;
    if (mod[0] == 0) continue;
    std::vector<unsigned> cur(e, 0);
    cur[0] = 1;
    std::vector<Elem> exps;
    exps.reserve(q_ - 1);
    bool primitive = true;
    for (Elem k = 0; k < q_ - 1; ++k) {
      Elem v = encode(cur);
      if (k > 0 && v == 1) {
        primitive = false;
        break;
      }
      exps.push_back(v);
      times_x(cur, mod, p);
    }
    if (!primitive || encode(cur) != 1) continue;
    modulus_ = mod;
    exp_ = std::move(exps);
    break;
  }
  if (modulus_.empty()) throw Error(ErrorCode::Inconsistent, "no primitive polynomial found");
  log_.assign(q_, 0);
  for (Elem k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
  alpha_ = q_ > 2 ? exp_[1] : 1;
}

std::shared_ptr<const GaloisField> GaloisField::get(unsigned p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const GaloisField>(p, e);
  cache.emplace(key, f);
  return f;
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (e_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  Elem out = 0, scale = 1;
  while (a != 0 || b != 0) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (a == 0 || p_ == 2) return a;
  if (e_ == 1) return p_ - a;
  Elem out = 0, scale = 1;
  while (a != 0) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::ZeroDenominator, "division by zero in F_q");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

GaloisField::Elem GaloisField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<unsigned> GaloisField::digits(Elem a) const {
  std::vector<unsigned> d(e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

GaloisField::Elem GaloisField::from_digits(const std::vector<unsigned>& d) const {
  if (d.size() > e_) throw Error(ErrorCode::InvalidArgument, "too many digits for field element");
  Elem v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i] % p_;
  return v;
}

std::string GaloisField::format(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto d = digits(a);
  std::string out;
  for (unsigned i = e_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "alpha";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

bool GaloisField::is_atomic(Elem a) const {
  if (e_ == 1 || a == 0) return true;
  auto d = digits(a);
  int nonzero = 0;
  for (unsigned x : d) nonzero += x != 0;
  return nonzero == 1;
}

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->characteristic() != to_->characteristic() || to_->degree() % from_->degree() != 0)
    throw Error(ErrorCode::InvalidArgument, "no embedding between the given fields");
  if (from_->degree() == to_->degree() || from_->degree() == 1) return;
  const auto& mod = from_->modulus();
  GaloisField::Elem root = 0;
  bool found = false;
  for (GaloisField::Elem c = 1; c < to_->order() && !found; ++c) {
    GaloisField::Elem acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = to_->add(to_->mul(acc, c), to_->from_int(mod[i]));
    if (acc == 0) {
      root = c;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::Inconsistent, "modulus has no root in the target field");
  table_.resize(from_->order());
  for (GaloisField::Elem a = 0; a < from_->order(); ++a) {
    auto d = from_->digits(a);
    GaloisField::Elem acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = to_->add(to_->mul(acc, root), to_->from_int(d[i]));
    table_[a] = acc;
  }
}

}  // namespace gmap

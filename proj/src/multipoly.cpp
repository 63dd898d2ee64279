#include "dlc/multipoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace dlc::poly {
namespace {

// graded-lex descending: higher total degree first, then lexicographically
// larger exponent vector first
bool term_before(const Term& a, const Term& b) {
  std::size_t da = 0, db = 0;
  for (auto e : a.exp) da += e;
  for (auto e : b.exp) db += e;
  if (da != db) return da > db;
  return a.exp > b.exp;
}

std::int64_t mod_p(std::int64_t c, std::uint32_t p) {
  c %= (std::int64_t)p;
  if (c < 0) c += p;
  return c;
}

}  // namespace

MultiPoly MultiPoly::constant(std::vector<std::string> coords, std::int64_t c) {
  MultiPoly r(std::move(coords));
  if (c) r.terms_.push_back({std::vector<std::uint16_t>(r.coords_.size(), 0), c});
  return r;
}

MultiPoly MultiPoly::variable(std::vector<std::string> coords, std::size_t var,
                              std::uint16_t e, std::int64_t c) {
  MultiPoly r(std::move(coords));
  if (var >= r.coords_.size()) throw std::out_of_range("variable index");
  if (c) {
    std::vector<std::uint16_t> exp(r.coords_.size(), 0);
    exp[var] = e;
    r.terms_.push_back({std::move(exp), c});
  }
  return r;
}

std::size_t MultiPoly::total_degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_) {
    std::size_t td = 0;
    for (auto e : t.exp) td += e;
    d = std::max(d, td);
  }
  return d;
}

std::size_t MultiPoly::find_coord(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return i;
  return npos;
}

void MultiPoly::add_term(std::vector<std::uint16_t> exp, std::int64_t coef) {
  if (exp.size() != coords_.size()) throw std::invalid_argument("term arity");
  terms_.push_back({std::move(exp), coef});
}

void MultiPoly::normalize() {
  std::map<std::vector<std::uint16_t>, std::int64_t> acc;
  for (auto& t : terms_) acc[t.exp] += t.coef;
  terms_.clear();
  for (auto& [e, c] : acc)
    if (c) terms_.push_back({e, c});
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return term_before(a, b); });
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (coords_ != o.coords_) throw std::invalid_argument("coordinate mismatch");
  MultiPoly r(coords_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return *this + o.scaled(-1);
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (coords_ != o.coords_) throw std::invalid_argument("coordinate mismatch");
  MultiPoly r(coords_);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      std::vector<std::uint16_t> e(coords_.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = (std::uint16_t)(a.exp[i] + b.exp[i]);
      r.terms_.push_back({std::move(e), a.coef * b.coef});
    }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::scaled(std::int64_t c) const {
  MultiPoly r(coords_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

MultiPoly MultiPoly::pow(std::uint32_t e) const {
  MultiPoly r = constant(coords_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

MultiPoly MultiPoly::twist(std::uint32_t k) const {
  MultiPoly r(coords_);
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    for (auto& e : t.exp) {
      const std::uint32_t ne = e * k;
      if (ne > 0xFFFF) throw std::overflow_error("twist exponent");
      e = (std::uint16_t)ne;
    }
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(coords_);
  for (const auto& t : terms_) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coef *= d.exp[var];
    d.exp[var] -= 1;
    r.terms_.push_back(std::move(d));
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::substitute(std::size_t var,
                                const MultiPoly& replacement) const {
  if (replacement.coords_ != coords_)
    throw std::invalid_argument("coordinate mismatch");
  MultiPoly r(coords_);
  std::vector<MultiPoly> rep_pow{constant(coords_, 1)};
  for (const auto& t : terms_) {
    while (rep_pow.size() <= t.exp[var])
      rep_pow.push_back(rep_pow.back() * replacement);
    Term base = t;
    base.exp[var] = 0;
    MultiPoly one_term(coords_);
    one_term.terms_.push_back(base);
    r = r + one_term * rep_pow[t.exp[var]];
  }
  return r;
}

MultiPoly MultiPoly::homogenize(std::size_t tvar) const {
  const std::size_t d = total_degree();
  MultiPoly r(coords_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) {
    std::size_t td = 0;
    for (auto e : t.exp) td += e;
    t.exp[tvar] = (std::uint16_t)(t.exp[tvar] + (d - td));
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::aligned_to(std::vector<std::string> new_coords) const {
  MultiPoly r(std::move(new_coords));
  std::vector<std::size_t> where(coords_.size(), npos);
  for (std::size_t i = 0; i < coords_.size(); ++i)
    where[i] = r.find_coord(coords_[i]);
  for (const auto& t : terms_) {
    std::vector<std::uint16_t> e(r.coords_.size(), 0);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (t.exp[i] == 0) continue;
      if (where[i] == npos)
        throw std::invalid_argument("dropped coordinate still used: " +
                                    coords_[i]);
      e[where[i]] = t.exp[i];
    }
    r.terms_.push_back({std::move(e), t.coef});
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::canonical(std::uint32_t p) const {
  MultiPoly r(coords_);
  std::map<std::vector<std::uint16_t>, std::int64_t> acc;
  for (const auto& t : terms_) acc[t.exp] += t.coef;
  for (auto& [e, c] : acc) {
    const std::int64_t cc = mod_p(c, p);
    if (cc) r.terms_.push_back({e, cc});
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return term_before(a, b); });
  if (!r.terms_.empty() && r.terms_.front().coef != 1) {
    // scale by the inverse of the leading coefficient
    std::uint32_t lead = (std::uint32_t)r.terms_.front().coef, inv = 1;
    std::uint32_t b = lead;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
    }
    for (auto& t : r.terms_) t.coef = mod_p(t.coef * inv, p);
  }
  return r;
}

std::string MultiPoly::key(std::uint32_t p) const {
  const MultiPoly c = canonical(p);
  std::string k;
  for (const auto& t : c.terms_) {
    for (auto e : t.exp) {
      k += std::to_string(e);
      k += ',';
    }
    k += ':';
    k += std::to_string(t.coef);
    k += '|';
  }
  return k;
}

std::uint32_t MultiPoly::eval(const gf::Field& f,
                              const std::vector<std::uint32_t>& point) const {
  if (point.size() != coords_.size())
    throw std::invalid_argument("point arity");
  std::uint32_t acc = 0;
  for (const auto& t : terms_) {
    std::int64_t c = t.coef % (std::int64_t)f.p();
    if (c < 0) c += f.p();
    std::uint32_t v = f.from_int((std::uint64_t)c);
    for (std::size_t i = 0; i < point.size() && v; ++i)
      if (t.exp[i]) v = f.mul(v, f.pow(point[i], t.exp[i]));
    acc = f.add(acc, v);
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k) s += " + ";
    bool printed = false;
    std::size_t td = 0;
    for (auto e : t.exp) td += e;
    if (t.coef != 1 || td == 0) {
      s += std::to_string(t.coef);
      printed = true;
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (!t.exp[i]) continue;
      if (printed) s += "*";
      s += coords_[i];
      if (t.exp[i] > 1) {
        s += "^";
        s += std::to_string(t.exp[i]);
      }
      printed = true;
    }
  }
  return s;
}

std::string MultiPoly::to_json() const {
  nlohmann::ordered_json j;
  j["coords"] = coords_;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : terms_) {
    nlohmann::ordered_json jt;
    jt["exp"] = t.exp;
    jt["coef"] = t.coef;
    j["terms"].push_back(std::move(jt));
  }
  return j.dump();
}

MultiPoly MultiPoly::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MultiPoly r(j.at("coords").get<std::vector<std::string>>());
  for (const auto& jt : j.at("terms")) {
    r.add_term(jt.at("exp").get<std::vector<std::uint16_t>>(),
               jt.at("coef").get<std::int64_t>());
  }
  r.normalize();
  return r;
}

}  // namespace dlc::poly

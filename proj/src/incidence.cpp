#include "lnposet/incidence.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "lnposet/complex.hpp"
#include "lnposet/errors.hpp"

namespace lnposet {

namespace {

inline void checked_add(std::int64_t& acc, std::int64_t v, Element x, Element y) {
  if (__builtin_add_overflow(acc, v, &acc)) throw Overflow(x, y);
}

// First failure inside an OpenMP region; rethrown on the calling thread.
class PendingOverflow {
 public:
  void record(const Overflow& e) {
#pragma omp critical(lnposet_overflow)
    if (!error_) error_ = e;
    flagged_.store(true, std::memory_order_relaxed);
  }
  bool flagged() const { return flagged_.load(std::memory_order_relaxed); }
  void rethrow() const {
    if (error_) throw *error_;
  }

 private:
  std::atomic<bool> flagged_{false};
  std::optional<Overflow> error_;
};

}  // namespace

std::set<std::int64_t> MobiusTable::range(const FinitePoset& p) const {
  std::set<std::int64_t> out;
  for (Element x = 0; x < m_; ++x)
    for (Element y = 0; y < m_; ++y)
      if (p.leq(x, y)) out.insert((*this)(x, y));
  return out;
}

std::optional<std::pair<Element, Element>> first_difference(const MobiusTable& a, const MobiusTable& b) {
  if (a.size() != b.size()) return std::pair<Element, Element>{0, 0};
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < a.size(); ++y)
      if (a(x, y) != b(x, y)) return std::pair{x, y};
  return std::nullopt;
}

IncidenceMatrix zeta_matrix(const FinitePoset& p) {
  IncidenceMatrix s;
  s.order = linear_extension(p);
  const std::size_t m = s.order.size();
  s.entries.assign(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (p.leq(s.order[i], s.order[j])) s.entries[i * m + j] = 1;
  return s;
}

namespace {

// Serial reference: dense products of the strictly upper part N, skipping zeros.
std::vector<std::int64_t> series_inverse_serial(const IncidenceMatrix& s) {
  const std::size_t m = s.size();
  std::vector<std::int64_t> result(m * m, 0), power(m * m, 0), next(m * m);
  for (std::size_t i = 0; i < m; ++i) result[i * m + i] = power[i * m + i] = 1;
  for (std::int64_t sign = -1;; sign = -sign) {
    std::fill(next.begin(), next.end(), 0);
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        const std::int64_t a = power[i * m + k];
        if (a == 0) continue;
        for (std::size_t j = k + 1; j < m; ++j) {
          if (s.at(k, j) == 0) continue;
          checked_add(next[i * m + j], a, s.order[i], s.order[j]);
        }
      }
    }
    for (std::size_t idx = 0; idx < m * m; ++idx) {
      if (next[idx] == 0) continue;
      nonzero = true;
      std::int64_t term;
      if (__builtin_mul_overflow(next[idx], sign, &term)) throw Overflow(s.order[idx / m], s.order[idx % m]);
      checked_add(result[idx], term, s.order[idx / m], s.order[idx % m]);
    }
    if (!nonzero) break;
    power.swap(next);
  }
  return result;
}

// Row-sharded form: each row of N^k is pushed through successor lists of N.
std::vector<std::int64_t> series_inverse_parallel(const IncidenceMatrix& s) {
  const std::size_t m = s.size();
  std::vector<std::vector<std::size_t>> succ(m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = k + 1; j < m; ++j)
      if (s.at(k, j) != 0) succ[k].push_back(j);

  std::vector<std::int64_t> result(m * m, 0), power(m * m, 0), next(m * m);
  for (std::size_t i = 0; i < m; ++i) result[i * m + i] = power[i * m + i] = 1;
  const auto rows = static_cast<std::int64_t>(m);
  for (std::int64_t sign = -1;; sign = -sign) {
    PendingOverflow pending;
    int nonzero = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(| : nonzero)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
      if (pending.flagged()) continue;
      const auto i = static_cast<std::size_t>(ii);
      std::int64_t* out = &next[i * m];
      std::fill(out, out + m, 0);
      try {
        // Rows of N^k vanish left of position i + k, so start at i.
        for (std::size_t k = i; k < m; ++k) {
          const std::int64_t a = power[i * m + k];
          if (a == 0) continue;
          for (std::size_t j : succ[k]) checked_add(out[j], a, s.order[i], s.order[j]);
        }
        for (std::size_t j = i; j < m; ++j) {
          if (out[j] == 0) continue;
          nonzero = 1;
          std::int64_t term;
          if (__builtin_mul_overflow(out[j], sign, &term)) throw Overflow(s.order[i], s.order[j]);
          checked_add(result[i * m + j], term, s.order[i], s.order[j]);
        }
      } catch (const Overflow& e) {
        pending.record(e);
      }
    }
    pending.rethrow();
    if (nonzero == 0) break;
    power.swap(next);
  }
  return result;
}

}  // namespace

MobiusTable mobius_by_inversion(const FinitePoset& p, Exec exec) {
  const IncidenceMatrix s = zeta_matrix(p);
  const std::size_t m = s.size();
  const std::vector<std::int64_t> inverse =
      exec == Exec::kSerial ? series_inverse_serial(s) : series_inverse_parallel(s);
  MobiusTable mu(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) mu.set(s.order[i], s.order[j], inverse[i * m + j]);
  if (auto bad = find_recursion_violation(p, mu)) {
    throw std::logic_error("series inverse fails the Möbius recursion at (" + std::to_string(bad->first) +
                           ", " + std::to_string(bad->second) + ")");
  }
  return mu;
}

std::vector<std::int64_t> mobius_row(const FinitePoset& p, Element x) {
  const std::size_t m = p.size();
  std::vector<std::int64_t> row(m, 0);
  const Row& above = p.up_row(x);
  // Process targets in a linear extension so every mu(x, z) with z < y is final.
  std::vector<Element> targets;
  for (auto y = above.find_first(); y != Row::npos; y = above.find_next(y)) targets.push_back(y);
  std::sort(targets.begin(), targets.end(),
            [&](Element a, Element b) { return p.down_row(a).count() < p.down_row(b).count(); });
  for (Element y : targets) {
    if (y == x) {
      row[y] = 1;
      continue;
    }
    std::int64_t sum = 0;
    const Row between = above & p.down_row(y);
    for (auto z = between.find_first(); z != Row::npos; z = between.find_next(z))
      if (z != y) checked_add(sum, row[z], x, y);
    if (__builtin_sub_overflow(std::int64_t{0}, sum, &row[y])) throw Overflow(x, y);
  }
  return row;
}

MobiusTable mobius_by_recursion(const FinitePoset& p, Exec exec) {
  const std::size_t m = p.size();
  MobiusTable mu(m);
  if (exec == Exec::kSerial) {
    // Serial reference: fill column by column along a linear extension.
    for (Element y : linear_extension(p)) {
      const Row& below = p.down_row(y);
      for (auto x = below.find_first(); x != Row::npos; x = below.find_next(x)) {
        if (x == y) {
          mu.set(x, y, 1);
          continue;
        }
        std::int64_t sum = 0;
        const Row between = p.up_row(x) & below;
        for (auto z = between.find_first(); z != Row::npos; z = between.find_next(z))
          if (z != y) checked_add(sum, mu(x, z), x, y);
        mu.set(x, y, -sum);
      }
    }
    return mu;
  }

  PendingOverflow pending;
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t xx = 0; xx < rows; ++xx) {
    if (pending.flagged()) continue;
    const auto x = static_cast<Element>(xx);
    try {
      const std::vector<std::int64_t> row = mobius_row(p, x);
      for (Element y = 0; y < m; ++y) mu.set(x, y, row[y]);
    } catch (const Overflow& e) {
      pending.record(e);
    }
  }
  pending.rethrow();
  return mu;
}

std::optional<std::pair<Element, Element>> find_recursion_violation(const FinitePoset& p, const MobiusTable& mu) {
  const std::size_t m = p.size();
  if (mu.size() != m) return std::pair<Element, Element>{0, 0};
  for (Element x = 0; x < m; ++x) {
    for (Element y = 0; y < m; ++y) {
      if (!p.leq(x, y)) {
        if (mu(x, y) != 0) return std::pair{x, y};
        continue;
      }
      const Row between = p.up_row(x) & p.down_row(y);
      std::int64_t from_left = 0, from_right = 0;
      for (auto z = between.find_first(); z != Row::npos; z = between.find_next(z)) {
        from_left += mu(x, z);
        from_right += mu(z, y);
      }
      const std::int64_t delta = x == y ? 1 : 0;
      if (from_left != delta || from_right != delta) return std::pair{x, y};
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> integrate(const FinitePoset& p, std::span<const std::int64_t> f) {
  if (f.size() != p.size()) throw InvalidArgument("function must be defined on every element");
  std::vector<std::int64_t> s(p.size(), 0);
  for (Element x = 0; x < p.size(); ++x) {
    const Row& above = p.up_row(x);
    for (auto y = above.find_first(); y != Row::npos; y = above.find_next(y)) checked_add(s[x], f[y], x, y);
  }
  return s;
}

std::vector<std::int64_t> mobius_invert(const FinitePoset& p, const MobiusTable& mu, std::span<const std::int64_t> s) {
  if (s.size() != p.size() || mu.size() != p.size())
    throw InvalidArgument("function and table must match the poset size");
  std::vector<std::int64_t> f(p.size(), 0);
  for (Element x = 0; x < p.size(); ++x) {
    const Row& above = p.up_row(x);
    for (auto y = above.find_first(); y != Row::npos; y = above.find_next(y)) {
      std::int64_t term;
      if (__builtin_mul_overflow(mu(x, y), s[y], &term)) throw Overflow(x, y);
      checked_add(f[x], term, x, y);
    }
  }
  return f;
}

std::vector<std::int64_t> mobius_invert(const FinitePoset& p, std::span<const std::int64_t> s) {
  return mobius_invert(p, mobius_by_recursion(p), s);
}

HallCheck hall_check(const FinitePoset& p, Element x, Element y) {
  if (x >= p.size() || y >= p.size()) throw InvalidArgument("element out of range");
  if (!p.less(x, y)) throw NotComparable(x, y);
  const std::int64_t mu = mobius_row(p, x)[y];
  const Subposet open = interval(p, x, y, /*open=*/true);
  std::int64_t chi;
  try {
    chi = euler_characteristic(nerve(open.poset));
  } catch (const FaceLimitExceeded&) {
    chi = euler_characteristic(nerve_f_vector(open.poset));
  }
  return HallCheck{mu, chi, 1 + mu == chi};
}

}  // namespace lnposet

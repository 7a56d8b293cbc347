#include "lnposet/complex.hpp"

#include <algorithm>
#include <set>

#include "lnposet/errors.hpp"

namespace lnposet {

SimplicialScheme nerve(const FinitePoset& p, std::size_t face_cap) {
  const std::size_t m = p.size();
  SimplicialScheme k;
  for (Element x = 0; x < m; ++x) k.vertices.push_back(x);

  std::vector<Row> strictly_above(m);
  for (Element x = 0; x < m; ++x) {
    strictly_above[x] = p.up_row(x);
    strictly_above[x].reset(x);
  }

  // Each chain is generated once, from its minimum, by extending upward.
  std::vector<Element> chain;
  auto extend = [&](auto&& self, const Row& candidates) -> void {
    if (k.faces.size() >= face_cap) throw FaceLimitExceeded("nerve has more than " + std::to_string(face_cap) + " faces");
    std::vector<Element> face = chain;
    std::sort(face.begin(), face.end());
    k.faces.push_back(std::move(face));
    for (auto y = candidates.find_first(); y != Row::npos; y = candidates.find_next(y)) {
      chain.push_back(y);
      self(self, candidates & strictly_above[y]);
      chain.pop_back();
    }
  };
  for (Element x = 0; x < m; ++x) {
    chain.assign(1, x);
    extend(extend, strictly_above[x]);
  }
  std::sort(k.faces.begin(), k.faces.end());
  return k;
}

bool is_downward_closed(const SimplicialScheme& k) {
  std::set<std::vector<Element>> family(k.faces.begin(), k.faces.end());
  for (const auto& face : k.faces) {
    if (face.empty()) return false;
    if (face.size() == 1) continue;
    // Codimension-one faces suffice: closure under those implies closure under all.
    for (std::size_t drop = 0; drop < face.size(); ++drop) {
      std::vector<Element> sub;
      for (std::size_t i = 0; i < face.size(); ++i)
        if (i != drop) sub.push_back(face[i]);
      if (!family.contains(sub)) return false;
    }
  }
  return true;
}

std::vector<std::int64_t> f_vector(const SimplicialScheme& k) {
  std::vector<std::int64_t> f;
  for (const auto& face : k.faces) {
    if (f.size() < face.size()) f.resize(face.size(), 0);
    ++f[face.size() - 1];
  }
  return f;
}

std::vector<std::int64_t> nerve_f_vector(const FinitePoset& p) {
  const std::size_t m = p.size();
  const std::vector<Element> order = linear_extension(p);
  // ending[x][l] = number of chains with l + 1 elements whose top is x.
  std::vector<std::vector<std::int64_t>> ending(m);
  std::vector<std::int64_t> f;
  for (Element y : order) {
    auto& row = ending[y];
    row.assign(1, 1);
    for (auto x = p.down_row(y).find_first(); x != Row::npos; x = p.down_row(y).find_next(x)) {
      if (x == y) continue;
      const auto& below = ending[x];
      if (row.size() < below.size() + 1) row.resize(below.size() + 1, 0);
      for (std::size_t l = 0; l < below.size(); ++l)
        if (__builtin_add_overflow(row[l + 1], below[l], &row[l + 1])) throw Overflow(x, y);
    }
    if (f.size() < row.size()) f.resize(row.size(), 0);
    for (std::size_t l = 0; l < row.size(); ++l)
      if (__builtin_add_overflow(f[l], row[l], &f[l])) throw Overflow(y, y);
  }
  return f;
}

std::int64_t euler_characteristic(const std::vector<std::int64_t>& f) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 == 0) ? f[i] : -f[i];
  return chi;
}

std::int64_t euler_characteristic(const SimplicialScheme& k) { return euler_characteristic(f_vector(k)); }

}  // namespace lnposet

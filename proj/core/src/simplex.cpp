#include "stackyfan/simplex.hpp"

#include "stackyfan/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace stackyfan {

namespace {

// Number of ways to write `level` as an ordered sum of `parts` nonnegative integers.
std::int64_t compositions(std::int64_t level, int parts) {
  if (parts == 0) return level == 0 ? 1 : 0;
  // C(level + parts - 1, parts - 1)
  std::int64_t out = 1;
  for (int i = 1; i < parts; ++i) out = out * (level + i) / i;
  return out;
}

void check_simplex(const DilatedSimplex& s) {
  if (s.r < 0 || s.n < 1) throw DomainError("a dilated simplex needs r >= 0 and n >= 1");
}

}  // namespace

std::int64_t SimplexPoint::level() const { return std::accumulate(coords.begin(), coords.end(), std::int64_t{0}); }

FaceSelector::FaceSelector(std::initializer_list<int> s) : FaceSelector(std::vector<int>(s)) {}

FaceSelector::FaceSelector(std::vector<int> s) : support(std::move(s)) {
  std::sort(support.begin(), support.end());
  if (support.empty() || std::adjacent_find(support.begin(), support.end()) != support.end() || support.front() < 0)
    throw DomainError("a face support must be a nonempty set of coordinate indices");
}

bool FaceSelector::contains(const SimplexPoint& p) const {
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    if (p.coords[i] != 0 && !std::binary_search(support.begin(), support.end(), static_cast<int>(i))) return false;
  return support.back() < static_cast<int>(p.coords.size());
}

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<int> seen(image_.size(), 0);
  for (int x : image_) {
    if (x < 0 || x >= static_cast<int>(image_.size()) || seen[static_cast<std::size_t>(x)]++)
      throw DomainError("not a permutation");
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> im(static_cast<std::size_t>(k));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int k, int a, int b) {
  auto p = identity(k);
  std::swap(p.image_[static_cast<std::size_t>(a)], p.image_[static_cast<std::size_t>(b)]);
  return p;
}

Permutation Permutation::cycle(int k, const std::vector<int>& elements) {
  auto p = identity(k);
  for (std::size_t i = 0; i < elements.size(); ++i)
    p.image_[static_cast<std::size_t>(elements[i])] = elements[(i + 1) % elements.size()];
  return Permutation(p.image_);
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DomainError("composing permutations of different arity");
  std::vector<int> im(a.image_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = a(b(static_cast<int>(i)));
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(image_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<int> im(static_cast<std::size_t>(k));
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::vector<Permutation> symmetric_group_generators(int k) {
  std::vector<Permutation> out;
  for (int i = 0; i + 1 < k; ++i) out.push_back(Permutation::transposition(k, i, i + 1));
  return out;
}

// ---------------------------------------------------------------- points

std::size_t lattice_point_count(const DilatedSimplex& s) {
  check_simplex(s);
  return static_cast<std::size_t>(compositions(s.n, s.r + 1));
}

std::vector<SimplexPoint> lattice_points(const DilatedSimplex& s) {
  check_simplex(s);
  std::vector<SimplexPoint> out;
  out.reserve(lattice_point_count(s));
  const auto d = static_cast<std::size_t>(s.r + 1);
  std::vector<std::int64_t> cur(d, 0);
  // Lexicographic order: recursion over the leading coordinate, ascending.
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == d) {
      cur[i] = left;
      out.push_back(SimplexPoint{cur});
      return;
    }
    for (std::int64_t a = 0; a <= left; ++a) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, s.n);
  return out;
}

std::vector<SimplexPoint> interior_points(const DilatedSimplex& s) {
  std::vector<SimplexPoint> out;
  for (auto& p : lattice_points(s))
    if (std::all_of(p.coords.begin(), p.coords.end(), [](std::int64_t x) { return x >= 1; })) out.push_back(std::move(p));
  return out;
}

bool is_lattice_point(const DilatedSimplex& s, const SimplexPoint& p) {
  if (p.coords.size() != static_cast<std::size_t>(s.r + 1)) return false;
  if (std::any_of(p.coords.begin(), p.coords.end(), [](std::int64_t x) { return x < 0; })) return false;
  return p.level() == s.n;
}

std::size_t point_index(const DilatedSimplex& s, const SimplexPoint& p) {
  if (!is_lattice_point(s, p)) throw DomainError("point is not a lattice point of the simplex");
  std::int64_t rank = 0;
  std::int64_t left = s.n;
  const int d = s.r + 1;
  for (int i = 0; i + 1 < d; ++i) {
    const std::int64_t c = p.coords[static_cast<std::size_t>(i)];
    for (std::int64_t a = 0; a < c; ++a) rank += compositions(left - a, d - i - 1);
    left -= c;
  }
  return static_cast<std::size_t>(rank);
}

SimplexPoint restrict_point(const SimplexPoint& p, const FaceSelector& f) {
  if (!f.contains(p)) throw DomainError("point does not lie on the face");
  SimplexPoint out;
  out.coords.reserve(f.support.size());
  for (int i : f.support) out.coords.push_back(p.coords[static_cast<std::size_t>(i)]);
  return out;
}

SimplexPoint apply_symmetry(const Permutation& g, const SimplexPoint& p) {
  if (static_cast<std::size_t>(g.size()) != p.coords.size())
    throw DomainError("permutation arity " + std::to_string(g.size()) + " does not match point dimension " +
                      std::to_string(p.coords.size()));
  SimplexPoint out{std::vector<std::int64_t>(p.coords.size())};
  for (std::size_t i = 0; i < p.coords.size(); ++i) out.coords[static_cast<std::size_t>(g(static_cast<int>(i)))] = p.coords[i];
  return out;
}

}  // namespace stackyfan

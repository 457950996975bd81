#include "prony2d/generate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "prony2d/error.hpp"

namespace prony2d {

namespace {

class Board {
 public:
  explicit Board(int size) : size_(size), cells_(static_cast<std::size_t>(size * size), false) {}

  int size() const { return size_; }
  bool filled(int i, int j) const {
    return i >= 0 && j >= 0 && i < size_ && j < size_ && cells_[static_cast<std::size_t>(i * size_ + j)];
  }
  void set(int i, int j, bool v) { cells_[static_cast<std::size_t>(i * size_ + j)] = v; }

  // Every empty cell is reachable from outside the board.
  bool hole_free() const {
    const int p = size_ + 2;
    std::vector<char> seen(static_cast<std::size_t>(p * p), 0);
    std::vector<std::pair<int, int>> stack{{-1, -1}};
    seen[0] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const auto [i, j] = stack.back();
      stack.pop_back();
      ++reached;
      for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const int a = i + di, b = j + dj;
        if (a < -1 || b < -1 || a > size_ || b > size_ || filled(a, b)) continue;
        auto& s = seen[static_cast<std::size_t>((a + 1) * p + (b + 1))];
        if (s) continue;
        s = 1;
        stack.push_back({a, b});
      }
    }
    return reached + static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), true)) ==
           static_cast<std::size_t>(p * p);
  }

  // No 2x2 block touching (i, j) holds exactly two diagonal cells.
  bool no_diagonal_contact(int i, int j) const {
    for (int a = i - 1; a <= i; ++a)
      for (int b = j - 1; b <= j; ++b) {
        const bool p = filled(a, b), q = filled(a + 1, b + 1), r = filled(a + 1, b), s = filled(a, b + 1);
        if ((p && q && !r && !s) || (r && s && !p && !q)) return false;
      }
    return true;
  }

  // Counterclockwise boundary corners with collinear points removed.
  std::vector<std::pair<int, int>> boundary() const {
    const int p = size_ + 1;
    std::map<int, int> next;
    auto key = [p](int x, int y) { return y * p + x; };
    for (int i = 0; i < size_; ++i)
      for (int j = 0; j < size_; ++j) {
        if (!filled(i, j)) continue;
        if (!filled(i, j - 1)) next[key(i, j)] = key(i + 1, j);
        if (!filled(i + 1, j)) next[key(i + 1, j)] = key(i + 1, j + 1);
        if (!filled(i, j + 1)) next[key(i + 1, j + 1)] = key(i, j + 1);
        if (!filled(i - 1, j)) next[key(i, j + 1)] = key(i, j);
      }
    std::vector<std::pair<int, int>> loop;
    if (next.empty()) return loop;
    const int start = next.begin()->first;
    int cur = start;
    do {
      loop.push_back({cur % p, cur / p});
      cur = next.at(cur);
    } while (cur != start);
    std::vector<std::pair<int, int>> corners;
    const std::size_t n = loop.size();
    for (std::size_t k = 0; k < n; ++k) {
      const auto [x0, y0] = loop[(k + n - 1) % n];
      const auto [x1, y1] = loop[k];
      const auto [x2, y2] = loop[(k + 1) % n];
      if ((x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) != 0) corners.push_back(loop[k]);
    }
    return corners;
  }

 private:
  int size_;
  std::vector<bool> cells_;
};

}  // namespace

Polygon random_rectilinear_polygon(CounterRng& rng, int max_vertices, int grid) {
  if (max_vertices < 4) throw Error(ErrorKind::InvalidParameter, "a rectilinear polygon needs at least 4 vertices");
  if (grid < 1) throw Error(ErrorKind::InvalidParameter, "grid must be >= 1");
  Board board(grid);
  std::vector<std::pair<int, int>> cells{{rng.uniform_int(0, grid - 1), rng.uniform_int(0, grid - 1)}};
  board.set(cells[0].first, cells[0].second, true);
  const int attempts = rng.uniform_int(0, 6 * max_vertices);
  for (int k = 0; k < attempts; ++k) {
    const auto [ci, cj] = cells[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(cells.size()) - 1))];
    static constexpr std::pair<int, int> kSteps[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    const auto [di, dj] = kSteps[rng.uniform_int(0, 3)];
    const int i = ci + di, j = cj + dj;
    if (i < 0 || j < 0 || i >= grid || j >= grid || board.filled(i, j)) continue;
    board.set(i, j, true);
    if (board.no_diagonal_contact(i, j) && board.hole_free() &&
        static_cast<int>(board.boundary().size()) <= max_vertices) {
      cells.push_back({i, j});
    } else {
      board.set(i, j, false);
    }
  }
  const double scale = 1.0 / (grid + 2);
  std::vector<Vec2> verts;
  for (auto [x, y] : board.boundary()) verts.push_back({(x + 1) * scale, (y + 1) * scale});
  return validate_polygon(std::move(verts));
}

Polygon random_star_polygon(CounterRng& rng, int n) {
  if (n < 3) throw Error(ErrorKind::InvalidParameter, "a polygon needs at least 3 vertices");
  for (;;) {
    std::vector<double> angles(static_cast<std::size_t>(n));
    for (auto& a : angles) a = rng.uniform(0.0, 2.0 * kPi);
    std::sort(angles.begin(), angles.end());
    bool spread = true;
    for (int k = 0; k < n; ++k) {
      const double gap = k + 1 < n ? angles[k + 1] - angles[k] : angles[0] + 2.0 * kPi - angles[k];
      spread = spread && gap >= 0.2 * 2.0 * kPi / n && gap < kPi;
    }
    if (!spread) continue;
    std::vector<Vec2> verts;
    for (double a : angles) {
      const double r = rng.uniform(0.12, 0.45);
      verts.push_back({0.5 + r * std::cos(a), 0.5 + r * std::sin(a)});
    }
    if (polygon_violations(verts).empty()) return validate_polygon(std::move(verts));
  }
}

}  // namespace prony2d

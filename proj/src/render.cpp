#include "rankwalk/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rankwalk {

namespace {

constexpr double kCell = 20.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string svg_open(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
         "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
}

}  // namespace

std::string young_ascii(const std::vector<long>& parts) {
  std::string out;
  for (long p : parts) {
    out.append(static_cast<std::size_t>(p), '#');
    out.push_back('\n');
  }
  return out;
}

std::string young_svg(const std::vector<long>& parts) {
  const long rows = static_cast<long>(parts.size());
  const long cols = parts.empty() ? 0 : *std::max_element(parts.begin(), parts.end());
  const double margin = 10.0;
  const double w = 2 * margin + std::max(1L, cols) * kCell;
  const double h = 2 * margin + std::max(1L, rows) * kCell;
  std::ostringstream s;
  s << svg_open(w, h);
  s << "<line class=\"axis\" x1=\"" << fmt(margin) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(w - margin / 2)
    << "\" y2=\"" << fmt(margin) << "\" stroke=\"black\"/>\n";
  s << "<line class=\"axis\" x1=\"" << fmt(margin) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(margin)
    << "\" y2=\"" << fmt(h - margin / 2) << "\" stroke=\"black\"/>\n";
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < parts[static_cast<std::size_t>(r)]; ++c) {
      s << "<rect class=\"cell\" x=\"" << fmt(margin + c * kCell) << "\" y=\"" << fmt(margin + r * kCell)
        << "\" width=\"" << fmt(kCell) << "\" height=\"" << fmt(kCell)
        << "\" fill=\"#9ecae1\" stroke=\"#08519c\"/>\n";
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string rothe_svg(const Permutation& perm) {
  const int n = perm.size();
  const double margin = 10.0;
  const double side = 2 * margin + std::max(1, n) * kCell;
  std::ostringstream s;
  s << svg_open(side, side);
  for (int k = 0; k <= n; ++k) {
    const double p = margin + k * kCell;
    s << "<line class=\"grid\" x1=\"" << fmt(margin) << "\" y1=\"" << fmt(p) << "\" x2=\"" << fmt(margin + n * kCell)
      << "\" y2=\"" << fmt(p) << "\" stroke=\"#bbbbbb\"/>\n";
    s << "<line class=\"grid\" x1=\"" << fmt(p) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(p)
      << "\" y2=\"" << fmt(margin + n * kCell) << "\" stroke=\"#bbbbbb\"/>\n";
  }
  // Row i is position i, column j is value j.
  for (const auto& [i, j] : rothe_cells(perm)) {
    s << "<rect class=\"cell\" x=\"" << fmt(margin + (j - 1) * kCell) << "\" y=\"" << fmt(margin + (i - 1) * kCell)
      << "\" width=\"" << fmt(kCell) << "\" height=\"" << fmt(kCell) << "\" fill=\"#fdae6b\" stroke=\"#a63603\"/>\n";
  }
  for (int i = 1; i <= n; ++i) {
    s << "<circle class=\"point\" cx=\"" << fmt(margin + (perm(i) - 0.5) * kCell) << "\" cy=\""
      << fmt(margin + (i - 0.5) * kCell) << "\" r=\"" << fmt(kCell / 5) << "\" fill=\"black\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string lozenge_svg(const PlanePartition& pp) {
  const int a = pp.rows();
  const int b = pp.cols();
  const int c = pp.cap();
  const double cos30 = std::sqrt(3.0) / 2;
  const double margin = 10.0;
  // (i, j, k) -> screen; i and j run down-left and down-right, k runs up.
  const double x0 = margin + a * cos30 * kCell;
  const double y0 = margin + c * kCell;
  auto px = [&](double i, double j) { return x0 + (j - i) * cos30 * kCell; };
  auto py = [&](double i, double j, double k) { return y0 + ((i + j) * 0.5 - k) * kCell; };
  auto quad = [&](std::ostringstream& s, const char* cls, const char* fill, const double (&p)[4][3]) {
    s << "<polygon class=\"" << cls << "\" points=\"";
    for (int q = 0; q < 4; ++q) {
      s << fmt(px(p[q][0], p[q][1])) << ',' << fmt(py(p[q][0], p[q][1], p[q][2])) << (q < 3 ? " " : "");
    }
    s << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  };

  const double w = 2 * margin + (a + b) * cos30 * kCell;
  const double h = 2 * margin + (c + (a + b) * 0.5) * kCell;
  std::ostringstream s;
  s << svg_open(w, h);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      const double k = pp.at(i, j);
      const double p[4][3] = {{double(i), double(j), k}, {i + 1.0, double(j), k}, {i + 1.0, j + 1.0, k},
                              {double(i), j + 1.0, k}};
      quad(s, "top", "#f0f0f0", p);
    }
  }
  // The wall facing +i in column j at level k sits at depth #{i : h(i,j) > k}.
  for (int j = 0; j < b; ++j) {
    for (int k = 0; k < c; ++k) {
      int depth = 0;
      while (depth < a && pp.at(depth, j) > k) ++depth;
      const double d = depth;
      const double p[4][3] = {{d, double(j), double(k)}, {d, j + 1.0, double(k)}, {d, j + 1.0, k + 1.0},
                              {d, double(j), k + 1.0}};
      quad(s, "left", "#6baed6", p);
    }
  }
  for (int i = 0; i < a; ++i) {
    for (int k = 0; k < c; ++k) {
      int depth = 0;
      while (depth < b && pp.at(i, depth) > k) ++depth;
      const double d = depth;
      const double p[4][3] = {{double(i), d, double(k)}, {i + 1.0, d, double(k)}, {i + 1.0, d, k + 1.0},
                              {double(i), d, k + 1.0}};
      quad(s, "right", "#2171b5", p);
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace rankwalk

#include "kdq/plot.hpp"

#include <cstdio>
#include <sstream>

#include "kdq/random.hpp"

namespace kdq {

namespace {

constexpr double kSize = 480.0;
constexpr double kMargin = 56.0;
constexpr const char* kRed = "#d62728";
constexpr const char* kBlue = "#1f4e9c";
constexpr const char* kGrey = "#8c8c8c";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Frame {
 public:
  explicit Frame(unsigned d) : lo_(0.5), hi_(d + 0.5) {}

  double x(double n_a) const { return kMargin + (n_a - lo_) / (hi_ - lo_) * (kSize - 2 * kMargin); }
  double y(double n_b) const { return kSize - kMargin - (n_b - lo_) / (hi_ - lo_) * (kSize - 2 * kMargin); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace

const char* to_string(Marker m) noexcept {
  switch (m) {
    case Marker::Classical:
      return "classical";
    case Marker::Nonclassical:
      return "nonclassical";
    case Marker::Hole:
      return "hole";
    case Marker::Unknown:
      return "unknown";
  }
  return "?";
}

std::vector<PlotPoint> plot_markers(const TransitionMatrix& u, const UncertaintyDiagram& diagram, std::uint64_t seed,
                                    double support_eps, double classical_eps) {
  std::vector<PlotPoint> out;
  out.reserve(diagram.points().size());
  for (const auto& p : diagram.points()) {
    PlotPoint pp{p.n_a, p.n_b, Marker::Unknown};
    if (p.status == PointStatus::Hole) {
      pp.marker = Marker::Hole;
    } else if (p.status == PointStatus::Present) {
      const std::uint64_t tag = static_cast<std::uint64_t>(p.n_a) << 32 | p.n_b;
      const StateVector psi = witness_state(u, p, derive_seed(seed, tag), support_eps);
      pp.marker = classify_state(psi, u, classical_eps).verdict == Verdict::Classical ? Marker::Classical
                                                                                     : Marker::Nonclassical;
    }
    out.push_back(pp);
  }
  return out;
}

std::string render_csv(const UncertaintyDiagram& diagram) {
  std::string out = "na,nb,status\n";
  for (const auto& p : diagram.points()) {
    out += std::to_string(p.n_a) + "," + std::to_string(p.n_b) + "," + to_string(p.status) + "\n";
  }
  return out;
}

std::string render_svg(unsigned d, const std::vector<PlotPoint>& points) {
  const Frame f(d);
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes box and integer ticks
  s << "<rect x=\"" << fmt(f.x(f.lo())) << "\" y=\"" << fmt(f.y(f.hi())) << "\" width=\""
    << fmt(f.x(f.hi()) - f.x(f.lo())) << "\" height=\"" << fmt(f.y(f.lo()) - f.y(f.hi()))
    << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
  for (unsigned k = 1; k <= d; ++k) {
    const double x = f.x(k);
    const double y = f.y(k);
    s << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(f.y(f.lo())) << "\" x2=\"" << fmt(x) << "\" y2=\""
      << fmt(f.y(f.lo()) - 5) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(f.y(f.lo()) + 18) << "\">" << k << "</text>\n";
    s << "<line x1=\"" << fmt(f.x(f.lo())) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(f.x(f.lo()) + 5)
      << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt(f.x(f.lo()) - 14) << "\" y=\"" << fmt(y + 4) << "\">" << k << "</text>\n";
  }
  s << "<text x=\"" << fmt(kSize / 2) << "\" y=\"" << fmt(kSize - 14) << "\">n_A</text>\n";
  s << "<text x=\"16\" y=\"" << fmt(kSize / 2) << "\" transform=\"rotate(-90 16 " << fmt(kSize / 2)
    << ")\">n_B</text>\n";
  s << "<text x=\"" << fmt(kSize / 2) << "\" y=\"24\" font-size=\"14\">d = " << d << "</text>\n";
  s << "</g>\n";

  // n_a * n_b = d, clipped to the frame
  s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6,4\" points=\"";
  constexpr int kSteps = 240;
  const double a0 = d / f.hi() > f.lo() ? d / f.hi() : f.lo();
  const double a1 = d / f.lo() < f.hi() ? d / f.lo() : f.hi();
  for (int k = 0; k <= kSteps; ++k) {
    const double a = a0 + (a1 - a0) * k / kSteps;
    if (k) s << ' ';
    s << fmt(f.x(a)) << ',' << fmt(f.y(d / a));
  }
  s << "\"/>\n";

  // n_a + n_b = d + 1
  s << "<line x1=\"" << fmt(f.x(f.lo())) << "\" y1=\"" << fmt(f.y(d + 1 - f.lo())) << "\" x2=\""
    << fmt(f.x(d + 1 - f.lo())) << "\" y2=\"" << fmt(f.y(f.lo()))
    << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"8,3,2,3\"/>\n";

  const double r = 6.0;
  for (const auto& p : points) {
    const double x = f.x(p.n_a);
    const double y = f.y(p.n_b);
    switch (p.marker) {
      case Marker::Classical:
        s << "<rect x=\"" << fmt(x - r) << "\" y=\"" << fmt(y - r) << "\" width=\"" << fmt(2 * r) << "\" height=\""
          << fmt(2 * r) << "\" fill=\"" << kRed << "\"/>\n";
        break;
      case Marker::Nonclassical:
        s << "<polygon points=\"" << fmt(x) << ',' << fmt(y - r - 1) << ' ' << fmt(x + r + 1) << ',' << fmt(y) << ' '
          << fmt(x) << ',' << fmt(y + r + 1) << ' ' << fmt(x - r - 1) << ',' << fmt(y) << "\" fill=\"" << kBlue
          << "\"/>\n";
        break;
      case Marker::Hole:
        s << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r) << "\" fill=\"none\" stroke=\""
          << kRed << "\" stroke-width=\"2\"/>\n";
        break;
      case Marker::Unknown:
        s << "<path d=\"M" << fmt(x - r) << ' ' << fmt(y - r) << " L" << fmt(x + r) << ' ' << fmt(y + r) << " M"
          << fmt(x - r) << ' ' << fmt(y + r) << " L" << fmt(x + r) << ' ' << fmt(y - r) << "\" stroke=\"" << kGrey
          << "\" stroke-width=\"2\"/>\n";
        break;
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace kdq

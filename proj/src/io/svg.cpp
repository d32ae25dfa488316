#include "io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/types.hpp"

namespace hrlab {

namespace {

constexpr int kW = 640, kH = 420, kPad = 50;

std::string fmt(double v) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string header() {
  std::ostringstream ss;
  ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
     << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  return ss.str();
}

std::string axes(const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream ss;
  ss << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad
     << "\" y2=\"" << kH - kPad << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\""
     << kH - kPad << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
     << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n"
     << "<text x=\"14\" y=\"" << kH / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << kH / 2
     << ")\">" << ylabel << "</text>\n";
  return ss.str();
}

double sx(double u) { return kPad + u * (kW - 2 * kPad); }   // u in [0,1]
double sy(double u) { return kH - kPad - u * (kH - 2 * kPad); }

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* color) {
  std::ostringstream ss;
  ss << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) ss << fmt(x) << "," << fmt(y) << " ";
  ss << "\"/>\n";
  return ss.str();
}

}  // namespace

std::string svg_dispersion(const nlohmann::json& payload) {
  if (!payload.contains("band")) throw DomainError("plot: payload has no dispersion band");
  const auto& band = payload.at("band");
  if (band.empty()) throw DomainError("plot: empty dispersion payload");
  double plo = 1e300, phi = -1e300, slo = 1e300, shi = -1e300;
  for (const auto& row : band) {
    const double p = row.at("p").get<double>(), s = row.at("sigma").get<double>();
    plo = std::min(plo, p);
    phi = std::max(phi, p);
    slo = std::min(slo, s);
    shi = std::max(shi, s);
  }
  if (shi - slo < 1e-9) {
    slo -= 0.5;
    shi += 0.5;
  }
  std::vector<std::pair<double, double>> pts;
  std::vector<std::pair<double, double>> sorted;
  for (const auto& row : band)
    sorted.push_back({row.at("p").get<double>(), row.at("sigma").get<double>()});
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [p, s] : sorted)
    pts.push_back({sx((p - plo) / (phi - plo + 1e-300)), sy((s - slo) / (shi - slo))});
  std::ostringstream ss;
  ss << header() << axes("p", "Sigma(p)") << polyline(pts, "#1f77b4");
  for (const auto& [x, y] : pts)
    ss << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  ss << "</svg>\n";
  return ss.str();
}

std::string svg_lightcone(const nlohmann::json& payload) {
  if (!payload.contains("samples")) throw DomainError("plot: payload has no lightcone samples");
  const auto& samples = payload.at("samples");
  if (samples.empty()) throw DomainError("plot: empty lightcone payload");
  double tmax = 0, xmax = 0, lmin = 0, lmax = -300;
  for (const auto& s : samples) {
    tmax = std::max(tmax, s.at("t").get<double>());
    xmax = std::max(xmax, double(s.at("dist").get<int>()));
    const double n = s.at("comm_norm").get<double>();
    if (n > 0) {
      lmax = std::max(lmax, std::log10(n));
      lmin = std::min(lmin, std::log10(n));
    }
  }
  lmin = std::max(lmin, lmax - 14.0);
  std::ostringstream ss;
  ss << header() << axes("t", "dist");
  for (const auto& s : samples) {
    const double t = s.at("t").get<double>();
    const double d = double(s.at("dist").get<int>());
    const double n = s.at("comm_norm").get<double>();
    double u = n > 0 ? (std::log10(n) - lmin) / (lmax - lmin + 1e-300) : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    const int shade = int(255 - 215 * u);
    ss << "<rect x=\"" << fmt(sx(t / (tmax + 1e-300)) - 8) << "\" y=\""
       << fmt(sy(d / (xmax + 1e-300)) - 8) << "\" width=\"16\" height=\"16\" fill=\"rgb("
       << shade << "," << shade << ",255)\"/>\n";
  }
  if (payload.contains("certificate")) {
    const double v = payload.at("certificate").at("v").get<double>();
    std::vector<std::pair<double, double>> line;
    for (double t = 0; t <= tmax; t += tmax / 64.0)
      line.push_back({sx(t / (tmax + 1e-300)), sy(std::min(v * t, xmax) / (xmax + 1e-300))});
    ss << polyline(line, "#d62728");
  }
  ss << "</svg>\n";
  return ss.str();
}

std::string svg_packet(const nlohmann::json& payload) {
  if (!payload.contains("worldline")) throw DomainError("plot: payload has no packet worldline");
  const auto& wl = payload.at("worldline");
  if (wl.empty()) throw DomainError("plot: empty packet payload");
  std::ostringstream ss;
  ss << header() << axes("x", "t");
  const size_t nt = wl.size();
  for (size_t i = 0; i < nt; ++i) {
    const auto& prof = wl[i].at("abs");
    const size_t m = prof.size();
    double pmax = 1e-300;
    for (const auto& v : prof) pmax = std::max(pmax, v.get<double>());
    for (size_t x = 0; x < m; ++x) {
      const double u = prof[x].get<double>() / pmax;
      if (u < 0.02) continue;
      const int shade = int(255 - 215 * u);
      ss << "<rect x=\"" << fmt(sx(double(x) / m)) << "\" y=\""
         << fmt(sy(double(i + 1) / nt)) << "\" width=\"" << fmt(double(kW - 2 * kPad) / m)
         << "\" height=\"" << fmt(double(kH - 2 * kPad) / nt) << "\" fill=\"rgb(" << shade
         << ",255," << shade << ")\"/>\n";
    }
  }
  ss << "</svg>\n";
  return ss.str();
}

std::string svg_overlap(const nlohmann::json& payload) {
  if (!payload.contains("times")) throw DomainError("plot: payload has no overlap series");
  const auto& ts = payload.at("times");
  if (ts.empty()) throw DomainError("plot: empty overlap payload");
  std::vector<double> t, v;
  for (const auto& x : ts) t.push_back(x.get<double>());
  for (const auto& x : payload.at("overlap_abs")) v.push_back(x.get<double>());
  double tmax = *std::max_element(t.begin(), t.end());
  double vmax = *std::max_element(v.begin(), v.end());
  if (vmax <= 0) vmax = 1;
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < t.size() && i < v.size(); ++i)
    pts.push_back({sx(t[i] / tmax), sy(v[i] / vmax)});
  std::ostringstream ss;
  ss << header() << axes("t", "|overlap|") << polyline(pts, "#2ca02c") << "</svg>\n";
  return ss.str();
}

std::string render_svg(const std::string& kind, const nlohmann::json& payload) {
  if (kind == "dispersion") return svg_dispersion(payload);
  if (kind == "lightcone") return svg_lightcone(payload);
  if (kind == "packet") return svg_packet(payload);
  if (kind == "overlap") return svg_overlap(payload);
  throw DomainError("unknown plot kind: " + kind);
}

}  // namespace hrlab

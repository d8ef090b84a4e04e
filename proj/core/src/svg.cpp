#include "fracperc/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "fracperc/errors.hpp"

namespace fracperc {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

struct Marker {
  std::string name;
  std::string label;
  double value;
};

}  // namespace

std::string render_band_chart(const Json& report) {
  if (!report.is_object() || !report.contains("thresholds") || !report.at("thresholds").is_array())
    throw InputError("band chart needs a report with a \"thresholds\" array");
  std::vector<Marker> markers;
  for (const auto& t : report.at("thresholds")) {
    if (!t.contains("value_float") || !t.at("value_float").is_number()) continue;
    const double v = t.at("value_float").get<double>();
    if (!(v > 0.0 && v <= 1.0)) continue;
    markers.push_back({t.value("name", std::string()), t.value("value_exact", std::string()), v});
  }
  std::stable_sort(markers.begin(), markers.end(), [](const Marker& a, const Marker& b) { return a.value < b.value; });

  const double width = 800, height = 120 + 18.0 * static_cast<double>(markers.size());
  const double left = 40, right = 760, top = 30, bar = 40;
  const double p_max = markers.empty() ? 1.0 : std::min(1.0, 1.25 * markers.back().value);
  auto x_of = [&](double p) { return left + (right - left) * p / p_max; };
  static const char* palette[] = {"#d9d9d9", "#fde0c5", "#facba6", "#f8b58b", "#f59e72", "#f2855d", "#ef6a4c", "#eb4a40"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << fixed(height)
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<text x=\"" << left << "\" y=\"18\">parameter bands for p ("
     << escape(report.value("representation", std::string("report"))) << ")</text>\n";
  double prev = 0.0;
  for (std::size_t i = 0; i <= markers.size(); ++i) {
    const double next = i < markers.size() ? markers[i].value : p_max;
    os << "<rect x=\"" << fixed(x_of(prev)) << "\" y=\"" << top << "\" width=\"" << fixed(x_of(next) - x_of(prev))
       << "\" height=\"" << bar << "\" fill=\"" << palette[i % 8] << "\"/>\n";
    prev = next;
  }
  for (std::size_t i = 0; i < markers.size(); ++i) {
    const double x = x_of(markers[i].value);
    const double label_y = top + bar + 30 + 18.0 * static_cast<double>(i);
    os << "<line x1=\"" << fixed(x) << "\" y1=\"" << top << "\" x2=\"" << fixed(x) << "\" y2=\"" << fixed(label_y - 10)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fixed(x + 3) << "\" y=\"" << fixed(label_y) << "\">" << escape(markers[i].name) << " "
       << escape(markers[i].label) << "</text>\n";
  }
  os << "<line x1=\"" << left << "\" y1=\"" << top + bar << "\" x2=\"" << right << "\" y2=\"" << top + bar
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left << "\" y=\"" << top + bar + 14 << "\">0</text>\n";
  os << "<text x=\"" << right - 20 << "\" y=\"" << top + bar + 14 << "\">" << fixed(p_max) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace fracperc

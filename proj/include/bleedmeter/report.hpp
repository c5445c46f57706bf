#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "bleedmeter/metrics.hpp"
#include "bleedmeter/scribble.hpp"

namespace bleedmeter {

// Reports are emitted with sorted keys and doubles formatted to 9 significant
// digits, so identical results serialize to identical bytes.

namespace detail {

inline std::string json_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

/// Flat builder: values are pre-rendered JSON; keys render sorted.
class JsonObject {
 public:
  void set_raw(const std::string& key, std::string rendered) {
    fields_[key] = std::move(rendered);
  }
  void set_number(const std::string& key, double v) { set_raw(key, json_number(v)); }
  void set_int(const std::string& key, long long v) { set_raw(key, std::to_string(v)); }
  void set_uint(const std::string& key, unsigned long long v) {
    set_raw(key, std::to_string(v));
  }
  void set_string(const std::string& key, const std::string& v) {
    set_raw(key, json_string(v));
  }
  void set_string_array(const std::string& key, const std::vector<std::string>& vs) {
    std::string out = "[";
    for (size_t i = 0; i < vs.size(); ++i) {
      if (i) out += ", ";
      out += json_string(vs[i]);
    }
    out += "]";
    set_raw(key, out);
  }

  std::string render(int indent = 0) const {
    const std::string pad(static_cast<size_t>(indent) + 2, ' ');
    std::string out = "{";
    bool first = true;
    for (const auto& [key, value] : fields_) {
      out += first ? "\n" : ",\n";
      first = false;
      out += pad + json_string(key) + ": " + value;
    }
    out += "\n" + std::string(static_cast<size_t>(indent), ' ') + "}";
    return out;
  }

 private:
  std::map<std::string, std::string> fields_;
};

inline std::string render_canny(const CannyParams& p, int indent) {
  JsonObject o;
  o.set_number("sigma", p.sigma);
  o.set_number("th_gap", p.th_gap);
  o.set_number("th_high", p.th_high);
  o.set_number("th_low", p.th_low);
  return o.render(indent);
}

inline std::string render_slic(const SlicParams& p, int indent) {
  JsonObject o;
  o.set_number("compactness", p.compactness);
  o.set_int("max_iterations", p.max_iterations);
  o.set_int("n_clusters", p.n_clusters);
  o.set_number("sigma", p.sigma);
  return o.render(indent);
}

inline std::string render_psnr(const PsnrValue& v) {
  return v.identical ? json_string("identical") : json_number(v.db);
}

}  // namespace detail

/// Scribble provenance attached to a report when the scribble was generated
/// by this run.
struct ScribbleProvenance {
  int width = 0;
  int source_component_id = 0;
  ScribbleParams params;
};

inline std::string report_to_json(const MetricsReport& report,
                                  const ScribbleProvenance* scribble = nullptr) {
  using namespace detail;
  JsonObject root;
  if (report.cdr) root.set_number("cdr", *report.cdr);
  if (report.consistency) root.set_number("consistency", *report.consistency);
  if (report.edge_fidelity) root.set_number("edge_fidelity", *report.edge_fidelity);
  root.set_raw("kernel", report.kernel.full ? json_string("full")
                                            : std::to_string(report.kernel.size));

  JsonObject params;
  params.set_raw("canny", render_canny(report.params.canny, 4));
  params.set_int("region_radius", report.params.region_radius);
  params.set_raw("slic", render_slic(report.params.slic, 4));
  if (scribble) {
    JsonObject s;
    s.set_int("init_edge_dilation_radius", scribble->params.init_edge_dilation_radius);
    s.set_int("min_component_length", scribble->params.min_component_length);
    s.set_int("source_component_id", scribble->source_component_id);
    s.set_int("width", scribble->width);
    s.set_int("width_max", scribble->params.width_max);
    s.set_int("width_min", scribble->params.width_min);
    params.set_raw("scribble", s.render(4));
  }
  root.set_raw("params", params.render(2));

  if (report.psnr_global) root.set_raw("psnr_global_db", render_psnr(*report.psnr_global));
  if (report.psnr_local) root.set_raw("psnr_local_db", render_psnr(*report.psnr_local));
  root.set_uint("seed", report.params.seed);
  root.set_string_array("skipped", report.skipped);
  return root.render(0) + "\n";
}

/// Sidecar written next to a scribble PNG.
inline std::string scribble_sidecar_json(const Scribble& scribble, const ScribbleParams& params,
                                         const std::string& mask_png,
                                         const std::string& skeleton_png) {
  using namespace detail;
  JsonObject root;
  root.set_string("mask_png", mask_png);
  JsonObject p;
  p.set_raw("canny_gt", render_canny(params.canny_gt, 4));
  p.set_int("init_edge_dilation_radius", params.init_edge_dilation_radius);
  p.set_int("min_component_length", params.min_component_length);
  p.set_int("width_max", params.width_max);
  p.set_int("width_min", params.width_min);
  root.set_raw("params", p.render(2));
  root.set_uint("seed", params.seed);
  root.set_string("skeleton_png", skeleton_png);
  root.set_int("source_component_id", scribble.source_component_id);
  root.set_int("width", scribble.width);
  return root.render(0) + "\n";
}

}  // namespace bleedmeter

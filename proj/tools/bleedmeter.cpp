// bleedmeter: batch scoring of colorized images for color-bleeding, plus
// pseudo-scribble synthesis. Subcommands: scribble, score, batch.
//
// Exit codes: 0 success, 1 I/O or usage error, 2 degenerate input (no edges
// or no bleeding edge).

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bleedmeter/bleedmeter.hpp"

namespace fs = std::filesystem;
using namespace bleedmeter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDegenerate = 2;

struct CommonOptions {
  std::string profile;
  std::string kernel_str = "7";
  std::uint64_t seed = 0;
  int width_min = 1;
  int width_max = 5;
  int region_radius = 3;
  std::string out_dir = ".";
  int workers = 1;
  bool resize_256 = false;
  bool overlays = false;
};

std::string resolve_profile(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("BLEEDMETER_PROFILE"); env && *env) return env;
  return "imagenet";
}

KernelSpec parse_kernel(const std::string& s) {
  if (s == "full") return KernelSpec::full_frame();
  if (s == "7" || s == "15" || s == "23") return KernelSpec::of(std::stoi(s));
  throw Error("kernel must be one of 7, 15, 23, full");
}

void parse_width_range(const std::string& s, int& lo, int& hi) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw Error("width range must look like A..B");
  lo = std::stoi(s.substr(0, dots));
  hi = std::stoi(s.substr(dots + 2));
}

RgbImage load_image(const std::string& path, bool resize_256) {
  RgbImage img = read_png_rgb(path);
  if (resize_256 && (img.width != 256 || img.height != 256))
    img = resize_bilinear(img, 256, 256);
  return img;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Overlays

RgbImage paint_mask(RgbImage base, const BinaryMask& mask, std::uint8_t r, std::uint8_t g,
                    std::uint8_t b) {
  for (int y = 0; y < base.height; ++y)
    for (int x = 0; x < base.width; ++x)
      if (mask.at(x, y)) {
        base.at(x, y, 0) = r;
        base.at(x, y, 1) = g;
        base.at(x, y, 2) = b;
      }
  return base;
}

// Signed plane as a blue-white-red map, symmetric around zero.
RgbImage heatmap_signed(const Plane& p) {
  double peak = 0.0;
  for (double v : p.values) peak = std::max(peak, std::fabs(v));
  RgbImage out(p.width, p.height);
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) {
      const double t = peak > 0.0 ? p.at(x, y) / peak : 0.0;  // in [-1, 1]
      const double mag = std::fabs(t);
      std::uint8_t r = 255, g = 255, b = 255;
      if (t > 0) {
        g = b = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - mag)));
      } else if (t < 0) {
        r = g = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - mag)));
      }
      out.at(x, y, 0) = r;
      out.at(x, y, 1) = g;
      out.at(x, y, 2) = b;
    }
  return out;
}

RgbImage paint_cdr_terms(RgbImage base, const CdrResult& result) {
  auto paint = [&base](const CdrChannelDetail& d) {
    for (const CdrEdgeTerm& t : d.terms) {
      base.at(t.x, t.y, 0) = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - t.term)));
      base.at(t.x, t.y, 1) = static_cast<std::uint8_t>(std::lround(255.0 * t.term));
      base.at(t.x, t.y, 2) = 0;
    }
  };
  paint(result.a);
  paint(result.b);
  return base;
}

// ---------------------------------------------------------------------------
// Scoring jobs

struct JobSpec {
  std::string gt_path;
  std::string pred_path;
  std::string init_path;      // optional
  std::string scribble_path;  // optional; generated from init when absent
  KernelSpec kernel;
  std::uint64_t seed = 0;
};

struct JobConfig {
  CannyParams canny;
  SlicParams slic;
  int width_min = 1;
  int width_max = 5;
  int region_radius = 3;
  bool resize_256 = false;
  bool overlays = false;
};

struct RowResult {
  bool ok = false;
  bool degenerate = false;
  std::string error;
  MetricsReport report;
  std::string report_json;
};

ScribbleParams make_scribble_params(const JobConfig& cfg, std::uint64_t seed) {
  ScribbleParams p;
  p.canny_gt = cfg.canny;
  p.width_min = cfg.width_min;
  p.width_max = cfg.width_max;
  p.seed = seed;
  return p;
}

// Load or synthesize the scribble for a job. Returns false when no scribble
// is available (callers then skip the local metrics).
bool obtain_scribble(const JobSpec& job, const JobConfig& cfg, const RgbImage& gt,
                     const RgbImage* init, Scribble* out,
                     std::optional<ScribbleProvenance>* provenance, std::string* note) {
  if (!job.scribble_path.empty()) {
    out->mask = read_png_mask(job.scribble_path);
    // Pick up the skeleton written next to a generated scribble, if present.
    std::string skel = job.scribble_path;
    const auto pos = skel.rfind(".png");
    if (pos != std::string::npos) {
      skel.replace(pos, 4, "_skeleton.png");
      if (fs::exists(skel)) out->skeleton = read_png_mask(skel);
    }
    if (cfg.resize_256 && (out->mask.width != 256 || out->mask.height != 256))
      throw IoError("scribble mask must already be 256x256 when --resize-256 is set");
    return true;
  }
  if (!init) return false;
  const ScribbleParams params = make_scribble_params(cfg, job.seed);
  try {
    *out = generate_pseudo_scribble(rgb_to_lab(gt), rgb_to_lab(*init), params);
  } catch (const NoBleedingEdge&) {
    *note = "no bleeding edge found; local metrics skipped";
    return false;
  }
  ScribbleProvenance prov;
  prov.width = out->width;
  prov.source_component_id = out->source_component_id;
  prov.params = params;
  *provenance = prov;
  return true;
}

RowResult run_score_job(const JobSpec& job, const JobConfig& cfg, const fs::path& out_prefix) {
  RowResult result;
  try {
    const RgbImage gt = load_image(job.gt_path, cfg.resize_256);
    const RgbImage pred = load_image(job.pred_path, cfg.resize_256);
    std::optional<RgbImage> init;
    if (!job.init_path.empty()) init = load_image(job.init_path, cfg.resize_256);

    Scribble scribble;
    std::optional<ScribbleProvenance> provenance;
    std::string note;
    const bool have_scribble = obtain_scribble(job, cfg, gt, init ? &*init : nullptr, &scribble,
                                               &provenance, &note);
    if (!note.empty()) std::cerr << "bleedmeter: " << job.pred_path << ": " << note << "\n";

    ScoreParams params;
    params.canny = cfg.canny;
    params.slic = cfg.slic;
    params.region_radius = cfg.region_radius;
    params.seed = job.seed;

    result.report = score_pair(pred, gt, init ? &*init : nullptr,
                               have_scribble ? &scribble : nullptr, job.kernel, params);
    result.report_json =
        report_to_json(result.report, provenance ? &*provenance : nullptr);
    write_text(fs::path(out_prefix.string() + "report.json"), result.report_json);

    if (cfg.overlays) {
      if (have_scribble)
        write_png_rgb(out_prefix.string() + "overlay_scribble.png",
                      paint_mask(pred, scribble.mask, 255, 0, 0));
      const auto [da, db] = s_diff(rgb_to_lab(pred), rgb_to_lab(init ? *init : gt));
      write_png_rgb(out_prefix.string() + "sdiff_a.png", heatmap_signed(da));
      write_png_rgb(out_prefix.string() + "sdiff_b.png", heatmap_signed(db));
      if (!job.kernel.full) {
        try {
          const CdrResult detail =
              cdr_detailed(rgb_to_lab(gt), rgb_to_lab(pred), job.kernel, cfg.canny, cfg.slic);
          write_png_rgb(out_prefix.string() + "cdr_edges.png", paint_cdr_terms(pred, detail));
        } catch (const NoEdges&) {
        }
      }
    }
    result.ok = true;
  } catch (const NoEdges& e) {
    result.degenerate = true;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Subcommand: scribble

int cmd_scribble(const std::string& gt_path, const std::string& init_path,
                 const CommonOptions& opts) {
  try {
    const RgbImage gt = load_image(gt_path, opts.resize_256);
    const RgbImage init = load_image(init_path, opts.resize_256);

    ScribbleParams params;
    params.canny_gt = profile_canny_params(resolve_profile(opts.profile));
    params.width_min = opts.width_min;
    params.width_max = opts.width_max;
    params.seed = opts.seed;

    Scribble scribble;
    try {
      scribble = generate_pseudo_scribble(rgb_to_lab(gt), rgb_to_lab(init), params);
    } catch (const NoBleedingEdge&) {
      std::cerr << "bleedmeter: no bleeding edge found\n";
      return kExitDegenerate;
    }

    fs::create_directories(opts.out_dir);
    const fs::path dir(opts.out_dir);
    write_png_mask((dir / "scribble.png").string(), scribble.mask);
    write_png_mask((dir / "scribble_skeleton.png").string(), scribble.skeleton);
    write_text(dir / "scribble.json",
               scribble_sidecar_json(scribble, params, "scribble.png", "scribble_skeleton.png"));
    std::cout << (dir / "scribble.png").string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "bleedmeter: " << e.what() << "\n";
    return kExitIo;
  }
}

// ---------------------------------------------------------------------------
// Subcommand: score

int cmd_score(const std::string& gt_path, const std::string& pred_path,
              const std::string& init_path, const std::string& scribble_path,
              const CommonOptions& opts) {
  try {
    JobSpec job;
    job.gt_path = gt_path;
    job.pred_path = pred_path;
    job.init_path = init_path;
    job.scribble_path = scribble_path;
    job.kernel = parse_kernel(opts.kernel_str);
    job.seed = opts.seed;

    JobConfig cfg;
    cfg.canny = profile_canny_params(resolve_profile(opts.profile));
    cfg.width_min = opts.width_min;
    cfg.width_max = opts.width_max;
    cfg.region_radius = opts.region_radius;
    cfg.resize_256 = opts.resize_256;
    cfg.overlays = opts.overlays;

    fs::create_directories(opts.out_dir);
    const RowResult result = run_score_job(job, cfg, fs::path(opts.out_dir) / "");
    if (result.ok) {
      std::cout << (fs::path(opts.out_dir) / "report.json").string() << "\n";
      return kExitOk;
    }
    std::cerr << "bleedmeter: " << result.error << "\n";
    return result.degenerate ? kExitDegenerate : kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "bleedmeter: " << e.what() << "\n";
    return kExitIo;
  }
}

// ---------------------------------------------------------------------------
// Subcommand: batch

struct ManifestRow {
  JobSpec job;
  std::string kernel_str;
  std::string seed_str;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::vector<ManifestRow> parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("manifest is empty");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected = {"gt", "pred", "init", "scribble", "kernel", "seed"};
  if (header != expected)
    throw IoError("manifest header must be exactly: gt,pred,init,scribble,kernel,seed");

  std::vector<ManifestRow> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    fields.resize(6);
    ManifestRow row;
    row.job.gt_path = fields[0];
    row.job.pred_path = fields[1];
    row.job.init_path = fields[2];
    row.job.scribble_path = fields[3];
    row.kernel_str = fields[4];
    row.seed_str = fields[5];
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("manifest has no rows");
  return rows;
}

std::string csv_metric(const std::optional<double>& v) {
  return v ? format_g9(*v) : "";
}

std::string csv_psnr(const std::optional<PsnrValue>& v) {
  if (!v) return "";
  return v->identical ? "identical" : format_g9(v->db);
}

int cmd_batch(const std::string& manifest_path, const CommonOptions& opts) {
  std::vector<ManifestRow> rows;
  try {
    rows = parse_manifest(manifest_path);
    fs::create_directories(opts.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "bleedmeter: " << e.what() << "\n";
    return kExitIo;
  }

  JobConfig cfg;
  try {
    cfg.canny = profile_canny_params(resolve_profile(opts.profile));
  } catch (const std::exception& e) {
    std::cerr << "bleedmeter: " << e.what() << "\n";
    return kExitIo;
  }
  cfg.width_min = opts.width_min;
  cfg.width_max = opts.width_max;
  cfg.region_radius = opts.region_radius;
  cfg.resize_256 = opts.resize_256;
  cfg.overlays = opts.overlays;

  // Fill in per-row kernel and seed (seed defaults to base seed + row index).
  for (size_t i = 0; i < rows.size(); ++i) {
    try {
      rows[i].job.kernel =
          parse_kernel(rows[i].kernel_str.empty() ? opts.kernel_str : rows[i].kernel_str);
      rows[i].job.seed =
          rows[i].seed_str.empty() ? opts.seed + i : std::stoull(rows[i].seed_str);
    } catch (const std::exception& e) {
      std::cerr << "bleedmeter: row " << i << ": " << e.what() << "\n";
      return kExitIo;
    }
  }

  std::vector<RowResult> results(rows.size());
  std::atomic<size_t> next{0};
  const int n_workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(rows.size())));
  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      char prefix[32];
      std::snprintf(prefix, sizeof(prefix), "row_%04zu_", i);
      results[i] = run_score_job(rows[i].job, cfg, fs::path(opts.out_dir) / prefix);
    }
  };
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // summary.csv: one line per row plus a mean footer over the numeric values.
  std::ostringstream summary;
  summary << "row,gt,pred,status,psnr_global_db,psnr_local_db,cdr,edge_fidelity,consistency,"
             "error\n";
  struct Acc {
    double sum = 0.0;
    size_t n = 0;
    void add(const std::optional<double>& v) {
      if (v) {
        sum += *v;
        ++n;
      }
    }
    void add_psnr(const std::optional<PsnrValue>& v) {
      if (v && !v->identical) {
        sum += v->db;
        ++n;
      }
    }
    std::string mean() const { return n ? format_g9(sum / static_cast<double>(n)) : ""; }
  } acc_pg, acc_pl, acc_cdr, acc_ef, acc_con;

  size_t ok_count = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const RowResult& r = results[i];
    summary << i << ',' << rows[i].job.gt_path << ',' << rows[i].job.pred_path << ',';
    if (r.ok) {
      ++ok_count;
      summary << "ok," << csv_psnr(r.report.psnr_global) << ',' << csv_psnr(r.report.psnr_local)
              << ',' << csv_metric(r.report.cdr) << ',' << csv_metric(r.report.edge_fidelity)
              << ',' << csv_metric(r.report.consistency) << ",\n";
      acc_pg.add_psnr(r.report.psnr_global);
      acc_pl.add_psnr(r.report.psnr_local);
      acc_cdr.add(r.report.cdr);
      acc_ef.add(r.report.edge_fidelity);
      acc_con.add(r.report.consistency);
    } else {
      std::string msg = r.error;
      for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
      summary << "error,,,,,," << msg << "\n";
    }
  }
  summary << "mean,,,," << acc_pg.mean() << ',' << acc_pl.mean() << ',' << acc_cdr.mean() << ','
          << acc_ef.mean() << ',' << acc_con.mean() << ",\n";

  try {
    write_text(fs::path(opts.out_dir) / "summary.csv", summary.str());
  } catch (const std::exception& e) {
    std::cerr << "bleedmeter: " << e.what() << "\n";
    return kExitIo;
  }

  std::cout << ok_count << "/" << rows.size() << " rows scored; summary at "
            << (fs::path(opts.out_dir) / "summary.csv").string() << "\n";
  return ok_count > 0 ? kExitOk : kExitIo;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_kernel) {
  cmd->add_option("--profile", opts.profile, "Parameter profile")
      ->check(CLI::IsMember(profile_names()));
  cmd->add_option("--seed", opts.seed, "Base seed for all random draws");
  cmd->add_option("--width-range", [&opts](const std::vector<std::string>& vals) {
        parse_width_range(vals.back(), opts.width_min, opts.width_max);
        return opts.width_min >= 1 && opts.width_max <= 11 && opts.width_min <= opts.width_max;
      },
      "Scribble width range A..B within 1..11 (default 1..5)");
  cmd->add_option("--region-radius", opts.region_radius,
                  "Chebyshev radius of the edge-metric region mask")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out-dir", opts.out_dir, "Output directory");
  cmd->add_flag("--resize-256", opts.resize_256, "Bilinear-resize inputs to 256x256 first");
  if (with_kernel)
    cmd->add_option("--kernel", opts.kernel_str, "Evaluation kernel")
        ->check(CLI::IsMember({"7", "15", "23", "full"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color-bleeding metrics and pseudo-scribble synthesis for colorized images"};
  app.require_subcommand(1);

  CommonOptions scribble_opts, score_opts, batch_opts;
  std::string gt_path, init_path, pred_path, scribble_path, manifest_path;

  CLI::App* scribble_cmd =
      app.add_subcommand("scribble", "Synthesize a pseudo-scribble marking a bleeding edge");
  scribble_cmd->add_option("--gt", gt_path, "Ground-truth PNG")->required();
  scribble_cmd->add_option("--init", init_path, "Initial colorization PNG")->required();
  add_common_flags(scribble_cmd, scribble_opts, false);

  CLI::App* score_cmd = app.add_subcommand("score", "Score one prediction against ground truth");
  score_cmd->add_option("--gt", gt_path, "Ground-truth PNG")->required();
  score_cmd->add_option("--pred", pred_path, "Prediction PNG")->required();
  score_cmd->add_option("--init", init_path, "Initial colorization PNG (enables consistency)");
  score_cmd->add_option("--scribble", scribble_path,
                        "Scribble mask PNG (generated from --init when omitted)");
  score_cmd->add_flag("--overlays", score_opts.overlays,
                      "Emit scribble overlay, S_diff heatmaps and CDR edge markers");
  add_common_flags(score_cmd, score_opts, true);

  CLI::App* batch_cmd = app.add_subcommand("batch", "Score every row of a CSV manifest");
  batch_cmd->add_option("manifest", manifest_path, "CSV manifest (gt,pred,init,scribble,kernel,seed)")
      ->required();
  batch_cmd->add_option("--workers", batch_opts.workers, "Worker thread count")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_flag("--overlays", batch_opts.overlays, "Emit overlays per row");
  add_common_flags(batch_cmd, batch_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIo;
  }

  if (scribble_cmd->parsed()) return cmd_scribble(gt_path, init_path, scribble_opts);
  if (score_cmd->parsed()) return cmd_score(gt_path, pred_path, init_path, scribble_path, score_opts);
  if (batch_cmd->parsed()) return cmd_batch(manifest_path, batch_opts);
  return kExitIo;
}

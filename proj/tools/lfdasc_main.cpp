// Copyright 2026 The lfdasc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the light-field DoF toolkit: scene scoring,
// DoF-antialiasing rendering, dataset characterization, study analysis, and
// the blur-level predictor. All outputs are deterministic for fixed inputs.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfdasc/characterize.hpp"
#include "lfdasc/dasc.hpp"
#include "lfdasc/dof_render.hpp"
#include "lfdasc/display_model.hpp"
#include "lfdasc/lightfield.hpp"
#include "lfdasc/predictor.hpp"
#include "lfdasc/study_analysis.hpp"

namespace {

using nlohmann::json;

std::string format_value(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw std::runtime_error("cannot create output file '" + out_path + "'");
  out << content;
}

json dasc_to_json(const lfdasc::DascSceneResult& r) {
  json objects = json::array();
  for (const lfdasc::DascObjectReport& o : r.objects) {
    objects.push_back({
        {"label", lfdasc::detail::format_color(o.label)},
        {"factors",
         {{"entropy_bits", o.geometric.entropy_bits},
          {"edge_density", o.geometric.edge_density},
          {"curvature_std", o.geometric.curvature_std},
          {"entropy_norm", o.normalized.entropy_norm},
          {"edge_norm", o.normalized.edge_norm},
          {"curvature_norm", o.normalized.curvature_norm},
          {"dof_overlap", o.position.dof_overlap},
          {"d_min", o.position.d_min},
          {"d_max", o.position.d_max},
          {"span_l", o.position.span_l},
          {"z_min_m", o.z_min},
          {"z_max_m", o.z_max},
          {"nu", o.nu}}},
        {"case", lfdasc::to_string(o.tag)},
        {"contribution", o.contribution},
    });
  }
  return json{{"scene", r.scene},
              {"f", r.score_f},
              {"m", r.object_count},
              {"per_object", objects},
              {"metadata",
               {{"d_phi_m", r.d_phi_m},
                {"d_phi_derived_m", r.d_phi_derived_m},
                {"edge_threshold", r.edge_threshold},
                {"curvature_units", "meters per squared pixel pitch"}}}};
}

std::string dasc_to_csv(const lfdasc::DascSceneResult& r) {
  std::ostringstream csv;
  csv << "scene,label,entropy_bits,edge_density,curvature_std,entropy_norm,"
         "edge_norm,curvature_norm,dof_overlap,d_min,d_max,span_l,nu,case,"
         "contribution\n";
  for (const lfdasc::DascObjectReport& o : r.objects) {
    csv << r.scene << ',' << lfdasc::detail::format_color(o.label) << ','
        << format_value(o.geometric.entropy_bits) << ','
        << format_value(o.geometric.edge_density) << ','
        << format_value(o.geometric.curvature_std) << ','
        << format_value(o.normalized.entropy_norm) << ','
        << format_value(o.normalized.edge_norm) << ','
        << format_value(o.normalized.curvature_norm) << ','
        << format_value(o.position.dof_overlap) << ','
        << format_value(o.position.d_min) << ','
        << format_value(o.position.d_max) << ','
        << format_value(o.position.span_l) << ',' << format_value(o.nu) << ','
        << lfdasc::to_string(o.tag) << ',' << format_value(o.contribution)
        << '\n';
  }
  return csv.str();
}

int run_dasc(const std::string& manifest_path, const std::string& out_path,
             const std::string& csv_path) {
  const lfdasc::DascSceneResult result = lfdasc::compute_dasc(
      std::filesystem::path(manifest_path));
  write_output(out_path, dasc_to_json(result).dump(2) + "\n");
  if (!csv_path.empty()) write_output(csv_path, dasc_to_csv(result));
  return 0;
}

int run_render(const std::string& manifest_path, const std::string& out_dir,
               int radius) {
  const lfdasc::Manifest m =
      lfdasc::load_manifest(std::filesystem::path(manifest_path));
  const lfdasc::LightField lf = lfdasc::load_light_field(m);
  const lfdasc::LightField filtered = lfdasc::render_all(lf, radius);
  std::filesystem::create_directories(out_dir);
  lfdasc::write_views(filtered, out_dir, m.view_pattern, m.view_bit_depth);
  std::cout << "radius=" << radius << " views="
            << filtered.views.size() << " dir=" << out_dir << "\n";
  return 0;
}

int run_characterize(const std::string& manifest_path,
                     const std::string& out_path) {
  const lfdasc::Manifest m =
      lfdasc::load_manifest(std::filesystem::path(manifest_path));
  const lfdasc::LightField lf = lfdasc::load_light_field(m);
  const lfdasc::CharacterizationReport report =
      lfdasc::characterize(lf, m.scene);

  std::ostringstream csv;
  csv << "scene,feature,s,t,value\n";
  for (const lfdasc::ViewStat& v : report.si)
    csv << report.scene << ",si," << v.s << ',' << v.t << ','
        << format_value(v.value) << '\n';
  for (const lfdasc::PairStat& p : report.ti)
    csv << report.scene << ",ti," << p.s << ',' << p.t << ','
        << format_value(p.value) << '\n';
  csv << report.scene << ",si_max,,," << format_value(report.si_max) << '\n';
  csv << report.scene << ",si_mean,,," << format_value(report.si_mean) << '\n';
  csv << report.scene << ",ti_max,,," << format_value(report.ti_max) << '\n';
  csv << report.scene << ",ti_mean,,," << format_value(report.ti_mean) << '\n';
  csv << report.scene << ",cf,,," << format_value(report.cf) << '\n';
  csv << report.scene << ",contrast,,," << format_value(report.contrast)
      << '\n';
  write_output(out_path, csv.str());
  return 0;
}

int run_analyze(const std::string& votes_path, const std::string& out_path,
                int r_hat, double smoothing,
                const std::vector<int>& allowed_radii) {
  std::set<int> allowed(allowed_radii.begin(), allowed_radii.end());
  const std::vector<lfdasc::ComparisonMatrix> matrices =
      lfdasc::ingest_votes(votes_path, allowed);

  lfdasc::BtOptions options;
  options.smoothing = smoothing;

  json scenes = json::array();
  for (const lfdasc::ComparisonMatrix& m : matrices) {
    const lfdasc::SceneAnalysis a = lfdasc::analyze_scene(m, r_hat, options);
    json lrt_entries = json::array();
    for (const auto& [pair, lambda] : a.lrt_table)
      lrt_entries.push_back({{"a", pair.first},
                             {"b", pair.second},
                             {"lambda", lambda},
                             {"reject", lambda >= lfdasc::kChiSquareCritical}});
    json peaks = json::array();
    for (const lfdasc::Peak& p : a.peaks)
      peaks.push_back({{"radius", p.radius}, {"score", p.score}});
    scenes.push_back({{"scene", a.scene},
                      {"radii", a.radii},
                      {"q", a.scores.q},
                      {"iterations", a.scores.iterations},
                      {"converged", a.scores.converged},
                      {"lrt", lrt_entries},
                      {"peaks", peaks},
                      {"preferred_radius", a.preferred}});
  }
  const json out = {{"r_hat", r_hat},
                    {"chi_square_critical", lfdasc::kChiSquareCritical},
                    {"scenes", scenes}};
  write_output(out_path, out.dump(2) + "\n");
  return 0;
}

std::vector<lfdasc::FitSample> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file '" + path + "'");
  std::vector<lfdasc::FitSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = lfdasc::detail::trim(line);
    if (trimmed.empty()) continue;
    if (line_no == 1 && trimmed.rfind("f,", 0) == 0) continue;  // header
    const auto fields = lfdasc::detail::split_csv_row(trimmed);
    if (fields.size() != 2)
      throw std::runtime_error("points line " + std::to_string(line_no) +
                               ": expected 'f,radius'");
    try {
      samples.push_back({std::stod(fields[0]), std::stod(fields[1])});
    } catch (const std::exception&) {
      throw std::runtime_error("points line " + std::to_string(line_no) +
                               ": values must be numeric");
    }
  }
  return samples;
}

int run_fit(const std::string& points_path, const std::string& out_path) {
  const lfdasc::FitResult fit = lfdasc::fit_sigmoid(read_points_csv(points_path));
  if (!fit.converged)
    std::cerr << "warning: fit did not converge after " << fit.iterations
              << " iterations (residual " << format_value(fit.residual)
              << ")\n";
  const json out = {{"kappa", fit.model.kappa},
                    {"beta", fit.model.beta},
                    {"gamma", fit.model.gamma},
                    {"iterations", fit.iterations},
                    {"residual", fit.residual},
                    {"converged", fit.converged}};
  write_output(out_path, out.dump(2) + "\n");
  return 0;
}

int run_predict(const std::string& model_arg, double f, bool have_f,
                const std::string& manifest_path,
                const std::vector<int>& available) {
  const lfdasc::SigmoidModel model =
      model_arg == "reference"
          ? lfdasc::SigmoidModel::reference()
          : lfdasc::load_model(std::filesystem::path(model_arg));

  double score = f;
  if (!have_f) {
    const lfdasc::DascSceneResult r =
        lfdasc::compute_dasc(std::filesystem::path(manifest_path));
    score = r.score_f;
    std::cout << "f=" << format_value(score) << "\n";
  }
  const double raw = lfdasc::sigmoid_eval(model, score);
  const int snapped = lfdasc::predict_radius(model, score, available);
  std::cout << "raw_radius=" << format_value(raw) << "\n";
  std::cout << "snapped_radius=" << snapped << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Light field display DoF toolkit: scene complexity scoring, circular "
      "DoF-antialiasing filtering, dataset characterization, paired-vote "
      "analysis, and blur-level prediction"};
  app.require_subcommand(1);

  // dasc
  std::string dasc_manifest, dasc_out, dasc_csv;
  CLI::App* dasc = app.add_subcommand(
      "dasc", "Score a scene's complexity relative to the display DoF");
  dasc->add_option("manifest", dasc_manifest, "scene manifest JSON")
      ->required();
  dasc->add_option("-o,--out", dasc_out, "result JSON path (default: stdout)");
  dasc->add_option("--csv", dasc_csv, "also write per-object factors CSV");

  // render
  std::string render_manifest, render_out;
  int render_radius = 0;
  CLI::App* render = app.add_subcommand(
      "render", "Apply the circular DoF-antialiasing filter to a light field");
  render->add_option("--radius", render_radius, "filter radius in views")
      ->required()
      ->check(CLI::NonNegativeNumber);
  render->add_option("manifest", render_manifest, "scene manifest JSON")
      ->required();
  render->add_option("outdir", render_out, "output directory for views")
      ->required();

  // characterize
  std::string char_manifest, char_out;
  CLI::App* charac = app.add_subcommand(
      "characterize", "Per-view SI/TI and central-view CF/contrast report");
  charac->add_option("manifest", char_manifest, "scene manifest JSON")
      ->required();
  charac->add_option("-o,--out", char_out, "report CSV path (default: stdout)");

  // analyze
  std::string analyze_votes, analyze_out;
  int analyze_r_hat = lfdasc::optimal_radius(
      lfdasc::DisplayParams{}.angular_resolution_deg,
      lfdasc::capture_angular_resolution(lfdasc::CaptureParams{}));
  double analyze_smoothing = 0.0;
  std::vector<int> analyze_radii;
  CLI::App* analyze = app.add_subcommand(
      "analyze",
      "Fit pairwise-comparison scores and pick the preferred radius per scene");
  analyze->add_option("--votes", analyze_votes, "votes CSV")->required();
  analyze->add_option("-o,--out", analyze_out,
                      "results JSON path (default: stdout)");
  analyze->add_option("--r-hat", analyze_r_hat,
                      "display-optimal radius (default: reference geometry)");
  analyze->add_option("--smoothing", analyze_smoothing,
                      "pseudo-wins added per directed pair (default 0: off)");
  analyze->add_option("--radii", analyze_radii,
                      "whitelist of radii accepted in the votes file");

  // fit
  std::string fit_points, fit_out;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit the blur-level sigmoid to (f, radius) points");
  fit->add_option("--points", fit_points, "CSV with rows f,radius")->required();
  fit->add_option("-o,--out", fit_out, "model JSON path (default: stdout)");

  // predict
  std::string predict_model = "reference", predict_manifest;
  double predict_f = 0.0;
  std::vector<int> predict_available = {0, 3, 6, 9, 12, 15};
  CLI::App* predict = app.add_subcommand(
      "predict", "Map a complexity score to a blur radius");
  predict->add_option("--model", predict_model,
                      "model JSON path or 'reference'");
  CLI::Option* f_opt =
      predict->add_option("--f", predict_f, "complexity score to map");
  CLI::Option* manifest_opt = predict->add_option(
      "--manifest", predict_manifest, "score this scene instead of passing --f");
  f_opt->excludes(manifest_opt);
  predict->add_option("--available", predict_available,
                      "radii the renderer supports (default 0 3 6 9 12 15)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*dasc) return run_dasc(dasc_manifest, dasc_out, dasc_csv);
    if (*render) return run_render(render_manifest, render_out, render_radius);
    if (*charac) return run_characterize(char_manifest, char_out);
    if (*analyze)
      return run_analyze(analyze_votes, analyze_out, analyze_r_hat,
                         analyze_smoothing, analyze_radii);
    if (*fit) return run_fit(fit_points, fit_out);
    if (*predict) {
      const bool have_f = f_opt->count() > 0;
      if (!have_f && predict_manifest.empty())
        throw std::runtime_error("predict needs either --f or --manifest");
      return run_predict(predict_model, predict_f, have_f, predict_manifest,
                         predict_available);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

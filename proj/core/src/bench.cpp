#include "nlpsel/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlpsel/parallel.hpp"

namespace nlpsel {

std::pair<double, double> compute_metrics(const VariableSet& selected,
                                          const VariableSet& causal) {
  if (causal.empty()) throw DataError("empty causal set");
  int hits = 0;
  for (int j : selected)
    if (causal.contains(j)) ++hits;
  const double tpr = static_cast<double>(hits) / causal.size();
  const double fdr = static_cast<double>(selected.size() - hits) /
                     std::max(1, selected.size());
  return {tpr, fdr};
}

namespace {

VariableSet run_method(const std::string& name, const Dataset& ds,
                       const BenchConfig& cfg) {
  if (name == "pmom" || name == "pimom") {
    SchemeConfig sc = cfg.scheme;
    sc.prior.family =
        name == "pmom" ? PriorFamily::PMOM : PriorFamily::PIMOM;
    return VariableSet(run_selection(ds, sc).selected);
  }
  EnetConfig ec = cfg.enet;
  if (name == "lasso")
    ec.alpha = 1.0;
  else if (name == "enet75")
    ec.alpha = 0.75;
  else if (name == "enet50")
    ec.alpha = 0.5;
  else if (name == "enet25")
    ec.alpha = 0.25;
  else
    throw std::invalid_argument("unknown method: " + name);
  return cv_select(ds, ec);
}

}  // namespace

std::vector<MethodReport> run_benchmark(const Dataset& ds,
                                        const VariableSet& causal,
                                        const BenchConfig& cfg) {
  std::vector<MethodReport> reports(cfg.methods.size());
  const auto run_one = [&](std::int64_t i) {
    MethodReport& rep = reports[i];
    rep.name = cfg.methods[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      rep.selected = run_method(rep.name, ds, cfg);
      rep.n_selected = rep.selected.size();
      std::tie(rep.tpr, rep.fdr) = compute_metrics(rep.selected, causal);
    } catch (const std::exception& e) {
      rep.failed = true;
      rep.error = e.what();
    }
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  };
  if (cfg.parallel) {
    parallel_for(static_cast<std::int64_t>(cfg.methods.size()), run_one);
    for (auto& r : reports) r.wall_time = -1.0;  // overlapping, not reported
  } else {
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(cfg.methods.size());
         ++i)
      run_one(i);
  }
  return reports;
}

void write_report_csv(const std::string& path,
                      const std::vector<MethodReport>& reports) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("cannot write file: " + path);
  std::fprintf(f, "method,n_selected,tpr,fdr,wall_time,error\n");
  for (const auto& r : reports) {
    char wt[32] = "";
    if (r.wall_time >= 0.0) std::snprintf(wt, sizeof wt, "%.3f", r.wall_time);
    if (r.failed) {
      std::fprintf(f, "%s,,,,%s,%s\n", r.name.c_str(), wt, r.error.c_str());
    } else {
      std::fprintf(f, "%s,%d,%.6f,%.6f,%s,\n", r.name.c_str(), r.n_selected,
                   r.tpr, r.fdr, wt);
    }
  }
  std::fclose(f);
}

void write_chart_svg(const std::string& path,
                     const std::vector<MethodReport>& reports) {
  const int n = static_cast<int>(reports.size());
  const double width = std::max(480, 120 * n + 120), height = 420;
  const double left = 60, right = 20, top = 40, bottom = 70;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const double group_w = plot_w / std::max(1, n);
  const double bar_w = group_w * 0.3;

  std::ostringstream svg;
  char buf[256];
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // gridlines and y labels
  for (int t = 0; t <= 4; ++t) {
    const double v = t * 0.25;
    const double yy = top + plot_h * (1.0 - v);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#cccccc\"/>\n",
                  left, yy, width - right, yy);
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                  "text-anchor=\"end\">%.2f</text>\n",
                  left - 6, yy + 4, v);
    svg << buf;
  }
  for (int i = 0; i < n; ++i) {
    const auto& r = reports[i];
    const double gx = left + i * group_w + group_w / 2.0;
    if (!r.failed) {
      const double h_tpr = plot_h * r.tpr, h_fdr = plot_h * r.fdr;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" "
                    "height=\"%.1f\" fill=\"#4878a8\"/>\n",
                    gx - bar_w - 2, top + plot_h - h_tpr, bar_w, h_tpr);
      svg << buf;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" "
                    "height=\"%.1f\" fill=\"#d1615d\"/>\n",
                    gx + 2, top + plot_h - h_fdr, bar_w, h_fdr);
      svg << buf;
    }
    const std::string label =
        r.failed ? r.name + " (failed)"
                 : r.name + " (" + std::to_string(r.n_selected) + ")";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  gx, top + plot_h + 20, label.c_str());
    svg << buf;
  }
  // legend
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"12\" width=\"14\" height=\"14\" "
                "fill=\"#4878a8\"/><text x=\"%.1f\" y=\"24\" "
                "font-size=\"12\">TPR</text>\n",
                left, left + 18);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"12\" width=\"14\" height=\"14\" "
                "fill=\"#d1615d\"/><text x=\"%.1f\" y=\"24\" "
                "font-size=\"12\">FDR</text>\n",
                left + 70, left + 88);
  svg << buf;
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << svg.str();
}

void write_truth_csv(const std::string& path, const VariableSet& causal,
                     const Eigen::VectorXd& effects,
                     const std::vector<std::string>& names) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("cannot write file: " + path);
  std::fprintf(f, "index,name,effect\n");
  int k = 0;
  for (int j : causal)
    std::fprintf(f, "%d,%s,%.17g\n", j, names[j].c_str(), effects[k++]);
  std::fclose(f);
}

std::pair<VariableSet, Eigen::VectorXd> read_truth_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty truth file: " + path);
  std::vector<int> idx;
  std::vector<double> eff;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f0, f1, f2;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1, ',') ||
        !std::getline(ss, f2))
      throw DataError("malformed truth row: " + line);
    idx.push_back(std::stoi(f0));
    eff.push_back(std::stod(f2));
  }
  VariableSet causal(idx);
  Eigen::VectorXd effects(eff.size());
  int k = 0;
  for (int j : causal) {
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx[i] == j) effects[k] = eff[i];
    ++k;
  }
  return {causal, effects};
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string{};
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(lineno) +
                      ": expected key=value");
    const std::string key = strip(line.substr(0, eq));
    const std::string val = strip(line.substr(eq + 1));
    if (key.empty())
      throw DataError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = val;
  }
  return kv;
}

}  // namespace nlpsel

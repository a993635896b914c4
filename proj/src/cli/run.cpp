#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "compknn/cli.hpp"
#include "compknn/error.hpp"
#include "compknn/evaluation.hpp"
#include "compknn/io.hpp"
#include "compknn/knn.hpp"
#include "compknn/loci.hpp"

namespace compknn::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string_view to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

Json echo_config(const RunConfig& c) {
  Json j;
  j["command"] = to_string(c.command);
  j["input"] = c.input.string();
  j["label_column"] = c.label_column ? Json(*c.label_column) : Json(nullptr);
  j["exclude"] = c.exclude;
  j["family"] = compknn::to_string(c.family);
  j["alphas"] = c.alphas;
  j["ks"] = c.ks;
  j["replications"] = c.replications;
  j["test_total"] = c.test_total;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["output"] = c.output.string();
  j["format"] = to_string(c.format);
  j["resolution"] = c.resolution;
  j["reference"] = c.reference;
  return j;
}

Json header(const RunConfig& c) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["config"] = echo_config(c);
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  return j;
}

Json describe(const IngestedData& in, const RunConfig& c) {
  Json j;
  j["path"] = c.input.string();
  j["rows"] = in.data.size();
  j["parts"] = in.data.dimension();
  j["part_names"] = in.part_names;
  j["label_column"] = in.label_column;
  j["excluded_columns"] = in.excluded_columns;
  j["closed_rows"] = in.closed_rows;
  j["classes"] = in.data.classes();
  j["class_sizes"] = in.data.class_sizes();
  return j;
}

Json summary_json(const Summary& s) {
  return Json{{"mean", s.mean}, {"sd", s.sd}, {"n", s.n}};
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

Json grid_json(const GridResult& r) {
  Json j;
  j["family"] = compknn::to_string(r.family);
  j["replications"] = r.replications;
  j["test_total"] = r.test_total;
  j["seed"] = r.seed;
  j["shared_splits"] = r.shared_splits;
  j["accuracy_unit"] = "percent";
  j["spread"] = "sample standard deviation over replications";
  Json prints = Json::array();
  for (auto f : r.split_fingerprints) prints.push_back(hex(f));
  j["split_fingerprints"] = prints;

  Json cells = Json::array();
  const GridCell* best = nullptr;
  for (const auto& cell : r.cells) {
    Json cj;
    cj["alpha"] = cell.alpha ? Json(*cell.alpha) : Json(nullptr);
    cj["k"] = cell.k;
    cj["ok"] = cell.ok;
    if (!cell.ok) {
      cj["diagnostic"] = cell.diagnostic;
    } else {
      cj["accuracy"] = summary_json(cell.accuracy);
      Json per = Json::array();
      for (std::size_t c = 0; c < cell.per_class.size(); ++c) {
        per.push_back({{"class", r.classes[c]},
                       {"sensitivity", summary_json(cell.per_class[c].sensitivity)},
                       {"specificity", summary_json(cell.per_class[c].specificity)}});
      }
      cj["classes"] = per;
      if (!best || cell.accuracy.mean > best->accuracy.mean) best = &cell;
    }
    cells.push_back(cj);
  }
  j["cells"] = cells;
  j["best"] = best ? Json{{"alpha", best->alpha ? Json(*best->alpha) : Json(nullptr)},
                          {"k", best->k},
                          {"accuracy", summary_json(best->accuracy)}}
                   : Json(nullptr);
  return j;
}

void write_grid_csv(std::ostream& out, const GridResult& r, const RunConfig& c) {
  out << "# " << kToolName << ' ' << kVersion << " config=" << echo_config(c).dump() << '\n';
  out << "family,alpha,k,ok,accuracy_mean,accuracy_sd";
  for (const auto& name : r.classes) {
    out << ',' << csv_field("sensitivity_mean:" + name) << ',' << csv_field("sensitivity_sd:" + name)
        << ',' << csv_field("specificity_mean:" + name) << ',' << csv_field("specificity_sd:" + name);
  }
  out << ",diagnostic\n" << std::setprecision(17);
  for (const auto& cell : r.cells) {
    out << compknn::to_string(r.family) << ',';
    if (cell.alpha) out << *cell.alpha;
    out << ',' << cell.k << ',' << (cell.ok ? "true" : "false");
    if (cell.ok) {
      out << ',' << cell.accuracy.mean << ',' << cell.accuracy.sd;
      for (const auto& pc : cell.per_class) {
        out << ',' << pc.sensitivity.mean << ',' << pc.sensitivity.sd << ','
            << pc.specificity.mean << ',' << pc.specificity.sd;
      }
      out << ",\n";
    } else {
      out << ",,";
      for (std::size_t i = 0; i < r.classes.size(); ++i) out << ",,,,";
      out << csv_field(cell.diagnostic) << '\n';
    }
  }
}

// Writes `body` to the configured output file, or to `out` when none is set.
template <typename Writer>
void emit(const RunConfig& c, std::ostream& out, Writer&& body) {
  if (c.output.empty()) {
    body(out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot write '" + c.output.string() + "'");
  body(file);
  if (!file) throw Error(ErrorKind::Io, "write to '" + c.output.string() + "' failed");
}

IngestedData load(const RunConfig& c) {
  if (c.input.empty()) throw Error(ErrorKind::InvalidArgument, "--input is required");
  IngestOptions opts;
  opts.label_column = c.label_column;
  opts.exclude = c.exclude;
  return ingest_csv(c.input, opts);
}

double single_alpha(const RunConfig& c) {
  if (c.alphas.size() != 1) {
    throw Error(ErrorKind::InvalidArgument, "this command takes exactly one alpha");
  }
  return c.alphas.front();
}

std::string file_safe(std::string_view name) {
  std::string out;
  for (unsigned char ch : name) out.push_back(std::isalnum(ch) || ch == '-' || ch == '_' ? ch : '_');
  return out;
}

int run_dist(const RunConfig& c, std::ostream& out) {
  const MetricSpec spec(c.family, single_alpha(c));
  if (!c.x.empty() || !c.w.empty()) {
    const Composition x(std::span<const double>(c.x));
    const Composition w(std::span<const double>(c.w));
    const double d = distance(spec, x, w);
    emit(c, out, [&](std::ostream& o) {
      if (c.format == Format::Json) {
        Json j = header(c);
        j["metric"] = spec.label();
        j["distance"] = d;
        o << j.dump(2) << '\n';
      } else {
        o << std::setprecision(17) << d << '\n';
      }
    });
    return 0;
  }
  // Pairwise matrix over every row of the input.
  const auto in = load(c);
  const Matrix d = pairwise_distances(in.data, in.data.rows(), spec);
  emit(c, out, [&](std::ostream& o) {
    if (c.format == Format::Json) {
      Json j = header(c);
      j["dataset"] = describe(in, c);
      j["metric"] = spec.label();
      Json rows = Json::array();
      for (std::size_t i = 0; i < d.rows(); ++i) {
        rows.push_back(std::vector<double>(d.row(i).begin(), d.row(i).end()));
      }
      j["distances"] = rows;
      o << j.dump(2) << '\n';
    } else {
      o << std::setprecision(17);
      for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t k = 0; k < d.cols(); ++k) o << (k ? "," : "") << d(i, k);
        o << '\n';
      }
    }
  });
  return 0;
}

int run_transform(const RunConfig& c, std::ostream& out) {
  const double alpha = single_alpha(c);
  const auto in = load(c);
  const bool ternary = in.data.dimension() == 3;
  std::vector<Composition> transformed;
  for (std::size_t i = 0; i < in.data.size(); ++i) {
    try {
      transformed.push_back(power_transform(in.data.rows()[i], alpha));
    } catch (const Error& e) {
      throw Error(e.kind(), "data row " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  emit(c, out, [&](std::ostream& o) {
    if (c.format == Format::Json) {
      Json j = header(c);
      j["dataset"] = describe(in, c);
      Json rows = Json::array();
      for (std::size_t i = 0; i < transformed.size(); ++i) {
        const auto p = transformed[i].parts();
        Json r{{"class", in.data.classes()[in.data.labels()[i]]},
               {"parts", std::vector<double>(p.begin(), p.end())}};
        if (ternary) {
          const auto t = ternary_embed(transformed[i]);
          r["x"] = t.x;
          r["y"] = t.y;
        }
        rows.push_back(r);
      }
      j["rows"] = rows;
      o << j.dump(2) << '\n';
      return;
    }
    for (const auto& name : in.part_names) o << csv_field(name) << ',';
    o << csv_field(in.label_column);
    if (ternary) o << ",x,y";
    o << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < transformed.size(); ++i) {
      for (double v : transformed[i].parts()) o << v << ',';
      o << csv_field(in.data.classes()[in.data.labels()[i]]);
      if (ternary) {
        const auto t = ternary_embed(transformed[i]);
        o << ',' << t.x << ',' << t.y;
      }
      o << '\n';
    }
  });
  return 0;
}

int run_tune(const RunConfig& c, std::ostream& out) {
  if (!c.seed) throw Error(ErrorKind::InvalidArgument, "tune requires --seed");
  if (c.replications == 0) throw Error(ErrorKind::InvalidArgument, "--B must be at least 1");
  const auto in = load(c);
  GridOptions opts;
  opts.replications = c.replications;
  opts.test_total = c.test_total;
  opts.seed = *c.seed;
  opts.threads = c.threads;
  const GridResult r = grid_search(in.data, c.alphas, c.ks, c.family, opts);
  emit(c, out, [&](std::ostream& o) {
    if (c.format == Format::Json) {
      Json j = header(c);
      j["dataset"] = describe(in, c);
      j["result"] = grid_json(r);
      o << j.dump(2) << '\n';
    } else {
      write_grid_csv(o, r, c);
    }
  });
  return 0;
}

int run_roc(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.ks.size() != 1) throw Error(ErrorKind::InvalidArgument, "roc takes exactly one k");
  const MetricSpec spec(c.family, uses_alpha(c.family) ? single_alpha(c) : 1.0);
  const auto in = load(c);
  const NeighborConfig config{c.ks.front(), spec};
  const Matrix scores = loocv_scores(in.data, config);

  const std::filesystem::path dir = c.output.empty() ? std::filesystem::path(".") : c.output;
  std::filesystem::create_directories(dir);

  auto open = [&](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + p.string() + "'");
    return f;
  };

  {
    auto f = open(dir / "scores.csv");
    f << "row,truth";
    for (const auto& name : in.data.classes()) f << ',' << csv_field(name);
    f << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
      f << i + 1 << ',' << csv_field(in.data.classes()[in.data.labels()[i]]);
      for (double s : scores.row(i)) f << ',' << s;
      f << '\n';
    }
  }

  Json summary = header(c);
  summary["dataset"] = describe(in, c);
  summary["metric"] = spec.label();
  summary["k"] = config.k;
  Json curves = Json::array();
  for (ClassIndex cls = 0; cls < in.data.class_count(); ++cls) {
    const auto& name = in.data.classes()[cls];
    Json entry{{"class", name}};
    try {
      const RocCurve curve = roc_curve(scores, in.data.labels(), cls);
      const auto file = "roc_" + file_safe(name) + ".csv";
      auto f = open(dir / file);
      f << "threshold,fpr,tpr\n" << std::setprecision(17);
      for (std::size_t p = 0; p < curve.points.size(); ++p) {
        f << curve.thresholds[p] << ',' << curve.points[p].fpr << ',' << curve.points[p].tpr << '\n';
      }
      entry["file"] = file;
      entry["auc"] = auc(curve);
      entry["points"] = curve.points.size();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UndefinedRoc) throw;
      entry["auc"] = nullptr;
      entry["diagnostic"] = e.what();
      err << "warning: " << e.what() << '\n';
    }
    curves.push_back(entry);
  }
  summary["curves"] = curves;
  {
    auto f = open(dir / "roc_summary.json");
    f << summary.dump(2) << '\n';
  }
  out << summary.dump(2) << '\n';
  return 0;
}

int run_loci(const RunConfig& c, std::ostream& out) {
  const MetricSpec spec(c.family, uses_alpha(c.family) ? single_alpha(c) : 1.0);
  const Composition reference = c.reference.empty()
                                    ? Composition::barycentre(3)
                                    : Composition(std::span<const double>(c.reference));
  const DistanceField field = distance_field(spec, reference, c.resolution);
  emit(c, out, [&](std::ostream& o) {
    if (c.format == Format::Csv) {
      write_field_csv(o, field);
      return;
    }
    Json j = header(c);
    j["metric"] = spec.label();
    j["resolution"] = field.resolution;
    j["reference"] = std::vector<double>(reference.parts().begin(), reference.parts().end());
    Json pts = Json::array();
    for (std::size_t p = 0; p < field.points.size(); ++p) {
      const auto& pt = field.points[p];
      pts.push_back({pt.composition[0], pt.composition[1], pt.composition[2], pt.x, pt.y,
                     field.values[p]});
    }
    j["columns"] = {"c1", "c2", "c3", "x", "y", "value"};
    j["points"] = pts;
    o << j.dump() << '\n';
  });
  return 0;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Dist: return "dist";
    case Command::Transform: return "transform";
    case Command::Tune: return "tune";
    case Command::Roc: return "roc";
    case Command::Loci: return "loci";
  }
  return "unknown";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Dist: return run_dist(config, out);
      case Command::Transform: return run_transform(config, out);
      case Command::Tune: return run_tune(config, out);
      case Command::Roc: return run_roc(config, out, err);
      case Command::Loci: return run_loci(config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace compknn::cli

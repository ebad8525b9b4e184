#include "pointfrac/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pointfrac::io {

using nlohmann::json;

std::string fmt12e(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

namespace {

json grid_to_json(const RadialGrid& g) {
  return json{{"r_min", g.spec().r_min},
              {"r_max", g.spec().r_max},
              {"count", g.spec().count},
              {"spacing", "logarithmic"},
              {"dimension", g.dimension()}};
}

json ext_to_json(const ExtensionParam& ext) {
  if (const TauAt* t = std::get_if<TauAt>(&ext)) {
    json j{{"kind", "tau"}, {"lambda", t->lambda}};
    if (t->tau.infinite)
      j["tau"] = "infinity";
    else
      j["tau"] = t->tau.value;
    return j;
  }
  if (const AlphaParam* a = std::get_if<AlphaParam>(&ext)) {
    json j{{"kind", "alpha"}};
    if (a->alpha.infinite)
      j["alpha"] = "infinity";
    else
      j["alpha"] = a->alpha.value;
    return j;
  }
  return json{{"kind", "matrix"}};
}

const char* family_name(Family f) {
  switch (f) {
    case Family::ClassicH: return "classic-h";
    case Family::HomogeneousK: return "homogeneous-k";
    case Family::InhomogeneousD: return "inhomogeneous-d";
  }
  return "?";
}

}  // namespace

void write_radial_function(const RadialFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadSpec("cannot open output file: " + path);
  out << "r,re,im\n";
  const auto& r = f.grid().nodes();
  for (Eigen::Index i = 0; i < r.size(); ++i)
    out << fmt12e(r[i]) << ',' << fmt12e(f.values()[i].real()) << ','
        << fmt12e(f.values()[i].imag()) << '\n';

  json sidecar{{"grid", grid_to_json(f.grid())}};
  if (f.tail())
    sidecar["tail"] = json{{"amplitude_re", f.tail()->amplitude.real()},
                           {"amplitude_im", f.tail()->amplitude.imag()},
                           {"exponent", f.tail()->exponent}};
  std::ofstream side(path + ".json", std::ios::binary);
  side << sidecar.dump(2) << '\n';
}

RadialFunction read_radial_function(const std::string& path) {
  std::ifstream side_in(path + ".json");
  if (!side_in) throw BadSpec("missing sidecar for " + path);
  json sidecar = json::parse(side_in);
  GridSpec spec;
  spec.r_min = sidecar["grid"]["r_min"].get<double>();
  spec.r_max = sidecar["grid"]["r_max"].get<double>();
  spec.count = sidecar["grid"]["count"].get<int>();
  const int d = sidecar["grid"]["dimension"].get<int>();
  GridPtr grid = make_grid(spec, d);

  std::ifstream in(path);
  if (!in) throw BadSpec("cannot open input file: " + path);
  std::string line;
  std::getline(in, line);  // header
  Eigen::ArrayXcd vals(grid->size());
  Eigen::Index i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= grid->size()) throw BadSpec("more samples than grid nodes");
    double r, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &re, &im) != 3)
      throw BadSpec("malformed sample row: " + line);
    if (std::abs(r - grid->nodes()[i]) > 1e-9 * std::max(1.0, grid->nodes()[i]))
      throw BadSpec("sample radius does not match the declared grid");
    vals[i++] = Complex(re, im);
  }
  if (i != grid->size()) throw BadSpec("fewer samples than grid nodes");

  std::optional<TailDescriptor> tail;
  if (sidecar.contains("tail"))
    tail = TailDescriptor{Complex(sidecar["tail"]["amplitude_re"].get<double>(),
                                  sidecar["tail"]["amplitude_im"].get<double>()),
                          sidecar["tail"]["exponent"].get<double>()};
  // foreign data: insist the declared tail matches the samples
  return RadialFunction(std::move(grid), std::move(vals), std::move(tail), true);
}

void write_domain_element(const DomainElement& e, const std::string& path,
                          const std::string& regular_csv) {
  json j{{"family", family_name(e.family())},
         {"params",
          {{"d", e.params().d}, {"s", e.params().s}, {"lambda", e.params().lambda}}},
         {"ext", ext_to_json(e.ext())},
         {"kappa", {{"re", e.kappa().real()}, {"im", e.kappa().imag()}}},
         {"regular", regular_csv}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadSpec("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

std::string sweep_csv_text(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "tau,E_tau,reference_tau\n";
  for (const auto& row : rows) {
    out << fmt12e(row.tau) << ',';
    if (row.E_tau)
      out << fmt12e(*row.E_tau);
    else
      out << "error:" << row.error;
    out << ',' << fmt12e(row.tau) << '\n';
  }
  return out.str();
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadSpec("cannot open output file: " + path);
  out << sweep_csv_text(rows);
}

}  // namespace pointfrac::io

#include "lowlying/cli/report_io.hpp"

#include <charconv>
#include <ostream>

#include "json.hpp"

namespace lowlying::cli {

std::string fmt_real(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_density_csv(std::ostream& out, std::span<const DensityReport> reports) {
  out << "X,nu,W,P1_over_W,P2_over_W,C_lo,C,C_hi,assembled,predicted,gap\n";
  for (const auto& r : reports) {
    out << fmt_real(r.X) << ',' << r.nu.str() << ',' << fmt_real(r.W) << ',' << fmt_real(r.P1 / r.W) << ','
        << fmt_real(r.P2 / r.W) << ',' << fmt_real(r.conductor.lo) << ',' << fmt_real(r.conductor.value) << ','
        << fmt_real(r.conductor.hi) << ',' << fmt_real(r.assembled) << ',' << fmt_real(r.predicted) << ','
        << fmt_real(r.gap()) << '\n';
  }
}

std::string density_json(std::span<const DensityReport> reports) {
  auto arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["X"] = r.X;
    j["nu"] = r.nu.str();
    j["method"] = to_string(r.method);
    j["W"] = r.W;
    j["AB_mass"] = r.AB_mass;
    j["P1"] = r.P1;
    j["P1_direct"] = r.P1_direct ? nlohmann::json(*r.P1_direct) : nlohmann::json(nullptr);
    j["P1_poisson"] = r.P1_poisson ? nlohmann::json(*r.P1_poisson) : nlohmann::json(nullptr);
    j["P2"] = r.P2;
    j["conductor"] = {{"value", r.conductor.value},
                      {"lo", r.conductor.lo},
                      {"hi", r.conductor.hi},
                      {"curves", r.conductor.curves},
                      {"skipped", r.conductor.skipped}};
    j["predicted"] = r.predicted;
    j["assembled"] = r.assembled;
    j["gap"] = r.gap();
    j["dual_gap"] = r.dual_gap() ? nlohmann::json(*r.dual_gap()) : nlohmann::json(nullptr);
    j["rank_bound"] = r.rank_bound.str();
    j["poisson_terms"] = r.poisson_terms;
    j["direct_terms"] = r.direct_terms;
    j["seconds"] = r.seconds;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_growth_csv(std::ostream& out, std::span<const GrowthFit> fits) {
  out << "name,exponent,D,sum,slope,local_slope\n";
  for (const auto& f : fits)
    for (std::size_t i = 0; i < f.D.size(); ++i)
      out << '"' << f.name << "\"," << fmt_real(f.exponent) << ',' << fmt_real(f.D[i]) << ',' << fmt_real(f.sums[i])
          << ',' << fmt_real(f.slope) << ',' << fmt_real(f.local_slope) << '\n';
}

}  // namespace lowlying::cli

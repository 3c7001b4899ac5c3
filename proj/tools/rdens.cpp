#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rdens/density.hpp"
#include "rdens/divisibility.hpp"
#include "rdens/errors.hpp"
#include "rdens/harness.hpp"
#include "rdens/json_io.hpp"
#include "rdens/kummer.hpp"

namespace {

using rdens::Json;

struct Common {
  std::uint64_t conductor = 1;
  unsigned ell = 0;
  std::string gens;
  std::uint64_t seed = rdens::Config{}.seed;
  bool allow_large = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--conductor,-w", c.conductor, "conductor w of K = Q(zeta_w)")->capture_default_str();
  cmd->add_option("--ell,-l", c.ell, "the prime ell")->required();
  cmd->add_option("--gens,-g", c.gens, "comma-separated generators, z = zeta_w");
  cmd->add_option("--seed", c.seed, "seed for every randomized subroutine")->capture_default_str();
  cmd->add_flag("--allow-large", c.allow_large, "lift the degree/ell/rank envelope");
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size() || item.empty()) throw CLI::ValidationError("--valuations", "bad entry '" + item + "'");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

void merge(Json& out, const Json& extra) {
  for (const auto& [k, v] : extra.items()) out[k] = v;
}

int fail(int code, const char* kind, const std::string& message) {
  std::cout << Json{{"error", kind}, {"message", message}}.dump(2) << "\n";
  std::cerr << "rdens: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densities of primes where the reduction of a subgroup of Q(zeta_w)^x has order prime to ell"};
  app.require_subcommand(1);
  Common c;
  unsigned m = 0, n = 1, terms = 12;
  std::uint64_t bound = 1000000;
  unsigned jobs = 0;
  std::string convention = "all", valuations, records;

  auto* params = app.add_subcommand("params", "divisibility parameters (d, h) of G");
  auto* degree = app.add_subcommand("degree", "degree [K_{ell^m}(G^(1/ell^n)) : K]");
  auto* dens = app.add_subcommand("density", "exact density");
  auto* bracket = app.add_subcommand("bracket", "truncated-series bracket of the density");
  auto* structure = app.add_subcommand("structure", "structure of G / (G cap (K^x)^(ell^n))");
  auto* valuation = app.add_subcommand("valuation", "density of ell-adic valuation exactly n");
  auto* multi = app.add_subcommand("multi", "joint valuation density of the generators");
  auto* verify = app.add_subcommand("verify", "empirical count over prime ideals of bounded norm");
  for (auto* cmd : {params, degree, dens, bracket, structure, valuation, multi, verify}) add_common(cmd, c);
  degree->add_option("--m", m, "cyclotomic level m")->required();
  degree->add_option("--n", n, "radical level n")->required();
  bracket->add_option("--terms,-N", terms, "number of series terms N")->capture_default_str();
  structure->add_option("--n", n, "level n")->required();
  valuation->add_option("--n", n, "valuation n >= 1")->required();
  multi->add_option("--valuations", valuations, "comma-separated n_i, one per generator")->required();
  verify->add_option("--bound,-X", bound, "norm bound X")->capture_default_str();
  verify->add_option("--jobs,-j", jobs, "worker threads (0 = all cores)")->capture_default_str();
  verify->add_option("--convention", convention, "denominator: all prime ideals or only good ones")
      ->check(CLI::IsMember({"all", "good"}))
      ->capture_default_str();
  verify->add_option("--records", records, "write per-ideal CSV records to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    rdens::Config cfg;
    cfg.seed = c.seed;
    cfg.allow_large = c.allow_large;
    if (c.conductor == 0) throw CLI::ValidationError("--conductor", "must be positive");
    const rdens::CyclotomicField field(c.conductor);
    const auto gens = rdens::parse_element_list(c.gens, field);
    rdens::check_envelope(field, c.ell, gens.size(), cfg);

    Json out{{"command", app.get_subcommands().front()->get_name()},
             {"conductor", field.conductor()},
             {"ell", c.ell},
             {"gens", Json::array()}};
    for (const auto& g : gens) out["gens"].push_back(rdens::format_element(g));

    if (*params) {
      const auto p = rdens::extract_parameters(field, c.ell, gens, cfg);
      merge(out, rdens::to_json(p));
    } else if (*degree) {
      const rdens::TowerDegrees degrees(field, c.ell, gens, cfg);
      const rdens::Integer d = degrees.degree(m, n);
      out["m"] = m;
      out["n"] = n;
      out["degree"] = d.get_str();
      out["cyclotomic_degree"] = rdens::cyclotomic_degree(field, c.ell, m).get_str();
      out["kummer_degree"] = rdens::Integer(d / rdens::cyclotomic_degree(field, c.ell, m)).get_str();
      out["tower"] = rdens::to_json(degrees.tower());
    } else if (*dens) {
      const auto r = rdens::density(field, c.ell, gens, cfg);
      merge(out, rdens::to_json(r));
      if (r.params && r.path == rdens::DensityPath::thm2) {
        Json special = Json::object();
        for (const auto& s : rdens::special_case_densities(*r.params, r.tower)) special[s.name] = rdens::fraction(s.value);
        out["special_cases"] = special;
      }
    } else if (*bracket) {
      merge(out, rdens::to_json(rdens::density_bracket(field, c.ell, gens, terms, cfg)));
    } else if (*structure) {
      const auto p = rdens::extract_parameters(field, c.ell, gens, cfg);
      const auto tower = rdens::tower_data(field, c.ell);
      out["params"] = rdens::to_json(p);
      merge(out, rdens::to_json(rdens::quotient_structure(p, tower.z, n)));
      out["index"] = rdens::nt::pow(rdens::Integer(c.ell), rdens::quotient_structure(p, tower.z, n).total_valuation).get_str();
    } else if (*valuation) {
      const auto v = rdens::density_valuation_exact(field, c.ell, gens, n, cfg);
      out["n"] = n;
      out["density"] = rdens::fraction(v);
      out["decimal"] = v.get_d();
    } else if (*multi) {
      const auto ns = parse_unsigned_list(valuations);
      if (ns.size() != gens.size()) throw CLI::ValidationError("--valuations", "needs one entry per generator");
      std::vector<std::pair<rdens::CycElement, unsigned>> pairs;
      bool folded = false;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        pairs.emplace_back(gens[i], ns[i]);
        if (ns[i] == 0) folded = true;
      }
      const auto v = rdens::density_multi_valuation(field, c.ell, pairs, cfg);
      out["valuations"] = ns;
      out["density"] = rdens::fraction(v);
      out["decimal"] = v.get_d();
      if (folded) out["note"] = "entries with n_i = 0 are read as 'order prime to ell'";
    } else if (*verify) {
      rdens::EstimateOptions opt;
      opt.bound = bound;
      opt.jobs = jobs;
      opt.convention = rdens::parse_convention(convention);
      std::ofstream csv;
      if (!records.empty()) {
        csv.open(records);
        if (!csv) throw CLI::ValidationError("--records", "cannot open " + records);
        csv << "p,f,g,verdict\n";
        opt.records = &csv;
      }
      merge(out, rdens::to_json(rdens::estimate(field, c.ell, gens, opt, cfg)));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const CLI::ValidationError& e) {
    return fail(1, "usage", e.what());
  } catch (const rdens::ParseError& e) {
    return fail(1, "parse", e.what());
  } catch (const rdens::UnsupportedError& e) {
    return fail(2, "unsupported", e.what());
  } catch (const rdens::DependenceError& e) {
    return fail(3, "dependence", e.what());
  } catch (const rdens::ResourceError& e) {
    return fail(4, "resource", e.what());
  } catch (const rdens::DomainError& e) {
    return fail(1, "domain", e.what());
  } catch (const rdens::Error& e) {
    return fail(1, "error", e.what());
  }
}

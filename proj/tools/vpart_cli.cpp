// Command-line front end for the vpart library.
#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <set>

#include "vpart/vpart.hpp"

using namespace vpart;

namespace {

struct Config {
  std::string matrix_file;
  std::string preset;
  std::string rhs;
  std::string method;
  std::string format = "text";
  std::string chamber_file;
  long lambda_seed = -1;
  unsigned threads = 1;
  std::size_t memory_cap = 5000000;
  bool count_only = false;
  bool list = false;
  bool adjacent = false;
  bool verbose = false;
};

IntMatrix load_matrix(const Config& c) {
  if (c.matrix_file.empty() == c.preset.empty())
    fail(ErrorCode::InvalidInput, "give exactly one of --matrix FILE or --preset NAME");
  return c.preset.empty() ? read_matrix_file(c.matrix_file) : make_preset(c.preset).matrix;
}

std::vector<Rational> load_rhs(const Config& c, const IntMatrix& a) {
  if (c.rhs.empty()) fail(ErrorCode::InvalidInput, "--rhs is required for this command");
  const auto b = parse_csv_integers(c.rhs);
  if (b.size() != a.rows())
    fail(ErrorCode::DimensionMismatch,
         "--rhs has " + std::to_string(b.size()) + " entries but the matrix has " + std::to_string(a.rows()) + " rows");
  return to_rational(b);
}

bool json_out(const Config& c) {
  if (c.format != "text" && c.format != "json") fail(ErrorCode::InvalidInput, "--format must be text or json");
  return c.format == "json";
}

void log(const Config& c, const std::string& msg) {
  if (c.verbose) std::cerr << "[vpart] " << msg << "\n";
}

BrionOptions brion_options(const Config& c, std::size_t n) {
  BrionOptions o;
  o.threads = c.threads;
  if (c.lambda_seed >= 0) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.lambda_seed));
    std::uniform_int_distribution<long> dist(1, 1000000);
    std::set<long> used;
    std::vector<BigInt> lambda;
    while (lambda.size() < n) {
      const long v = dist(rng);
      if (used.insert(v).second) lambda.emplace_back(v);
    }
    o.lambda = lambda;
  }
  return o;
}

std::vector<std::string> var_names(const IntMatrix& a) { return MultiPoly::default_names(a.rows(), "b"); }

std::string basis_text(const ColumnBasis& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

std::string vec_text(const std::vector<BigInt>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

void print_count(const Config& c, const BigInt& n, const std::string& method) {
  if (json_out(c))
    std::cout << Json{{"count", n.get_str()}, {"method", method}}.dump() << "\n";
  else
    std::cout << n.get_str() << "\n";
}

int cmd_count(const Config& c) {
  const auto a = load_matrix(c);
  const auto b = load_rhs(c, a);
  const std::string method = c.method.empty() ? "bbklp" : c.method;
  if (method == "oracle") {
    print_count(c, oracle_count(a, b), method);
    return 0;
  }
  if (method != "bbklp" && method != "todd") fail(ErrorCode::InvalidInput, "--method must be bbklp, todd or oracle");
  BasisSolver s(a);
  const auto ve = enumerate_vertices(s, b);
  log(c, std::to_string(ve.bases.size()) + " feasible bases");
  std::vector<ColumnBasis> sig;
  if (ve.simple) {
    for (const auto& fb : ve.bases) sig.push_back(fb.basis);
  } else {
    if (!c.adjacent)
      fail(ErrorCode::DegenerateRhs,
           "rhs lies on a chamber wall; rerun with --adjacent to count via adjacent_representative");
    sig = adjacent_signature(a, b);
    log(c, "degenerate rhs: using an adjacent chamber with " + std::to_string(sig.size()) + " bases");
  }
  BigInt n;
  if (method == "bbklp") {
    n = ve.simple ? count_genfun(s, genfun_from_bases(s, b, ve.bases), brion_options(c, a.cols()))
                  : count_in_chamber(a, b, sig, brion_options(c, a.cols()));
  } else if (ve.simple) {
    n = count_todd_rhs(a, b, c.memory_cap);
  } else {
    const auto p = chamber_polynomial_todd(a, sig, 0, c.memory_cap);
    n = detail::require_count(p.evaluate(std::span<const Rational>(b)));
  }
  print_count(c, n, method);
  return 0;
}

int cmd_oracle(const Config& c) {
  const auto a = load_matrix(c);
  print_count(c, oracle_count(a, load_rhs(c, a)), "oracle");
  return 0;
}

int cmd_genfun(const Config& c) {
  const auto a = load_matrix(c);
  const auto g = build_genfun(a, load_rhs(c, a));
  if (json_out(c)) {
    Json terms = Json::array();
    for (const auto& t : g.terms) {
      Json dens = Json::array();
      for (const auto& d : t.denominators) dens.push_back(vector_to_json(d.c));
      terms.push_back({{"basis", basis_to_json(t.basis)}, {"numerator", vector_to_json(t.numerator)}, {"denominators", dens}});
    }
    std::cout << Json{{"terms", terms}}.dump(2) << "\n";
  } else {
    std::cout << genfun_text(g) << "\n";
  }
  return 0;
}

int cmd_vertices(const Config& c) {
  const auto a = load_matrix(c);
  const auto ve = enumerate_vertices(a, load_rhs(c, a));
  if (json_out(c)) {
    Json bases = Json::array();
    for (const auto& fb : ve.bases) bases.push_back({{"basis", basis_to_json(fb.basis)}, {"vertex", vector_to_json(fb.vertex)}});
    std::cout << Json{{"count", ve.bases.size()}, {"simple", ve.simple}, {"dimension", ve.dimension}, {"bases", bases}}.dump(2)
              << "\n";
    return 0;
  }
  if (c.list) {
    for (const auto& fb : ve.bases) std::cout << basis_text(fb.basis) << " " << vec_text(fb.vertex) << "\n";
    if (!ve.simple) std::cout << "# degenerate: some vertex has several bases\n";
  } else {
    std::cout << ve.bases.size() << "\n";
  }
  return 0;
}

int cmd_circuits(const Config& c) {
  const auto a = load_matrix(c);
  const auto cs = circuits(a);
  if (json_out(c)) {
    Json arr = Json::array();
    for (const auto& x : cs) arr.push_back(vector_to_json(x.c));
    std::cout << Json{{"count", cs.size()}, {"circuits", arr}}.dump() << "\n";
  } else if (c.count_only) {
    std::cout << cs.size() << "\n";
  } else {
    for (const auto& x : cs) std::cout << vec_text(x.c) << "\n";
  }
  return 0;
}

int cmd_chambers(const Config& c) {
  const auto a = load_matrix(c);
  const auto cc = enumerate_chambers(a);
  log(c, std::to_string(cc.hyperplane_count) + " hyperplanes, " + std::to_string(cc.cell_count) + " cells");
  if (c.count_only) {
    if (json_out(c))
      std::cout << Json{{"count", cc.chambers.size()}}.dump() << "\n";
    else
      std::cout << cc.chambers.size() << "\n";
    return 0;
  }
  if (json_out(c)) {
    Json arr = Json::array();
    for (const auto& ch : cc.chambers) arr.push_back(chamber_to_json(ch));
    std::cout << Json{{"count", cc.chambers.size()}, {"chambers", arr}}.dump(2) << "\n";
  } else {
    std::size_t k = 0;
    for (const auto& ch : cc.chambers)
      std::cout << ++k << ": " << inequalities_text(ch) << "  rep " << vec_text(ch.representative) << "  bases "
                << ch.signature.size() << "\n";
  }
  return 0;
}

void print_chamber(const Config& c, const Chamber& ch) {
  if (json_out(c)) {
    std::cout << chamber_to_json(ch).dump(2) << "\n";
    return;
  }
  std::cout << inequalities_text(ch) << "\nrepresentative " << vec_text(ch.representative) << "\nsignature";
  for (const auto& s : ch.signature) std::cout << " " << basis_text(s);
  std::cout << "\n";
}

int cmd_chamber_of(const Config& c) {
  const auto a = load_matrix(c);
  const auto b = load_rhs(c, a);
  if (c.adjacent) {
    const auto rep = adjacent_representative(a, b);
    print_chamber(c, chamber_of(a, to_rational(rep)));
  } else {
    print_chamber(c, chamber_of(a, b));
  }
  return 0;
}

int cmd_chamber_poly(const Config& c) {
  const auto a = load_matrix(c);
  Chamber ch;
  if (!c.chamber_file.empty()) {
    std::ifstream in(c.chamber_file);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open chamber file '" + c.chamber_file + "'");
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      fail(ErrorCode::InvalidInput, std::string("malformed chamber JSON: ") + e.what());
    }
    ch = chamber_from_json(j);
  } else {
    const auto b = load_rhs(c, a);
    ch = c.adjacent ? chamber_of(a, to_rational(adjacent_representative(a, b))) : chamber_of(a, b);
  }
  const std::string method = c.method.empty() ? "todd" : c.method;
  if (method != "todd" && method != "interp" && method != "both")
    fail(ErrorCode::InvalidInput, "--method must be todd, interp or both");
  InterpolationOptions io;
  io.threads = c.threads;
  if (c.lambda_seed >= 0) io.seed = static_cast<std::uint64_t>(c.lambda_seed);
  std::optional<MultiPoly> todd, interp;
  if (method != "interp") todd = chamber_polynomial_todd(a, ch, 0, c.memory_cap);
  if (method != "todd") interp = interpolate(a, ch, io);
  const auto names = var_names(a);
  if (todd && interp && !(*todd == *interp))
    fail(ErrorCode::InvariantViolation, "todd and interpolation polynomials differ:\n  todd:   " + todd->to_string(names) +
                                            "\n  interp: " + interp->to_string(names));
  const MultiPoly& p = todd ? *todd : *interp;
  if (json_out(c)) {
    Json j{{"polynomial", p.to_string(names)}, {"degree", p.degree()}, {"method", method}, {"chamber", chamber_to_json(ch)}};
    if (interp) j["seed"] = io.seed;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << p.to_string(names) << "\n";
  }
  return 0;
}

int cmd_check(const Config& c) {
  const auto a = load_matrix(c);
  const auto p = analyze(a);
  if (json_out(c)) {
    Json ker = Json::array();
    for (const auto& k : p.kernel) ker.push_back(vector_to_json(k));
    std::cout << Json{{"rows", a.rows()},
                      {"cols", a.cols()},
                      {"rank", p.rank},
                      {"degree", a.cols() - p.rank},
                      {"unimodular", p.unimodular},
                      {"standard_unimodular", p.standard_unimodular},
                      {"pointed", p.pointed},
                      {"kernel", ker}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "size " << a.rows() << "x" << a.cols() << "\nrank " << p.rank << "\ndegree " << a.cols() - p.rank
              << "\nkernel_dimension " << p.kernel.size() << "\nunimodular " << (p.unimodular ? "yes" : "no")
              << "\nstandard_unimodular " << (p.standard_unimodular ? "yes" : "no") << "\npointed "
              << (p.pointed ? "yes" : "no") << "\n";
  }
  return 0;
}

int report(ErrorCode code, const std::string& msg) {
  std::cerr << Json{{"error", std::string(error_name(code))}, {"code", exit_code(code)}, {"message", msg}}.dump() << "\n";
  return exit_code(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact vector partition functions of unimodular matrices"};
  app.require_subcommand(1);
  Config cfg;

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const Cmd cmds[] = {
      {"count", "Count lattice points of {x >= 0 : Ax = b}", cmd_count},
      {"oracle-count", "Count by exhaustive enumeration", cmd_oracle},
      {"genfun", "Print the rational generating function", cmd_genfun},
      {"vertices", "Enumerate feasible bases (vertices)", cmd_vertices},
      {"circuits", "List the circuits of A", cmd_circuits},
      {"chambers", "Enumerate the chamber complex", cmd_chambers},
      {"chamber-of", "Chamber containing b", cmd_chamber_of},
      {"chamber-poly", "Polynomial of the chamber containing b", cmd_chamber_poly},
      {"check", "Rank, unimodularity and pointedness of A", cmd_check},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Config&)>> subs;
  for (const auto& c : cmds) {
    auto* s = app.add_subcommand(c.name, c.help);
    auto* m = s->add_option("--matrix", cfg.matrix_file, "Matrix JSON file");
    auto* p = s->add_option("--preset", cfg.preset, "contingency:MxN, kostant:N, example:3x5, example:3x6, identity:N");
    m->excludes(p);
    s->add_option("--rhs", cfg.rhs, "Right-hand side as comma-separated integers");
    s->add_option("--method", cfg.method, "count: bbklp|todd|oracle; chamber-poly: todd|interp|both");
    s->add_option("--lambda-seed", cfg.lambda_seed, "Seed for random substitution weights / sample placement");
    s->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    s->add_option("--memory-cap", cfg.memory_cap, "Maximum reduction-table size for the todd method");
    s->add_option("--format", cfg.format, "text or json");
    s->add_option("--chamber", cfg.chamber_file, "Chamber JSON file (chamber-poly)");
    s->add_flag("--count-only", cfg.count_only, "Print only the number of items");
    s->add_flag("--list", cfg.list, "List items instead of counting them");
    s->add_flag("--adjacent", cfg.adjacent, "Use an adjacent chamber when b lies on a wall");
    s->add_flag("--verbose", cfg.verbose, "Log progress to stderr");
    subs.emplace_back(s, c.run);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(ErrorCode::InvalidInput, e.what());
  }
  try {
    for (auto& [s, run] : subs)
      if (s->parsed()) return run(cfg);
  } catch (const Error& e) {
    return report(e.code(), e.what());
  } catch (const std::exception& e) {
    return report(ErrorCode::InvalidInput, e.what());
  }
  return 0;
}

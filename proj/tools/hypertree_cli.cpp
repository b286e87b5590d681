// hypertree: experiments on random 2-trees from the command line.
//
// Exit codes: 0 success / check passed, 1 check failed, 2 usage or I/O error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypertree/census.hpp"
#include "hypertree/certificates.hpp"
#include "hypertree/complex_io.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/homology.hpp"
#include "hypertree/records.hpp"
#include "hypertree/rng.hpp"
#include "hypertree/sampler.hpp"
#include "hypertree/torsion_stats.hpp"
#include "json.hpp"

using namespace hypertree;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  int threads = 1;
  bool json = false;
  std::string manifest_path;
};

// Everything needed to rerun a command; written next to data outputs.
class Manifest {
 public:
  Manifest(std::string command, int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
    j_["command"] = std::move(command);
    j_["argv"] = json::array();
    for (int i = 0; i < argc; ++i) j_["argv"].push_back(argv[i]);
    j_["versions"] = {{"hypertree", library_version()},
                      {"rng", std::string(Rng::kName)},
                      {"sample_format", kSampleFormatVersion},
                      {"census_format", kCensusFormatVersion}};
    const std::time_t now = std::time(nullptr);
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    j_["started_at"] = ts.str();
    j_["seeds"] = json::array();
    j_["outputs"] = json::array();
    j_["parameters"] = json::object();
  }

  void seed(std::uint64_t s) { j_["seeds"].push_back(s); }
  void output(const std::string& path) { j_["outputs"].push_back(path); }
  template <typename T>
  void param(const std::string& key, const T& value) {
    j_["parameters"][key] = value;
  }

  json finish() {
    j_["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return j_;
  }

 private:
  json j_;
  std::chrono::steady_clock::time_point start_;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

// Manifest destination: --manifest, else <data>.manifest.json, else nowhere
// (in --json mode it is embedded in stdout instead).
void emit_manifest(const Globals& g, Manifest& m, const std::string& data_path, json* embed) {
  std::string path = g.manifest_path;
  if (path.empty() && !data_path.empty()) path = data_path + ".manifest.json";
  if (!path.empty()) m.output(path);
  const json done = m.finish();
  if (!path.empty()) write_file(path, done.dump(2) + "\n");
  if (embed) (*embed)["manifest"] = done;
}

std::string factors_text(const std::vector<BigInt>& f) {
  if (f.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + f[i].get_str();
  return s;
}

json factors_json(const std::vector<BigInt>& f) {
  json a = json::array();
  for (const auto& x : f) a.push_back(x.get_str());
  return a;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
  if (const char* d = std::getenv("HYPERTREE_CACHE_DIR"); d && *d) return std::filesystem::path(d);
  return std::nullopt;
}

// ---- sample

struct SampleArgs {
  int n = 0;
  std::size_t count = 1;
  std::string method = "dpp";
  std::uint64_t seed = 1;
  std::uint64_t mh_steps = 1000;
  std::string backend = "auto";
  std::string out;
  bool timing = false;
  int retry_budget = 10;
  std::size_t memory_mb = 1024;
};

int run_sample(const Globals& g, const SampleArgs& a, Manifest& m) {
  BatchOptions o;
  const Method method = parse_method(a.method);
  if (a.backend == "auto")
    o.backend = default_backend(a.n);
  else if (a.backend == "rational")
    o.backend = KernelBackend::Rational;
  else if (a.backend == "float")
    o.backend = KernelBackend::Float;
  else
    throw InputError("unknown backend '" + a.backend + "' (auto, rational or float)");
  o.mh_steps = a.mh_steps;
  o.workers = g.threads;
  o.timing = a.timing;
  o.dpp.retry_budget = a.retry_budget;
  o.kernel.memory_budget_bytes = a.memory_mb << 20;

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  auto recs = sample_batch(a.n, a.count, method, a.seed, o);
  std::ostream& out = a.out.empty() ? std::cout : file;
  std::size_t nontrivial = 0;
  for (const auto& r : recs) {
    out << record_to_json(r) << '\n';
    nontrivial += r.h1_order != 1;
  }
  if (!a.out.empty()) {
    file.close();
    if (!file) throw std::runtime_error("write failed for " + a.out);
    m.output(a.out);
  }

  for (int w = 0; w < g.threads; ++w) m.seed(a.seed + static_cast<std::uint64_t>(w));
  m.param("n", a.n);
  m.param("count", a.count);
  m.param("method", a.method);
  m.param("backend", to_string(o.backend));
  m.param("workers", g.threads);
  if (method == Method::Mh) m.param("mh_steps", a.mh_steps);

  if (a.out.empty()) {
    // stdout carries the data; the manifest goes to --manifest or stderr
    json done = m.finish();
    if (!g.manifest_path.empty())
      write_file(g.manifest_path, done.dump(2) + "\n");
    else if (g.json)
      std::cerr << done.dump() << '\n';
    return 0;
  }
  json summary{{"records", recs.size()}, {"nontrivial_h1", nontrivial}, {"out", a.out}};
  emit_manifest(g, m, a.out, g.json ? &summary : nullptr);
  if (g.json)
    std::cout << summary.dump(2) << '\n';
  else
    std::cout << "wrote " << recs.size() << " records to " << a.out << " (" << nontrivial
              << " with nontrivial H_1)\n";
  return 0;
}

// ---- census / verify

int run_census(const Globals& g, int n, const std::string& prefix, bool allow_larger, bool verify_only,
               Manifest& m) {
  CensusOptions o;
  o.threads = g.threads;
  o.allow_larger = allow_larger;
  o.keep_records = false;
  o.cache_dir = cache_dir_from_env();
  o.warn = [](const std::string& s) { std::cerr << "warning: " << s << '\n'; };
  const auto r = verify_kalai(n, o);
  m.param("n", n);
  m.param("threads", g.threads);

  std::string data_path;
  if (!prefix.empty()) {
    std::ostringstream csv;
    write_histogram_csv(r, csv);
    write_file(prefix + ".csv", csv.str());
    write_file(prefix + ".json", census_summary_json(r));
    m.output(prefix + ".csv");
    m.output(prefix + ".json");
    data_path = prefix;
  }
  const auto triv = trivial_h1_probability(r);
  const auto bound = count_bound_check(r);
  const int exit_code = r.kalai_pass() ? 0 : kExitFail;

  if (g.json) {
    json j{{"n", n},
           {"total", r.total},
           {"kalai_sum", r.kalai_sum.get_str()},
           {"kalai_target", r.kalai_target.get_str()},
           {"kalai_pass", r.kalai_pass()}};
    if (!verify_only) {
      j["histogram"] = json::array();
      for (const auto& [key, e] : r.histogram)
        j["histogram"].push_back(
            {{"factors", factors_json(key)}, {"count", e.count}, {"weighted_count", e.weighted.get_str()}});
      j["p_trivial_h1"] = triv.exact.get_str();
      j["count_bound"] = {{"exact", bound.exact}, {"bound", bound.bound}, {"holds", bound.holds}};
    }
    emit_manifest(g, m, data_path, &j);
    std::cout << j.dump(2) << '\n';
    return exit_code;
  }
  emit_manifest(g, m, data_path, nullptr);
  std::cout << "n=" << n << ": sum |H_1|^2 = " << r.kalai_sum.get_str() << " = " << n << "^" << choose(n - 2, 2)
            << " over " << r.total << " 2-trees: " << (r.kalai_pass() ? "pass" : "FAIL") << '\n';
  if (!verify_only) {
    for (const auto& [key, e] : r.histogram)
      std::cout << "  " << std::setw(12) << std::left << e.group.to_string() << std::right << " count "
                << e.count << "  weighted " << e.weighted.get_str() << '\n';
    std::cout << "P(H_1 = 0) = " << triv.exact.get_str() << " (" << triv.exact.get_d() << ")\n";
    std::cout << "count " << bound.exact << " vs (en/3)^C(n-1,2) = " << bound.bound
              << (bound.holds ? " (holds)" : " (VIOLATED)") << '\n';
  }
  return exit_code;
}

// ---- homology

int run_homology(const Globals& g, const std::string& path, Manifest& m) {
  const auto c = read_complex(path);
  const auto h = h1(c);
  const bool tree = h.betti1 == 0 && c.size() == tree_size(c.n());
  m.param("file", path);
  if (g.json) {
    json j{{"n", c.n()},
           {"faces", c.size()},
           {"betti1", h.betti1},
           {"torsion_factors", factors_json(h.torsion.factors())},
           {"torsion", h.torsion.to_string()},
           {"is_2tree", tree}};
    if (tree) j["h1_order"] = h.torsion.order().get_str();
    j["sylow"] = json::array();
    for (const auto& p : h.torsion.prime_partitions()) j["sylow"].push_back({{"p", p.p.get_str()}, {"partition", p.parts}});
    emit_manifest(g, m, "", &j);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  emit_manifest(g, m, "", nullptr);
  std::cout << factors_text(h.torsion.factors()) << '\n';
  if (h.betti1 > 0) std::cout << "free rank " << h.betti1 << '\n';
  return 0;
}

// ---- scan

struct ScanArgs {
  std::string file;
  std::string threshold = "3/2";
  std::string kind = "density";
  int max_vertices = kDefaultScanVertices;
  std::uint64_t node_budget = 20'000'000;
};

int run_scan(const Globals& g, const ScanArgs& a, bool threshold_given, Manifest& m) {
  const auto c = read_complex(a.file);
  ScanOptions o;
  o.node_budget = a.node_budget;
  o.threads = g.threads;
  DensityReport rep;
  if (a.kind == "density") {
    rep = densest_subcomplex(c, a.max_vertices, parse_fraction(a.threshold), o);
  } else if (a.kind == "hyperbolicity" || a.kind == "asphericity") {
    if (threshold_given) throw InputError("--threshold is fixed by --kind " + a.kind);
    rep = a.kind == "hyperbolicity" ? hyperbolicity_certificate(c, a.max_vertices, o)
                                    : asphericity_certificate(c, a.max_vertices, o);
  } else {
    throw InputError("unknown kind '" + a.kind + "' (density, hyperbolicity or asphericity)");
  }
  rep.complex_id = a.file;
  m.param("file", a.file);
  m.param("kind", rep.kind);
  m.param("threshold", rep.threshold.to_string());
  m.param("max_vertices", a.max_vertices);

  json j = json::parse(report_json(rep));
  if (g.json) {
    emit_manifest(g, m, "", &j);
    std::cout << j.dump(2) << '\n';
  } else {
    emit_manifest(g, m, "", nullptr);
    std::cout << j.dump(2) << '\n';
    std::cerr << (rep.pass ? (rep.exhaustive ? "pass" : "pass (partial scan, inconclusive)") : "fail") << ": max f2/f0 "
              << rep.ratio.to_string() << " vs threshold " << rep.threshold.to_string() << '\n';
  }
  return rep.pass ? 0 : kExitFail;
}

// ---- torsion-dist

int run_torsion_dist(const Globals& g, const std::string& input, int census_n, const std::string& prime,
                     std::uint64_t min_samples, const std::string& out_path, Manifest& m) {
  const BigInt p(prime);
  DistributionComparison cmp;
  if (census_n > 0) {
    if (!input.empty()) throw InputError("give either a sample file or --census, not both");
    CensusOptions o;
    o.threads = g.threads;
    o.keep_records = false;
    o.cache_dir = cache_dir_from_env();
    cmp = compare_pmf_to_cohen_lenstra(census_sylow_pmf(verify_kalai(census_n, o), p), p);
    m.param("census_n", census_n);
  } else {
    if (input.empty()) throw InputError("need a sample file or --census N");
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    std::vector<TorsionGroup> groups;
    for (const auto& r : read_records(in)) {
      groups.emplace_back(r.h1_factors);
      m.seed(r.seed);
    }
    cmp = compare_to_cohen_lenstra(groups, p, min_samples);
    m.param("input", input);
    m.param("samples", groups.size());
  }
  m.param("p", prime);

  std::ostringstream csv;
  write_comparison_csv(cmp, csv);
  if (!out_path.empty()) {
    write_file(out_path, csv.str());
    m.output(out_path);
  }
  if (g.json) {
    json j{{"p", prime},
           {"samples", cmp.samples},
           {"total_variation", cmp.total_variation},
           {"cl_remainder", cmp.cl_remainder},
           {"rows", json::array()}};
    for (const auto& r : cmp.rows)
      j["rows"].push_back(
          {{"partition", r.group.parts}, {"empirical", r.empirical}, {"cohen_lenstra", r.cohen_lenstra}, {"z", r.z}});
    emit_manifest(g, m, out_path, &j);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  emit_manifest(g, m, out_path, nullptr);
  if (out_path.empty()) std::cout << csv.str();
  std::cerr << "total variation " << cmp.total_variation << " (CL mass outside table " << cmp.cl_remainder << ")\n";
  return 0;
}

// ---- union-bound, torsion-growth

int run_union_bound(const Globals& g, int n, int cp, Manifest& m) {
  const auto ub = union_bound_value(n, cp);
  m.param("n", n);
  m.param("max_vertices", cp);
  if (g.json) {
    json j{{"n", n}, {"max_vertices", cp}, {"value", ub.value}, {"exact", ub.exact.get_str()}, {"terms", json::array()}};
    for (const auto& t : ub.terms) j["terms"].push_back(t.get_d());
    emit_manifest(g, m, "", &j);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  emit_manifest(g, m, "", nullptr);
  std::cout << "sum_{k<=" << cp << "} C(n,k) C(C(k,3),ceil(3k/2)) (3/n)^ceil(3k/2) at n=" << n << ": " << ub.value
            << '\n';
  for (std::size_t k = 0; k < ub.terms.size(); ++k) std::cout << "  k=" << k + 1 << "  " << ub.terms[k].get_d() << '\n';
  return 0;
}

int run_torsion_growth(const Globals& g, const std::vector<int>& ns, std::size_t count, std::uint64_t seed,
                       const std::string& out_path, Manifest& m) {
  std::ostringstream csv;
  csv << "n,samples,p_trivial,p_trivial_lo,p_trivial_hi,log_mean,log_mean_lo,log_mean_hi,log_mean_per_n2,"
         "log_stated_lower,log_proof_lower,log_upper\n";
  csv << std::setprecision(10);
  json rows = json::array();
  for (int n : ns) {
    BatchOptions o;
    o.backend = n <= 10 ? KernelBackend::Rational : KernelBackend::Float;
    o.workers = g.threads;
    const std::uint64_t s = seed + 1000 * static_cast<std::uint64_t>(n);
    for (int w = 0; w < g.threads; ++w) m.seed(s + static_cast<std::uint64_t>(w));
    const auto recs = sample_batch(n, count, Method::Dpp, s, o);
    const auto gr = torsion_growth(recs);
    const auto b = expected_torsion_bounds(n);
    csv << n << ',' << count << ',' << gr.trivial_fraction << ',' << gr.trivial_ci_low << ',' << gr.trivial_ci_high
        << ',' << gr.log_mean << ',' << gr.log_ci_low << ',' << gr.log_ci_high << ',' << gr.log_mean_per_n2 << ','
        << b.log_stated_lower << ',' << b.log_proof_lower << ',' << b.log_upper << '\n';
    rows.push_back({{"n", n},
                    {"samples", count},
                    {"p_trivial", gr.trivial_fraction},
                    {"log_mean", gr.log_mean},
                    {"log_mean_ci", {gr.log_ci_low, gr.log_ci_high}},
                    {"log_stated_lower", b.log_stated_lower},
                    {"log_proof_lower", b.log_proof_lower},
                    {"log_upper", b.log_upper}});
  }
  m.param("ns", ns);
  m.param("count", count);
  if (!out_path.empty()) {
    write_file(out_path, csv.str());
    m.output(out_path);
  }
  if (g.json) {
    json j{{"rows", rows}};
    emit_manifest(g, m, out_path, &j);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  emit_manifest(g, m, out_path, nullptr);
  if (out_path.empty()) std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random 2-trees: census, determinantal sampling, homology and density certificates"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (results depend on seed and this count)")
      ->check(CLI::Range(1, 256));
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--manifest", g.manifest_path, "Write the run manifest here");
  app.fallthrough();

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw 2-trees from the |H_1|^2 measure (JSONL)");
  sample->add_option("-n", sa.n, "Vertices")->required()->check(CLI::Range(3, kMaxVertices));
  sample->add_option("-c,--count", sa.count, "Records");
  sample->add_option("--method", sa.method, "dpp or mh");
  sample->add_option("--seed", sa.seed, "Seed of worker 0 (worker w uses seed + w)");
  sample->add_option("--mh-steps", sa.mh_steps, "MH steps between records");
  sample->add_option("--backend", sa.backend, "auto, rational or float");
  sample->add_option("-o,--out", sa.out, "Output JSONL (default stdout)");
  sample->add_flag("--timing", sa.timing, "Record per-sample milliseconds (breaks byte-identical output)");
  sample->add_option("--retry-budget", sa.retry_budget, "Float backend resamples before giving up");
  sample->add_option("--memory-budget-mb", sa.memory_mb, "Kernel memory budget");

  int census_n = 0;
  std::string census_out;
  bool allow_larger = false;
  auto* census = app.add_subcommand("census", "Enumerate all 2-trees on n vertices");
  census->add_option("-n", census_n, "Vertices")->required()->check(CLI::Range(1, kMaxVertices));
  census->add_option("-o,--out", census_out, "Output prefix (<prefix>.csv, <prefix>.json)");
  census->add_flag("--allow-larger", allow_larger, "Permit n = 7 (slow)");

  int verify_n = 0;
  bool verify_larger = false;
  auto* verify = app.add_subcommand("verify", "Check sum |H_1|^2 = n^C(n-2,2) by census");
  verify->add_option("-n", verify_n, "Vertices")->required()->check(CLI::Range(1, kMaxVertices));
  verify->add_flag("--allow-larger", verify_larger, "Permit n = 7 (slow)");

  std::string hom_file;
  auto* homology = app.add_subcommand("homology", "Invariant factors of H_1 of a complex file");
  homology->add_option("file", hom_file, "Complex (text or JSON)")->required();

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "Densest induced subcomplex and certificate verdict");
  scan->add_option("file", sc.file, "Complex (text or JSON)")->required();
  auto* thr = scan->add_option("--threshold", sc.threshold, "Ratio p/q or decimal (density kind)");
  scan->add_option("--max-vertices", sc.max_vertices, "C', largest vertex set scanned")->check(CLI::Range(3, 64));
  scan->add_option("--kind", sc.kind, "density, hyperbolicity (3/2) or asphericity (47/46 + tetrahedra)");
  scan->add_option("--node-budget", sc.node_budget, "Search nodes before reporting a partial scan");

  std::string td_in, td_p = "2", td_out;
  int td_census = 0;
  std::uint64_t td_min = kMinComparisonSamples;
  auto* tdist = app.add_subcommand("torsion-dist", "Sylow-p distribution vs Cohen-Lenstra (CSV)");
  tdist->add_option("samples", td_in, "JSONL from `sample`");
  tdist->add_option("--census", td_census, "Use the exact census distribution at this n instead");
  tdist->add_option("-p", td_p, "Prime");
  tdist->add_option("--min-samples", td_min, "Refuse smaller sample files");
  tdist->add_option("-o,--out", td_out, "Output CSV (default stdout)");

  int ub_n = 0, ub_c = 6;
  auto* ub = app.add_subcommand("union-bound", "Evaluate the density union bound");
  ub->add_option("-n", ub_n, "Vertices")->required()->check(CLI::PositiveNumber);
  ub->add_option("--max-vertices", ub_c, "C'")->check(CLI::PositiveNumber);

  std::vector<int> tg_ns{10, 15, 20, 25, 30};
  std::size_t tg_count = 100;
  std::uint64_t tg_seed = 1;
  std::string tg_out;
  auto* tg = app.add_subcommand("torsion-growth", "Sampled E|H_1| and P(H_1 = 0) against the bounds (CSV)");
  tg->add_option("--ns", tg_ns, "Vertex counts")->delimiter(',');
  tg->add_option("-c,--count", tg_count, "Samples per n");
  tg->add_option("--seed", tg_seed, "Base seed (n uses seed + 1000 n)");
  tg->add_option("-o,--out", tg_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Manifest m(name, argc, argv);
    if (*sample) return run_sample(g, sa, m);
    if (*census) return run_census(g, census_n, census_out, allow_larger, false, m);
    if (*verify) return run_census(g, verify_n, "", verify_larger, true, m);
    if (*homology) return run_homology(g, hom_file, m);
    if (*scan) return run_scan(g, sc, thr->count() > 0, m);
    if (*tdist) return run_torsion_dist(g, td_in, td_census, td_p, td_min, td_out, m);
    if (*ub) return run_union_bound(g, ub_n, ub_c, m);
    if (*tg) return run_torsion_growth(g, tg_ns, tg_count, tg_seed, tg_out, m);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

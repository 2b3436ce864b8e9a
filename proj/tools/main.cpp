#include <CLI11.hpp>

#include <mfpos/pipeline.hpp>
#include <mfpos/poincare.hpp>
#include <mfpos/serialize.hpp>

#include <mpfr.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

using namespace mfpos;
namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 generic error, then one per reportable condition.
constexpr int kExitNotFound = 2;
constexpr int kExitWidthNotReached = 3;
constexpr int kExitUndecided = 4;
constexpr int kExitEnclosureTooWide = 5;

struct GlobalOpts {
  long precision = 200;
  long prec_bits = 128;
  std::string format = "text";
  bool certify = false;
  std::uint64_t cmax_cap = 16384;
  double jr_exponent = 18.72;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string cache_dir = ".mfpos-cache";
  bool no_cache = false;
};

PipelineOptions pipeline_options(const GlobalOpts& g) {
  PipelineOptions o;
  o.precision = g.precision;
  o.prec_bits = static_cast<mpfr_prec_t>(g.prec_bits);
  o.cusp.jr_exponent = g.jr_exponent;
  return o;
}

PoincareOptions poincare_options(const GlobalOpts& g) {
  PoincareOptions o;
  o.prec_bits = std::max<mpfr_prec_t>(256, static_cast<mpfr_prec_t>(g.prec_bits));
  o.cmax_cap = g.cmax_cap;
  return o;
}

std::vector<unsigned> parse_range(const std::string& text) {
  std::vector<unsigned> out;
  if (text.find(':') != std::string::npos) {
    unsigned lo = 0, hi = 0;
    if (std::sscanf(text.c_str(), "%u:%u", &lo, &hi) != 2 || lo > hi) {
      throw CLI::ValidationError("--range", "expected LO:HI");
    }
    for (unsigned k = lo; k <= hi; ++k) {
      if (k % 4 == 0) out.push_back(k);
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  for (unsigned k : out) {
    if (k % 4 != 0 || k < 12) {
      throw CLI::ValidationError("--range", "weights must be multiples of 4, >= 12");
    }
  }
  return out;
}

Json weight_result_to_json(const WeightResult& r) {
  return Json{{"k", r.k},
              {"ell", r.ell},
              {"t", r.t},
              {"C2", upper_to_json(r.C2)},
              {"Bk", r.Bk.get_str()},
              {"L", r.L.get_str()},
              {"U", r.U.get_str()},
              {"A", r.A},
              {"witness", witness_to_json(r.witness)},
              {"precision_used", r.precision_used}};
}

WeightResult weight_result_from_json(const Json& j) {
  WeightResult r;
  r.k = j.at("k").get<unsigned>();
  r.ell = j.at("ell").get<unsigned>();
  r.t = j.at("t").get<unsigned>();
  r.C2 = upper_from_json(j.at("C2"));
  r.Bk = Integer(j.at("Bk").get<std::string>());
  r.L = Integer(j.at("L").get<std::string>());
  r.U = Integer(j.at("U").get<std::string>());
  r.A = j.at("A").get<unsigned>();
  r.witness = witness_from_json(j.at("witness"));
  r.precision_used = j.at("precision_used").get<long>();
  return r;
}

// Re-derive the witness checks for a loaded result.
bool verify_result(const WeightResult& r) {
  try {
    CanonicalBasis basis = miller_basis(r.k, static_cast<long>(r.A) + 2);
    QExpansion f = basis.forms[0];
    for (unsigned m = 1; m <= basis.ell; ++m) {
      f = add(f, scale(basis.forms[m], r.witness.values.at(m - 1)));
    }
    for (unsigned n = 0; n < r.A; ++n) {
      if (f.coeff(static_cast<long>(n)) < 0) return false;
    }
    return f.coeff(static_cast<long>(r.A)) < 0;
  } catch (const std::exception&) {
    return false;
  }
}

class ResultCache {
 public:
  ResultCache(const GlobalOpts& g) : opts_(g) {}

  WeightResult get(unsigned k) {
    const fs::path file = path_for(k);
    if (!opts_.no_cache && fs::exists(file)) {
      try {
        std::ifstream in(file);
        Json j = Json::parse(in);
        WeightResult r = weight_result_from_json(j);
        if (!opts_.certify || verify_result(r)) return r;
      } catch (const std::exception&) {
        // fall through to recompute
      }
    }
    WeightResult r = run_weight(k, pipeline_options(opts_));
    if (!opts_.no_cache) {
      std::error_code ec;
      fs::create_directories(opts_.cache_dir, ec);
      if (!ec) {
        std::ofstream out(file);
        out << weight_result_to_json(r).dump(1) << "\n";
      }
    }
    return r;
  }

 private:
  fs::path path_for(unsigned k) const {
    char name[128];
    std::snprintf(name, sizeof(name), "w%u_p%ld_b%ld_e%.4f.json", k, opts_.precision,
                  opts_.prec_bits, opts_.jr_exponent);
    return fs::path(opts_.cache_dir) / name;
  }

  GlobalOpts opts_;
};

std::vector<WeightResult> run_weights(const std::vector<unsigned>& ks, const GlobalOpts& g) {
  ResultCache cache(g);
  std::vector<WeightResult> results(ks.size());
  size_t next = 0;
  while (next < ks.size()) {
    const size_t batch = std::min<size_t>(g.jobs, ks.size() - next);
    std::vector<std::future<WeightResult>> futs;
    for (size_t i = 0; i < batch; ++i) {
      const unsigned k = ks[next + i];
      futs.push_back(std::async(std::launch::async, [&cache, k] {
        WeightResult r = cache.get(k);
        mpfr_free_cache();  // thread-local constants
        return r;
      }));
    }
    for (size_t i = 0; i < batch; ++i) results[next + i] = futs[i].get();
    next += batch;
  }
  return results;
}

void emit_table1(const std::vector<WeightResult>& rows, const std::string& format) {
  if (format == "csv") {
    std::printf("k,L(k),A(k),U(k)\n");
    for (const auto& r : rows) {
      std::printf("%u,%s,%u,%s\n", r.k, r.L.get_str().c_str(), r.A, r.U.get_str().c_str());
    }
  } else if (format == "json") {
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back(Json{{"k", r.k},
                         {"L", r.L.get_str()},
                         {"A", r.A},
                         {"U", r.U.get_str()}});
    }
    std::printf("%s\n", out.dump(1).c_str());
  } else {
    std::printf("%4s %8s %8s %10s\n", "k", "L(k)", "A(k)", "U(k)");
    for (const auto& r : rows) {
      std::printf("%4u %8s %8u %10s\n", r.k, r.L.get_str().c_str(), r.A,
                  r.U.get_str().c_str());
    }
  }
}

void emit_table2(const std::vector<WeightResult>& rows, const std::string& format,
                 long prec_bits) {
  if (format == "csv") {
    std::printf("k,t,C_2,B(k),A(k)\n");
    for (const auto& r : rows) {
      std::printf("%u,%u,%s,%s,%u\n", r.k, r.t, r.C2.str(8).c_str(), r.Bk.get_str().c_str(),
                  r.A);
    }
  } else if (format == "json") {
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back(Json{{"k", r.k},
                         {"t", r.t},
                         {"C2", upper_to_json(r.C2)},
                         {"Bk", r.Bk.get_str()},
                         {"A", r.A}});
    }
    std::printf("%s\n", out.dump(1).c_str());
  } else {
    std::printf("%4s %4s %14s %8s %8s   (C_2 upper bounds at %ld bits)\n", "k", "t", "C_2",
                "B(k)", "A(k)", prec_bits);
    for (const auto& r : rows) {
      std::printf("%4u %4u %14s %8s %8u\n", r.k, r.t, r.C2.str(8).c_str(),
                  r.Bk.get_str().c_str(), r.A);
    }
  }
}

int cmd_witness(unsigned k, long requested_n, const GlobalOpts& g) {
  ResultCache cache(g);
  unsigned N;
  if (requested_n > 0) {
    N = static_cast<unsigned>(requested_n);
  } else {
    N = cache.get(k).A;
  }
  const long prec = std::max<long>(g.precision, static_cast<long>(N) + 2);
  CanonicalBasis basis = miller_basis(k, prec);
  if (N < 1 || static_cast<long>(N) >= basis.prec) {
    std::fprintf(stderr, "witness: N out of range for precision %ld\n", basis.prec);
    return 1;
  }
  std::vector<LinearInequality> premises = inequalities_upto(basis, N - 1);
  LinearInequality target = inequality_for(basis, N);
  ImplicationResult r = implies(premises, target);
  if (r.implied) {
    Json out{{"k", k},
             {"N", N},
             {"exists", false},
             {"reason", "coefficient N is implied nonnegative by coefficients 1..N-1"}};
    if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
    std::printf("%s\n", out.dump(1).c_str());
    return 0;
  }
  const WitnessPoint& w = *r.witness;
  QExpansion f = basis.forms[0];
  for (unsigned m = 1; m <= basis.ell; ++m) f = add(f, scale(basis.forms[m], w.values[m - 1]));
  for (unsigned n = 0; n < N; ++n) {
    if (f.coeff(static_cast<long>(n)) < 0) {
      std::fprintf(stderr, "witness: internal verification failed\n");
      return 1;
    }
  }
  if (!(f.coeff(static_cast<long>(N)) < 0)) {
    std::fprintf(stderr, "witness: internal verification failed\n");
    return 1;
  }
  Json expansion = Json::array();
  for (long n = 0; n < basis.prec; ++n) {
    expansion.push_back(Json::array({n, to_string(f.coeff(n))}));
  }
  Json out{{"k", k},
           {"N", N},
           {"exists", true},
           {"witness", witness_to_json(w)},
           {"negative_at", N},
           {"expansion", expansion}};
  std::printf("%s\n", out.dump(1).c_str());
  return 0;
}

int cmd_poincare(unsigned k, std::uint64_t limit, double target_width, const GlobalOpts& g) {
  auto [L, U] = theorem1_bounds(k, static_cast<mpfr_prec_t>(g.prec_bits));
  (void)U;

  if (target_width > 0) {
    // Fixed-width enclosures per coefficient; WidthNotReached surfaces as
    // exit code 3 through the handler in main.
    Json out = Json::array();
    for (std::uint64_t n = 1; n <= limit; ++n) {
      out.push_back(poincare_coeff_to_json(poincare_coeff(k, n, target_width,
                                                          poincare_options(g))));
    }
    std::printf("%s\n", out.dump(1).c_str());
    return 0;
  }

  std::vector<SignReport> rows = sign_scan(k, limit, poincare_options(g));

  if (g.format == "csv") {
    std::printf("n,lo,hi,c_max,verdict\n");
    for (const auto& row : rows) {
      Json j = sign_report_to_json(row);
      std::printf("%llu,%.17g,%.17g,%llu,%s\n",
                  static_cast<unsigned long long>(row.n), row.lo, row.hi,
                  static_cast<unsigned long long>(row.c_max),
                  j.at("verdict").get<std::string>().c_str());
    }
  } else {
    Json out = Json::array();
    for (const auto& row : rows) out.push_back(sign_report_to_json(row));
    std::printf("%s\n", out.dump(1).c_str());
  }

  // Lower-bound certificate: every coefficient up to L(k)-1 must be positive.
  const Integer last = L - 1;
  bool certified = true;
  bool undecided = false;
  for (const auto& row : rows) {
    if (Integer(static_cast<unsigned long>(row.n)) > last) break;
    if (row.verdict == SignVerdict::Undecided) undecided = true;
    if (row.verdict != SignVerdict::Positive) certified = false;
  }
  const bool covers = Integer(static_cast<unsigned long>(limit)) >= last;
  if (!covers) {
    std::fprintf(stderr, "note: limit %llu below L(k)-1 = %s; certificate incomplete\n",
                 static_cast<unsigned long long>(limit), last.get_str().c_str());
  }
  if (certified && covers) {
    std::fprintf(stderr, "certified: b(n) > 0 for all n <= %s (k = %u)\n",
                 last.get_str().c_str(), k);
    return 0;
  }
  if (undecided) return kExitUndecided;
  return certified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  struct CacheRelease {
    ~CacheRelease() {
      std::fflush(stdout);
      mpfr_free_cache();
    }
  } cache_release;

  CLI::App app{"nonnegativity bounds for level-one modular forms"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default options")
      ->check(CLI::ExistingFile);
  app.add_option("--precision", g.precision, "q-expansion terms")->capture_default_str();
  app.add_option("--prec-bits", g.prec_bits, "working mantissa bits for bounds")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_flag("--certify", g.certify, "re-verify certificates and cached results on load");
  app.add_option("--cmax-cap", g.cmax_cap, "cap on the Kloosterman c-sum length")
      ->capture_default_str();
  app.add_option("--jr-exponent", g.jr_exponent,
                 "exponent in the cusp coefficient-bound constant")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "parallel weights for table commands")
      ->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "result cache directory")->capture_default_str();
  app.add_flag("--no-cache", g.no_cache, "disable the result cache");

  std::string range = "12:88";
  unsigned arg_k = 0;
  long arg_n = -1;
  std::uint64_t arg_limit = 0;
  double arg_width = 0.0;

  CLI::App* table1 = app.add_subcommand("table1", "rows (k, L(k), A(k), U(k))");
  table1->add_option("--range", range, "weights, LO:HI or comma list")->capture_default_str();
  CLI::App* table2 = app.add_subcommand("table2", "rows (k, t, C_2, B(k), A(k))");
  table2->add_option("--range", range, "weights, LO:HI or comma list")->capture_default_str();
  CLI::App* ak = app.add_subcommand("ak", "compute A(k) for one weight");
  ak->add_option("k", arg_k, "weight")->required();
  CLI::App* basis_cmd = app.add_subcommand("basis", "canonical basis as JSON");
  basis_cmd->add_option("k", arg_k, "weight")->required();
  CLI::App* witness_cmd = app.add_subcommand("witness", "form with first negative coefficient at N");
  witness_cmd->add_option("k", arg_k, "weight")->required();
  witness_cmd->add_option("N", arg_n, "target index (default A(k))");
  CLI::App* poincare_cmd = app.add_subcommand("poincare", "sign report for Poincare coefficients");
  poincare_cmd->add_option("k", arg_k, "weight")->required();
  poincare_cmd->add_option("limit", arg_limit, "scan n = 1..limit")->required();
  poincare_cmd->add_option("--target-width", arg_width,
                           "emit enclosures of at most this width instead of sign verdicts");
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "rigorous bound report for one weight");
  bounds_cmd->add_option("k", arg_k, "weight")->required();

  // A config file provides defaults; explicit flags win.
  if (argc > 1) {
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config") {
        std::ifstream in(argv[i + 1]);
        if (in) {
          Json j = Json::parse(in, nullptr, false);
          if (!j.is_discarded()) {
            if (j.contains("precision")) g.precision = j["precision"].get<long>();
            if (j.contains("prec-bits")) g.prec_bits = j["prec-bits"].get<long>();
            if (j.contains("format")) g.format = j["format"].get<std::string>();
            if (j.contains("certify")) g.certify = j["certify"].get<bool>();
            if (j.contains("cmax-cap")) g.cmax_cap = j["cmax-cap"].get<std::uint64_t>();
            if (j.contains("jr-exponent")) g.jr_exponent = j["jr-exponent"].get<double>();
            if (j.contains("jobs")) g.jobs = j["jobs"].get<unsigned>();
            if (j.contains("cache-dir")) g.cache_dir = j["cache-dir"].get<std::string>();
            if (j.contains("no-cache")) g.no_cache = j["no-cache"].get<bool>();
          }
        }
      }
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) {
      emit_table1(run_weights(parse_range(range), g), g.format);
      return 0;
    }
    if (*table2) {
      emit_table2(run_weights(parse_range(range), g), g.format, g.prec_bits);
      return 0;
    }
    if (*ak) {
      ResultCache cache(g);
      WeightResult r = cache.get(arg_k);
      if (g.format == "text") {
        std::printf("A(%u) = %u   (t = %u, B(k) = %s, L = %s, U = %s)\n", r.k, r.A, r.t,
                    r.Bk.get_str().c_str(), r.L.get_str().c_str(), r.U.get_str().c_str());
        std::printf("witness:");
        for (const auto& v : r.witness.values) std::printf(" %s", to_string(v).c_str());
        std::printf("\n");
      } else {
        std::printf("%s\n", weight_result_to_json(r).dump(1).c_str());
      }
      return 0;
    }
    if (*basis_cmd) {
      CanonicalBasis b = miller_basis(arg_k, g.precision);
      std::printf("%s\n", basis_to_json(b).dump(1).c_str());
      return 0;
    }
    if (*witness_cmd) return cmd_witness(arg_k, arg_n, g);
    if (*poincare_cmd) return cmd_poincare(arg_k, arg_limit, arg_width, g);
    if (*bounds_cmd) {
      const long prec = g.precision;
      CanonicalBasis b = miller_basis(arg_k, prec);
      const unsigned t = find_t(b, static_cast<unsigned>(prec - 1));
      CuspBoundOptions copts;
      copts.jr_exponent = g.jr_exponent;
      BoundReport rep = c2_and_Bk(arg_k, b, t, static_cast<mpfr_prec_t>(g.prec_bits), copts);
      std::printf("%s\n", bound_report_to_json(rep).dump(1).c_str());
      return 0;
    }
  } catch (const NotFoundError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNotFound;
  } catch (const WidthNotReachedError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitWidthNotReached;
  } catch (const UndecidedError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUndecided;
  } catch (const EnclosureTooWideError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitEnclosureTooWide;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}

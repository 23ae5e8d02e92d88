// Command-line surface: construct, verify, profile, structure, race.
//
// Exit codes: 0 success/pass, 1 verification fail, 2 construction or analysis
// failure, 3 inconclusive, 64 usage error, 65 certificate parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumrace/certificate.hpp"
#include "sumrace/fold.hpp"
#include "sumrace/intset.hpp"
#include "sumrace/race.hpp"
#include "sumrace/structure.hpp"
#include "sumrace/verify.hpp"

namespace {

using namespace sumrace;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitAnalysis = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct Options {
  Budget budget;
  std::int64_t m = 1;
  std::string mode = "equal-diam";
  std::string out;
  std::string set_literal;
  std::string set_a;
  std::string set_b;
  std::string input;
  std::string cert_path;
  std::int64_t h_max = 10;
  std::string format = "human";
};

std::vector<IntSet> sets_from_input(const Options& opt,
                                    const std::vector<std::string>& literals) {
  std::vector<IntSet> sets;
  if (!opt.input.empty()) {
    std::ifstream in(opt.input);
    if (!in) throw ParseError("cannot read input file " + opt.input);
    sets = read_set_lines(in);
  } else {
    for (const auto& lit : literals) sets.push_back(parse_set_literal(lit));
  }
  if (sets.empty()) throw ParseError("no input sets given");
  return sets;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write " + out_path);
  out << text;
}

int cmd_construct(const Options& opt) {
  RaceCertificate cert;
  try {
    cert = build_race(opt.m, mode_from_string(opt.mode), opt.budget);
  } catch (const Error& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitAnalysis;
  }
  emit(dump_certificate(cert), opt.out);
  if (cert.failure) {
    std::cerr << "construction stopped at checkpoint " << cert.failure->failed_m
              << ": " << cert.failure->error << "\n";
    std::cerr << "partial trace: " << certificate_to_json(cert)["trace"].dump()
              << "\n";
    return kExitAnalysis;
  }
  return kExitPass;
}

int cmd_verify(const Options& opt) {
  RaceCertificate cert;
  try {
    cert = read_certificate_file(opt.cert_path);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }
  const VerificationReport report = verify_certificate(cert, opt.budget);
  if (opt.format == "json") {
    std::cout << report_to_json(report).dump(2) << "\n";
  } else {
    std::printf("verdict: %s\n", to_string(report.verdict).c_str());
    std::printf("%8s  %-34s  %-6s  %s\n", "h", "method", "match", "sign");
    for (const auto& cp : report.checkpoints) {
      std::printf("%8lld  %-34s  %-6s  %s\n", static_cast<long long>(cp.h),
                  to_string(cp.method).c_str(), cp.match ? "yes" : "no",
                  cp.sign_ok ? "ok" : "BAD");
    }
    for (const auto& v : report.violations) {
      std::printf("violation: %s\n", v.c_str());
    }
  }
  if (cert.failure) {
    std::cerr << "note: certificate carries a failure marker (stopped at m="
              << cert.failure->failed_m << ")\n";
  }
  switch (report.verdict) {
    case Verdict::pass:
      return kExitPass;
    case Verdict::fail:
      return kExitFail;
    case Verdict::inconclusive:
      return kExitInconclusive;
  }
  return kExitFail;
}

int cmd_profile(const Options& opt) {
  std::vector<IntSet> sets;
  try {
    sets = sets_from_input(opt, {opt.set_literal});
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  try {
    bool first = true;
    for (const auto& set : sets) {
      const GrowthProfile profile = growth_profile(set, opt.h_max, opt.budget);
      if (opt.format == "csv") {
        if (first) std::printf("h,size,diff\n");
        for (std::size_t i = 0; i < profile.sizes.size(); ++i) {
          const std::uint64_t prev = i ? profile.sizes[i - 1] : 0;
          std::printf("%zu,%llu,%llu\n", i + 1,
                      static_cast<unsigned long long>(profile.sizes[i]),
                      static_cast<unsigned long long>(profile.sizes[i] - prev));
        }
      } else if (opt.format == "json") {
        nlohmann::json o = nlohmann::json::object();
        o["set"] = set.elements();
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < profile.sizes.size(); ++i) {
          nlohmann::json row = nlohmann::json::object();
          row["h"] = i + 1;
          row["size"] = profile.sizes[i];
          row["diff"] = profile.sizes[i] - (i ? profile.sizes[i - 1] : 0);
          rows.push_back(std::move(row));
        }
        o["rows"] = std::move(rows);
        std::cout << o.dump(2) << "\n";
      } else {
        std::printf("# %s\n", to_literal(set).c_str());
        std::printf("%8s  %12s  %12s\n", "h", "size", "diff");
        for (std::size_t i = 0; i < profile.sizes.size(); ++i) {
          const std::uint64_t prev = i ? profile.sizes[i - 1] : 0;
          std::printf("%8zu  %12llu  %12llu\n", i + 1,
                      static_cast<unsigned long long>(profile.sizes[i]),
                      static_cast<unsigned long long>(profile.sizes[i] - prev));
        }
      }
      first = false;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitAnalysis;
  }
  return kExitPass;
}

int cmd_structure(const Options& opt) {
  std::vector<IntSet> sets;
  try {
    sets = sets_from_input(opt, {opt.set_literal});
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& input : sets) {
    Normalized norm = normalize(input);
    if (norm.set.size() < 2) {
      std::cerr << "structure analysis needs at least two elements\n";
      return kExitUsage;
    }
    try {
      const EventualStructure es = eventual_structure(norm.set, opt.budget);
      nlohmann::json o = nlohmann::json::object();
      o["set"] = norm.set.elements();
      nlohmann::json nrm = nlohmann::json::object();
      nrm["input"] = input.elements();
      nrm["shift"] = norm.shift;
      nrm["scale"] = norm.scale;
      o["normalization"] = std::move(nrm);
      o["n"] = es.n;
      o["h0"] = es.h0;
      o["b"] = es.b;
      o["c"] = es.c;
      o["a1"] = es.low_fringe;
      o["a2"] = es.high_fringe;
      o["delta"] = es.delta;
      o["gamma"] = es.gamma;
      std::cout << o.dump(2) << "\n";
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kExitAnalysis;
    }
  }
  return kExitPass;
}

int cmd_race(const Options& opt) {
  std::vector<IntSet> sets;
  try {
    sets = sets_from_input(opt, {opt.set_a, opt.set_b});
    if (sets.size() < 2) throw ParseError("race needs two sets");
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  const IntSet& a = sets[0];
  const IntSet& b = sets[1];
  const auto sizes_a = hfold_sizes_upto(a, opt.h_max, opt.budget);
  const auto sizes_b = hfold_sizes_upto(b, opt.h_max, opt.budget);
  const auto rows =
      static_cast<Elem>(std::min(sizes_a.size(), sizes_b.size()));

  int alternations = 0;
  int prev_nonzero = 0;
  if (opt.format == "csv") std::printf("h,size_a,size_b,sign\n");
  if (opt.format != "csv" && opt.format != "json") {
    std::printf("%8s  %14s  %14s  %5s\n", "h", "size_a", "size_b", "sign");
  }
  nlohmann::json json_rows = nlohmann::json::array();
  for (Elem h = 1; h <= rows; ++h) {
    const std::uint64_t sa = sizes_a[static_cast<std::size_t>(h - 1)];
    const std::uint64_t sb = sizes_b[static_cast<std::size_t>(h - 1)];
    const int sign = sa > sb ? 1 : (sa < sb ? -1 : 0);
    if (sign != 0) {
      if (prev_nonzero != 0 && sign != prev_nonzero) ++alternations;
      prev_nonzero = sign;
    }
    if (opt.format == "csv") {
      std::printf("%lld,%llu,%llu,%d\n", static_cast<long long>(h),
                  static_cast<unsigned long long>(sa),
                  static_cast<unsigned long long>(sb), sign);
    } else if (opt.format == "json") {
      nlohmann::json row = nlohmann::json::object();
      row["h"] = h;
      row["size_a"] = sa;
      row["size_b"] = sb;
      row["sign"] = sign;
      json_rows.push_back(std::move(row));
    } else {
      std::printf("%8lld  %14llu  %14llu  %5d\n", static_cast<long long>(h),
                  static_cast<unsigned long long>(sa),
                  static_cast<unsigned long long>(sb), sign);
    }
  }
  if (opt.format == "json") {
    nlohmann::json o = nlohmann::json::object();
    o["rows"] = std::move(json_rows);
    o["alternations"] = alternations;
    std::cout << o.dump(2) << "\n";
  } else if (opt.format != "csv") {
    std::printf("alternations: %d\n", alternations);
  }
  if (rows < opt.h_max) {
    std::cerr << "budget exceeded; first uncomputed h = " << (rows + 1) << "\n";
    return kExitAnalysis;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"iterated sumset races: growth profiles, eventual structure, "
               "and alternating-race certificates"};
  app.require_subcommand(1);
  app.add_option("--dense-bits", opt.budget.dense_bits,
                 "bit budget for the dense engine")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--sparse-max-elems", opt.budget.sparse_max_elems,
                 "element cap for the sparse engine")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* construct = app.add_subcommand(
      "construct", "build a race certificate with m alternations");
  construct->fallthrough();
  construct->add_option("--m", opt.m, "number of checkpoints")
      ->required()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20));
  construct->add_option("--mode", opt.mode, "equal-diam or free-diam")
      ->check(CLI::IsMember({"equal-diam", "free-diam"}))
      ->capture_default_str();
  construct->add_option("--out", opt.out, "output path (stdout when absent)");

  auto* verify =
      app.add_subcommand("verify", "independently check a certificate");
  verify->fallthrough();
  verify->add_option("certificate", opt.cert_path, "certificate JSON file")
      ->required();
  verify->add_option("--format", opt.format, "human or json")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();

  auto* profile =
      app.add_subcommand("profile", "growth profile h -> |hA| of one set");
  profile->fallthrough();
  profile->add_option("--set", opt.set_literal, "set literal, e.g. \"0,1,3\"");
  profile->add_option("--input", opt.input, "file with one set per line");
  profile->add_option("--hmax", opt.h_max, "largest fold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  profile->add_option("--format", opt.format, "human, csv or json")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();

  auto* structure = app.add_subcommand(
      "structure", "eventual fringe decomposition of one set (JSON)");
  structure->fallthrough();
  structure->add_option("--set", opt.set_literal, "set literal");
  structure->add_option("--input", opt.input, "file with one set per line");

  auto* race = app.add_subcommand("race", "sign profile of |hA| - |hB|");
  race->fallthrough();
  race->add_option("--a", opt.set_a, "first set literal");
  race->add_option("--b", opt.set_b, "second set literal");
  race->add_option("--input", opt.input, "file with two sets, one per line");
  race->add_option("--hmax", opt.h_max, "largest fold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  race->add_option("--format", opt.format, "human, csv or json")
      ->check(CLI::IsMember({"human", "csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (profile->parsed()) return cmd_profile(opt);
    if (structure->parsed()) return cmd_structure(opt);
    if (race->parsed()) return cmd_race(opt);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitAnalysis;
  }
  return kExitUsage;
}

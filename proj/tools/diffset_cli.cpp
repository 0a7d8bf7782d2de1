// diffset: construct point sets with small difference sets, verify their
// local subset properties, and emit interval-arithmetic certificates for
// the analytic inequalities behind the verification.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "diffset/construction.hpp"
#include "diffset/core.hpp"
#include "diffset/engine.hpp"
#include "diffset/prover.hpp"
#include "diffset/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitInconclusive = 3;

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

int cmd_construct(int levels, std::int64_t n, const std::string& kind, std::uint64_t seed,
                  const std::string& out_path, const std::string& profile_path) {
  diffset::SetFile file;
  std::string label;
  if (kind == "pn") {
    if (levels >= 0) {
      file = diffset::to_set_file(diffset::build_pn(levels));
      label = "P_" + std::to_string(levels);
    } else if (n >= 1) {
      file = diffset::to_set_file(diffset::build_truncated(n));
      label = "truncated(" + std::to_string(n) + ")";
    } else {
      std::cerr << "construct: need --levels or --n\n";
      return kExitUsage;
    }
  } else {
    if (n < 1) {
      std::cerr << "construct: baselines need --n\n";
      return kExitUsage;
    }
    file.levels = 0;
    file.values = diffset::build_baseline(diffset::baseline_kind_from_string(kind), n, seed);
    label = kind + "(" + std::to_string(n) + ")";
  }

  if (!out_path.empty()) diffset::write_set_file(out_path, file);
  std::int64_t dc = diffset::diff_count(file.values);
  std::cout << label << ": |A| = " << file.values.size() << ", |A-A| = " << dc
            << ", distances = " << (dc - 1) / 2 << "\n";
  if (!profile_path.empty()) {
    auto profile = file.levels > 0
                       ? diffset::diff_profile_codes(diffset::to_point_set(file))
                       : diffset::diff_profile(file.values);
    write_text_file(profile_path, diffset::profile_csv(profile));
  }
  return kExitOk;
}

int cmd_verify(const std::string& in_path, int k, bool all_k, const std::string& mode,
               std::uint64_t budget, int threads, const std::string& report_path) {
  diffset::SetFile file = diffset::read_set_file(in_path);
  std::vector<diffset::LocalReport> reports;

  if (all_k) {
    reports = diffset::verify_all_k(file.values, threads);
  } else {
    if (k < 1) {
      std::cerr << "verify: need --k or --all-k\n";
      return kExitUsage;
    }
    bool use_bnb = mode == "bnb" ||
                   (mode == "auto" && file.values.size() > diffset::kExhaustiveCap);
    reports.push_back(use_bnb ? diffset::min_subset_bnb(file.values, k, budget)
                              : diffset::verify_exhaustive(file.values, k, threads));
  }

  std::string rows = diffset::report_rows_csv(reports);
  std::cout << rows;
  if (!report_path.empty()) write_text_file(report_path, diffset::report_blocks(reports));

  bool inconclusive = false;
  for (const auto& r : reports) {
    if (!r.complete) {
      inconclusive = true;
      continue;
    }
    if (!r.holds) {
      std::cerr << "violation at k=" << r.k << ": min_diff=" << r.min_diff << " < bound ["
                << r.bound.lo_str << "," << r.bound.hi_str << "], witness "
                << r.witness.to_string() << "\n";
      return kExitViolation;
    }
  }
  return inconclusive ? kExitInconclusive : kExitOk;
}

int finish_certificate(const diffset::Certificate& cert, const std::string& cert_path) {
  std::string text = diffset::serialize_certificate(cert);
  if (!cert_path.empty()) write_text_file(cert_path, text);
  std::cout << text;
  if (!cert.complete) {
    std::cerr << "certificate incomplete: " << cert.gaps.size() << " gap(s)\n";
    return kExitInconclusive;
  }
  return kExitOk;
}

int cmd_prove(const std::string& claim, int grid_max, int threads,
              const std::string& cert_path) {
  if (claim == "f0") return finish_certificate(diffset::certify_f0_nonneg(), cert_path);
  if (claim == "f1") return finish_certificate(diffset::certify_f1_nonneg(), cert_path);
  if (claim == "gamma-reduction") {
    return finish_certificate(diffset::certify_gamma_reduction(), cert_path);
  }
  if (claim == "domain-reduction") {
    diffset::Certificate cert = diffset::certify_domain_reduction();
    int rc = finish_certificate(cert, cert_path);
    if (rc == kExitOk && !cert.boxes.empty()) {
      std::cout << "margin: 1 + 10^p - 12^p >= " << cert.boxes.front().lb << "\n";
    }
    return rc;
  }
  if (claim == "subadditivity") {
    // a fixed at [1,1], b swept over [1e-6, 1]
    bool ok = diffset::check_subadditivity(
        diffset::Interval::point(1.0), diffset::Interval(1e-6, 1.0));
    std::cout << "subadditivity a^p + b^p > (a+b)^p on a=1, b in [1e-6,1]: "
              << (ok ? "verified" : "inconclusive") << "\n";
    return ok ? kExitOk : kExitInconclusive;
  }
  if (claim == "tight-grid") {
    diffset::GridReport rep = diffset::check_tight_inequality_grid(grid_max, threads);
    std::cout << "tight-grid max=" << rep.max_val << " cells=" << rep.cells_checked
              << " violations=" << rep.violations << " unresolved=" << rep.unresolved << "\n";
    for (const auto& cell : rep.bad_cells) {
      std::cerr << "bad cell a=" << cell[0] << " b=" << cell[1] << " c=" << cell[2]
                << " d=" << cell[3] << "\n";
    }
    if (rep.violations > 0) return kExitViolation;
    if (rep.unresolved > 0) return kExitInconclusive;
    return kExitOk;
  }
  std::cerr << "prove: unknown claim " << claim << "\n";
  return kExitUsage;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& format) {
  struct Row {
    std::string name;
    std::size_t count;
    std::int64_t diff;
    std::int64_t dist;
  };
  std::vector<Row> rows;
  for (const auto& path : paths) {
    diffset::SetFile file = diffset::read_set_file(path);
    Row r;
    r.name = std::filesystem::path(path).stem().string();
    r.count = file.values.size();
    r.diff = diffset::diff_count(file.values);
    r.dist = (r.diff - 1) / 2;
    rows.push_back(std::move(r));
  }
  if (format == "csv") {
    std::cout << "name,n,diff_count,distance_count\n";
    for (const auto& r : rows) {
      std::cout << r.name << "," << r.count << "," << r.diff << "," << r.dist << "\n";
    }
  } else {
    for (const auto& r : rows) {
      nlohmann::json j{{"name", r.name},
                       {"n", r.count},
                       {"diff_count", r.diff},
                       {"distance_count", r.dist}};
      std::cout << j.dump() << "\n";
    }
  }
  return kExitOk;
}

int cmd_validate_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return kExitUsage;
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  diffset::Certificate cert = diffset::parse_certificate(text);
  std::string why;
  if (diffset::validate_certificate(cert, &why)) {
    std::cout << "certificate " << cert.claim_id << ": valid (" << cert.boxes.size()
              << " boxes)\n";
    return kExitOk;
  }
  std::cerr << "certificate " << cert.claim_id << ": INVALID: " << why << "\n";
  return kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"difference sets with local properties: construction, verification, certificates"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build a point set or baseline and write it");
  int levels = -1;
  std::int64_t n = -1;
  std::string kind = "pn";
  std::uint64_t seed = 0;
  std::string out_path, profile_path;
  construct->add_option("--levels,-l", levels, "hypercube levels (|P| = 2^levels)");
  construct->add_option("--n", n, "element count (truncated set or baseline size)");
  construct->add_option("--kind", kind, "pn | arithmetic_progression | sidon | random_integers")
      ->default_val("pn");
  construct->add_option("--seed", seed, "seed for random baselines");
  construct->add_option("--out,-o", out_path, "output set file");
  construct->add_option("--profile", profile_path, "write difference multiplicity CSV");

  // verify
  auto* verify = app.add_subcommand("verify", "check the local property of a set file");
  std::string verify_in, verify_mode = "auto", report_path;
  int verify_k = -1, threads = default_threads();
  bool all_k = false;
  std::uint64_t budget = diffset::kDefaultNodeBudget;
  verify->add_option("input", verify_in, "set file")->required();
  verify->add_option("--k", verify_k, "subset size to check");
  verify->add_flag("--all-k", all_k, "check every k up to |A|");
  verify->add_option("--mode", verify_mode, "exhaustive | bnb | auto")->default_val("auto");
  verify->add_option("--budget", budget, "branch-and-bound node budget");
  verify->add_option("--threads", threads, "worker count");
  verify->add_option("--report", report_path, "write key-value report blocks");

  // prove
  auto* prove = app.add_subcommand("prove", "emit an interval-arithmetic certificate");
  std::string claim, cert_path;
  int grid_max = 30, prove_threads = default_threads();
  prove->add_option("claim", claim,
                    "subadditivity | f0 | f1 | gamma-reduction | domain-reduction | tight-grid")
      ->required();
  prove->add_option("--max", grid_max, "grid bound for tight-grid");
  prove->add_option("--threads", prove_threads, "worker count");
  prove->add_option("--cert", cert_path, "certificate output file");

  // report
  auto* report = app.add_subcommand("report", "consolidated table over set files");
  std::vector<std::string> report_paths;
  std::string format = "csv";
  report->add_option("inputs", report_paths, "set files");
  report->add_option("--format", format, "csv | json-lines")->default_val("csv");

  // validate-certificate
  auto* validate = app.add_subcommand("validate-certificate", "re-check a serialized certificate");
  std::string cert_in;
  validate->add_option("certificate", cert_in, "certificate file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) return cmd_construct(levels, n, kind, seed, out_path, profile_path);
    if (verify->parsed())
      return cmd_verify(verify_in, verify_k, all_k, verify_mode, budget, threads, report_path);
    if (prove->parsed()) return cmd_prove(claim, grid_max, prove_threads, cert_path);
    if (report->parsed()) return cmd_report(report_paths, format);
    if (validate->parsed()) return cmd_validate_certificate(cert_in);
  } catch (const diffset::UndecidableError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

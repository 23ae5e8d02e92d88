#ifndef SUMRACE_VERIFY_HPP
#define SUMRACE_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumrace/race.hpp"

namespace sumrace {

enum class Verdict { pass, fail, inconclusive };

enum class CheckMethod { brute_force, analytic, unchecked };

struct CheckpointReport {
  Elem h = 0;
  CheckMethod method = CheckMethod::unchecked;
  std::optional<mpz_class> size_a;  // recomputed values
  std::optional<mpz_class> size_b;
  bool match = false;
  bool sign_ok = false;
  std::string note;
};

struct ResourceUsage {
  std::uint64_t brute_folds = 0;       // fold passes run on full sets
  std::uint64_t peak_dense_bits = 0;   // largest bit vector requested
};

struct VerificationReport {
  Verdict verdict = Verdict::inconclusive;
  std::vector<CheckpointReport> checkpoints;
  std::vector<std::string> violations;  // consistency and hypothesis failures
  ResourceUsage usage;
};

/// Independently checks a certificate: recomputes every checkpoint by
/// materialized brute force when the budget allows, otherwise analytically
/// with every lemma hypothesis re-validated; any recorded hypothesis that
/// fails to hold is reported even when sizes agree.
VerificationReport verify_certificate(const RaceCertificate& cert,
                                      const Budget& budget = {});

std::string to_string(Verdict v);
std::string to_string(CheckMethod m);
nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace sumrace

#endif  // SUMRACE_VERIFY_HPP

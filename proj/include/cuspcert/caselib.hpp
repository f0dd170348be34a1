// End-to-end case certification: the standard witness table (one torus plus
// one character per classical family), full certificates with JSON/CSV
// reports, and the closed-form non-integrality cross-check.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspcert/genpos.hpp"
#include "cuspcert/torus.hpp"

namespace cuspcert {

inline constexpr const char* kSchemaVersion = "cuspcert-1";
inline constexpr const char* kToolVersion = "cuspcert 1.0.0";

// Witness data for the certification grid: a twist element of the Weyl group
// and a character lattice vector expected to be in general position for the
// resulting torus.
struct StandardWitness {
  Family family;
  int rank;
  SignedPermutation twist;
  std::vector<Int> vec;   // ambient coordinates, lies in the character lattice
  std::string label;      // shape of the twist, e.g. "coxeter"
};

StandardWitness standard_witness(Family family, int rank);

// Twist selection for a certification request.  `standard` is the table
// entry above; `coxeter` forces the plain Coxeter-type element (for family D
// this is the isotropic signed cycle, a deliberate negative control);
// `class_index` picks a twisted-conjugacy class representative.
enum class TwistSelector { standard, coxeter, class_index };

SignedPermutation twist_element(Family family, int rank, TwistSelector sel, int class_index = 0);
std::string twist_label(TwistSelector sel, int class_index = 0);

struct CaseRequest {
  Family family;
  int rank = 0;
  Int q = 0;
  TwistSelector twist = TwistSelector::standard;
  int class_index = 0;
  bool require_oracle = false;  // throw instead of skipping the oracle cross-check
};

struct Certificate {
  std::string family;
  int rank = 0;
  Int q = 0;
  std::string lattice_name;
  int ambient_dim = 0;
  std::vector<std::vector<Int>> lattice_basis;  // basis vectors in ambient coordinates
  std::string twist_label;
  std::vector<int> twist_images;
  bool anisotropic = false;
  Int torus_order = 0;
  std::uint64_t wtk_order = 0;
  std::string wtk_method;
  std::vector<std::vector<int>> wtk_generators;
  std::vector<Int> witness;
  bool general_position = false;
  bool oracle_checked = false;
  std::vector<std::string> failures;
  std::string tool_version;
  std::string timestamp;

  bool pass() const { return anisotropic && general_position && failures.empty(); }
  bool operator==(const Certificate&) const = default;
};

Certificate certify_case(const CaseRequest& req);
Certificate certify_case(Family family, int rank, const Int& q);

// One certificate per (family, rank, q), ordered by (family, rank, q)
// independent of thread count.  Ranks outside a family's valid range are
// skipped.  threads <= 0 selects the hardware concurrency.
std::vector<Certificate> certify_range(const std::vector<Family>& families, int rank_lo,
                                       int rank_hi, const std::vector<Int>& qs, int threads = 0,
                                       bool require_oracle = false);

int min_rank(Family family);
inline constexpr int kGridMaxRank = 8;
std::vector<Family> all_families();
std::vector<Int> default_q_grid();

// Closed-form solvability of (q wF0 - 1) x = g^r(v) - v for the standard
// witness v.  The relevant element g is the twist itself for split families,
// and the full signed cycle wF0 for 2D; r runs over 1 .. bound-1.
int nonintegrality_r_bound(Family family, int rank);

// The anchor coordinate of the unique rational solution, as given by the
// geometric series along the twist's cycle.  Integrality of this one
// coordinate decides integer solvability of the whole system, because every
// other coordinate is an integer cascade from the anchor.
Rat nonintegrality_closed_form(Family family, int rank, const Int& q, int r);

// true iff the closed form is non-integral; cross-checked against the exact
// lattice solver, throwing logic_error on any disagreement.
bool nonintegrality_check(Family family, int rank, const Int& q, int r);

nlohmann::ordered_json certificate_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json report_json(const std::vector<Certificate>& certs,
                                   const std::string& generated_at);
std::string report_csv(const std::vector<Certificate>& certs);

std::string iso_timestamp();

}  // namespace cuspcert

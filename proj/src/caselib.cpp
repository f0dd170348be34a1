#include "cuspcert/caselib.hpp"

#include <algorithm>
#include <atomic>
#include <ctime>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "cuspcert/errors.hpp"

namespace cuspcert {

namespace {

std::vector<Int> unit_vector(int n, int i, const Int& scale) {
  std::vector<Int> v(n, 0);
  v[i] = scale;
  return v;
}

}  // namespace

StandardWitness standard_witness(Family family, int rank) {
  FamilySpec spec = build_family(family, rank);  // validates the rank
  const int n = spec.ambient_dim;
  switch (family) {
    case Family::A: {
      std::vector<Int> v(n, 0);
      v[0] = 1;
      v[n - 1] = -1;
      return {family, rank, coxeter_element(WeylFamily::A, rank), v, "cycle"};
    }
    case Family::B:
      return {family, rank, coxeter_element(WeylFamily::B, rank), unit_vector(n, 0, 1), "coxeter"};
    case Family::C:
      return {family, rank, coxeter_element(WeylFamily::C, rank), unit_vector(n, 0, 2), "coxeter"};
    case Family::D: {
      // w' = t_n t_m (1..m) with m = n-1: an m-cycle with one sign flip
      // inside and a flipped fixed last coordinate
      const int m = n - 1;
      std::vector<int> images(n);
      for (int j = 1; j + 1 < m; ++j) images[j - 1] = j + 1;
      images[m - 2] = -m;
      images[m - 1] = 1;
      images[n - 1] = -n;
      return {family, rank, SignedPermutation::from_images(images), unit_vector(n, m - 1, 2),
              "tn tm cycle"};
    }
    case Family::TwoA: {
      std::vector<Int> v(n, 0);
      if (n % 2 == 1) {
        v[0] = 1;
        v[n - 1] = -1;
        return {family, rank, coxeter_element(WeylFamily::A, n - 1), v, "cycle"};
      }
      // even ambient dimension: cycle the first m = n-1 coordinates, fix the
      // last, and embed the odd-case witness with last coordinate zero
      const int m = n - 1;
      std::vector<int> images(n);
      for (int j = 1; j < m; ++j) images[j - 1] = j + 1;
      images[m - 1] = 1;
      images[n - 1] = n;
      v[0] = 1;
      v[m - 1] = -1;
      return {family, rank, SignedPermutation::from_images(images), v, "cycle"};
    }
    case Family::TwoD: {
      std::vector<int> images(n);
      for (int j = 1; j < n; ++j) images[j - 1] = j + 1;
      images[n - 1] = 1;
      return {family, rank, SignedPermutation::from_images(images), unit_vector(n, n - 1, 2),
              "cycle"};
    }
  }
  throw std::invalid_argument("unknown family");
}

SignedPermutation twist_element(Family family, int rank, TwistSelector sel, int class_index) {
  if (sel == TwistSelector::standard) return standard_witness(family, rank).twist;
  FamilySpec spec = build_family(family, rank);
  if (sel == TwistSelector::coxeter) {
    switch (family) {
      case Family::A: return coxeter_element(WeylFamily::A, rank);
      case Family::B: return coxeter_element(WeylFamily::B, rank);
      case Family::C: return coxeter_element(WeylFamily::C, rank);
      case Family::D: return d_signed_cycle(rank);
      case Family::TwoA: return coxeter_element(WeylFamily::A, spec.weyl_rank);
      case Family::TwoD: return coxeter_element(WeylFamily::D, spec.weyl_rank);
    }
    throw std::invalid_argument("unknown family");
  }
  WeylGroup group(spec.weyl_family, spec.weyl_rank);
  auto table = twisted_conjugacy_classes(group, spec.f0);
  if (!table)
    throw ThresholdExceeded("Weyl group of order " + std::to_string(group.order()) +
                            " exceeds the enumeration threshold");
  if (class_index < 0 || static_cast<std::size_t>(class_index) >= table->classes.size())
    throw std::invalid_argument("class index " + std::to_string(class_index) +
                                " out of range (have " + std::to_string(table->classes.size()) +
                                " classes)");
  return table->classes[class_index].rep;
}

std::string twist_label(TwistSelector sel, int class_index) {
  switch (sel) {
    case TwistSelector::standard: return "paper";
    case TwistSelector::coxeter: return "coxeter";
    case TwistSelector::class_index: return "index:" + std::to_string(class_index);
  }
  return "?";
}

namespace {

std::set<SignedPermutation> closure_of(const std::vector<SignedPermutation>& gens, int dim) {
  std::set<SignedPermutation> closure{SignedPermutation(dim)};
  std::vector<SignedPermutation> frontier(closure.begin(), closure.end());
  while (!frontier.empty()) {
    std::vector<SignedPermutation> next;
    for (const SignedPermutation& x : frontier)
      for (const SignedPermutation& g : gens) {
        SignedPermutation y = x.compose(g);
        if (closure.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return closure;
}

// small generating set: greedy closure over the sorted element list, then
// drop members that the rest already generate
std::vector<SignedPermutation> generating_set(const std::vector<SignedPermutation>& elems) {
  std::vector<SignedPermutation> gens;
  if (elems.empty()) return gens;
  const int dim = elems.front().dim();
  std::set<SignedPermutation> closure{SignedPermutation(dim)};
  for (const SignedPermutation& e : elems) {
    if (closure.count(e)) continue;
    gens.push_back(e);
    closure = closure_of(gens, dim);
    if (closure.size() == elems.size()) break;
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<SignedPermutation> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (closure_of(rest, dim).size() == elems.size())
      gens = std::move(rest);
    else
      ++i;
  }
  return gens;
}

}  // namespace

Certificate certify_case(const CaseRequest& req) {
  FamilySpec spec = build_family(req.family, req.rank);
  StandardWitness sw = standard_witness(req.family, req.rank);
  SignedPermutation w = twist_element(req.family, req.rank, req.twist, req.class_index);
  TwistedTorus t = twist(spec, w, req.q);

  Certificate c;
  c.family = family_name(req.family);
  c.rank = req.rank;
  c.q = req.q;
  c.lattice_name = spec.lattice_name;
  c.ambient_dim = spec.ambient_dim;
  for (std::size_t j = 0; j < spec.char_lattice.basis().cols(); ++j) {
    std::vector<Int> col(spec.ambient_dim);
    for (int i = 0; i < spec.ambient_dim; ++i) col[i] = spec.char_lattice.basis().at(i, j);
    c.lattice_basis.push_back(std::move(col));
  }
  c.twist_label = twist_label(req.twist, req.class_index);
  c.twist_images = w.images();
  c.anisotropic = is_anisotropic(t);
  c.torus_order = torus_order(t);

  RationalWeylAction action = rational_weyl_group(t);
  c.wtk_order = action.order();
  c.wtk_method = method_name(action.method);
  for (const SignedPermutation& g : generating_set(action.elements))
    c.wtk_generators.push_back(g.images());

  c.witness = sw.vec;
  GenPosVerdict verdict = is_general_position(t, action, sw.vec);
  c.general_position = verdict.in_general_position;

  if (!c.anisotropic) c.failures.push_back("torus is not anisotropic");
  if (!verdict.in_general_position)
    c.failures.push_back("witness fixed by " + verdict.failing_element->to_string() +
                         " modulo the image lattice");

  if (c.torus_order <= Int(static_cast<unsigned long>(kOracleThreshold))) {
    OracleContext ctx = make_oracle_context(t, action);
    GenPosVerdict check = oracle_verdict(ctx, sw.vec);
    c.oracle_checked = true;
    if (check.in_general_position != verdict.in_general_position)
      c.failures.push_back("orbit oracle disagrees with the lattice membership test");
  } else if (req.require_oracle) {
    throw ThresholdExceeded("character group order " + c.torus_order.get_str() +
                            " exceeds the oracle threshold");
  }

  // even-ambient 2A embeds the witness of the next lower rank; the two
  // general-position verdicts must coincide
  if (req.family == Family::TwoA && req.twist == TwistSelector::standard && req.rank % 2 == 1) {
    StandardWitness inner = standard_witness(Family::TwoA, req.rank - 1);
    TwistedTorus t2 = twist(build_family(Family::TwoA, req.rank - 1), inner.twist, req.q);
    GenPosVerdict v2 = is_general_position(t2, rational_weyl_group(t2), inner.vec);
    if (v2.in_general_position != verdict.in_general_position)
      c.failures.push_back("embedding mismatch: lower-rank witness verdict differs");
  }

  c.tool_version = kToolVersion;
  c.timestamp = iso_timestamp();
  return c;
}

Certificate certify_case(Family family, int rank, const Int& q) {
  return certify_case(CaseRequest{family, rank, q});
}

int min_rank(Family family) {
  switch (family) {
    case Family::A: return 1;
    case Family::B: return 2;
    case Family::C: return 2;
    case Family::D: return 4;
    case Family::TwoA: return 2;
    case Family::TwoD: return 3;
  }
  throw std::invalid_argument("unknown family");
}

std::vector<Family> all_families() {
  return {Family::A, Family::B, Family::C, Family::D, Family::TwoA, Family::TwoD};
}

std::vector<Int> default_q_grid() {
  return {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};
}

std::vector<Certificate> certify_range(const std::vector<Family>& families, int rank_lo,
                                       int rank_hi, const std::vector<Int>& qs, int threads,
                                       bool require_oracle) {
  std::vector<CaseRequest> reqs;
  for (Family f : families) {
    for (int rank = std::max(rank_lo, min_rank(f)); rank <= rank_hi; ++rank)
      for (const Int& q : qs)
        reqs.push_back({f, rank, q, TwistSelector::standard, 0, require_oracle});
  }
  auto key_less = [](const CaseRequest& a, const CaseRequest& b) {
    if (a.family != b.family) return static_cast<int>(a.family) < static_cast<int>(b.family);
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.q < b.q;
  };
  std::sort(reqs.begin(), reqs.end(), key_less);
  reqs.erase(std::unique(reqs.begin(), reqs.end(),
                         [](const CaseRequest& a, const CaseRequest& b) {
                           return a.family == b.family && a.rank == b.rank && a.q == b.q;
                         }),
             reqs.end());

  unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (!reqs.empty() && reqs.size() < n) n = static_cast<unsigned>(reqs.size());

  std::vector<Certificate> out(reqs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= reqs.size()) break;
      try {
        out[i] = certify_case(reqs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

int nonintegrality_r_bound(Family family, int rank) {
  build_family(family, rank);  // rank validation
  switch (family) {
    case Family::A: return rank + 1;
    case Family::B:
    case Family::C: return 2 * rank;
    case Family::D: return 2 * (rank - 1);
    case Family::TwoA: {
      const int n = rank + 1;
      return n % 2 == 1 ? n : n - 1;
    }
    case Family::TwoD: return 2 * (rank + 1);
  }
  throw std::invalid_argument("unknown family");
}

namespace {

Int power(const Int& base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<Int> witness_difference(const FamilySpec& spec, const StandardWitness& sw, int r) {
  SignedPermutation g =
      spec.family == Family::TwoD ? sw.twist.compose(spec.f0) : sw.twist;
  std::vector<Int> b = g.power(r).apply(sw.vec);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] -= sw.vec[i];
  return b;
}

}  // namespace

Rat nonintegrality_closed_form(Family family, int rank, const Int& q, int r) {
  if (!is_prime_power(q))
    throw std::invalid_argument("q = " + q.get_str() + " is not a prime power");
  const int bound = nonintegrality_r_bound(family, rank);
  if (r < 1 || r >= bound)
    throw std::invalid_argument("r = " + std::to_string(r) + " out of range [1, " +
                                std::to_string(bound - 1) + "]");
  FamilySpec spec = build_family(family, rank);
  StandardWitness sw = standard_witness(family, rank);
  std::vector<Int> b = witness_difference(spec, sw, r);
  const int n = spec.ambient_dim;

  Int num = 0, den = 0;
  switch (family) {
    case Family::A: {
      // x_n (q^n - 1) = sum_j q^{n-j} b_j  along the full rotation
      for (int j = 1; j <= n; ++j) num += power(q, n - j) * b[j - 1];
      den = power(q, n) - 1;
      break;
    }
    case Family::B:
    case Family::C:
    case Family::TwoD: {
      // x_1 (q^n + 1) = sum_{i>=2} q^{n-i+1} b_i - b_1  along the signed cycle
      for (int i = 2; i <= n; ++i) num += power(q, n - i + 1) * b[i - 1];
      num -= b[0];
      den = power(q, n) + 1;
      break;
    }
    case Family::D: {
      const int m = n - 1;
      if (b[n - 1] != 0) throw std::logic_error("witness orbit touched the fixed coordinate");
      for (int j = 1; j <= m - 1; ++j) num += power(q, m - j) * b[j - 1];
      num -= b[m - 1];
      den = power(q, m) + 1;
      break;
    }
    case Family::TwoA: {
      const int len = n % 2 == 1 ? n : n - 1;
      if (len < n && b[n - 1] != 0)
        throw std::logic_error("witness orbit touched the fixed coordinate");
      for (int j = 1; j <= len; ++j) num += power(-q, len - j) * b[j - 1];
      den = power(-q, len) - 1;
      break;
    }
  }
  Rat x(num, den);
  x.canonicalize();
  return x;
}

bool nonintegrality_check(Family family, int rank, const Int& q, int r) {
  Rat x = nonintegrality_closed_form(family, rank, q, r);
  const bool integral = x.get_den() == 1;

  FamilySpec spec = build_family(family, rank);
  StandardWitness sw = standard_witness(family, rank);
  TwistedTorus t = twist(spec, sw.twist, q);
  std::vector<Int> b = witness_difference(spec, sw, r);
  const bool solvable = solve_in_lattice(t.m_ambient, b, spec.char_lattice).has_value();

  if (integral != solvable)
    throw std::logic_error("closed form and lattice solver disagree for " + family_name(family) +
                           " rank " + std::to_string(rank) + " q " + q.get_str() + " r " +
                           std::to_string(r));
  return !integral;
}

using json = nlohmann::ordered_json;

json certificate_json(const Certificate& c) {
  json j;
  j["schema"] = kSchemaVersion;
  j["family"] = c.family;
  j["rank"] = c.rank;
  j["q"] = static_cast<std::int64_t>(c.q.get_si());
  json lattice;
  lattice["name"] = c.lattice_name;
  lattice["ambient_dim"] = c.ambient_dim;
  json basis = json::array();
  for (const auto& col : c.lattice_basis) {
    json row = json::array();
    for (const Int& x : col) row.push_back(static_cast<std::int64_t>(x.get_si()));
    basis.push_back(std::move(row));
  }
  lattice["basis"] = std::move(basis);
  j["lattice"] = std::move(lattice);
  json tw;
  tw["label"] = c.twist_label;
  tw["images"] = c.twist_images;
  j["twist"] = std::move(tw);
  j["anisotropic"] = c.anisotropic;
  j["torus_order"] = c.torus_order.get_str();
  json wg;
  wg["order"] = c.wtk_order;
  wg["method"] = c.wtk_method;
  wg["generators"] = c.wtk_generators;
  j["rational_weyl_group"] = std::move(wg);
  json wit = json::array();
  for (const Int& x : c.witness) wit.push_back(static_cast<std::int64_t>(x.get_si()));
  j["witness"] = std::move(wit);
  j["general_position"] = c.general_position;
  j["oracle_checked"] = c.oracle_checked;
  j["failures"] = c.failures;
  j["tool_version"] = c.tool_version;
  j["timestamp"] = c.timestamp;
  return j;
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.family = j.at("family").get<std::string>();
  c.rank = j.at("rank").get<int>();
  c.q = Int(j.at("q").get<std::int64_t>());
  const json& lattice = j.at("lattice");
  c.lattice_name = lattice.at("name").get<std::string>();
  c.ambient_dim = lattice.at("ambient_dim").get<int>();
  for (const json& col : lattice.at("basis")) {
    std::vector<Int> v;
    for (const json& x : col) v.push_back(Int(x.get<std::int64_t>()));
    c.lattice_basis.push_back(std::move(v));
  }
  c.twist_label = j.at("twist").at("label").get<std::string>();
  c.twist_images = j.at("twist").at("images").get<std::vector<int>>();
  c.anisotropic = j.at("anisotropic").get<bool>();
  c.torus_order = Int(j.at("torus_order").get<std::string>());
  c.wtk_order = j.at("rational_weyl_group").at("order").get<std::uint64_t>();
  c.wtk_method = j.at("rational_weyl_group").at("method").get<std::string>();
  c.wtk_generators =
      j.at("rational_weyl_group").at("generators").get<std::vector<std::vector<int>>>();
  for (const json& x : j.at("witness")) c.witness.push_back(Int(x.get<std::int64_t>()));
  c.general_position = j.at("general_position").get<bool>();
  c.oracle_checked = j.at("oracle_checked").get<bool>();
  c.failures = j.at("failures").get<std::vector<std::string>>();
  c.tool_version = j.at("tool_version").get<std::string>();
  c.timestamp = j.at("timestamp").get<std::string>();
  return c;
}

json report_json(const std::vector<Certificate>& certs, const std::string& generated_at) {
  json j;
  j["schema"] = kSchemaVersion;
  j["generated_at"] = generated_at;
  std::size_t passed = 0;
  for (const Certificate& c : certs)
    if (c.pass()) ++passed;
  json summary;
  summary["total"] = certs.size();
  summary["passed"] = passed;
  summary["failed"] = certs.size() - passed;
  j["summary"] = std::move(summary);
  json cases = json::array();
  for (const Certificate& c : certs) cases.push_back(certificate_json(c));
  j["cases"] = std::move(cases);
  return j;
}

std::string report_csv(const std::vector<Certificate>& certs) {
  std::string out = "family,rank,q,anisotropic,torus_order,wtk_order,general_position,verdict\n";
  for (const Certificate& c : certs) {
    out += c.family;
    out += ',';
    out += std::to_string(c.rank);
    out += ',';
    out += c.q.get_str();
    out += ',';
    out += c.anisotropic ? "true" : "false";
    out += ',';
    out += c.torus_order.get_str();
    out += ',';
    out += std::to_string(c.wtk_order);
    out += ',';
    out += c.general_position ? "true" : "false";
    out += ',';
    out += c.pass() ? "PASS" : "FAIL";
    out += '\n';
  }
  return out;
}

std::string iso_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace cuspcert

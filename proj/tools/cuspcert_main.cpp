// cuspcert: exact certification of anisotropic maximal tori and characters
// in general position for the classical families A, B, C, D, 2A, 2D.
//
// Subcommands:
//   certify   end-to-end certificates over a (family, rank, q) grid
//   classify  twisted conjugacy classes with per-class anisotropy and |T(k)|
//   search    counts and orbit representatives of general-position characters
//
// Exit codes: 0 all good, 1 failing certificate, 2 invalid arguments,
// 3 enumeration or oracle threshold exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "cuspcert/caselib.hpp"
#include "cuspcert/errors.hpp"

namespace {

using namespace cuspcert;
using json = nlohmann::ordered_json;

struct Options {
  std::vector<std::string> families;
  std::string rank_spec;
  std::vector<std::string> q_specs;
  std::string twist = "paper";
  bool oracle = false;
  std::string out;
  std::string format = "json";
  int threads = 0;
};

std::vector<Family> parse_families(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return all_families();
  std::vector<Family> out;
  for (const std::string& t : tokens) out.push_back(family_from_name(t));
  return out;
}

std::pair<int, int> parse_range(const std::string& spec) {
  auto pos = spec.find("..");
  try {
    if (pos == std::string::npos) {
      int v = std::stoi(spec);
      return {v, v};
    }
    int lo = std::stoi(spec.substr(0, pos));
    int hi = std::stoi(spec.substr(pos + 2));
    if (lo > hi) throw std::invalid_argument("empty range " + spec);
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse range: " + spec);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("range out of bounds: " + spec);
  }
}

// explicit values must be prime powers; a..b keeps the prime powers inside
std::vector<Int> parse_q_list(const std::vector<std::string>& specs) {
  if (specs.empty()) return default_q_grid();
  std::vector<Int> out;
  for (const std::string& s : specs) {
    auto [lo, hi] = parse_range(s);
    if (s.find("..") == std::string::npos) {
      Int q(lo);
      if (!is_prime_power(q))
        throw std::invalid_argument("q = " + q.get_str() + " is not a prime power");
      out.push_back(q);
    } else {
      for (int v = lo; v <= hi; ++v)
        if (is_prime_power(Int(v))) out.push_back(Int(v));
    }
  }
  if (out.empty()) throw std::invalid_argument("no prime powers in the given q range");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<TwistSelector, int> parse_twist(const std::string& s) {
  if (s == "paper") return {TwistSelector::standard, 0};
  if (s == "coxeter") return {TwistSelector::coxeter, 0};
  if (s.rfind("index:", 0) == 0) {
    try {
      return {TwistSelector::class_index, std::stoi(s.substr(6))};
    } catch (...) {
      throw std::invalid_argument("cannot parse twist index: " + s);
    }
  }
  throw std::invalid_argument("unknown twist selector: " + s +
                              " (expected paper, coxeter, or index:<k>)");
}

int resolve_threads(int flag) {
  if (const char* e = std::getenv("CUSPCERT_THREADS")) {
    if (*e != '\0') {
      int v = std::atoi(e);
      if (v > 0) return v;
    }
  }
  return flag;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << content;
}

void emit_report(const Options& o, const json& j, const std::string& csv) {
  if (o.out.empty()) return;
  if (o.format == "csv")
    write_file(o.out, csv);
  else
    write_file(o.out, j.dump(2) + "\n");
  std::cout << "report written to " << o.out << "\n";
}

int run_certify(const Options& o) {
  std::vector<Family> fams = parse_families(o.families);
  auto [rlo, rhi] = o.rank_spec.empty() ? std::pair<int, int>{1, kGridMaxRank}
                                        : parse_range(o.rank_spec);
  std::vector<Int> qs = parse_q_list(o.q_specs);
  auto [sel, idx] = parse_twist(o.twist);
  int threads = resolve_threads(o.threads);

  std::vector<Certificate> certs;
  if (sel == TwistSelector::standard) {
    certs = certify_range(fams, rlo, rhi, qs, threads, o.oracle);
  } else {
    for (Family f : fams)
      for (int rank = std::max(rlo, min_rank(f)); rank <= rhi; ++rank)
        for (const Int& q : qs)
          certs.push_back(certify_case(CaseRequest{f, rank, q, sel, idx, o.oracle}));
  }

  std::size_t passed = 0;
  for (const Certificate& c : certs) {
    if (c.pass()) {
      ++passed;
      continue;
    }
    std::cout << "FAIL " << c.family << " rank " << c.rank << " q " << c.q.get_str() << ":";
    for (const std::string& f : c.failures) std::cout << " " << f << ";";
    std::cout << "\n";
  }
  std::cout << "certified " << certs.size() << " case(s): " << passed << " pass, "
            << (certs.size() - passed) << " fail\n";
  emit_report(o, report_json(certs, iso_timestamp()), report_csv(certs));
  return passed == certs.size() ? 0 : 1;
}

int run_classify(const Options& o) {
  std::vector<Family> fams = parse_families(o.families);
  auto [rlo, rhi] = o.rank_spec.empty() ? std::pair<int, int>{1, kGridMaxRank}
                                        : parse_range(o.rank_spec);
  std::vector<Int> qs = parse_q_list(o.q_specs);

  json tables = json::array();
  std::string csv = "family,rank,class_index,rep,size,anisotropic,q,torus_order\n";
  for (Family f : fams) {
    for (int rank = std::max(rlo, min_rank(f)); rank <= rhi; ++rank) {
      FamilySpec spec = build_family(f, rank);
      WeylGroup group(spec.weyl_family, spec.weyl_rank);
      auto table = twisted_conjugacy_classes(group, spec.f0);
      if (!table)
        throw ThresholdExceeded("Weyl group of order " + std::to_string(group.order()) +
                                " exceeds the enumeration threshold");
      std::cout << family_name(f) << " rank " << rank << ": " << table->classes.size()
                << " twisted conjugacy classes\n";
      json jclasses = json::array();
      for (std::size_t k = 0; k < table->classes.size(); ++k) {
        const TwistedClass& cls = table->classes[k];
        TwistedTorus t0 = twist(spec, cls.rep, qs.front());
        bool aniso = is_anisotropic(t0);
        std::cout << "  class " << k << ": rep " << cls.rep.to_string() << " size " << cls.size
                  << (aniso ? " anisotropic" : " isotropic");
        json orders = json::array();
        std::string rep_str;
        for (int img : cls.rep.images()) {
          if (!rep_str.empty()) rep_str += ' ';
          rep_str += std::to_string(img);
        }
        for (const Int& q : qs) {
          Int order = torus_order(twist(spec, cls.rep, q));
          std::cout << " |T(" << q.get_str() << ")|=" << order.get_str();
          json entry;
          entry["q"] = static_cast<std::int64_t>(q.get_si());
          entry["torus_order"] = order.get_str();
          orders.push_back(std::move(entry));
          csv += family_name(f) + "," + std::to_string(rank) + "," + std::to_string(k) + "," +
                 rep_str + "," + std::to_string(cls.size) + "," + (aniso ? "true" : "false") +
                 "," + q.get_str() + "," + order.get_str() + "\n";
        }
        std::cout << "\n";
        json jc;
        jc["index"] = k;
        jc["rep"] = cls.rep.images();
        jc["size"] = cls.size;
        jc["anisotropic"] = aniso;
        jc["orders"] = std::move(orders);
        jclasses.push_back(std::move(jc));
      }
      json jt;
      jt["family"] = family_name(f);
      jt["rank"] = rank;
      jt["classes"] = std::move(jclasses);
      tables.push_back(std::move(jt));
    }
  }
  json j;
  j["schema"] = kSchemaVersion;
  j["generated_at"] = iso_timestamp();
  j["command"] = "classify";
  j["tables"] = std::move(tables);
  emit_report(o, j, csv);
  return 0;
}

constexpr std::size_t kMaxListedOrbits = 200;

int run_search(const Options& o) {
  std::vector<Family> fams = parse_families(o.families);
  auto [rlo, rhi] = o.rank_spec.empty() ? std::pair<int, int>{1, kGridMaxRank}
                                        : parse_range(o.rank_spec);
  std::vector<Int> qs = parse_q_list(o.q_specs);

  json results = json::array();
  std::string csv = "family,rank,q,torus_order,wtk_order,count,witness_in_general_position\n";
  for (Family f : fams) {
    for (int rank = std::max(rlo, min_rank(f)); rank <= rhi; ++rank) {
      FamilySpec spec = build_family(f, rank);
      StandardWitness sw = standard_witness(f, rank);
      for (const Int& q : qs) {
        TwistedTorus t = twist(spec, sw.twist, q);
        RationalWeylAction action = rational_weyl_group(t);
        std::uint64_t count = count_general_position(t, action);
        OracleContext ctx = make_oracle_context(t, action);
        GenPosVerdict wv = oracle_verdict(ctx, sw.vec);
        std::vector<Int> wimage = ctx.chars.project(sw.vec);
        auto reps = general_position_orbit_reps(t, action, kMaxListedOrbits);

        auto tuple_str = [](const std::vector<Int>& v) {
          std::string s = "(";
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += v[i].get_str();
          }
          return s + ")";
        };
        std::cout << family_name(f) << " rank " << rank << " q " << q.get_str() << ": " << count
                  << " general-position character(s) of " << ctx.chars.order().get_str()
                  << ", W_T(k) order " << action.order() << ", witness image "
                  << tuple_str(wimage)
                  << (wv.in_general_position ? " in general position" : " NOT in general position")
                  << "\n";
        for (const auto& rep : reps) std::cout << "  orbit rep " << tuple_str(rep) << "\n";
        if (count > reps.size() * action.order())
          std::cout << "  (further orbits omitted)\n";

        json r;
        r["family"] = family_name(f);
        r["rank"] = rank;
        r["q"] = static_cast<std::int64_t>(q.get_si());
        r["torus_order"] = ctx.chars.order().get_str();
        r["invariant_factors"] = [&] {
          json a = json::array();
          for (const Int& dv : ctx.chars.invariant_factors())
            a.push_back(static_cast<std::int64_t>(dv.get_si()));
          return a;
        }();
        r["wtk_order"] = action.order();
        r["count"] = count;
        r["witness_image"] = [&] {
          json a = json::array();
          for (const Int& x : wimage) a.push_back(static_cast<std::int64_t>(x.get_si()));
          return a;
        }();
        r["witness_in_general_position"] = wv.in_general_position;
        r["orbit_reps"] = [&] {
          json a = json::array();
          for (const auto& rep : reps) {
            json one = json::array();
            for (const Int& x : rep) one.push_back(static_cast<std::int64_t>(x.get_si()));
            a.push_back(std::move(one));
          }
          return a;
        }();
        results.push_back(std::move(r));
        csv += family_name(f) + "," + std::to_string(rank) + "," + q.get_str() + "," +
               ctx.chars.order().get_str() + "," + std::to_string(action.order()) + "," +
               std::to_string(count) + "," + (wv.in_general_position ? "true" : "false") + "\n";
      }
    }
  }
  json j;
  j["schema"] = kSchemaVersion;
  j["generated_at"] = iso_timestamp();
  j["command"] = "search";
  j["results"] = std::move(results);
  emit_report(o, j, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact certification of anisotropic maximal tori and characters in general position\n"
      "for finite classical groups (families A, B, C, D, 2A, 2D)"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--family", o.families, "families to process: A B C D 2A 2D (default: all)");
    cmd->add_option("--rank", o.rank_spec,
                    "rank or range a..b (default: every valid rank through 8)");
    cmd->add_option("--q", o.q_specs,
                    "prime power (repeatable) or range a..b; default: prime powers through 32");
    cmd->add_option("--out", o.out, "write the machine report to this file");
    cmd->add_option("--format", o.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", o.threads,
                    "worker threads, 0 = hardware concurrency (CUSPCERT_THREADS overrides)");
  };

  CLI::App* certify = app.add_subcommand("certify", "certify (family, rank, q) cases");
  add_common(certify);
  certify->add_option("--twist", o.twist, "torus twist: paper, coxeter, or index:<k>");
  certify->add_flag("--oracle", o.oracle,
                    "require the quotient-group oracle cross-check on every case");

  CLI::App* classify = app.add_subcommand(
      "classify", "list twisted conjugacy classes with anisotropy verdicts and torus orders");
  add_common(classify);

  CLI::App* search = app.add_subcommand(
      "search", "count and list general-position characters for the standard torus");
  add_common(search);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (certify->parsed()) return run_certify(o);
    if (classify->parsed()) return run_classify(o);
    if (search->parsed()) return run_search(o);
  } catch (const ThresholdExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// bft: command-line front end over the C API.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bft/bft.h"

namespace {

using nlohmann::json;

struct StringDeleter {
  void operator()(char* s) const { bft_free_string(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct SpaceDeleter {
  void operator()(bft_space* s) const { bft_space_free(s); }
};
struct MapDeleter {
  void operator()(bft_chamber_map* m) const { bft_map_free(m); }
};

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_report(const char* text, const std::string& format) {
  if (format == "json") {
    std::cout << text << "\n";
    return;
  }
  const json r = json::parse(text);
  const json n = r["parameters"].value("n", json(nullptr));
  std::cout << "check,n,expected,actual,pass\n";
  for (const json& c : r["checks"])
    std::cout << csv_cell(c["name"]) << "," << csv_cell(n) << "," << csv_cell(c["expected"]) << ","
              << csv_cell(c["actual"]) << "," << (c["pass"].get<bool>() ? "true" : "false") << "\n";
  // scalar fields and one level of nested scalars become comment rows
  for (auto it = r.begin(); it != r.end(); ++it) {
    if (it.key() == "checks" || it.key() == "parameters" || it.key() == "command" || it.key() == "pass") continue;
    if (it->is_primitive()) std::cout << "# " << it.key() << "," << csv_cell(*it) << "\n";
    if (!it->is_object()) continue;
    for (auto jt = it->begin(); jt != it->end(); ++jt)
      if (jt->is_primitive()) std::cout << "# " << it.key() << "." << jt.key() << "," << csv_cell(*jt) << "\n";
  }
}

int fail(bft_status st) {
  std::cerr << "error: " << bft_last_error() << "\n";
  return static_cast<int>(st);
}

/// Prints whatever report came back, then names the first failing check.
int finish(bft_status st, char*& raw, const std::string& format) {
  OwnedString text(raw);
  raw = nullptr;
  if (st != BFT_OK && st != BFT_ERR_VIOLATION) return fail(st);
  if (!text) return fail(st);
  print_report(text.get(), format);
  if (st == BFT_ERR_VIOLATION) {
    const json r = json::parse(text.get());
    for (const json& c : r["checks"])
      if (!c["pass"].get<bool>()) {
        std::cerr << "violation: " << c["name"].get<std::string>() << " expected " << c["expected"].dump()
                  << ", got " << c["actual"].dump() << "\n";
        break;
      }
    if (r.contains("reason")) std::cerr << "violation: " << r["reason"].get<std::string>() << "\n";
  }
  return static_cast<int>(st);
}

std::optional<std::unique_ptr<bft_space, SpaceDeleter>> make_space(int n, int q, int& code) {
  bft_space* s = nullptr;
  const bft_status st = bft_space_create(n, q, &s);
  if (st != BFT_OK) {
    code = fail(st);
    return std::nullopt;
  }
  return std::unique_ptr<bft_space, SpaceDeleter>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Buildings of type A_n over small finite projective spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bft_version());

  int n = 2, q = 2;
  std::string format = "json";
  bool force = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", n, "projective dimension")->required();
    sub->add_option("--q", q, "field order")->required();
  };
  auto formatted = [&](CLI::App* sub) {
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* space = app.add_subcommand("space", "point, subspace, chamber and apartment counts");
  common(space);
  formatted(space);

  std::string base;
  auto* apartment = app.add_subcommand("apartment", "chambers of the apartment of a base");
  common(apartment);
  formatted(apartment);
  apartment->add_option("--base", base, "base points, e.g. 1,0,0;0,1,0;0,0,1");

  std::string lemma = "all";
  int case_id = 0;
  bool all = false;
  auto* lemmas = app.add_subcommand("lemmas", "verify apartment combinatorics against closed forms");
  common(lemmas);
  formatted(lemmas);
  lemmas->add_flag("--all", all, "run every lemma check (default)");
  lemmas->add_option("--lemma", lemma, "single lemma check");
  lemmas->add_option("--case", case_id, "single disposition case for the counts")->check(CLI::Range(1, 6));
  lemmas->add_flag("--force", force, "lift the n <= 5 cap");

  auto* map = app.add_subcommand("map", "chamber maps");
  map->require_subcommand(1);

  std::string matrix, out_path;
  int target_q = 0, frobenius = 0;
  bool dual = false;
  auto* induce = map->add_subcommand("induce", "chamber map induced by a semilinear map");
  common(induce);
  induce->add_option("--matrix", matrix, "rows over the target field")->required();
  induce->add_option("--target-q", target_q, "target field order (default: --q)");
  induce->add_option("--frobenius", frobenius, "power of the Frobenius automorphism")->check(CLI::NonNegativeNumber);
  induce->add_flag("--dual", dual, "map into the dual space (correlation)");
  induce->add_option("--out", out_path, "output file (default: stdout)");

  std::string in_path, mode = "exhaustive";
  std::uint64_t seed = 0;
  std::size_t k = 100;
  auto* analyze = map->add_subcommand("analyze", "classify a chamber map");
  analyze->add_option("path", in_path, "chamber map file, - for stdin")->required();
  analyze->add_option("--mode", mode, "apartment preservation check")->check(CLI::IsMember({"exhaustive", "sample"}));
  analyze->add_option("--seed", seed, "sampling seed");
  analyze->add_option("--k", k, "number of sampled bases");
  analyze->add_option("--base", base, "base whose sigma is reported");
  analyze->add_flag("--force", force, "lift the exhaustive cap");
  formatted(analyze);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BFT_ERR_INPUT;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  char* text = nullptr;

  if (*space || *apartment || *lemmas || *induce) {
    auto s = make_space(n, q, code);
    if (!s) return code;
    if (*space) {
      code = finish(bft_space_info_json(s->get(), &text), text, format);
    } else if (*apartment) {
      code = finish(bft_apartment_json(s->get(), base.empty() ? nullptr : base.c_str(), &text), text, format);
    } else if (*lemmas) {
      if (all && (case_id != 0 || lemma != "all")) {
        std::cerr << "error: --all cannot be combined with --lemma or --case\n";
        return BFT_ERR_INPUT;
      }
      code = finish(bft_lemmas_json(s->get(), lemma.c_str(), case_id, force, &text), text, format);
    } else {
      bft_chamber_map* m = nullptr;
      bft_status st = bft_map_induce(s->get(), matrix.c_str(), target_q ? target_q : q, frobenius, dual, &m);
      if (st != BFT_OK) return fail(st);
      std::unique_ptr<bft_chamber_map, MapDeleter> owned(m);
      st = bft_map_to_json(m, &text);
      if (st != BFT_OK) return fail(st);
      OwnedString body(text);
      if (out_path.empty()) {
        std::cout << body.get() << "\n";
      } else {
        std::ofstream f(out_path, std::ios::binary);
        f << body.get() << "\n";
        if (!f) {
          std::cerr << "error: cannot write " << out_path << "\n";
          return BFT_ERR_INPUT;
        }
      }
    }
  } else if (*analyze) {
    std::string body;
    if (in_path == "-") {
      body.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
      std::ifstream f(in_path, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot read " << in_path << "\n";
        return BFT_ERR_INPUT;
      }
      body.assign(std::istreambuf_iterator<char>(f), {});
    }
    bft_chamber_map* m = nullptr;
    const bft_status st = bft_map_from_json(body.c_str(), &m);
    if (st != BFT_OK) return fail(st);
    std::unique_ptr<bft_chamber_map, MapDeleter> owned(m);
    bft_analyze_options opts{mode == "sample", k, seed, force, base.empty() ? nullptr : base.c_str()};
    code = finish(bft_map_analyze_json(m, &opts, &text), text, format);
  }

  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  std::fprintf(stderr, "wall-time %.3fs\n", took.count());
  return code;
}

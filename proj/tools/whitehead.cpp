// Command-line front end: poset, betti, e1, ring, presentation, check.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "whitehead/checks.hpp"
#include "whitehead/io.hpp"

namespace wh = whitehead;

namespace {

struct Options {
  std::string input;
  std::string format;
  std::string out;
  std::string cache;
  std::size_t cap = 500000;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  bool homology = false;
};

wh::Graph read_input(const std::string& path) {
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return wh::parse_graph(text);
  }
  return wh::load_graph(path);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

wh::WhiteheadPoset load_poset(const Options& o, const wh::Graph& g) {
  return wh::cached_poset(wh::reduce_dominating(g), o.cache, {o.cap, o.jobs});
}

int cmd_poset(const Options& o) {
  const auto g = read_input(o.input);
  const auto P = load_poset(o, g);
  if (o.format == "dot") {
    emit(o, wh::poset_dot(P));
    return 0;
  }
  auto j = wh::poset_json(P);
  j["essential_counts"] = wh::essential_counts(P, o.jobs);
  emit(o, j.dump(2) + "\n");
  return 0;
}

int cmd_betti(const Options& o) {
  const auto g = read_input(o.input);
  const auto P = load_poset(o, g);
  const auto k = wh::essential_counts(P, o.jobs);
  const auto n = wh::clique_counts(P.graph());
  const std::vector<std::uint64_t> psout(k.begin(), k.end());
  const auto psaut = wh::psaut_by_convolution(psout, n);
  if (psaut != wh::psaut_by_direct_sum(psout, n)) throw wh::internal_error("ΣPAut Betti: convolution and direct sum disagree");
  if (o.format == "csv") {
    std::string s = "kind,q,rank\n";
    for (std::size_t q = 0; q < psout.size(); ++q) s += "psout," + std::to_string(q) + "," + std::to_string(psout[q]) + "\n";
    for (std::size_t q = 0; q < psaut.size(); ++q) s += "psaut," + std::to_string(q) + "," + std::to_string(psaut[q]) + "\n";
    emit(o, s);
    return 0;
  }
  emit(o, wh::json{{"schema", wh::kSchemaVersion}, {"K", k}, {"N", n}, {"betti_psout", psout}, {"betti_psaut", psaut}}.dump(2) + "\n");
  return 0;
}

int cmd_e1(const Options& o) {
  const auto g = read_input(o.input);
  const auto P = load_poset(o, g);
  const auto table = wh::e1_dimensions(P);
  int status = 0;
  std::optional<wh::CheckResult> check;
  if (o.homology) {
    check = wh::check_e1_concentration(P, o.jobs);
    if (!check->passed) status = 1;
  }
  if (o.format == "json") {
    wh::json j{{"schema", wh::kSchemaVersion}, {"e1_dimensions", table}};
    if (check) j["homology"] = {{"passed", check->passed}, {"detail", check->detail}};
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, wh::e1_csv(table));
    if (check) std::cerr << (check->passed ? "PASS " : "FAIL ") << check->name << ": " << check->detail << "\n";
  }
  return status;
}

int cmd_ring(const Options& o) {
  const auto g = read_input(o.input);
  const auto P = load_poset(o, g);
  const auto r = wh::verify_phi(P);
  wh::json collisions = wh::json::array();
  for (const auto& [a, b] : r.collisions) collisions.push_back({a, b});
  wh::json j{{"schema", wh::kSchemaVersion},
             {"B1", r.b1_size},
             {"B2", r.b2_size},
             {"phi_injective", r.injective()},
             {"phi_ok", r.ok()},
             {"phi_rules", r.rule_counts},
             {"outside_B2", r.outside_b2},
             {"collisions", collisions},
             {"case_failures", r.failures}};
  emit(o, j.dump(2) + "\n");
  return r.ok() ? 0 : 1;
}

int cmd_presentation(const Options& o) {
  const auto g = wh::reduce_dominating(read_input(o.input));
  const auto p = wh::presentation(g);
  if (o.format == "json")
    emit(o, wh::presentation_json(p).dump(2) + "\n");
  else
    emit(o, p.to_text());
  return 0;
}

int cmd_check(const Options& o) {
  const auto g = read_input(o.input);
  wh::CheckOptions co;
  co.seed = o.seed;
  co.jobs = o.jobs;
  const auto results = wh::run_checks(g, co);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  if (o.format == "json") {
    const auto P = load_poset(o, g);
    auto report = wh::make_report(g, P, o.jobs, true);
    report.checks = results;
    emit(o, wh::report_json(report).dump(2) + "\n");
  } else {
    std::string s;
    for (const auto& r : results)
      s += std::string(r.passed ? "PASS " : "FAIL ") + r.suite + ": " + r.name + " (" + r.detail + ")\n";
    emit(o, s);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead posets, essential types and cohomology ranks of pure symmetric automorphism groups of RAAGs"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("graph", o.input, "graph file (edge list or JSON), '-' for stdin")->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
    sub->add_option("--out", o.out, "write output here instead of stdout");
    sub->add_option("--cap", o.cap, "maximum number of poset elements")->capture_default_str();
    sub->add_option("--cache", o.cache, "directory for cached posets");
    sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
    sub->add_option("--seed", o.seed, "seed for randomized property tests")->capture_default_str();
  };

  auto* poset = app.add_subcommand("poset", "enumerate the Whitehead poset");
  auto* betti = app.add_subcommand("betti", "Betti numbers of ΣPOut and ΣPAut");
  auto* e1 = app.add_subcommand("e1", "E1 dimension table");
  auto* ring = app.add_subcommand("ring", "degree-2 bases B1, B2 and the map φ");
  auto* pres = app.add_subcommand("presentation", "presentation of ΣPAut");
  auto* check = app.add_subcommand("check", "run every property suite");
  common(poset, {"json", "dot"});
  common(betti, {"json", "csv"});
  common(e1, {"csv", "json"});
  e1->add_flag("--homology", o.homology, "also check exact concentration of every row");
  common(ring, {"json"});
  common(pres, {"text", "json"});
  common(check, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  // Subcommands share one format slot but default differently.
  auto defaulted = [&](CLI::App* sub, const char* d) {
    if (sub->parsed() && sub->get_option("--format")->count() == 0) o.format = d;
  };
  defaulted(poset, "json");
  defaulted(betti, "json");
  defaulted(e1, "csv");
  defaulted(ring, "json");
  defaulted(pres, "text");
  defaulted(check, "text");

  try {
    if (poset->parsed()) return cmd_poset(o);
    if (betti->parsed()) return cmd_betti(o);
    if (e1->parsed()) return cmd_e1(o);
    if (ring->parsed()) return cmd_ring(o);
    if (pres->parsed()) return cmd_presentation(o);
    if (check->parsed()) return cmd_check(o);
  } catch (const wh::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wh::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wh::resource_error& e) {
    std::cerr << "error: " << e.what() << " (" << e.partial_count() << " elements before stopping)\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

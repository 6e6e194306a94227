// brt: bounded-randomness toolkit command line.
//
// Subcommands cover the library surface: exact measures, test
// normalization and weakening, the immunity / Chernoff / subsequence /
// join test families, martingale checks and conversions, the process and
// prefix-free machine constructions, complexity search, and the
// diagonalization generators.  All numeric output is exact ("num/2^exp"
// or integer ratios); --decimal adds an approximate rendering clearly
// marked as non-normative.  Exit codes: 0 success, 1 usage error, 2
// invariant violation or construction failure (witness printed).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "brt/machine_ops.hpp"
#include "brt/martingale_ops.hpp"
#include "brt/serialize.hpp"

using namespace brt;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

json read_json(const std::string& path) { return json::parse(read_file(path)); }

void write_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

/// Schedule arguments: inline JSON, or the shorthand "[A]n[+B]" (e.g. "n",
/// "n+2", "2n+1").
LengthSchedule parse_schedule_arg(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    return schedule_from_json(json::parse(text));
  }
  auto npos = text.find('n');
  if (npos == std::string::npos) {
    throw std::invalid_argument("schedule: expected JSON or '[A]n[+B]', got '" + text + "'");
  }
  std::size_t a = npos == 0 ? 1 : std::stoull(text.substr(0, npos));
  std::size_t b = 0;
  if (npos + 1 < text.size()) {
    if (text[npos + 1] != '+') {
      throw std::invalid_argument("schedule: expected '+' after n in '" + text + "'");
    }
    b = std::stoull(text.substr(npos + 2));
  }
  return LengthSchedule::affine(a, b);
}

BitString parse_bits_arg(const std::string& text) {
  // A literal word when it looks like one ("" counts), else a file name.
  if (text.find_first_not_of("01") == std::string::npos) {
    return BitString::parse(text);
  }
  return bits_from_text(read_file(text));
}

std::shared_ptr<Machine> load_machine(const std::string& path) {
  std::string content = read_file(path);
  auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (content[first] == '{' || content[first] == '[')) {
    return machine_from_json(json::parse(content));
  }
  return std::make_shared<DslProgram>(DslProgram::parse(content, path));
}

std::string render(const DyadicRational& d, bool decimal) {
  std::string out = d.str();
  if (decimal) out += "  (~" + std::to_string(d.approx()) + ", approximate)";
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brt: exact bounded tests, martingales, machines, and generators"};
  app.require_subcommand(1);
  bool decimal = false, as_json = false;
  app.add_flag("--decimal", decimal, "add approximate decimal renderings (non-normative)");
  app.add_flag("--json", as_json, "machine-readable reports where available");

  std::string in_path, out_path, machine_path, registry_path, log_path;
  std::string sched_arg = "n+1", sched_g = "n", join_mode = "ignore";
  std::string target_arg, oracle_arg, x_arg, a_arg, b_arg, sigma_arg, h_arg;
  std::string checkpoints_arg, eps_arg;
  std::size_t depth = 3, m_param = 3, table_depth = 10, max_len = 12, c_max = 4;
  std::size_t length = 4096, alternations = 2, stages = 2, slope = 1, offset = 2;
  std::uint64_t seed = 1;
  bool quadrupling = false, rle = false;

  auto* c_measure = app.add_subcommand("measure", "exact measure of a clopen set");
  c_measure->add_option("-i,--input", in_path, "clopen set JSON")->required();

  auto* c_norm = app.add_subcommand("normalize", "pad stages to measure exactly 2^-n");
  c_norm->add_option("-i,--input", in_path, "test JSON")->required();
  c_norm->add_option("--depth", depth, "stages 0..depth")->required();
  c_norm->add_option("-o,--output", out_path, "output test JSON");

  auto* c_weaken = app.add_subcommand("weaken", "nest stages and pass to the weak subsequence");
  c_weaken->add_option("-i,--input", in_path, "test JSON")->required();
  c_weaken->add_option("--depth", depth, "weak stages wanted")->required();
  c_weaken->add_option("-o,--output", out_path, "output test JSON");

  auto* c_imm = app.add_subcommand("immunity", "the anchored-ones test of a schedule");
  c_imm->add_option("--f", sched_arg, "length schedule (JSON or '[A]n[+B]')")->required();
  c_imm->add_option("--depth", depth, "stages to export")->required();
  c_imm->add_option("-o,--output", out_path, "output test JSON");

  auto* c_cher = app.add_subcommand("chernoff", "density-deviation test of parameter m");
  c_cher->add_option("--m", m_param, "deviation threshold 1/m")->required();
  c_cher->add_option("--f", sched_arg, "index schedule")->required();
  c_cher->add_option("--depth", depth, "stages to report")->required();
  c_cher->add_option("-o,--output", out_path, "output spec JSON");

  auto* c_ville = app.add_subcommand("ville", "pull a test back along a position schedule");
  c_ville->add_option("-i,--input", in_path, "test JSON")->required();
  c_ville->add_option("--g", sched_g, "position schedule")->required();
  c_ville->add_option("--depth", depth, "stages to export")->required();
  c_ville->add_option("-o,--output", out_path, "output test JSON");

  auto* c_join_test = app.add_subcommand("join-test", "interleaving test of an oracle test");
  c_join_test->add_option("-i,--input", in_path, "base test JSON (stage family)")->required();
  c_join_test->add_option("--mode", join_mode, "'ignore' (oracle-blind) or 'copy' (echo prefix)")
      ->check(CLI::IsMember({"ignore", "copy"}));
  c_join_test->add_option("--depth", depth, "stages to export")->required();
  c_join_test->add_option("-o,--output", out_path, "output test JSON");

  auto* c_tomart = app.add_subcommand("to-martingale", "product martingale of a weak nested test");
  c_tomart->add_option("-i,--input", in_path, "weak test JSON")->required();
  c_tomart->add_option("--depth", depth, "stages consumed")->required();
  c_tomart->add_option("--table-depth", table_depth, "export table depth");
  c_tomart->add_option("-o,--output", out_path, "output martingale JSON");

  auto* c_totest = app.add_subcommand("to-test", "capital-threshold test of a martingale");
  c_totest->add_option("-i,--input", in_path, "martingale JSON")->required();
  c_totest->add_option("--f", sched_arg, "witness schedule")->required();
  c_totest->add_option("--depth", depth, "stages to export")->required();
  c_totest->add_option("-o,--output", out_path, "output test JSON");

  auto* c_savings = app.add_subcommand("savings", "savings-account transform of a martingale");
  c_savings->add_option("-i,--input", in_path, "martingale JSON")->required();
  c_savings->add_option("--f", sched_arg, "witness schedule of the input")->required();
  c_savings->add_flag("--quadrupling", quadrupling, "bank at 4^{n+1} instead of 2^{n+1}");
  c_savings->add_option("--table-depth", table_depth, "export table depth");
  c_savings->add_option("-o,--output", out_path, "output martingale JSON");

  auto* c_fh = app.add_subcommand("first-hitting", "minimal-hitting-time weak test");
  c_fh->add_option("-i,--input", in_path, "martingale JSON")->required();
  c_fh->add_option("--f", sched_arg, "length-bound schedule")->required();
  c_fh->add_option("--depth", depth, "weak stages")->required();
  c_fh->add_option("-o,--output", out_path, "output test JSON");

  auto* c_summed = app.add_subcommand("summed-martingale", "series martingale of a test");
  c_summed->add_option("-i,--input", in_path, "test JSON")->required();
  c_summed->add_option("--depth", depth, "components built")->required();
  c_summed->add_option("--table-depth", table_depth, "export table depth");
  c_summed->add_option("-o,--output", out_path, "output martingale JSON");

  auto* c_tocomp = app.add_subcommand("to-compressor", "quick process machine of a weak test");
  c_tocomp->add_option("-i,--input", in_path, "weak nested test JSON")->required();
  c_tocomp->add_option("--depth", depth, "stages consumed")->required();
  c_tocomp->add_option("-o,--output", out_path, "output machine JSON (tabulated)");

  auto* c_fromcomp = app.add_subcommand("from-compressor", "image test of a machine");
  c_fromcomp->add_option("-m,--machine", machine_path, "machine JSON or DSL text")->required();
  c_fromcomp->add_option("--f", sched_arg, "compression schedule")->required();
  c_fromcomp->add_option("--depth", depth, "stages to export")->required();
  c_fromcomp->add_option("-o,--output", out_path, "output test JSON");

  auto* c_pf = app.add_subcommand("prefix-free", "prefix-free machine of a test");
  c_pf->add_option("-i,--input", in_path, "test JSON")->required();
  c_pf->add_option("--depth", depth, "stages consumed")->required();
  c_pf->add_option("-o,--output", out_path, "output machine JSON");

  auto* c_cx = app.add_subcommand("complexity", "bounded shortest-description search");
  c_cx->add_option("-m,--machine", machine_path, "machine JSON or DSL text")->required();
  c_cx->add_option("-t,--target", target_arg, "target word");
  c_cx->add_option("--max-len", max_len, "search bound");
  c_cx->add_option("--oracle", oracle_arg, "oracle bits (literal or file)");

  auto* c_cc = app.add_subcommand("check-compress", "compressibility inequality along a prefix");
  c_cc->add_option("-m,--machine", machine_path, "machine JSON or DSL text")->required();
  c_cc->add_option("--f", sched_arg, "compression schedule")->required();
  c_cc->add_option("-x,--sequence", x_arg, "bits (literal or file)")->required();
  c_cc->add_option("--c-max", c_max, "check c = 0..c_max")->required();
  c_cc->add_option("--oracle", oracle_arg, "oracle bits (literal or file)");

  auto* c_diag = app.add_subcommand("diagonalize", "recursive point defeating a registry");
  c_diag->add_option("-r,--registry", registry_path, "registry JSON")->required();
  c_diag->add_option("-n,--length", length, "output length")->required();
  c_diag->add_option("-o,--output", out_path, "output bits file")->required();
  c_diag->add_option("--log", log_path, "stage log JSON");
  c_diag->add_flag("--rle", rle, "run-length framing");

  auto* c_osc = app.add_subcommand("oscillate", "diagonal point with density dips");
  c_osc->add_option("-r,--registry", registry_path, "registry JSON")->required();
  c_osc->add_option("-n,--length", length, "output length")->required();
  c_osc->add_option("--alternations", alternations, "low/high block pairs");
  c_osc->add_option("-o,--output", out_path, "output bits file")->required();
  c_osc->add_option("--log", log_path, "stage log JSON");
  c_osc->add_flag("--rle", rle, "run-length framing");

  auto* c_join = app.add_subcommand("join", "interleave two sequences");
  c_join->add_option("-a", a_arg, "bits (literal or file)")->required();
  c_join->add_option("-b", b_arg, "bits (literal or file)")->required();
  c_join->add_option("-o,--output", out_path, "output bits file")->required();

  auto* c_ce = app.add_subcommand("counterexample", "relatively-random pair with a failing join");
  c_ce->add_option("-r,--registry", registry_path, "oracle registry JSON")->required();
  c_ce->add_option("--stages", stages, "rounds (two blocks each)")->required();
  c_ce->add_option("-o,--output", out_path, "output prefix (.a.bits/.b.bits/.h.json)")->required();

  auto* c_kraft = app.add_subcommand("kraft", "Kraft inequality over an antichain");
  c_kraft->add_option("-i,--input", in_path, "martingale JSON")->required();
  c_kraft->add_option("--sigma", sigma_arg, "base word");
  c_kraft->add_option("--set", h_arg, "comma-separated antichain of extensions")->required();

  auto* c_cm = app.add_subcommand("check-martingale", "audit the averaging law");
  c_cm->add_option("-i,--input", in_path, "martingale JSON")->required();
  c_cm->add_option("--depth", depth, "audit words shorter than this")->required();

  auto* c_em = app.add_subcommand("eval-martingale", "capital along a prefix, exactly");
  c_em->add_option("-i,--input", in_path, "martingale JSON")->required();
  c_em->add_option("-x,--sequence", x_arg, "bits (literal or file)")->required();

  auto* c_density = app.add_subcommand("density", "exact prefix densities");
  c_density->add_option("-x,--sequence", x_arg, "bits (literal or file)")->required();
  c_density->add_option("--checkpoints", checkpoints_arg, "comma-separated lengths")->required();
  c_density->add_option("--eps", eps_arg, "flag checkpoints within eps of 1/2 (as P/Q)");

  auto* c_gen = app.add_subcommand("gen-test", "seeded random explicit test (for experiments)");
  c_gen->add_option("--seed", seed, "RNG seed")->required();
  c_gen->add_option("--depth", depth, "stages")->required();
  c_gen->add_option("--level-slope", slope, "schedule slope");
  c_gen->add_option("--level-offset", offset, "schedule offset");
  c_gen->add_option("-o,--output", out_path, "output test JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*c_measure) {
      ClopenSet s = clopen_from_json(read_json(in_path));
      if (as_json) {
        std::cout << json{{"measure", s.measure().str()},
                          {"level", s.level()},
                          {"count", s.count()}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << render(s.measure(), decimal) << "\n";
      }
    } else if (*c_norm) {
      BoundedTest t = test_from_spec(read_json(in_path));
      BoundedTest exact = normalize_to_exact(t, depth);
      for (std::size_t n = 0; n <= depth; ++n) {
        std::cout << "stage " << n << ": measure " << render(exact.stage(n).measure(), decimal)
                  << "\n";
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(exact, depth));
    } else if (*c_weaken) {
      BoundedTest t = test_from_spec(read_json(in_path));
      WeakenResult w = weaken(t, depth);
      if (as_json) {
        std::cout << json{{"achieved_depth", w.achieved_depth}, {"h", w.h}}.dump(2) << "\n";
      } else {
        std::cout << "achieved depth " << w.achieved_depth << "; h =";
        for (std::size_t v : w.h) std::cout << ' ' << v;
        std::cout << "\n";
      }
      if (auto v = find_weak_violation(w.test, w.achieved_depth)) {
        std::cout << "weak inequality violated at stage " << v->n << " generator "
                  << v->tau.str() << ": " << v->lhs.str() << " > " << v->rhs.str() << "\n";
        return 2;
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(w.test, w.achieved_depth));
    } else if (*c_imm) {
      BoundedTest t = immunity_test(parse_schedule_arg(sched_arg));
      for (std::size_t n = 0; n <= depth; ++n) {
        std::cout << "stage " << n << ": level " << t.stage(n).level() << ", measure "
                  << render(t.stage(n).measure(), decimal) << "\n";
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(t, depth));
    } else if (*c_cher) {
      LengthSchedule f = parse_schedule_arg(sched_arg);
      BoundedTest t = chernoff_test(m_param, f);
      json report = json::array();
      for (std::size_t n = 0; n <= depth; ++n) {
        Stage s = t.stage(n);
        DyadicRational bound = chernoff_certified_bound(m_param, f(n));
        report.push_back(json{{"n", n},
                              {"block", s.level()},
                              {"count", s.count().str()},
                              {"measure", s.measure().str()},
                              {"majorant", bound.str()}});
        if (!as_json) {
          std::cout << "stage " << n << ": block " << s.level() << ", tail count "
                    << s.count().str() << ", measure " << render(s.measure(), decimal)
                    << ", certified majorant " << bound.str() << "\n";
        }
      }
      if (as_json) std::cout << report.dump(2) << "\n";
      if (!out_path.empty()) {
        write_json(out_path,
                   json{{"kind", "chernoff"}, {"m", m_param}, {"f", schedule_to_json(f)}});
      }
    } else if (*c_ville) {
      BoundedTest t = test_from_spec(read_json(in_path));
      BoundedTest v = ville_pullback(t, parse_schedule_arg(sched_g));
      for (std::size_t n = 0; n <= depth; ++n) {
        std::cout << "stage " << n << ": level " << v.stage(n).level() << ", measure "
                  << render(v.stage(n).measure(), decimal) << "\n";
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(v, depth));
    } else if (*c_join_test) {
      BoundedTest base = test_from_spec(read_json(in_path));
      OracleTest ot;
      if (join_mode == "ignore") {
        ot = OracleTest{"ignore", base.schedule(),
                        [base](std::size_t n, const SequencePrefix&) {
                          return base.stage(n).set();
                        }};
      } else {
        ot = OracleTest{"copy", base.schedule(),
                        [base](std::size_t n, const SequencePrefix& oracle) {
                          std::size_t lvl = base.schedule()(n);
                          return ClopenSet(lvl, {oracle.prefix(lvl)});
                        }};
      }
      BoundedTest joined = lambalgen_join_test(ot);
      for (std::size_t n = 0; n <= depth; ++n) {
        std::cout << "stage " << n << ": level " << joined.stage(n).level() << ", measure "
                  << render(joined.stage(n).measure(), decimal) << "\n";
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(joined, depth));
    } else if (*c_tomart) {
      BoundedTest t = test_from_spec(read_json(in_path));
      Martingale d = martingale_from_test(t, depth);
      std::cout << "martingale built; d(\"\") = " << d(BitString()).str() << "\n";
      if (!out_path.empty()) write_json(out_path, martingale_to_json(d, table_depth));
    } else if (*c_totest) {
      Martingale d = martingale_from_json(read_json(in_path));
      BoundedTest t = test_from_martingale(d, parse_schedule_arg(sched_arg));
      for (std::size_t n = 0; n <= depth; ++n) {
        std::cout << "stage " << n << ": count " << t.stage(n).count().str() << ", measure "
                  << render(t.stage(n).measure(), decimal) << "\n";
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(t, depth));
    } else if (*c_savings) {
      Martingale d = martingale_from_json(read_json(in_path));
      SavingsResult s = savings_transform(d, parse_schedule_arg(sched_arg), quadrupling);
      std::cout << "witness schedule: " << s.witness.label() << "\n";
      if (!out_path.empty()) write_json(out_path, martingale_to_json(s.transformed, table_depth));
    } else if (*c_fh) {
      Martingale d = martingale_from_json(read_json(in_path));
      FirstHittingResult r = first_hitting_test(d, parse_schedule_arg(sched_arg), depth);
      std::cout << "weak inequality on minimal-hit antichains: "
                << (r.antichain_weak ? "holds" : "fails") << "\n";
      std::cout << "weak inequality on refined generators: "
                << (r.refined_weak ? "holds" : "fails") << "\n";
      if (!out_path.empty()) write_json(out_path, test_to_json(r.test, depth));
    } else if (*c_summed) {
      BoundedTest t = test_from_spec(read_json(in_path));
      SummedMartingaleResult s = summed_martingale_from_test(t, depth);
      std::cout << "components: " << s.depth << "\n";
      if (!out_path.empty()) write_json(out_path, martingale_to_json(s.d, table_depth));
    } else if (*c_tocomp) {
      BoundedTest t = test_from_spec(read_json(in_path));
      CompressorResult r = compressor_from_test(t, depth);
      std::cout << "schedule F:";
      for (std::size_t c = 0; c <= depth; ++c) std::cout << ' ' << r.f(c);
      std::cout << "\npicked stages:";
      for (std::size_t ms : r.picked_stages) std::cout << ' ' << ms;
      std::cout << "\nvalid input length: " << r.valid_input_len << "\norder function h:";
      for (std::size_t i = 0; i <= r.valid_input_len; ++i) std::cout << ' ' << r.h(i);
      std::cout << "\n";
      if (!out_path.empty()) {
        TableMachine table =
            tabulate(*r.machine, r.valid_input_len, TableMachine::Fallback::Empty);
        write_json(out_path, machine_to_json(table));
      }
    } else if (*c_fromcomp) {
      auto m = load_machine(machine_path);
      BoundedTest t = test_from_compressor(m, parse_schedule_arg(sched_arg));
      for (std::size_t n = 0; n <= depth; ++n) {
        std::cout << "stage " << n << ": count " << t.stage(n).count().str() << ", measure "
                  << render(t.stage(n).measure(), decimal) << "\n";
      }
      if (!out_path.empty()) write_json(out_path, test_to_json(t, depth));
    } else if (*c_pf) {
      BoundedTest t = test_from_spec(read_json(in_path));
      PrefixFreeResult r = prefix_free_from_test(t, depth);
      std::map<BitString, std::optional<BitString>> entries;
      for (std::size_t c = 1; c < r.domain.size(); ++c) {
        const auto& gens = t.stage(2 * c).set().generators();
        for (std::size_t i = 0; i < r.domain[c].size(); ++i) {
          entries.emplace(r.domain[c][i], gens[i]);
        }
        std::cout << "stage " << c << ": " << r.domain[c].size()
                  << " defined descriptions of length " << r.domain_lengths[c] << "\n";
      }
      if (!out_path.empty()) {
        write_json(out_path,
                   machine_to_json(TableMachine("prefix-free", std::move(entries),
                                                TableMachine::Fallback::Diverge)));
      }
    } else if (*c_cx) {
      auto m = load_machine(machine_path);
      BitString target = BitString::parse(target_arg);
      std::optional<SequencePrefix> oracle;
      if (!oracle_arg.empty()) oracle = SequencePrefix::zero_padded(parse_bits_arg(oracle_arg));
      ComplexityReport r = plain_complexity(*m, target, max_len, oracle ? &*oracle : nullptr);
      if (as_json) {
        json out{{"target", target.str()}, {"searched_len", r.searched_len}};
        if (r.value) {
          out["value"] = *r.value;
          out["witness"] = r.witness->str();
        } else {
          out["value"] = "inf";
        }
        std::cout << out.dump(2) << "\n";
      } else if (r.value) {
        std::cout << "C_M(" << target.str() << ") = " << *r.value << " (witness "
                  << r.witness->str() << ")\n";
      } else {
        std::cout << "C_M(" << target.str() << ") > " << r.searched_len
                  << " (no description within the bound)\n";
      }
    } else if (*c_cc) {
      auto m = load_machine(machine_path);
      SequencePrefix x = SequencePrefix::zero_padded(parse_bits_arg(x_arg));
      std::optional<SequencePrefix> oracle;
      if (!oracle_arg.empty()) oracle = SequencePrefix::zero_padded(parse_bits_arg(oracle_arg));
      CompressionVerdict v = check_compression(*m, parse_schedule_arg(sched_arg), x, c_max,
                                               oracle ? &*oracle : nullptr);
      if (as_json) {
        json out{{"holds_at", v.holds_at}, {"compressed", v.compressed_through_c_max}};
        if (v.first_violation) out["first_violation"] = *v.first_violation;
        std::cout << out.dump(2) << "\n";
      } else {
        for (std::size_t c = 0; c <= c_max; ++c) {
          std::cout << "c = " << c << ": " << (v.holds_at[c] ? "compressed" : "not compressed")
                    << "\n";
        }
        std::cout << (v.compressed_through_c_max
                          ? "compressed through c_max"
                          : "compression fails at c = " + std::to_string(*v.first_violation))
                  << "\n";
      }
    } else if (*c_diag) {
      Registry r = registry_from_json(read_json(registry_path));
      DiagonalResult d = diagonal_real(r, length);
      write_file(out_path, bits_to_text(d.bits.prefix(length), rle));
      if (!log_path.empty()) write_json(log_path, diagonal_log_to_json(d.log));
      std::cout << "stages: " << d.log.size() << ", bits: " << length << "\n";
    } else if (*c_osc) {
      Registry r = registry_from_json(read_json(registry_path));
      std::vector<OscillationBlocks> dips(alternations);
      OscillatingResult o = oscillating_real(r, dips, length);
      write_file(out_path, bits_to_text(o.bits.prefix(std::min(length, o.bits.size())), rle));
      if (!log_path.empty()) write_json(log_path, diagonal_log_to_json(o.log));
      for (const auto& cp : o.checkpoints) {
        std::cout << (cp.low ? "low" : "high") << " checkpoint at " << cp.position << "\n";
      }
    } else if (*c_join) {
      BitString joined = join_sequences(parse_bits_arg(a_arg), parse_bits_arg(b_arg));
      write_file(out_path, bits_to_text(joined, false));
    } else if (*c_ce) {
      Registry r = registry_from_json(read_json(registry_path));
      CounterexampleResult ce = counterexample_pair(r, stages);
      write_file(out_path + ".a.bits", bits_to_text(ce.a, false));
      write_file(out_path + ".b.bits", bits_to_text(ce.b, false));
      write_json(out_path + ".h.json", json(ce.h));
      std::cout << "boundaries:";
      for (std::size_t v : ce.h) std::cout << ' ' << v;
      std::cout << "\n";
    } else if (*c_kraft) {
      Martingale d = martingale_from_json(read_json(in_path));
      BitString sigma = BitString::parse(sigma_arg);
      std::vector<BitString> h;
      std::stringstream ss(h_arg);
      std::string item;
      while (std::getline(ss, item, ',')) h.push_back(BitString::parse(item));
      int cmp = kraft_compare(d, sigma, h);
      std::cout << (cmp == 0 ? "equality" : (cmp < 0 ? "holds" : "violated")) << "\n";
      if (cmp > 0) return 2;
    } else if (*c_cm) {
      Martingale d = martingale_from_json(read_json(in_path));
      MartingaleReport r = check_martingale(d, depth);
      if (!r.valid) {
        std::cout << "violation (" << r.reason << ") at '" << r.sigma.str() << "': "
                  << r.lhs.str() << " vs " << r.rhs.str() << "\n";
        return 2;
      }
      std::cout << "valid through depth " << depth << "\n";
    } else if (*c_em) {
      Martingale d = martingale_from_json(read_json(in_path));
      BitString x = parse_bits_arg(x_arg);
      for (std::size_t n = 0; n <= x.size(); ++n) {
        BitString p = x.prefix(n);
        std::cout << n << " " << (n == 0 ? "\"\"" : p.str()) << " " << render(d(p), decimal)
                  << "\n";
      }
    } else if (*c_density) {
      SequencePrefix x = SequencePrefix::literal(parse_bits_arg(x_arg));
      auto rows = density_report(x, parse_size_list(checkpoints_arg));
      std::size_t eps_num = 0, eps_den = 1;
      if (!eps_arg.empty()) {
        auto slash = eps_arg.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("--eps expects P/Q");
        eps_num = std::stoull(eps_arg.substr(0, slash));
        eps_den = std::stoull(eps_arg.substr(slash + 1));
      }
      if (as_json) {
        json out = json::array();
        for (const auto& row : rows) {
          json r{{"n", row.n}, {"ones", row.ones}};
          if (!eps_arg.empty()) r["within"] = row.within(eps_num, eps_den);
          out.push_back(std::move(r));
        }
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& row : rows) {
          std::cout << row.n << " " << row.ones << "/" << row.n;
          if (!eps_arg.empty()) {
            std::cout << (row.within(eps_num, eps_den) ? "  within" : "  outside");
          }
          std::cout << "\n";
        }
      }
    } else if (*c_gen) {
      std::mt19937_64 rng(seed);
      LengthSchedule sched = LengthSchedule::affine(slope, offset);
      std::vector<Stage> stages_v;
      for (std::size_t n = 0; n <= depth; ++n) {
        std::size_t level = sched(n);
        std::size_t cap = std::size_t{1} << (level - n);
        std::set<BitString> gens;
        std::size_t want = rng() % (cap + 1);
        while (gens.size() < want) {
          BitString w;
          for (std::size_t i = 0; i < level; ++i) w.push_back(static_cast<int>(rng() & 1));
          gens.insert(w);
        }
        stages_v.push_back(
            Stage(ClopenSet(level, std::vector<BitString>(gens.begin(), gens.end()))));
      }
      BoundedTest t = BoundedTest::from_stages(std::move(stages_v), false, "generated");
      if (!out_path.empty()) write_json(out_path, test_to_json(t, depth));
      std::cout << "seed " << seed << ", depth " << depth << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

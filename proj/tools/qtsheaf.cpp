// Command-line front end. Every command reads/writes JSON (see
// docs/formats.md) and output bytes depend only on the inputs and flags,
// never on wall time, locale, or job count.
//
// Exit codes:
//   0  decided / verified / success
//   1  a checked claim failed (verify counterexample, construction retry
//      exhaustion)
//   2  undecided: heuristic stability verdict, unknown isomorphism
//   3  input problems: malformed JSON, shape mismatches, irrational
//      support, data outside a command's domain

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qts/construct.hpp"
#include "qts/errors.hpp"
#include "qts/experiments.hpp"
#include "qts/homology.hpp"
#include "qts/io.hpp"
#include "qts/stability.hpp"

namespace {

using qts::Json;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw qts::input_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw qts::input_error("cannot open output file: " + path);
  f << text;
}

qts::QuotPoint load_datum(const std::string& path) {
  std::string name = (path.empty() || path == "-") ? "<stdin>" : path;
  return qts::quot_point_from_json(qts::parse_json(read_input(path), name));
}

std::array<qts::Rational, 3> parse_point_arg(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw qts::input_error("expected a point as \"x,y,z\", got: " + s);
  return {qts::parse_rational(parts[0]), qts::parse_rational(parts[1]),
          qts::parse_rational(parts[2])};
}

struct IoOpts {
  std::string in = "-";
  std::string out = "-";
};

void add_io(CLI::App* cmd, IoOpts& o) {
  cmd->add_option("--in", o.in, "input file (default: stdin)");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
}

void add_stability_opts(CLI::App* cmd, qts::StabilityOptions& s) {
  cmd->add_option("--seed", s.seed, "seed for the heuristic subspace search");
  cmd->add_option("--samples", s.samples, "extra random seeds for the heuristic search");
  cmd->add_option("--max-n", s.max_exhaustive_n,
                  "largest length handled by exact subset enumeration");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculator for framed finite-length quotients on 3-space"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- validate ---------------------------------------------------------
  {
    auto* c = app.add_subcommand("validate", "check commutation and cyclicity of a datum");
    auto o = std::make_shared<IoOpts>();
    add_io(c, *o);
    c->callback([&exit_code, o] {
      auto rep = qts::validate(load_datum(o->in));
      write_output(o->out, qts::dump_json(qts::to_json(rep)));
      if (!rep.ok) exit_code = 3;
    });
  }

  // --- support ----------------------------------------------------------
  {
    auto* c = app.add_subcommand("support", "joint primary decomposition of the quotient");
    auto o = std::make_shared<IoOpts>();
    add_io(c, *o);
    c->callback([o] {
      auto support = qts::support_decomposition(load_datum(o->in));
      write_output(o->out, qts::dump_json(qts::to_json(support)));
    });
  }

  // --- stability --------------------------------------------------------
  {
    auto* c = app.add_subcommand("stability", "stability verdict with witness when destabilized");
    auto o = std::make_shared<IoOpts>();
    auto s = std::make_shared<qts::StabilityOptions>();
    add_io(c, *o);
    add_stability_opts(c, *s);
    c->callback([&exit_code, o, s] {
      auto v = qts::check_stability(load_datum(o->in), *s);
      write_output(o->out, qts::dump_json(qts::to_json(v)));
      if (!v.certified) exit_code = 2;
    });
  }

  // --- jh ---------------------------------------------------------------
  {
    auto* c = app.add_subcommand("jh", "Jordan-Holder factors of a semistable datum");
    auto o = std::make_shared<IoOpts>();
    auto s = std::make_shared<qts::StabilityOptions>();
    add_io(c, *o);
    add_stability_opts(c, *s);
    c->callback([o, s] {
      auto f = qts::jordan_holder(load_datum(o->in), *s);
      write_output(o->out, qts::dump_json(qts::to_json(f)));
    });
  }

  // --- sclass -----------------------------------------------------------
  {
    auto* c = app.add_subcommand("sclass", "S-equivalence class: sorted Jordan-Holder factors");
    auto o = std::make_shared<IoOpts>();
    auto s = std::make_shared<qts::StabilityOptions>();
    add_io(c, *o);
    add_stability_opts(c, *s);
    c->callback([o, s] {
      auto cls = qts::s_equivalence_class(load_datum(o->in), *s);
      write_output(o->out, qts::dump_json(qts::class_to_json(cls)));
    });
  }

  // --- iso --------------------------------------------------------------
  {
    auto* c = app.add_subcommand("iso", "decide isomorphism of two data");
    auto o = std::make_shared<IoOpts>();
    auto with = std::make_shared<std::string>();
    auto iopts = std::make_shared<qts::IsoOptions>();
    add_io(c, *o);
    c->add_option("--with", *with, "second datum file")->required();
    c->add_option("--radius", iopts->grid_radius, "coefficient grid radius");
    c->add_option("--budget", iopts->max_combinations, "grid combination budget");
    c->callback([&exit_code, o, with, iopts] {
      auto res = qts::is_isomorphic(load_datum(o->in), load_datum(*with), *iopts);
      write_output(o->out, qts::dump_json(qts::to_json(res)));
      if (res.answer == qts::IsoAnswer::unknown) exit_code = 2;
    });
  }

  // --- ext --------------------------------------------------------------
  {
    auto* c = app.add_subcommand(
        "ext", "Koszul Ext table of the quotient, plus derived kernel-sheaf numbers");
    auto o = std::make_shared<IoOpts>();
    auto with = std::make_shared<std::string>();
    auto s = std::make_shared<qts::StabilityOptions>();
    add_io(c, *o);
    add_stability_opts(c, *s);
    c->add_option("--with", *with, "second datum: print ext(Q_in, Q_with) only");
    c->callback([o, with, s] {
      auto qp = load_datum(o->in);
      if (!with->empty()) {
        auto other = load_datum(*with);
        auto t = qts::koszul_ext(qts::quotient_module(qp), qts::quotient_module(other));
        write_output(o->out, qts::dump_json(qts::to_json(t)));
        return;
      }
      auto m = qts::quotient_module(qp);
      auto t = qts::koszul_ext(m, m);
      Json j;
      j["quotient_ext"] = qts::to_json(t);
      j["hom_E_Q"] = qp.r * static_cast<long long>(qp.n) + t.ext1 - t.hom;
      try {
        j["ext1_E_E"] = qts::ext1_E_E(qp, *s);
      } catch (const qts::error&) {
        j["ext1_E_E"] = nullptr;  // defined for certified stable data only
      }
      long long hio = qts::hom_IZ_OZ(m);
      j["hom_IZ_OZ"] = hio;
      Json fam;
      fam["derived"] = qts::family_dim_derived(hio, qp.r, qp.n);
      fam["stated"] = qts::family_dim_stated(hio, qp.r, qp.n);
      j["family_dim"] = std::move(fam);
      write_output(o->out, qts::dump_json(j));
    });
  }

  // --- cohomology -------------------------------------------------------
  {
    auto* c = app.add_subcommand("cohomology", "sheaf cohomology of the kernel sheaf");
    auto o = std::make_shared<IoOpts>();
    add_io(c, *o);
    c->callback([o] {
      auto t = qts::kernel_cohomology(load_datum(o->in));
      write_output(o->out, qts::dump_json(qts::to_json(t)));
    });
  }

  // --- tangent ----------------------------------------------------------
  {
    auto* c = app.add_subcommand(
        "tangent", "tangent dimension two ways: linearized equations vs hom(E,Q)");
    auto o = std::make_shared<IoOpts>();
    add_io(c, *o);
    c->callback([o] {
      auto qp = load_datum(o->in);
      long long adhm = qts::adhm_tangent(qp);
      long long homological = qts::hom_E_Q(qp);
      Json j;
      j["adhm"] = adhm;
      j["homological"] = homological;
      j["equal"] = (adhm == homological);
      write_output(o->out, qts::dump_json(j));
    });
  }

  // --- construct --------------------------------------------------------
  {
    auto* c = app.add_subcommand("construct", "build data with known verdicts");
    c->require_subcommand(1);

    auto* r2 = c->add_subcommand(
        "rank2", "rank-two datum from points and framing rows (JSON spec or --length random)");
    auto o2 = std::make_shared<IoOpts>();
    auto len2 = std::make_shared<int>(0);
    auto seed2 = std::make_shared<std::uint64_t>(0);
    add_io(r2, *o2);
    r2->add_option("--length", *len2, "draw a random spec of this length instead of reading one");
    r2->add_option("--seed", *seed2, "seed for the random spec");
    r2->callback([o2, len2, seed2] {
      qts::Rank2Spec spec;
      if (*len2 > 0) {
        spec = qts::random_rank2_spec(*len2, *seed2);
      } else {
        std::string name = (o2->in.empty() || o2->in == "-") ? "<stdin>" : o2->in;
        Json j = qts::parse_json(read_input(o2->in), name);
        if (!j.is_object() || !j.contains("points") || !j.contains("alphas"))
          throw qts::input_error("rank2 spec: expected {\"points\": [...], \"alphas\": [...]}");
        for (std::size_t i = 0; i < j["points"].size(); ++i)
          spec.points.push_back(
              qts::point_from_json(j["points"][i], "points[" + std::to_string(i) + "]"));
        for (std::size_t i = 0; i < j["alphas"].size(); ++i) {
          const Json& a = j["alphas"][i];
          std::string where = "alphas[" + std::to_string(i) + "]";
          if (!a.is_array() || a.size() != 2)
            throw qts::input_error(where + ": expected two rationals");
          spec.alphas.push_back({qts::rational_from_json(a[0], where + "[0]"),
                                 qts::rational_from_json(a[1], where + "[1]")});
        }
      }
      write_output(o2->out, qts::dump_json(qts::to_json(qts::build_rank2(spec))));
    });

    auto* ind = c->add_subcommand(
        "induct", "iterated-extension datum on the principal component");
    auto oi = std::make_shared<IoOpts>();
    auto ri = std::make_shared<int>(0);
    auto ni = std::make_shared<int>(0);
    auto seedi = std::make_shared<std::uint64_t>(0);
    auto si = std::make_shared<qts::StabilityOptions>();
    add_io(ind, *oi);
    ind->add_option("-r,--rank", *ri, "framing rank")->required();
    ind->add_option("-n,--length", *ni, "quotient length")->required();
    ind->add_option("--seed", *seedi, "construction seed");
    ind->add_option("--samples", si->samples, "extra random seeds for the heuristic search");
    ind->add_option("--max-n", si->max_exhaustive_n,
                    "largest length handled by exact subset enumeration");
    ind->callback([oi, ri, ni, seedi, si] {
      auto res = qts::iterate_construction(*ri, *ni, *seedi, *si);
      write_output(oi->out, qts::dump_json(qts::to_json(res.qp)));
    });
  }

  // --- probe-homs -------------------------------------------------------
  {
    auto* c = app.add_subcommand(
        "probe-homs", "dim hom(E, I_q) at every support point and at probe points");
    auto o = std::make_shared<IoOpts>();
    auto probes = std::make_shared<std::vector<std::string>>();
    add_io(c, *o);
    c->add_option("--probe", *probes, "extra probe point \"x,y,z\" (repeatable)");
    c->callback([o, probes] {
      auto qp = load_datum(o->in);
      Json j;
      Json sup = Json::array();
      for (const auto& pc : qts::count_point_quotient_homs(qp)) {
        Json e;
        e["point"] = qts::to_json(pc.point);
        e["dim"] = pc.dim;
        sup.push_back(std::move(e));
      }
      j["support"] = std::move(sup);
      Json pr = Json::array();
      for (const auto& ps : *probes) {
        auto pt = parse_point_arg(ps);
        Json e;
        e["point"] = qts::to_json(pt);
        e["dim"] = qts::point_quotient_hom_dim(qp, pt);
        pr.push_back(std::move(e));
      }
      j["probes"] = std::move(pr);
      write_output(o->out, qts::dump_json(j));
    });
  }

  // --- sample -----------------------------------------------------------
  {
    auto* c = app.add_subcommand("sample", "deterministic random datum");
    auto o = std::make_shared<IoOpts>();
    auto n = std::make_shared<int>(0);
    auto r = std::make_shared<int>(0);
    auto thick = std::make_shared<bool>(false);
    auto seed = std::make_shared<std::uint64_t>(0);
    add_io(c, *o);
    c->add_option("-n,--length", *n, "quotient length")->required();
    c->add_option("-r,--rank", *r, "framing rank")->required();
    c->add_flag("--thick", *thick, "non-reduced support (default: reduced)");
    c->add_option("--seed", *seed, "sampling seed");
    c->callback([o, n, r, thick, seed] {
      auto qp = qts::random_quot_point(*n, *r, !*thick, *seed);
      write_output(o->out, qts::dump_json(qts::to_json(qp)));
    });
  }

  // --- verify -----------------------------------------------------------
  {
    auto* c = app.add_subcommand("verify", "randomized checks of the structure claims");
    c->require_subcommand(1);

    auto add_common = [](CLI::App* sub, auto& trials, auto& seed, auto& jobs, auto& out) {
      sub->add_option("--trials", trials, "number of trials");
      sub->add_option("--seed", seed, "experiment seed");
      sub->add_option("--jobs", jobs, "worker threads (result is jobs-independent)");
      sub->add_option("--out", out, "output file (default: stdout)");
    };

    {
      auto* e = c->add_subcommand("empty", "rank above length: everything unstable");
      auto r = std::make_shared<int>(0);
      auto n = std::make_shared<int>(0);
      auto trials = std::make_shared<int>(100);
      auto seed = std::make_shared<std::uint64_t>(0);
      auto jobs = std::make_shared<int>(1);
      auto out = std::make_shared<std::string>("-");
      e->add_option("-r,--rank", *r, "framing rank")->required();
      e->add_option("-n,--length", *n, "quotient length")->required();
      add_common(e, *trials, *seed, *jobs, *out);
      e->callback([&exit_code, r, n, trials, seed, jobs, out] {
        auto rep = qts::verify_empty(*r, *n, *trials, *seed, *jobs);
        write_output(*out, qts::dump_json(qts::to_json(rep)));
        if (!rep.ok()) exit_code = 1;
      });
    }

    {
      auto* e = c->add_subcommand("symn", "rank = length: classes are support multisets");
      auto n = std::make_shared<int>(0);
      auto trials = std::make_shared<int>(100);
      auto seed = std::make_shared<std::uint64_t>(0);
      auto jobs = std::make_shared<int>(1);
      auto out = std::make_shared<std::string>("-");
      e->add_option("-n,--length", *n, "quotient length and framing rank")->required();
      add_common(e, *trials, *seed, *jobs, *out);
      e->callback([&exit_code, n, trials, seed, jobs, out] {
        auto rep = qts::verify_symn(*n, *trials, *seed, *jobs);
        write_output(*out, qts::dump_json(qts::to_json(rep)));
        if (!rep.ok()) exit_code = 1;
      });
    }

    {
      auto* e = c->add_subcommand("dimension",
                                  "principal component dimension n(r+2) - r^2 + 1 via ext1");
      auto r = std::make_shared<int>(0);
      auto n = std::make_shared<int>(0);
      auto trials = std::make_shared<int>(10);
      auto seed = std::make_shared<std::uint64_t>(0);
      auto jobs = std::make_shared<int>(1);
      auto out = std::make_shared<std::string>("-");
      e->add_option("-r,--rank", *r, "framing rank")->required();
      e->add_option("-n,--length", *n, "quotient length")->required();
      add_common(e, *trials, *seed, *jobs, *out);
      e->callback([&exit_code, r, n, trials, seed, jobs, out] {
        auto rep = qts::verify_dimension(*r, *n, *trials, *seed, *jobs);
        write_output(*out, qts::dump_json(qts::to_json(rep)));
        if (!rep.ok()) exit_code = 1;
      });
    }
  }

  // --- commvar ----------------------------------------------------------
  {
    auto* c = app.add_subcommand("commvar",
                                 "linearized commuting-variety dimensions at random triples");
    auto n = std::make_shared<int>(0);
    auto trials = std::make_shared<int>(20);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto jobs = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>("-");
    c->add_option("-n,--size", *n, "matrix size")->required();
    c->add_option("--trials", *trials, "number of trials");
    c->add_option("--seed", *seed, "experiment seed");
    c->add_option("--jobs", *jobs, "worker threads (result is jobs-independent)");
    c->add_option("--out", *out, "output file (default: stdout)");
    c->callback([n, trials, seed, jobs, out] {
      auto rep = qts::commuting_variety_sample(*n, *trials, *seed, *jobs);
      write_output(*out, qts::dump_json(qts::to_json(rep)));
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  } catch (const qts::uncertified_error& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return 2;
  } catch (const qts::retry_exhausted& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  } catch (const qts::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}

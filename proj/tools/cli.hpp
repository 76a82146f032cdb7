#pragma once

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cyclerank/cyclerank.hpp"

namespace cyclerank::cli {

inline constexpr const char* kVersion = "0.1.0";

enum Exit : int { ok = 0, input_error = 1, invalid = 2, capacity = 3 };

/// A report is a header line of key/value fields followed by named blocks of
/// lines. Plain output puts the fields on one line; kv output prints
/// `key=value` per field and `block.i=line` per block line.
class Report {
 public:
  Report& field(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  template <class T>
  Report& field(std::string key, const T& value) {
    std::ostringstream s;
    s << value;
    return field(std::move(key), s.str());
  }
  Report& line(const std::string& block, std::string text) {
    for (auto& [name, lines] : blocks_) {
      if (name == block) {
        lines.push_back(std::move(text));
        return *this;
      }
    }
    blocks_.push_back({block, {std::move(text)}});
    return *this;
  }
  Report& lines(const std::string& block, const std::string& text) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) line(block, l);
    return *this;
  }

  void print(std::ostream& out, bool kv) const {
    if (kv) {
      for (const auto& [k, v] : fields_) out << k << '=' << v << '\n';
      for (const auto& [name, ls] : blocks_) {
        for (std::size_t i = 0; i < ls.size(); ++i) out << name << '.' << i << '=' << ls[i] << '\n';
      }
      return;
    }
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      out << (i ? " " : "") << fields_[i].first << ' ' << fields_[i].second;
    }
    if (!fields_.empty()) out << '\n';
    for (const auto& [name, ls] : blocks_) {
      for (const auto& l : ls) out << l << '\n';
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
  std::vector<std::pair<std::string, std::vector<std::string>>> blocks_;
};

inline std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"Cycle rank, directed pathwidth, DFVS and star height toolkit", "cyclerank"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.add_option("--format", format_, "Report format")
        ->check(CLI::IsMember({"text", "kv"}))
        ->capture_default_str();

    std::function<Report()> action;
    setup(app, action);

    try {
      app.parse(argc, argv);
    } catch (const CLI::Success& e) {
      // --help and --version
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return input_error;
    }

    try {
      Report r = action();
      r.print(out_, format_ == "kv");
      return status_;
    } catch (const ParseError& e) {
      err_ << "error: parse: " << e.what() << '\n';
      return input_error;
    } catch (const InputError& e) {
      err_ << "error: input: " << e.what() << '\n';
      return input_error;
    } catch (const DomainError& e) {
      err_ << "error: domain: " << e.what() << '\n';
      return invalid;
    } catch (const CapacityError& e) {
      err_ << "error: capacity: " << e.what() << '\n';
      return capacity;
    } catch (const std::bad_alloc&) {
      err_ << "error: capacity: out of memory\n";
      return capacity;
    }
  }

 private:
  // Reads a whole input; "-" means stdin.
  std::string slurp(const std::string& path) {
    if (path == "-") {
      std::ostringstream s;
      s << in_.rdbuf();
      return s.str();
    }
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }

  Digraph load_graph(const std::string& path) {
    std::istringstream in(slurp(path));
    auto parsed = parse_digraph_text(in);
    if (parsed.duplicate_edges > 0) {
      err_ << "warning: " << parsed.duplicate_edges << " duplicate edge(s) ignored in " << path
           << '\n';
    }
    return std::move(parsed.graph);
  }

  Dfa load_dfa(const std::string& path) {
    std::istringstream in(slurp(path));
    return parse_dfa(in);
  }

  void setup(CLI::App& app, std::function<Report()>& action) {
    setup_crank(app, action);
    setup_forest(app, action);
    setup_widths(app, action);
    setup_dfvs(app, action);
    setup_sh(app, action);
    setup_reduce(app, action);
    setup_bench(app, action);
  }

  void setup_crank(CLI::App& app, std::function<Report()>& action) {
    auto* crank = app.add_subcommand("crank", "Cycle rank of a digraph");
    crank->require_subcommand(1);

    auto* exact = crank->add_subcommand("exact", "Exact subset dynamic program with witness forest");
    exact->add_option("graph", graph_, "Digraph file ('-' for stdin)")->required();
    exact->add_option("--memo-limit", memo_limit_, "Abort once the memo holds this many subsets");
    exact->add_flag("--stats", stats_, "Also print memo size and wall time");
    exact->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        ExactOptions opts;
        if (memo_limit_) opts.memo_limit = memo_limit_;
        auto r = crank_exact(g, opts);
        Report rep;
        rep.field("crank", r.value);
        if (stats_) {
          rep.line("stats", "memo " + std::to_string(r.stats.memo_entries) + " seconds " +
                                fixed(r.stats.elapsed_seconds, 6));
        }
        rep.lines("forest", serialize_forest(r.witness));
        return rep;
      };
    });

    auto* brute = crank->add_subcommand("brute", "Literal recursive definition (small graphs)");
    brute->add_option("graph", graph_, "Digraph file ('-' for stdin)")->required();
    brute->add_option("--max-order", brute_limit_, "Largest order accepted")->capture_default_str();
    brute->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        return Report().field("crank", crank_bruteforce(g, brute_limit_));
      };
    });

    auto* approx = crank->add_subcommand("approx", "Separator-based approximation");
    approx->add_option("graph", graph_, "Digraph file ('-' for stdin)")->required();
    approx->add_option("--base-threshold", base_threshold_,
                       "Pieces at most this large are solved by the base case (default: auto)");
    approx->add_option("--separator", separator_, "Separator search")
        ->check(CLI::IsMember({"exact", "greedy"}))
        ->capture_default_str();
    approx->add_option("--exact-separator-limit", approx_cfg_.exact_separator_limit,
                       "Largest piece searched exhaustively for a separator")
        ->capture_default_str();
    approx->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        ApproxConfig cfg = approx_cfg_;
        if (base_threshold_) cfg.base_threshold = base_threshold_;
        cfg.separator_mode =
            separator_ == "greedy" ? SeparatorMode::greedy : SeparatorMode::exact_below_limit;
        auto r = crank_approx(g, cfg);
        Report rep;
        rep.field("height", r.height).field("base-threshold", r.base_threshold);
        for (const auto& s : r.steps) {
          rep.line("separators", "depth " + std::to_string(s.depth) + " piece " +
                                     std::to_string(s.piece_size) + " separator " +
                                     std::to_string(s.separator_size));
        }
        rep.lines("forest", serialize_forest(r.forest));
        return rep;
      };
    });
  }

  void setup_forest(CLI::App& app, std::function<Report()>& action) {
    auto* forest = app.add_subcommand("forest", "Directed elimination forests");
    forest->require_subcommand(1);
    auto* validate = forest->add_subcommand("validate", "Check a forest against a digraph");
    validate->add_option("graph", graph_, "Digraph file")->required();
    validate->add_option("forest", second_, "Forest file")->required();
    validate->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        auto f = parse_forest(slurp(second_), g.order());
        auto v = validate_forest(g, f);
        Report rep;
        rep.field("valid", v.ok() ? "yes" : "no").field("height", height(f));
        for (const auto& msg : v.violations) rep.line("violations", msg);
        if (!v.ok()) status_ = invalid;
        return rep;
      };
    });
  }

  void setup_widths(CLI::App& app, std::function<Report()>& action) {
    auto* dpw = app.add_subcommand("dpw", "Exact directed pathwidth with a decomposition");
    dpw->add_option("graph", graph_, "Digraph file")->required();
    dpw->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        auto r = dpw_exact(g);
        Report rep;
        rep.field("dpw", r.width.value);
        rep.lines("bags", serialize_path_decomposition(r.decomposition));
        return rep;
      };
    });

    auto* snum = app.add_subcommand("snum", "Exact weak separator number with a witness");
    snum->add_option("graph", graph_, "Digraph file")->required();
    snum->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        auto r = snum_exact_with_witness(g);
        Report rep;
        rep.field("snum", r.value);
        rep.line("witness", "target " + r.witness.target.to_string() + " separator " +
                                r.witness.separator.to_string());
        return rep;
      };
    });

    auto* bounds = app.add_subcommand("bounds", "Check snum <= dpw <= crank and the R_k bound");
    bounds->add_option("graph", graph_, "Loop-free digraph file")->required();
    bounds->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        auto b = check_bounds(g);
        Report rep;
        rep.field("snum", b.snum).field("dpw", b.dpw).field("crank", b.crank);
        rep.field("rk-1", b.rk_minus_1 ? std::to_string(*b.rk_minus_1) : std::string("n/a"));
        rep.field("chain", b.chain_ok ? "ok" : "violated");
        if (!b.chain_ok) status_ = invalid;
        return rep;
      };
    });

    auto* count = app.add_subcommand("count-sc", "Count strongly connected vertex subsets");
    count->add_option("graph", graph_, "Digraph file")->required();
    count->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        auto c = count_sc_subsets(g);
        std::size_t d = 1;
        for (const auto& deg : degrees(g)) d = std::max(d, deg.out);
        Report rep;
        rep.field("total", c.total).field("nontrivial", c.nontrivial);
        rep.field("outdeg", d).field("bound", fixed(sc_subset_bound(g.order(), d), 1));
        return rep;
      };
    });
  }

  void setup_dfvs(CLI::App& app, std::function<Report()>& action) {
    auto* dfvs = app.add_subcommand("dfvs", "Directed feedback vertex sets");
    dfvs->require_subcommand(1);

    auto* min = dfvs->add_subcommand("min", "A minimum DFVS (lexicographically smallest)");
    min->add_option("graph", graph_, "Digraph file")->required();
    min->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        auto r = min_dfvs(g);
        Report rep;
        rep.field("size", r.minimum_size).field("forced", r.forced.to_string());
        rep.field("maximal-acyclic", r.maximal_acyclic_count);
        rep.line("set", r.minimum_set.to_string());
        return rep;
      };
    });

    auto* all = dfvs->add_subcommand("enumerate", "All minimal DFVSs");
    all->add_option("graph", graph_, "Digraph file")->required();
    all->add_option("--cap", cap_, "Stop with a capacity error after this many sets");
    all->add_flag("--acyclic", list_acyclic_, "List the maximal acyclic subsets instead");
    all->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        EnumerationOptions opts;
        if (cap_) opts.cap = cap_;
        auto sets = list_acyclic_ ? maximal_acyclic_subsets(g, opts) : minimal_dfvs_enumerate(g, opts);
        Report rep;
        rep.field("count", sets.size());
        for (const auto& s : sets) rep.line("sets", s.to_string());
        return rep;
      };
    });
  }

  void setup_sh(CLI::App& app, std::function<Report()>& action) {
    auto* sh_cmd = app.add_subcommand("sh", "Star height");
    sh_cmd->require_subcommand(1);

    auto* regex = sh_cmd->add_subcommand("regex", "Syntactic star height of a regular expression");
    regex->add_option("expr", expr_, "Expression: '#' empty set, '@' empty word, '+' union")
        ->required();
    regex->add_flag("--nfa", nfa_, "Also report the cycle rank of its Thompson automaton");
    regex->callback([this, &action] {
      action = [this] {
        auto r = parse_regex(expr_);
        Report rep;
        rep.field("sh", sh(r));
        if (nfa_) {
          auto a = regex_to_nfa(r);
          rep.field("nfa-states", a.states).field("nfa-crank", crank_exact(underlying_digraph(a)).value);
        }
        return rep;
      };
    });

    auto* bidet = sh_cmd->add_subcommand("bidet", "Star height of a bideterministic automaton");
    bidet->add_option("automaton", graph_, "Automaton file")->required();
    bidet->callback([this, &action] {
      action = [this] {
        auto r = star_height_bidet(load_dfa(graph_));
        Report rep;
        rep.field("sh", r.value).field("trimmed-states", r.trimmed.states());
        rep.lines("forest", serialize_forest(r.witness));
        return rep;
      };
    });
  }

  void setup_reduce(CLI::App& app, std::function<Report()>& action) {
    auto* reduce = app.add_subcommand("reduce", "Reductions from digraphs to automata");
    reduce->require_subcommand(1);

    auto* walk = reduce->add_subcommand("walk", "Automaton of closed walks through a vertex");
    walk->add_option("graph", graph_, "Strongly connected digraph file")->required();
    walk->add_option("vertex", vertex_, "Start and accepting vertex")->required();
    walk->callback([this, &action] {
      action = [this] {
        auto g = load_graph(graph_);
        if (vertex_ >= g.order()) throw InputError("vertex " + std::to_string(vertex_) + " out of range");
        return Report().lines("automaton", serialize_automaton(walk_language_automaton(g, vertex_)));
      };
    });

    auto* bin = reduce->add_subcommand("binarize", "Re-encode a bideterministic automaton over {a,b}");
    bin->add_option("automaton", graph_, "Bideterministic automaton file")->required();
    bin->callback([this, &action] {
      action = [this] {
        return Report().lines("automaton", serialize_automaton(binarize(load_dfa(graph_))));
      };
    });
  }

  void setup_bench(CLI::App& app, std::function<Report()>& action) {
    auto* bench = app.add_subcommand("bench", "Benchmarks");
    bench->require_subcommand(1);
    auto* crank = bench->add_subcommand("crank", "Exact cycle rank on random strongly connected digraphs");
    crank->add_option("--n", bench_n_, "Order")->required()->check(CLI::Range(0, 64));
    crank->add_option("--outdeg", bench_d_, "Maximum outdegree")->capture_default_str()->check(CLI::PositiveNumber);
    crank->add_option("--trials", bench_trials_, "Number of graphs")->capture_default_str();
    crank->add_option("--seed", seed_, "Generator seed")->capture_default_str();
    crank->add_flag("--timing", stats_, "Include wall times (output no longer reproducible)");
    crank->callback([this, &action] {
      action = [this] {
        Rng rng(seed_);
        const double bound = sc_subset_bound(bench_n_, bench_d_);
        std::size_t worst = 0, over = 0;
        double total_seconds = 0;
        Report rep;
        for (std::size_t t = 0; t < bench_trials_; ++t) {
          auto g = random_strongly_connected(bench_n_, bench_d_, rng);
          auto r = crank_exact(g);
          worst = std::max(worst, r.stats.memo_entries);
          if (static_cast<double>(r.stats.memo_entries) > bound) ++over;
          total_seconds += r.stats.elapsed_seconds;
          std::string l = "trial " + std::to_string(t) + " edges " + std::to_string(g.edge_count()) +
                          " crank " + std::to_string(r.value) + " memo " +
                          std::to_string(r.stats.memo_entries);
          if (stats_) l += " seconds " + fixed(r.stats.elapsed_seconds, 6);
          rep.line("trials", l);
        }
        rep.field("n", bench_n_).field("outdeg", bench_d_).field("trials", bench_trials_);
        rep.field("max-memo", worst).field("bound", fixed(bound, 1)).field("over-bound", over);
        if (stats_) rep.field("seconds", fixed(total_seconds, 6));
        return rep;
      };
    });
  }

  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  int status_ = ok;

  std::string format_ = "text";
  std::string graph_, second_, expr_;
  std::string separator_ = "exact";
  std::size_t memo_limit_ = 0, brute_limit_ = 10, base_threshold_ = 0, cap_ = 0, vertex_ = 0;
  std::size_t bench_n_ = 0, bench_d_ = 2, bench_trials_ = 10;
  std::uint64_t seed_ = 1;
  bool stats_ = false, list_acyclic_ = false, nfa_ = false;
  ApproxConfig approx_cfg_;
};

inline int run(int argc, const char* const* argv, std::istream& in = std::cin,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(in, out, err).run(argc, argv);
}

}  // namespace cyclerank::cli

#include "cli.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "causalnet/audit.h"
#include "causalnet/bell.h"
#include "causalnet/dag.h"
#include "causalnet/distribution.h"
#include "causalnet/errors.h"
#include "causalnet/graphoid.h"
#include "causalnet/independence.h"
#include "causalnet/separation.h"

namespace causalnet::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> ParseAngles(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : SplitList(text)) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw UsageError("--angles: cannot parse '" + part + "'");
    }
    out.push_back(v);
  }
  if (out.size() != 4) {
    throw UsageError("--angles needs four comma-separated radians");
  }
  return out;
}

void RequirePositive(double eps) {
  if (!(eps > 0.0)) throw UsageError("--eps must be positive");
}

int Verdict(bool positive) { return positive ? kExitPositive : kExitNegative; }

// Options shared across verbs. Each verb only registers what it uses.
struct Options {
  std::string dag_path;
  std::string dist_path;
  std::string behavior_path;
  std::string x;
  std::string y;
  std::string z;
  double eps = kDefaultEpsilon;
  std::uint64_t seed = 0;
  int trials = 1000;
  int variant = -1;
  std::string angles = "0,1.5707963267948966,0.7853981633974483,-0.7853981633974483";
  std::string out_path;
  std::string kind;
  int lambda = kDefaultLambdaCardinality;
  bool csv = false;
};

class Commands {
 public:
  Commands(std::ostream& out) : out_(out) {}

  int Separation(bool quantum) {
    RequirePositive(opt_.eps);
    const Dag dag = LoadDagFile(opt_.dag_path);
    const CondQuery q = MakeQuery(dag, SplitList(opt_.x), SplitList(opt_.y),
                                  SplitList(opt_.z));
    const SeparationVerdict v = quantum ? QSeparated(dag, q) : DSeparated(dag, q);
    if (opt_.csv) {
      out_ << "separated,witness\n"
           << (v.separated ? "1," : "0,")
           << (v.witness ? FormatPath(dag, *v.witness) : "") << "\n";
    } else if (v.separated) {
      out_ << "separated\n";
    } else {
      out_ << "not separated\nwitness: " << FormatPath(dag, *v.witness)
           << "\n";
    }
    return Verdict(v.separated);
  }

  int Compare() {
    const Dag dag = LoadDagFile(opt_.dag_path);
    const CriteriaReport report = CompareCriteria(dag);
    out_ << (opt_.csv ? FormatCriteriaCsv(dag, report)
                      : FormatCriteriaTable(dag, report));
    if (!opt_.csv) {
      out_ << "disagreements: " << report.num_disagreements() << "\n";
    }
    return Verdict(report.num_disagreements() == 0);
  }

  int LocalAudit(const std::string& which) {
    RequirePositive(opt_.eps);
    const Dag dag = LoadDagFile(opt_.dag_path);
    const JointTable p = LoadJointTableFile(opt_.dist_path);
    AuditReport report;
    if (which == "compat") {
      report = Compatible(p, dag, opt_.eps);
    } else if (which == "markov") {
      report = CausalMarkovCheck(p, dag, opt_.eps);
    } else {
      report = CausalCompletenessCheck(p, dag, opt_.eps);
    }
    return Emit(report);
  }

  int Rpcc() {
    RequirePositive(opt_.eps);
    const auto xs = SplitList(opt_.x);
    const auto ys = SplitList(opt_.y);
    if (xs.size() != 1 || ys.size() != 1) {
      throw UsageError("rpcc needs exactly one node in --x and in --y");
    }
    const Dag dag = LoadDagFile(opt_.dag_path);
    const JointTable p = LoadJointTableFile(opt_.dist_path);
    const RpccReport r =
        ReichenbachCheck(p, dag, dag.Id(xs[0]), dag.Id(ys[0]), opt_.eps);
    std::string past;
    for (const auto& n : dag.Names(r.common_past)) {
      past += (past.empty() ? "" : ",") + n;
    }
    if (opt_.csv) {
      out_ << "verdict,common_past,marginal_violation,screened_violation\n"
           << RpccVerdictName(r.verdict) << "," << fmt::format("{}", fmt::join(dag.Names(r.common_past), ";"))
           << ","
           << (r.marginal ? FormatReal(r.marginal->max_violation) : "") << ","
           << (r.screened ? FormatReal(r.screened->max_violation) : "")
           << "\n";
    } else {
      out_ << RpccVerdictName(r.verdict) << "\n";
      out_ << "common past: {" << past << "}\n";
      if (r.marginal) {
        out_ << "marginal dependence: " << FormatReal(r.marginal->max_violation)
             << "\n";
      }
      if (r.screened) {
        out_ << "dependence given common past: "
             << FormatReal(r.screened->max_violation) << "\n";
      }
    }
    return Verdict(r.verdict != RpccVerdict::kViolatesRpcc);
  }

  int Graphoid() {
    RequirePositive(opt_.eps);
    if (opt_.trials <= 0) throw UsageError("--trials must be positive");
    const JointTable p = LoadJointTableFile(opt_.dist_path);
    const GraphoidReport r = GraphoidAudit(p, opt_.eps, opt_.trials, opt_.seed);
    out_ << (opt_.csv ? FormatAuditCsv(r.ToAudit()) : FormatGraphoidTable(r));
    return Verdict(r.pass());
  }

  int BellChsh() {
    RequirePositive(opt_.eps);
    if (opt_.variant > 7) throw UsageError("--variant must be in 0..7");
    const Behavior b = LoadBehaviorFile(opt_.behavior_path);
    double worst = -4.0;
    if (opt_.csv) out_ << "variant,S\n";
    for (int v = 0; v < 8; ++v) {
      if (opt_.variant >= 0 && v != opt_.variant) continue;
      const double s = ChshValue(b, v);
      worst = std::max(worst, s);
      if (opt_.csv) {
        out_ << v << "," << FormatReal(s) << "\n";
      } else {
        out_ << "variant " << v << ": S = " << FormatReal(s) << "\n";
      }
    }
    const bool within = worst <= 2.0 + opt_.eps;
    if (!opt_.csv) {
      out_ << (within ? "within the local bound 2\n"
                      : "violates the local bound 2\n");
    }
    return Verdict(within);
  }

  int BellMember() {
    RequirePositive(opt_.eps);
    const Behavior b = LoadBehaviorFile(opt_.behavior_path);
    const MembershipVerdict v = LhvMembership(b, opt_.eps);
    out_ << (opt_.csv ? FormatMembershipCsv(v) : FormatMembership(v));
    return Verdict(v.local);
  }

  int BellAudit(bool qcc) {
    RequirePositive(opt_.eps);
    const Behavior b = LoadBehaviorFile(opt_.behavior_path);
    return Emit(qcc ? QuantumCausalityAudit(b, opt_.eps)
                    : NoSignallingCheck(b, opt_.eps));
  }

  int Gen() {
    static const std::vector<std::string> kinds = {
        "bell-dag", "singlet", "pr-box", "random-lhv", "random-compatible"};
    if (std::find(kinds.begin(), kinds.end(), opt_.kind) == kinds.end()) {
      throw UsageError("unknown gen kind '" + opt_.kind + "'");
    }
    const bool random = opt_.kind.rfind("random-", 0) == 0;
    if (random && !seed_given_) {
      throw UsageError("gen " + opt_.kind + " requires --seed");
    }
    if (opt_.kind == "random-compatible" && opt_.dag_path.empty()) {
      throw UsageError("gen random-compatible requires a DAG file argument");
    }
    if (opt_.lambda < 1) throw UsageError("--lambda must be positive");
    std::vector<double> angles;
    if (opt_.kind == "singlet") angles = ParseAngles(opt_.angles);

    std::string text;
    if (opt_.kind == "bell-dag") {
      text = SerializeDag(BellDag(opt_.lambda));
    } else if (opt_.kind == "singlet") {
      text = SerializeBehavior(
          SingletBehavior(angles[0], angles[1], angles[2], angles[3]));
    } else if (opt_.kind == "pr-box") {
      text = SerializeBehavior(PrBox());
    } else if (opt_.kind == "random-lhv") {
      text = SerializeBehavior(
          BehaviorFromLhv(RandomLhvModel(opt_.seed, opt_.lambda)));
    } else {
      text = SerializeJointTable(
          RandomCompatible(LoadDagFile(opt_.dag_path), opt_.seed));
    }
    if (opt_.out_path.empty()) {
      out_ << text;
    } else {
      std::ofstream file(opt_.out_path, std::ios::binary);
      file << text;
      if (!file) throw std::runtime_error("cannot write '" + opt_.out_path + "'");
    }
    return kExitPositive;
  }

  int Emit(const AuditReport& report) {
    out_ << (opt_.csv ? FormatAuditCsv(report) : FormatAuditTable(report));
    return Verdict(report.pass());
  }

  Options opt_;
  bool seed_given_ = false;

 private:
  std::ostream& out_;
};

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Commands cmd(out);
  Options& o = cmd.opt_;
  CLI::App app{"Causal-network, separation and Bell-scenario analyses"};
  app.name("causalnet");
  app.require_subcommand(1);

  auto add_eps = [&](CLI::App* s) {
    s->add_option("--eps", o.eps, "Absolute tolerance")->capture_default_str();
  };
  auto add_csv = [&](CLI::App* s) {
    s->add_flag("--csv", o.csv, "Emit comma-separated rows");
  };
  auto add_query = [&](CLI::App* s) {
    s->add_option("--x", o.x, "Comma-separated node list")->required();
    s->add_option("--y", o.y, "Comma-separated node list")->required();
    s->add_option("--z", o.z, "Comma-separated conditioning set (\"\" = empty)");
  };

  std::map<CLI::App*, std::function<int()>> handlers;

  for (bool quantum : {false, true}) {
    auto* s = app.add_subcommand(quantum ? "qsep" : "dsep",
                                 quantum ? "q-separation query"
                                         : "d-separation query");
    s->add_option("dag", o.dag_path, "DAG file")->required();
    add_query(s);
    add_eps(s);
    add_csv(s);
    handlers[s] = [&cmd, quantum] { return cmd.Separation(quantum); };
  }
  {
    auto* s = app.add_subcommand("compare", "d- vs q-separation on all queries");
    s->add_option("dag", o.dag_path, "DAG file")->required();
    add_csv(s);
    handlers[s] = [&cmd] { return cmd.Compare(); };
  }
  for (const char* verb : {"compat", "markov", "complete"}) {
    auto* s = app.add_subcommand(verb, std::string(verb) == "compat"
                                           ? "graph compatibility audit"
                                       : std::string(verb) == "markov"
                                           ? "causal Markov condition audit"
                                           : "causal completeness audit");
    s->add_option("dag", o.dag_path, "DAG file")->required();
    s->add_option("dist", o.dist_path, "Distribution file")->required();
    add_eps(s);
    add_csv(s);
    std::string which = verb;
    handlers[s] = [&cmd, which] { return cmd.LocalAudit(which); };
  }
  {
    auto* s = app.add_subcommand("rpcc", "common-cause principle check");
    s->add_option("dag", o.dag_path, "DAG file")->required();
    s->add_option("dist", o.dist_path, "Distribution file")->required();
    s->add_option("--x", o.x, "First node")->required();
    s->add_option("--y", o.y, "Second node")->required();
    add_eps(s);
    add_csv(s);
    handlers[s] = [&cmd] { return cmd.Rpcc(); };
  }
  {
    auto* s = app.add_subcommand("graphoid", "graphoid axiom audit");
    s->add_option("dist", o.dist_path, "Distribution file")->required();
    s->add_option("--trials", o.trials, "Sampled instances")->capture_default_str();
    s->add_option("--seed", o.seed, "Random seed")->required();
    add_eps(s);
    add_csv(s);
    handlers[s] = [&cmd] { return cmd.Graphoid(); };
  }
  {
    auto* s = app.add_subcommand("bell-chsh", "CHSH values of a behavior");
    s->add_option("behavior", o.behavior_path, "Behavior file")->required();
    s->add_option("--variant", o.variant, "Single variant 0..7");
    add_eps(s);
    add_csv(s);
    handlers[s] = [&cmd] { return cmd.BellChsh(); };
  }
  {
    auto* s = app.add_subcommand("bell-member", "local polytope membership");
    s->add_option("behavior", o.behavior_path, "Behavior file")->required();
    add_eps(s);
    add_csv(s);
    handlers[s] = [&cmd] { return cmd.BellMember(); };
  }
  for (bool qcc : {false, true}) {
    auto* s = app.add_subcommand(qcc ? "bell-qcc" : "bell-nosig",
                                 qcc ? "quantum causality condition audit"
                                     : "no-signalling audit");
    s->add_option("behavior", o.behavior_path, "Behavior file")->required();
    add_eps(s);
    add_csv(s);
    handlers[s] = [&cmd, qcc] { return cmd.BellAudit(qcc); };
  }
  {
    auto* s = app.add_subcommand("gen", "write a canonical input file");
    s->add_option("kind", o.kind,
                  "bell-dag | singlet | pr-box | random-lhv | "
                  "random-compatible")
        ->required();
    s->add_option("dag", o.dag_path, "DAG file (random-compatible)");
    auto* seed = s->add_option("--seed", o.seed, "Random seed");
    s->add_option("--angles", o.angles, "theta0,theta1,phi0,phi1 (radians)");
    s->add_option("--lambda", o.lambda, "Hidden-variable cardinality")
        ->capture_default_str();
    s->add_option("--out", o.out_path, "Output path (default stdout)");
    handlers[s] = [&cmd, seed] {
      cmd.seed_given_ = seed->count() > 0;
      return cmd.Gen();
    };
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPositive;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPositive;
  } catch (const CLI::ParseError& e) {
    err << "causalnet: " << e.what() << "\n";
    return kExitUsage;
  }

  for (auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    try {
      return handler();
    } catch (const UsageError& e) {
      err << "causalnet: " << e.what() << "\n";
    } catch (const std::exception& e) {
      err << "causalnet: error: " << e.what() << "\n";
    }
    return kExitUsage;
  }
  err << "causalnet: no command given\n";
  return kExitUsage;
}

}  // namespace causalnet::cli

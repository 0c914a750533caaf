#include "pirmax/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pirmax/checks.hpp"
#include "pirmax/codec.hpp"
#include "pirmax/distance.hpp"
#include "pirmax/entropy.hpp"
#include "pirmax/tree.hpp"

namespace pirmax {

using nlohmann::json;

const char* status_name(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkip: return "SKIP";
  }
  return "?";
}

bool Report::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::kFail; });
}

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {"correctness", "smoothness",   "universality", "rate",
                                                 "properties",  "transitivity", "tree",         "converse",
                                                 "min-distance", "corruption"};
  return names;
}

const std::vector<std::string>& default_verify_checks() { return verify_check_names(); }

namespace {

std::string set_label(const std::vector<std::uint32_t>& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + LinearCode::symbol_label(set[i]);
  return s + "}";
}

std::string tree_label(const TreeSpec& t) {
  std::string s = "perm=(";
  for (std::size_t i = 0; i < t.perm.size(); ++i) s += (i ? "," : "") + LinearCode::source_label(t.perm[i]);
  s += ") root=" + LinearCode::symbol_label(t.root) + " choices=[";
  for (std::size_t i = 0; i < t.choices.size(); ++i) s += (i ? "," : "") + std::to_string(t.choices[i]);
  return s + "]";
}

json tree_json(const TreeSpec& t) { return {{"perm", t.perm}, {"root", t.root}, {"choices", t.choices}}; }

Status verdict(bool ok) { return ok ? Status::kPass : Status::kFail; }

class Verifier {
 public:
  Verifier(const LinearCode& code, const VerifyOptions& options) : code_(code), opt_(options) {}

  CheckResult run(const std::string& name) {
    CheckResult r;
    r.name = name;
    if (name == "correctness") correctness(r);
    else if (name == "smoothness") smoothness(r);
    else if (name == "universality") universality(r);
    else if (name == "rate") rate(r);
    else if (name == "properties") properties(r);
    else if (name == "transitivity") transitivity(r);
    else if (name == "tree") tree(r);
    else if (name == "converse") converse(r);
    else if (name == "min-distance") distance(r);
    else if (name == "corruption") corruption(r);
    else throw std::invalid_argument("unknown check '" + name + "'");
    return r;
  }

 private:
  void correctness(CheckResult& r) {
    const auto rep = check_correctness(code_, opt_.exec);
    std::size_t sets = 0;
    for (const auto& s : code_.supersets()) sets += s.sets.size();
    r.status = verdict(rep.pass);
    json v = json::array();
    for (const auto& x : rep.violations) {
      v.push_back({{"source", x.source}, {"set_index", x.set_index}, {"residual_bits", x.residual_bits}});
    }
    r.details = {{"decoding_sets", sets}, {"violations", v}};
    if (rep.pass) {
      r.summary = "H(W_k|S) = 0 for all " + std::to_string(sets) + " decoding sets";
    } else {
      const auto& x = rep.violations.front();
      r.summary = std::to_string(rep.violations.size()) + " violation(s); first: H(" + LinearCode::source_label(x.source) +
                  " | " + set_label(code_.superset(x.source).sets[x.set_index]) + ") = " +
                  std::to_string(x.residual_bits);
    }
  }

  void smoothness(CheckResult& r) {
    const auto rep = check_smoothness(code_);
    r.status = verdict(rep.pass);
    r.details = {{"membership", rep.membership}};
    if (rep.pass) {
      r.summary = "every symbol lies in equally many sets of each superset";
    } else {
      const auto [k, m] = *rep.witness;
      r.details["witness"] = {{"source", k}, {"symbol", m}};
      r.summary = LinearCode::source_label(k) + ": " + LinearCode::symbol_label(m) + " is in " +
                  std::to_string(rep.membership[k][m]) + " set(s), X_1 in " + std::to_string(rep.membership[k][0]);
    }
  }

  void universality(CheckResult& r) {
    const auto rep = check_universality(code_);
    r.status = verdict(rep.pass);
    r.details = json::object();
    if (rep.pass) {
      r.summary = "every symbol lies in some set of every superset";
    } else {
      const auto [k, m] = *rep.witness;
      r.details["witness"] = {{"source", k}, {"symbol", m}};
      r.summary = LinearCode::symbol_label(m) + " is in no decoding set of " + LinearCode::source_label(k);
    }
  }

  void rate(CheckResult& r) {
    const auto [rs, rc] = symbol_and_code_rate(code_.params());
    const Rational cap = capacity_uldc(code_.locality(), code_.sources());
    r.status = verdict(rs == cap);
    r.details = {{"symbol_rate", rs.str()}, {"code_rate", rc.str()}, {"capacity", cap.str()}};
    r.summary = "symbol rate " + rs.str() + (rs == cap ? " = " : " != ") + "capacity " + cap.str() + ", code rate " +
                rc.str();
  }

  void properties(CheckResult& r) {
    const auto rep = check_capacity_properties(code_, opt_.exec);
    r.status = verdict(rep.all_pass());
    json list = json::array();
    std::string failed;
    std::string first;
    for (const auto& v : rep.verdicts) {
      json jv = {{"id", property_id(v.property)}, {"name", property_name(v.property)}, {"pass", v.pass}};
      if (v.witness) {
        const auto& w = *v.witness;
        jv["witness"] = {{"source", w.source}, {"i1", w.i1}, {"i2", w.i2}, {"detail", w.detail},
                         {"other_source", w.other_source ? json(*w.other_source) : json(nullptr)},
                         {"set_index", w.set_index ? json(*w.set_index) : json(nullptr)}};
        failed += (failed.empty() ? "" : " ") + std::string(property_id(v.property));
        if (first.empty()) {
          first = std::string(property_id(v.property)) + " at " + LinearCode::source_label(w.source);
          if (w.set_index) first += " set " + set_label(code_.superset(w.source).sets[*w.set_index]);
          if (w.other_source) first += " k'=" + LinearCode::source_label(*w.other_source);
          first += ": " + w.detail;
        }
      }
      list.push_back(std::move(jv));
    }
    r.details = {{"universal", rep.universal}, {"properties", list}};
    if (rep.all_pass()) {
      r.summary = "P1 P2a P2b P2c P3 hold";
    } else if (failed.empty()) {
      r.summary = "precondition failed: code is not universal";
    } else {
      r.summary = "failed " + failed + "; " + first + (rep.universal ? "" : " (code is not universal)");
    }
  }

  // Same information is an equivalence relation for every message subset.
  void transitivity(CheckResult& r) {
    const EntropyOracle oracle(code_);
    const auto m = static_cast<std::uint32_t>(code_.length());
    const std::uint32_t kk = code_.sources();
    if (kk > 16 || (std::uint64_t{m} * m << kk) > 4000000) {
      r.status = Status::kSkip;
      r.summary = "skipped: M^2 2^K pair tests exceed the exhaustive limit";
      r.details = json::object();
      return;
    }
    const std::uint64_t subsets = std::uint64_t{1} << kk;
    const auto same = map_indices<std::vector<char>>(subsets - 1, opt_.exec, [&](std::size_t s) {
      std::vector<char> t(std::size_t{m} * m);
      for (std::uint32_t a = 0; a < m; ++a) {
        for (std::uint32_t b = 0; b < m; ++b) t[a * m + b] = same_information(oracle, a, b, SourceSet(s + 1));
      }
      return t;
    });
    std::uint64_t triples = 0;
    for (std::uint64_t s = 0; s + 1 < subsets; ++s) {
      const auto& t = same[s];
      for (std::uint32_t a = 0; a < m; ++a) {
        for (std::uint32_t b = 0; b < m; ++b) {
          if (!t[a * m + b]) continue;
          for (std::uint32_t c = 0; c < m; ++c) {
            if (!t[b * m + c]) continue;
            ++triples;
            if (!t[a * m + c]) {
              r.status = Status::kFail;
              r.summary = LinearCode::symbol_label(a) + "~" + LinearCode::symbol_label(b) + " and " +
                          LinearCode::symbol_label(b) + "~" + LinearCode::symbol_label(c) + " about " +
                          SourceSet(s + 1).label() + " but not " + LinearCode::symbol_label(a) + "~" +
                          LinearCode::symbol_label(c);
              r.details = {{"witness", {{"i1", a}, {"i2", b}, {"i3", c}, {"sources", SourceSet(s + 1).members()}}}};
              return;
            }
          }
        }
      }
    }
    r.status = Status::kPass;
    r.summary = "same-information is transitive over " + std::to_string(triples) + " chained triples";
    r.details = {{"chained_triples", triples}};
  }

  const TreeEnumeration& trees() {
    if (!trees_) trees_ = enumerate_trees(code_, opt_.tree_budget, opt_.tree_samples, opt_.seed);
    return *trees_;
  }

  std::string tree_scope() {
    const auto& t = trees();
    return std::to_string(t.trees.size()) + (t.exhaustive ? " trees (all)" : " sampled trees");
  }

  void tree(CheckResult& r) {
    const auto& t = trees();
    const auto reports = map_indices<LeafReport>(t.trees.size(), opt_.exec, [&](std::size_t i) {
      const auto& s = t.trees[i];
      return leaf_distinctness(build_nary_tree(code_, s.perm, s.root, TreeChooser::explicit_choices(s.choices)));
    });
    r.details = {{"trees", t.trees.size()}, {"exhaustive", t.exhaustive}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (reports[i].distinct) continue;
      r.status = Status::kFail;
      r.details["witness"] = {{"tree", tree_json(t.trees[i])}, {"duplicate", *reports[i].duplicate}};
      r.summary = tree_scope() + "; " + tree_label(t.trees[i]) + " repeats " +
                  LinearCode::symbol_label(*reports[i].duplicate) + " among its leaves";
      return;
    }
    r.status = Status::kPass;
    r.summary = tree_scope() + ", leaves distinct in every tree";
  }

  void converse(CheckResult& r) {
    const auto& t = trees();
    const auto reports = audit_trees(code_, t.trees, opt_.exec);
    r.details = {{"trees", t.trees.size()}, {"exhaustive", t.exhaustive}};
    std::optional<std::size_t> loose;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (!reports[i].tight()) {
        loose = i;
        break;
      }
    }
    const std::size_t show = loose.value_or(0);
    if (!reports.empty()) {
      const auto& rep = reports[show];
      json levels = json::array();
      for (const auto& l : rep.levels) {
        levels.push_back({{"depth", l.depth},
                          {"source", l.source},
                          {"conditioned", l.conditioned},
                          {"lhs", l.lhs},
                          {"rhs", l.rhs},
                          {"slack", l.slack},
                          {"subadditivity_gap", l.subadditivity_gap},
                          {"interference_gap", l.interference_gap},
                          {"decoding_residual", l.decoding_residual}});
      }
      r.details["tree"] = tree_json(t.trees[show]);
      r.details["levels"] = levels;
      r.details["leaf_total"] = rep.leaf_total;
      r.details["bound"] = rep.bound;
      r.details["final_slack"] = rep.final_slack;
      r.details["total_slack"] = rep.total_slack;
    }
    if (!loose) {
      r.status = Status::kPass;
      const auto& rep = reports.front();
      r.summary = tree_scope() + ": zero slack at every level, " + std::to_string(rep.leaf_total) + " = " +
                  std::to_string(rep.bound);
      return;
    }
    const auto& rep = reports[*loose];
    r.status = Status::kFail;
    std::string where;
    for (const auto& l : rep.levels) {
      if (l.slack != 0) {
        where = "depth " + std::to_string(l.depth) + " (" + LinearCode::source_label(l.source) + ") slack " +
                std::to_string(l.slack) + " [subadditivity " + std::to_string(l.subadditivity_gap) + ", interference " +
                std::to_string(l.interference_gap) + "]";
        break;
      }
    }
    if (where.empty()) where = "final term H(root|W) = " + std::to_string(rep.final_slack);
    r.summary = tree_scope() + ": total slack " + std::to_string(rep.total_slack) + " (" + std::to_string(rep.leaf_total) +
                " - " + std::to_string(rep.bound) + "); " + tree_label(t.trees[*loose]) + " first loose at " + where;
  }

  bool too_large(CheckResult& r) {
    if (code_.length() <= opt_.exact_limit) return false;
    r.status = Status::kSkip;
    r.summary = "skipped: M=" + std::to_string(code_.length()) + " exceeds the exhaustive limit " +
                std::to_string(opt_.exact_limit);
    r.details = json::object();
    return true;
  }

  void distance(CheckResult& r) {
    if (too_large(r)) return;
    DistanceOptions o;
    o.exact_limit = opt_.exact_limit;
    o.exec = opt_.exec;
    const auto rep = min_distance(code_, o);
    const std::size_t m = code_.length();
    const std::size_t n = code_.locality();
    const bool ok = rep.distance && *rep.distance * n >= m;
    r.status = verdict(ok);
    std::vector<std::string> lost;
    for (auto k : rep.lost) lost.push_back(LinearCode::source_label(k));
    r.details = {{"distance", rep.distance ? json(*rep.distance) : json(nullptr)},
                 {"erasure", rep.erasure},
                 {"lost", rep.lost},
                 {"M_over_N", Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)).str()}};
    if (!rep.distance) {
      r.summary = "no erasure loses a message";
      return;
    }
    std::string lost_s;
    for (const auto& s : lost) lost_s += (lost_s.empty() ? "" : ",") + s;
    r.summary = "d=" + std::to_string(*rep.distance) + (ok ? " >= " : " < ") + "M/N=" +
                Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)).str() + "; erasing " +
                set_label(rep.erasure) + " loses " + lost_s;
  }

  void corruption(CheckResult& r) {
    if (too_large(r)) return;
    const auto m = static_cast<std::int64_t>(code_.length());
    const auto n = static_cast<std::int64_t>(code_.locality());
    const Rational delta = opt_.delta.value_or(Rational((m + n - 1) / n - 1, m));
    CorruptionOptions o;
    o.exact_limit = opt_.exact_limit;
    o.exec = opt_.exec;
    const auto rep = corruption_trial(code_, delta, o);
    const bool ok = !(rep.worst < rep.guarantee);
    r.status = verdict(ok);
    json per = json::array();
    for (const auto& p : rep.min_success) per.push_back(p.str());
    r.details = {{"delta", delta.str()},
                 {"corrupted", rep.corrupted},
                 {"patterns", rep.patterns},
                 {"min_success", per},
                 {"worst", rep.worst.str()},
                 {"worst_source", rep.worst_source},
                 {"worst_pattern", rep.worst_pattern},
                 {"clean_set_always", rep.clean_set_always},
                 {"guarantee", rep.guarantee.str()},
                 {"warning", rep.warning ? json(*rep.warning) : json(nullptr)}};
    r.summary = "delta=" + delta.str() + " (" + std::to_string(rep.corrupted) + " of " + std::to_string(m) +
                " corrupted, " + std::to_string(rep.patterns) + " patterns): min success " + rep.worst.str() +
                (ok ? " >= " : " < ") + "1 - delta N = " + rep.guarantee.str() + " at " +
                LinearCode::source_label(rep.worst_source) + " with " + set_label(rep.worst_pattern) + " corrupted" +
                (rep.warning ? "; warning: " + *rep.warning : "");
  }

  const LinearCode& code_;
  const VerifyOptions& opt_;
  std::optional<TreeEnumeration> trees_;
};

}  // namespace

Report run_verify(const LinearCode& code, const VerifyOptions& options) {
  std::vector<std::string> names = options.checks.empty() ? default_verify_checks() : options.checks;
  for (const auto& n : names) {
    if (std::find(verify_check_names().begin(), verify_check_names().end(), n) == verify_check_names().end()) {
      throw std::invalid_argument("unknown check '" + n + "'");
    }
  }
  Report report{"verify", code.name(), content_hash_hex(code), code.params(), {}};
  Verifier v(code, options);
  // Fixed execution order regardless of how the list was given.
  for (const auto& n : verify_check_names()) {
    if (std::find(names.begin(), names.end(), n) != names.end()) report.checks.push_back(v.run(n));
  }
  return report;
}

Report run_pir_audit(const PirScheme& scheme) {
  Report report{"pir-audit", scheme.code.name(), content_hash_hex(scheme.code), scheme.code.params(), {}};
  const auto label = [&](std::uint32_t n, std::uint32_t q) {
    return "database " + std::to_string(n + 1) + " query " + std::to_string(q) + " (" +
           LinearCode::symbol_label(scheme.databases[n][q]) + ")";
  };
  const auto tables = [](const AuditResult& a) {
    json t = json::array();
    for (const auto& per_k : a.table) {
      json row = json::array();
      for (const auto& dist : per_k) {
        json d = json::array();
        for (const auto& p : dist) d.push_back(p.str());
        row.push_back(d);
      }
      t.push_back(row);
    }
    return t;
  };
  {
    const auto a = privacy_audit(scheme);
    CheckResult r{"privacy", verdict(a.pass), "", {{"uniform", a.uniform}, {"table", tables(a)}}};
    if (a.pass) {
      r.summary = "query distribution of every database is identical for all messages" +
                  std::string(a.uniform ? " (uniform)" : "");
    } else {
      const auto& w = *a.witness;
      r.details["witness"] = {{"database", w.database}, {"query", w.query}, {"source", w.source},
                              {"other_source", w.other_source}};
      r.summary = label(w.database, w.query) + ": Prob " + a.table[w.database][w.source][w.query].str() + " under " +
                  LinearCode::source_label(w.source) + " vs " + a.table[w.database][w.other_source][w.query].str() +
                  " under " + LinearCode::source_label(w.other_source);
    }
    report.checks.push_back(std::move(r));
  }
  {
    const auto a = deniability_audit(scheme);
    CheckResult r{"deniability", verdict(a.pass), "", json::object()};
    if (a.pass) {
      r.summary = "every answer of every database can serve every message";
    } else {
      const auto& w = *a.witness;
      r.details["witness"] = {{"database", w.database}, {"query", w.query}, {"source", w.source}};
      r.summary = label(w.database, w.query) + " never serves " + LinearCode::source_label(w.source);
    }
    report.checks.push_back(std::move(r));
  }
  {
    const auto c = cost_metrics(scheme);
    const std::uint32_t n = scheme.code.locality();
    const std::uint32_t k = scheme.code.sources();
    const Rational cap = pir_capacity(n, k);
    const double min_up = n >= 2 ? min_upload_bits(n, k) : 0.0;
    const bool ok = c.rate == cap && std::abs(c.max_upload_bits - min_up) < 1e-12;
    std::ostringstream up;
    up.precision(6);
    up << c.max_upload_bits;
    std::ostringstream mu;
    mu.precision(6);
    mu << min_up;
    CheckResult r{"costs", verdict(ok),
                  "upload " + up.str() + " bits/db (min " + mu.str() + "), download " +
                      std::to_string(c.max_download_bits) + " bits/db, rate " + c.rate.str() +
                      (c.rate == cap ? " = " : " != ") + "capacity " + cap.str(),
                  {{"upload_bits", c.upload_bits},
                   {"max_upload_bits", c.max_upload_bits},
                   {"min_upload_bits", min_up},
                   {"max_download_bits", c.max_download_bits},
                   {"rate", c.rate.str()},
                   {"capacity", cap.str()}}};
    report.checks.push_back(std::move(r));
  }
  return report;
}

std::string render_text(const Report& report) {
  std::ostringstream os;
  os << report.kind << " " << report.subject << " (N=" << report.params.locality << " K=" << report.params.sources
     << " M=" << report.params.length << " Lw=" << report.params.source_bits << " Lx=" << report.params.symbol_bits
     << ") sha256 " << report.content_hash << "\n";
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  for (const auto& c : report.checks) {
    os << status_name(c.status) << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << c.summary << "\n";
  }
  os << "verdict: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

json render_json(const Report& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"summary", c.summary}, {"details", c.details}});
  }
  const auto& p = report.params;
  return {{"version", kFormatVersion},
          {"kind", "report"},
          {"report", report.kind},
          {"code",
           {{"name", report.subject},
            {"content_hash", report.content_hash},
            {"params", {{"N", p.locality}, {"K", p.sources}, {"M", p.length}, {"Lw", p.source_bits}, {"Lx", p.symbol_bits}}}}},
          {"checks", checks},
          {"verdict", report.pass() ? "PASS" : "FAIL"}};
}

std::string render_report(const Report& report, const std::string& format) {
  if (format == "text") return render_text(report);
  if (format == "json") return render_json(report).dump(1) + "\n";
  throw std::invalid_argument("unknown format '" + format + "' (expected text or json)");
}

}  // namespace pirmax

#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pirmax/capacity.hpp"
#include "pirmax/codec.hpp"
#include "pirmax/construct.hpp"
#include "pirmax/fixtures.hpp"
#include "pirmax/net/client.hpp"
#include "pirmax/net/server.hpp"
#include "pirmax/pir.hpp"
#include "pirmax/report.hpp"

namespace pirmax::cli {

namespace {

/// A failure that maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

nlohmann::json load_doc(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

LinearCode load_code(const std::string& path) {
  const auto doc = load_doc(path);
  try {
    return code_from_json(doc.value("kind", "code") == "scheme" ? doc.at("code") : doc);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    try {
      write_text_file(out_path, text);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
}

int cmd_capacity(std::uint32_t n, std::uint32_t k, std::ostream& out) {
  out << "N=" << n << " K=" << k << "\n";
  out << "capacity_uldc   " << capacity_uldc(n, k) << "\n";
  out << "min_length      " << min_length(n, k) << "\n";
  out << "pir_capacity    " << pir_capacity(n, k) << "\n";
  if (n >= 2) {
    out << "min_upload_bits " << number(min_upload_bits(n, k)) << "\n";
  } else {
    out << "min_upload_bits n/a (needs N >= 2)\n";
  }
  return kExitPass;
}

int cmd_verify(const std::string& file, const std::string& checks, const std::string& format,
               const std::string& delta, bool serial, std::ostream& out) {
  const LinearCode code = load_code(file);
  VerifyOptions opt;
  opt.checks = split_list(checks);
  opt.exec = serial ? Exec::kSerial : Exec::kParallel;
  if (!delta.empty()) opt.delta = Rational::parse(delta);
  const Report report = run_verify(code, opt);
  out << render_report(report, format);
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_pir_audit(const std::string& file, bool replicated, const std::string& format, const std::string& out_path,
                  std::ostream& out) {
  const auto doc = load_doc(file);
  std::optional<PirScheme> scheme;
  try {
    if (replicated) {
      scheme = replicated_scheme(code_from_json(doc.value("kind", "code") == "scheme" ? doc.at("code") : doc));
    } else {
      scheme = scheme_from_json(doc);
    }
  } catch (const PartitionError& e) {
    const LinearCode code = code_from_json(doc.value("kind", "code") == "scheme" ? doc.at("code") : doc);
    Report report{"pir-audit", code.name(), content_hash_hex(code), code.params(),
                  {CheckResult{"partition", Status::kFail, e.what(), nlohmann::json::object()}}};
    out << render_report(report, format);
    return kExitCheckFailed;
  } catch (const CodeError& e) {
    throw UsageError(file + ": " + e.what());
  }
  if (!out_path.empty()) emit(scheme_to_json(*scheme).dump(1) + "\n", out_path, out);
  const Report report = run_pir_audit(*scheme);
  out << render_report(report, format);
  return report.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_messages(const std::string& file, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  const LinearCode code = load_code(file);
  std::mt19937_64 rng(seed);
  BitVector bits(code.message_bits());
  for (std::size_t i = 0; i < bits.size(); ++i) bits.set(i, (rng() >> 63) != 0);
  if (out_path.empty()) {
    out << bits.to_hex() << "\n";
  } else {
    try {
      write_message_file(out_path, bits);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  return kExitPass;
}

int cmd_serve(const std::string& file, std::uint32_t db, const std::string& messages, const std::string& listen,
              std::ostream& out) {
  const auto scheme = scheme_from_json(load_doc(file));
  if (db < 1 || db > scheme.servers()) {
    throw UsageError("--db must be in [1, " + std::to_string(scheme.servers()) + "]");
  }
  BitVector msg;
  try {
    msg = read_message_file(messages, scheme.code.message_bits());
  } catch (const std::exception& e) {
    throw UsageError(messages + ": " + e.what());
  }
  net::Endpoint ep;
  try {
    ep = net::parse_endpoint(listen);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  auto server = net::serve_database(scheme, db - 1, msg, ep);
  out << "database " << db << " of " << scheme.servers() << " (" << scheme.queries(db - 1) << " answers) listening on "
      << server->endpoint().str() << std::endl;
  server->wait();
  return kExitPass;
}

int cmd_retrieve(const std::string& file, std::uint32_t theta, const std::string& endpoints, std::uint64_t seed,
                 std::ostream& out) {
  const auto scheme = scheme_from_json(load_doc(file));
  if (theta < 1 || theta > scheme.code.sources()) {
    throw UsageError("--theta must be in [1, " + std::to_string(scheme.code.sources()) + "]");
  }
  std::vector<net::Endpoint> eps;
  try {
    for (const auto& e : split_list(endpoints)) eps.push_back(net::parse_endpoint(e));
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (eps.size() != scheme.servers()) {
    throw UsageError("expected " + std::to_string(scheme.servers()) + " endpoints, got " + std::to_string(eps.size()));
  }
  std::mt19937_64 rng(seed);
  net::Retrieval r;
  try {
    r = net::retrieve(scheme, theta - 1, eps, rng);
  } catch (const std::exception& e) {
    throw UsageError(std::string("retrieval failed: ") + e.what());
  }
  const auto& t = r.transcript;
  out << "W_" << theta << " = " << r.message.to_hex() << " (" << r.message.size() << " bits)\n";
  for (std::size_t n = 0; n < eps.size(); ++n) {
    out << "database " << n + 1 << ": query " << t.queries[n] << ", upload " << t.upload_wire_bytes[n]
        << " wire bytes / " << t.upload_bits[n] << " bits (" << number(t.upload_info_bits[n])
        << " information bits), download " << t.download_bits[n] << " bits\n";
  }
  return kExitPass;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity-achieving locally decodable codes and upload-optimal PIR_max", "pirmax"};
  app.require_subcommand(1);

  std::uint32_t n = 0;
  std::uint32_t k = 0;
  auto* capacity = app.add_subcommand("capacity", "Capacity, minimum length and upload cost for (N, K)");
  capacity->add_option("--n", n, "Locality N (number of databases)")->required()->check(CLI::PositiveNumber);
  capacity->add_option("--k", k, "Number of source symbols K")->required()->check(CLI::PositiveNumber);

  std::string out_path;
  auto* build = app.add_subcommand("build", "Construct the length-N^K smooth code");
  build->add_option("--n", n, "Locality N >= 2")->required();
  build->add_option("--k", k, "Number of source symbols K >= 1")->required();
  build->add_option("--out", out_path, "Output file (default stdout)");

  std::string name;
  auto* fixture = app.add_subcommand("fixture", "Write a transcribed example code");
  fixture->add_option("--name", name, "One of: fig1, fig2, intro_nonsmooth, eq28, fig4")->required();
  fixture->add_option("--out", out_path, "Output file (default stdout)");

  std::string file;
  std::string checks;
  std::string format = "text";
  std::string delta;
  bool serial = false;
  auto* verify = app.add_subcommand("verify", "Run the check battery on a code file");
  verify->add_option("file", file, "Code or scheme file")->required();
  auto* checks_opt = verify->add_option("--checks", checks, "Comma-separated subset of the checks");
  verify->add_option("--format", format, "text or json");
  verify->add_option("--delta", delta, "Corruption fraction p/q");
  verify->add_flag("--serial", serial, "Use the serial reference kernels");

  bool replicated = false;
  auto* audit = app.add_subcommand("pir-audit", "Privacy, deniability and costs of the scheme built from a code");
  audit->add_option("file", file, "Code or scheme file")->required();
  audit->add_flag("--replicated", replicated, "Store every symbol on every database");
  audit->add_option("--format", format, "text or json");
  audit->add_option("--out", out_path, "Also write the scheme document here");

  std::uint64_t seed = 1;
  auto* messages = app.add_subcommand("messages", "Write a random message block for a code");
  messages->add_option("file", file, "Code or scheme file")->required();
  messages->add_option("--seed", seed, "Generator seed");
  messages->add_option("--out", out_path, "Raw bit file (default: hex on stdout)");

  std::uint32_t db = 0;
  std::string msg_path;
  std::string listen;
  auto* serve = app.add_subcommand("serve", "Serve one database over TCP");
  serve->add_option("file", file, "Code or scheme file")->required();
  serve->add_option("--db", db, "Database number, 1-based")->required();
  serve->add_option("--messages", msg_path, "Raw message file of K*Lw bits")->required();
  serve->add_option("--listen", listen, "host:port")->required();

  std::uint32_t theta = 0;
  std::string endpoints;
  auto* retrieve = app.add_subcommand("retrieve", "Privately retrieve one message from running databases");
  retrieve->add_option("file", file, "Code or scheme file")->required();
  retrieve->add_option("--theta", theta, "Desired message, 1-based")->required();
  retrieve->add_option("--endpoints", endpoints, "Comma-separated host:port, database order")->required();
  retrieve->add_option("--seed", seed, "Query generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  }

  try {
    if (capacity->parsed()) return cmd_capacity(n, k, out);
    if (build->parsed()) {
      emit(render_code_file(build_sldc(n, k)), out_path, out);
      return kExitPass;
    }
    if (fixture->parsed()) {
      emit(render_code_file(load_fixture(name)), out_path, out);
      return kExitPass;
    }
    if (verify->parsed()) {
      if (checks_opt->count() > 0 && split_list(checks).empty()) throw UsageError("--checks is empty");
      if (format != "text" && format != "json") throw UsageError("unknown format '" + format + "'");
      return cmd_verify(file, checks, format, delta, serial, out);
    }
    if (audit->parsed()) {
      if (format != "text" && format != "json") throw UsageError("unknown format '" + format + "'");
      return cmd_pir_audit(file, replicated, format, out_path, out);
    }
    if (messages->parsed()) return cmd_messages(file, seed, out_path, out);
    if (serve->parsed()) return cmd_serve(file, db, msg_path, listen, out);
    if (retrieve->parsed()) return cmd_retrieve(file, theta, endpoints, seed, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pirmax::cli

#include "pirmax/codec.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "pirmax/construct.hpp"

namespace pirmax {

using nlohmann::json;

Digest sha256(std::string_view bytes) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  return out;
}

std::string to_hex(const Digest& d) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (auto b : d) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

std::string canonical_serialization(const json& doc) {
  json copy = doc;
  copy.erase("content_hash");
  return copy.dump();
}

namespace {

json body(const LinearCode& code) {
  const auto& p = code.params();
  json doc;
  doc["version"] = kFormatVersion;
  doc["kind"] = "code";
  doc["name"] = code.name();
  doc["layout"] = code.layout() == CodeLayout::kSldc ? "sldc" : "generic";
  doc["params"] = {{"N", p.locality}, {"K", p.sources}, {"M", p.length}, {"Lw", p.source_bits}, {"Lx", p.symbol_bits}};
  doc["column_order"] = code.column_order();
  json symbols = json::array();
  for (std::size_t m = 0; m < code.length(); ++m) {
    const auto& info = code.symbols()[m];
    json rows = json::array();
    const BitMatrix& stored = code.stored_generator(m);
    for (std::size_t r = 0; r < stored.rows(); ++r) rows.push_back(stored.row(r).to_hex());
    symbols.push_back({{"index", info.digits},
                       {"group", info.group ? json(*info.group) : json(nullptr)},
                       {"rows", rows},
                       {"dropped", code.dropped_rows(m)}});
  }
  doc["symbols"] = std::move(symbols);
  json supersets = json::array();
  for (const auto& ss : code.supersets()) supersets.push_back(ss.sets);
  doc["supersets"] = std::move(supersets);
  return doc;
}

}  // namespace

json code_to_json(const LinearCode& code) {
  json doc = body(code);
  doc["content_hash"] = to_hex(sha256(canonical_serialization(doc)));
  return doc;
}

Digest content_hash(const LinearCode& code) { return sha256(canonical_serialization(body(code))); }

std::string content_hash_hex(const LinearCode& code) { return to_hex(content_hash(code)); }

LinearCode code_from_json(const json& doc) {
  try {
    if (doc.at("version").get<int>() != kFormatVersion) {
      throw CodeError("unsupported code file version " + doc.at("version").dump());
    }
    if (doc.contains("content_hash")) {
      const auto expected = doc.at("content_hash").get<std::string>();
      const auto actual = to_hex(sha256(canonical_serialization(doc)));
      if (expected != actual) throw CodeError("content_hash mismatch: file says " + expected + ", content hashes to " + actual);
    }
    const auto& jp = doc.at("params");
    LinearCode::Parts parts;
    parts.name = doc.value("name", "");
    parts.params = CodeParams{jp.at("N").get<std::uint32_t>(), jp.at("K").get<std::uint32_t>(), jp.at("M").get<std::uint64_t>(),
                              jp.at("Lw").get<std::uint64_t>(), jp.at("Lx").get<std::uint64_t>()};
    parts.column_order = doc.at("column_order").get<std::string>();
    const std::string layout = doc.value("layout", "generic");
    if (layout != "sldc" && layout != "generic") throw CodeError("unknown layout '" + layout + "'");
    const std::size_t cols = static_cast<std::size_t>(parts.params.sources) * parts.params.source_bits;
    for (const auto& js : doc.at("symbols")) {
      SymbolInfo info;
      info.digits = js.at("index").get<std::vector<std::uint32_t>>();
      if (!js.at("group").is_null()) info.group = js.at("group").get<std::uint32_t>();
      const auto rows = js.at("rows").get<std::vector<std::string>>();
      auto dropped = js.value("dropped", std::vector<std::size_t>{});
      const std::size_t total = rows.size() + dropped.size();
      BitMatrix g(0, cols);
      std::size_t next = 0;
      for (std::size_t r = 0; r < total; ++r) {
        if (std::find(dropped.begin(), dropped.end(), r) != dropped.end()) {
          g.append_row(BitVector(cols));
        } else {
          if (next >= rows.size()) throw CodeError("dropped row positions out of range");
          g.append_row(BitVector::from_hex(rows[next++], cols));
        }
      }
      parts.generators.push_back(std::move(g));
      parts.symbols.push_back(std::move(info));
    }
    std::uint32_t k = 0;
    for (const auto& js : doc.at("supersets")) {
      parts.supersets.push_back(DecodingSuperset{k++, js.get<std::vector<DecodingSet>>()});
    }
    LinearCode code = LinearCode::make(std::move(parts));
    if (layout == "sldc") {
      // The structured decoder is only trusted for an exact build_sldc instance.
      const LinearCode ref = build_sldc(code.locality(), code.sources());
      if (ref.generators() != code.generators() || ref.supersets() != code.supersets()) {
        throw CodeError("file claims the sldc layout but differs from build_sldc(" + std::to_string(code.locality()) + "," +
                        std::to_string(code.sources()) + ")");
      }
      LinearCode::Parts p = code.parts();
      p.layout = CodeLayout::kSldc;
      return LinearCode::make(std::move(p));
    }
    return code;
  } catch (const json::exception& e) {
    throw CodeError(std::string("malformed code document: ") + e.what());
  } catch (const DimensionError& e) {
    throw CodeError(std::string("malformed code document: ") + e.what());
  }
}

std::string render_code_file(const LinearCode& code) { return code_to_json(code).dump(1) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

BitVector read_message_file(const std::filesystem::path& path, std::size_t nbits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return BitVector::from_bytes(bytes, nbits);
}

void write_message_file(const std::filesystem::path& path, const BitVector& bits) {
  const auto bytes = bits.to_bytes();
  write_text_file(path, std::string(bytes.begin(), bytes.end()));
}

}  // namespace pirmax

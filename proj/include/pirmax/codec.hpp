#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "pirmax/code.hpp"

namespace pirmax {

inline constexpr int kFormatVersion = 1;

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::string_view bytes);
std::string to_hex(const Digest& d);

/**
 * Code document:
 *
 *   { "version": 1, "kind": "code", "name", "layout": "sldc"|"generic",
 *     "params": {"N","K","M","Lw","Lx"}, "column_order",
 *     "symbols": [{"index": [digits], "group": g|null,
 *                  "rows": [hex, MSB-first, stored rows only], "dropped": [row positions]}],
 *     "supersets": [[[symbol, ...], ...] per source],
 *     "content_hash": sha256 hex of the canonical serialization }
 *
 * The canonical serialization is the compact dump (sorted keys) of the
 * document with "content_hash" removed.
 */
nlohmann::json code_to_json(const LinearCode& code);
LinearCode code_from_json(const nlohmann::json& doc);

/// Compact sorted-key dump of `doc` without its content_hash field.
std::string canonical_serialization(const nlohmann::json& doc);
Digest content_hash(const LinearCode& code);
std::string content_hash_hex(const LinearCode& code);

/// Pretty-printed document; byte-identical for identical codes.
std::string render_code_file(const LinearCode& code);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Message files: raw K * L_w bits, MSB-first, zero padding.
BitVector read_message_file(const std::filesystem::path& path, std::size_t nbits);
void write_message_file(const std::filesystem::path& path, const BitVector& bits);

}  // namespace pirmax

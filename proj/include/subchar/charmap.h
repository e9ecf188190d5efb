// Copyright 2026 The SubChar Tokenizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBCHAR_CHARMAP_H_
#define SUBCHAR_CHARMAP_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace subchar {

// Separation symbol terminating every CJK character encoding.
inline constexpr char32_t kTerminator = U'#';
// Prefix marking a passthrough character that would otherwise be read as
// part of an encoding (ASCII letters and digits, '#', '_', zhuyin).
inline constexpr char32_t kEscape = 0x241B;  // ␛

enum class SchemeKind {
  kPinyin,
  kZhuyin,
  kStroke,
  kWubi,
  kZhengma,
  kCangjie,
  kByte,
  kRandomIndex,
  // Identity encoding: characters are their own symbols. Backs the
  // character and plain sub-word baselines.
  kRaw,
};

std::string_view SchemeKindName(SchemeKind kind);
// Throws ConfigError on an unknown name.
SchemeKind ParseSchemeKind(std::string_view name);
bool IsPronunciationScheme(SchemeKind kind);
// Byte and raw tables are computed rather than loaded from a mapping file.
bool IsComputedScheme(SchemeKind kind);

struct EncodingScheme {
  SchemeKind kind = SchemeKind::kPinyin;
  bool use_index = true;

  // "pinyin", "pinyin-no-index", ...
  std::string Name() const;
  static EncodingScheme FromName(std::string_view name);

  bool operator==(const EncodingScheme&) const = default;
};

// One character's encoding. Serializes as
//   body ⧺ tone digit (pronunciation schemes) ⧺ index digits (if any) ⧺ '#'.
// Passthrough forms carry the literal character in `body` and no terminator.
struct EncodedForm {
  std::string body;
  int tone = 0;   // 1-5 for pronunciation schemes, 0 otherwise
  int index = 0;  // disambiguation index, 0 when absent
  bool terminated = true;

  bool passthrough() const { return !terminated; }
  std::string ToString() const;

  // Splits a serialized form back into its fields. Throws UnknownFormError
  // if the string does not follow the scheme's grammar.
  static EncodedForm Parse(SchemeKind kind, std::string_view form);

  bool operator==(const EncodedForm&) const = default;
};

// Byte-scheme encoding of any character: decimal UTF-8 bytes joined by '_'.
std::string ByteForm(char32_t c);
// Inverse of ByteForm for a terminated form; nullopt if malformed.
std::optional<char32_t> ParseByteForm(std::string_view form);

// Immutable biunique (or, without indices, homophone-collapsing) map between
// CJK characters and encoded forms for one scheme.
class EncodingTable {
 public:
  using Entries = std::vector<std::pair<char32_t, std::string>>;

  // Parses a mapping file: `<char>\t<base-encoding>` per line, '%' comments.
  static EncodingTable FromFile(EncodingScheme scheme,
                                const std::filesystem::path& path);
  static EncodingTable FromStream(EncodingScheme scheme, std::istream& in,
                                  const std::string& source = "<stream>");
  // Base encodings must already be validated; used by tests and generators.
  static EncodingTable FromEntries(EncodingScheme scheme, const Entries& entries);
  // Tables that need no mapping file (byte, raw).
  static EncodingTable Computed(EncodingScheme scheme);

  const EncodingScheme& scheme() const { return scheme_; }
  size_t size() const { return entries_.size(); }
  bool Contains(char32_t c) const { return entries_.count(c) != 0; }

  // Total: table entry, byte fallback for unknown CJK, passthrough otherwise.
  EncodedForm Encode(char32_t c) const;
  // Serialized Encode(c); hot path of the tokenizer.
  void AppendEncoding(char32_t c, std::u32string* out) const;
  std::string EncodeToString(char32_t c) const;

  // Inverse of Encode. Throws UnknownFormError or AmbiguityError.
  char32_t Decode(std::string_view form) const;
  // Characters whose form equals `form` (empty when none).
  std::vector<char32_t> Candidates(std::string_view form) const;

  // Body plus tone, without index or terminator.
  std::optional<std::string> BaseEncoding(char32_t c) const;
  // Other characters with the same base encoding, in codepoint order.
  std::vector<char32_t> HomophonesOf(char32_t c) const;
  // All characters sharing `base`, in codepoint order; empty if unknown.
  const std::vector<char32_t>& Group(std::string_view base) const;
  size_t num_groups() const { return groups_.size(); }

  // True when every character has a distinct form.
  bool injective() const { return injective_; }

  // Characters in codepoint order.
  std::vector<char32_t> Characters() const;
  // (character, base encoding) in codepoint order; mapping-file content.
  Entries BaseEntries() const;
  // Every symbol Encode can emit into a symbol stream, plus the escape.
  std::vector<char32_t> EmitAlphabet() const;

  // Stable digest of scheme, index mode and content.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  struct Entry {
    std::string base;
    std::string form;        // serialized, including '#'
    std::u32string symbols;  // form as a symbol sequence
    int index = 0;
  };

  EncodingTable() = default;
  void Build(const Entries& entries);

  EncodingScheme scheme_;
  std::unordered_map<char32_t, Entry> entries_;
  std::unordered_map<std::string, std::vector<char32_t>> groups_;
  std::unordered_map<std::string, std::vector<char32_t>> reverse_;
  bool injective_ = true;
  std::string fingerprint_;
};

// Validates a base encoding against the scheme's alphabet.
bool IsValidBaseEncoding(SchemeKind kind, std::string_view base);

// Writes `entries` in mapping-file format, preceded by '%' comment lines.
void WriteMapFile(const std::filesystem::path& path,
                  const EncodingTable::Entries& entries,
                  const std::vector<std::string>& comments = {});

// Assigns every character a distinct five-digit index drawn from a seeded
// generator. Characters are processed in codepoint order.
EncodingTable::Entries GenerateRandomIndexMap(std::vector<char32_t> chars,
                                              uint64_t seed);

// ---------------------------------------------------------------------------
// Symbol streams: text encoded character by character.

// True for symbols that start or continue an encoded form in a non-raw
// scheme; passthrough characters in this set are escaped.
bool IsReservedSymbol(char32_t c);

struct EncodedText {
  std::u32string symbols;
  // Index of the source character for every symbol.
  std::vector<uint32_t> source;
  // char_end[i] = symbol offset one past the encoding of character i.
  std::vector<uint32_t> char_end;
};

EncodedText EncodeText(const EncodingTable& table, std::u32string_view text);
std::u32string EncodeLine(const EncodingTable& table, std::u32string_view text);

// Reassembles text from a (possibly truncated) symbol stream. Incomplete or
// unknown forms render as "⟨frag:...⟩"; ambiguous forms throw AmbiguityError.
std::string DecodeStream(const EncodingTable& table, std::u32string_view symbols);

std::string FragmentMarker(std::u32string_view raw);

}  // namespace subchar

#endif  // SUBCHAR_CHARMAP_H_

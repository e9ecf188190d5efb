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

#include "subchar/charmap.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>

#include "subchar/errors.h"
#include "subchar/random.h"
#include "subchar/unicode.h"

namespace subchar {
namespace {

constexpr std::pair<SchemeKind, std::string_view> kSchemeNames[] = {
    {SchemeKind::kPinyin, "pinyin"},   {SchemeKind::kZhuyin, "zhuyin"},
    {SchemeKind::kStroke, "stroke"},   {SchemeKind::kWubi, "wubi"},
    {SchemeKind::kZhengma, "zhengma"}, {SchemeKind::kCangjie, "cangjie"},
    {SchemeKind::kByte, "byte"},       {SchemeKind::kRandomIndex, "random_index"},
    {SchemeKind::kRaw, "raw"},
};

constexpr std::string_view kNoIndexSuffix = "-no-index";

bool IsAsciiDigit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool IsAsciiLower(char32_t c) { return c >= U'a' && c <= U'z'; }

const std::vector<char32_t>& EmptyGroup() {
  static const std::vector<char32_t> empty;
  return empty;
}

}  // namespace

std::string_view SchemeKindName(SchemeKind kind) {
  for (const auto& [k, name] : kSchemeNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

SchemeKind ParseSchemeKind(std::string_view name) {
  for (const auto& [k, n] : kSchemeNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown encoding scheme: " + std::string(name));
}

bool IsPronunciationScheme(SchemeKind kind) {
  return kind == SchemeKind::kPinyin || kind == SchemeKind::kZhuyin;
}

bool IsComputedScheme(SchemeKind kind) {
  return kind == SchemeKind::kByte || kind == SchemeKind::kRaw;
}

std::string EncodingScheme::Name() const {
  std::string name(SchemeKindName(kind));
  if (!use_index) name += kNoIndexSuffix;
  return name;
}

EncodingScheme EncodingScheme::FromName(std::string_view name) {
  EncodingScheme scheme;
  if (name.size() > kNoIndexSuffix.size() && name.ends_with(kNoIndexSuffix)) {
    scheme.use_index = false;
    name.remove_suffix(kNoIndexSuffix.size());
  }
  scheme.kind = ParseSchemeKind(name);
  return scheme;
}

// ---------------------------------------------------------------------------
// EncodedForm

std::string EncodedForm::ToString() const {
  std::string out = body;
  if (!terminated) return out;
  if (tone > 0) out += static_cast<char>('0' + tone);
  if (index > 0) out += std::to_string(index);
  out += '#';
  return out;
}

EncodedForm EncodedForm::Parse(SchemeKind kind, std::string_view form) {
  EncodedForm f;
  if (form.empty() || form.back() != '#') {
    const std::u32string cps = Utf8ToUtf32(form);
    if (cps.size() != 1 || cps[0] == kTerminator) {
      throw UnknownFormError(std::string(form));
    }
    f.body = std::string(form);
    f.terminated = false;
    return f;
  }
  const std::string_view core = form.substr(0, form.size() - 1);
  if (ParseByteForm(form)) {
    f.body = std::string(core);
    return f;
  }
  auto parse_index = [&](std::string_view digits) {
    if (digits.empty()) return 0;
    int idx = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (res.ec != std::errc() || res.ptr != digits.data() + digits.size() ||
        digits[0] == '0') {
      throw UnknownFormError(std::string(form));
    }
    return idx;
  };

  if (kind == SchemeKind::kRandomIndex) {
    if (core.size() < 5 || !IsValidBaseEncoding(kind, core.substr(0, 5))) {
      throw UnknownFormError(std::string(form));
    }
    f.body = std::string(core.substr(0, 5));
    f.index = parse_index(core.substr(5));
    return f;
  }
  if (kind == SchemeKind::kByte || kind == SchemeKind::kRaw) {
    throw UnknownFormError(std::string(form));
  }

  // Letter (or zhuyin) run, then tone digit for pronunciation schemes, then
  // the optional index.
  const std::u32string cps = Utf8ToUtf32(core);
  size_t i = 0;
  while (i < cps.size() && !IsAsciiDigit(cps[i])) ++i;
  if (i == 0) throw UnknownFormError(std::string(form));
  f.body = Utf32ToUtf8(std::u32string_view(cps).substr(0, i));
  if (IsPronunciationScheme(kind)) {
    if (i >= cps.size() || cps[i] < U'1' || cps[i] > U'5') {
      throw UnknownFormError(std::string(form));
    }
    f.tone = static_cast<int>(cps[i] - U'0');
    ++i;
  }
  std::string digits;
  for (; i < cps.size(); ++i) {
    if (!IsAsciiDigit(cps[i])) throw UnknownFormError(std::string(form));
    digits += static_cast<char>(cps[i]);
  }
  f.index = parse_index(digits);
  std::string base = f.body;
  if (f.tone > 0) base += static_cast<char>('0' + f.tone);
  if (!IsValidBaseEncoding(kind, base)) {
    throw UnknownFormError(std::string(form));
  }
  return f;
}

std::string ByteForm(char32_t c) {
  const std::string bytes = CharToUtf8(c);
  std::string out;
  for (size_t i = 0; i < bytes.size(); ++i) {
    if (i) out += '_';
    out += std::to_string(static_cast<unsigned char>(bytes[i]));
  }
  out += '#';
  return out;
}

std::optional<char32_t> ParseByteForm(std::string_view form) {
  if (form.size() < 2 || form.back() != '#') return std::nullopt;
  form.remove_suffix(1);
  std::string bytes;
  size_t pos = 0;
  while (pos <= form.size()) {
    const size_t end = std::min(form.find('_', pos), form.size());
    const std::string_view part = form.substr(pos, end - pos);
    if (part.empty() || part.size() > 3) return std::nullopt;
    int v = 0;
    for (char ch : part) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + (ch - '0');
    }
    if (v > 255 || (part.size() > 1 && part[0] == '0')) return std::nullopt;
    bytes += static_cast<char>(v);
    pos = end + 1;
  }
  const std::u32string cps = Utf8ToUtf32(bytes);
  if (cps.size() != 1 || !IsCjk(cps[0]) || CharToUtf8(cps[0]) != bytes) {
    return std::nullopt;
  }
  return cps[0];
}

bool IsValidBaseEncoding(SchemeKind kind, std::string_view base) {
  const std::u32string cps = Utf8ToUtf32(base);
  if (cps.empty()) return false;
  switch (kind) {
    case SchemeKind::kPinyin:
    case SchemeKind::kZhuyin: {
      const char32_t tone = cps.back();
      if (tone < U'1' || tone > U'5' || cps.size() < 2) return false;
      for (size_t i = 0; i + 1 < cps.size(); ++i) {
        const bool ok = kind == SchemeKind::kPinyin ? IsAsciiLower(cps[i])
                                                    : IsZhuyin(cps[i]);
        if (!ok) return false;
      }
      return true;
    }
    case SchemeKind::kStroke:
      return std::all_of(cps.begin(), cps.end(), [](char32_t c) {
        return c == U'h' || c == U's' || c == U'p' || c == U'n' || c == U'z';
      });
    case SchemeKind::kWubi:
    case SchemeKind::kZhengma:
    case SchemeKind::kCangjie:
      return std::all_of(cps.begin(), cps.end(), IsAsciiLower);
    case SchemeKind::kRandomIndex:
      return cps.size() == 5 && std::all_of(cps.begin(), cps.end(), IsAsciiDigit) &&
             cps[0] != U'0';
    case SchemeKind::kByte:
    case SchemeKind::kRaw:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// EncodingTable

EncodingTable EncodingTable::FromFile(EncodingScheme scheme,
                                      const std::filesystem::path& path) {
  if (IsComputedScheme(scheme.kind)) {
    throw ConfigError("scheme " + scheme.Name() + " takes no mapping file");
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mapping file " + path.string());
  return FromStream(scheme, in, path.string());
}

EncodingTable EncodingTable::FromStream(EncodingScheme scheme, std::istream& in,
                                        const std::string& source) {
  Entries entries;
  std::unordered_map<char32_t, size_t> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '%') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source, lineno, "expected <character><TAB><encoding>");
    }
    const std::u32string ch = Utf8ToUtf32(std::string_view(line).substr(0, tab));
    if (ch.size() != 1 || !IsCjk(ch[0])) {
      throw ParseError(source, lineno, "first field must be one CJK character");
    }
    const std::string base = line.substr(tab + 1);
    if (!IsValidBaseEncoding(scheme.kind, base)) {
      throw ParseError(source, lineno,
                       "invalid " + std::string(SchemeKindName(scheme.kind)) +
                           " encoding '" + base + "'");
    }
    const auto [it, inserted] = seen.emplace(ch[0], lineno);
    if (!inserted) {
      throw LoadError(source + ":" + std::to_string(lineno) + ": duplicate entry for " +
                      CharToUtf8(ch[0]) + " (first on line " +
                      std::to_string(it->second) + ")");
    }
    entries.emplace_back(ch[0], base);
  }
  return FromEntries(scheme, entries);
}

EncodingTable EncodingTable::FromEntries(EncodingScheme scheme,
                                         const Entries& entries) {
  EncodingTable table;
  table.scheme_ = scheme;
  table.Build(entries);
  return table;
}

EncodingTable EncodingTable::Computed(EncodingScheme scheme) {
  if (!IsComputedScheme(scheme.kind)) {
    throw ConfigError("scheme " + scheme.Name() + " needs a mapping file");
  }
  return FromEntries(scheme, {});
}

void EncodingTable::Build(const Entries& entries) {
  for (const auto& [c, base] : entries) {
    if (!entries_.emplace(c, Entry{base, {}, {}, 0}).second) {
      throw LoadError("duplicate entry for " + CharToUtf8(c));
    }
    groups_[base].push_back(c);
  }
  for (auto& [base, members] : groups_) {
    std::sort(members.begin(), members.end());
    const bool indexed = scheme_.use_index && members.size() > 1;
    for (size_t rank = 0; rank < members.size(); ++rank) {
      Entry& e = entries_.at(members[rank]);
      e.index = indexed ? static_cast<int>(rank + 1) : 0;
      e.form = base + (indexed ? std::to_string(rank + 1) : std::string()) + "#";
      e.symbols = Utf8ToUtf32(e.form);
      reverse_[e.form].push_back(members[rank]);
    }
  }
  for (auto& [form, chars] : reverse_) {
    std::sort(chars.begin(), chars.end());
    if (chars.size() > 1) injective_ = false;
  }

  std::string digest = scheme_.Name();
  digest += '\n';
  for (const auto& [c, base] : BaseEntries()) {
    AppendUtf8(c, &digest);
    digest += '\t';
    digest += base;
    digest += '\n';
  }
  fingerprint_ = ToHex64(Fnv1a64(digest));
}

EncodedForm EncodingTable::Encode(char32_t c) const {
  if (scheme_.kind != SchemeKind::kRaw) {
    if (const auto it = entries_.find(c); it != entries_.end()) {
      return EncodedForm::Parse(scheme_.kind, it->second.form);
    }
    if (IsCjk(c)) {
      std::string form = ByteForm(c);
      form.pop_back();
      return EncodedForm{form, 0, 0, true};
    }
  }
  return EncodedForm{CharToUtf8(c), 0, 0, false};
}

void EncodingTable::AppendEncoding(char32_t c, std::u32string* out) const {
  if (scheme_.kind == SchemeKind::kRaw) {
    out->push_back(c);
    return;
  }
  if (const auto it = entries_.find(c); it != entries_.end()) {
    out->append(it->second.symbols);
  } else if (IsCjk(c)) {
    const std::string form = ByteForm(c);
    out->append(form.begin(), form.end());
  } else {
    if (IsReservedSymbol(c)) out->push_back(kEscape);
    out->push_back(c);
  }
}

std::string EncodingTable::EncodeToString(char32_t c) const {
  return Encode(c).ToString();
}

std::vector<char32_t> EncodingTable::Candidates(std::string_view form) const {
  if (const auto it = reverse_.find(std::string(form)); it != reverse_.end()) {
    return it->second;
  }
  return {};
}

char32_t EncodingTable::Decode(std::string_view form) const {
  if (const auto it = reverse_.find(std::string(form)); it != reverse_.end()) {
    if (it->second.size() > 1) {
      throw AmbiguityError(std::string(form), it->second);
    }
    return it->second.front();
  }
  if (scheme_.kind != SchemeKind::kRaw) {
    if (const auto c = ParseByteForm(form); c && !Contains(*c)) return *c;
  }
  const std::u32string cps = Utf8ToUtf32(form);
  if (cps.size() == 1 && (scheme_.kind == SchemeKind::kRaw || !IsCjk(cps[0])) &&
      cps[0] != kTerminator) {
    return cps[0];
  }
  throw UnknownFormError(std::string(form));
}

std::optional<std::string> EncodingTable::BaseEncoding(char32_t c) const {
  if (const auto it = entries_.find(c); it != entries_.end()) return it->second.base;
  return std::nullopt;
}

std::vector<char32_t> EncodingTable::HomophonesOf(char32_t c) const {
  std::vector<char32_t> out;
  const auto it = entries_.find(c);
  if (it == entries_.end()) return out;
  for (char32_t h : groups_.at(it->second.base)) {
    if (h != c) out.push_back(h);
  }
  return out;
}

const std::vector<char32_t>& EncodingTable::Group(std::string_view base) const {
  if (const auto it = groups_.find(std::string(base)); it != groups_.end()) {
    return it->second;
  }
  return EmptyGroup();
}

std::vector<char32_t> EncodingTable::Characters() const {
  std::vector<char32_t> out;
  out.reserve(entries_.size());
  for (const auto& [c, e] : entries_) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

EncodingTable::Entries EncodingTable::BaseEntries() const {
  Entries out;
  out.reserve(entries_.size());
  for (const auto& [c, e] : entries_) out.emplace_back(c, e.base);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<char32_t> EncodingTable::EmitAlphabet() const {
  if (scheme_.kind == SchemeKind::kRaw) return {};
  std::set<char32_t> symbols;
  for (const auto& [c, e] : entries_) symbols.insert(e.symbols.begin(), e.symbols.end());
  for (char32_t d = U'0'; d <= U'9'; ++d) symbols.insert(d);
  symbols.insert(U'_');
  symbols.insert(kTerminator);
  symbols.insert(kEscape);
  return {symbols.begin(), symbols.end()};
}

void WriteMapFile(const std::filesystem::path& path,
                  const EncodingTable::Entries& entries,
                  const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mapping file " + path.string());
  for (const auto& c : comments) out << "% " << c << '\n';
  for (const auto& [c, base] : entries) out << CharToUtf8(c) << '\t' << base << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

EncodingTable::Entries GenerateRandomIndexMap(std::vector<char32_t> chars,
                                              uint64_t seed) {
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  constexpr uint32_t kLo = 10000, kHi = 99999;
  if (chars.size() > kHi - kLo + 1) {
    throw ConfigError("too many characters for five-digit indices");
  }
  std::vector<uint32_t> pool(kHi - kLo + 1);
  std::iota(pool.begin(), pool.end(), kLo);
  Rng rng(seed);
  EncodingTable::Entries out;
  out.reserve(chars.size());
  for (size_t i = 0; i < chars.size(); ++i) {
    const size_t j = UniformInt(rng, i, pool.size() - 1);
    std::swap(pool[i], pool[j]);
    out.emplace_back(chars[i], std::to_string(pool[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbol streams

bool IsReservedSymbol(char32_t c) {
  return IsAsciiLower(c) || IsAsciiDigit(c) || c == kTerminator || c == U'_' ||
         c == kEscape || IsZhuyin(c);
}

EncodedText EncodeText(const EncodingTable& table, std::u32string_view text) {
  EncodedText out;
  out.symbols.reserve(text.size() * 6);
  out.source.reserve(text.size() * 6);
  out.char_end.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    table.AppendEncoding(text[i], &out.symbols);
    out.source.resize(out.symbols.size(), static_cast<uint32_t>(i));
    out.char_end.push_back(static_cast<uint32_t>(out.symbols.size()));
  }
  return out;
}

std::u32string EncodeLine(const EncodingTable& table, std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size() * 6);
  for (char32_t c : text) table.AppendEncoding(c, &out);
  return out;
}

std::string FragmentMarker(std::u32string_view raw) {
  return "⟨frag:" + Utf32ToUtf8(raw) + "⟩";
}

std::string DecodeStream(const EncodingTable& table, std::u32string_view s) {
  if (table.scheme().kind == SchemeKind::kRaw) return Utf32ToUtf8(s);
  std::string out;
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    const char32_t c = s[i];
    if (c == kEscape) {
      if (i + 1 < n) {
        AppendUtf8(s[i + 1], &out);
        i += 2;
      } else {
        out += FragmentMarker(s.substr(i, 1));
        ++i;
      }
    } else if (IsReservedSymbol(c)) {
      size_t j = i;
      while (j < n && s[j] != kTerminator && s[j] != kEscape && IsReservedSymbol(s[j])) ++j;
      if (j < n && s[j] == kTerminator) {
        const std::string form = Utf32ToUtf8(s.substr(i, j + 1 - i));
        try {
          AppendUtf8(table.Decode(form), &out);
        } catch (const UnknownFormError&) {
          out += FragmentMarker(s.substr(i, j + 1 - i));
        }
        i = j + 1;
      } else {
        out += FragmentMarker(s.substr(i, j - i));
        i = j;
      }
    } else {
      AppendUtf8(c, &out);
      ++i;
    }
  }
  return out;
}

}  // namespace subchar

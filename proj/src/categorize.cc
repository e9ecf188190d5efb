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
#include "subchar/subword.h"
#include "subchar/unicode.h"

namespace subchar {

std::string_view PieceCategoryName(PieceCategory c) {
  switch (c) {
    case PieceCategory::kSpecial:
      return "special";
    case PieceCategory::kPassthrough:
      return "passthrough";
    case PieceCategory::kChar:
      return "char";
    case PieceCategory::kSubChar:
      return "subchar";
    case PieceCategory::kCombination:
      return "combination";
  }
  return "unknown";
}

PieceCategory Categorize(const std::u32string& piece, const EncodingTable& table) {
  size_t complete = 0, fragments = 0, passthrough = 0;
  if (table.scheme().kind == SchemeKind::kRaw) {
    for (char32_t c : piece) (IsCjk(c) ? complete : passthrough)++;
  } else {
    const size_t n = piece.size();
    size_t i = 0;
    while (i < n) {
      const char32_t c = piece[i];
      if (c == kEscape) {
        (i + 1 < n ? passthrough : fragments)++;
        i += 2;
      } else if (IsReservedSymbol(c)) {
        size_t j = i;
        while (j < n && piece[j] != kTerminator && piece[j] != kEscape &&
               IsReservedSymbol(piece[j])) {
          ++j;
        }
        if (j < n && piece[j] == kTerminator) {
          const std::string form = Utf32ToUtf8(piece.substr(i, j + 1 - i));
          const bool valid = !table.Candidates(form).empty() || ParseByteForm(form);
          (valid ? complete : fragments)++;
          i = j + 1;
        } else {
          ++fragments;
          i = j;
        }
      } else {
        ++passthrough;
        ++i;
      }
    }
  }
  if (complete == 0 && fragments == 0) return PieceCategory::kPassthrough;
  if (complete == 0) return PieceCategory::kSubChar;
  if (complete == 1 && fragments == 0 && passthrough == 0) return PieceCategory::kChar;
  return PieceCategory::kCombination;
}

PieceCategory Categorize(const SubwordModel& model, int32_t id, const EncodingTable& table) {
  if (SubwordModel::IsSpecial(id)) return PieceCategory::kSpecial;
  return Categorize(model.piece(id), table);
}

}  // namespace subchar

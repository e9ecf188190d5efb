#!/usr/bin/env python3
# Copyright 2026 The SubChar Tokenizer Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the files under data/ from upstream package archives.

Inputs (all MIT licensed):
  pypinyin        pinyin and zhuyin readings (installed python package)
  pywubi wheel    wubi 86 codes (pywubi/data/wubi_86.json)
  cnchar-order    stroke orders (npm tarball, cnchar.order.min.js)
  jieba sdist     word frequency dictionary (jieba/dict.txt)
  snownlp sdist   POS-tagged news text (snownlp/tag/199801.txt)

Example:
  python3 scripts/prepare_data.py --pywubi pywubi-0.3.0-py3-none-any.whl \
      --cnchar cnchar-order-3.2.6.tgz --jieba jieba-0.42.1.tar.gz \
      --snownlp snownlp-0.12.3.tar.gz --out data
"""

import argparse
import collections
import json
import os
import re
import tarfile
import zipfile

CJK_RANGES = [
    (0x3400, 0x4DBF),
    (0x4E00, 0x9FFF),
    (0xF900, 0xFAFF),
    (0x20000, 0x2A6DF),
    (0x2A700, 0x2EBEF),
    (0x2F800, 0x2FA1F),
    (0x30000, 0x3134F),
]


def is_cjk(ch):
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in CJK_RANGES)


def write_map(path, header, entries):
    with open(path, "w", encoding="utf-8") as f:
        for line in header:
            f.write("% " + line + "\n")
        for ch, code in sorted(entries.items(), key=lambda kv: ord(kv[0])):
            f.write(f"{ch}\t{code}\n")
    print(f"{path}: {len(entries)} entries")


PINYIN_RE = re.compile(r"^[a-z]+[1-5]$")
ZHUYIN_TONES = {"ˊ": "2", "ˇ": "3", "ˋ": "4", "˙": "5"}


def zhuyin_numbered(s):
    tone = "1"
    body = []
    for ch in s:
        if ch in ZHUYIN_TONES:
            tone = ZHUYIN_TONES[ch]
        else:
            body.append(ch)
    body = "".join(body)
    if not body or not all(0x3105 <= ord(c) <= 0x312F or 0x31A0 <= ord(c) <= 0x31BF
                           for c in body):
        return None
    return body + tone


def build_pinyin(out):
    import pypinyin
    from pypinyin import Style, pinyin
    from pypinyin.pinyin_dict import pinyin_dict

    py, zy = {}, {}
    dropped = 0
    for cp in sorted(pinyin_dict):
        ch = chr(cp)
        if not is_cjk(ch):
            continue
        t3 = pinyin(ch, style=Style.TONE3, neutral_tone_with_five=True)[0][0]
        bo = pinyin(ch, style=Style.BOPOMOFO)[0][0]
        if not PINYIN_RE.match(t3):
            dropped += 1
            continue
        py[ch] = t3
        z = zhuyin_numbered(bo)
        if z is not None:
            zy[ch] = z
    src = f"pypinyin {pypinyin.__version__} (MIT); first reading per character"
    write_map(os.path.join(out, "maps", "pinyin.map"),
              ["pinyin: <char>\t<syllable><tone 1-5>, u-umlaut spelled v", src], py)
    write_map(os.path.join(out, "maps", "zhuyin.map"),
              ["zhuyin: <char>\t<bopomofo><tone 1-5>", src], zy)
    print(f"pinyin: dropped {dropped} readings outside [a-z]+[1-5]")


def build_wubi(out, wheel):
    data = json.loads(zipfile.ZipFile(wheel).read("pywubi/data/wubi_86.json"))
    entries = {}
    for ch, codes in data.items():
        if len(ch) != 1 or not is_cjk(ch):
            continue
        full = max(codes, key=len)
        if re.match(r"^[a-y]{1,4}$", full):
            entries[ch] = full
    write_map(os.path.join(out, "maps", "wubi.map"),
              ["wubi 86 full codes: <char>\t<keys a-y>",
               f"pywubi {os.path.basename(wheel)} (MIT)"], entries)


# cnchar stroke letters collapsed to the five standard stroke classes:
# h heng, s shu, p pie, n dian/na, z zhe (every turning stroke).
CNCHAR_TO_CLASS = {
    "j": "h", "i": "h", "d": "h",
    "f": "s", "g": "s",
    "s": "p",
    "k": "n", "l": "n",
}


def build_stroke(out, tgz):
    with tarfile.open(tgz) as tf:
        js = tf.extractfile("package/cnchar.order.min.js").read().decode("utf-8")
    entries = {}
    for ch, seq in re.findall(r'"(.)":"([a-z]+)"', js):
        if is_cjk(ch):
            entries[ch] = "".join(CNCHAR_TO_CLASS.get(c, "z") for c in seq)
    write_map(os.path.join(out, "maps", "stroke.map"),
              ["stroke order over classes h s p n z: <char>\t<strokes>",
               f"cnchar-order {os.path.basename(tgz)} (MIT)"], entries)


def build_dict(out, tgz, limit):
    with tarfile.open(tgz) as tf:
        member = next(m for m in tf.getmembers() if m.name.endswith("jieba/dict.txt"))
        lines = tf.extractfile(member).read().decode("utf-8").splitlines()
    words = []
    for line in lines:
        parts = line.split()
        if len(parts) < 2:
            continue
        w, freq = parts[0], int(parts[1])
        if len(w) >= 2 and all(is_cjk(c) for c in w):
            words.append((w, freq))
    words.sort(key=lambda wf: (-wf[1], [ord(c) for c in wf[0]]))
    words = words[:limit]
    path = os.path.join(out, "dict", "words.txt")
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"% jieba {os.path.basename(tgz)} dict.txt (MIT), top {limit} CJK words\n")
        for w, freq in words:
            f.write(f"{w}\t{freq}\n")
    print(f"{path}: {len(words)} words")


def build_corpus(out, tgz, train_chars, eval_chars):
    with tarfile.open(tgz) as tf:
        member = next(m for m in tf.getmembers() if m.name.endswith("tag/199801.txt"))
        raw = tf.extractfile(member).read().decode("utf-8")
    docs = []
    for line in raw.splitlines():
        toks = line.split()
        if not toks:
            continue
        text = "".join(re.sub(r"/[A-Za-z]+$", "", t).lstrip("[") for t in toks)
        text = re.sub(r"\][A-Za-z]+", "", text)
        if sum(is_cjk(c) for c in text) >= 8:
            docs.append(text)
    # Interleave so that the evaluation split covers the whole month.
    train, evals = [], []
    n_train = n_eval = 0
    for i, d in enumerate(docs):
        if i % 10 == 9 and n_eval < eval_chars:
            evals.append(d)
            n_eval += len(d)
        elif n_train < train_chars:
            train.append(d)
            n_train += len(d)
    for name, part in (("desk_train.txt", train), ("desk_eval.txt", evals)):
        path = os.path.join(out, "corpus", name)
        with open(path, "w", encoding="utf-8") as f:
            f.write("\n".join(part) + "\n")
        print(f"{path}: {len(part)} lines, {sum(map(len, part))} chars")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pywubi", required=True)
    ap.add_argument("--cnchar", required=True)
    ap.add_argument("--jieba", required=True)
    ap.add_argument("--snownlp", required=True)
    ap.add_argument("--out", default="data")
    ap.add_argument("--dict-limit", type=int, default=120000)
    ap.add_argument("--train-chars", type=int, default=600000)
    ap.add_argument("--eval-chars", type=int, default=80000)
    args = ap.parse_args()
    for sub in ("maps", "dict", "corpus"):
        os.makedirs(os.path.join(args.out, sub), exist_ok=True)
    build_pinyin(args.out)
    build_wubi(args.out, args.pywubi)
    build_stroke(args.out, args.cnchar)
    build_dict(args.out, args.jieba, args.dict_limit)
    build_corpus(args.out, args.snownlp, args.train_chars, args.eval_chars)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
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

"""Writes the synthetic demo word list used to build data/demo/lexicon.tsv.

Usage:
  tools/make-demo-lexicon.py > words.txt
  oovfst g2p --rules g2p.fst --batch words.txt > data/demo/lexicon.tsv
"""

import random

ONSETS = ["k", "p", "t", "s", "m", "n", "l", "r", "v", "h", "j", "kr", "pr",
          "tr", "st", "sp", "kl", "pl", "g", "b", "d", "f", "š"]
RARE_ONSETS = ["c", "ch", "z", "w", "q", "x", "y", "ž"]
VOWELS = ["a", "e", "i", "o", "u", "õ", "ä", "ö", "ü", "aa", "ee", "ii", "uu",
          "ai", "ei", "ui"]
CODAS = ["", "", "", "s", "n", "l", "r", "t", "k", "m", "st", "ts", "ks"]
KRI_TAILS = ["i", "is", "ist", "imm", "ips", "ik", "iit", "iis", "iisi",
             "istall", "itik", "iim", "ina", "ipp", "iitik", "istus", "iba",
             "isa", "ise", "isu"]


def syllable(rng, rare):
    onset = rng.choice(RARE_ONSETS if rare else ONSETS)
    return onset + rng.choice(VOWELS) + rng.choice(CODAS)


def word(rng):
    if rng.random() < 0.2:
        w = "kr" + rng.choice(KRI_TAILS)
        if rng.random() < 0.4:
            w += syllable(rng, False)
    else:
        rare = rng.random() < 0.08
        w = syllable(rng, rare)
        for _ in range(rng.choice([0, 1, 1, 2])):
            w += syllable(rng, False)
    if rng.random() < 0.1:
        w = w[0].upper() + w[1:]
    return w


def main():
    rng = random.Random(7)
    words = set()
    while len(words) < 600:
        words.add(word(rng))
    for w in sorted(words):
        print(w)


if __name__ == "__main__":
    main()

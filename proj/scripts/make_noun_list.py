#!/usr/bin/env python3
"""Regenerate data/nouns.txt from the WordNet-derived lemma index shipped in
the spacy-lookups-data wheel.

Usage: make_noun_list.py <spacy_lookups_data wheel> <out>

A word is listed when it is a WordNet noun lemma or a regular plural of one.
Gerund-like "-ing" forms whose stem is a WordNet verb are left out, so the
selection step prefers concrete nouns ("hunters") over activities ("hunting").
"""
import gzip
import json
import sys
import zipfile


def load_index(wheel):
    with zipfile.ZipFile(wheel) as z:
        raw = z.read("spacy_lookups_data/data/en_lemma_index.json.gz")
    return json.loads(gzip.decompress(raw))


def plural(noun):
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    if noun.endswith("y") and len(noun) > 1 and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    if noun.endswith("f"):
        return noun[:-1] + "ves"
    if noun.endswith("fe"):
        return noun[:-2] + "ves"
    return noun + "s"


def is_gerund(word, verbs):
    if not word.endswith("ing") or len(word) < 6:
        return False
    stem = word[:-3]
    candidates = {stem, stem + "e"}
    if len(stem) > 2 and stem[-1] == stem[-2]:
        candidates.add(stem[:-1])
    return any(c in verbs for c in candidates)


def main():
    index = load_index(sys.argv[1])
    verbs = set(index["verb"])
    nouns = set()
    for lemma in index["noun"]:
        if "_" in lemma or not lemma.isascii():
            continue
        lemma = lemma.lower()
        nouns.add(lemma)
        nouns.add(plural(lemma))
        if lemma.endswith("f"):
            nouns.add(lemma + "s")
    nouns = {w for w in nouns if not is_gerund(w, verbs)}
    with open(sys.argv[2], "w") as out:
        out.write("# English nouns (WordNet noun lemmas and regular plurals).\n")
        out.write("# Generated by scripts/make_noun_list.py; one word per line.\n")
        for w in sorted(nouns):
            out.write(w + "\n")


if __name__ == "__main__":
    main()

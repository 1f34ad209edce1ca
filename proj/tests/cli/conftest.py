import gzip
import json
import os
import subprocess
from pathlib import Path

import numpy as np
import pytest

BIN = os.environ.get("GRETHEME_BIN", "gretheme")
FIXTURES = Path(os.environ.get("GRETHEME_FIXTURES", Path(__file__).parent.parent / "fixtures"))
DATA = Path(os.environ.get("GRETHEME_DATA", Path(__file__).parent.parent.parent / "data"))

THEME_WORDS = ("white black king queen bishop rook knight pawn capture castling promote transform "
               "checkmate check control prevent stalemate deadlock victory defeat draw tie").split()
FIELD = "lion elephant zebra eating becoming extinction control win loss".split()


def run(*args, env=None, cwd=None):
    full_env = {k: v for k, v in os.environ.items() if not k.startswith("GRETHEME_") or k == "GRETHEME_BIN"}
    full_env.update(env or {})
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env, cwd=cwd)


def write_vectors(path, table):
    with open(path, "w") as f:
        for word, vec in table.items():
            f.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")


@pytest.fixture(scope="session")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("cli")


@pytest.fixture(scope="session")
def words(workdir):
    rng = np.random.default_rng(11)
    table = {}
    for w in THEME_WORDS + FIELD + ["wild", "face", "sky", "blue", "grass", "man", "woman"]:
        table.setdefault(w, rng.normal(size=50))
    table["green"] = table["sky"] - table["blue"] + table["grass"] + 0.01 * rng.normal(size=50)
    for i in range(300):
        table[f"filler{i}"] = rng.normal(size=50)
    path = workdir / "words.txt"
    write_vectors(path, table)
    return path


@pytest.fixture(scope="session")
def corpus(workdir):
    with gzip.open(FIXTURES / "random_10k.pgn.gz", "rt") as f:
        text = f.read()
    cut = text.find("[Event ", len(text) // 60)
    pgn = workdir / "small.pgn"
    pgn.write_text(text[:cut])
    out = workdir / "small.txt"
    r = run("ingest", "--pgn", pgn, "--out", out)
    assert r.returncode == 0, r.stderr
    return out


@pytest.fixture(scope="session")
def game(workdir, corpus):
    out = workdir / "game.txt"
    r = run("train", "--corpus", corpus, "--out", out, "--epochs", 2, "--seed", 3)
    assert r.returncode == 0, r.stderr
    return out


@pytest.fixture(scope="session")
def schema():
    import jsonschema
    with open(DATA / "output.schema.json") as f:
        s = json.load(f)
    return jsonschema.Draft202012Validator(s)

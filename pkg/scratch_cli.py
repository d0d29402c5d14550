"""Container format and CLI checks."""

import os
import random
import subprocess
import sys

import numpy as np
from click.testing import CliRunner

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "tests"))

from ubwt import Text, BwtString, bwt_naive, build_ms
from ubwt.bidirectional import build_ds, build_plcp
from ubwt.cli import main
from ubwt.container import (IndexContainer, decode_state, encode_state,
                            read_sections, resolve_seed)
from ubwt.indexes import csa_lookup

rng = random.Random(20260815)
runner = CliRunner()
TMP = "/tmp/ubwt_cli_scratch"
os.makedirs(TMP, exist_ok=True)


def path(name):
    return os.path.join(TMP, name)


def write(name, content):
    p = path(name)
    with open(p, "w") as fh:
        fh.write(content)
    return p


def run(*args, env=None):
    return runner.invoke(main, list(args), env=env, catch_exceptions=False)


# ------------------------------------------------------------ codec checks
state = {"a": 1, "b": -5, "big": (1 << 63) + 7, "f": 0.25, "s": "héllo",
         "raw": b"\x00\xff", "none": None, "t": True, "ff": False,
         "arr": np.arange(7, dtype=np.int64),
         "mat": np.arange(6, dtype=np.uint32).reshape(2, 3),
         "bytes8": np.frombuffer(b"\x01\x02", np.uint8).copy(),
         "nested": {"x": [1, 2.5, "z", None, [True]], "y": {}}}
back = decode_state(encode_state(state))
assert back["a"] == 1 and back["b"] == -5 and back["big"] == (1 << 63) + 7
assert back["f"] == 0.25 and back["s"] == "héllo" and back["raw"] == b"\x00\xff"
assert back["none"] is None and back["t"] is True and back["ff"] is False
assert np.array_equal(back["arr"], state["arr"]) and back["arr"].dtype == np.int64
assert np.array_equal(back["mat"], state["mat"]) and back["mat"].dtype == np.uint32
assert back["mat"].shape == (2, 3)
assert back["nested"] == {"x": [1, 2.5, "z", None, [True]], "y": {}}
back["arr"][0] = 99  # must be writable
print("codec ok")

# --------------------------------------------------- library round trips
for trial in range(40):
    m = rng.randint(1, 3)
    recs = ["".join(rng.choice("abcd") for _ in range(rng.randint(1, 40)))
            for _ in range(m)]
    bidi = rng.random() < 0.5
    eps = rng.choice([None, 0.5, 1.0]) if m == 1 else None
    c = IndexContainer.build(recs, construction=rng.choice(
        ["naive", "sa", "linear"]), bidirectional=bidi, csa_eps=eps)
    f = path("t%d.ubwt" % trial)
    c.save(f)
    d = IndexContainer.load(f)
    assert d.text.records() == recs
    assert np.array_equal(d.bwt.symbols, c.bwt.symbols)
    assert d.seed == c.seed == resolve_seed()
    assert d.meta == c.meta
    pat = "".join(rng.choice("abcd") for _ in range(rng.randint(1, 3)))
    assert d.ssa.count(pat) == c.ssa.count(pat)
    row = rng.randint(1, c.bwt.n)
    assert d.ssa.sa_value(row) == c.ssa.sa_value(row)
    e = rng.randint(1, c.bwt.n)
    fpos = min(c.bwt.n, e + rng.randint(0, 6))
    assert d.ssa.substring(e, fpos) == c.ssa.substring(e, fpos)
    if eps is not None:
        assert csa_lookup(d.csa, row) == csa_lookup(c.csa, row)
    if bidi:
        if m == 1:
            assert np.array_equal(d.plcp, build_plcp(c.bidir))
            assert build_ds(d.bidir, 1) == build_ds(c.bidir, 1)
        if m == 2:
            assert build_ms(d.bidir) == build_ms(c.bidir)
print("round trip ok")

# ------------------------------------------------- determinism and layout
inp = write("abab.txt", "abab\n")
r = run("build", inp, path("a1.ubwt"))
assert r.exit_code == 0, r.output
r = run("build", inp, path("a2.ubwt"), "--construction", "naive")
assert r.exit_code == 0
r = run("build", inp, path("a3.ubwt"), "--construction", "linear")
assert r.exit_code == 0
blobs = [open(path("a%d.ubwt" % i), "rb").read() for i in (1, 2, 3)]
assert blobs[0] == blobs[1] == blobs[2], "construction routes differ"

secs, seed = read_sections(path("a1.ubwt"))
assert set(secs) == {"meta", "text", "bwt", "samples"}
assert seed == resolve_seed()
bwt = BwtString.from_state(decode_state(secs["bwt"]))
t = Text.from_state(decode_state(secs["text"]))
decoded = "".join(t.decode_code(int(s)) for s in bwt.symbols)
assert decoded == "bb#aa", decoded
assert np.array_equal(bwt.symbols, bwt_naive(Text(["abab"])).symbols)

env = {"UBWT_SEED": "12345"}
r = run("build", inp, path("s1.ubwt"), "--bidirectional", env=env)
assert r.exit_code == 0, r.output
r = run("build", inp, path("s2.ubwt"), "--bidirectional", env=env)
assert r.exit_code == 0
b1 = open(path("s1.ubwt"), "rb").read()
b2 = open(path("s2.ubwt"), "rb").read()
assert b1 == b2, "seeded rebuild not byte-identical"
_, s_seed = read_sections(path("s1.ubwt"))
assert s_seed == 12345
print("determinism ok")

# --------------------------------------------------------- corruption
blob = open(path("a1.ubwt"), "rb").read()
for flip in [5, len(blob) // 2, len(blob) - 1]:
    bad = bytearray(blob)
    bad[flip] ^= 0x40
    bp = path("bad.ubwt")
    open(bp, "wb").write(bytes(bad))
    try:
        read_sections(bp)
        raise AssertionError("corruption accepted at %d" % flip)
    except ValueError as exc:
        assert ("checksum" in str(exc) or "magic" in str(exc)
                or "version" in str(exc)), exc
    r = run("query", bp, "count", "ab")
    assert r.exit_code == 2, (flip, r.exit_code)
open(path("empty.ubwt"), "wb").close()
try:
    read_sections(path("empty.ubwt"))
    raise AssertionError("empty accepted")
except ValueError as exc:
    assert "version" in str(exc), exc
r = run("query", path("empty.ubwt"), "count", "ab")
assert r.exit_code == 2
print("corruption ok")

# ------------------------------------------------------------- CLI queries
r = run("query", path("a1.ubwt"), "count", "ab")
assert r.exit_code == 0 and r.output.strip() == "2", r.output
r = run("query", path("a1.ubwt"), "count", "zz")
assert r.exit_code == 0 and r.output.strip() == "0"
r = run("query", path("a1.ubwt"), "locate", "ab")
assert r.output.splitlines() == ["1\t1", "1\t3"], r.output
r = run("query", path("a1.ubwt"), "extract", "2", "3")
assert r.exit_code == 0 and r.output.strip() == "bab"
r = run("query", path("a1.ubwt"), "extract", "3", "3")
assert r.exit_code == 1
r = run("query", path("a1.ubwt"), "extract", "0", "1")
assert r.exit_code == 1

mp = write("mis.txt", "mississippi")
r = run("build", mp, path("mis.ubwt"))
assert r.exit_code == 0
r = run("query", path("mis.ubwt"), "maxrep")
assert r.exit_code == 0 and len(r.output.splitlines()) == 4, r.output
r2 = run("query", path("mis.ubwt"), "maxrep", "--threads", "3")
assert r2.output == r.output
r = run("query", path("mis.ubwt"), "kernel", "mississippi", "--k", "1")
assert r.exit_code == 0 and r.output.strip() == "1.0", r.output
r = run("query", path("mis.ubwt"), "kernel", "mississippi", "--substring")
assert r.output.strip() == "1.0"
r = run("query", path("mis.ubwt"), "kernel", "abc")
assert r.exit_code == 1
r = run("query", path("mis.ubwt"), "maw")
assert r.exit_code == 0
from oracles import as_tuple, maw_oracle
got = set()
for line in r.output.splitlines():
    pos, ln, sym = line.split("\t")
    pos, ln = int(pos), int(ln)
    got.add(as_tuple("mississippi"[pos - 1:pos - 1 + ln - 1] + sym))
assert got == maw_oracle("mississippi")
r = run("query", path("mis.ubwt"), "ms", "issia", "--tau", "1")
assert [int(x) for x in r.output.split()] == [4, 3, 2, 1, 0], r.output
r = run("query", path("mis.ubwt"), "ds")
assert r.exit_code == 0 and len(r.output.split()) == 11
r = run("query", path("mis.ubwt"), "ds", "--tau", "0")
assert r.exit_code == 1
rp = run("query", path("mis.ubwt"), "plcp")
assert rp.exit_code == 0 and len(rp.output.split()) == 12
r = run("build", mp, path("misb.ubwt"), "--bidirectional", "--csa-eps", "0.5")
assert r.exit_code == 0
rb = run("query", path("misb.ubwt"), "plcp")
assert rb.output == rp.output
r = run("query", path("mis.ubwt"), "mem", "sippy", "--min-len", "2")
assert r.exit_code == 0
assert r.output.splitlines() == ["4\t1\t2", "7\t1\t4"], r.output

fa = write("two.fa", ">one\nabcx\n>two\nyab\ncz\n")
r = run("build", fa, path("two.ubwt"), "--fasta")
assert r.exit_code == 0
r = run("query", path("two.ubwt"), "mum")
assert r.exit_code == 0
assert r.output.splitlines() == ["1\t1\t1\t3", "1\t2\t2\t3"], r.output
r = run("query", path("two.ubwt"), "locate", "ab")
assert r.output.splitlines() == ["1\t1", "2\t2"], r.output
r = run("query", path("two.ubwt"), "extract", "2", "3", "--doc", "2")
assert r.output.strip() == "abc"
r = run("query", path("two.ubwt"), "mem", "abc")
assert r.exit_code == 1
r = run("query", path("two.ubwt"), "ms", "abc")
assert r.exit_code == 1
r = run("query", path("mis.ubwt"), "mum")
assert r.exit_code == 1
r = run("build", path("nope.txt"), path("x.ubwt"))
assert r.exit_code == 2
r = run("query", path("nope.ubwt"), "count", "a")
assert r.exit_code == 2
print("cli queries ok")

# one end-to-end pass through the installed executable
out = subprocess.run(["ubwt", "query", path("a1.ubwt"), "count", "ab"],
                     capture_output=True, text=True)
assert out.returncode == 0 and out.stdout.strip() == "2", out
out = subprocess.run(["ubwt", "build", "/does/not/exist", path("x.ubwt")],
                     capture_output=True, text=True)
assert out.returncode == 2 and out.stderr, out
print("entry point ok")
print("ALL OK")

"""On-disk index container.

A container is a single little-endian file: the magic ``UBWT``, a 32-bit
format version, a section table (name, offset, length) with strictly
increasing 8-byte-aligned offsets, the section payloads, and a trailer
holding the build seed and a CRC-32 over everything before it.  Payloads
are the component state dictionaries serialized with a small tagged
encoder (ints, floats, booleans, strings, byte strings, numpy arrays,
lists, nested dicts); nothing is pickled, so a container built twice from
the same input and seed is byte-identical.
"""

import os
import struct
import zlib

import numpy as np

from .bidirectional import BidirIndex, build_plcp
from .bwt import BwtString, bwt_from_suffix_array, bwt_linear, bwt_naive
from .indexes import LayeredCsa, SuccinctSuffixArray
from .mmphf import DEFAULT_SEED
from .textcore import Text

MAGIC = b"UBWT"
VERSION = 1

_T_NONE = 0
_T_FALSE = 1
_T_TRUE = 2
_T_INT = 3
_T_UINT = 4
_T_FLOAT = 5
_T_STR = 6
_T_BYTES = 7
_T_ARRAY = 8
_T_LIST = 9
_T_DICT = 10


# ------------------------------------------------------------ value codec

def _encode_value(out, v):
    if v is None:
        out.append(_T_NONE)
    elif isinstance(v, (bool, np.bool_)):
        out.append(_T_TRUE if v else _T_FALSE)
    elif isinstance(v, (int, np.integer)):
        v = int(v)
        if -(1 << 63) <= v < (1 << 63):
            out.append(_T_INT)
            out += struct.pack("<q", v)
        else:
            if not 0 <= v < (1 << 64):
                raise ValueError("integer out of 64-bit range")
            out.append(_T_UINT)
            out += struct.pack("<Q", v)
    elif isinstance(v, (float, np.floating)):
        out.append(_T_FLOAT)
        out += struct.pack("<d", float(v))
    elif isinstance(v, str):
        raw = v.encode("utf-8")
        out.append(_T_STR)
        out += struct.pack("<Q", len(raw))
        out += raw
    elif isinstance(v, (bytes, bytearray)):
        out.append(_T_BYTES)
        out += struct.pack("<Q", len(v))
        out += bytes(v)
    elif isinstance(v, np.ndarray):
        a = np.ascontiguousarray(v)
        if a.dtype.byteorder == ">":
            a = a.astype(a.dtype.newbyteorder("<"))
        ds = a.dtype.str.encode("ascii")
        out.append(_T_ARRAY)
        out += struct.pack("<H", len(ds))
        out += ds
        out += struct.pack("<B", a.ndim)
        for dim in a.shape:
            out += struct.pack("<Q", dim)
        raw = a.tobytes()
        out += struct.pack("<Q", len(raw))
        out += raw
    elif isinstance(v, (list, tuple)):
        out.append(_T_LIST)
        out += struct.pack("<Q", len(v))
        for item in v:
            _encode_value(out, item)
    elif isinstance(v, dict):
        out.append(_T_DICT)
        out += struct.pack("<Q", len(v))
        for key in sorted(v):
            if not isinstance(key, str):
                raise ValueError("dictionary keys must be strings")
            raw = key.encode("utf-8")
            out += struct.pack("<Q", len(raw))
            out += raw
            _encode_value(out, v[key])
    else:
        raise ValueError("unsupported value type %r" % type(v))


def _decode_value(buf, pos):
    tag = buf[pos]
    pos += 1
    if tag == _T_NONE:
        return None, pos
    if tag == _T_FALSE:
        return False, pos
    if tag == _T_TRUE:
        return True, pos
    if tag == _T_INT:
        return struct.unpack_from("<q", buf, pos)[0], pos + 8
    if tag == _T_UINT:
        return struct.unpack_from("<Q", buf, pos)[0], pos + 8
    if tag == _T_FLOAT:
        return struct.unpack_from("<d", buf, pos)[0], pos + 8
    if tag == _T_STR:
        (ln,) = struct.unpack_from("<Q", buf, pos)
        pos += 8
        return bytes(buf[pos:pos + ln]).decode("utf-8"), pos + ln
    if tag == _T_BYTES:
        (ln,) = struct.unpack_from("<Q", buf, pos)
        pos += 8
        return bytes(buf[pos:pos + ln]), pos + ln
    if tag == _T_ARRAY:
        (dl,) = struct.unpack_from("<H", buf, pos)
        pos += 2
        dtype = np.dtype(bytes(buf[pos:pos + dl]).decode("ascii"))
        pos += dl
        ndim = buf[pos]
        pos += 1
        shape = []
        for _ in range(ndim):
            shape.append(struct.unpack_from("<Q", buf, pos)[0])
            pos += 8
        (nb,) = struct.unpack_from("<Q", buf, pos)
        pos += 8
        a = np.frombuffer(buf, dtype, count=int(np.prod(shape, dtype=np.int64))
                          if shape else nb // max(1, dtype.itemsize),
                          offset=pos)
        a = a.reshape(shape).copy()
        return a, pos + nb
    if tag == _T_LIST:
        (cnt,) = struct.unpack_from("<Q", buf, pos)
        pos += 8
        items = []
        for _ in range(cnt):
            item, pos = _decode_value(buf, pos)
            items.append(item)
        return items, pos
    if tag == _T_DICT:
        (cnt,) = struct.unpack_from("<Q", buf, pos)
        pos += 8
        d = {}
        for _ in range(cnt):
            (ln,) = struct.unpack_from("<Q", buf, pos)
            pos += 8
            key = bytes(buf[pos:pos + ln]).decode("utf-8")
            pos += ln
            d[key], pos = _decode_value(buf, pos)
        return d, pos
    raise ValueError("corrupt payload: unknown tag %d" % tag)


def encode_state(state):
    """Serialize one state dictionary to bytes."""
    out = bytearray()
    _encode_value(out, state)
    return bytes(out)


def decode_state(payload):
    """Inverse of encode_state."""
    value, pos = _decode_value(payload, 0)
    if pos != len(payload):
        raise ValueError("corrupt payload: trailing bytes")
    return value


# ------------------------------------------------------------- file layout

def write_sections(path, sections, seed):
    """Write named payloads plus the seed/checksum trailer."""
    buf = bytearray()
    buf += MAGIC
    buf += struct.pack("<I", VERSION)
    buf += struct.pack("<Q", len(sections))
    table = sum(2 + len(name.encode("utf-8")) + 16 for name, _ in sections)
    pos = len(buf) + table
    entries = []
    for name, payload in sections:
        pos += (-pos) % 8
        entries.append((name, pos, len(payload)))
        pos += len(payload)
    for name, off, ln in entries:
        raw = name.encode("utf-8")
        buf += struct.pack("<H", len(raw))
        buf += raw
        buf += struct.pack("<QQ", off, ln)
    for (name, payload), (_, off, _ln) in zip(sections, entries):
        buf += b"\0" * (off - len(buf))
        buf += payload
    buf += struct.pack("<Q", int(seed))
    buf += struct.pack("<I", zlib.crc32(bytes(buf)))
    with open(path, "wb") as fh:
        fh.write(bytes(buf))


def read_sections(path):
    """Parse a container file into ({name: payload}, seed).

    Refuses files whose checksum, magic, version, or section table does
    not validate.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 8:
        raise ValueError("truncated container: magic and version header "
                         "missing")
    if data[:4] != MAGIC:
        raise ValueError("bad container magic")
    (version,) = struct.unpack_from("<I", data, 4)
    if version != VERSION:
        raise ValueError("unsupported container version %d" % version)
    if len(data) < 28:
        raise ValueError("truncated container: header incomplete")
    (stored,) = struct.unpack_from("<I", data, len(data) - 4)
    if stored != zlib.crc32(data[:-4]):
        raise ValueError("container checksum mismatch")
    (seed,) = struct.unpack_from("<Q", data, len(data) - 12)
    (count,) = struct.unpack_from("<Q", data, 8)
    pos = 16
    body_end = len(data) - 12
    entries = []
    for _ in range(count):
        if pos + 2 > body_end:
            raise ValueError("corrupt section table")
        (nl,) = struct.unpack_from("<H", data, pos)
        pos += 2
        name = data[pos:pos + nl].decode("utf-8")
        pos += nl
        off, ln = struct.unpack_from("<QQ", data, pos)
        pos += 16
        entries.append((name, off, ln))
    prev = pos
    sections = {}
    for name, off, ln in entries:
        if off % 8 != 0 or off < prev or off + ln > body_end:
            raise ValueError("corrupt section table: bad offset for %r"
                             % name)
        prev = off + ln
        sections[name] = data[off:off + ln]
    return sections, seed


def resolve_seed(seed=None):
    """Explicit seed, else the UBWT_SEED environment variable, else the
    library default."""
    if seed is not None:
        return int(seed)
    env = os.environ.get("UBWT_SEED")
    if env is not None:
        return int(env, 0)
    return DEFAULT_SEED


_BUILDERS = {"naive": bwt_naive, "sa": bwt_from_suffix_array,
             "linear": bwt_linear}


class IndexContainer:
    """Loaded or freshly built index with its serializable parts.

    Always present: the text metadata, the rotation transform, and the
    sampled suffix-array values.  Optional: a layered lookup structure,
    the permuted LCP array, and the bidirectional (two-sided) index.
    """

    def __init__(self, text, bwt, ssa, csa=None, plcp=None, bidir=None,
                 seed=DEFAULT_SEED, meta=None):
        self.text = text
        self.bwt = bwt
        self.ssa = ssa
        self.csa = csa
        self.plcp = plcp
        self.bidir = bidir
        self.seed = int(seed)
        self.meta = dict(meta) if meta else {}

    # ------------------------------------------------------------ building

    @classmethod
    def build(cls, records, construction="sa", sample_rate=None,
              csa_eps=None, bidirectional=False, seed=None):
        if construction not in _BUILDERS:
            raise ValueError("unknown construction %r" % construction)
        text = records if isinstance(records, Text) else Text(list(records))
        seed = resolve_seed(seed)
        bwt = _BUILDERS[construction](text)
        ssa = SuccinctSuffixArray(bwt, sample_rate)
        csa = None
        if csa_eps is not None:
            if text.m != 1:
                raise ValueError("layered lookup needs a single document")
            csa = LayeredCsa(text, eps=float(csa_eps))
        bidir = plcp = None
        if bidirectional:
            bidir = BidirIndex(text, seed=seed)
            if text.m == 1:
                plcp = build_plcp(bidir)
        meta = {"bidirectional": bool(bidirectional),
                "sample_rate": int(ssa.r),
                "csa_eps": float(csa_eps) if csa_eps is not None else None}
        return cls(text, bwt, ssa, csa, plcp, bidir, seed, meta)

    # --------------------------------------------------------- persistence

    def save(self, path):
        sections = [("meta", encode_state(self.meta)),
                    ("text", encode_state(self.text.state())),
                    ("bwt", encode_state(self.bwt.state())),
                    ("samples", encode_state(self.ssa.state()))]
        if self.csa is not None:
            sections.append(("csa", encode_state(self.csa.state())))
        if self.plcp is not None:
            sections.append(("plcp", encode_state({"values": self.plcp})))
        if self.bidir is not None:
            sections.append(("bidirectional",
                             encode_state(self.bidir.state())))
        write_sections(path, sections, self.seed)

    @classmethod
    def load(cls, path):
        sections, seed = read_sections(path)
        for required in ("meta", "text", "bwt", "samples"):
            if required not in sections:
                raise ValueError("container is missing the %r section"
                                 % required)
        meta = decode_state(sections["meta"])
        text = Text.from_state(decode_state(sections["text"]))
        bwt = BwtString.from_state(decode_state(sections["bwt"]))
        ssa = SuccinctSuffixArray.from_state(decode_state(sections["samples"]))
        csa = plcp = bidir = None
        if "csa" in sections:
            csa = LayeredCsa.from_state(decode_state(sections["csa"]))
        if "plcp" in sections:
            plcp = np.ascontiguousarray(
                decode_state(sections["plcp"])["values"], np.int64)
        if "bidirectional" in sections:
            bidir = BidirIndex.from_state(decode_state(
                sections["bidirectional"]))
        return cls(text, bwt, ssa, csa, plcp, bidir, seed, meta)

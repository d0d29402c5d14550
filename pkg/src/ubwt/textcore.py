"""Text container: maps one or more records onto a dense integer alphabet.

With m records, record i (1-based) is closed by its own terminator symbol
with code m - i, so terminators occupy codes [0, m) in reverse record order
and real characters occupy codes [m, m + sigma) in sorted character order.
The concatenation of all encoded records therefore ends with code 0, the
unique global minimum.
"""

import bisect

import numpy as np


class Text:
    """Encoded text; positions are 1-based over the concatenation."""

    def __init__(self, records, _decoded=None):
        if _decoded is not None:
            self.codes, self.record_lens, self.chars = _decoded
        else:
            records = [str(r) for r in records]
            if not records:
                raise ValueError("need at least one record")
            if any(len(r) == 0 for r in records):
                raise ValueError("records must be nonempty")
            m = len(records)
            alphabet = sorted(set("".join(records)))
            self.chars = alphabet
            cmap = {c: m + k for k, c in enumerate(alphabet)}
            parts = []
            lens = []
            for i, rec in enumerate(records, 1):
                arr = np.fromiter((cmap[c] for c in rec), np.int64, len(rec))
                parts.append(arr)
                parts.append(np.array([m - i], np.int64))
                lens.append(len(rec) + 1)
            self.codes = np.concatenate(parts)
            self.record_lens = np.array(lens, np.int64)
        self.m = int(len(self.record_lens))
        self.sigma = len(self.chars)
        self.alphabet_size = self.m + self.sigma
        self.n = int(self.codes.shape[0])
        self.record_starts = np.concatenate(
            [[0], np.cumsum(self.record_lens)])[:-1] + 1

    # ------------------------------------------------------------- queries

    def symbol(self, pos):
        """Code at 1-based position pos."""
        return int(self.codes[pos - 1])

    def is_separator_code(self, code):
        return code < self.m

    def record_of(self, pos):
        """1-based record index containing 1-based position pos."""
        idx = bisect.bisect_right(self.record_starts.tolist(), pos) - 1
        return idx + 1

    def record_bounds(self, rec):
        """(start, end) global 1-based positions of record rec, separator
        included."""
        s = int(self.record_starts[rec - 1])
        return s, s + int(self.record_lens[rec - 1]) - 1

    def separator_code(self, rec):
        return self.m - rec

    def c_array(self):
        """C[c] = number of symbols with code < c, length alphabet_size+1."""
        C = np.zeros(self.alphabet_size + 1, np.int64)
        np.add.at(C, self.codes + 1, 1)
        return np.cumsum(C)

    def cyclic_predecessor(self, pos):
        """Code preceding pos within its record, wrapping to the separator."""
        rec = self.record_of(pos)
        s, e = self.record_bounds(rec)
        return int(self.codes[e - 1]) if pos == s else int(self.codes[pos - 2])

    def decode_code(self, code):
        """Character for a real code; separators map to '#'. """
        if code < self.m:
            return "#"
        return self.chars[code - self.m]

    def decode_slice(self, lo, hi):
        """Characters of positions lo..hi (1-based, inclusive)."""
        return "".join(self.decode_code(int(c)) for c in self.codes[lo - 1:hi])

    def records(self):
        out = []
        for r in range(1, self.m + 1):
            s, e = self.record_bounds(r)
            out.append("".join(self.chars[int(c) - self.m]
                               for c in self.codes[s - 1:e - 1]))
        return out

    def reversed_text(self):
        """Text with every record reversed (same record order)."""
        return Text([r[::-1] for r in self.records()])

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return (isinstance(other, Text)
                and np.array_equal(self.codes, other.codes)
                and np.array_equal(self.record_lens, other.record_lens)
                and self.chars == other.chars)

    # -------------------------------------------------------- persistence

    def state(self):
        return {"codes": self.codes,
                "record_lens": self.record_lens,
                "chars": np.array([ord(c) for c in self.chars], np.int64)}

    @classmethod
    def from_state(cls, st):
        chars = [chr(int(x)) for x in np.asarray(st["chars"]).tolist()]
        return cls(None, _decoded=(
            np.ascontiguousarray(st["codes"], np.int64),
            np.ascontiguousarray(st["record_lens"], np.int64),
            chars))


def encode_text(records):
    """Encode one string or a list of record strings."""
    if isinstance(records, str):
        records = [records]
    return Text(records)


def read_fasta(path):
    """Record strings from a FASTA file; headers start records."""
    records = []
    cur = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith(">"):
                if cur:
                    records.append("".join(cur))
                    cur = []
            else:
                cur.append(line)
    if cur:
        records.append("".join(cur))
    if not records:
        raise ValueError("no records found")
    return records


def read_raw(path):
    """Whole file as a single record, trailing newline stripped."""
    with open(path, "r", encoding="utf-8") as fh:
        data = fh.read()
    if data.endswith("\n"):
        data = data[:-1]
    if not data:
        raise ValueError("empty input")
    return [data]

"""Command-line front end: build an index container, then query it.

Exit codes: 0 on success, 1 when a query is outside the domain of the
loaded index (wrong document count, out-of-range coordinates, bad
parameter values), 2 for usage and input/output errors.  Tabular output
is tab-separated with one record per line; counts and statistics print
one integer per line; kernels print a single float.
"""

import sys

import click

from .analysis import (kmer_kernel, matching_statistics_det,
                       maximal_exact_matches, maximal_repeats,
                       maximal_unique_matches, minimal_absent_words,
                       substring_kernel)
from .bidirectional import BidirIndex, build_ds, build_plcp
from .container import IndexContainer, resolve_seed


def _fail(code, message):
    click.echo("ubwt: %s" % message, err=True)
    sys.exit(code)


def _read_records(path, fmt):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = fh.read()
    except OSError as exc:
        _fail(2, "cannot read %s: %s" % (path, exc))
    if fmt == "fasta":
        records = []
        current = None
        for line in data.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith(">"):
                if current is not None:
                    records.append("".join(current))
                current = []
            elif current is None:
                _fail(2, "%s: sequence data before the first header" % path)
            else:
                current.append(line)
        if current is not None:
            records.append("".join(current))
        records = [r for r in records if r]
        if not records:
            _fail(2, "%s: no sequences found" % path)
        return records
    if data.endswith("\n"):
        data = data[:-1]
    if not data:
        _fail(2, "%s: empty input" % path)
    return [data]


@click.group()
def main():
    """Succinct text index: build containers and run queries on them."""


@main.command()
@click.argument("input", type=click.Path(exists=True, dir_okay=False))
@click.argument("output", type=click.Path(dir_okay=False))
@click.option("--fasta", "fmt", flag_value="fasta",
              help="Parse INPUT as FASTA; each sequence is one document.")
@click.option("--raw", "fmt", flag_value="raw", default=True,
              help="Treat INPUT as one document (default; one trailing "
                   "newline is dropped).")
@click.option("--bidirectional", is_flag=True,
              help="Also build the reverse-side structures.")
@click.option("--sample-rate", type=int, default=None,
              help="Keep every r-th suffix-array value.")
@click.option("--csa-eps", type=float, default=None,
              help="Also build the layered lookup with this accuracy knob.")
@click.option("--construction",
              type=click.Choice(["naive", "sa", "linear"]), default="sa",
              show_default=True, help="Transform construction route; all "
              "routes store identical bytes.")
def build(input, output, fmt, bidirectional, sample_rate, csa_eps,
          construction):
    """Index the text in INPUT and write the container to OUTPUT."""
    records = _read_records(input, fmt)
    try:
        container = IndexContainer.build(
            records, construction=construction, sample_rate=sample_rate,
            csa_eps=csa_eps, bidirectional=bidirectional,
            seed=resolve_seed())
        container.save(output)
    except (ValueError, OSError) as exc:
        _fail(2, str(exc))


@main.group()
@click.argument("index", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def query(ctx, index):
    """Run one query against the container INDEX."""
    try:
        ctx.obj = IndexContainer.load(index)
    except (ValueError, OSError) as exc:
        _fail(2, "%s: %s" % (index, exc))


def _single_document(container):
    if container.text.m != 1:
        _fail(1, "this query needs a single-document index (found %d "
                 "documents)" % container.text.m)
    return container.text.records()[0]


def _bidir_of(container):
    if container.bidir is not None:
        return container.bidir
    return BidirIndex(container.text, seed=container.seed)


@query.command()
@click.argument("pattern")
@click.pass_obj
def count(container, pattern):
    """Number of occurrences of PATTERN."""
    click.echo(container.ssa.count(pattern))


@query.command()
@click.argument("pattern")
@click.pass_obj
def locate(container, pattern):
    """All occurrences of PATTERN as doc<TAB>pos lines, 1-based."""
    codes = container.bwt.encode_chars(pattern)
    iv = container.bwt.pattern_interval(codes) if codes is not None else None
    if iv is None:
        return
    text = container.text
    hits = []
    for row in range(iv[0], iv[1] + 1):
        pos = container.ssa.sa_value(row)
        doc = text.record_of(pos)
        hits.append((doc, pos - int(text.record_starts[doc - 1]) + 1))
    for doc, pos in sorted(hits):
        click.echo("%d\t%d" % (doc, pos))


@query.command()
@click.argument("pos", type=int)
@click.argument("length", type=int)
@click.option("--doc", type=int, default=1, show_default=True,
              help="Document to read from, 1-based.")
@click.pass_obj
def extract(container, pos, length, doc):
    """LENGTH characters of a document starting at POS (1-based)."""
    text = container.text
    if not 1 <= doc <= text.m:
        _fail(1, "document %d out of range" % doc)
    limit = int(text.record_lens[doc - 1]) - 1
    if pos < 1 or length < 1 or pos + length - 1 > limit:
        _fail(1, "extract range [%d, %d] outside document of length %d"
              % (pos, pos + length - 1, limit))
    start = int(text.record_starts[doc - 1]) + pos - 1
    click.echo(container.ssa.substring(start, start + length - 1))


@query.command()
@click.option("--threads", type=int, default=None,
              help="Split the traversal over this many workers.")
@click.pass_obj
def maxrep(container, threads):
    """Maximal repeats as pos<TAB>len lines."""
    for pos, ln in maximal_repeats(container.text, threads=threads):
        click.echo("%d\t%d" % (pos, ln))


@query.command()
@click.pass_obj
def mum(container):
    """Maximal unique matches as id<TAB>doc<TAB>pos<TAB>len lines."""
    if container.text.m < 2:
        _fail(1, "maximal unique matches need at least two documents")
    for mid, doc, pos, ln in maximal_unique_matches(container.text.records()):
        click.echo("%d\t%d\t%d\t%d" % (mid, doc, pos, ln))


@query.command()
@click.argument("other")
@click.option("--min-len", type=int, default=1, show_default=True,
              help="Smallest match length to report.")
@click.pass_obj
def mem(container, other, min_len):
    """Maximal exact matches with OTHER as pos1<TAB>pos2<TAB>len lines."""
    s = _single_document(container)
    try:
        matches = maximal_exact_matches(s, other, min_len=min_len)
    except ValueError as exc:
        _fail(1, str(exc))
    for p1, p2, ln in matches:
        click.echo("%d\t%d\t%d" % (p1, p2, ln))


@query.command()
@click.pass_obj
def maw(container):
    """Minimal absent words as pos<TAB>len<TAB>symbol lines."""
    for pos, ln, sym in minimal_absent_words(container.text):
        click.echo("%d\t%d\t%s" % (pos, ln, sym))


@query.command()
@click.argument("other")
@click.option("--tau", type=int, default=1, show_default=True,
              help="Occurrence threshold.")
@click.pass_obj
def ms(container, other, tau):
    """Matching statistics of OTHER against the indexed document."""
    s = _single_document(container)
    try:
        arrays = matching_statistics_det(s, other, tau=tau)
    except ValueError as exc:
        _fail(1, str(exc))
    for v in arrays.values:
        click.echo(int(v))


@query.command()
@click.option("--tau", type=int, default=1, show_default=True,
              help="Occurrence threshold.")
@click.pass_obj
def ds(container, tau):
    """Distinguishing statistics of the indexed document."""
    _single_document(container)
    try:
        arrays = build_ds(_bidir_of(container), tau=tau)
    except ValueError as exc:
        _fail(1, str(exc))
    for v in arrays.values:
        click.echo(int(v))


@query.command()
@click.pass_obj
def plcp(container):
    """Permuted LCP array, one value per text position."""
    _single_document(container)
    values = container.plcp
    if values is None:
        values = build_plcp(_bidir_of(container))
    for v in values:
        click.echo(int(v))


@query.command()
@click.argument("other")
@click.option("-k", "--k", "k", type=int, default=None,
              help="Window length for the fixed-length kernel.")
@click.option("--substring", is_flag=True,
              help="Use the all-lengths kernel instead of a fixed k.")
@click.option("--probabilities", is_flag=True,
              help="Weight counts as occurrence probabilities.")
@click.pass_obj
def kernel(container, other, k, substring, probabilities):
    """Cosine similarity between the indexed document and OTHER."""
    s = _single_document(container)
    try:
        if substring:
            value = substring_kernel(s, other, probabilities=probabilities)
        elif k is None:
            _fail(1, "either -k or --substring is required")
        else:
            value = kmer_kernel(s, other, k, probabilities=probabilities)
    except ValueError as exc:
        _fail(1, str(exc))
    click.echo(value)


if __name__ == "__main__":
    main()

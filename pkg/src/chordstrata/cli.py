"""Command line interface.

Exit codes: 0 success, 1 invariant failure, 2 usage error, 3 near-degenerate
polynomial, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_NUMERIC = 4

OUT_DIR_ENV = "CHORDSTRATA_OUT"


def _out_path(name: str | None) -> Path | None:
    if name is None:
        return None
    p = Path(name)
    base = os.environ.get(OUT_DIR_ENV)
    return p if p.is_absolute() or not base else Path(base) / p


def _emit(text: str, out: str | None) -> None:
    path = _out_path(out)
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def cmd_atlas(args) -> int:
    from .atlas import enumerate_all, format_census

    atlas = enumerate_all(args.degree, max_codim=args.codim, jobs=args.jobs)
    print(format_census(atlas))
    if args.out:
        doc = {
            "census": atlas.table(),
            "signatures": {str(k): [s.key for s in atlas.by_codim(k)] for k in atlas.census()},
        }
        _emit(json.dumps(doc, indent=1, sort_keys=True) + "\n", args.out)
    if args.codim is None and atlas.euler_sum() != 0:
        print("invariant failure: euler sum is not zero", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_nerve_build(args) -> int:
    from .io import write_nerve
    from .nerve import build_nerve

    cx = build_nerve(args.degree, jobs=args.jobs)
    _emit(write_nerve(cx), args.out)
    return EXIT_OK


def cmd_nerve_check(args) -> int:
    from .nerve import build_nerve, nc_structures, quadrangle_violations, symmetry_report

    cx = build_nerve(args.degree, jobs=args.jobs)
    bad = quadrangle_violations(cx)
    print(f"cells by dimension: {cx.f_vector()}")
    print(f"quadrangle violations: {len(bad)}")
    for line in bad[:20]:
        print(f"  {line}")
    ok = not bad
    if args.degree >= 3:
        ncs = nc_structures(args.degree)
        sizes = [len(nc.generic()) for nc in ncs]
        print(f"NC structures: {len(ncs)}, generic members {sizes}")
    rep = symmetry_report(cx)
    for name, good in rep["automorphisms"].items():
        print(f"automorphism {name}: {'ok' if good else 'FAILED'}")
        ok &= good
    if "chambers" in rep:
        print(f"Q-cycle {rep['q_cycle']}, chambers {rep['chambers']}")
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_q_table(args) -> int:
    from .nerve import q_table

    table = q_table(args.d_from, args.d_to)
    for d, rows in table.items():
        print(f"d={d}")
        for row in rows:
            print(f"  {row}")
    return EXIT_OK


def cmd_q_pieces(args) -> int:
    from .nerve import q_cover, q_diagrams, q_piece
    from .signature import notation

    for i in range(len(q_diagrams(args.degree))):
        piece = q_piece(args.degree, i)
        print(f"Q{i} {notation(piece.q)}: {len(piece.members)} signatures")
        for s in sorted(piece.members):
            print(f"  {notation(s)}")
    cover = q_cover(args.degree)
    print(f"covered {cover['covered']} of {cover['generic']} generic signatures")
    return EXIT_OK


def cmd_classify(args) -> int:
    from .signature import notation
    from .tracer import NearDegenerate, TracingError, degeneracy_margin, parse_polynomial, trace

    try:
        p = parse_polynomial(args.poly)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    margin = degeneracy_margin(p)
    try:
        dr = trace(p, tol=args.tol, step=args.step)
    except NearDegenerate as exc:
        print(f"near-degenerate: {exc}")
        print(f"margin {margin:.12g}")
        return EXIT_DEGENERATE
    except TracingError as exc:
        print(f"tracing failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sig = dr.signature
    print(sig.key)
    print(f"notation {notation(sig)}")
    print(f"class {sig.kind()}")
    print(f"margin {margin:.12g}")
    return EXIT_OK


def _load_path(path: str, samples: int):
    """Path file: JSON list of samples, each a list of roots as [re, im] pairs.

    With ``{"coefficients": [P0, P1]}`` the straight segment between two
    coefficient lists is sampled instead.
    """
    import numpy as np

    from .tracer import parse_polynomial

    doc = json.loads(Path(path).read_text())
    if isinstance(doc, dict) and "coefficients" in doc:
        a, b = (parse_polynomial(c).array for c in doc["coefficients"])
        return [np.roots((1 - t) * a + t * b) for t in np.linspace(0, 1, samples)]
    return [np.array([complex(x, y) for x, y in row]) for row in doc]


def cmd_braid(args) -> int:
    from .braid import AmbiguousMatching, PerturbationNeeded, braid_word, track_roots

    try:
        traj = track_roots(_load_path(args.path, args.samples))
        word = braid_word(traj)
    except (AmbiguousMatching, PerturbationNeeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(str(word) or "(empty)")
    print("permutation " + " ".join(str(x) for x in word.permutation()))
    return EXIT_OK


def cmd_render(args) -> int:
    from .io import read_signature, render_drawing, render_signature
    from .tracer import NearDegenerate, parse_polynomial, trace

    text = Path(args.input).read_text()
    if args.what == "signature":
        svg = render_signature(read_signature(text))
    else:
        try:
            svg = render_drawing(trace(parse_polynomial(text.strip())))
        except NearDegenerate as exc:
            print(f"near-degenerate: {exc}", file=sys.stderr)
            return EXIT_DEGENERATE
    _emit(svg, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from .tracer import DEFAULT_STEP, DEFAULT_TOL

    ap = argparse.ArgumentParser(prog="chordstrata", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    atlas = sub.add_parser("atlas", help="enumerate signatures")
    asub = atlas.add_subparsers(dest="action", required=True)
    en = asub.add_parser("enumerate")
    en.add_argument("--degree", type=int, required=True)
    en.add_argument("--codim", type=int)
    en.add_argument("--out")
    en.add_argument("--jobs", type=int, default=1)
    en.set_defaults(func=cmd_atlas)

    nerve = sub.add_parser("nerve", help="inclusion diagram")
    nsub = nerve.add_subparsers(dest="action", required=True)
    nb = nsub.add_parser("build")
    nb.add_argument("--degree", type=int, required=True)
    nb.add_argument("--out", required=True)
    nb.add_argument("--jobs", type=int, default=1)
    nb.set_defaults(func=cmd_nerve_build)
    nc = nsub.add_parser("check")
    nc.add_argument("--degree", type=int, required=True)
    nc.add_argument("--jobs", type=int, default=1)
    nc.set_defaults(func=cmd_nerve_check)

    q = sub.add_parser("q", help="Q-diagrams")
    qsub = q.add_subparsers(dest="action", required=True)
    qt = qsub.add_parser("table")
    qt.add_argument("--from", dest="d_from", type=int, default=3)
    qt.add_argument("--to", dest="d_to", type=int, default=7)
    qt.set_defaults(func=cmd_q_table)
    qp = qsub.add_parser("pieces")
    qp.add_argument("--degree", type=int, required=True)
    qp.set_defaults(func=cmd_q_pieces)

    cl = sub.add_parser("classify", help="signature of a polynomial")
    cl.add_argument("--poly", required=True, help='coefficients, highest first, e.g. "1 0 -1"')
    cl.add_argument("--tol", type=float, default=DEFAULT_TOL)
    cl.add_argument("--step", type=float, default=DEFAULT_STEP)
    cl.set_defaults(func=cmd_classify)

    br = sub.add_parser("braid", help="braid word of a root path")
    br.add_argument("--path", required=True)
    br.add_argument("--samples", type=int, default=400)
    br.set_defaults(func=cmd_braid)

    rd = sub.add_parser("render", help="SVG output")
    rd.add_argument("what", choices=["signature", "drawing"])
    rd.add_argument("--in", dest="input", required=True)
    rd.add_argument("--out", required=True)
    rd.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

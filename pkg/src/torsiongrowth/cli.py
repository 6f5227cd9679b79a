"""Command-line driver.

Exit codes: 0 every check passed, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import coloring, pipeline, polytope
from .coloring import ColoringError, FacetColoring
from .polytope import Polytope, PolytopeError

log = logging.getLogger("torsiongrowth")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
METHODS = ("rs", "cells", "both")
CSV_FIELDS = ("p", "index", "b1", "invariant_factors", "two_rank", "log2_lb", "elapsed_ms")


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class RunConfig:
    polytope: str = "builtin:dodecahedron"
    coloring: str = "auto"
    max_p: int = 3
    method: str = "rs"
    out: str | None = None
    threads: int = 1
    facet: str | None = None

    def __post_init__(self):
        if self.max_p < 1:
            raise InputError("--max-p must be at least 1")
        if self.method not in METHODS:
            raise InputError(f"--method must be one of {METHODS}")
        if self.threads < 1:
            raise InputError("--threads must be at least 1")


def _load_polytope(cfg: RunConfig) -> Polytope:
    try:
        p = polytope.load(cfg.polytope)
    except (OSError, json.JSONDecodeError, PolytopeError) as exc:
        raise InputError(f"cannot load polytope {cfg.polytope!r}: {exc}") from None
    report = polytope.validate(p)
    if not report:
        raise InputError("invalid polytope: " + "; ".join(report.problems))
    return p


def _load_coloring(cfg: RunConfig, p: Polytope) -> FacetColoring | None:
    if cfg.coloring == "auto":
        return None
    try:
        return FacetColoring.from_json(json.loads(Path(cfg.coloring).read_text()), p)
    except (OSError, json.JSONDecodeError, ColoringError) as exc:
        raise InputError(f"cannot load colouring {cfg.coloring!r}: {exc}") from None


def _facet(cfg: RunConfig, p: Polytope) -> int | None:
    if cfg.facet is None:
        return None
    try:
        return p.index(cfg.facet)
    except PolytopeError as exc:
        raise InputError(str(exc)) from None


def _write(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _base(cfg: RunConfig) -> tuple[dict, pipeline.Base | None]:
    p = _load_polytope(cfg)
    c = _load_coloring(cfg, p)
    try:
        return pipeline.verify_base(p, c, _facet(cfg, p))
    except PolytopeError as exc:
        raise InputError(str(exc)) from None
    except ColoringError as exc:
        raise VerificationFailed(str(exc)) from None


def cmd_verify_base(cfg: RunConfig) -> int:
    cert, _ = _base(cfg)
    _write(cfg.out, json.dumps(cert, indent=2, sort_keys=True) + "\n")
    for name, ok in cert["checks"].items():
        log.info("%-28s %s", name, "pass" if ok else "FAIL")
    for problem in cert["coloring_certificate"]["problems"]:
        log.error("%s", problem)
    return EXIT_OK if cert["passed"] else EXIT_FAIL


def _growth_worker(args) -> dict:
    p, c, f, fp, q, method = args
    base = pipeline.make_base(p, c, f, fp)
    row = pipeline.growth_row(base, q, method)
    row["results"] = {k: (v.betti, v.invariant_factors) for k, v in row["results"].items()}
    return row


def cmd_growth(cfg: RunConfig) -> int:
    cert, base = _base(cfg)
    if base is None:
        log.error("base verification failed; run verify-base for details")
        return EXIT_FAIL
    jobs = [(base.polytope, base.coloring, base.facet, base.opposite, q, cfg.method) for q in range(1, cfg.max_p + 1)]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.threads, len(jobs))) as pool:
            rows = list(pool.map(_growth_worker, jobs))
    else:
        rows = [_growth_worker(j) for j in jobs]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    ok = True
    compare = []
    for row in rows:
        h = row["profile"]
        writer.writerow(
            [
                row["p"],
                row["index"],
                h.betti,
                " ".join(map(str, h.invariant_factors)),
                h.two_rank,
                h.log2_torsion_lower_bound,
                row["elapsed_ms"],
            ]
        )
        bound = h.two_rank >= row["p"]
        index_ok = row["index"] == len(base.complex) * row["p"]
        log.info("p=%d index=%d H1=%s two_rank=%d %s", row["p"], row["index"], h, h.two_rank, "pass" if bound else "FAIL")
        ok &= bound and index_ok and row["agree"]
        if cfg.method == "both":
            (rb, rf), (cb, cf) = row["results"]["rs"], row["results"]["cells"]
            compare.append([row["p"], rb, " ".join(map(str, rf)), cb, " ".join(map(str, cf)), row["agree"]])
            if not row["agree"]:
                log.error("p=%d: methods disagree (rs %s vs cells %s)", row["p"], row["results"]["rs"], row["results"]["cells"])
    _write(cfg.out, buf.getvalue())
    if compare:
        cbuf = io.StringIO()
        cw = csv.writer(cbuf, lineterminator="\n")
        cw.writerow(["p", "rs_b1", "rs_invariant_factors", "cells_b1", "cells_invariant_factors", "agree"])
        cw.writerows(compare)
        if cfg.out and cfg.out != "-":
            out = Path(cfg.out)
            out.with_name(out.stem + ".compare.csv").write_text(cbuf.getvalue())
        else:
            sys.stderr.write(cbuf.getvalue())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_color_search(cfg: RunConfig) -> int:
    p = _load_polytope(cfg)
    f = _facet(cfg, p)
    f = 0 if f is None else f
    try:
        fp = polytope.opposite_facet(p, f)
        c = coloring.search_admissible(p, f, fp)
    except (PolytopeError, ColoringError) as exc:
        log.error("no admissible colouring: %s", exc)
        return EXIT_FAIL
    cert = coloring.certify(p, c, f, fp)
    _write(cfg.out, json.dumps(c.to_json(p), indent=2) + "\n")
    if not cert.passed:
        for problem in cert.problems:
            log.error("%s", problem)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {"verify-base": cmd_verify_base, "growth": cmd_growth, "color-search": cmd_color_search}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsiongrowth", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--polytope", default="builtin:dodecahedron", help="JSON path or builtin:dodecahedron")
        sp.add_argument("--coloring", default="auto", help="colouring JSON path or 'auto'")
        sp.add_argument("--facet", default=None, help="base facet name (default: the facet coloured delta, else the first)")
        sp.add_argument("--max-p", type=int, default=3)
        sp.add_argument("--method", default="rs", help="rs, cells or both")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--threads", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = RunConfig(
            polytope=args.polytope,
            coloring=args.coloring,
            max_p=args.max_p,
            method=args.method,
            out=args.out,
            threads=args.threads,
            facet=args.facet,
        )
        return COMMANDS[args.command](cfg)
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except VerificationFailed as exc:
        log.error("%s", exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

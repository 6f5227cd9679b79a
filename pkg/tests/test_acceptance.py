"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed together at the
end of the pytest run (see conftest.py).  Run standalone with
``python3 tests/test_acceptance.py``.
"""

import csv
import json
import random
import sys
import time
from contextlib import contextmanager

import pytest

from snf_oracle import naive_snf
from torsiongrowth import chambers, covers, surfaces
from torsiongrowth.cli import main
from torsiongrowth.zsmith import SparseIntMatrix, snf, snf_with_transforms

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS.append(f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})".splitlines()[0])
        raise
    RESULTS.append(f"PASS criterion {number}: {title} [{time.perf_counter() - t0:.2f} s]")


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_criterion_1_base_certificate(tmp_path):
    with criterion(1, "base-case certificate"):
        out = tmp_path / "cert.json"
        t0 = time.perf_counter()
        code = main(["verify-base", "--out", str(out)])
        elapsed = time.perf_counter() - t0
        cert = json.loads(out.read_text())
        cc = cert["coloring_certificate"]
        assert code == 0
        assert cc["image_rank"] == 7
        assert cert["polytope"]["vertices"] == 20 and cc["C2_vertex_independent"]
        assert cc["O_orientable"]
        assert cc["retraction_r"] and cc["retraction_r_prime"]
        assert cc["SN_witness"] is not None
        assert all(cert["checks"].values()) and cert["passed"]
        assert elapsed < 5, f"took {elapsed:.2f} s"


def test_criterion_2_surface_invariants(base):
    with criterion(2, "surface invariants of S and S'"):
        t0 = time.perf_counter()
        cx = base.complex
        s = surfaces.surface_complex(cx, chambers.wall_of(cx, 0, base.facet))
        sp = surfaces.surface_complex(cx, chambers.wall_of(cx, 0, base.opposite))
        h, hp = surfaces.surface_h1(s), surfaces.surface_h1(sp)
        elapsed = time.perf_counter() - t0
        assert s.counts == (8, 20, 10) and s.euler_characteristic() == -2
        assert surfaces.orientable(s)
        assert (h.betti, h.invariant_factors) == (4, ())
        assert sp.counts == (4, 10, 5) and sp.euler_characteristic() == -1
        assert not surfaces.orientable(sp)
        assert (hp.betti, hp.invariant_factors) == (2, (2,))
        assert elapsed < 5, f"took {elapsed:.2f} s"


def test_criterion_3_torsion_growth(base, tmp_path):
    with criterion(3, "two_rank(H1(M_p)) >= p and index 128p for p = 1, 2, 3"):
        t0 = time.perf_counter()
        out = tmp_path / "growth.csv"
        assert main(["growth", "--max-p", "3", "--out", str(out)]) == 0
        rows = read_rows(out)
        assert [int(r["p"]) for r in rows] == [1, 2, 3]
        for r in rows:
            p = int(r["p"])
            assert int(r["two_rank"]) >= p
            assert int(r["log2_lb"]) >= p
            assert int(r["index"]) == 128 * p
            # index of the cover group inside the kernel: chamber-0 fibre of the orbit
            a = covers.cover_action(base.complex, base.s_wall, p)
            orbit = a.orbit(0)
            assert len(orbit) == 128 * p
            assert sum(1 for x in orbit if a.chamber_level(x)[0] == 0) == p
        elapsed = time.perf_counter() - t0
        assert elapsed < 600, f"took {elapsed:.2f} s"


def test_criterion_4_cross_method(base):
    with criterion(4, "Reidemeister-Schreier and cellular H1 agree at p = 1, 2"):
        for p in (1, 2):
            a = covers.cover_action(base.complex, base.s_wall, p)
            rs = covers.homology_via_rs(a, base.presentation)
            cells = covers.homology_via_cells(a, base.complex)
            assert (rs.betti, rs.invariant_factors) == (cells.betti, cells.invariant_factors), p


def test_criterion_5_topological_sanity(base):
    with criterion(5, "Euler characteristic, involutions, psi cocycle"):
        cx = base.complex
        for f in range(12):
            perm = cx.gluing_permutation(f)
            assert all(perm[perm[i]] == i for i in range(len(cx)))
        for p in (1, 2, 3):
            a = covers.cover_action(cx, base.s_wall, p)
            assert a.is_involutive()
            assert covers.cover_cells(a, cx).euler_characteristic() == 0
        assert len(base.presentation.relators) == 42 and len(cx) == 128
        for q in cx.chambers:
            for r in base.presentation.relators:
                assert chambers.psi(base.s_wall, q, r) == 0


def test_criterion_6_snf_oracle():
    with criterion(6, "SNF matches the elementary-operations oracle; 50 unimodular certificates"):
        rng = random.Random(20240611)
        matrices = []
        for _ in range(200):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            matrices.append([[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)])
        for A in matrices:
            assert snf(SparseIntMatrix.from_dense(A)) == naive_snf(A), A
        for A in matrices[:50]:
            sparse = SparseIntMatrix.from_dense(A)
            cert = snf_with_transforms(sparse)
            assert cert.verify(sparse), A
            assert cert.diagonal == naive_snf(A)


def _strip_timing_csv(path):
    return [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in read_rows(path)]


def test_criterion_7_determinism(tmp_path):
    with criterion(7, "identical outputs across repeated runs and thread counts 1 and 8"):
        runs = {}
        for tag, threads in (("a", "1"), ("b", "1"), ("c", "8")):
            out = tmp_path / f"{tag}.csv"
            assert main(["growth", "--max-p", "3", "--method", "both", "--threads", threads, "--out", str(out)]) == 0
            runs[tag] = (_strip_timing_csv(out), (tmp_path / f"{tag}.compare.csv").read_text())
        assert runs["a"] == runs["b"] == runs["c"]
        certs = []
        for tag in ("x", "y"):
            out = tmp_path / f"{tag}.json"
            assert main(["verify-base", "--out", str(out)]) == 0
            cert = json.loads(out.read_text())
            cert.pop("elapsed_ms")
            certs.append(json.dumps(cert, sort_keys=True))
        assert certs[0] == certs[1]
        colours = []
        for tag in ("u", "v"):
            out = tmp_path / f"{tag}.col.json"
            assert main(["color-search", "--out", str(out)]) == 0
            colours.append(out.read_bytes())
        assert colours[0] == colours[1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", *sys.argv[1:]]))

"""End-to-end runs shared by the command line and the acceptance tests."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import chambers, coloring, covers, polytope, surfaces
from .coloring import FacetColoring
from .polytope import Polytope
from .racg import RacgPresentation, presentation


@dataclass
class Base:
    """Everything the covers need, built once per (polytope, colouring)."""

    polytope: Polytope
    coloring: FacetColoring
    facet: int
    opposite: int
    presentation: RacgPresentation
    complex: chambers.ChamberComplex
    s_wall: chambers.CoorientedWall


def choose_facets(p: Polytope, c: FacetColoring | None, facet: int | None) -> tuple[int, int]:
    if facet is None:
        facet = coloring.base_facet(p, c) if c is not None else 0
    return facet, polytope.opposite_facet(p, facet)


def make_base(p: Polytope, c: FacetColoring, f: int, fp: int) -> Base:
    """Rebuild the chamber complex and co-oriented S wall without re-checking."""
    cx = chambers.build(p, c)
    co = chambers.coorient(chambers.wall_of(cx, 0, f))
    if not isinstance(co, chambers.CoorientedWall):
        raise ValueError("the wall of the base facet is not co-orientable")
    return Base(p, c, f, fp, presentation(p), cx, co)


def _surface_summary(cx, wall) -> dict:
    s = surfaces.surface_complex(cx, wall)
    co = chambers.coorient(wall)
    F, E, V = s.counts
    return {
        "pentagons": wall.pentagons,
        "F": F,
        "E": E,
        "V": V,
        "euler": s.euler_characteristic(),
        "orientable": surfaces.orientable(s),
        "coorientable": isinstance(co, chambers.CoorientedWall),
        "H1": surfaces.surface_h1(s).as_dict(),
    }


def verify_base(p: Polytope, c: FacetColoring | None = None, facet: int | None = None) -> tuple[dict, Base | None]:
    """Run every base-manifold check; returns (certificate, Base or None)."""
    t0 = time.perf_counter()
    f, fp = choose_facets(p, c, facet)
    if c is None:
        c = coloring.search_admissible(p, f, fp)
    cert = coloring.certify(p, c, f, fp)
    out: dict = {
        "polytope": {
            "name": p.name,
            "facets": p.n_facets,
            "adjacent_pairs": len(p.edges),
            "vertices": len(p.vertices),
        },
        "base_facet": p.facets[f],
        "opposite_facet": p.facets[fp],
        "coloring": c.to_json(p),
        "coloring_certificate": cert.as_dict(p),
    }
    checks = {"coloring_certificate": cert.passed}
    base = None
    if cert.passed:
        pres = presentation(p)
        cx = chambers.build(p, c)
        counts = cx.cell_counts()
        involutive = True
        for g in range(p.n_facets):
            perm = cx.gluing_permutation(g)
            involutive &= all(perm[perm[i]] == i for i in range(len(cx)))
        out["chambers"] = {
            "count": len(cx),
            "cell_counts_VEFC": counts,
            "euler": cx.euler_characteristic(),
            "gluings_involutive": involutive,
        }
        s_wall = chambers.wall_of(cx, 0, f)
        sp_wall = chambers.wall_of(cx, 0, fp)
        S = _surface_summary(cx, s_wall)
        Sp = _surface_summary(cx, sp_wall)
        out["walls"] = {"S": S, "S_prime": Sp}
        co = chambers.coorient(s_wall)
        checks.update(
            {
                "image_rank_7": cert.image_rank == 7,
                "chambers_2_to_rank": len(cx) == 1 << cert.image_rank,
                "euler_zero": cx.euler_characteristic() == 0,
                "gluings_involutive": involutive,
                "S_orientable_genus_2": S["orientable"] and S["euler"] == -2,
                "S_coorientable": S["coorientable"],
                "S_prime_nonorientable": not Sp["orientable"],
                "S_prime_has_Z2": 2 in Sp["H1"]["invariant_factors"],
            }
        )
        if isinstance(co, chambers.CoorientedWall):
            failures = chambers.cocycle_failures(co, pres)
            witness = chambers.find_psi_witness(co)
            out["psi"] = {
                "cocycle_failures": len(failures),
                "relator_chamber_pairs": len(pres.relators) * len(cx),
                "surjectivity_witness": None if witness is None else [p.facets[g] for g in witness],
            }
            checks["psi_cocycle"] = not failures
            checks["psi_surjective"] = witness is not None
            base = Base(p, c, f, fp, pres, cx, co)
    out["checks"] = checks
    out["passed"] = all(checks.values()) and base is not None
    out["elapsed_ms"] = round((time.perf_counter() - t0) * 1000)
    return out, base if out["passed"] else None


def growth_row(base: Base, p: int, method: str) -> dict:
    """H_1 of M_p by the requested method(s), with timing."""
    t0 = time.perf_counter()
    action = covers.cover_action(base.complex, base.s_wall, p)
    row: dict = {"p": p, "index": action.n_points}
    results = {}
    if method in ("rs", "both"):
        results["rs"] = covers.homology_via_rs(action, base.presentation)
    if method in ("cells", "both"):
        results["cells"] = covers.homology_via_cells(action, base.complex)
    row["profile"] = results["rs"] if "rs" in results else results["cells"]
    row["agree"] = len({(r.betti, r.invariant_factors) for r in results.values()}) == 1
    row["results"] = results
    row["elapsed_ms"] = round((time.perf_counter() - t0) * 1000)
    return row

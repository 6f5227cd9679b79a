import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsiongrowth import chambers
from torsiongrowth.chambers import ChamberError, CoorientedWall, NonCoorientable, coorient, psi, wall_of
from torsiongrowth.coloring import FacetColoring
from torsiongrowth.polytope import from_pairs
from torsiongrowth.racg import presentation

words = st.lists(st.integers(0, 11), max_size=30).map(tuple)


def closure_oracle(cx, q, f):
    # plain BFS over the two defining relations
    colors, nb = cx.colors, cx.polytope.neighbours
    seen = {(q, f)}
    todo = [(q, f)]
    while todo:
        q, f = todo.pop()
        for g in (f, *nb[f]):
            c = (q ^ colors[g], f)
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return seen


def test_chamber_count(complex_):
    assert len(complex_) == 128


def test_cell_counts(complex_):
    C = len(complex_)
    assert complex_.cell_counts() == [C * 20 // 8, C * 30 // 4, C * 12 // 2, C]
    assert complex_.cell_counts() == [320, 960, 768, 128]
    assert complex_.euler_characteristic() == 0


def test_gluings_are_fixed_point_free_involutions(complex_):
    for f in range(12):
        perm = complex_.gluing_permutation(f)
        assert all(perm[perm[i]] == i and perm[i] != i for i in range(128))


def test_two_chambers():
    seg = from_pairs("pair", 1, ["a", "b"], [])
    cx = chambers.build(seg, FacetColoring(1, (1, 1)))
    assert len(cx) == 2


def test_zero_colour_rejected(dodeca):
    with pytest.raises(ChamberError):
        chambers.build(dodeca, FacetColoring(7, (0,) + (1,) * 11))


def test_wall_sizes_match_oracle(complex_, s_wall, s_prime_wall):
    assert s_wall.cells == closure_oracle(complex_, 0, 0)
    assert s_prime_wall.cells == closure_oracle(complex_, 0, 11)
    assert s_wall.pentagons == 8
    assert s_prime_wall.pentagons == 4


def test_walls_partition_all_cells(complex_):
    walls = complex_.walls()
    cells = [c for w in walls for c in w.cells]
    assert len(cells) == len(set(cells)) == 128 * 12
    rng = random.Random(7)
    for w in rng.sample(walls, 10):
        assert w.cells == closure_oracle(complex_, *w.seed)


def test_wall_contains_crossing(complex_):
    rng = random.Random(1)
    for _ in range(20):
        q, f = rng.choice(complex_.chambers), rng.randrange(12)
        assert (q ^ complex_.colors[f], f) in wall_of(complex_, q, f).cells


def test_s_is_coorientable(s_wall):
    co = coorient(s_wall)
    assert isinstance(co, CoorientedWall)
    assert co.sign[s_wall.seed] == 1
    cx = s_wall.complex
    for (q, f), e in co.sign.items():
        assert co.sign[(q ^ cx.colors[f], f)] == -e
        for g in cx.polytope.neighbours[f]:
            assert co.sign[(q ^ cx.colors[g], f)] == e


def test_s_prime_is_one_sided(s_prime_wall):
    out = coorient(s_prime_wall)
    assert isinstance(out, NonCoorientable)
    # the witness cycle plus the closing relation has odd parity
    cx = s_prime_wall.complex
    cycle = list(out.cycle)
    a, b, closing_parity = out.closing
    assert cycle[0] == b and cycle[-1] == a
    parity = closing_parity
    for x, y in zip(cycle, cycle[1:]):
        rel = dict(cx.relations(x))
        assert y in rel
        parity ^= rel[y]
    assert parity == 1


def test_single_pair_wall_is_coorientable():
    # two chambers glued along one facet with no neighbours
    seg = from_pairs("pair", 1, ["a", "b"], [])
    cx = chambers.build(seg, FacetColoring(1, (1, 1)))
    w = wall_of(cx, 0, 0)
    assert w.cells == {(0, 0), (1, 0)}
    assert isinstance(coorient(w), CoorientedWall)


def test_psi_vanishes_on_relators(base):
    assert chambers.cocycle_failures(base.s_wall, base.presentation) == []
    pres = base.presentation
    assert all(psi(base.s_wall, q, r) == 0 for q in base.complex.chambers for r in pres.relators)


def test_psi_of_double_crossing(base):
    assert psi(base.s_wall, 0, (0, 0)) == 0
    assert psi(base.s_wall, 0, (0,)) in (1, -1)


def test_psi_surjectivity_witness(base, colouring):
    w = chambers.find_psi_witness(base.s_wall)
    assert w is not None
    assert colouring.hom()(w) == 0
    assert abs(psi(base.s_wall, 0, w)) == 1


def path_home(cx, q):
    """Some word taking chamber q back to chamber 0."""
    prev = {q: None}
    todo = [q]
    while 0 not in prev:
        nxt = []
        for x in todo:
            for g in range(len(cx.colors)):
                y = x ^ cx.colors[g]
                if y not in prev:
                    prev[y] = (x, g)
                    nxt.append(y)
        todo = nxt
    out, x = [], 0
    while prev[x] is not None:
        x, g = prev[x]
        out.append(g)
    return tuple(reversed(out))


@given(u=words, v=words)
def test_psi_additive_on_kernel(base, colouring, u, v):
    phi = colouring.hom()
    u = u + path_home(base.complex, phi(u))
    assert phi(u) == 0
    s = base.s_wall
    assert psi(s, 0, u + v) == psi(s, 0, u) + psi(s, 0, v)


@given(w=words)
def test_psi_of_inverse(base, w):
    # each letter is an involution, so the inverse word is the reversal
    s = base.s_wall
    q = 0
    for g in w:
        q ^= base.complex.colors[g]
    assert psi(s, q, tuple(reversed(w))) == -psi(s, 0, w)


def test_presentation_relators_count(base):
    assert len(presentation(base.polytope).relators) == 42

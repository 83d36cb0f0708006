from fractions import Fraction

import pytest

try:
    import rowmarkov as rm
except ImportError:
    import _rowmarkov as rm


def frac(s):
    return Fraction(s)


def test_poset_basics():
    p = rm.Poset.chain(3)
    assert len(p) == 3
    assert p.labels() == ["e1", "e2", "e3"]
    assert p.leq("e1", "e3")
    assert not p.leq("e3", "e1")
    assert p.width() == 1
    assert len(p.order_ideals()) == 4

    v = rm.Poset(["a", "b", "c"], [("a", "b"), ("a", "c")])
    assert v.width() == 2
    assert len(v.order_ideals()) == 5
    assert v.linear_extension()[0] == "a"


def test_poset_errors():
    with pytest.raises(ValueError):
        rm.Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_rowmotion_chain_stationary():
    p = rm.Poset.chain(2)
    chain = rm.rowmotion_chain(p, ["1/2", "1/2"])
    assert chain.is_irreducible()
    assert chain.stationary() == ["1/7", "2/7", "4/7"]
    assert chain.stationary() == rm.stationary_weights(p, ["1/2", "1/2"])
    assert chain.mixing_time("1/4") >= 1

    rows = chain.transitions()
    for row in rows:
        assert sum(frac(x) for x in row) == 1


def test_lattices_and_semidistrim():
    h = rm.hexx(2, 1)
    assert len(h) == 5
    assert h.bottom() == "b" and h.top() == "t"
    assert h.meet("x1", "y1") == "b"
    assert h.join("x2", "y1") == "t"
    ok, reason = h.is_semidistrim()
    assert ok and reason == ""

    jl = rm.ideal_lattice(rm.Poset.antichain(2))
    assert len(jl) == 4
    assert jl.is_semidistrim()[0]

    chain = rm.semidistrim_chain(h, ["1/2", "1/2", "1/2"])
    assert chain.stationary() == rm.hexx_stationary(2, 1, ["1/2", "1/2"], ["1/2"])


def test_toggle_chain():
    members = [[], ["x"], ["y"], ["x", "y"]]
    chain = rm.toggle_chain(["x", "y"], members, ["x", "y"], ["1/3", "1/3"])
    assert chain.is_irreducible()
    pi = [frac(s) for s in chain.stationary()]
    # Stationary mass is proportional to the product of 1/p over members.
    weights = [frac(1)] + [frac(3)] * 2 + [frac(9)]
    z = sum(weights)
    assert pi == [w / z for w in weights]


def test_simulation_is_deterministic():
    p = rm.Poset.antichain(3)
    chain = rm.rowmotion_chain(p, ["1/2"] * 3)
    a = chain.simulate(chain.states[0], 50, seed=42)
    b = chain.simulate(chain.states[0], 50, seed=42)
    assert a == b
    assert len(a) == 51


def test_boolean_spectral():
    assert rm.spectrum_ok(5, "1/2")
    assert rm.moments_ok(6, "1/4", 10)
    curve = rm.lumped_tv_curve(16, "1/2", 10, 0)
    tvs = [tv for _, tv in curve]
    assert tvs[0] > 0.9
    assert tvs[-1] < 0.05
    assert rm.cutoff_upper(64, "1/2", 3.0) == pytest.approx(0.0890834, abs=1e-4)
    assert rm.cutoff_lower(64, "1/2", 2.0) == pytest.approx(0.625)
    with pytest.raises(ValueError):
        rm.cutoff_upper(64, "1/2", 0.25)

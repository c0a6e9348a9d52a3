import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammakit import bijections as bij
from gammakit import permstats as ps


def cyc(cycles, n):
    return ps.from_cycles(cycles, n)


def test_phi1_smallest_case():
    assert bij.phi1(cyc([[1, 2], [-3]], 3)) == cyc([[1, 2]], 2)


def test_phi3_reference_example():
    sigma = cyc([[1, 4, 3, -9, -8], [2, 5], [-6], [-7]], 9)
    got = bij.phi3(sigma)
    assert ps.format_cycles(ps.standardize_cycles(ps.to_cycles(got))) == "(1,2,5,4,-9)(3,6)(-7)(-8)"
    assert got == cyc([[2, 5, 4, -9, 1], [3, 6], [-7], [-8]], 9)
    assert bij.phi3_inverse(got) == sigma


def test_phi2_does_not_create_fixed_points():
    sigma = cyc([[1, -2]], 2)
    tau = bij.phi2(sigma)
    assert ps.is_derangement(tau)
    assert bij.phi2_inverse(tau) == sigma


@pytest.mark.parametrize("n", range(1, 7))
def test_block_maps(n):
    for i in range(1, n + 1):
        assert bij.dniB_failures(n, i) == [], (n, i)


@pytest.mark.parametrize("n", range(2, 6))
def test_block_sizes(n):
    for i in range(1, n + 1):
        cls = bij.TildeDClass.build(n, i)
        assert len(cls.block("B1")) == ps.count("B_tilde", n - 1, i=i - 1)


def test_phi2_image_shape():
    for n in range(2, 6):
        for i in range(1, n + 1):
            for sigma in bij.TildeDClass.build(n, i).block("B2"):
                tau = bij.phi2(sigma)
                assert not bij.singletons(tau)
                assert bij.negatives(tau) == frozenset(range(n - i + 2, n + 1))


def test_preconditions():
    with pytest.raises(bij.PreconditionError):
        bij.phi1(cyc([[1, -2]], 2))  # in B2
    with pytest.raises(bij.PreconditionError):
        bij.tag((1, -2))  # fixed point
    assert bij.tag((-2, 1)) == "B2"
    with pytest.raises(bij.PreconditionError):
        bij.tag((3, -1, 2))  # negative set {1} is not the top block {3}
    with pytest.raises(bij.PreconditionError):
        bij.tag((2, -1))  # negative set {1} is not the top block {2}


MFS_W = cyc([[1, 10, 6, 5, 7, 3, 2, 8], [4, 9]], 10)


def test_mfs_examples():
    assert bij.mfs_action(MFS_W, 3) == cyc([[1, 3, 10, 6, 5, 7, 2, 8], [4, 9]], 10)
    assert bij.mfs_action(MFS_W, 6) == cyc([[1, 6, 10, 5, 7, 3, 2, 8], [4, 9]], 10)


def test_mfs_fixes_peaks_valleys_minima():
    for letter in range(1, 11):
        if bij.classify(MFS_W, letter) in (bij.PEAK, bij.VALLEY, None):
            assert bij.mfs_action(MFS_W, letter) == MFS_W
    assert bij.classify(MFS_W, 10) == bij.PEAK
    assert bij.classify(MFS_W, 1) is None


@pytest.mark.parametrize("n", range(1, 8))
def test_mfs_involution(n):
    assert bij.mfs_involution_failures(n) == []


@pytest.mark.parametrize("n", range(1, 8))
def test_mfs_cardinality(n):
    assert bij.mfs_cardinality_failures(n) == []


perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(tuple)


@settings(max_examples=150, deadline=None)
@given(perms, st.data())
def test_mfs_toggles_class_and_keeps_cycle_type(w, data):
    letter = data.draw(st.integers(1, len(w)))
    kind = bij.classify(w, letter)
    out = bij.mfs_action(w, letter)
    assert sorted(map(len, ps.to_cycles(out))) == sorted(map(len, ps.to_cycles(w)))
    if kind == bij.CDA:
        assert bij.classify(out, letter) == bij.CDD
    elif kind == bij.CDD:
        assert bij.classify(out, letter) == bij.CDA
    assert bij.mfs_action(out, letter) == w if kind in (bij.CDA, bij.CDD) else out == w

import pytest

from groupkit import (
    GroupSpec,
    InvalidSpec,
    NotAGroup,
    SizeLimitExceeded,
    build_group,
)
from groupkit.groups import bit_indices


def test_cyclic_arithmetic(z12):
    assert z12.order == 12
    assert z12.identity == 0
    assert z12.multiply(7, 8) == 3
    assert z12.inverse[5] == 7
    assert z12.power(5, -1) == 7
    assert z12.power(2, 30) == 0
    assert z12.is_abelian()


def test_dihedral_arithmetic(d12):
    a = d12.index_of_name("a")
    b = d12.index_of_name("b")
    # b a b = a^-1, so (ba) a (ba)^-1 lands back on a rotation
    assert d12.multiply(b, b) == d12.identity
    assert d12.multiply(d12.multiply(b, a), b) == d12.power(a, -1)
    assert d12.names[d12.multiply(a, b)] == "ba^5"
    assert not d12.is_abelian()
    assert d12.center().names() == ["1", "a^3"]


def test_symmetric_composition(s3):
    assert s3.order == 6
    t = s3.index_of_name("(1 2)")
    c = s3.index_of_name("(1 2 3)")
    # apply (1 2) first, then (1 2 3)
    assert s3.names[s3.multiply(t, c)] == "(1 3)"
    assert s3.names[s3.multiply(c, t)] == "(2 3)"


def test_direct_product():
    g = build_group({"kind": "direct_product", "factors": [
        {"kind": "cyclic", "n": 2},
        {"kind": "cyclic", "n": 3},
    ]})
    assert g.order == 6
    assert g.is_abelian()
    assert g.names[0] == "(0,0)"
    x = g.index_of_name("(1,1)")
    assert g.power(x, 6) == g.identity
    assert g.power(x, 3) != g.identity  # order 6, so it generates


def test_permutation_kind_closure():
    g = build_group({"kind": "permutation", "degree": 3,
                     "generators": [[[1, 2], [2, 3]]]})
    # one 3-cycle generates C3
    assert g.order == 3
    assert set(g.generator_names) == {"a"}


def test_cayley_kind_roundtrip():
    table = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    g = build_group({"kind": "cayley", "table": table, "names": ["e", "x", "y"]})
    assert g.multiply(1, 2) == 0
    assert g.name_of(1) == "x"


def test_spec_roundtrip():
    spec = GroupSpec.from_dict({"kind": "dihedral", "n": 4})
    assert GroupSpec.from_dict(spec.to_dict()) == spec
    assert GroupSpec.from_inline("cyclic:5").n == 5
    with pytest.raises(InvalidSpec):
        GroupSpec.from_inline("cayley:3")
    with pytest.raises(InvalidSpec):
        GroupSpec.from_inline("cyclic:zero")


@pytest.mark.parametrize("bad", [
    {"kind": "nonsense", "n": 3},
    {"kind": "cyclic", "n": 0},
    {"kind": "cyclic", "n": -2},
    {"kind": "symmetric", "n": "three"},
    {"kind": "cayley", "table": [[0, 1], [1, 0], [0, 1]], "names": ["e", "x", "y"]},
    {"kind": "cayley", "table": [[0, 1], [1, 5]], "names": ["e", "x"]},
    {"kind": "cayley", "table": [[0, 1], [1, 0]], "names": ["e", "e"]},
    {"kind": "cayley", "table": [[0, 1], [1, 0]], "names": ["e"]},
    {"kind": "direct_product", "factors": []},
    {"kind": "permutation", "degree": 2, "generators": [[[1, 3]]]},
    {"kind": "permutation", "degree": 3, "generators": [[[1, 1]]]},
])
def test_invalid_specs(bad):
    with pytest.raises(InvalidSpec):
        build_group(bad)


def test_not_a_group_no_identity():
    # subtraction mod 3: Latin square, no two-sided identity
    table = [[0, 2, 1], [1, 0, 2], [2, 1, 0]]
    with pytest.raises(NotAGroup, match="identity"):
        build_group({"kind": "cayley", "table": table, "names": ["p", "q", "r"]})


def test_not_a_group_not_latin():
    table = [[0, 0], [1, 1]]
    with pytest.raises(NotAGroup):
        build_group({"kind": "cayley", "table": table, "names": ["e", "x"]})


def test_not_a_group_nonassociative():
    # a loop of order 5: Latin with identity 0, every element self-inverse,
    # but (1*2)*3 = 1 while 1*(2*3) = 3
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 4, 2, 3],
        [2, 3, 0, 4, 1],
        [3, 4, 1, 0, 2],
        [4, 2, 3, 1, 0],
    ]
    with pytest.raises(NotAGroup, match="associat"):
        build_group({"kind": "cayley", "table": table,
                     "names": ["e", "p", "q", "r", "s"]})


def test_order_cap(monkeypatch):
    with pytest.raises(SizeLimitExceeded):
        build_group({"kind": "cyclic", "n": 5000})
    assert build_group({"kind": "cyclic", "n": 5000}, max_order=5000).order == 5000
    monkeypatch.setenv("GROUPKIT_MAX_ORDER", "30")
    with pytest.raises(SizeLimitExceeded):
        build_group({"kind": "cyclic", "n": 31})
    monkeypatch.setenv("GROUPKIT_MAX_ORDER", "bogus")
    with pytest.raises(InvalidSpec):
        build_group({"kind": "cyclic", "n": 3})


def test_symmetric_order_cap():
    with pytest.raises(SizeLimitExceeded):
        build_group({"kind": "symmetric", "n": 8})  # 40320 > default cap


def test_element_set_algebra(d12):
    s = d12.subset([0, 1, 2])
    t = d12.subset([2, 3])
    assert len(s) == 3
    assert list(s) == [0, 1, 2]
    assert (s & t).indices() == (2,)
    assert (s | t).indices() == (0, 1, 2, 3)
    assert (s - t).indices() == (0, 1)
    assert s.with_element(5).indices() == (0, 1, 2, 5)
    assert t <= (s | t)
    assert not s <= t
    assert s.complement() & s == d12.empty_set()
    assert s.complement() | s == d12.full_set()
    assert 1 in s and 3 not in s
    assert bool(s) and not bool(d12.empty_set())
    assert s != t
    assert hash(s) == hash(d12.subset([2, 1, 0]))
    assert s.names() == ["1", "a", "a^2"]


def test_element_set_group_mismatch(z12, d12):
    with pytest.raises(Exception):
        z12.subset([0, 1]) & d12.subset([0, 1])


def test_subset_bounds(z12):
    with pytest.raises(Exception):
        z12.subset([12])
    with pytest.raises(Exception):
        z12.subset([-1])


def test_is_subgroup(d12):
    assert d12.trivial_subgroup().is_subgroup()
    assert d12.full_set().is_subgroup()
    assert d12.subset([0, 3]).is_subgroup()  # {1, a^3}
    assert not d12.subset([0, 1]).is_subgroup()  # a has order 6
    assert not d12.empty_set().is_subgroup()


def test_generated_subgroup(d12):
    a = d12.index_of_name("a")
    b = d12.index_of_name("b")
    assert len(d12.subset([a]).generated_subgroup()) == 6
    assert d12.subset([a, b]).generated_subgroup() == d12.full_set()
    assert d12.empty_set().generated_subgroup() == d12.trivial_subgroup()


def test_conjugation(d12):
    a = d12.index_of_name("a")
    b = d12.index_of_name("b")
    assert d12.conjugate(a, b) == d12.power(a, -1)
    rot = d12.subset(range(6))
    assert rot.conjugate_by(b) == rot  # rotations are normal


def test_center_of_abelian(z12):
    assert z12.center() == z12.full_set()


def test_bit_indices():
    assert list(bit_indices(0)) == []
    assert list(bit_indices(0b101001)) == [0, 3, 5]


def test_name_lookup(d12, s3):
    assert d12.index_of_name("ba^2") == d12.index_of_name(" ba^2 ")
    assert d12.index_of_name("zz") is None
    # loose whitespace match for permutation names
    assert s3.index_of_name("(12)") == s3.index_of_name("(1 2)")


def test_large_group_sampled_validation():
    # above the full-check bound the validator samples; still a group
    g = build_group({"kind": "cyclic", "n": 300})
    assert g.order == 300
    assert g.multiply(299, 1) == 0

import pytest

import qlat


def test_lattice_info():
    info = qlat.lattice_info("K3")
    assert info["rank"] == 22
    assert info["signature"] == [19, 3]
    assert info["even"]
    assert abs(int(info["determinant"])) == 1


def test_lattice_as_dict():
    info = qlat.lattice_info({"rank": 1, "half_gram": [[3]]})
    assert info["discriminant_group"]["torsion"] == [6]


def test_isotropic_lines_and_neighbors():
    assert len(qlat.isotropic_lines("H+H", 3)) == 16
    nbs = qlat.neighbors("H", 5)
    assert len(nbs) == 2
    assert {tuple(n["line"]) for n in nbs} == {(0, 1), (1, 0)}


def test_shrink_and_grow_round_trip():
    pair = qlat.index_p_sublattices({"rank": 1, "half_gram": [[1]]}, 2)[0]
    embedding = [[1], [1], [0], [0], [0], [0]]
    fiber = qlat.shrink("H+H+H", embedding, pair)
    assert len(fiber) == 20
    tilde = [[row[0] * pair["tilde_basis"][0][0]] for row in embedding]
    back = qlat.grow(fiber[0], tilde)
    assert back["lattice"]["power"] == 0
    assert back["survivors"] == 1


def test_k3_isogeny():
    out = qlat.k3_isogeny(1, 2)
    assert out["degree"] == 4
    assert out["xi"][:2] == [1, 4]


def test_kernels():
    k = qlat.qisog_kernel(1, 2, 1, 3)
    assert k["source_divisors"] == [1, 1, 1, 3]
    assert k["target_divisors"] == [3, 1, 1, 1]
    c = qlat.cokernel_m(1, [[0], [0], [1]], 2)
    assert c["inj1_index"] == 2 and c["iso2"]


def test_verify():
    assert "witt-extension" in qlat.suite_names()
    report = qlat.verify("quadric-counts")
    assert report["failures"] == 0


def test_errors():
    with pytest.raises(qlat.PreconditionError):
        qlat.neighbors({"rank": 1, "half_gram": [[1]]}, 2)
    with pytest.raises(qlat.QlatError):
        qlat.lattice_info("nonsense")

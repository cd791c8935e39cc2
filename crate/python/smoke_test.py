"""Smoke test for the dynres Python module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`
or `maturin build -m crates/py/Cargo.toml` followed by `pip install`.
"""

import dynres


def main() -> None:
    e6 = dynres.Format(1, 5, 6, 2)
    assert e6.is_dynkin and "E6" in e6.diagram_type, e6.diagram_type
    assert e6.family_count() == 2
    assert e6.decomposition()["dimension"] == 78
    bettis = [c["betti"] for c in e6.double_cosets()]
    assert bettis.count([1, 5, 6, 2]) == 2, bettis

    affine = dynres.Format(1, 6, 8, 3)
    assert not affine.is_dynkin and "affine" in affine.diagram_type

    grid = dynres.table(2, 2)
    assert grid == [[2, 2], [2, 3], [3, 6]], grid

    report = dynres.betti_check([1, 4, 4, 1], [2] * 4, [3] * 4, [4])
    assert report["degree_zero_generator"] is False and not report["passes"]

    chart = dynres.SchubertChart(dynres.Format(1, 5, 5, 1), "w0")
    complex_ = chart.resolution()
    assert complex_.format == [1, 5, 5, 1] and complex_.is_minimal
    again = dynres.Complex.from_json(complex_.to_json())
    assert again.to_json() == complex_.to_json()
    assert again.validate()["acyclic"] == "yes"
    label = again.classify()
    assert label["kind"] == "coset" and label["betti"] == [1, 5, 5, 1], label

    try:
        dynres.Format(1, 6, 8, 3).family_count()
    except dynres.DynresError:
        pass
    else:
        raise AssertionError("non-Dynkin family count should fail")

    print("python smoke test passed")


if __name__ == "__main__":
    main()

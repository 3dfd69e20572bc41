"""Smoke test for the bannai_ito extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import bannai_ito as bi


def main():
    p = bi.BIParams(1, 2, "1/2", "1/4")
    assert p.h == "11/4"
    assert [p.eigenvalue(n) for n in range(3)] == ["11/4", "-15/4", "19/4"]
    for n in range(6):
        b = p.recurrence(n)
        assert b == p.hypergeometric(n) == p.from_operator(n), n
        assert b[-1] == "1/1"
    rel = p.check_relations(6)
    assert rel["summary"]["failed"] == 0

    r = bi.RacahParams("1/4", "1/3", "1/2", 2)
    assert r.mu4 == "49/12"
    ids = r.identifications()
    assert (ids.rho1, ids.rho2, ids.r1, ids.r2) == ("5/12", "13/6", "1/12", "23/12")
    assert r.k3_diagonal() == ["13/12", "-25/12", "37/12"]
    rep = r.representation()
    assert rep["b"][0] == "-20/19" and rep["u_squared"][0] == "930/361"
    assert r.verify()["summary"]["failed"] == 0
    weights = ids.weights(2)
    assert len(weights) == 3 and all(w > 0 for _, w in weights)
    assert abs(sum(w for _, w in weights) - 1.0) < 1e-12
    assert r.tensor_oracle(3)["summary"]["failed"] == 0

    assert bi.dirac_check("1/2", "1/3", "1/5", 3)["summary"]["failed"] == 0
    suite = bi.bi_relation_suite(seed=bi.DEFAULT_SEED, tuples=5, maxdeg=6)
    assert suite["summary"]["failed"] == 0

    try:
        bi.BIParams("0.5", 0, 0, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("decimal input accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()

"""Smoke test for the `couplings` extension module.

Build and run from the workspace root:

    python3 python/build.py
    python3 python/smoke_test.py
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import couplings  # noqa: E402


def main():
    uniform = couplings.Instance(
        ["a1", "a2"],
        ["b1", "b2"],
        {"a1": Fraction(1, 2), "a2": "1/2"},
        {"b1": "0.5", "b2": Fraction(1, 2)},
        [("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2")],
    )
    assert uniform.p == {"a1": Fraction(1, 2), "a2": Fraction(1, 2)}

    res = couplings.check(uniform)
    assert res.feasible and res.certificate is None

    res = couplings.couple(uniform, forest=True)
    assert res.stats["is_forest"] and res.stats["support_size"] <= 3
    assert sum(res.coupling.values()) == 1

    stranded = couplings.Instance.from_json(
        json.dumps(
            {
                "A": ["a1", "a2"],
                "B": ["b1", "b2"],
                "P": {"a1": "1/2", "a2": "1/2"},
                "P_prime": {"b1": "1", "b2": "0"},
                "R": [["a1", "b1"], ["a2", "b2"]],
            }
        )
    )
    res = couplings.check(stranded, algorithm="bruteforce")
    assert res.status == "infeasible"
    assert res.certificate.violating_set == ["a2"]
    assert res.certificate.deficiency == Fraction(1, 2)

    assert couplings.minimal_deficiency(stranded) == Fraction(1, 2)
    res = couplings.couple(stranded, epsilon=Fraction(1, 2), algorithm="blowup")
    assert res.stats["relation_mass"] == Fraction(1, 2)

    star = couplings.Instance(
        ["a1", "a2", "a3"],
        ["b1", "b2", "b3"],
        {x: Fraction(1, 3) for x in ["a1", "a2", "a3"]},
        {y: Fraction(1, 3) for y in ["b1", "b2", "b3"]},
        [("a1", "b1"), ("a2", "b1"), ("a3", "b1"), ("a3", "b2"), ("a3", "b3")],
    )
    assert couplings.matching(star).certificate.violating_set == ["a1", "a2"]
    assert len(couplings.matching(star, k=1).matching) == 2

    try:
        couplings.Instance(["a"], ["b"], {"a": "1"}, {"b": "1/2"}, [("a", "c")])
    except couplings.CouplingError as e:
        assert "DanglingRelationPair" in str(e)
    else:
        raise AssertionError("dangling pair accepted")

    report = couplings.selftest(size=4, count=50, seed=3)
    assert report["passed"], report["failures"]

    print("python smoke test: ok")


if __name__ == "__main__":
    main()

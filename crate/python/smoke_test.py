"""Smoke test for the affine_avoid extension module."""

import affine_avoid as aa


def main() -> None:
    w = aa.AffinePermutation([-9, 4, 11])
    assert w.n == 3 and w.window == [-9, 4, 11]
    assert w(0) == 8 and w(4) == -6
    assert w.contains("24351")
    positions, values = w.find([2, 4, 3, 5, 1])
    assert len(positions) == 5 and [w(i) for i in positions] == values
    assert w.cone_coords() == ([1, 1], [4, 2])
    assert aa.AffinePermutation.identity(3).length() == 0

    bott = aa.bott_series(3)
    assert bott.expand(4) == [1, 3, 6, 9, 12]

    s = aa.series("321", 3)
    assert str(s["avoiders"]) == "(1 + 2*x + 3*x^2) / (1 - x)"
    assert s["containers"] + s["avoiders"] == bott
    assert s["avoiders"].behavior()["kind"] == "EventuallyPeriodic"

    avoiders, containers = aa.enumerate("321", 3, 10)
    assert avoiders == s["avoiders"].expand(10)
    assert [a + c for a, c in zip(avoiders, containers)] == bott.expand(10)

    c = aa.classify("4321", 3)
    assert c["kind"] == "Unbounded" and c["agreement"]
    assert aa.classify("24351", 3)["kind"] == "Periodic"

    sys = aa.inequality_system("24351", 3, [2, 3, 2, 2, 1])
    assert "1*t1 + -1*c1 + -1*c2 + -1*c3 + -1*c4 >= 0" in sys["system"].splitlines()
    assert sys["integer_feasible"]

    assert aa.strand_assignments("321", 3) == [[3, 2, 1]]
    assert aa.normalize_pattern([7, 1, 0, 4]) == [4, 2, 1, 3]

    results = aa.check(["bott", "abacus"])
    assert len(results) == 3 and all(r[2] for r in results)

    try:
        aa.series("33", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("repeated entries accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()

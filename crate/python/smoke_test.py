"""Smoke test for the hyperlines_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import json
import sys

import hyperlines_py as h

EXAMPLE41 = "y4 + y1*y4 - y2^2 - y3^2 - y1*y2^2 - 2*y2*y3*y4 - y4^3"
LINE = "1,0,0,0,0;0,1,0,0,0"


def check(label, got, want):
    ok = got == want
    print(f"{'PASS' if ok else 'FAIL'} {label}: {got!r}" + ("" if ok else f" (want {want!r})"))
    return ok


def main():
    results = []
    g = h.Polynomial(EXAMPLE41)
    results.append(check("degree", g.degree, 3))
    results.append(check("round trip", h.Polynomial(str(g)), g))
    results.append(check("value at origin", g.evaluate([1, 0, 0, 0, 0]), "0"))

    fan = h.lines_through_point(g, "1,0,0,0,0")
    results.append(check("distinct lines", fan["distinct"], 3))
    results.append(check("bezout total", fan["bezout_total"], 6))
    mults = sorted((m["multiplicity"] for m in fan["mult_list"]), reverse=True)
    results.append(check("multiplicities", mults, [4, 1, 1]))

    red = h.reduced_at_line(g, LINE)
    results.append(check("reduced", red["reduced"], False))
    results.append(check("local length", red["length"], 4))
    results.append(check("sing on line", h.singular_points_on_line(EXAMPLE41, LINE), 2))
    results.append(check("f2 rank", h.f2_rank(g, (1, 0, 0, 0, 0)), 2))

    fam = h.Family.build("ci22", seed=7)
    results.append(check("ci22 degree", fam.equation.degree, 4))
    results.append(check("ci22 json round trip", h.Family.from_json(fam.to_json()).to_json() == fam.to_json(), True))
    report = h.probe_family(fam, trials=7, seed=7)
    results.append(check("ci22 mu", report["mu"], 4))
    results.append(check("ci22 case", h.classify(report)["case"], 2))
    results.append(check("ci22 case from json", h.classify(json.dumps(report))["case"], 2))

    try:
        h.Polynomial("x5 + 1")
        results.append(check("unknown variable raises", False, True))
    except h.HyperlinesError as e:
        results.append(check("unknown variable raises", "unknown variable" in str(e), True))

    suite = h.verify(seed=7, filter="1")
    results.append(check("suite criterion 1", suite["passed"], True))

    print(f"{sum(results)}/{len(results)} checks passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())

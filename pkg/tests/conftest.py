import itertools

from gorenstein_fans.cone import cone_from_generators
from gorenstein_fans.poset import GradedPoset


def polygon_lattice(m):
    """Face lattice of an abstract m-gon."""
    below = {"empty": [], "P": ["empty"]}
    for i in range(m):
        below[("v", i)] = ["empty"]
    for i in range(m):
        e = ("e", i)
        below[e] = ["empty", ("v", i), ("v", (i + 1) % m)]
        below["P"] += [("v", i), e]
    return GradedPoset(below)


def cone_over(vertices):
    return cone_from_generators([tuple(v) + (1,) for v in vertices])


def cross_polytope_vertices(d):
    out = []
    for i in range(d):
        for s in (1, -1):
            out.append(tuple(s if j == i else 0 for j in range(d)))
    return out


def cube_vertices(d):
    return list(itertools.product((-1, 1), repeat=d))


_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    if report.when == "call" or report.failed:
        _criteria[number] = _criteria.get(number, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if _criteria[number] else 'FAIL'}")

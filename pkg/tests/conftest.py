from fractions import Fraction

import pytest
from hypothesis import settings

from lpkenmotsu.exact import Matrix, as_vector, basis_vector, invert
from lpkenmotsu.frame import FrameManifold, curvature, koszul_connection
from lpkenmotsu.spec_io import builtin_example
from lpkenmotsu.structure import ParacontactStructure

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")

F = Fraction


class Fixture:
    def __init__(self, manifold, phi, zeta):
        self.m = manifold
        self.p = ParacontactStructure.build(manifold, phi, zeta)
        self.conn = koszul_connection(manifold)
        self.cd = curvature(manifold, self.conn)
        self.n = manifold.n

    def e(self, i):
        """0-based basis vector."""
        return basis_vector(self.n, i)


def from_doc(doc):
    m = doc.manifold()
    return Fixture(m, doc.phi, doc.zeta)


def flat_fixture(n=5):
    """Abelian frame with the built-in example's metric, phi and zeta."""
    doc = builtin_example(n)
    m = FrameManifold.from_brackets(doc.metric, [])
    return Fixture(m, doc.phi, doc.zeta)


def change_frame(fx: Fixture, p: Matrix) -> Fixture:
    """Same geometry in the frame e'_a = sum_b p[b, a] e_b."""
    n = fx.n
    pinv = invert(p)
    c = fx.m.structure
    cols = [p.column(a) for a in range(n)]
    brackets = []
    for a in range(n):
        for b in range(a + 1, n):
            v = [sum((cols[a][i] * cols[b][j] * c[i][j][k] for i in range(n) for j in range(n)), F(0))
                 for k in range(n)]
            new = pinv @ v
            brackets += [(a, b, k, new[k]) for k in range(n) if new[k]]
    metric = p.T @ fx.m.metric @ p
    m = FrameManifold.from_brackets(metric, brackets)
    return Fixture(m, pinv @ fx.p.phi @ p, pinv @ fx.p.zeta)


@pytest.fixture(scope="session")
def golden():
    return from_doc(builtin_example(5))


@pytest.fixture(scope="session")
def three():
    return from_doc(builtin_example(3))


@pytest.fixture(scope="session")
def flat():
    return flat_fixture(5)


def vec(*xs):
    return as_vector(xs)


_criteria = []


@pytest.fixture
def criterion(request):
    """``with criterion(n, summary):`` records one PASS/FAIL line for acceptance criterion n."""
    from contextlib import contextmanager

    @contextmanager
    def record(number, summary):
        try:
            yield
        except BaseException:
            _criteria.append((number, "FAIL", summary))
            print(f"FAIL criterion {number}: {summary}")
            raise
        _criteria.append((number, "PASS", summary))
        print(f"PASS criterion {number}: {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, summary in sorted(_criteria):
        terminalreporter.write_line(f"{status} criterion {number}: {summary}")

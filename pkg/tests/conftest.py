import pytest

from hopfkit.builders import kac_paljutkin, small_quantum_sl2, taft
from hopfkit.exact_math import Matrix, root_of_unity
from hopfkit.induction import induction_context
from hopfkit.module_theory import HModule
from hopfkit.yetter_drinfeld import yd_line

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def h8_pair():
    return kac_paljutkin()


@pytest.fixture(scope="session")
def h8(h8_pair):
    return h8_pair[0]


@pytest.fixture(scope="session")
def h8_incl(h8_pair):
    return h8_pair[1]


@pytest.fixture(scope="session")
def h8_ictx(h8_incl):
    return induction_context(h8_incl)


@pytest.fixture(scope="session")
def taft3():
    return taft(3)


@pytest.fixture(scope="session")
def uq3():
    return small_quantum_sl2(3)


def kchar(K, ex, ey, name=None):
    """One-dimensional module over the Klein-four group algebra."""
    return HModule(
        K,
        [Matrix.from_rows([[v]]) for v in [1, ex, ey, ex * ey]],
        name=name or "k(%d,%d)" % (ex, ey),
    )


def kline(K, deg_label, ex, ey, name=None):
    """Graded character line over the Klein-four group algebra, as a YD module."""
    deg = {"1": 0, "x": 1, "y": 2, "xy": 3}[deg_label]
    return yd_line(
        K, deg, [1, ex, ey, ex * ey], name=name or "k^%s(%d,%d)" % (deg_label, ex, ey)
    )


def h8_v1(H8, b):
    """The one-dimensional simple of H8 on which z acts by b (b^4 = 1)."""
    b = root_of_unity(1) * b if isinstance(b, int) else b
    b2 = b * b
    vals = {"1": 1, "x": b2, "y": b2, "z": b, "xy": b2 * b2, "xz": b2 * b, "yz": b2 * b, "xyz": b2 * b2 * b}
    return HModule(H8, [Matrix.from_rows([[vals[l]]]) for l in H8.basis_labels], name="V1(%s)" % b)


def h8_v2(H8):
    """The two-dimensional simple of H8."""
    zM = Matrix.from_rows([[1, 0], [0, -1]])
    xM = Matrix.from_rows([[0, -1], [-1, 0]])
    yM = Matrix.from_rows([[0, 1], [1, 0]])
    acts = {
        "1": Matrix.identity(2),
        "x": xM,
        "y": yM,
        "z": zM,
        "xy": xM * yM,
        "xz": xM * zM,
        "yz": yM * zM,
        "xyz": xM * yM * zM,
    }
    return HModule(H8, [acts[l] for l in H8.basis_labels], name="V2")


def record_criterion(number, ok, detail=""):
    _ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        status = "PASS" if ok else "FAIL"
        line = "criterion %2d: %s" % (number, status)
        if detail:
            line += "  (%s)" % detail
        terminalreporter.write_line(line)

import numpy as np
import pytest


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit(rng, n):
    v = crandn(rng, n)
    return v / np.linalg.norm(v)


def random_unitary(rng, n):
    Q, R = np.linalg.qr(crandn(rng, n, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_normal(rng, n, eigs=None):
    U = random_unitary(rng, n)
    d = crandn(rng, n) if eigs is None else np.asarray(eigs, dtype=complex)
    return U @ np.diag(d) @ U.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


S = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)
R = np.array([[0, 1], [0, 0]], dtype=complex)


ACCEPTANCE = {}


def record(criterion, ok, detail):
    ACCEPTANCE[criterion] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] #{key:>2} {detail}")

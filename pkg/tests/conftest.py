import numpy as np


def kron_operators(cutoff):
    """Full square-grid operators built from single-mode ladders.

    Acting on vectors supported on ``k + l <= cutoff`` these are exact, since
    every operator below conserves the total photon number.
    """
    dim = cutoff + 1
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    eye = np.eye(dim)
    a1, a2 = np.kron(a, eye), np.kron(eye, a)
    n1, n2 = a1.T @ a1, a2.T @ a2
    return {
        "N": n1 + n2,
        "N1": n1,
        "N2": n2,
        "Sx": a1.T @ a2 + a2.T @ a1,
        "Sy": 1j * (a2.T @ a1 - a1.T @ a2),
        "Sz": n1 - n2,
    }


def brute_mean(psi, *names):
    """``<psi| O_1 O_2 ... |psi>`` with the rightmost operator acting first."""
    ops = kron_operators(psi.cutoff)
    vec = psi.amps.ravel()
    out = vec
    for name in reversed(names):
        out = ops[name] @ out
    return np.vdot(vec, out)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

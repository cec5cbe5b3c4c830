import numpy as np
import pytest

from acdirac.core import PhysicalParams

# reference set used throughout: alpha=1, M=omega=mu_tilde=lambda2=N1=1, lambda1=0, m_l=1/2
P_STAR = PhysicalParams(alpha=1.0, M=1.0, omega=1.0, mu_tilde=1.0, lambda1=0.0, lambda2=1.0, N1=1.0)
FIG1 = PhysicalParams(alpha=0.8, M=1.0, omega=1.0, mu_tilde=2.0, lambda1=-1.0, lambda2=1.0, N1=1.0)
FIG2_LEFT = PhysicalParams(alpha=0.2, M=0.2, omega=1.0, mu_tilde=2.0, lambda1=-0.01, lambda2=5.0, N1=-3.0)


@pytest.fixture
def p_star():
    return P_STAR


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_admissible(rng, count):
    """Random parameter draws with tau2 > 0 at m_l and m_l + 1 (both shifted forms)."""
    from acdirac.core import radial_coefficients

    out = []
    while len(out) < count:
        p = PhysicalParams(
            alpha=float(rng.uniform(0.2, 1.0)),
            M=float(rng.uniform(0.3, 2.0)),
            omega=float(rng.uniform(0.1, 2.0)),
            mu_tilde=float(rng.uniform(0.2, 2.0)),
            lambda1=float(rng.uniform(-0.5, 0.5)),
            lambda2=float(rng.uniform(0.1, 2.0)),
            N1=float(rng.uniform(-2.0, 4.0)),
        )
        m_l = float(rng.choice([-1.5, -0.5, 0.5, 1.5]))
        if radial_coefficients(p, m_l + 1.0).tau2 > 0.0 and radial_coefficients(p, m_l).tau2 > 0.0:
            out.append((p, m_l))
    return out


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

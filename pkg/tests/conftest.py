import numpy as np
import pytest

from zdaudit.game import (SignalPolicy, build_params, default_params, deterministic_payoffs,
                          probabilistic_payoffs)


@pytest.fixture
def params():
    return default_params()


@pytest.fixture
def det_payoffs(params):
    return deterministic_payoffs(params)


@pytest.fixture
def prob_payoffs(params):
    return probabilistic_payoffs(params, SignalPolicy(0.6, 0.2))


@pytest.fixture
def relaxed_payoffs():
    # violates t_d > t_m + c; the only kind of instance where the diff optimum is playable
    return deterministic_payoffs(build_params(1, 0.1, 2, 0.5, 0.4, strict_mode=False))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.VERDICTS):
        ok, detail = mod.VERDICTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

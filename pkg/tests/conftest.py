from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, settings

from psl.padic import PadicField, cyclotomic_eisenstein

settings.register_profile(
    "psl", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("psl")

Q3Z3 = PadicField(3, eisenstein=cyclotomic_eisenstein(3), name="Q3(zeta3)")
Q3Z9 = PadicField(3, eisenstein=cyclotomic_eisenstein(3, 2), name="Q3(zeta9)")
Q5Z5 = PadicField(5, eisenstein=cyclotomic_eisenstein(5), name="Q5(zeta5)")
Q9Z3 = PadicField(3, f=2, eisenstein=cyclotomic_eisenstein(3), name="Q9(zeta3)")
K8 = PadicField(3, eisenstein=(3, 0, 0, 0, 3, 0, 0, 0, 1), name="Q3(zeta3,pi^(1/4))")
Q3 = PadicField(3, name="Q3")

MU_FIELDS = [Q3Z3, Q3Z9, Q5Z5, Q9Z3]


@pytest.fixture(params=MU_FIELDS, ids=lambda K: K.name)
def mu_field(request):
    return request.param


@pytest.fixture(params=[Q3Z3, Q9Z3], ids=lambda K: K.name)
def small_field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

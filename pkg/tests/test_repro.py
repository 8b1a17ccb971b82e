"""Named reproduction scenarios: every bundled check must pass."""

import pytest

from phaselens.errors import UnknownScenarioError
from phaselens.repro import SCENARIOS, run_scenario


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_scenario_passes(name):
    bundle = run_scenario(name, seed=0)
    failed = [c for c in bundle["checks"] if not c["pass"]]
    assert bundle["pass"], f"failed checks: {failed}"


def test_unknown_scenario_rejected():
    with pytest.raises(UnknownScenarioError):
        run_scenario("example_0_0")


def test_scenarios_are_seed_stable():
    a = run_scenario("example_4_5", seed=7)
    b = run_scenario("example_4_5", seed=7)
    assert a == b

"""Shared fixtures: the reference urban-macro link used across the suite."""

from dataclasses import replace

import pytest

from ofdmsee import BS_PRESETS, PaArm, build_scenario, find_pa


@pytest.fixture(scope="session")
def pa_low():
    return find_pa("SM2122-44L")


@pytest.fixture(scope="session")
def pa_high():
    return find_pa("SM1720-50")


@pytest.fixture(scope="session")
def scenario(pa_low):
    # urban macro link: G = 5 dB, alpha = 3.76, d = 200 m, -174 dBm/Hz, 10 MHz
    return build_scenario(5.0, 3.76, 0.2, -174.0, 1e7, pa_low)


@pytest.fixture(scope="session")
def scenario_high(pa_high):
    return build_scenario(5.0, 3.76, 0.2, -174.0, 1e7, pa_high)


@pytest.fixture(scope="session")
def macro_raw():
    # preset exactly as tabulated (20 W amplifier rating)
    return BS_PRESETS["macro"]


@pytest.fixture(scope="session")
def macro_power(pa_low):
    # site overhead from the preset, amplifier size from the actual PA
    return replace(BS_PRESETS["macro"], p_max_out=pa_low.p_max_out)


@pytest.fixture(scope="session")
def macro_power_high(pa_high):
    return replace(BS_PRESETS["macro"], p_max_out=pa_high.p_max_out)


@pytest.fixture(scope="session")
def arm_low(pa_low, scenario, macro_power):
    return PaArm(spec=pa_low, scenario=scenario, power=macro_power)


@pytest.fixture(scope="session")
def arm_high(pa_high, scenario_high, macro_power_high):
    return PaArm(spec=pa_high, scenario=scenario_high, power=macro_power_high)

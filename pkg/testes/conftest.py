"""Fixtures compartilhadas: drone de referência, ambiente calmo e cenários de exemplo."""

from pathlib import Path

import numpy as np
import pytest

from engine.physics.airframe import CLOCKWISE, COUNTER_CLOCKWISE, Airframe, Body, Rotor
from engine.physics.dynamics import EnvironmentSample

SCENARIOS = Path(__file__).resolve().parent.parent / "assets" / "scenarios"

# c_T·ρ·A = 1e-5 N·s² com ρ = 1.225 e A = 0.01 m²
THRUST_COEFFICIENT = 1e-5 / (1.225 * 0.01)
TORQUE_COEFFICIENT = 0.016 * THRUST_COEFFICIENT
HOVER_SPEED = float(np.sqrt(9.81 / 4e-5))  # ≈ 495.23 rad/s


def make_rotor(x, y, spin, speed=0.0):
    return Rotor((x, y, 0.0), spin, 0.01, THRUST_COEFFICIENT, TORQUE_COEFFICIENT, 1000.0, speed)


def make_reference_airframe(linear_drag=0.0):
    """1 kg, inércia (0.01, 0.01, 0.02), rotores em X a 0.2 m com giros alternados."""
    return Airframe(
        Body(1.0, (0.01, 0.01, 0.02), linear_drag),
        (
            make_rotor(0.2, 0.2, COUNTER_CLOCKWISE),
            make_rotor(0.2, -0.2, CLOCKWISE),
            make_rotor(-0.2, -0.2, COUNTER_CLOCKWISE),
            make_rotor(-0.2, 0.2, CLOCKWISE),
        ),
    )


@pytest.fixture
def airframe():
    return make_reference_airframe()


@pytest.fixture
def calm():
    return EnvironmentSample(9.81, 1.225, np.zeros(3))


@pytest.fixture
def scenarios_dir():
    return SCENARIOS

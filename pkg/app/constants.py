# ═══════════════════════════════════════════════════════════════
# CONSTANTES DO SIMULADOR
# ═══════════════════════════════════════════════════════════════
# Centraliza os valores padrão usados quando o arquivo de
# cenário não informa um campo.
# ═══════════════════════════════════════════════════════════════

from pathlib import Path

from engine.control.controller import (  # noqa: F401  (reexportados)
    DEFAULT_ATTITUDE_KD,
    DEFAULT_ATTITUDE_KP,
    DEFAULT_CAPTURE_RADIUS,
    DEFAULT_MAX_TILT,
    DEFAULT_POSITION_KD,
    DEFAULT_POSITION_KP,
)
from engine.geometry.frames import EARTH_RADIUS_M  # noqa: F401

# Física
GRAVITY = 9.81            # m/s²
AIR_DENSITY = 1.225       # kg/m³

# Relógio e gravação
DEFAULT_DT = 0.001                 # passo do integrador (s)
DEFAULT_RECORDING_INTERVAL = 0.1   # s
DEFAULT_MAX_DURATION = 60.0        # s

# Enxame
DEFAULT_MIN_SEPARATION = 2.0       # m

# Exportação CSV
CSV_HEADER = ("drone_id", "t", "px", "py", "pz", "vx", "vy", "vz",
              "qw", "qx", "qy", "qz", "wx", "wy", "wz")
CSV_DIGITS = 9

# Arquivo de cenário
SCENARIO_VERSION = 1
SCENARIO_SCHEMA = Path(__file__).resolve().parent.parent / "assets" / "scenarios" / "scenario.schema.json"

# ═══════════════════════════════════════════════════════
# EXCEÇÕES DO SIMULADOR
# ═══════════════════════════════════════════════════════
# Hierarquia única de erros usada pela engine e pela CLI.
#
# - ConfigurationError: configuração impossível de simular
# - NumericalError / DivergenceError: valores não finitos
# - InstanceTooLargeError: guarda do oráculo de força bruta
# - ScenarioError (+ subclasses): arquivo de cenário inválido
# - ExportError: falha ao exportar resultados
# ═══════════════════════════════════════════════════════

from __future__ import annotations


class EnxameError(Exception):
    """Raiz de todos os erros do simulador."""


class ConfigurationError(EnxameError, ValueError):
    """Configuração inconsistente (alocação singular, enxame vazio, etc)."""


class NumericalError(EnxameError, ValueError):
    """Entrada ou resultado com componentes não finitos."""


class DivergenceError(NumericalError):
    """
    Integração divergiu (NaN/inf no estado).

    Args:
        t: instante (s) em que o estado deixou de ser finito
    """

    def __init__(self, t: float, message: str = "") -> None:
        self.t = t
        super().__init__(message or f"estado não finito em t={t:.6f} s")


class InstanceTooLargeError(EnxameError, ValueError):
    """Instância grande demais para a busca exaustiva."""


class ExportError(EnxameError):
    """Trajetória vazia ou caminho de saída inválido."""


class ScenarioError(EnxameError, ValueError):
    """
    Erro ao carregar um arquivo de cenário.

    Atributos:
        code: identificador legível por máquina
        field_path: caminho do campo culpado, ex. `drones[0].body.mass`
    """

    code = "scenario_error"

    def __init__(self, field_path: str, message: str) -> None:
        self.field_path = field_path
        self.detail = message
        super().__init__(f"{field_path}: {message}" if field_path else message)

    def as_dict(self) -> dict:
        return {"code": self.code, "field": self.field_path, "message": self.detail}


class ScenarioParseError(ScenarioError):
    code = "parse_error"


class SchemaViolation(ScenarioError):
    code = "schema_violation"


class InvariantViolation(ScenarioError):
    code = "invariant_violation"

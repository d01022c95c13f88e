# ═══════════════════════════════════════════════════════════════
# FUNÇÕES MATEMÁTICAS AUXILIARES
# ═══════════════════════════════════════════════════════════════
# Pequenas funções numéricas compartilhadas.
#
# Inclui:
# - Saturação de valores (controle, alocação)
# - Diferença angular com envolvimento em (-π, π]
# - Interpolação linear de cores (trilhas na prévia)
# ═══════════════════════════════════════════════════════════════

import math


def clamp(valor, minimo, maximo):
    """Satura valor no intervalo [minimo, maximo]."""
    return max(minimo, min(valor, maximo))


def angle_difference(alvo, atual):
    """
    Diferença angular alvo − atual envolvida em (-π, π].

    Exemplo:
        angle_difference(math.pi - 0.1, -math.pi + 0.1)  # → -0.2
    """
    diff = math.fmod(alvo - atual, 2.0 * math.pi)
    if diff > math.pi:
        diff -= 2.0 * math.pi
    elif diff <= -math.pi:
        diff += 2.0 * math.pi
    return diff


def interpolar_cor(cor1, cor2, t):
    """
    Interpolação linear entre duas cores RGB.

    Usado em: trilhas coloridas pelo tempo na prévia do voo.

    Fórmula: cor = cor1 + t * (cor2 - cor1) para cada canal RGB

    Args:
        cor1: tupla (R, G, B) inicial
        cor2: tupla (R, G, B) final
        t: fator de interpolação (0.0 = cor1, 1.0 = cor2), saturado em [0, 1]

    Returns:
        tupla (R, G, B) interpolada
    """
    t = clamp(t, 0.0, 1.0)
    r1, g1, b1 = cor1
    r2, g2, b2 = cor2
    r = int(r1 + (r2 - r1) * t)
    g = int(g1 + (g2 - g1) * t)
    b = int(b1 + (b2 - b1) * t)
    return (r, g, b)

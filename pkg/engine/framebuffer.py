# ═══════════════════════════════════════════════════════
# FRAMEBUFFER - SET PIXEL
# ═══════════════════════════════════════════════════════
# Primitiva básica de escrita na superfície de desenho.
# Todas as primitivas de rasterização da prévia passam por
# set_pixel, que ignora pixels fora da superfície.
# ═══════════════════════════════════════════════════════

from __future__ import annotations

Color = tuple[int, int, int]


def set_pixel(superficie, x, y, cor: Color) -> None:
    """
    Pinta um pixel, se estiver dentro da superfície.

    Args:
        superficie: pygame.Surface onde desenhar
        x, y: coordenadas (convertidas para inteiro)
        cor: tupla (R, G, B)
    """
    x, y = int(x), int(y)
    if 0 <= x < superficie.get_width() and 0 <= y < superficie.get_height():
        superficie.set_at((x, y), cor)


def get_pixel(superficie, x, y) -> Color | None:
    """Cor (R, G, B) do pixel, ou None fora da superfície."""
    x, y = int(x), int(y)
    if 0 <= x < superficie.get_width() and 0 <= y < superficie.get_height():
        return tuple(superficie.get_at((x, y)))[:3]
    return None


def clear_color(superficie, cor: Color) -> None:
    superficie.fill(cor)

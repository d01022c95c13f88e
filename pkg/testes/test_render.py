import pygame
import pytest

from app.entities.drone import EventKind, SimEvent, Trajectory
from app.entities.minimap import draw_minimap, render_png
from assets import colors as color
from engine.collision import Box
from engine.errors import ExportError
from engine.fill.scanline import scanline_fill
from engine.framebuffer import clear_color, get_pixel, set_pixel
from engine.geometry.cohen_sutherland import INSIDE, LEFT, TOP, codigo_regiao, cohen_sutherland, draw_line_clipped
from engine.geometry.transform import aplica_transformacao, mundo_para_tela, rotacionar_pontos_em_torno_de
from engine.math.auxiliary import interpolar_cor
from engine.physics.dynamics import DroneState
from engine.raster.circle import draw_circle
from engine.raster.line import bresenham, desenhar_poligono

BRANCO = (255, 255, 255)
PRETO = (0, 0, 0)


@pytest.fixture
def tela():
    superficie = pygame.Surface((400, 300))
    clear_color(superficie, PRETO)
    return superficie


def pintados(superficie, cor=BRANCO):
    return {
        (x, y)
        for x in range(superficie.get_width())
        for y in range(superficie.get_height())
        if get_pixel(superficie, x, y) == cor
    }


# ─── Framebuffer ───
def test_set_pixel_outside_is_ignored(tela):
    set_pixel(tela, -1, 5, BRANCO)
    set_pixel(tela, 400, 5, BRANCO)
    assert get_pixel(tela, 400, 5) is None
    assert pintados(tela) == set()


# ─── Bresenham ───
@pytest.mark.parametrize("x0, y0, x1, y1, esperado", [
    (50, 150, 54, 150, {(x, 150) for x in range(50, 55)}),        # horizontal
    (200, 50, 200, 53, {(200, y) for y in range(50, 54)}),        # vertical
    (50, 50, 53, 53, {(50 + k, 50 + k) for k in range(4)}),       # diagonal +
    (50, 53, 53, 50, {(50 + k, 53 - k) for k in range(4)}),       # diagonal -
    (100, 100, 100, 100, {(100, 100)}),                           # ponto
])
def test_bresenham_cases(tela, x0, y0, x1, y1, esperado):
    bresenham(tela, x0, y0, x1, y1, BRANCO)
    assert pintados(tela) == esperado


def test_bresenham_steep_has_one_pixel_per_row(tela):
    bresenham(tela, 150, 50, 200, 250, BRANCO)
    linhas = sorted(y for _, y in pintados(tela))
    assert linhas == list(range(50, 251))


def test_bresenham_inverted_matches_forward(tela):
    bresenham(tela, 350, 200, 50, 100, BRANCO)
    invertida = pintados(tela)
    clear_color(tela, PRETO)
    bresenham(tela, 50, 100, 350, 200, BRANCO)
    assert pintados(tela) == invertida


def test_polygon_outline_closes(tela):
    desenhar_poligono(tela, [(50, 50), (150, 50), (150, 150), (50, 150)], BRANCO)
    assert {(50, 100), (150, 100), (100, 50), (100, 150)} <= pintados(tela)


# ─── Círculo ───
def test_circle_is_symmetric(tela):
    draw_circle(tela, 200, 150, 40, BRANCO)
    pontos = pintados(tela)
    assert {(240, 150), (160, 150), (200, 190), (200, 110)} <= pontos
    assert all((400 - x, y) in pontos and (x, 300 - y) in pontos for x, y in pontos)
    assert all(abs(((x - 200) ** 2 + (y - 150) ** 2) ** 0.5 - 40) < 1.0 for x, y in pontos)


def test_circle_radius_zero_is_a_pixel(tela):
    draw_circle(tela, 10, 10, 0, BRANCO)
    assert pintados(tela) == {(10, 10)}


# ─── Scanline ───
def test_scanline_triangle(tela):
    scanline_fill(tela, [(200, 60), (300, 200), (100, 200)], BRANCO)
    pontos = pintados(tela)
    assert (200, 150) in pontos
    assert (120, 80) not in pontos
    assert min(y for _, y in pontos) == 60
    assert max(y for _, y in pontos) == 199


def test_scanline_ignores_degenerate_polygon(tela):
    scanline_fill(tela, [(0, 0), (10, 10)], BRANCO)
    assert pintados(tela) == set()


# ─── Cohen-Sutherland ───
def test_region_codes():
    assert codigo_regiao(5, 5, 0, 0, 10, 10) == INSIDE
    assert codigo_regiao(-1, -1, 0, 0, 10, 10) == LEFT | TOP


def test_clipping():
    assert cohen_sutherland(-5, 5, 15, 5, 0, 0, 10, 10) == (True, 0, 5, 10, 5)
    assert cohen_sutherland(-5, -5, -1, -1, 0, 0, 10, 10)[0] is False


def test_clipped_line_stays_in_viewport(tela):
    assert draw_line_clipped(tela, -100, 20, 500, 20, BRANCO, (10, 0, 389, 299))
    xs = sorted(x for x, _ in pintados(tela))
    assert xs[0] == 10 and xs[-1] == 389
    assert not draw_line_clipped(tela, -100, -5, -1, -5, BRANCO, (10, 0, 389, 299))


# ─── Transformações ───
def test_world_to_screen_puts_north_up():
    m = mundo_para_tela((0.0, 0.0, 10.0, 10.0), 120, 120, 10)
    (x0, y0), (x1, y1) = aplica_transformacao(m, [(0, 0), (10, 10)])
    assert (x0, y0) == pytest.approx((10, 110))
    assert (x1, y1) == pytest.approx((110, 10))


def test_rotation_about_pivot():
    (x, y), = rotacionar_pontos_em_torno_de([(2, 1)], 1, 1, 3.141592653589793 / 2)
    assert (x, y) == pytest.approx((1, 2))


def test_color_interpolation():
    assert interpolar_cor((0, 0, 0), (200, 100, 50), 0.5) == (100, 50, 25)


# ─── Prévia ───
def _trajetoria():
    estados = [DroneState.at_rest((0.5 * k, 0.3 * k, 5), t=0.1 * k) for k in range(20)]
    evento = SimEvent(1.0, ("a",), EventKind.SEPARATION_VIOLATION, {"position": [5.0, 3.0, 5.0]})
    return Trajectory(samples={"a": estados}, events=[evento])


def test_minimap_draws_tracks_and_obstacles():
    superficie = pygame.Surface((256, 256))
    planned = {"a": [(0, 0, 5), (10, 6, 5)]}
    draw_minimap(superficie, _trajetoria(), planned, (Box((2, 0, 0), (4, 1, 8)),), capture_radius=0.5)
    cores = {get_pixel(superficie, x, y) for x in range(256) for y in range(256)}
    assert color.MAP_BG in cores
    assert color.ROCK_GRAY in cores
    assert color.EVENT_ALERT in cores
    assert color.HEADING in cores


def test_render_png_writes_image(tmp_path):
    path = tmp_path / "previa.png"
    render_png(_trajetoria(), {"a": [(0, 0, 5)]}, path, size=128)
    imagem = pygame.image.load(str(path))
    assert imagem.get_size() == (128, 128)


def test_render_png_rejects_empty_trajectory(tmp_path):
    with pytest.raises(ExportError):
        render_png(Trajectory(samples={"a": []}), {}, tmp_path / "x.png")
    with pytest.raises(ExportError):
        render_png(_trajetoria(), {}, tmp_path / "x.png", size=32)

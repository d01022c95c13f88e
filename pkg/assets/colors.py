# -*- coding: utf-8 -*-
"""
Paleta de cores da prévia do voo

Todas as cores são no formato RGB (R, G, B).
Tema: mapa noturno visto de cima.
"""

# ======================================
# FUNDO
# ======================================
MAP_BG = (15, 25, 40)             # Fundo escuro do mapa

# ======================================
# OBSTÁCULOS
# ======================================
ROCK_GRAY = (120, 120, 120)       # Pegada do obstáculo
ROCK_DARK = (70, 70, 70)          # Contorno do obstáculo

# ======================================
# ROTAS E WAYPOINTS
# ======================================
ROUTE_PLANNED = (255, 204, 92)    # Rota planejada
WAYPOINT = (255, 230, 150)        # Marca do waypoint
START = (200, 230, 255)           # Posição inicial

# ======================================
# RASTRO DE VOO (gradiente pelo tempo)
# ======================================
TRACK_START = (0, 200, 180)       # Início do voo
TRACK_END = (220, 50, 60)         # Fim do voo
HEADING = (255, 255, 255)         # Seta de proa na posição final

# ======================================
# EVENTOS
# ======================================
EVENT_ALERT = (255, 0, 0)         # Violação de separação / colisão / solo

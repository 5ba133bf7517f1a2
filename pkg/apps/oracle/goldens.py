"""
Valores publicados para conferência: contagem de elementos de matriz por n
e as quatro expressões fechadas de overlap/cinética para 3 pares.

A cinética publicada é ⟨∂²/∂x²⟩ de uma coordenada (a_1, uma direção), sem
o sinal de menos; os overlaps são totais em 3 dimensões.
"""
import math

MARKED_COUNTS = (1, 2, 4, 7, 12, 19, 30, 45, 67, 97)

THREE_PAIR_POINTS = ((1.0, 1.0), (2.0, 0.5), (1.0 / 3.0, 1.0))

PI9 = math.pi ** 9


def _row_identity(p, q):
    overlap = PI9 / (512 * (p * (p + 2 * q)) ** 4.5)
    return overlap, -PI9 * (p + q) / (512 * (p * (p + 2 * q)) ** 4.5)


def _row_fixed_first(p, q):
    overlap = PI9 / (512 * p ** 3 * (p + q) ** 3 * (p + 2 * q) ** 3)
    return overlap, -PI9 / (512 * p ** 3 * (p + q) ** 2 * (p + 2 * q) ** 3)


def _row_swapped_first(p, q):
    overlap = PI9 / (512 * p ** 3 * (p + q) ** 3 * (p + 2 * q) ** 3)
    kinetic = -PI9 * (2 * p ** 2 + 4 * p * q + q ** 2) / (1024 * p ** 3 * (p + q) ** 4 * (p + 2 * q) ** 3)
    return overlap, kinetic


def _row_three_cycle(p, q):
    chain = 4 * p ** 2 + 8 * p * q + 3 * q ** 2
    overlap = PI9 / (8 * (p * (p + 2 * q)) ** 1.5 * chain ** 3)
    kinetic = -PI9 * (4 * p ** 3 + 12 * p ** 2 * q + 9 * p * q ** 2 + q ** 3) / (
        8 * (p * (p + 2 * q)) ** 1.5 * chain ** 4
    )
    return overlap, kinetic


# (permutação dos b, fator, expressões)
THREE_PAIR_ROWS = (
    ((0, 1, 2), 1, _row_identity),
    ((0, 2, 1), -1, _row_fixed_first),
    ((1, 0, 2), -2, _row_swapped_first),
    ((1, 2, 0), 2, _row_three_cycle),
)

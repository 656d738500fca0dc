"""Equilibria of a point-charge field: the alternating square.

Four unit charges at the corners of a square, alternating in sign, have a
whole line of equilibria (the axis through the centre).  A finite census
therefore cannot bound their number, and the finder flags a curve.
"""

import numpy as np

from polyconj.fields import ChargeConfig, field_eval, find_equilibria, square_config

cfg = square_config()
print("|E| on the axis:", [float(np.linalg.norm(field_eval(cfg, [0, 0, z]))) for z in (-3, 0.5, 7)])
eq = find_equilibria(cfg)
print(f"{eq.count} distinct equilibria found, suspected_curve={eq.suspected_curve}")

two = find_equilibria(ChargeConfig([[1, 0, 0], [-1, 0, 0]], [1, 1]))
print(f"two equal charges: {two.count} equilibrium at {np.round(two.points[0], 8) + 0.0}")

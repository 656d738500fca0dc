"""The weighted inequality #r G_1 + #r p > 0 and polynomials without real roots.

For x^2 + 1 the weighted polynomial is the constant -4, so the left side
is 0.  The same happens for x^4 + x^2 + 1.  Both are recorded as
violation candidates and replay identically.
"""

from polyconj.jensen import conjwplus_check, finding_for, g_poly
from polyconj.ledger import replay_finding
from polyconj.polycore import RatPoly

for text in ("x^2 + 1", "x^4 + x^2 + 1", "x^2 - 1"):
    p = RatPoly.parse(text)
    rec = conjwplus_check(p)
    print(f"{text:>14}: G1 = {g_poly(p, 1)}  ->  {rec.observation}")
    if not rec.holds:
        print(f"{'':>14}  replay: {replay_finding(finding_for('wplus', p, rec))}")

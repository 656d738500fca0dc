"""Which (positive roots, negative roots) pairs can degree-4 sign patterns realize?

Descartes' rule allows more combinations than actually occur.  The survey
below searches every orbit of patterns; exactly one combination stays
without a witness.
"""

from polyconj.descartes import expand_survey, root_signature, survey_degree
from polyconj.polycore import RatPoly

rows = expand_survey(survey_degree(4, budget=20_000, seed=0))
for r in rows:
    if r["status"] == "OPEN":
        print(f"no witness: pattern {r['pattern']} pair {tuple(r['pair'])}")

# a realized combination comes with a certified witness
row = next(r for r in rows if r["pattern"] == "++-++" and r["pair"] == [2, 2])
w = RatPoly(row["witness"])
print(f"(2,2) for ++-++ realized by {w}; certified signature {tuple(root_signature(w))}")

"""Interleaving words of the roots of p, p', p'', ...

The combinatorial count of admissible words matches the closed formula;
random polynomials realize only some of them.
"""

from polyconj.rolle import enumerate_sequences, flat_count, realized_sequences

for n in range(2, 6):
    print(f"n={n}: {len(enumerate_sequences(n))} words, formula {flat_count(n)}")

table = realized_sequences(4, 2000, seed=0)
print("n=4 words seen in 2000 random polynomials:")
for w, c in sorted(table.counts.items(), key=lambda kv: -kv[1]):
    print(f"  {w}  {c}")
print("never seen:", table.unobserved)

"""How much does a move tell us?

Walks through the entropy model: per-piece entropy rates, the reduction
credited to each move category, and the fraction of a ply each category is
charged during search.
"""
import numpy as np

from erschess import DEFAULT_MODEL, MoveCategory, fractional_ply, parse_fen
from erschess.entropy import (classify_move, entropy, information_gain,
                              mutual_information, position_entropy)

# A fair coin carries one bit; a loaded one carries less.
print("fair coin   ", entropy([0.5, 0.5]))
print("loaded coin ", round(entropy([0.9, 0.1]), 4))

# Two correlated binary variables share information.
joint = np.array([[0.4, 0.1],
                  [0.1, 0.4]])
print("I(X;Y)      ", round(mutual_information(joint), 4), "bits")

# The model: a check removes the most uncertainty, a quiet move the least.
print()
print(f"{'category':16s} {'bits':>6s} {'ply charged':>12s}")
for cat in MoveCategory:
    bits = DEFAULT_MODEL.category_reduction[cat]
    print(f"{cat.value:16s} {bits:6.3f} {fractional_ply(DEFAULT_MODEL, cat):12.4f}")

# Whole-board uncertainty is the sum of piece entropy rates.
pos = parse_fen("1n1k1r2/pp2R3/5P2/3P4/q1pQ4/8/6PP/6BK w - - 0 1")
h0 = position_entropy(DEFAULT_MODEL, pos)
print()
print("position entropy before the sacrifice:", round(h0, 3), "bits")

line = ["d4b6", "a7b6", "g1b6"]
for uci in line:
    move = next(m for m in pos.legal_moves() if m.uci() == uci)
    cat = classify_move(pos, move)
    after = pos.push(move)
    gain = information_gain(position_entropy(DEFAULT_MODEL, pos),
                            position_entropy(DEFAULT_MODEL, after))
    print(f"  {uci}: {cat.value:14s} board entropy change {gain:+.3f} bits")
    pos = after

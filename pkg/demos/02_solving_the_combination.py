"""Finding a 13-ply queen sacrifice with a 16-unit depth budget.

With a uniform six units per move, a budget of 16 only reaches about three
plies.  Charging forcing moves less lets the same budget follow the
sacrifice all the way to mate.
"""
from erschess import SearchParams, ers_search
from erschess.board import descriptive, make_move, san
from erschess.experiments import DEFAULT_REGISTRY

pos = DEFAULT_REGISTRY.get("combination")  # certified mate in 7 first
print(DEFAULT_REGISTRY.entry("combination").epd)


def show(label, params):
    res = ers_search(pos, params)
    print(f"\n{label}: solved={res.solved} nodes={res.stats.nodes} "
          f"max ply={res.stats.max_ply_reached} value={res.value}")
    return res


show("uniform, budget 16", SearchParams(scheduler="uniform", virtual_budget=16))
res = show("continuous, divisor 1, budget 16", SearchParams(virtual_budget=16, divisor=1))

p, sans, old = pos, [], []
for m in res.principal_variation:
    sans.append(san(p, m))
    old.append(descriptive(p, m))
    p = make_move(p, m)
print("  ", " ".join(sans))
for i in range(0, len(old), 2):
    print(f"   {i // 2 + 1}. {'; '.join(old[i:i + 2])}")

# Giving informative moves less weight hides the mate at the same budget...
show("continuous, divisor 1.25, budget 16", SearchParams(virtual_budget=16, divisor=1.25))
# ...until the budget is raised.
show("continuous, divisor 1.25, budget 20", SearchParams(virtual_budget=20, divisor=1.25))

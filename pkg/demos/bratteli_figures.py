"""Write DOT files for stationary Bratteli diagrams and check bounded tail equivalence."""

import sys

from afinv.bratteli import dimension_vector, dot_export, stationary_diagram, tail_equivalent_bounded

out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
da = stationary_diagram([[5, 2], [2, 1]], 4)
db = stationary_diagram([[5, 1], [4, 1]], 4)
for name, d in (("A", da), ("B", db)):
    path = f"{out_dir}/bratteli_{name}.dot"
    with open(path, "w") as fh:
        fh.write(dot_export(d))
    print(name, [dimension_vector(d, k) for k in range(4)], "->", path)
print("tail witness A vs B at depth 10:", tail_equivalent_bounded(stationary_diagram([[5, 2], [2, 1]], 10), stationary_diagram([[5, 1], [4, 1]], 10), 10))

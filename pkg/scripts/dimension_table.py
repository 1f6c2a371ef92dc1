"""Print the fixed-subspace dimension of every catalog space under every
compatible catalog group.

Usage: python scripts/dimension_table.py
"""

from symtensor.characters import fix_dimension
from symtensor.groups import resolve_group
from symtensor.spaces import SPACES

GROUPS_2D = ("trivial", "z2", "z3", "z4", "z6", "d2", "d3", "d4", "d6", "so2", "o2")
GROUPS_3D = ("trivial", "z2", "z3", "z4", "z6", "d2", "d3", "d4", "d6",
             "cubic", "so2-e3", "o2-e3", "so3")


def main() -> None:
    for ambient, group_names in ((2, GROUPS_2D), (3, GROUPS_3D)):
        spaces = [sp for sp in SPACES.values() if sp.n == ambient]
        header = f"{'space':8s}" + "".join(f"{g:>8s}" for g in group_names)
        print(f"\nambient R^{ambient}")
        print(header)
        print("-" * len(header))
        for sp in spaces:
            cells = [fix_dimension(sp, resolve_group(g, ambient)) for g in group_names]
            print(f"{sp.name:8s}" + "".join(f"{d:8d}" for d in cells))


if __name__ == "__main__":
    main()

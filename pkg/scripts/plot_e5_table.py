"""Draw the (v, e) table of E^5: inside points, the line L, the finite set G.

    python3 scripts/plot_e5_table.py --vmax 20 --out e5_table.png
"""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from polywitness.synthesis import atlas, atlas_plotdata  # noqa: E402

STYLE = {
    "inside": dict(marker="o", color="black", s=14, label="in E^5"),
    "L": dict(marker="o", facecolors="white", edgecolors="black", s=22, label="points in L"),
    "G": dict(marker="^", color="black", s=30, label="points in G"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vmax", type=int, default=20)
    ap.add_argument("--out", default="e5_table.png")
    args = ap.parse_args()
    classes = atlas_plotdata(atlas(5, args.vmax, with_recipes=False))
    fig, ax = plt.subplots(figsize=(7, 6))
    for name, style in STYLE.items():
        pts = classes[name]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, **style)
    ax.set_xlabel("vertices v")
    ax.set_ylabel("edges e")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()

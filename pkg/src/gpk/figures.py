"""Matplotlib renderings of report data, written next to the reports.

Every figure is drawn from already-serialized report data, so the plots can
never disagree with the JSON on disk.  All output is Agg-rendered PNG.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_DPI = 150
_PNG_META = {"Software": None}  # keep version strings out of the files


def _save(fig, path):
    fig.savefig(path, dpi=_DPI, metadata=_PNG_META)
    plt.close(fig)
    return str(path)


def _enc(coeffs, p):
    v = 0
    for d in reversed(coeffs):
        v = v * p + d
    return v


def points_figure(report, path):
    """Scatter of the affine rational points in encoding coordinates."""
    from gpk.ffield import build_field

    ctx = build_field(report["field"]["p"], report["field"]["n"])
    p = ctx.p
    pts = []
    infinite = 0
    for coords in report["points"]:
        triple = [_enc(c, p) for c in coords]
        if triple[2] == 0:
            infinite += 1
            continue
        zi = ctx.inv_enc(triple[2])
        pts.append((ctx.mul_enc(triple[0], zi), ctx.mul_enc(triple[1], zi)))
    fig, ax = plt.subplots(figsize=(5, 5))
    if pts:
        ax.scatter([x for x, _ in pts], [y for _, y in pts], s=36, c="tab:blue")
    ax.set_xlabel("x encoding")
    ax.set_ylabel("y encoding")
    ax.set_title(
        f"rational points: {report['count']} total, {infinite} at infinity"
    )
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def conditions_figure(report, path):
    """Horizontal verdict bars for the five-condition report."""
    conds = report["conditions"]
    names = sorted(conds)
    vals = [1 if conds[n]["ok"] else 0 for n in names]
    colors = ["tab:green" if v else "tab:red" for v in vals]
    fig, ax = plt.subplots(figsize=(6, 0.5 * len(names) + 1.5))
    ax.barh(range(len(names)), [1] * len(names), color=colors, alpha=0.8)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels([f"({n})" for n in names])
    ax.set_xticks([])
    for i, n in enumerate(names):
        ax.text(0.5, i, "pass" if conds[n]["ok"] else "fail",
                ha="center", va="center", color="white", fontweight="bold")
    overall = "satisfied" if report["overall"] else "violated"
    ax.set_title(f"criterion verdicts: {overall}")
    fig.tight_layout()
    return _save(fig, path)


def divisor_figure(lhs, rhs, path, title="orbit-sum divisors"):
    """Multiplicity bars for the two sides of a divisor identity."""
    labels = []
    seen = {}
    for side_idx, side in enumerate((lhs, rhs)):
        for coords, mult in side:
            key = str(coords)
            if key not in seen:
                seen[key] = [0, 0]
                labels.append(key)
            seen[key][side_idx] = mult
    idx = range(len(labels))
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(labels)), 4))
    width = 0.4
    ax.bar([i - width / 2 for i in idx], [seen[k][0] for k in labels],
           width=width, label="left side", color="tab:blue")
    ax.bar([i + width / 2 for i in idx], [seen[k][1] for k in labels],
           width=width, label="right side", color="tab:orange")
    ax.set_xticks(list(idx))
    ax.set_xticklabels([f"P{i}" for i in idx], fontsize=7)
    ax.set_ylabel("multiplicity")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def model_support_figure(model, path):
    """Exponent-lattice support of the plane model's monomials."""
    p = model["field"]["p"]
    xs, ys, cs = [], [], []
    for i, j, _k, coeffs in model["monomials"]:
        xs.append(i)
        ys.append(j)
        cs.append(_enc(coeffs, p))
    fig, ax = plt.subplots(figsize=(5.5, 5))
    sc = ax.scatter(xs, ys, c=cs, s=80, cmap="viridis", edgecolors="black")
    d = model["degree"]
    ax.plot([0, d], [d, 0], "--", color="gray", alpha=0.5)
    ax.set_xlabel("U exponent")
    ax.set_ylabel("V exponent")
    ax.set_title(f"degree-{d} model: monomial support (W implied)")
    fig.colorbar(sc, ax=ax, label="coefficient encoding")
    fig.tight_layout()
    return _save(fig, path)


def quotient_figure(report, path):
    """Affine solutions of the quotient relation over GF(q^2)."""
    from gpk.ffield import build_field

    p = report["instance"]["p"]
    e = report["instance"]["e"]
    q = p ** e
    s = report["s"]
    ctx = build_field(p, 2 * e)
    pts = []
    for x_enc in range(ctx.order):
        for u_enc in range(ctx.order):
            x = ctx.el(x_enc)
            u = ctx.el(u_enc)
            if (x ** q + x) == u ** s:
                pts.append((x_enc, u_enc))
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter([a for a, _ in pts], [b for _, b in pts], s=30, c="tab:purple")
    ax.set_xlabel("x encoding")
    ax.set_ylabel("u encoding")
    ax.set_title(f"quotient model {report['relation']}: {len(pts)} affine points over GF({q * q})")
    ax.grid(True, alpha=0.3)
    return _save(fig, path)

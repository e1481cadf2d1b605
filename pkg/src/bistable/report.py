"""Report rendering: classification summary as CSV plus PNG figures.

Figures show the constraint graph (agreement vs opposition edges, pins),
the double cover when one exists, and the zero-extension curvature when
the ambient complex has faces. Layout comes from builder-attached display
coordinates with a circular fallback; positions never feed the math.
"""

from __future__ import annotations

import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .covers import build_cover, cover_triviality
from .jsonio import classification_to_dict
from .systems import CouplingSystem, classify, extend_coupling


def _positions(sys: CouplingSystem) -> list[tuple[float, float]]:
    labels = sys.complex.labels
    if "vertex_pos" in labels and len(labels["vertex_pos"]) == sys.complex.n_vertices:
        return [(float(x), float(y)) for x, y in labels["vertex_pos"]]
    n = max(sys.complex.n_vertices, 1)
    return [
        (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i in range(sys.complex.n_vertices)
    ]


def _face_positions(sys: CouplingSystem, vpos) -> list[tuple[float, float]]:
    labels = sys.complex.labels
    if "face_pos" in labels and len(labels["face_pos"]) == sys.complex.n_faces:
        return [(float(x), float(y)) for x, y in labels["face_pos"]]
    out = []
    for f in range(sys.complex.n_faces):
        verts = sys.complex.face_vertex_walk(f)
        out.append(
            (sum(vpos[v][0] for v in verts) / len(verts),
             sum(vpos[v][1] for v in verts) / len(verts))
        )
    return out


def render_system_figure(sys: CouplingSystem, path: str) -> None:
    pos = _positions(sys)
    fig, ax = plt.subplots(figsize=(6, 6))
    g = set(sys.constraint_edges)
    c = sys.effective_coupling()
    for e, (u, v) in enumerate(sys.complex.edges):
        xs, ys = (pos[u][0], pos[v][0]), (pos[u][1], pos[v][1])
        if e not in g:
            ax.plot(xs, ys, color="0.8", lw=1.0, ls=":", zorder=1)
        elif c[e]:
            ax.plot(xs, ys, color="crimson", lw=1.8, zorder=2)
        else:
            ax.plot(xs, ys, color="steelblue", lw=1.8, zorder=2)
    for v, (x, y) in enumerate(pos):
        pinned = v in sys.pinned
        ax.scatter(
            [x], [y],
            s=90 if pinned else 40,
            color="black" if not pinned else ("gold" if sys.pinned[v] else "white"),
            edgecolors="black", zorder=3,
        )
    ax.set_title("opposition (red) / agreement (blue) / free (dotted)")
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_cover_figure(sys: CouplingSystem, path: str) -> None:
    cover = build_cover(sys)
    pos = _positions(sys)
    v_count = sys.complex.n_vertices
    span = max((abs(x) + abs(y) for x, y in pos), default=1.0) or 1.0
    lift = 2.6 * span

    def lpos(lv: int) -> tuple[float, float]:
        x, y = pos[lv % v_count]
        return (x, y + (lift if lv >= v_count else 0.0))

    fig, ax = plt.subplots(figsize=(6, 8))
    c = sys.effective_coupling()
    for i, (a, b) in enumerate(cover.edges):
        (x0, y0), (x1, y1) = lpos(a), lpos(b)
        crossed = bool(c[cover.base_edge[i]])
        ax.plot(
            [x0, x1], [y0, y1],
            color="crimson" if crossed else "steelblue",
            lw=1.4, ls="--" if crossed else "-", zorder=2,
        )
    for lv in range(2 * v_count):
        x, y = lpos(lv)
        ax.scatter([x], [y], s=30, color="black", zorder=3)
    info = cover_triviality(cover)
    ax.set_title(
        f"double cover: {'trivial' if info.trivial else 'nontrivial'} "
        f"({info.lifted_components} component(s))"
    )
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_curvature_figure(sys: CouplingSystem, path: str) -> None:
    ext = extend_coupling(sys, "zero")
    pos = _positions(sys)
    fpos = _face_positions(sys, pos)
    fig, ax = plt.subplots(figsize=(6, 6))
    for e, (u, v) in enumerate(sys.complex.edges):
        ax.plot(
            (pos[u][0], pos[v][0]), (pos[u][1], pos[v][1]),
            color="0.7", lw=1.0, zorder=1,
        )
    flat = [f for f in range(sys.complex.n_faces) if not ext.curvature[f]]
    hot = ext.frustrated_faces()
    if flat:
        ax.scatter([fpos[f][0] for f in flat], [fpos[f][1] for f in flat],
                   s=120, marker="s", color="lightgray", edgecolors="black", zorder=2)
    if hot:
        ax.scatter([fpos[f][0] for f in hot], [fpos[f][1] for f in hot],
                   s=160, marker="s", color="crimson", edgecolors="black", zorder=2)
    ax.set_title(f"zero-extension curvature: {len(hot)} frustrated face(s)")
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def write_report(sys: CouplingSystem, outdir: str) -> list[str]:
    """CSV summary plus figures; returns the written paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    verdict = classify(sys)
    payload = classification_to_dict(verdict)
    csv_path = os.path.join(outdir, "report.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["key", "value"])
        writer.writerow(["name", sys.complex.labels.get("name", "")])
        writer.writerow(["vertices", sys.complex.n_vertices])
        writer.writerow(["edges", sys.complex.n_edges])
        writer.writerow(["faces", sys.complex.n_faces])
        writer.writerow(["constraint_edges", len(sys.constraint_edges)])
        writer.writerow(["euler_characteristic", sys.complex.euler_characteristic()])
        writer.writerow(["level", verdict.level])
        writer.writerow(["detail", verdict.detail])
        for key, dim in verdict.groups.items():
            writer.writerow([key, dim])
        if verdict.sections is not None:
            writer.writerow(["sections", verdict.sections])
        if verdict.witness is not None:
            writer.writerow(["witness", " ".join(str(e) for e in verdict.witness)])
        if "relative_class" in payload:
            writer.writerow(
                ["relative_class", " ".join(str(b) for b in payload["relative_class"]["coordinates"])]
            )
    written.append(csv_path)

    fig_path = os.path.join(outdir, "system.png")
    render_system_figure(sys, fig_path)
    written.append(fig_path)
    if sys.constraint_edges:
        cover_path = os.path.join(outdir, "cover.png")
        render_cover_figure(sys, cover_path)
        written.append(cover_path)
    if sys.complex.n_faces:
        curv_path = os.path.join(outdir, "curvature.png")
        render_curvature_figure(sys, curv_path)
        written.append(curv_path)
    return written

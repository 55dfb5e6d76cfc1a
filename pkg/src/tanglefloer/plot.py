"""Figure rendering for bigraded dimension tables.

Renders a table keyed by doubled (maslov, alexander) gradings as a dot
plot on the (alexander, maslov) plane, one labelled marker per nonzero
dimension, and writes it to a file.  Uses a non-interactive backend so
it works headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .serialize import half_str


def render_table(table2, path, title="dimensions"):
    """Write a figure of a doubled-key dimension table to `path`."""
    fig, ax = plt.subplots(figsize=(6, 5))
    if table2:
        xs = [a2 / 2 for _, a2 in table2]
        ys = [m2 / 2 for m2, _ in table2]
        sizes = [60 + 40 * table2[k] for k in table2]
        ax.scatter(xs, ys, s=sizes, color="#1f5fa8", zorder=3)
        for (m2, a2), dim in table2.items():
            ax.annotate(str(dim), (a2 / 2, m2 / 2),
                        textcoords="offset points", xytext=(7, 5))
        a_ticks = sorted({a2 for _, a2 in table2})
        m_ticks = sorted({m2 for m2, _ in table2})
        ax.set_xticks([a2 / 2 for a2 in a_ticks],
                      [half_str(a2) for a2 in a_ticks])
        ax.set_yticks([m2 / 2 for m2 in m_ticks],
                      [half_str(m2) for m2 in m_ticks])
    ax.set_xlabel("alexander")
    ax.set_ylabel("maslov")
    ax.set_title(title)
    ax.grid(True, linestyle=":", zorder=0)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path

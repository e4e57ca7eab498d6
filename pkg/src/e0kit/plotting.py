"""Figure rendering for curve samples; file output only, no GUI backend."""

from __future__ import annotations

from typing import Sequence

from matplotlib.figure import Figure

# (attribute prefix, legend label, line style)
_SERIES = (
    ("w", "channel", {"color": "#333333", "linestyle": "-", "linewidth": 1.6}),
    ("bec", "erasure", {"color": "#1f77b4", "linestyle": "--", "linewidth": 1.4}),
    ("bsc", "crossover", {"color": "#d62728", "linestyle": "-.", "linewidth": 1.4}),
)


def render_curves(samples: Sequence, path: str, title: str | None = None) -> None:
    """Render E0 and rate curves from CurveSample rows to an image file.

    Series whose columns are absent from the samples are skipped. The file
    format follows the path suffix (png, pdf, svg, ...).
    """
    rhos = [s.rho for s in samples]
    fig = Figure(figsize=(9.0, 4.0))
    ax_e0, ax_rate = fig.subplots(1, 2)
    for suffix, label, style in _SERIES:
        e0s = [getattr(s, f"e0_{suffix}") for s in samples]
        rates = [getattr(s, f"r_{suffix}") for s in samples]
        if e0s and e0s[0] is not None:
            ax_e0.plot(rhos, e0s, label=label, **style)
        if rates and rates[0] is not None:
            ax_rate.plot(rhos, rates, label=label, **style)
    for ax, ylabel in ((ax_e0, "E0 (nats)"), (ax_rate, "dE0/drho (nats)")):
        ax.axhline(0.0, color="0.85", linewidth=0.8)
        ax.axvline(0.0, color="0.85", linewidth=0.8)
        ax.set_xlabel("rho")
        ax.set_ylabel(ylabel)
        ax.grid(alpha=0.25)
        if ax.get_legend_handles_labels()[0]:
            ax.legend()
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)

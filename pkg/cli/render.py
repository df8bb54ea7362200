"""
Отрисовка баркода: текст (по строке на полосу) и SVG.
"""

import io
import logging

import matplotlib
from matplotlib.collections import LineCollection
from matplotlib.figure import Figure
from django.utils.termcolors import colorize

from core.numbers import format_number
from core.persist import Barcode

logger = logging.getLogger(__name__)

HEADER = '# legch barcode'

# Цвет полосы по степени (по кругу)
DEGREE_COLORS = ('#339c9c', '#e86a58', '#5a6fbf', '#c99a2e')
TERM_COLORS = ('cyan', 'red', 'blue', 'yellow')


def bar_line(bar) -> str:
    interval = f"[{format_number(bar.birth)}, {format_number(bar.death)})"
    line = f"H{bar.degree}  {interval}"
    if bar.birth_label:
        line += f"  {bar.birth_label}"
    return line


def render_text(barcode: Barcode, color: bool = False) -> str:
    """Заголовок и строки вида 'H1  [1, inf)  q', отсортированные по (степень, рождение, смерть)"""
    lines = [HEADER]
    for bar in barcode:
        line = bar_line(bar)
        if color:
            line = colorize(line, fg=TERM_COLORS[bar.degree % len(TERM_COLORS)])
        lines.append(line)
    return '\n'.join(lines) + '\n'


def render_svg(barcode: Barcode) -> bytes:
    """Горизонтальные полосы по дорожкам степеней; байты не зависят от запуска"""
    bars = list(barcode)
    finite_ends = [bar.birth for bar in bars] + [bar.death for bar in bars if not bar.is_infinite]
    right = float(max(finite_ends)) * 1.25 if finite_ends else 1.0

    fig = Figure(figsize=(6, max(1.5, 0.45 * len(bars) + 1)))
    ax = fig.subplots()
    ax.set_xlim(0, right * 1.05)
    ax.set_xlabel('высота')

    row = 0
    ticks, tick_labels = [], []
    for degree in barcode.degrees():
        lane = barcode.in_degree(degree)
        color = DEGREE_COLORS[degree % len(DEGREE_COLORS)]
        segments = []
        for bar in lane:
            end = right if bar.is_infinite else float(bar.death)
            segments.append([(float(bar.birth), row), (end, row)])
            if bar.is_infinite:
                ax.plot([right], [row], marker='>', color=color, markersize=6)
            label = f"{format_number(bar.birth)}"
            if bar.birth_label:
                label += f"  {bar.birth_label}"
            ax.annotate(label, (float(bar.birth), row), textcoords='offset points', xytext=(0, 4), fontsize=7)
            row += 1
        ax.add_collection(LineCollection(segments, colors=color, linewidths=3))
        ticks.append(row - (len(lane) + 1) / 2)
        tick_labels.append(f"H{degree}")
        row += 1

    if not bars:
        ax.set_title('пустой баркод')
    ax.set_ylim(max(row, 1), -1)
    ax.set_yticks(ticks)
    ax.set_yticklabels(tick_labels)

    buffer = io.BytesIO()
    with matplotlib.rc_context({'svg.hashsalt': 'legch', 'svg.fonttype': 'path'}):
        fig.savefig(buffer, format='svg', metadata={'Date': None})
    logger.debug(f"SVG баркода: {len(bars)} полос")
    return buffer.getvalue()

"""
輸出模組
CSV（'.' 小數點、LF 換行、17 位有效數字）、metadata JSON、稽核 JSON 與單檔 SVG
"""

import csv
import json
from pathlib import Path
from typing import Dict, List, Sequence
from xml.sax.saxutils import escape

from experiments.audit import AuditReport
from experiments.sweeps import SweepResult

SVG_WIDTH = 720
SVG_HEIGHT = 440
MARGIN = 56
PALETTE = ["#222222", "#2ca02c", "#9467bd", "#d62728", "#1f77b4", "#ff7f0e", "#8c564b"]
SCATTER_COLOR = "#1f77b4"


def fmt(value: float) -> str:
    return f"{value:.17g}"


def scatter_path(out: Path) -> Path:
    out = Path(out)
    return out.with_name(f"{out.stem}_scatter{out.suffix or '.csv'}")


def metadata_path(out: Path) -> Path:
    out = Path(out)
    return out.with_name(f"{out.stem}.meta.json")


def write_sweep_csv(result: SweepResult, out: Path) -> List[Path]:
    """
    寫出掃描結果。第一欄為掃描參數，其後每條曲線一欄，最後為 verdict。
    有散點時另寫 <out>_scatter.csv（alpha, value, trial, seed, verdict）。

    Returns:
        List[Path]: 實際寫出的檔案
    """
    out = Path(out)
    labels = list(result.curves)
    with out.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([result.parameter_name, *labels, "verdict"])
        for i, x in enumerate(result.grid):
            row = [fmt(x), *(fmt(result.curves[label][i]) for label in labels)]
            writer.writerow([*row, "ok" if result.verdicts[i] else "FAIL"])
    written = [out]

    if result.scatter:
        path = scatter_path(out)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["alpha", "value", "trial", "seed", "verdict"])
            for p in result.scatter:
                writer.writerow([fmt(p.alpha), fmt(p.value), p.trial, p.seed, "ok" if p.ok else "FAIL"])
        written.append(path)

    meta = metadata_path(out)
    payload = dict(result.metadata)
    if result.checks:
        payload["checks"] = result.checks
    meta.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written.append(meta)
    return written


def write_audit_json(reports: Sequence[AuditReport], out: Path, metadata: Dict) -> Path:
    payload = {"metadata": metadata, "reports": [r.to_dict() for r in reports]}
    Path(out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return Path(out)


def render_svg(result: SweepResult, title: str) -> str:
    """以 polyline 畫曲線、circle 畫散點的單檔 SVG"""
    xs = result.grid
    values = [v for curve in result.curves.values() for v in curve]
    values += [p.value for p in result.scatter]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(0.0, min(values)), max(values)
    if y_max - y_min < 1e-12:
        y_max = y_min + 1.0
    plot_w = SVG_WIDTH - 2 * MARGIN
    plot_h = SVG_HEIGHT - 2 * MARGIN

    def sx(x: float) -> float:
        return MARGIN + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return SVG_HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{MARGIN}" y1="{sy(y_min):.2f}" x2="{SVG_WIDTH - MARGIN}" y2="{sy(y_min):.2f}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{SVG_HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{SVG_WIDTH / 2:.1f}" y="{SVG_HEIGHT - 16}" text-anchor="middle">{escape(result.parameter_name)}</text>',
    ]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        x = x_min + frac * (x_max - x_min)
        y = y_min + frac * (y_max - y_min)
        parts.append(f'<text x="{sx(x):.2f}" y="{SVG_HEIGHT - MARGIN + 16}" text-anchor="middle">{x:.3g}</text>')
        parts.append(f'<text x="{MARGIN - 6}" y="{sy(y) + 4:.2f}" text-anchor="end">{y:.3g}</text>')

    for i, (label, curve) in enumerate(result.curves.items()):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, curve))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
        ly = MARGIN + 16 * i
        parts.append(f'<line x1="{SVG_WIDTH - MARGIN - 120}" y1="{ly}" x2="{SVG_WIDTH - MARGIN - 96}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{SVG_WIDTH - MARGIN - 90}" y="{ly + 4}">{escape(label)}</text>')

    for p in result.scatter:
        parts.append(f'<circle cx="{sx(p.alpha):.2f}" cy="{sy(p.value):.2f}" r="2.5" fill="{SCATTER_COLOR}"/>')
    if result.scatter:
        ly = MARGIN + 16 * len(result.curves)
        parts.append(f'<circle cx="{SVG_WIDTH - MARGIN - 108}" cy="{ly}" r="3" fill="{SCATTER_COLOR}"/>')
        parts.append(f'<text x="{SVG_WIDTH - MARGIN - 90}" y="{ly + 4}">LB_ran</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(result: SweepResult, out: Path, title: str) -> Path:
    Path(out).write_text(render_svg(result, title), encoding="utf-8")
    return Path(out)


def write_gram_json(payload: Dict, out: Path) -> Path:
    Path(out).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return Path(out)

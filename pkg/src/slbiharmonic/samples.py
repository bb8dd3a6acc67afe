"""Sample files: CSV ``s,x1,x2,x3,x4`` (optionally with derivative columns) and JSON."""

import csv
import json

import numpy as np

from .curves import curve_jet

BASE_COLUMNS = ["s", "x1", "x2", "x3", "x4"]


def fmt(x):
    """17 significant digits, enough to round-trip a double."""
    return f"{x:.17g}"


def derivative_columns(order):
    return [f"d{k}_x{i}" for k in range(1, order + 1) for i in range(1, 5)]


def sample_curve(curve, s_min, s_max, n, order=0):
    """Grid and jet of shape ``(n, order + 1, 4)``."""
    s = np.linspace(s_min, s_max, n)
    return s, curve_jet(curve, s, order)


def write_csv(fh, s, jet):
    order = jet.shape[1] - 1
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(BASE_COLUMNS + derivative_columns(order))
    for si, row in zip(s, jet):
        writer.writerow([fmt(si)] + [fmt(v) for v in row.reshape(-1)])


def write_json(fh, s, jet, metadata=None):
    order = jet.shape[1] - 1
    rows = []
    for si, row in zip(s, jet):
        item = {"s": float(si), "gamma": row[0].tolist()}
        for k in range(1, order + 1):
            item[f"d{k}"] = row[k].tolist()
        rows.append(item)
    json.dump({"metadata": metadata or {}, "samples": rows}, fh)
    fh.write("\n")


def read_csv(fh):
    """Return ``(s, points)`` from a CSV with at least the base columns."""
    reader = csv.reader(fh)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ValueError("empty CSV input")
    missing = [c for c in BASE_COLUMNS if c not in header]
    if missing:
        raise ValueError(f"CSV is missing columns {missing}")
    idx = [header.index(c) for c in BASE_COLUMNS]
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        try:
            rows.append([float(rec[i]) for i in idx])
        except (ValueError, IndexError):
            raise ValueError(f"malformed CSV row at line {lineno}")
    if not rows:
        raise ValueError("CSV has no samples")
    data = np.array(rows)
    if not np.all(np.isfinite(data)):
        raise ValueError("CSV contains non-finite values")
    return data[:, 0], data[:, 1:]


def read_json(fh):
    doc = json.load(fh)
    try:
        rows = doc["samples"]
        s = np.array([r["s"] for r in rows], dtype=float)
        pts = np.array([r["gamma"] for r in rows], dtype=float)
    except (KeyError, TypeError):
        raise ValueError("JSON input must hold a 'samples' list with 's' and 'gamma'")
    if pts.ndim != 2 or pts.shape[1] != 4 or len(s) == 0:
        raise ValueError("JSON samples must be 4-vectors")
    return s, pts


def read_samples(path):
    with open(path) as fh:
        head = fh.read(1)
        while head and head.isspace():
            head = fh.read(1)
        fh.seek(0)
        if head in ("{", "["):
            return read_json(fh)
        return read_csv(fh)

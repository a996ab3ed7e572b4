#!/usr/bin/env python3
"""Writes configs/s_curve.json: lead-in straight, left arc, right arc, run-out
straight, 100 m of polyline in total."""

import json
import math
import pathlib
import sys

TOTAL = 100.0
LEAD_IN = 10.0
RADIUS = 30.0
SWEEP = math.radians(50.0)
STEP = 0.25


def arc(start, heading, radius, sweep, turn):
    """Samples an arc starting at start with the given heading; turn is +1 left, -1 right."""
    cx = start[0] - turn * radius * math.sin(heading)
    cy = start[1] + turn * radius * math.cos(heading)
    n = max(1, math.ceil(radius * sweep / STEP))
    pts = []
    for i in range(1, n + 1):
        h = heading + turn * sweep * i / n
        pts.append((cx + turn * radius * math.sin(h), cy - turn * radius * math.cos(h)))
    return pts, heading + turn * sweep


def length(pts):
    return sum(math.dist(a, b) for a, b in zip(pts, pts[1:]))


def main(out):
    pts = [(0.0, 0.0), (LEAD_IN, 0.0)]
    heading = 0.0
    left, heading = arc(pts[-1], heading, RADIUS, SWEEP, +1)
    pts += left
    right, heading = arc(pts[-1], heading, RADIUS, SWEEP, -1)
    pts += right
    remaining = TOTAL - length(pts)
    last = pts[-1]
    pts.append((last[0] + remaining * math.cos(heading), last[1] + remaining * math.sin(heading)))
    assert abs(length(pts) - TOTAL) < 1e-9

    config = {
        "vehicle": {"speed": 6.111, "max_time": 60.0},
        "course": {
            "line_width": 0.1,
            "waypoints": [[round(x, 9), round(y, 9)] for x, y in pts],
        },
    }
    pathlib.Path(out).write_text(json.dumps(config, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "configs/s_curve.json")

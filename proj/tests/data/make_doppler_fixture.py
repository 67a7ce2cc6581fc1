"""Writes doppler_noisy.csv: 500 Doppler samples plus uniform noise on [-0.2, 0.2]."""

import math
import random
from pathlib import Path

n = 500
rng = random.Random(20240601)
rows = []
for i in range(n):
    t = (i + 1) / (n + 1)
    truth = 3.0 * math.sqrt(t * (1 - t)) * math.sin(2 * math.pi * 1.05 / (t + 0.05))
    rows.append(f"{i + 1},{truth + rng.uniform(-0.2, 0.2):.17g}")
Path(__file__).with_name("doppler_noisy.csv").write_text("t,value\n" + "\n".join(rows) + "\n")

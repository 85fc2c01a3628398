#!/usr/bin/env python3
"""Regenerates the synthetic gpustream-shape corpus.

The values are made up. They only mimic the shape of a STREAM-triad
portability study: eight implementations, five CPUs, four GPUs, with the
implementations supporting different subsets of platforms.
"""
import csv
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent
rng = random.Random(20161113)

cpus = [f"cpu-{i}" for i in range(1, 6)]
gpus = [f"gpu-{i}" for i in range(1, 5)]
peaks = {p: round(rng.uniform(60, 160), 1) for p in cpus}
peaks.update({p: round(rng.uniform(250, 750), 1) for p in gpus})

support = {
    "McCalpin": set(cpus),
    "SYCL": {"cpu-1", "gpu-1", "gpu-3"},
    "RAJA": set(cpus + gpus),
    "Kokkos": set(cpus + gpus),
    "OpenMP": set(cpus + gpus),
    "OpenACC": set(cpus + gpus),
    "CUDA": set(gpus),
    "OpenCL": set(cpus + gpus),
}
# Implementations that report a failed run instead of omitting the platform.
declared_failures = {"McCalpin": set(gpus), "CUDA": {"cpu-1", "cpu-2"}}

with open(OUT / "measurements.csv", "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["application", "variant", "problem", "platform", "orientation",
                "units", "value", "supported"])
    for app in sorted(support):
        for p in cpus + gpus:
            if p in support[app]:
                frac = rng.uniform(0.35, 0.8) if p in cpus else rng.uniform(0.6, 0.92)
                w.writerow([app, "", "triad-synthetic", p, "rate", "GB/s",
                            f"{peaks[p] * frac:.2f}", "true"])
            elif p in declared_failures.get(app, ()):
                w.writerow([app, "", "triad-synthetic", p, "rate", "GB/s", "", "false"])

with open(OUT / "specs.csv", "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["platform", "orientation", "units", "peak"])
    for p in cpus + gpus:
        w.writerow([p, "rate", "GB/s", f"{peaks[p]:.1f}"])

#!/usr/bin/env python3
"""Regenerate the golden regression fixtures under tests/fixtures.

Inputs are drawn with a fixed seed; expected outputs come from running the
CLI with --exact, so a later run that changes any bit of the result fails.
"""
import argparse
import math
import pathlib
import random
import subprocess


def random_box(rng):
    w, l, h = (rng.uniform(0.2, 3.0) for _ in range(3))
    if rng.random() < 0.1:
        l = w
    theta = rng.choice([0.0, math.pi / 2, -math.pi / 4]) if rng.random() < 0.1 else rng.uniform(-math.pi, math.pi)
    return [rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), w, l, h, theta]


def inside(rng, box):
    x, y, z, w, l, h, t = box
    u, v = rng.uniform(-0.45, 0.45) * w, rng.uniform(-0.45, 0.45) * l
    return [x + u * math.cos(t) - v * math.sin(t), y + u * math.sin(t) + v * math.cos(t),
            z + rng.uniform(-0.45, 0.45) * h]


def fmt(values):
    return " ".join(repr(float(v)) for v in values)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("cli", help="path to the built fcaf3d binary")
    parser.add_argument("--out", default=pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures")
    parser.add_argument("--count", type=int, default=1000)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    rng = random.Random(20240601)

    with open(out / "encode_input.txt", "w") as f:
        f.write("# x y z w l h theta lx ly lz\n")
        for _ in range(args.count):
            box = random_box(rng)
            f.write(fmt(box + inside(rng, box)) + "\n")
    with open(out / "iou_input.txt", "w") as f:
        f.write("# box a (7) box b (7)\n")
        for _ in range(args.count):
            a = random_box(rng)
            b = random_box(rng)
            if rng.random() < 0.6:
                b[:3] = [a[i] + rng.uniform(-0.8, 0.8) for i in range(3)]
            f.write(fmt(a + b) + "\n")

    for mode in ("naive", "sincos", "mobius"):
        subprocess.run([args.cli, "encode", "--mode", mode, "--exact", "-i", str(out / "encode_input.txt"),
                        "-o", str(out / f"encode_{mode}.txt")], check=True)
    subprocess.run([args.cli, "iou", "--rotated", "--exact", "-i", str(out / "iou_input.txt"),
                    "-o", str(out / "iou_rotated.txt")], check=True)


if __name__ == "__main__":
    main()

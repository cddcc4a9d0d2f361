#!/usr/bin/env python3
"""Convert DeepSat-style CSV pairs (X: flattened pixels, y: one-hot) to the
raw tensor format read by `lulc_cli extract` (dataset.kind = raw).

Usage:
  deepsat_to_lulct.py --x X_train.csv --y y_train.csv --height 28 --width 28 \
      --channels 4 --out train.lulct --manifest train_manifest.csv [--limit N]

Pixel values must already be integers in [0, 255]. Rows of X are interpreted
row-major with the channel index fastest, matching the tensor layout.
"""

import argparse
import csv
import struct
import sys

MAGIC = b"LULCT1\x00\x00"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", required=True, help="CSV of flattened images, one row per image")
    ap.add_argument("--y", required=True, help="CSV of one-hot labels, one row per image")
    ap.add_argument("--height", type=int, required=True)
    ap.add_argument("--width", type=int, required=True)
    ap.add_argument("--channels", type=int, required=True)
    ap.add_argument("--out", required=True, help="output .lulct tensor path")
    ap.add_argument("--manifest", required=True, help="output manifest CSV path")
    ap.add_argument("--limit", type=int, default=0, help="convert at most N images (0 = all)")
    ap.add_argument(
        "--class-names",
        default="",
        help="comma-separated names for the one-hot columns (default: class_<i>)",
    )
    args = ap.parse_args()

    expected = args.height * args.width * args.channels
    names = args.class_names.split(",") if args.class_names else []

    count = 0
    payload = bytearray()
    labels = []
    with open(args.x, newline="") as fx, open(args.y, newline="") as fy:
        for xrow, yrow in zip(csv.reader(fx), csv.reader(fy)):
            if args.limit and count >= args.limit:
                break
            if len(xrow) != expected:
                sys.exit(f"row {count}: expected {expected} pixel values, got {len(xrow)}")
            values = [int(float(v)) for v in xrow]
            if any(v < 0 or v > 255 for v in values):
                sys.exit(f"row {count}: pixel value outside [0, 255]")
            payload.extend(values)
            hot = [i for i, v in enumerate(yrow) if float(v) != 0.0]
            if len(hot) != 1:
                sys.exit(f"row {count}: label row is not one-hot")
            cls = hot[0]
            labels.append(names[cls] if cls < len(names) else f"class_{cls}")
            count += 1

    if count == 0:
        sys.exit("no images converted")

    with open(args.out, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<IIII", count, args.height, args.width, args.channels))
        f.write(bytes(payload))

    with open(args.manifest, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["index", "label"])
        for i, label in enumerate(labels):
            w.writerow([i, label])

    print(f"wrote {count} images ({args.height}x{args.width}x{args.channels}) to {args.out}")


if __name__ == "__main__":
    main()
